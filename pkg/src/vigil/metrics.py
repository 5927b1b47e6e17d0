"""Evaluation against ground truth: match quality, alert precision, coverage.

Ground truth pairs every frame with the true object boxes visible in it and
with the set of frames during which each object's motion is genuinely
anomalous. Observed track matches are attributed to true objects by center
containment; suspicion events are checked against the anomalous frame sets.

Attention regions are bands of a smoothed saliency dome, so their centers
ride a few pixels off the object they circle (trailing the motion, or
midway through an abrupt displacement). Attribution therefore tolerates a
small slack around each truth box, ``DEFAULT_LOCATE_SLACK`` pixels by
default, rather than demanding exact containment.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .ior import Region
from .tracker import SuspicionEvent

# Covers the smoothing radius plus typical band spread at working resolution.
DEFAULT_LOCATE_SLACK = 6.0


@dataclass(frozen=True)
class TruthBox:
    """Axis-aligned box for one true object in one frame."""

    object_id: int
    min_x: float
    min_y: float
    max_x: float
    max_y: float

    @property
    def center(self) -> tuple[float, float]:
        return ((self.min_x + self.max_x) / 2.0, (self.min_y + self.max_y) / 2.0)

    def contains(self, point: tuple[float, float], slack: float = 0.0) -> bool:
        x, y = point
        return (
            self.min_x - slack <= x <= self.max_x + slack
            and self.min_y - slack <= y <= self.max_y + slack
        )


@dataclass(frozen=True)
class GroundTruth:
    """Per-frame true boxes plus per-object anomalous frame windows.

    ``boxes[t]`` lists every :class:`TruthBox` visible in frame ``t``.
    ``suspicious_frames[object_id]`` is the set of frame indices in which
    flagging that object counts as a true alert.
    """

    boxes: tuple[tuple[TruthBox, ...], ...]
    suspicious_frames: dict[int, frozenset[int]]

    @property
    def frame_count(self) -> int:
        return len(self.boxes)

    def locate(
        self, frame_index: int, point: tuple[float, float], slack: float = 0.0
    ) -> int | None:
        """Id of the true object whose box contains ``point``, else None.

        Boxes are expanded by ``slack`` pixels on every side before the
        containment test. When several boxes contain the point, the one
        whose center is nearest wins (ties by smaller object id).
        """
        if not 0 <= frame_index < len(self.boxes):
            return None
        hits = [box for box in self.boxes[frame_index] if box.contains(point, slack)]
        if not hits:
            return None
        if len(hits) == 1:
            return hits[0].object_id

        def key(box: TruthBox):
            cx, cy = box.center
            d2 = (cx - point[0]) ** 2 + (cy - point[1]) ** 2
            return (d2, box.object_id)

        return min(hits, key=key).object_id

    def scaled(self, sx: float, sy: float) -> "GroundTruth":
        """Same truth with box coordinates multiplied by (sx, sy).

        Used to carry source-resolution annotations into the working
        resolution the pipeline analyzes at.
        """
        scaled_boxes = tuple(
            tuple(
                TruthBox(
                    object_id=b.object_id,
                    min_x=b.min_x * sx,
                    min_y=b.min_y * sy,
                    max_x=b.max_x * sx,
                    max_y=b.max_y * sy,
                )
                for b in frame
            )
            for frame in self.boxes
        )
        return GroundTruth(boxes=scaled_boxes, suspicious_frames=self.suspicious_frames)

    def match_opportunities(self) -> int:
        """Count of object appearances that follow an earlier appearance.

        Every time an object is present in a frame after the first frame it
        appeared in, a tracker had the chance to re-identify it; the total
        is the denominator scale for judging match quality.
        """
        seen: set[int] = set()
        count = 0
        for frame in self.boxes:
            for box in frame:
                if box.object_id in seen:
                    count += 1
            for box in frame:
                seen.add(box.object_id)
        return count


@dataclass(frozen=True)
class MatchObservation:
    """One tracker re-identification: a descriptor paired to an existing track.

    ``point`` is the region center, ``track_object`` the true object the
    track was attributed to when it was created or last confirmed, and
    ``frame_index`` the frame of the re-identification.
    """

    frame_index: int
    track_id: int
    point: tuple[float, float]


def classify_matches(
    observations: list[MatchObservation],
    truth: GroundTruth,
    track_objects: dict[int, int | None],
    slack: float = DEFAULT_LOCATE_SLACK,
) -> tuple[int, int]:
    """(true, false) counts of re-identifications against the ground truth.

    ``track_objects`` maps each track id to the true object id it was
    attributed to at creation (None when it never coincided with a truth
    box). A match counts as true when the matched region's center lies in
    the box of that same object in that frame, and false when an object
    got tied to the wrong identity in either direction. Re-identifications
    that involve no true object on both ends (a background flicker matched
    to a background-born track) are background chatter, not object
    matches, and are excluded from both counts.
    """
    true_count = 0
    false_count = 0
    for obs in observations:
        expected = track_objects.get(obs.track_id)
        current = truth.locate(obs.frame_index, obs.point, slack)
        if expected is None and current is None:
            continue
        if current == expected:
            true_count += 1
        else:
            false_count += 1
    return true_count, false_count


def score_matches(
    observations: list[MatchObservation],
    truth: GroundTruth,
    track_objects: dict[int, int | None],
    slack: float = DEFAULT_LOCATE_SLACK,
) -> float | None:
    """Fraction of re-identifications that landed on the track's own object.

    Returns None when there is nothing to grade: no observations at all, or
    only background chatter (no evidence is not the same as zero quality).
    """
    if not observations:
        return None
    true_count, false_count = classify_matches(observations, truth, track_objects, slack)
    if true_count + false_count == 0:
        return None
    return true_count / (true_count + false_count)


def count_false_alerts(
    events: list[SuspicionEvent], truth: GroundTruth, slack: float = DEFAULT_LOCATE_SLACK
) -> int:
    """Events that flag a target which is never truly anomalous.

    An alert is judged by which target it points at: flagging an object
    that has a scripted anomaly anywhere in the video is a true alert
    (even when early or late), while flagging an always-normal object or
    empty background is a false one.
    """
    false_count = 0
    for event in events:
        object_id = truth.locate(event.frame_index, event.center, slack)
        windows = truth.suspicious_frames.get(object_id) if object_id is not None else None
        if not windows:
            false_count += 1
    return false_count


def count_windowed_false_alerts(
    events: list[SuspicionEvent], truth: GroundTruth, slack: float = DEFAULT_LOCATE_SLACK
) -> int:
    """Stricter false-alert count: the flagged frame must also fall in the window.

    Diagnostic variant of :func:`count_false_alerts` that additionally
    requires each alert to land inside the flagged object's anomalous
    frame window, not merely on the right target.
    """
    false_count = 0
    for event in events:
        object_id = truth.locate(event.frame_index, event.center, slack)
        windows = truth.suspicious_frames.get(object_id) if object_id is not None else None
        if windows is None or event.frame_index not in windows:
            false_count += 1
    return false_count


def false_alert_rate(
    events: list[SuspicionEvent], truth: GroundTruth, slack: float = DEFAULT_LOCATE_SLACK
) -> float:
    """Fraction of suspicion events that were false alerts; 0.0 when none fired."""
    if not events:
        return 0.0
    return count_false_alerts(events, truth, slack) / len(events)


def detection_latencies(
    events: list[SuspicionEvent], truth: GroundTruth, slack: float = DEFAULT_LOCATE_SLACK
) -> dict[int, int | None]:
    """Frames from each anomaly onset to the first event on that object.

    For every object with an anomalous window, the latency is the first
    event frame attributed to it minus the window's first frame, or None
    when no event ever hit it inside the window.
    """
    latencies: dict[int, int | None] = {}
    for object_id, window in truth.suspicious_frames.items():
        if not window:
            continue
        onset = min(window)
        hits = [
            e.frame_index
            for e in events
            if e.frame_index in window
            and truth.locate(e.frame_index, e.center, slack) == object_id
        ]
        latencies[object_id] = (min(hits) - onset) if hits else None
    return latencies


def coverage(region_sizes_per_frame: list[list[int]], frame_area: int) -> float:
    """Mean fraction of the frame occupied by kept attention regions."""
    if frame_area <= 0:
        raise ValueError("frame_area must be positive")
    if not region_sizes_per_frame:
        return 0.0
    fractions = [sum(sizes) / frame_area for sizes in region_sizes_per_frame]
    return sum(fractions) / len(fractions)


def mean_region_size(region_sizes_per_frame: list[list[int]]) -> float:
    """Mean total kept-region pixel count per frame."""
    if not region_sizes_per_frame:
        return 0.0
    return sum(sum(sizes) for sizes in region_sizes_per_frame) / len(region_sizes_per_frame)


@dataclass
class EvalReport:
    """Aggregate quality and timing numbers for one analyzed video."""

    frame_count: int
    true_matches: int | None = None
    false_matches: int | None = None
    match_score: float | None = None
    match_opportunities: int | None = None
    events_total: int = 0
    false_alerts: int | None = None
    false_alert_rate: float | None = None
    mean_region_px: float = 0.0
    coverage: float = 0.0
    bottom_up_ms: float = 0.0
    total_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "frame_count": self.frame_count,
            "true_matches": self.true_matches,
            "false_matches": self.false_matches,
            "match_score": self.match_score,
            "match_opportunities": self.match_opportunities,
            "events_total": self.events_total,
            "false_alerts": self.false_alerts,
            "false_alert_rate": self.false_alert_rate,
            "mean_region_px": self.mean_region_px,
            "coverage": self.coverage,
            "bottom_up_ms": self.bottom_up_ms,
            "total_ms": self.total_ms,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def region_sizes(regions: list[Region]) -> list[int]:
    """Pixel counts of a frame's kept regions, for coverage accounting."""
    return [r.size for r in regions]


def ground_truth_to_dict(truth: GroundTruth) -> dict:
    """JSON-ready form of a ground truth annotation."""
    return {
        "frames": [
            [
                {
                    "object_id": b.object_id,
                    "min_x": b.min_x,
                    "min_y": b.min_y,
                    "max_x": b.max_x,
                    "max_y": b.max_y,
                }
                for b in frame
            ]
            for frame in truth.boxes
        ],
        "suspicious_frames": {
            str(obj): sorted(window) for obj, window in truth.suspicious_frames.items()
        },
    }


def ground_truth_from_dict(data: dict) -> GroundTruth:
    """Parse the JSON form produced by :func:`ground_truth_to_dict`."""
    try:
        boxes = tuple(
            tuple(
                TruthBox(
                    object_id=int(b["object_id"]),
                    min_x=float(b["min_x"]),
                    min_y=float(b["min_y"]),
                    max_x=float(b["max_x"]),
                    max_y=float(b["max_y"]),
                )
                for b in frame
            )
            for frame in data["frames"]
        )
        suspicious = {
            int(obj): frozenset(int(f) for f in window)
            for obj, window in data.get("suspicious_frames", {}).items()
        }
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed ground truth data: {exc}") from exc
    return GroundTruth(boxes=boxes, suspicious_frames=suspicious)


def load_ground_truth(path) -> GroundTruth:
    """Read a ground truth JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        return ground_truth_from_dict(json.load(fh))


def save_ground_truth(truth: GroundTruth, path) -> None:
    """Write a ground truth JSON file."""
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(ground_truth_to_dict(truth), fh, indent=2)
