"""Bounded-memory object tracker with velocity-discontinuity flagging.

Incoming region descriptors are matched against remembered tracks by color
histogram distance and extrapolated position, combined into one decision
score. Matched tracks update their appearance and motion state and are
flagged as suspicious when their speed changes faster than a row-dependent
threshold allows. The memory is bounded: when full, the least-lively track
is forgotten.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .descriptors import ColorHistogram, RegionDescriptor


@dataclass(frozen=True)
class MatchConfig:
    """Matching thresholds and weights.

    ``mu_far``/``mu_near`` (squared pixels) and ``epsilon_far``/``epsilon_near``
    (pixels per frame squared) interpolate linearly from the top row (far)
    to the bottom row (near): nearby objects may move and accelerate faster
    across the image, so their gates are wider.

    The mu / epsilon defaults were calibrated on the bundled synthetic
    benchmark and then frozen: mu admits the path deviation of a scripted
    velocity jump (up to ~120 squared pixels at one-frame gaps) while
    rejecting swaps between parallel lanes 21 px apart (>=196); epsilon
    sits between steady-tracking jitter (<=3 px/frame per frame) and the
    smallest scripted jump discontinuity (>=5).
    """

    eta: float = 0.6
    mu_far: float = 140.0
    mu_near: float = 280.0
    channel_weights: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0)
    color_weight: float = 0.7
    position_weight: float = 0.3
    decision_threshold: float = 0.7
    epsilon_far: float = 3.0
    epsilon_near: float = 4.5

    def __post_init__(self):
        for name in ("eta", "mu_far", "mu_near", "epsilon_far", "epsilon_near"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if len(self.channel_weights) != 4 or any(w < 0 for w in self.channel_weights):
            raise ValueError("channel_weights must be 4 nonnegative values")
        if abs(self.color_weight + self.position_weight - 1.0) > 1e-9:
            raise ValueError("color_weight + position_weight must equal 1")


@dataclass
class TrackRecord:
    """Latest appearance and motion state of one remembered object."""

    id: int
    histogram: ColorHistogram
    size: int
    last_center: tuple[float, float]
    first_seen_frame: int
    last_seen_frame: int
    prev_center: tuple[float, float] | None = None
    speed: float | None = None
    appear_count: int = 1


@dataclass(frozen=True)
class SuspicionEvent:
    """Emitted when a track's speed change exceeds its row-dependent threshold."""

    frame_index: int
    track_id: int
    delta_speed: float
    threshold_used: float
    center: tuple[float, float]


class TrackMemory:
    """Bounded collection of track records, updated one frame at a time."""

    def __init__(self, capacity: int = 1000):
        if capacity < 1:
            raise ValueError("capacity must be >= 1")
        self.capacity = capacity
        self.records: dict[int, TrackRecord] = {}
        self.current_frame = -1
        self._next_id = 0

    def __len__(self) -> int:
        return len(self.records)

    @property
    def next_id(self) -> int:
        """Id the next inserted track will receive."""
        return self._next_id

    def new_id(self) -> int:
        track_id = self._next_id
        self._next_id += 1
        return track_id


def _lerp(far: float, near: float, band: float) -> float:
    return far + (near - far) * band


def color_match(a: ColorHistogram, b: ColorHistogram, config: MatchConfig) -> float:
    """Similarity in [0, 1] from weighted per-channel Euclidean histogram distance.

    Per channel, the distance is the Euclidean norm of the 10-bin difference;
    channel distances are weighted by ``channel_weights`` and summed. A total
    distance of zero scores 1 and anything at or beyond ``eta`` scores 0.
    """
    diffs = a.bins - b.bins
    per_channel = np.sqrt((diffs * diffs).sum(axis=1))
    distance = float(np.dot(config.channel_weights, per_channel))
    return max(0.0, 1.0 - distance / config.eta)


def position_match(
    current: tuple[float, float],
    last: tuple[float, float],
    prev: tuple[float, float] | None,
    row_band: float,
    config: MatchConfig,
) -> float:
    """Similarity in [0, 1] from the deviation off uniform straight-line motion.

    With two remembered points the deviation is ``2*last - prev - current``
    (zero for constant velocity); with only one it falls back to the plain
    displacement ``last - current``. The squared deviation is compared to a
    gate interpolated between ``mu_far`` (top) and ``mu_near`` (bottom).
    """
    if prev is None:
        dx = last[0] - current[0]
        dy = last[1] - current[1]
    else:
        dx = 2.0 * last[0] - prev[0] - current[0]
        dy = 2.0 * last[1] - prev[1] - current[1]
    mu = _lerp(config.mu_far, config.mu_near, row_band)
    return max(0.0, 1.0 - (dx * dx + dy * dy) / mu)


def decision(cm: float, pm: float, config: MatchConfig) -> float:
    """Combined match score: color-weighted blend of the two similarities."""
    return config.color_weight * cm + config.position_weight * pm


def assign(
    descriptors: list[RegionDescriptor],
    memory: TrackMemory,
    config: MatchConfig,
) -> list[tuple[RegionDescriptor, int | None]]:
    """Pair this frame's descriptors with remembered tracks, greedily by score.

    Scores are computed for every descriptor/record pair; pairs strictly
    above ``decision_threshold`` are accepted in decreasing score order,
    each descriptor and each record at most once. Descriptors left unpaired
    map to ``None`` (a new track). The result order follows the input order,
    and ties are broken by descriptor geometry rather than list position, so
    permuting the input yields the same pairings.
    """
    candidates = []
    for idx, desc in enumerate(descriptors):
        for track_id, record in memory.records.items():
            cm = color_match(desc.histogram, record.histogram, config)
            pm = position_match(
                desc.center, record.last_center, record.prev_center, desc.row_band, config
            )
            score = decision(cm, pm, config)
            if score > config.decision_threshold:
                candidates.append((score, idx, track_id))

    def sort_key(item):
        score, idx, track_id = item
        desc = descriptors[idx]
        return (-score, desc.center[1], desc.center[0], desc.size, track_id)

    candidates.sort(key=sort_key)
    matched: dict[int, int] = {}
    used_tracks: set[int] = set()
    for score, idx, track_id in candidates:
        if idx in matched or track_id in used_tracks:
            continue
        matched[idx] = track_id
        used_tracks.add(track_id)
    return [(desc, matched.get(idx)) for idx, desc in enumerate(descriptors)]


def update(
    memory: TrackMemory,
    assignments: list[tuple[RegionDescriptor, int | None]],
    frame_index: int,
    config: MatchConfig,
) -> list[SuspicionEvent]:
    """Fold one frame's assignments into the memory; return suspicion events.

    Matched records take the new histogram, size, and center; speed is the
    center displacement divided by the frame gap. When a previous speed
    exists and the speed change per frame exceeds the row-interpolated
    epsilon threshold, a :class:`SuspicionEvent` is emitted. Unmatched
    descriptors become new records, evicting the least-lively track first
    when the memory is full.
    """
    memory.current_frame = frame_index
    events: list[SuspicionEvent] = []

    for desc, track_id in assignments:
        if track_id is None:
            continue
        record = memory.records[track_id]
        gap = frame_index - record.last_seen_frame
        if gap <= 0:
            raise ValueError("assignments must come from a frame after the last update")
        dx = desc.center[0] - record.last_center[0]
        dy = desc.center[1] - record.last_center[1]
        new_speed = math.hypot(dx, dy) / gap
        if record.speed is not None:
            delta = abs(new_speed - record.speed) / gap
            threshold = _lerp(config.epsilon_far, config.epsilon_near, desc.row_band)
            if delta > threshold:
                events.append(
                    SuspicionEvent(
                        frame_index=frame_index,
                        track_id=track_id,
                        delta_speed=delta,
                        threshold_used=threshold,
                        center=desc.center,
                    )
                )
        record.prev_center = record.last_center
        record.last_center = desc.center
        record.speed = new_speed
        record.histogram = desc.histogram
        record.size = desc.size
        record.appear_count += 1
        record.last_seen_frame = frame_index

    for desc, track_id in assignments:
        if track_id is not None:
            continue
        if len(memory.records) >= memory.capacity:
            evict(memory)
        new_id = memory.new_id()
        memory.records[new_id] = TrackRecord(
            id=new_id,
            histogram=desc.histogram,
            size=desc.size,
            last_center=desc.center,
            first_seen_frame=frame_index,
            last_seen_frame=frame_index,
        )

    return events


def retention_score(record: TrackRecord, current_frame: int) -> float:
    """How worth keeping a record is: frequent, recently seen tracks score high."""
    return 0.8 * record.appear_count - 0.2 * (current_frame - record.last_seen_frame)


def evict(memory: TrackMemory) -> int:
    """Remove and return the id of the lowest retention-score record.

    Ties are broken by the oldest ``first_seen_frame``, then the smallest id.
    Calling this on a memory below capacity is an error.
    """
    if len(memory.records) < memory.capacity:
        raise RuntimeError("evict called on a memory below capacity")
    victim = min(
        memory.records.values(),
        key=lambda r: (retention_score(r, memory.current_frame), r.first_seen_frame, r.id),
    )
    del memory.records[victim.id]
    return victim.id


def event_json_line(event: SuspicionEvent) -> str:
    """One JSON line for the event log."""
    return json.dumps(
        {
            "frame_index": event.frame_index,
            "track_id": event.track_id,
            "delta_speed": event.delta_speed,
            "threshold": event.threshold_used,
            "center_x": event.center[0],
            "center_y": event.center[1],
        }
    )


def memory_snapshot_lines(memory: TrackMemory) -> list[str]:
    """JSON lines describing every record, for debug export."""
    lines = []
    for record in memory.records.values():
        lines.append(
            json.dumps(
                {
                    "track_id": record.id,
                    "appear_count": record.appear_count,
                    "first_seen_frame": record.first_seen_frame,
                    "last_seen_frame": record.last_seen_frame,
                    "last_center": list(record.last_center),
                    "prev_center": list(record.prev_center) if record.prev_center else None,
                    "speed": record.speed,
                    "size": record.size,
                    "histogram": record.histogram.bins.tolist(),
                }
            )
        )
    return lines
