"""End-to-end per-frame analysis: channels, saliency, regions, tracking.

``VideoAnalyzer`` owns the incremental state (intensity history for the
motion channel, the track memory, running aggregates) and processes frames
strictly in order. Each call returns everything downstream consumers need
for annotation and logging; aggregate quality numbers are available at any
point via :meth:`VideoAnalyzer.report`.
"""

from __future__ import annotations

import itertools
import time
from collections import deque
from dataclasses import dataclass, field

from .channels import ChannelConfig, Frame, decompose, resize_frame
from .descriptors import RegionDescriptor, describe
from .ior import IorConfig, Region, extract_regions
from .metrics import (
    DEFAULT_LOCATE_SLACK,
    EvalReport,
    GroundTruth,
    MatchObservation,
    classify_matches,
    count_false_alerts,
    coverage,
    mean_region_size,
)
from .spectral import FusionConfig, SaliencyMap, fuse
from .tracker import MatchConfig, SuspicionEvent, TrackMemory, assign, update


@dataclass(frozen=True)
class PipelineConfig:
    """Every knob of the pipeline in one place."""

    channels: ChannelConfig = field(default_factory=ChannelConfig)
    fusion: FusionConfig = field(default_factory=FusionConfig)
    ior: IorConfig = field(default_factory=IorConfig)
    match: MatchConfig = field(default_factory=MatchConfig)
    memory_capacity: int = 1000

    def __post_init__(self):
        if self.memory_capacity < 1:
            raise ValueError("memory_capacity must be >= 1")


@dataclass
class FrameResult:
    """Everything the pipeline derived from one frame."""

    frame_index: int
    working_frame: Frame
    saliency: SaliencyMap
    regions: list[Region]
    descriptors: list[RegionDescriptor]
    track_ids: list[int]
    events: list[SuspicionEvent]
    bottom_up_ms: float
    total_ms: float

    def outlines(self) -> list[tuple[tuple[int, int, int, int], bool]]:
        """(bbox, flagged) pairs for annotation: flagged regions fired an event."""
        flagged_tracks = {e.track_id for e in self.events}
        return [
            (region.bbox, track_id in flagged_tracks)
            for region, track_id in zip(self.regions, self.track_ids)
        ]


class VideoAnalyzer:
    """Sequential frame processor with bounded state."""

    def __init__(self, config: PipelineConfig | None = None):
        self.config = config or PipelineConfig()
        self.memory = TrackMemory(capacity=self.config.memory_capacity)
        self._intensity_history: deque = deque(maxlen=self.config.channels.latency_tau)
        self._frames_seen = 0
        # Aggregates for report().
        self.observations: list[MatchObservation] = []
        self.events: list[SuspicionEvent] = []
        self.track_births: list[tuple[int, int, tuple[float, float]]] = []
        self.region_sizes: list[list[int]] = []
        self._bottom_up_ms_sum = 0.0
        self._total_ms_sum = 0.0
        self._working_area: int | None = None

    def process(self, frame: Frame) -> FrameResult:
        """Run the full stack on the next frame of the stream."""
        start = time.perf_counter()
        working = resize_frame(frame, self.config.channels)
        previous = (
            self._intensity_history[0]
            if len(self._intensity_history) == self._intensity_history.maxlen
            else None
        )
        channels = decompose(working, previous, self.config.channels)
        saliency = fuse(channels, self.config.fusion, frame_index=frame.index)
        regions = extract_regions(saliency, self.config.ior)
        bottom_up = time.perf_counter() - start

        descriptors = [describe(region, working) for region in regions]
        assignments = assign(descriptors, self.memory, self.config.match)
        for desc, track_id in assignments:
            if track_id is not None:
                self.observations.append(
                    MatchObservation(
                        frame_index=frame.index, track_id=track_id, point=desc.center
                    )
                )
        first_new_id = self.memory.next_id
        events = update(self.memory, assignments, frame.index, self.config.match)
        total = time.perf_counter() - start

        # update() hands out sequential ids to unmatched descriptors in order,
        # so the ids of the new tracks can be reconstructed exactly.
        new_counter = itertools.count(first_new_id)
        track_ids = [
            tid if tid is not None else next(new_counter) for _, tid in assignments
        ]
        for desc, (_, assigned), tid in zip(descriptors, assignments, track_ids):
            if assigned is None:
                self.track_births.append((tid, frame.index, desc.center))

        self._intensity_history.append(channels.intensity)
        self._frames_seen += 1
        self.events.extend(events)
        self.region_sizes.append([r.size for r in regions])
        self._bottom_up_ms_sum += bottom_up * 1000.0
        self._total_ms_sum += total * 1000.0
        self._working_area = working.height * working.width

        return FrameResult(
            frame_index=frame.index,
            working_frame=working,
            saliency=saliency,
            regions=regions,
            descriptors=descriptors,
            track_ids=track_ids,
            events=events,
            bottom_up_ms=bottom_up * 1000.0,
            total_ms=total * 1000.0,
        )

    def process_all(self, frames) -> "VideoAnalyzer":
        for frame in frames:
            self.process(frame)
        return self

    @property
    def frames_seen(self) -> int:
        return self._frames_seen

    def report(self, truth: GroundTruth | None = None) -> EvalReport:
        """Aggregate numbers so far; quality fields need ground truth."""
        n = self._frames_seen
        report = EvalReport(
            frame_count=n,
            events_total=len(self.events),
            mean_region_px=mean_region_size(self.region_sizes),
            coverage=(
                coverage(self.region_sizes, self._working_area) if self._working_area else 0.0
            ),
            bottom_up_ms=self._bottom_up_ms_sum / n if n else 0.0,
            total_ms=self._total_ms_sum / n if n else 0.0,
        )
        if truth is not None:
            track_objects = {
                tid: truth.locate(frame_index, center, DEFAULT_LOCATE_SLACK)
                for tid, frame_index, center in self.track_births
            }
            true_count, false_count = classify_matches(
                self.observations, truth, track_objects
            )
            report.true_matches = true_count
            report.false_matches = false_count
            report.match_score = (
                true_count / (true_count + false_count)
                if true_count + false_count
                else None
            )
            report.match_opportunities = truth.match_opportunities()
            report.false_alerts = count_false_alerts(self.events, truth)
            report.false_alert_rate = (
                report.false_alerts / len(self.events) if self.events else 0.0
            )
        return report
