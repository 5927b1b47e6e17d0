"""Visual-attention video analysis: find what moves, track it, flag anomalies.

The pipeline runs in two stages. Bottom-up: each frame is decomposed into
two color-opponent channels, intensity, and a frame-difference motion
channel; each channel passes through a phase-only Fourier transform and the
four saliency maps are fused and smoothed. Attended regions are then peeled
off the fused map one at a time (inhibition of return). Top-down: regions
are matched against a bounded track memory by color histogram and motion
consistency, and tracks whose speed changes too abruptly raise suspicion
events.
"""

from .channels import ChannelConfig, ChannelSet, Frame, decompose, resize_frame, working_size
from .descriptors import ColorHistogram, RegionDescriptor, describe
from .ior import IorConfig, Region, extract_regions
from .metrics import (
    DEFAULT_LOCATE_SLACK,
    EvalReport,
    GroundTruth,
    MatchObservation,
    TruthBox,
    classify_matches,
    count_false_alerts,
    count_windowed_false_alerts,
    coverage,
    detection_latencies,
    false_alert_rate,
    load_ground_truth,
    save_ground_truth,
    score_matches,
)
from .pipeline import FrameResult, PipelineConfig, VideoAnalyzer
from .spectral import FusionConfig, SaliencyMap, disk_kernel, fuse, pft
from .synthgen import (
    PLUM,
    RED,
    ROSE,
    SAGE,
    TEAL,
    ActorSpec,
    Scene,
    SceneScript,
    benchmark_suite,
    load_script,
    patrol_scene,
    render,
    save_script,
    single_actor_script,
)
from .tracker import (
    MatchConfig,
    SuspicionEvent,
    TrackMemory,
    TrackRecord,
    assign,
    color_match,
    decision,
    evict,
    position_match,
    update,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_LOCATE_SLACK",
    "PLUM",
    "RED",
    "ROSE",
    "SAGE",
    "TEAL",
    "ActorSpec",
    "ChannelConfig",
    "ChannelSet",
    "ColorHistogram",
    "EvalReport",
    "Frame",
    "FrameResult",
    "FusionConfig",
    "GroundTruth",
    "IorConfig",
    "MatchConfig",
    "MatchObservation",
    "PipelineConfig",
    "Region",
    "RegionDescriptor",
    "SaliencyMap",
    "Scene",
    "SceneScript",
    "SuspicionEvent",
    "TrackMemory",
    "TrackRecord",
    "TruthBox",
    "VideoAnalyzer",
    "assign",
    "benchmark_suite",
    "classify_matches",
    "color_match",
    "count_false_alerts",
    "count_windowed_false_alerts",
    "coverage",
    "decision",
    "decompose",
    "describe",
    "detection_latencies",
    "disk_kernel",
    "evict",
    "extract_regions",
    "false_alert_rate",
    "fuse",
    "load_ground_truth",
    "load_script",
    "patrol_scene",
    "pft",
    "position_match",
    "render",
    "resize_frame",
    "save_ground_truth",
    "save_script",
    "score_matches",
    "single_actor_script",
    "update",
    "working_size",
]
