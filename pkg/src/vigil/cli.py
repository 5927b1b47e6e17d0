"""Command-line front end: analyze a video, write annotations, events, report.

Input is either a recorded video (``--input``: raw planar RGB file or a
directory of image frames) or a scene script rendered on the fly
(``--seed-scene``). Frames are processed strictly in order and streamed:
nothing buffers the whole video. Outputs land in ``--output-dir``:
annotated frames (red outlines on attended regions, blue when the track
fired a suspicion event), an ``events.jsonl`` log, optional saliency maps,
and ``report.json`` with aggregate metrics when ground truth is available.

Configuration is a flat ``key=value`` file (``--config``) holding every
pipeline knob; individual flags override file values.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .channels import ChannelConfig
from .frameio import annotate, open_input, save_gray_png, save_png
from .ior import IorConfig
from .metrics import load_ground_truth
from .pipeline import PipelineConfig, VideoAnalyzer
from .spectral import FusionConfig
from .synthgen import Scene, load_script
from .tracker import MatchConfig, event_json_line, memory_snapshot_lines

# key -> (parser, sub-config name, field name)
_SCHEMA = {
    "tau": (int, "channels", "latency_tau"),
    "target_long_side": (int, "channels", "target_long_side"),
    "target_short_side": (int, "channels", "target_short_side"),
    "lambda_rg": (float, "fusion", "weight_rg"),
    "lambda_by": (float, "fusion", "weight_by"),
    "lambda_i": (float, "fusion", "weight_i"),
    "lambda_m": (float, "fusion", "weight_m"),
    "disk_radius": (int, "fusion", "disk_radius"),
    "alpha_far": (float, "ior", "alpha_far"),
    "alpha_near": (float, "ior", "alpha_near"),
    "max_regions": (int, "ior", "max_regions"),
    "max_region_px": (float, "ior", "max_region_px"),
    "min_peak_fraction": (float, "ior", "min_peak_fraction"),
    "eta": (float, "match", "eta"),
    "mu_far": (float, "match", "mu_far"),
    "mu_near": (float, "match", "mu_near"),
    "c_r": (float, "match", "channel_weights", 0),
    "c_g": (float, "match", "channel_weights", 1),
    "c_b": (float, "match", "channel_weights", 2),
    "c_i": (float, "match", "channel_weights", 3),
    "color_weight": (float, "match", "color_weight"),
    "position_weight": (float, "match", "position_weight"),
    "decision_threshold": (float, "match", "decision_threshold"),
    "epsilon_far": (float, "match", "epsilon_far"),
    "epsilon_near": (float, "match", "epsilon_near"),
    "memory_capacity": (int, "pipeline", "memory_capacity"),
}


class ConfigError(ValueError):
    pass


def parse_config_text(text: str, source: str = "<config>") -> dict[str, object]:
    """Parse flat key=value lines into typed overrides; comments start with #."""
    overrides: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if key not in _SCHEMA:
            raise ConfigError(f"{source}:{lineno}: unknown config key {key!r}")
        parser = _SCHEMA[key][0]
        try:
            overrides[key] = parser(value)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: config key {key!r}: {exc}") from exc
    return overrides


def build_config(overrides: dict[str, object]) -> PipelineConfig:
    """Defaults plus overrides, validated by the config dataclasses."""
    groups: dict[str, dict] = {"channels": {}, "fusion": {}, "ior": {}, "match": {},
                               "pipeline": {}}
    weights = list(MatchConfig().channel_weights)
    for key, value in overrides.items():
        entry = _SCHEMA[key]
        if len(entry) == 4:
            weights[entry[3]] = value
            groups["match"]["channel_weights"] = tuple(weights)
        else:
            groups[entry[1]][entry[2]] = value
    try:
        return PipelineConfig(
            channels=ChannelConfig(**groups["channels"]),
            fusion=FusionConfig(**groups["fusion"]),
            ior=IorConfig(**groups["ior"]),
            match=MatchConfig(**groups["match"]),
            **groups["pipeline"],
        )
    except ValueError as exc:
        bad = next(iter(overrides)) if len(overrides) == 1 else "config"
        raise ConfigError(f"invalid configuration ({bad}): {exc}") from exc


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vigil",
        description="Flag suspicious motion in video via phase-spectrum attention.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", help="raw video file or directory of image frames")
    source.add_argument("--seed-scene", help="scene script JSON to render and analyze inline")
    parser.add_argument("--output-dir", required=True, help="where outputs are written")
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--ground-truth", help="ground truth JSON for the evaluation report")
    parser.add_argument("--emit-saliency", action="store_true",
                        help="also write per-frame saliency maps as grayscale PNGs")
    parser.add_argument("--emit-report", action="store_true",
                        help="write report.json even without ground truth")
    parser.add_argument("--max-regions", type=int,
                        help="override the number of attended regions per frame")
    parser.add_argument("--emit-memory", action="store_true",
                        help="debug: dump the final track memory as JSON lines")
    return parser


def run(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)

    try:
        overrides: dict[str, object] = {}
        if args.config:
            try:
                with open(args.config, "r", encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config file: {exc}") from exc
            overrides = parse_config_text(text, source=args.config)
        if args.max_regions is not None:
            overrides["max_regions"] = args.max_regions
        config = build_config(overrides)
    except ConfigError as exc:
        print(f"vigil: {exc}", file=sys.stderr)
        return 2

    truth = None
    try:
        if args.seed_scene:
            scene = Scene(load_script(args.seed_scene))
            frames = scene.frames()
            truth = scene.ground_truth()
            source_size = (scene.script.height, scene.script.width)
        else:
            frames, _ = open_input(args.input)
            source_size = None
        if args.ground_truth:
            truth = load_ground_truth(args.ground_truth)
    except (OSError, ValueError) as exc:
        print(f"vigil: {exc}", file=sys.stderr)
        return 2

    out_dir = args.output_dir
    frames_dir = os.path.join(out_dir, "annotated")
    os.makedirs(frames_dir, exist_ok=True)
    saliency_dir = os.path.join(out_dir, "saliency")
    if args.emit_saliency:
        os.makedirs(saliency_dir, exist_ok=True)

    analyzer = VideoAnalyzer(config)
    scale = None
    try:
        with open(os.path.join(out_dir, "events.jsonl"), "w", encoding="utf-8") as events_fh:
            for frame in frames:
                result = analyzer.process(frame)
                if truth is not None and scale is None:
                    src_h, src_w = source_size or (frame.height, frame.width)
                    working = result.working_frame
                    scale = (working.width / src_w, working.height / src_h)
                    if scale != (1.0, 1.0):
                        truth = truth.scaled(*scale)
                annotated = annotate(result.working_frame.rgb, result.outlines())
                save_png(
                    os.path.join(frames_dir, f"frame_{result.frame_index:06d}.png"), annotated
                )
                if args.emit_saliency:
                    save_gray_png(
                        os.path.join(saliency_dir, f"frame_{result.frame_index:06d}.png"),
                        result.saliency.values,
                    )
                for event in result.events:
                    events_fh.write(event_json_line(event) + "\n")
    except (OSError, ValueError) as exc:
        print(f"vigil: {exc}", file=sys.stderr)
        return 2

    if analyzer.frames_seen == 0:
        print("vigil: input contained no frames", file=sys.stderr)
        return 2

    if args.emit_memory:
        with open(os.path.join(out_dir, "memory.jsonl"), "w", encoding="utf-8") as fh:
            for line in memory_snapshot_lines(analyzer.memory):
                fh.write(line + "\n")

    if truth is not None or args.emit_report:
        report = analyzer.report(truth)
        with open(os.path.join(out_dir, "report.json"), "w", encoding="utf-8") as fh:
            fh.write(report.to_json() + "\n")

    summary = analyzer.report(truth)
    print(
        f"processed {summary.frame_count} frames, "
        f"{summary.events_total} suspicion events, "
        f"mean bottom-up {summary.bottom_up_ms:.2f} ms, total {summary.total_ms:.2f} ms"
    )
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
