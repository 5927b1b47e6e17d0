"""Frame ingestion types and decomposition into opponent-color, intensity, and motion planes."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class ChannelConfig:
    """Working-resolution and motion-latency settings.

    ``latency_tau`` is the frame gap used by the motion plane: the caller
    supplies the intensity plane from ``tau`` frames ago. The working size is
    chosen so the longer frame side matches ``target_long_side`` while the
    shorter side keeps the aspect ratio, capped at ``target_short_side``.
    """

    latency_tau: int = 1
    target_long_side: int = 86
    target_short_side: int = 64

    def __post_init__(self):
        if self.latency_tau < 1:
            raise ValueError("latency_tau must be >= 1")
        if self.target_short_side < 8:
            raise ValueError("target_short_side must be >= 8")
        if self.target_long_side < self.target_short_side:
            raise ValueError("target_long_side must be >= target_short_side")


@dataclass(frozen=True)
class Frame:
    """One RGB video frame: ``rgb`` has shape (height, width, 3), values in [0, 1]."""

    rgb: np.ndarray
    index: int = 0

    @property
    def height(self) -> int:
        return self.rgb.shape[0]

    @property
    def width(self) -> int:
        return self.rgb.shape[1]


@dataclass(frozen=True)
class ChannelSet:
    """The four feature planes extracted from one frame.

    ``rg`` and ``by`` are the red/green and blue/yellow opponency planes
    (range [-2, 2]), ``intensity`` is the channel mean in [0, 1], and
    ``motion`` is the nonnegative intensity difference against the plane
    from ``latency_tau`` frames earlier.
    """

    rg: np.ndarray
    by: np.ndarray
    intensity: np.ndarray
    motion: np.ndarray


@lru_cache(maxsize=32)
def _box_weights(n_in: int, n_out: int) -> np.ndarray:
    """Row-stochastic matrix mapping n_in samples onto n_out area-averaged cells."""
    step = n_in / n_out
    weights = np.zeros((n_out, n_in))
    for i in range(n_out):
        lo = i * step
        hi = lo + step
        j0 = int(np.floor(lo))
        j1 = min(int(np.ceil(hi)), n_in)
        for j in range(j0, j1):
            overlap = min(hi, j + 1.0) - max(lo, j)
            if overlap > 0.0:
                weights[i, j] = overlap
    weights /= step
    return weights


def working_size(height: int, width: int, config: ChannelConfig) -> tuple[int, int]:
    """Output (height, width) for a frame of the given input dimensions."""
    if height <= 0 or width <= 0:
        raise ValueError("frame dimensions must be positive")
    if height >= width:
        out_h = config.target_long_side
        out_w = min(config.target_short_side, max(1, round(width * out_h / height)))
    else:
        out_w = config.target_long_side
        out_h = min(config.target_short_side, max(1, round(height * out_w / width)))
    if out_h < 8 or out_w < 8:
        raise ValueError(
            f"aspect ratio too extreme: working size would be {out_w}x{out_h}"
        )
    return out_h, out_w


def resize_frame(frame: Frame, config: ChannelConfig) -> Frame:
    """Resize a frame to the working resolution by area (box) averaging.

    The longer output side equals ``config.target_long_side``; the shorter
    side preserves the aspect ratio as closely as possible and never exceeds
    ``config.target_short_side``. An input already at the target size is
    returned unchanged.
    """
    h, w = frame.rgb.shape[:2]
    out_h, out_w = working_size(h, w, config)
    if (out_h, out_w) == (h, w):
        return frame
    wy = _box_weights(h, out_h)
    wx = _box_weights(w, out_w)
    planes = [wy @ frame.rgb[:, :, c] @ wx.T for c in range(3)]
    rgb = np.clip(np.stack(planes, axis=-1), 0.0, 1.0)
    return Frame(rgb, frame.index)


def decompose(
    frame: Frame,
    previous_intensity: np.ndarray | None,
    config: ChannelConfig,
) -> ChannelSet:
    """Split a working-size frame into its four feature planes.

    ``previous_intensity`` must be the intensity plane of the frame
    ``config.latency_tau`` steps back (the caller keeps that history); when
    absent the motion plane is all zero.
    """
    r = frame.rgb[:, :, 0]
    g = frame.rgb[:, :, 1]
    b = frame.rgb[:, :, 2]

    red = r - (g + b) / 2.0
    green = g - (r + b) / 2.0
    blue = b - (r + g) / 2.0
    yellow = (r + g) / 2.0 - np.abs(r - g) / 2.0 - b

    intensity = (r + g + b) / 3.0
    if previous_intensity is None:
        motion = np.zeros_like(intensity)
    else:
        if previous_intensity.shape != intensity.shape:
            raise ValueError(
                "previous_intensity shape "
                f"{previous_intensity.shape} does not match frame {intensity.shape}"
            )
        motion = np.abs(intensity - previous_intensity)

    return ChannelSet(rg=red - green, by=blue - yellow, intensity=intensity, motion=motion)
