"""Appearance descriptors: per-region color histograms plus geometry."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import Frame
from .ior import Region

HISTOGRAM_BINS = 10
CHANNEL_NAMES = ("r", "g", "b", "intensity")


@dataclass(frozen=True)
class ColorHistogram:
    """Four 10-bin probability histograms over [0, 1], one per channel.

    ``bins`` has shape (4, 10) in channel order r, g, b, intensity; each row
    sums to 1. Bin k covers [k/10, (k+1)/10), with the last bin closed at 1.
    """

    bins: np.ndarray


@dataclass(frozen=True)
class RegionDescriptor:
    """What the tracker remembers about one region in one frame.

    ``row_band`` is the center's vertical position as a fraction of frame
    height (0 = top row, 1 = bottom row); it selects distance-dependent
    matching thresholds downstream.
    """

    histogram: ColorHistogram
    size: int
    center: tuple[float, float]
    frame_index: int
    row_band: float


def describe(region: Region, frame: Frame) -> RegionDescriptor:
    """Build the appearance record for a region of a working-size frame."""
    if region.size == 0:
        raise ValueError("cannot describe an empty region")
    xs = region.pixels[:, 0]
    ys = region.pixels[:, 1]
    if xs.min() < 0 or ys.min() < 0 or xs.max() >= frame.width or ys.max() >= frame.height:
        raise ValueError("region pixels fall outside the frame")

    rgb = frame.rgb[ys, xs]
    intensity = rgb.mean(axis=1)
    channels = (rgb[:, 0], rgb[:, 1], rgb[:, 2], intensity)
    counts = np.stack(
        [np.histogram(c, bins=HISTOGRAM_BINS, range=(0.0, 1.0))[0] for c in channels]
    )
    bins = counts.astype(float) / region.size

    center = region.center
    row_band = center[1] / (frame.height - 1) if frame.height > 1 else 0.0
    return RegionDescriptor(
        histogram=ColorHistogram(bins=bins),
        size=region.size,
        center=center,
        frame_index=frame.index,
        row_band=float(row_band),
    )
