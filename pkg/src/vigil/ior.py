"""Inhibition-of-return region extraction from a saliency map.

Regions are popped out one at a time: grow a threshold band around the
current global maximum, erase it, repeat. The threshold is row-dependent
because objects near the top of a surveillance frame sit farther from the
camera and appear smaller.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .spectral import SaliencyMap

# Reference working area (86 long side x 64 short side). The oversize limit
# is defined at this scale and grows proportionally with the actual map area.
REFERENCE_WORKING_AREA = 64 * 86

_EIGHT_CONNECTED = np.ones((3, 3), dtype=bool)


@dataclass(frozen=True)
class IorConfig:
    """Extraction thresholds and limits.

    ``alpha_far`` applies at the top row, ``alpha_near`` at the bottom row,
    interpolated linearly in between. Extraction stops after ``max_regions``
    kept regions or when the residual maximum drops below
    ``min_peak_fraction`` of the map's original maximum. Components larger
    than ``max_region_px`` (scaled to the map area) are suppressed but not
    returned.
    """

    alpha_far: float = 0.65
    alpha_near: float = 0.45
    max_regions: int = 4
    max_region_px: int = 300
    min_peak_fraction: float = 0.1

    def __post_init__(self):
        for name in ("alpha_far", "alpha_near", "min_peak_fraction"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ValueError(f"{name} must lie in (0, 1), got {value}")
        if self.max_regions < 1:
            raise ValueError("max_regions must be >= 1")
        if self.max_region_px < 1:
            raise ValueError("max_region_px must be >= 1")


@dataclass(frozen=True)
class Region:
    """One extracted 8-connected region.

    ``pixels`` is an (n, 2) integer array of (x, y) coordinates in row-major
    order; ``bbox`` is (min_x, min_y, max_x, max_y), inclusive.
    """

    pixels: np.ndarray
    peak: tuple[int, int]
    peak_value: float
    bbox: tuple[int, int, int, int]

    @property
    def size(self) -> int:
        return len(self.pixels)

    @property
    def center(self) -> tuple[float, float]:
        min_x, min_y, max_x, max_y = self.bbox
        return (min_x + max_x) / 2.0, (min_y + max_y) / 2.0


def alpha_at(row: int, height: int, config: IorConfig) -> float:
    """Row-dependent band threshold: alpha_far at the top, alpha_near at the bottom."""
    if not 0 <= row < height:
        raise ValueError(f"row {row} outside [0, {height})")
    if height == 1:
        return (config.alpha_far + config.alpha_near) / 2.0
    t = row / (height - 1)
    return config.alpha_far + (config.alpha_near - config.alpha_far) * t


def connected_band_component(
    values: np.ndarray,
    seed: tuple[int, int],
    lo: float,
    hi: float,
) -> np.ndarray:
    """Boolean mask of the 8-connected component containing ``seed`` (x, y)
    among pixels whose value lies in [lo, hi]."""
    x, y = seed
    band = (values >= lo) & (values <= hi)
    if not band[y, x]:
        raise ValueError("seed pixel lies outside the value band")
    labels, _ = ndimage.label(band, structure=_EIGHT_CONNECTED)
    return labels == labels[y, x]


def _region_from_mask(mask: np.ndarray, peak: tuple[int, int], peak_value: float) -> Region:
    ys, xs = np.nonzero(mask)
    pixels = np.column_stack([xs, ys]).astype(int)
    bbox = (int(xs.min()), int(ys.min()), int(xs.max()), int(ys.max()))
    return Region(pixels=pixels, peak=peak, peak_value=float(peak_value), bbox=bbox)


def extract_regions(saliency: SaliencyMap, config: IorConfig) -> list[Region]:
    """Pop the most conspicuous regions out of a saliency map, strongest first.

    Each pass seeds at the current global maximum (ties: smallest y, then x),
    grows the 8-connected component whose values stay within
    [alpha_at(peak row) * peak, peak], and zeroes it in the working copy.
    Components within the oversize limit are kept; oversize ones are
    suppressed without counting toward ``max_regions``. Extraction ends when
    ``max_regions`` regions are kept or the residual maximum falls below the
    stop floor. Returned regions are pairwise disjoint with non-increasing
    peak values.
    """
    values = saliency.values
    working = values.copy()
    height, width = working.shape
    regions: list[Region] = []

    original_max = float(working.max())
    if original_max <= 0.0:
        return regions
    floor = config.min_peak_fraction * original_max
    max_px = config.max_region_px * (height * width) / REFERENCE_WORKING_AREA

    while len(regions) < config.max_regions:
        flat_index = int(np.argmax(working))
        peak_y, peak_x = divmod(flat_index, width)
        peak_value = float(working[peak_y, peak_x])
        if peak_value < floor:
            break
        alpha = alpha_at(peak_y, height, config)
        mask = connected_band_component(
            working, (peak_x, peak_y), alpha * peak_value, peak_value
        )
        if int(mask.sum()) <= max_px:
            regions.append(_region_from_mask(mask, (peak_x, peak_y), peak_value))
        working[mask] = 0.0

    return regions
