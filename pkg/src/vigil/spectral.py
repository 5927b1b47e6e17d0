"""Phase-only spectral saliency: per-plane transforms and four-plane fusion."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .channels import ChannelSet

# Below this spectral amplitude a bin's phase is treated as zero. Keeps the
# transform deterministic on planes whose spectra contain exact cancellations.
ZERO_AMPLITUDE_EPS = 1e-12


@dataclass(frozen=True)
class FusionConfig:
    """Per-channel fusion weights and the smoothing disk radius.

    Motion carries extra weight by default because it is the strongest cue
    when watching a fixed camera.
    """

    weight_rg: float = 1.0
    weight_by: float = 1.0
    weight_i: float = 1.0
    weight_m: float = 2.0
    disk_radius: int = 3

    def __post_init__(self):
        weights = (self.weight_rg, self.weight_by, self.weight_i, self.weight_m)
        if any(w < 0 for w in weights):
            raise ValueError("fusion weights must be nonnegative")
        if not any(w > 0 for w in weights):
            raise ValueError("at least one fusion weight must be positive")
        if self.disk_radius < 1:
            raise ValueError("disk_radius must be >= 1")


@dataclass(frozen=True)
class SaliencyMap:
    """Fused conspicuity plane, max-normalized to [0, 1]."""

    values: np.ndarray
    frame_index: int = 0


def pft(channel: np.ndarray) -> np.ndarray:
    """Phase-only reconstruction energy of a 2-D plane.

    Takes the forward 2-D Fourier transform, discards the amplitude spectrum
    (every bin is projected to unit magnitude, keeping its phase), inverts,
    and returns the squared magnitude. Compact structures that differ from
    their surroundings reconstruct with concentrated energy, which is what
    makes this a saliency detector.

    Bins whose amplitude falls below ``ZERO_AMPLITUDE_EPS`` get phase zero.
    """
    plane = np.asarray(channel, dtype=float)
    if plane.ndim != 2 or plane.shape[0] < 2 or plane.shape[1] < 2:
        raise ValueError("pft requires a 2-D plane of at least 2x2")
    spectrum = np.fft.fft2(plane)
    phase = np.where(np.abs(spectrum) < ZERO_AMPLITUDE_EPS, 0.0, np.angle(spectrum))
    recon = np.fft.ifft2(np.exp(1j * phase))
    return np.abs(recon) ** 2


def disk_kernel(radius: int) -> np.ndarray:
    """Uniform disk filter of the given pixel radius, normalized to sum 1."""
    if radius < 1:
        raise ValueError("disk radius must be >= 1")
    span = np.arange(-radius, radius + 1)
    yy, xx = np.meshgrid(span, span, indexing="ij")
    kernel = ((xx * xx + yy * yy) <= radius * radius).astype(float)
    return kernel / kernel.sum()


def fuse(channels: ChannelSet, config: FusionConfig, frame_index: int = 0) -> SaliencyMap:
    """Combine the four per-channel saliency responses into one map.

    Each plane goes through :func:`pft`, the results are summed with the
    configured weights, smoothed once with a uniform disk filter
    (replicate-edge padding), and linearly rescaled so the maximum is 1.
    An identically zero map stays zero.
    """
    planes = (channels.rg, channels.by, channels.intensity, channels.motion)
    shapes = {p.shape for p in planes}
    if len(shapes) != 1:
        raise ValueError(f"channel planes disagree on dimensions: {sorted(shapes)}")
    weights = (config.weight_rg, config.weight_by, config.weight_i, config.weight_m)

    combined = np.zeros(planes[0].shape)
    for weight, plane in zip(weights, planes):
        if weight > 0:
            combined += weight * pft(plane)

    smoothed = ndimage.correlate(combined, disk_kernel(config.disk_radius), mode="nearest")
    peak = smoothed.max()
    if peak > 0:
        smoothed = smoothed / peak
    return SaliencyMap(values=smoothed, frame_index=frame_index)
