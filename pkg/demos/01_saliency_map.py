"""
From a raw frame to a fused saliency map
========================================

Walks one frame pair through the bottom-up half of the pipeline: split the
RGB frame into two color opponency planes, an intensity plane, and a motion
plane, turn each into a phase-only spectral saliency map, and fuse the four
maps into one. Writes every intermediate plane to ``demos/out`` as a PNG.

Run from the repository root::

    python demos/01_saliency_map.py
"""

import os

import numpy as np

from vigil import ChannelConfig, FusionConfig, decompose, fuse, pft, render, single_actor_script
from vigil.frameio import save_gray_png, save_png

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)


def normalized(plane):
    """Shift and scale any real plane into [0, 1] for viewing."""
    lo, hi = plane.min(), plane.max()
    return (plane - lo) / (hi - lo) if hi > lo else np.zeros_like(plane)


# Render a small scripted scene: one red walker on a noisy gray background.
# Frame 10 and the frame before it give the motion channel something to see.
frames, truth = render(single_actor_script())
config = ChannelConfig()
earlier = decompose(frames[9], None, config)
channels = decompose(frames[10], earlier.intensity, config)

save_png(os.path.join(OUT, "01_frame.png"), frames[10].rgb)

# The four channel planes. Opponency planes are signed, so rescale for view.
for name, plane in (
    ("rg", channels.rg),
    ("by", channels.by),
    ("intensity", channels.intensity),
    ("motion", channels.motion),
):
    save_gray_png(os.path.join(OUT, f"01_channel_{name}.png"), normalized(plane))

# Each channel becomes a unit-energy saliency density through the phase-only
# transform: keep the spectrum's phase, flatten its amplitude, come back.
for name, plane in (("intensity", channels.intensity), ("motion", channels.motion)):
    spectral = pft(plane)
    save_gray_png(
        os.path.join(OUT, f"01_pft_{name}.png"), normalized(np.sqrt(spectral))
    )
    print(f"pft({name}): total energy {spectral.sum():.6f} (always 1)")

# Fusion: weighted sum of the four maps (motion counts double by default),
# disk smoothing, then max normalization.
saliency = fuse(channels, FusionConfig(), frame_index=10)
save_gray_png(os.path.join(OUT, "01_saliency.png"), saliency.values)

peak_y, peak_x = np.unravel_index(np.argmax(saliency.values), saliency.values.shape)
box = truth.boxes[10][0]
print(f"saliency peak at x={peak_x}, y={peak_y}")
print(f"actor box at frame 10: x {box.min_x:.0f}..{box.max_x:.0f}, "
      f"y {box.min_y:.0f}..{box.max_y:.0f}")
print(f"wrote PNGs to {OUT}")
