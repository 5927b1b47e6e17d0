"""
Peeling attention regions off a saliency map
============================================

The attention stage walks the saliency map from its global maximum down:
grab the 8-connected component around the peak whose values stay within a
row-dependent fraction of it, zero that component out (inhibition of
return), and repeat. Oversized components are suppressed, weak peaks stop
the walk, and at most four regions survive.

Run from the repository root::

    python demos/02_region_extraction.py
"""

import os

import numpy as np

from vigil import (
    ChannelConfig,
    FusionConfig,
    IorConfig,
    decompose,
    extract_regions,
    fuse,
    patrol_scene,
    render,
)
from vigil.frameio import annotate, save_gray_png, save_png
from vigil.ior import alpha_at

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

# Four patrolling actors in four lanes make a map with four clean peaks.
frames, _ = render(patrol_scene(seed=6))
earlier = decompose(frames[14], None, ChannelConfig())
channels = decompose(frames[15], earlier.intensity, ChannelConfig())
saliency = fuse(channels, FusionConfig(), frame_index=15)
save_gray_png(os.path.join(OUT, "02_saliency.png"), saliency.values)

# The acceptance band tightens toward the top of the frame: far objects are
# small, so their regions must hug the peak more closely.
config = IorConfig()
height = saliency.values.shape[0]
for row in (0, height // 2, height - 1):
    print(f"row {row:2d}: band is [{alpha_at(row, height, config):.2f} * peak, peak]")

regions = extract_regions(saliency, config)
print(f"\nkept {len(regions)} regions (cap {config.max_regions}):")
for i, region in enumerate(regions):
    cx, cy = region.center
    print(f"  #{i}: peak {region.peak_value:.3f} at {region.peak}, "
          f"{region.size} px, center ({cx:.1f}, {cy:.1f})")

# Outline every kept region on the working frame. Nothing is flagged here,
# so all boxes come out red.
annotated = annotate(frames[15].rgb, [(r.bbox, False) for r in regions])
save_png(os.path.join(OUT, "02_regions.png"), annotated)

# Show the inhibition: zero the first region's footprint and the map's
# next maximum moves to a different lane.
inhibited = saliency.values.copy()
xs = regions[0].pixels[:, 0]
ys = regions[0].pixels[:, 1]
inhibited[ys, xs] = 0.0
save_gray_png(os.path.join(OUT, "02_saliency_inhibited.png"), inhibited)
before = np.unravel_index(np.argmax(saliency.values), saliency.values.shape)
after = np.unravel_index(np.argmax(inhibited), inhibited.shape)
print(f"\nglobal max before inhibition: (y, x) = {before}")
print(f"global max after:             (y, x) = {after}")
print(f"wrote PNGs to {OUT}")
