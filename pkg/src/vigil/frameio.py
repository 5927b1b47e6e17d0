"""Frame ingestion and emission: raw planar RGB streams, image dirs, PNGs.

The raw stream format is a 20-byte header (magic ``RVID``, then width,
height, frame count, and bit depth as little-endian uint32, depth fixed at
8) followed by the frames in order, each stored planar: the full R plane,
then G, then B, row-major uint8. Readers map samples to [0, 1] by dividing
by 255. Image-directory ingestion walks common raster files in
lexicographic order.
"""

from __future__ import annotations

import os
import struct
from typing import Iterable, Iterator

import numpy as np
from PIL import Image

from .channels import Frame

RVID_MAGIC = b"RVID"
_HEADER = struct.Struct("<4sIIII")
IMAGE_EXTENSIONS = (".png", ".jpg", ".jpeg", ".bmp", ".tif", ".tiff", ".ppm", ".pgm")


def write_rvid(path, frames: Iterable[np.ndarray], width: int, height: int,
               frame_count: int) -> None:
    """Stream float RGB arrays in [0, 1] out as a raw 8-bit planar video."""
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(RVID_MAGIC, width, height, frame_count, 8))
        written = 0
        for rgb in frames:
            if rgb.shape != (height, width, 3):
                raise ValueError(f"frame shape {rgb.shape} does not match header")
            data = np.clip(np.round(rgb * 255.0), 0, 255).astype(np.uint8)
            for plane in range(3):
                fh.write(data[:, :, plane].tobytes())
            written += 1
        if written != frame_count:
            raise ValueError(f"wrote {written} frames, header promised {frame_count}")


def read_rvid_header(path) -> tuple[int, int, int]:
    """(width, height, frame_count) of a raw video file."""
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
    if len(header) < _HEADER.size:
        raise ValueError(f"{path}: truncated header")
    magic, width, height, frame_count, depth = _HEADER.unpack(header)
    if magic != RVID_MAGIC:
        raise ValueError(f"{path}: not a raw video file (bad magic)")
    if depth != 8:
        raise ValueError(f"{path}: unsupported bit depth {depth}")
    if width < 1 or height < 1:
        raise ValueError(f"{path}: invalid frame size {width}x{height}")
    return width, height, frame_count


def iter_rvid(path) -> Iterator[Frame]:
    """Yield frames from a raw video one at a time (bounded memory)."""
    width, height, frame_count = read_rvid_header(path)
    plane_bytes = width * height
    with open(path, "rb") as fh:
        fh.seek(_HEADER.size)
        for index in range(frame_count):
            raw = fh.read(3 * plane_bytes)
            if len(raw) < 3 * plane_bytes:
                raise ValueError(f"{path}: truncated at frame {index}")
            planes = np.frombuffer(raw, dtype=np.uint8).reshape(3, height, width)
            rgb = planes.transpose(1, 2, 0).astype(float) / 255.0
            yield Frame(rgb=rgb, index=index)


def list_image_files(directory) -> list[str]:
    names = [
        name for name in sorted(os.listdir(directory))
        if name.lower().endswith(IMAGE_EXTENSIONS)
    ]
    return [os.path.join(directory, name) for name in names]


def iter_image_dir(directory) -> Iterator[Frame]:
    """Yield frames from a directory of raster images, lexicographic order."""
    paths = list_image_files(directory)
    if not paths:
        raise ValueError(f"{directory}: no image files found")
    for index, path in enumerate(paths):
        with Image.open(path) as img:
            rgb = np.asarray(img.convert("RGB"), dtype=float) / 255.0
        yield Frame(rgb=rgb, index=index)


def open_input(path) -> tuple[Iterator[Frame], int | None]:
    """Frame iterator plus frame count (None when unknown) for a path.

    A directory is treated as an image sequence, anything else as a raw
    video file.
    """
    if os.path.isdir(path):
        paths = list_image_files(path)
        if not paths:
            raise ValueError(f"{path}: no image files found")
        return iter_image_dir(path), len(paths)
    width, height, frame_count = read_rvid_header(path)
    return iter_rvid(path), frame_count


def save_png(path, rgb: np.ndarray) -> None:
    """Write a float RGB array in [0, 1] as an 8-bit PNG."""
    data = np.clip(np.round(rgb * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(data, mode="RGB").save(path)


def save_gray_png(path, values: np.ndarray) -> None:
    """Write a float plane in [0, 1] as an 8-bit grayscale PNG."""
    data = np.clip(np.round(values * 255.0), 0, 255).astype(np.uint8)
    Image.fromarray(data, mode="L").save(path)


RED_OUTLINE = (1.0, 0.0, 0.0)
BLUE_OUTLINE = (0.0, 0.0, 1.0)


def draw_box(rgb: np.ndarray, bbox: tuple[int, int, int, int],
             color: tuple[float, float, float]) -> None:
    """Paint a one-pixel rectangle outline in place; bbox is inclusive."""
    height, width = rgb.shape[:2]
    min_x, min_y, max_x, max_y = bbox
    min_x = max(0, min(width - 1, int(min_x)))
    max_x = max(0, min(width - 1, int(max_x)))
    min_y = max(0, min(height - 1, int(min_y)))
    max_y = max(0, min(height - 1, int(max_y)))
    col = np.asarray(color)
    rgb[min_y, min_x:max_x + 1] = col
    rgb[max_y, min_x:max_x + 1] = col
    rgb[min_y:max_y + 1, min_x] = col
    rgb[min_y:max_y + 1, max_x] = col


def annotate(rgb: np.ndarray,
             outlines: list[tuple[tuple[int, int, int, int], bool]]) -> np.ndarray:
    """Copy of the frame with region boxes drawn: blue if flagged, else red."""
    out = rgb.copy()
    for bbox, flagged in outlines:
        draw_box(out, bbox, BLUE_OUTLINE if flagged else RED_OUTLINE)
    return out
