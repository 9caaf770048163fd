"""Exact coordinate model: scaled-integer coordinates, rotated frames, predicates.

All geometry in this package runs on scaled 64-bit integers.  Decimal inputs
are multiplied by a fixed scale factor (default 10^6, override with the
GEOSEP_SCALE environment variable) so every comparison made by the solvers is
exact; there is no epsilon anywhere.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

RED = 0
BLUE = 1

DEFAULT_SCALE = 10**6

# int64 sentinels standing in for -inf / +inf in query boxes and witnesses.
NEG_INF = -(2**63)
POS_INF = 2**63 - 1

# Coordinates after scaling must stay within +-2^40 so that axis-parallel
# comparisons are trivially safe in int64.
COORD_LIMIT = 2**40
# The arbitrary-orientation solvers form dot/cross products of coordinate
# differences; +-2^30 keeps |u|,|v| below 2^62 so the int64 kernels are exact.
FRAME_LIMIT = 2**30
# Weighted sums must not overflow: per-point weight bound.
WEIGHT_LIMIT = 2**40


class InputError(ValueError):
    """Malformed or out-of-range input (CLI exit code 2)."""


def scale_factor() -> int:
    raw = os.environ.get("GEOSEP_SCALE")
    if raw is None:
        return DEFAULT_SCALE
    try:
        value = int(raw)
    except ValueError as exc:
        raise InputError(f"GEOSEP_SCALE must be an integer, got {raw!r}") from exc
    if value <= 0:
        raise InputError("GEOSEP_SCALE must be positive")
    return value


def parse_scaled(text: str, scale: int) -> int:
    """Parse a decimal literal into an exact scaled integer.

    Accepts an optional sign, an integer part and up to as many fractional
    digits as the scale factor carries; no rounding ever happens.
    """
    s = text.strip()
    if not s:
        raise InputError("empty coordinate")
    sign = 1
    if s[0] in "+-":
        if s[0] == "-":
            sign = -1
        s = s[1:]
    if not s:
        raise InputError(f"bare sign in {text!r}")
    if "." in s:
        whole, frac = s.split(".", 1)
    else:
        whole, frac = s, ""
    if whole == "":
        whole = "0"
    if not whole.isdigit() or (frac and not frac.isdigit()):
        raise InputError(f"not a decimal literal: {text!r}")
    value = int(whole) * scale
    if frac:
        # frac/10^len(frac) * scale must be an integer.
        num = int(frac) * scale
        den = 10 ** len(frac)
        if num % den != 0:
            raise InputError(f"{text!r} has more precision than scale {scale} keeps")
        value += num // den
    return sign * value


def format_scaled(value: int, scale: int) -> str:
    """Inverse of ``parse_scaled``; round-trips bit-exactly."""
    if value == NEG_INF:
        return "-inf"
    if value == POS_INF:
        return "inf"
    sign = "-" if value < 0 else ""
    mag = abs(value)
    whole, rem = divmod(mag, scale)
    if rem == 0:
        return f"{sign}{whole}"
    frac = str(rem).rjust(len(str(scale)) - 1, "0").rstrip("0")
    return f"{sign}{whole}.{frac}"


@dataclass(frozen=True)
class Frame:
    """Rotated frame defined by a candidate pair (p, q).

    The directed line p->q becomes the u-axis.  For a point r,
    u(r) = (r-p).(dx,dy) and v(r) = dx*(ry-py) - dy*(rx-px); v > 0 means r is
    to the left of p->q ("above" when the line is read as the x-axis).  Both
    are unnormalized, so every comparison between frame coordinates is exact.
    """

    px: int
    py: int
    dx: int
    dy: int

    def __post_init__(self) -> None:
        if self.dx == 0 and self.dy == 0:
            raise ValueError("degenerate frame: p == q")

    @classmethod
    def from_pair(cls, px: int, py: int, qx: int, qy: int) -> "Frame":
        return cls(px, py, qx - px, qy - py)

    @property
    def uq(self) -> int:
        """u-coordinate of q, always positive."""
        return self.dx * self.dx + self.dy * self.dy


def frame_coords(x: int, y: int, f: Frame) -> tuple[int, int]:
    rx = x - f.px
    ry = y - f.py
    u = f.dx * rx + f.dy * ry
    v = f.dx * ry - f.dy * rx
    return u, v


def frame_coords_float(x: int, y: int, f: Frame) -> tuple[float, float]:
    """Floating-point rotation oracle for frame_coords (tests only)."""
    ang = math.atan2(f.dy, f.dx)
    c, s = math.cos(ang), math.sin(ang)
    rx, ry = x - f.px, y - f.py
    length = math.hypot(f.dx, f.dy)
    return (c * rx + s * ry) * length, (-s * rx + c * ry) * length


def dominates(a: tuple[int, int], b: tuple[int, int]) -> bool:
    """Strict coordinate-wise dominance: a precedes b in both axes."""
    return a[0] < b[0] and a[1] < b[1]


# ---------------------------------------------------------------------------
# Point-set containers.
#
# Every solver works on one contiguous int64 matrix, a row per point, so the
# in-place algorithms can swap whole rows.  The column layouts are fixed:
#
#   2D colored:  x, y, color, id         (kind "2d")
#   2D weighted: x, y, weight, id        (kind "w2d")
#   3D colored:  x, y, z, color, id      (kind "3d")
#
# `id` is the 0-based input line order and makes every comparison a strict
# total order even with duplicate points.
# ---------------------------------------------------------------------------

KIND_2D = "2d"
KIND_W2D = "w2d"
KIND_3D = "3d"

_NCOLS = {KIND_2D: 4, KIND_W2D: 4, KIND_3D: 5}


class PointSet:
    """A point array plus its interpretation (see module comment)."""

    def __init__(self, kind: str, data: np.ndarray, scale: int):
        if kind not in _NCOLS:
            raise ValueError(f"unknown point kind {kind!r}")
        if data.dtype != np.int64 or data.ndim != 2 or data.shape[1] != _NCOLS[kind]:
            raise ValueError("point data must be an int64 matrix with the kind's columns")
        self.kind = kind
        self.data = data
        self.scale = scale

    def __len__(self) -> int:
        return self.data.shape[0]

    @property
    def dim(self) -> int:
        return 3 if self.kind == KIND_3D else 2

    def color_column(self) -> int:
        if self.kind == KIND_W2D:
            raise ValueError("weighted points carry no color column")
        return 2 if self.kind == KIND_2D else 3

    def id_column(self) -> int:
        return _NCOLS[self.kind] - 1

    def counts(self) -> tuple[int, int]:
        """(n reds, m blues); weighted points classify by sign."""
        if self.kind == KIND_W2D:
            pos = int(np.count_nonzero(self.data[:, 2] > 0))
            return pos, len(self) - pos
        col = self.data[:, self.color_column()]
        blue = int(np.count_nonzero(col == BLUE))
        return len(self) - blue, blue

    def copy(self) -> "PointSet":
        return PointSet(self.kind, self.data.copy(), self.scale)

    def signature(self) -> bytes:
        """Order-independent fingerprint, for permutation checks."""
        rows = self.data[np.lexsort(self.data.T[::-1])]
        return rows.tobytes()


def make_points_2d(points: list[tuple[int, int, int]], scale: int = DEFAULT_SCALE) -> PointSet:
    """Build a 2D colored set from (x, y, color) scaled-integer triples."""
    data = np.zeros((len(points), 4), dtype=np.int64)
    for i, (x, y, c) in enumerate(points):
        _check_coord(x)
        _check_coord(y)
        if c not in (RED, BLUE):
            raise InputError(f"bad color {c}")
        data[i] = (x, y, c, i)
    return PointSet(KIND_2D, data, scale)


def make_points_w2d(points: list[tuple[int, int, int]], scale: int = DEFAULT_SCALE) -> PointSet:
    """Build a weighted set from (x, y, weight) scaled-integer triples."""
    data = np.zeros((len(points), 4), dtype=np.int64)
    for i, (x, y, w) in enumerate(points):
        _check_coord(x)
        _check_coord(y)
        if w == 0:
            raise InputError("zero weight is not allowed")
        if abs(w) > WEIGHT_LIMIT:
            raise InputError(f"weight {w} out of range")
        data[i] = (x, y, w, i)
    return PointSet(KIND_W2D, data, scale)


def make_points_3d(points: list[tuple[int, int, int, int]], scale: int = DEFAULT_SCALE) -> PointSet:
    data = np.zeros((len(points), 5), dtype=np.int64)
    for i, (x, y, z, c) in enumerate(points):
        _check_coord(x)
        _check_coord(y)
        _check_coord(z)
        if c not in (RED, BLUE):
            raise InputError(f"bad color {c}")
        data[i] = (x, y, z, c, i)
    return PointSet(KIND_3D, data, scale)


def _check_coord(v: int) -> None:
    if abs(v) > COORD_LIMIT:
        raise InputError(f"scaled coordinate {v} exceeds +-2^40")


def check_frame_safe(ps: PointSet) -> None:
    """Reject inputs whose rotated-frame products could overflow int64.

    The arbitrary-orientation solvers compute u, v as products of coordinate
    differences in 64-bit kernels; |coord| <= 2^30 keeps those exact.
    """
    cols = 2 if ps.kind != KIND_3D else 3
    coords = ps.data[:, :cols]
    if len(ps) and int(np.abs(coords).max()) > FRAME_LIMIT:
        raise InputError(
            "coordinates exceed +-2^30 after scaling; the rotated-frame solvers "
            "require the smaller range (reduce GEOSEP_SCALE or recentre the data)"
        )


def bounding_box(ps: PointSet) -> list[tuple[int, int]]:
    """Closed per-dimension bounds of the set; empty set gives zero box."""
    cols = ps.dim
    if len(ps) == 0:
        return [(0, 0)] * cols
    out = []
    for d in range(cols):
        col = ps.data[:, d]
        out.append((int(col.min()), int(col.max())))
    return out
