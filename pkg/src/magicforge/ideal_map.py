"""Closed-form single-round distillation map and its iterated dynamics.

The post-selected round with perfect gates acts on Bloch coordinates as an
explicit rational map.  This module provides that map, the exact in-plane
fidelity-gain formula, attractor classification under iteration, basin
grids on constant-fidelity planes, and threshold root-finding.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import bisect

from .bloch import (SQRT3, SQRT6, BlochVector, PlaneCoords, as_bloch,
                    max_plane_radius, plane_points)

#: Exact on-axis distillation threshold (1 + sqrt(3/7)) / 2.
ON_AXIS_THRESHOLD = 0.5 * (1.0 + math.sqrt(3.0 / 7.0))


def distill_map_xyz(v: np.ndarray) -> np.ndarray:
    """Vectorized post-selected round map on Bloch coordinates, shape (..., 3).

    The closed ball maps into itself; the denominator is >= 1 everywhere.
    The origin is a fixed point and the eight corner states
    (+-1, +-1, +-1)/sqrt(3) are permuted among themselves by exact
    substitution, (sx, sy, sz) -> (sz, sy, sx): corners with sx = sz
    (including the magic state and its orthogonal complement) are fixed,
    the other four form two 2-cycles.  The map does not commute with the
    2pi/3 rotation R about the magic axis but anti-commutes:
    map(R v) = R^-1 map(v), which still makes the magic-state basin
    three-fold symmetric.
    """
    v = np.asarray(v, dtype=float)
    x, y, z = v[..., 0], v[..., 1], v[..., 2]
    x2, y2, z2 = x * x, y * y, z * z
    den = 1.0 + 5.0 * (z2 * y2 + x2 * y2 + z2 * x2)
    xo = -z * (z2 * z2 - 5.0 * x2 + 5.0 * y2 * (x2 - 1.0)) / den
    yo = -y * (y2 * y2 - 5.0 * z2 + 5.0 * x2 * (z2 - 1.0)) / den
    zo = -x * (x2 * x2 - 5.0 * z2 + 5.0 * y2 * (z2 - 1.0)) / den
    return np.stack([xo, yo, zo], axis=-1)


def distill_map(v) -> BlochVector:
    """One round of distillation with perfect gates on a single state."""
    return BlochVector.from_array(distill_map_xyz(as_bloch(v).as_array()))


def fidelity_difference(p: PlaneCoords) -> float:
    """Exact one-round fidelity gain d = F_out - F_in in plane coordinates.

    Three-fold symmetric in theta (only cos 3*theta appears); the gain is
    maximal at theta in {0, 2pi/3, 4pi/3} for axis parameters of interest.
    """
    a, r, th = p.a, p.r, p.theta
    c3 = math.cos(3.0 * th)
    num = a * (54.0 - 60.0 * a ** 2 + 14.0 * a ** 4 + 135.0 * r ** 4) \
        + 15.0 * SQRT6 * (a ** 2 - 3.0) * r ** 3 * c3
    den = 108.0 + 20.0 * a ** 4 + 135.0 * r ** 4 + 60.0 * SQRT6 * a * r ** 3 * c3
    return -2.0 * num / (2.0 * SQRT3 * den)


# --- attractor classification -------------------------------------------------

_CORNER_SIGNS = tuple((sx, sy, sz) for sx in (1, -1) for sy in (1, -1)
                      for sz in (1, -1))
_CORNERS = np.array(_CORNER_SIGNS, dtype=float) / SQRT3
_MIXED_CODE = 8
_UNRESOLVED_CODE = -1


@dataclass(frozen=True)
class AttractorClass:
    """Limit classification of an iterated trajectory.

    ``kind`` is one of "MagicT0", "Corner", "OrthogonalT1", "MaximallyMixed",
    "Unresolved"; ``signs`` carries the corner sign triple when applicable.
    The all-plus corner is reported as MagicT0 and the all-minus corner as
    OrthogonalT1.
    """

    kind: str
    signs: tuple | None = None

    @classmethod
    def corner(cls, signs) -> "AttractorClass":
        signs = tuple(int(s) for s in signs)
        if signs == (1, 1, 1):
            return cls("MagicT0", signs)
        if signs == (-1, -1, -1):
            return cls("OrthogonalT1", signs)
        return cls("Corner", signs)

    @classmethod
    def mixed(cls) -> "AttractorClass":
        return cls("MaximallyMixed")

    @classmethod
    def unresolved(cls) -> "AttractorClass":
        return cls("Unresolved")

    @property
    def sign_flips(self) -> int | None:
        """Number of sign changes from the magic corner (0..3); None if n/a."""
        if self.signs is None:
            return None
        return sum(1 for s in self.signs if s < 0)

    @property
    def label(self) -> str:
        # comma-free so the label embeds cleanly in CSV rows
        if self.kind == "Corner":
            return "Corner(%s)" % "".join("+" if s > 0 else "-" for s in self.signs)
        return self.kind

    @classmethod
    def from_label(cls, label: str) -> "AttractorClass":
        if label.startswith("Corner("):
            signs = tuple(1 if ch == "+" else -1 for ch in label[7:-1])
            return cls.corner(signs)
        if label == "MagicT0":
            return cls("MagicT0", (1, 1, 1))
        if label == "OrthogonalT1":
            return cls("OrthogonalT1", (-1, -1, -1))
        return cls(label)


def _code_to_class(code: int) -> AttractorClass:
    if code == _UNRESOLVED_CODE:
        return AttractorClass.unresolved()
    if code == _MIXED_CODE:
        return AttractorClass.mixed()
    return AttractorClass.corner(_CORNER_SIGNS[code])


def _classify_batch(points: np.ndarray, max_rounds: int, radius_tol: float):
    """Iterate the map on shape-(m, 3) points until within radius_tol of an
    attractor.  Returns (codes, rounds_used); code -1 marks unresolved."""
    v = np.array(points, dtype=float)
    m = len(v)
    codes = np.full(m, _UNRESOLVED_CODE, dtype=int)
    rounds = np.full(m, max_rounds, dtype=int)
    active = np.ones(m, dtype=bool)
    tol2 = radius_tol * radius_tol
    for k in range(max_rounds + 1):
        if not active.any():
            break
        va = v[active]
        idx = np.flatnonzero(active)
        d2 = ((va[:, None, :] - _CORNERS[None, :, :]) ** 2).sum(-1)
        corner_hit = d2.min(axis=1) < tol2
        mixed_hit = (va * va).sum(-1) < tol2
        hit = corner_hit | mixed_hit
        if hit.any():
            sel = idx[hit]
            codes[sel] = np.where(corner_hit[hit], d2.argmin(axis=1)[hit],
                                  _MIXED_CODE)
            rounds[sel] = k
            active[sel] = False
        if k < max_rounds and active.any():
            v[active] = distill_map_xyz(v[active])
    return codes, rounds


@dataclass(frozen=True)
class IterationTrace:
    """States visited under iteration, with the final classification."""

    states: tuple
    classification: AttractorClass
    rounds_used: int


def iterate_and_classify(v, max_rounds: int = 60,
                         radius_tol: float = 1e-6) -> IterationTrace:
    """Iterate the round map and classify the limiting behaviour.

    Classification happens before each application, so an input already
    within radius_tol of an attractor uses 0 rounds.  Unresolved is a valid
    outcome, never an error.
    """
    if max_rounds < 1:
        raise ValueError("max_rounds must be >= 1")
    state = as_bloch(v)
    states = [state]
    for k in range(max_rounds + 1):
        arr = states[-1].as_array()
        d2 = ((arr - _CORNERS) ** 2).sum(-1)
        if d2.min() < radius_tol ** 2:
            return IterationTrace(tuple(states),
                                  _code_to_class(int(d2.argmin())), k)
        if (arr * arr).sum() < radius_tol ** 2:
            return IterationTrace(tuple(states), AttractorClass.mixed(), k)
        if k < max_rounds:
            states.append(distill_map(states[-1]))
    return IterationTrace(tuple(states), AttractorClass.unresolved(), max_rounds)


@dataclass(frozen=True)
class BasinPoint:
    """One grid cell of a basin map on a constant-fidelity plane."""

    r: float
    theta: float
    x: float
    y: float
    z: float
    classification: AttractorClass | None
    rounds_used: int
    in_ball: bool


def basin_grid(fidelity: float, r_max: float | None = None, n_r: int = 80,
               n_theta: int = 120, max_rounds: int = 60,
               radius_tol: float = 1e-6, threads: int = 1) -> list:
    """Classify every point of an (r, theta) grid on a fidelity plane.

    Rows are emitted row-major: r varies in the outer loop, theta (endpoint
    excluded) in the inner one.  Grid points outside the unit ball carry
    classification None and in_ball False.  With threads > 1 the points are
    classified in parallel chunks; output order and values are independent
    of the thread count.
    """
    if not 0.0 < fidelity < 1.0:
        raise ValueError(f"fidelity must be in (0, 1), got {fidelity}")
    if n_r < 1 or n_theta < 1:
        raise ValueError("grid dimensions must be >= 1")
    ball_r = max_plane_radius(fidelity)
    if r_max is None:
        r_max = ball_r
    rs = np.linspace(0.0, r_max, n_r)
    ths = np.linspace(0.0, 2.0 * math.pi, n_theta, endpoint=False)
    rg, tg = np.meshgrid(rs, ths, indexing="ij")
    pts = plane_points(fidelity, rg.ravel(), tg.ravel())
    in_ball = (pts ** 2).sum(-1) <= 1.0 + 1e-12
    codes = np.full(pts.shape[0], _UNRESOLVED_CODE, dtype=int)
    rounds = np.zeros(pts.shape[0], dtype=int)
    if in_ball.any():
        inside = pts[in_ball]
        if threads > 1 and len(inside) > threads:
            from concurrent.futures import ThreadPoolExecutor
            chunks = np.array_split(np.arange(len(inside)), threads)
            with ThreadPoolExecutor(max_workers=threads) as ex:
                results = list(ex.map(
                    lambda ix: _classify_batch(inside[ix], max_rounds, radius_tol),
                    chunks))
            c = np.concatenate([r[0] for r in results])
            n = np.concatenate([r[1] for r in results])
        else:
            c, n = _classify_batch(inside, max_rounds, radius_tol)
        codes[in_ball], rounds[in_ball] = c, n
    out = []
    for i in range(pts.shape[0]):
        cls = _code_to_class(int(codes[i])) if in_ball[i] else None
        out.append(BasinPoint(
            r=float(rg.ravel()[i]), theta=float(tg.ravel()[i]),
            x=float(pts[i, 0]), y=float(pts[i, 1]), z=float(pts[i, 2]),
            classification=cls, rounds_used=int(rounds[i]),
            in_ball=bool(in_ball[i])))
    return out


# --- thresholds ----------------------------------------------------------------

def on_axis_gain(fidelity: float) -> float:
    """One-round fidelity gain for a state on the magic axis."""
    return fidelity_difference(PlaneCoords(a=SQRT3 * (2 * fidelity - 1),
                                           r=0.0, theta=0.0))


def on_axis_threshold(xtol: float = 1e-10) -> float:
    """Fidelity above which on-axis states gain fidelity, by bisection.

    The gain changes sign exactly once in (1/2, 1); the root equals
    (1 + sqrt(3/7)) / 2.
    """
    return float(bisect(on_axis_gain, 0.51, 0.999, xtol=xtol))


def _converges_to_magic(fidelity: float, theta: float, n_r: int,
                        max_rounds: int, radius_tol: float) -> bool:
    rs = np.linspace(0.0, max_plane_radius(fidelity), n_r)
    pts = plane_points(fidelity, rs, np.full(n_r, theta))
    codes, _ = _classify_batch(pts, max_rounds, radius_tol)
    return bool((codes == 0).any())


def off_axis_threshold(theta: float, n_r: int = 400, max_rounds: int = 60,
                       f_tol: float = 1e-10, scan_step: float = 1e-3,
                       f_start: float = 0.95,
                       radius_tol: float = 1e-6) -> float:
    """Fidelity floor for convergence to the magic state at a fixed angle.

    Scans the radial grid on each fidelity plane and returns the lower edge
    of the upper contiguous region of planes containing at least one
    converging point.  The contiguity qualifier matters: at angles of
    minimal gain, isolated far-from-axis windows well below the on-axis
    threshold also converge (the first round throws such states across the
    plane into an angle of maximal gain), so the raw "lowest converging
    fidelity" would not be a useful threshold.  At the angles of maximal
    gain the region is contiguous and the returned value is the familiar
    slightly-lowered threshold.
    """
    if not 0.0 <= theta < 2.0 * math.pi:
        theta = float(theta) % (2.0 * math.pi)

    def ok(f):
        return _converges_to_magic(f, theta, n_r, max_rounds, radius_tol)

    if not ok(f_start):
        raise ValueError(f"no convergence at the scan start F={f_start}")
    hi = f_start
    lo = hi - scan_step
    while lo > 0.5 and ok(lo):
        hi = lo
        lo -= scan_step
    if lo <= 0.5:
        return 0.5
    while hi - lo > f_tol:
        mid = 0.5 * (lo + hi)
        if ok(mid):
            hi = mid
        else:
            lo = mid
    # return the end known to converge so the result is never below the floor
    return hi
