"""Single-qubit state representations for magic state distillation.

Provides the Bloch-ball state type, fidelity with respect to the T-type
magic state, the dephasing channel that projects states onto the magic
axis, and the in-plane coordinate system (a, r, theta) used to analyse
constant-fidelity planes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

SQRT3 = math.sqrt(3.0)
SQRT6 = math.sqrt(6.0)

#: Tolerance for membership in the closed unit ball.  Inputs whose norm
#: exceeds 1 by less than this are clamped back onto the sphere (iterated
#: maps can overshoot by rounding); anything further out is rejected.
BALL_TOL = 1e-9

ID2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
PHASE_K = np.array([[1, 0], [0, 1j]], dtype=complex)
#: The order-3 Clifford rotation about the magic axis; cycles the Bloch
#: coordinates (x, y, z) -> (y, z, x).
T_ROTATION = PHASE_K @ HADAMARD

#: Unit vector along the magic-state axis.
MAGIC_AXIS = np.array([1.0, 1.0, 1.0]) / SQRT3
#: In-plane reference axis ("modified x-axis"); theta is measured from it.
PLANE_AXIS_1 = np.array([1.0, 1.0, -2.0]) / SQRT6
#: Completing in-plane axis; positive theta rotates from PLANE_AXIS_1
#: toward this direction.
PLANE_AXIS_2 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2)


@dataclass(frozen=True)
class BlochVector:
    """A single-qubit state as real coordinates in the closed unit ball.

    Coordinates with norm in (1, 1 + BALL_TOL] are clamped onto the unit
    sphere and flagged via ``clamped``; norms beyond that raise ValueError.
    """

    x: float
    y: float
    z: float
    clamped: bool = field(default=False, compare=False)

    def __post_init__(self):
        x, y, z = float(self.x), float(self.y), float(self.z)
        if not (math.isfinite(x) and math.isfinite(y) and math.isfinite(z)):
            raise ValueError(f"non-finite Bloch coordinates ({x}, {y}, {z})")
        n2 = x * x + y * y + z * z
        if n2 > 1.0 + BALL_TOL:
            raise ValueError(
                f"Bloch vector ({x}, {y}, {z}) lies outside the unit ball "
                f"(|v|^2 = {n2})")
        if n2 > 1.0:
            s = 1.0 / math.sqrt(n2)
            object.__setattr__(self, "x", x * s)
            object.__setattr__(self, "y", y * s)
            object.__setattr__(self, "z", z * s)
            object.__setattr__(self, "clamped", True)
        else:
            object.__setattr__(self, "x", x)
            object.__setattr__(self, "y", y)
            object.__setattr__(self, "z", z)

    @classmethod
    def from_array(cls, v) -> "BlochVector":
        v = np.asarray(v, dtype=float).reshape(3)
        return cls(v[0], v[1], v[2])

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def norm(self) -> float:
        return math.sqrt(self.x ** 2 + self.y ** 2 + self.z ** 2)


def as_bloch(v) -> BlochVector:
    """Coerce a BlochVector or length-3 array-like to a BlochVector."""
    if isinstance(v, BlochVector):
        return v
    return BlochVector.from_array(v)


@dataclass(frozen=True)
class PlaneCoords:
    """Coordinates on a constant-fidelity plane.

    ``a`` is the signed distance parameter along the magic axis
    (a = x + y + z = sqrt(3) (2F - 1)), ``r`` the radial distance from the
    axis within the plane, and ``theta`` the angle in [0, 2*pi) measured
    from PLANE_AXIS_1 toward PLANE_AXIS_2.
    """

    a: float
    r: float
    theta: float

    def __post_init__(self):
        if self.r < 0:
            raise ValueError(f"radial coordinate must be >= 0, got {self.r}")
        object.__setattr__(self, "theta", float(self.theta) % (2 * math.pi))

    @property
    def fidelity(self) -> float:
        """Fidelity with the magic state shared by every point of the plane."""
        return 0.5 * (1.0 + self.a / SQRT3)


def _magic_basis_kets():
    # Fixed phase convention: polar angle arccos(1/sqrt(3)), azimuth pi/4.
    beta = math.acos(1.0 / SQRT3)
    phase = np.exp(1j * math.pi / 4)
    t0 = np.array([math.cos(beta / 2), phase * math.sin(beta / 2)])
    t1 = np.array([math.sin(beta / 2), -phase * math.cos(beta / 2)])
    return t0, t1


@dataclass(frozen=True)
class MagicBasis:
    """The T-type magic state and its orthogonal complement.

    ``t0``/``t1`` are 2x2 density matrices; the kets fix an explicit phase
    convention used when extracting matrix entries in this basis.
    """

    t0: np.ndarray
    t1: np.ndarray
    t0_ket: np.ndarray
    t1_ket: np.ndarray
    t0_bloch: np.ndarray
    t1_bloch: np.ndarray

    @classmethod
    def build(cls) -> "MagicBasis":
        t0_ket, t1_ket = _magic_basis_kets()
        return cls(
            t0=0.5 * (ID2 + (SIGMA_X + SIGMA_Y + SIGMA_Z) / SQRT3),
            t1=0.5 * (ID2 - (SIGMA_X + SIGMA_Y + SIGMA_Z) / SQRT3),
            t0_ket=t0_ket,
            t1_ket=t1_ket,
            t0_bloch=MAGIC_AXIS.copy(),
            t1_bloch=-MAGIC_AXIS.copy(),
        )


MAGIC_BASIS = MagicBasis.build()

#: The magic state itself as a BlochVector.
MAGIC_STATE = BlochVector(1 / SQRT3, 1 / SQRT3, 1 / SQRT3)


def fidelity_to_magic(v) -> float:
    """Fidelity <T0| rho |T0> of a Bloch-ball state with the magic state.

    Equals (1 + (x + y + z)/sqrt(3)) / 2.
    """
    v = as_bloch(v)
    return 0.5 * (1.0 + (v.x + v.y + v.z) / SQRT3)


def dephase(v) -> BlochVector:
    """Project a state onto the magic axis: (x, y, z) -> (s, s, s), s = mean.

    Idempotent and fidelity-preserving.
    """
    v = as_bloch(v)
    s = (v.x + v.y + v.z) / 3.0
    return BlochVector(s, s, s)


def bloch_to_density(v) -> np.ndarray:
    """2x2 density matrix rho = (I + x X + y Y + z Z) / 2."""
    v = as_bloch(v)
    return 0.5 * (ID2 + v.x * SIGMA_X + v.y * SIGMA_Y + v.z * SIGMA_Z)


def density_to_bloch(rho: np.ndarray) -> BlochVector:
    """Bloch vector of a single-qubit density matrix."""
    rho = np.asarray(rho)
    return BlochVector(
        float(np.trace(rho @ SIGMA_X).real),
        float(np.trace(rho @ SIGMA_Y).real),
        float(np.trace(rho @ SIGMA_Z).real),
    )


def dephase_density(rho: np.ndarray) -> np.ndarray:
    """Density-matrix form of :func:`dephase`.

    Averages rho over conjugation by the axis rotation T = KH:
    (rho + T rho T^dag + T^dag rho T) / 3.
    """
    t = T_ROTATION
    return (rho + t @ rho @ t.conj().T + t.conj().T @ rho @ t) / 3.0


def to_plane(v) -> PlaneCoords:
    """Decompose a state into plane coordinates (a, r, theta).

    By convention theta = 0 when r = 0.
    """
    v = as_bloch(v)
    arr = v.as_array()
    a = float(arr.sum())
    w = arr - a / 3.0
    r = float(np.linalg.norm(w))
    theta = math.atan2(float(w @ PLANE_AXIS_2), float(w @ PLANE_AXIS_1))
    if r == 0.0:
        theta = 0.0
    return PlaneCoords(a=a, r=r, theta=theta)


def from_plane(p: PlaneCoords) -> BlochVector:
    """Inverse of :func:`to_plane`; raises ValueError outside the unit ball."""
    arr = (p.a / 3.0) * np.ones(3) \
        + p.r * (math.cos(p.theta) * PLANE_AXIS_1 + math.sin(p.theta) * PLANE_AXIS_2)
    return BlochVector.from_array(arr)


def plane_points(fidelity: float, r, theta) -> np.ndarray:
    """Cartesian points for arrays of (r, theta) on a constant-fidelity plane.

    Vectorized companion of :func:`from_plane`; returns shape (..., 3) and
    performs no ball-membership check.
    """
    a = SQRT3 * (2.0 * fidelity - 1.0)
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    return (a / 3.0) * np.ones(r.shape + (3,)) + r[..., None] * (
        np.cos(theta)[..., None] * PLANE_AXIS_1
        + np.sin(theta)[..., None] * PLANE_AXIS_2)


def max_plane_radius(fidelity: float) -> float:
    """Largest in-ball radius on the plane of the given fidelity."""
    a = SQRT3 * (2.0 * fidelity - 1.0)
    return math.sqrt(max(1.0 - a * a / 3.0, 0.0))
