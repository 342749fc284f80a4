"""Fixed-size complex matrix helpers for qubit and two-qubit operators.

Matrices are plain numpy arrays of shape (2, 2) or (4, 4) with complex128
entries.  Everything returned from this module is marked read-only so the
arrays behave like value types and can be shared freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
IMAG_RESIDUE_TOL = 1e-10
# BlochVector construction snaps norms inside this band back onto the sphere.
NORMALIZE_BAND = 1e-6
UNIT_TOL = 1e-9


def frozen(m) -> np.ndarray:
    """Return a read-only complex128 copy of ``m``."""
    out = np.array(m, dtype=np.complex128)
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix has non-finite entries")
    out.flags.writeable = False
    return out


IDENTITY2 = frozen(np.eye(2))
IDENTITY4 = frozen(np.eye(4))
PAULI_X = frozen([[0, 1], [1, 0]])
PAULI_Y = frozen([[0, -1j], [1j, 0]])
PAULI_Z = frozen([[1, 0], [0, -1]])


def _check_shape(m: np.ndarray, n: int, name: str = "matrix") -> None:
    if np.shape(m) != (n, n):
        raise ValueError(f"{name} must be {n}x{n}, got shape {np.shape(m)}")


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    return bool(np.max(np.abs(m - np.conj(np.transpose(m)))) <= tol)


@dataclass(frozen=True)
class BlochVector:
    """Direction of a spin observable ``x*X + y*Y + z*Z``.

    Inputs whose norm is within 1e-6 of one are renormalized; anything
    farther off the unit sphere raises ``ValueError``.
    """

    x: float
    y: float
    z: float

    def __post_init__(self):
        comps = (float(self.x), float(self.y), float(self.z))
        if not all(math.isfinite(c) for c in comps):
            raise ValueError(f"Bloch vector components must be finite: {comps}")
        norm = math.sqrt(sum(c * c for c in comps))
        if abs(norm - 1.0) > NORMALIZE_BAND:
            raise ValueError(f"Bloch vector must have unit norm, got |v| = {norm!r}")
        for name, c in zip("xyz", comps):
            object.__setattr__(self, name, c / norm)

    @classmethod
    def from_angles(cls, polar: float, azimuth: float = 0.0) -> "BlochVector":
        """Unit vector at polar angle ``polar`` from +z and azimuth from +x (radians)."""
        return cls(
            math.sin(polar) * math.cos(azimuth),
            math.sin(polar) * math.sin(azimuth),
            math.cos(polar),
        )

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def norm(self) -> float:
        return math.sqrt(self.x**2 + self.y**2 + self.z**2)


def bloch_to_observable(a: BlochVector) -> np.ndarray:
    """Return ``a . sigma``, a traceless Hermitian matrix with eigenvalues +1 and -1."""
    if abs(a.norm() - 1.0) > UNIT_TOL:
        raise ValueError(f"observable direction is not a unit vector (|a| = {a.norm()!r})")
    return frozen(a.x * PAULI_X + a.y * PAULI_Y + a.z * PAULI_Z)


def kron(m: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Kronecker product of two 2x2 matrices (first factor is Alice's)."""
    _check_shape(m, 2, "left factor")
    _check_shape(n, 2, "right factor")
    return frozen(np.kron(m, n))


def trace_product(a: np.ndarray, b: np.ndarray) -> float:
    """Return ``Re Tr[a b]`` for Hermitian 4x4 ``a`` and ``b``.

    Raises ``ValueError`` when the imaginary part exceeds 1e-10, which only
    happens for non-Hermitian inputs.
    """
    _check_shape(a, 4, "a")
    _check_shape(b, 4, "b")
    # Tr[ab] = sum_ij a_ij b_ji
    t = complex(np.sum(np.asarray(a) * np.transpose(b)))
    if abs(t.imag) > IMAG_RESIDUE_TOL:
        raise ValueError(
            f"Tr[ab] has imaginary part {t.imag:.3e}; inputs are not both Hermitian"
        )
    return t.real


def min_eigenvalue_hermitian2(m: np.ndarray) -> float:
    """Smaller eigenvalue of a Hermitian 2x2 matrix, from the characteristic polynomial."""
    _check_shape(m, 2)
    if not is_hermitian(m):
        raise ValueError("min_eigenvalue_hermitian2 needs a Hermitian matrix")
    p, q, r = m[0, 0].real, m[1, 1].real, m[0, 1]
    tr = p + q
    # tr^2 - 4 det written as a sum of squares so it never goes negative
    disc = (p - q) ** 2 + 4.0 * abs(r) ** 2
    return (tr - math.sqrt(disc)) / 2.0
