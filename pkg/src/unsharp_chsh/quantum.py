"""Two-qubit states, POVM correlations and CHSH values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .linalg import (
    HERMITIAN_TOL,
    IDENTITY4,
    BlochVector,
    frozen,
    is_hermitian,
    kron,
    trace_product,
)
from .povm import SHARP, EffectPair, PovmParams, biased_povm

POSITIVITY_TOL = 1e-10
SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Two-qubit state in the basis |00>, |01>, |10>, |11> (Alice first)."""

    matrix: np.ndarray

    def __post_init__(self):
        m = frozen(self.matrix)
        if m.shape != (4, 4):
            raise ValueError(f"density matrix must be 4x4, got shape {m.shape}")
        if not is_hermitian(m):
            raise ValueError("density matrix is not Hermitian")
        tr = np.trace(m).real
        if abs(tr - 1.0) > HERMITIAN_TOL:
            raise ValueError(f"density matrix trace is {tr!r}, expected 1")
        lam = float(np.linalg.eigvalsh(m)[0])
        if lam < -POSITIVITY_TOL:
            raise ValueError(f"density matrix is not positive semidefinite (min eigenvalue {lam:.3e})")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_entries(cls, values) -> "DensityMatrix":
        """Build from 32 reals: 16 row-major entries as (real, imag) pairs."""
        vals = [float(v) for v in values]
        if len(vals) != 32:
            raise ValueError(f"expected 32 real numbers (16 complex entries), got {len(vals)}")
        entries = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
        return cls(entries.reshape(4, 4))

    @classmethod
    def from_file(cls, path) -> "DensityMatrix":
        text = Path(path).read_text()
        return cls.from_entries(text.split())

    def to_entries(self) -> list[float]:
        out = []
        for z in self.matrix.reshape(-1):
            out.extend((float(z.real), float(z.imag)))
        return out


@dataclass(frozen=True)
class MeasurementSettings:
    a1: BlochVector
    a2: BlochVector
    b1: BlochVector
    b2: BlochVector


_R = 1.0 / SQRT2
# a1 = z, a2 = x, b1 = (z + x)/sqrt2, b2 = (z - x)/sqrt2
CANONICAL_SETTINGS = MeasurementSettings(
    a1=BlochVector(0.0, 0.0, 1.0),
    a2=BlochVector(1.0, 0.0, 0.0),
    b1=BlochVector(_R, 0.0, _R),
    b2=BlochVector(-_R, 0.0, _R),
)


def pure_state(theta: float) -> DensityMatrix:
    """Projector onto cos(theta)|00> + sin(theta)|11>."""
    psi = np.zeros(4)
    psi[0] = math.cos(theta)
    psi[3] = math.sin(theta)
    return DensityMatrix(np.outer(psi, psi))


def werner_state(p: float) -> DensityMatrix:
    """``p`` times the maximally entangled state plus ``1 - p`` white noise."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner mixing weight must lie in [0, 1], got {p}")
    return DensityMatrix(p * pure_state(math.pi / 4).matrix + (1.0 - p) * IDENTITY4 / 4.0)


def correlation(rho: DensityMatrix, alice: EffectPair, bob: EffectPair) -> float:
    """Outcome-product expectation ``sum_ab a*b*Tr[rho (E_a x F_b)]``."""
    total = 0.0
    for a in (1, -1):
        for b in (1, -1):
            total += a * b * trace_product(rho.matrix, kron(alice.effect(a), bob.effect(b)))
    return total


def chsh_value(
    rho: DensityMatrix,
    settings: MeasurementSettings = CANONICAL_SETTINGS,
    params_a: PovmParams = SHARP,
    params_b: PovmParams | None = None,
) -> float:
    """<A1B1> + <A1B2> + <A2B1> - <A2B2> computed from the density matrix.

    Bob uses Alice's parameters unless ``params_b`` is given.
    """
    if params_b is None:
        params_b = params_a
    A1 = biased_povm(settings.a1, params_a)
    A2 = biased_povm(settings.a2, params_a)
    B1 = biased_povm(settings.b1, params_b)
    B2 = biased_povm(settings.b2, params_b)
    return (
        correlation(rho, A1, B1)
        + correlation(rho, A1, B2)
        + correlation(rho, A2, B1)
        - correlation(rho, A2, B2)
    )


def closed_form_unbiased(theta: float, eta: float) -> float:
    """Quantum CHSH value of the pure state at canonical settings, unbiased POVMs."""
    PovmParams(0.0, eta)
    return SQRT2 * eta**2 * (1.0 + math.sin(2 * theta))


def closed_form_biased(theta: float, alpha: float, eta: float) -> float:
    """Quantum CHSH value of the pure state at canonical settings, biased POVMs."""
    PovmParams(alpha, eta)
    c, s = math.cos(2 * theta), math.sin(2 * theta)
    return SQRT2 * eta * (alpha * c + eta * s + eta) + 2 * alpha * (alpha + eta * c)
