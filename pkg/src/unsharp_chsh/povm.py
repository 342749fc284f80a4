"""Dichotomic spin-POVMs with sharpness ``eta`` and bias ``alpha``.

The effects are

    E(+/-) = (I +/- (alpha*I + eta*A)) / 2,    A = a . sigma,

which is the same operator as the convex mixture of the two projectors of
``A``:

    E(+/-) = (1 +/- alpha +/- eta)/2 * P(+) + (1 +/- alpha -/+ eta)/2 * P(-).

``alpha = 0`` gives the unbiased family, ``eta = 1, alpha = 0`` the sharp
projective measurement, ``eta = 0, alpha = 0`` the trivial coin-flip.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    HERMITIAN_TOL,
    IDENTITY2,
    BlochVector,
    bloch_to_observable,
    frozen,
    min_eigenvalue_hermitian2,
)

PARAM_TOL = 1e-12


@dataclass(frozen=True)
class PovmParams:
    """Bias and sharpness of a spin-POVM; requires ``0 <= eta`` and ``|alpha| + eta <= 1``."""

    alpha: float = 0.0
    eta: float = 1.0

    def __post_init__(self):
        alpha, eta = float(self.alpha), float(self.eta)
        if not (math.isfinite(alpha) and math.isfinite(eta)):
            raise ValueError(f"POVM parameters must be finite (alpha={alpha}, eta={eta})")
        if eta < 0.0 or eta > 1.0 + PARAM_TOL:
            raise ValueError(f"sharpness eta must lie in [0, 1], got {eta}")
        if abs(alpha) + eta > 1.0 + PARAM_TOL:
            raise ValueError(
                f"|alpha| + eta must not exceed 1 (got |{alpha}| + {eta} = {abs(alpha) + eta}); "
                "an effect would have a negative eigenvalue"
            )
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "eta", eta)

    @property
    def is_unbiased(self) -> bool:
        return self.alpha == 0.0

    @property
    def is_sharp(self) -> bool:
        return self.alpha == 0.0 and self.eta == 1.0


SHARP = PovmParams(0.0, 1.0)


@dataclass(frozen=True, eq=False)
class ProjectorPair:
    plus: np.ndarray
    minus: np.ndarray
    direction: BlochVector


@dataclass(frozen=True, eq=False)
class EffectPair:
    """The two effects ``plus``/``minus`` of a dichotomic POVM along ``direction``.

    Construction checks completeness, positivity and that ``plus - minus``
    equals ``alpha*I + eta*(direction . sigma)``.
    """

    plus: np.ndarray
    minus: np.ndarray
    params: PovmParams
    direction: BlochVector

    def __post_init__(self):
        if np.max(np.abs(self.plus + self.minus - IDENTITY2)) > HERMITIAN_TOL:
            raise ValueError("effects do not sum to the identity")
        for name, e in (("plus", self.plus), ("minus", self.minus)):
            lam = min_eigenvalue_hermitian2(e)
            if lam < -HERMITIAN_TOL:
                raise ValueError(f"{name} effect is not positive (min eigenvalue {lam:.3e})")
        expected = self.params.alpha * IDENTITY2 + self.params.eta * bloch_to_observable(self.direction)
        if np.max(np.abs(self.observable - expected)) > HERMITIAN_TOL:
            raise ValueError("effect difference is not alpha*I + eta*(a . sigma)")

    @property
    def observable(self) -> np.ndarray:
        """``plus - minus``: the operator whose expectation is the outcome mean."""
        return frozen(self.plus - self.minus)

    def effect(self, outcome: int) -> np.ndarray:
        if outcome == 1:
            return self.plus
        if outcome == -1:
            return self.minus
        raise ValueError(f"outcome must be +1 or -1, got {outcome}")


def projectors(a: BlochVector) -> ProjectorPair:
    obs = bloch_to_observable(a)
    return ProjectorPair(frozen((IDENTITY2 + obs) / 2), frozen((IDENTITY2 - obs) / 2), a)


def biased_povm(a: BlochVector, params: PovmParams) -> EffectPair:
    shift = params.alpha * IDENTITY2 + params.eta * bloch_to_observable(a)
    return EffectPair(
        plus=frozen((IDENTITY2 + shift) / 2),
        minus=frozen((IDENTITY2 - shift) / 2),
        params=params,
        direction=a,
    )


def unbiased_povm(a: BlochVector, eta: float) -> EffectPair:
    return biased_povm(a, PovmParams(0.0, eta))


def spectral_weights(params: PovmParams) -> tuple[tuple[float, float], tuple[float, float]]:
    """Projector weights of each effect: ``((w++, w+-), (w-+, w--))``.

    ``w_kl`` is the weight of projector ``P(l)`` inside effect ``E(k)``; these
    are also the eigenvalues of the effects.
    """
    a, e = params.alpha, params.eta
    return (
        ((1 + a + e) / 2, (1 + a - e) / 2),
        ((1 - a - e) / 2, (1 - a + e) / 2),
    )


def spectral_povm(a: BlochVector, params: PovmParams) -> EffectPair:
    """Same POVM as :func:`biased_povm`, assembled from the projector mixture."""
    proj = projectors(a)
    (wpp, wpm), (wmp, wmm) = spectral_weights(params)
    return EffectPair(
        plus=frozen(wpp * proj.plus + wpm * proj.minus),
        minus=frozen(wmp * proj.plus + wmm * proj.minus),
        params=params,
        direction=a,
    )
