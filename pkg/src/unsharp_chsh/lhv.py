"""Local hidden-variable bounds for CHSH with unsharp spin-POVMs.

The hidden variable only fixes responses of the *projectors* P(+)/P(-) of
each observable.  The response of an effect is the same convex mixture of
projector responses as the effect is of projectors, so with ``q`` the
probability that the hidden state answers +1 for the projective
measurement, the POVM outcome mean is

    m = alpha + eta * (2q - 1).

Correlations factorize, so the CHSH expression is multilinear in the four
``q`` values and its maximum over [0, 1]^4 sits on one of the 16 vertices
(deterministic strategies).  A mixture over hidden states cannot beat its
best component, so the vertex maximum is the local bound.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .povm import PovmParams, spectral_weights

BOUND_TOL = 1e-12


@dataclass(frozen=True)
class DeterministicStrategy:
    """One outcome sign per observable; ``+1`` means the hidden state picks P(+)."""

    s_a1: int
    s_a2: int
    s_b1: int
    s_b2: int

    def __post_init__(self):
        for name in ("s_a1", "s_a2", "s_b1", "s_b2"):
            if getattr(self, name) not in (1, -1):
                raise ValueError(f"{name} must be +1 or -1, got {getattr(self, name)!r}")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.s_a1, self.s_a2, self.s_b1, self.s_b2)

    def __str__(self):
        return "(" + ", ".join("+1" if s > 0 else "-1" for s in self.as_tuple()) + ")"


ALL_STRATEGIES: tuple[DeterministicStrategy, ...] = tuple(
    DeterministicStrategy(*signs) for signs in itertools.product((1, -1), repeat=4)
)


@dataclass(frozen=True)
class LhvBoundResult:
    bound: float
    maximizing_strategies: tuple[DeterministicStrategy, ...] = field(default=())
    # None when Alice and Bob use different parameters (no known closed form)
    closed_form: float | None = None


def povm_response(q_plus: float, params: PovmParams) -> tuple[float, float]:
    """Probabilities of outcomes +1 and -1 of the POVM, given the projector response.

    ``q_plus`` is the hidden state's probability for P(+); the effect
    responses are the projector responses weighted by the spectral weights.
    """
    if not 0.0 <= q_plus <= 1.0:
        raise ValueError(f"response probability must be in [0, 1], got {q_plus}")
    (wpp, wpm), (wmp, wmm) = spectral_weights(params)
    q_minus = 1.0 - q_plus
    return wpp * q_plus + wpm * q_minus, wmp * q_plus + wmm * q_minus


def response_mean(q_plus, alpha: float, eta: float):
    """Outcome mean ``alpha + eta*(2q - 1)``; vectorizes over ``q_plus``."""
    return alpha + eta * (2.0 * np.asarray(q_plus) - 1.0)


def _side_params(alpha, eta, alpha_b, eta_b) -> tuple[float, float, float, float]:
    alpha_b = alpha if alpha_b is None else alpha_b
    eta_b = eta if eta_b is None else eta_b
    PovmParams(alpha, eta)
    PovmParams(alpha_b, eta_b)
    return alpha, eta, alpha_b, eta_b


def strategy_correlation(s_a: int, s_b: int, alpha: float, eta: float,
                         alpha_b: float | None = None, eta_b: float | None = None) -> float:
    """Correlation of one deterministic assignment: ``(alpha + eta*s_a)(alpha + eta*s_b)``."""
    if s_a not in (1, -1) or s_b not in (1, -1):
        raise ValueError("strategy signs must be +1 or -1")
    alpha, eta, alpha_b, eta_b = _side_params(alpha, eta, alpha_b, eta_b)
    return (alpha + eta * s_a) * (alpha_b + eta_b * s_b)


def strategy_chsh(strategy: DeterministicStrategy, alpha: float, eta: float,
                  alpha_b: float | None = None, eta_b: float | None = None) -> float:
    alpha, eta, alpha_b, eta_b = _side_params(alpha, eta, alpha_b, eta_b)
    return _strategy_chsh(strategy, alpha, eta, alpha_b, eta_b)


def _strategy_chsh(strategy, alpha, eta, alpha_b, eta_b):
    s_a1, s_a2, s_b1, s_b2 = strategy.as_tuple()
    ma1, ma2 = alpha + eta * s_a1, alpha + eta * s_a2
    mb1, mb2 = alpha_b + eta_b * s_b1, alpha_b + eta_b * s_b2
    return ma1 * mb1 + ma1 * mb2 + ma2 * mb1 - ma2 * mb2


def chsh_from_responses(q, alpha: float, eta: float,
                        alpha_b: float | None = None, eta_b: float | None = None):
    """CHSH expression for indeterministic projector responses.

    ``q`` has trailing axis of length 4 holding the P(+) probabilities of
    (A1, A2, B1, B2); leading axes are broadcast, so a batch of samples can
    be evaluated at once.
    """
    alpha, eta, alpha_b, eta_b = _side_params(alpha, eta, alpha_b, eta_b)
    q = np.asarray(q, dtype=float)
    ma1 = response_mean(q[..., 0], alpha, eta)
    ma2 = response_mean(q[..., 1], alpha, eta)
    mb1 = response_mean(q[..., 2], alpha_b, eta_b)
    mb2 = response_mean(q[..., 3], alpha_b, eta_b)
    return ma1 * mb1 + ma1 * mb2 + ma2 * mb1 - ma2 * mb2


def closed_form_bound(alpha: float, eta: float) -> float:
    """Local CHSH bound ``2(|alpha| + eta)^2`` for symmetric POVM parameters."""
    PovmParams(alpha, eta)
    return 2.0 * (abs(alpha) + eta) ** 2


def lhv_bound_bruteforce(alpha: float, eta: float,
                         alpha_b: float | None = None, eta_b: float | None = None,
                         tol: float = BOUND_TOL) -> LhvBoundResult:
    """Maximize the CHSH expression over all 16 deterministic strategies.

    For symmetric parameters the maximum is checked against
    ``2(|alpha| + eta)^2`` and a ``RuntimeError`` is raised if they differ by
    more than ``tol``.  With per-side parameters only the brute-force value
    is reported.
    """
    symmetric = (alpha_b is None or alpha_b == alpha) and (eta_b is None or eta_b == eta)
    params = _side_params(alpha, eta, alpha_b, eta_b)
    values = [_strategy_chsh(s, *params) for s in ALL_STRATEGIES]
    best = max(values)
    maximizers = tuple(s for s, v in zip(ALL_STRATEGIES, values) if v >= best - BOUND_TOL)
    closed = None
    if symmetric:
        closed = closed_form_bound(alpha, eta)
        if abs(best - closed) > tol:
            raise RuntimeError(
                f"brute-force local bound {best!r} disagrees with 2(|alpha|+eta)^2 = {closed!r}"
            )
    return LhvBoundResult(best, maximizers, closed)

