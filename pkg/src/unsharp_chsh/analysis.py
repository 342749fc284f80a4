"""Violation margins, thresholds and (alpha, eta) region scans.

All quantities refer to the pure state cos(theta)|00> + sin(theta)|11>
measured at the canonical settings.  The *standard* margin compares the
quantum value with 2; the *modified* margin compares it with the local
bound 2(|alpha| + eta)^2.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterator

from .lhv import closed_form_bound
from .povm import PARAM_TOL, PovmParams
from .quantum import SQRT2, closed_form_biased

STANDARD_BOUND = 2.0
# |delta| at or below this is treated as no violation
VIOLATION_TOL = 1e-12
ETA_TOL = 1e-9
ALPHA_TOL = 1e-6


class ViolationClass(enum.Enum):
    NONE = "NONE"
    MODIFIED_ONLY = "MODIFIED_ONLY"
    BOTH = "BOTH"


def classify(delta_standard: float, delta_modified: float) -> ViolationClass:
    if delta_standard > VIOLATION_TOL:
        return ViolationClass.BOTH
    if delta_modified > VIOLATION_TOL:
        return ViolationClass.MODIFIED_ONLY
    return ViolationClass.NONE


def delta_modified_unbiased(theta: float, eta: float) -> float:
    PovmParams(0.0, eta)
    return eta**2 * (SQRT2 * (1.0 + math.sin(2 * theta)) - 2.0)


def delta_standard_biased(theta: float, alpha: float, eta: float) -> float:
    return closed_form_biased(theta, alpha, eta) - STANDARD_BOUND


def delta_modified_biased(theta: float, alpha: float, eta: float) -> float:
    return closed_form_biased(theta, alpha, eta) - closed_form_bound(alpha, eta)


def _bisect_predicate(pred: Callable[[float], bool], lo: float, hi: float, tol: float) -> float:
    """Locate the switch point of a predicate that changes value once on [lo, hi]."""
    at_lo = pred(lo)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid) == at_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def critical_eta_standard(theta: float, alpha: float = 0.0, tol: float = ETA_TOL) -> float | None:
    """Smallest sharpness giving a standard CHSH violation, or None.

    In eta the standard margin is an upward parabola that is negative at
    eta = 0 (it equals 2 alpha^2 - 2 there), so it crosses zero at most
    once on the feasible range [0, 1 - |alpha|].
    """
    if not abs(alpha) < 1.0:
        raise ValueError(f"|alpha| must be below 1, got {alpha}")
    eta_max = 1.0 - abs(alpha)

    def violates(eta: float) -> bool:
        return delta_standard_biased(theta, alpha, eta) > 0.0

    if not violates(eta_max):
        return None
    return _bisect_predicate(violates, 0.0, eta_max, tol)


def max_alpha_modified(theta: float, tol: float = ALPHA_TOL) -> float:
    """Supremum of alpha >= 0 for which some feasible eta violates the modified bound.

    For fixed alpha >= 0 the modified margin is eta*(k*eta - alpha*l) with
    l > 0, so wherever it can be positive it is largest on the feasibility
    edge eta = 1 - alpha.  Scanning that edge is enough.
    """

    def violates(alpha: float) -> bool:
        return delta_modified_biased(theta, alpha, 1.0 - alpha) > VIOLATION_TOL

    if not violates(0.0):
        return 0.0
    return _bisect_predicate(violates, 0.0, 1.0, tol)


@dataclass(frozen=True)
class ScanCell:
    alpha: float
    eta: float
    theta: float
    quantum_value: float
    standard_bound: float
    modified_bound: float
    delta_standard: float
    delta_modified: float
    feasible: bool
    violation: ViolationClass

    # CSV / report column order
    FIELDS = (
        "alpha", "eta", "theta", "quantum_value", "standard_bound", "modified_bound",
        "delta_standard", "delta_modified", "feasible", "class",
    )


def grid(steps: int) -> list[float]:
    if steps < 2:
        raise ValueError(f"grid needs at least 2 steps, got {steps}")
    return [i / (steps - 1) for i in range(steps)]


def scan_cell(theta: float, alpha: float, eta: float,
              local_bound: Callable[[float, float], float] = closed_form_bound) -> ScanCell:
    nan = math.nan
    if abs(alpha) + eta > 1.0 + PARAM_TOL:
        return ScanCell(alpha, eta, theta, nan, STANDARD_BOUND, nan, nan, nan,
                        False, ViolationClass.NONE)
    q = closed_form_biased(theta, alpha, eta)
    bound = local_bound(alpha, eta)
    d_std = q - STANDARD_BOUND
    d_mod = q - bound
    return ScanCell(alpha, eta, theta, q, STANDARD_BOUND, bound, d_std, d_mod,
                    True, classify(d_std, d_mod))


def iter_region(theta: float, alpha_steps: int, eta_steps: int,
                local_bound: Callable[[float, float], float] = closed_form_bound) -> Iterator[ScanCell]:
    etas = grid(eta_steps)
    for alpha in grid(alpha_steps):
        for eta in etas:
            yield scan_cell(theta, alpha, eta, local_bound)


def scan_region(theta: float, alpha_steps: int, eta_steps: int,
                local_bound: Callable[[float, float], float] = closed_form_bound) -> list[ScanCell]:
    """Classify a uniform (alpha, eta) grid on [0, 1]^2, alpha outer and eta inner.

    Cells with alpha + eta > 1 are kept (flagged infeasible, class NONE) so
    the result is always a full rectangle.  ``local_bound`` can be swapped for
    a brute-force bound when cross-checking.
    """
    return list(iter_region(theta, alpha_steps, eta_steps, local_bound))


def class_counts(cells) -> dict[ViolationClass, int]:
    counts = {c: 0 for c in ViolationClass}
    for cell in cells:
        if cell.feasible:
            counts[cell.violation] += 1
    return counts
