"""Self-check suite run by ``unsharp-chsh verify``.

Each check returns ``(passed, detail)``.  Random inputs come from a fixed
seed so a run is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analysis, lhv, linalg, povm, quantum
from .linalg import IDENTITY2, BlochVector
from .povm import PovmParams

SEED = 20240611


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str


def _rng() -> np.random.Generator:
    return np.random.default_rng(SEED)


def random_direction(rng: np.random.Generator) -> BlochVector:
    v = rng.normal(size=3)
    return BlochVector(*(v / np.linalg.norm(v)))


def random_params(rng: np.random.Generator, allow_negative: bool = True) -> PovmParams:
    eta = rng.uniform(0.0, 1.0)
    alpha = rng.uniform(-(1.0 - eta), 1.0 - eta) if allow_negative else rng.uniform(0.0, 1.0 - eta)
    return PovmParams(alpha, eta)


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    m = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    return (m + m.conj().T) / 2


def random_density_matrix(rng: np.random.Generator) -> quantum.DensityMatrix:
    g = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return quantum.DensityMatrix((rho + rho.conj().T) / 2)


def check_observable_squares_to_identity():
    rng = _rng()
    err = 0.0
    for _ in range(200):
        A = linalg.bloch_to_observable(random_direction(rng))
        err = max(err, float(np.max(np.abs(A @ A - IDENTITY2))))
    return err <= 1e-12, f"max |A^2 - I| = {err:.2e}"


def check_kron_mixed_product():
    rng = _rng()
    err = 0.0
    for _ in range(200):
        m1, m2, n1, n2 = (random_hermitian(rng, 2) for _ in range(4))
        lhs = linalg.kron(m1 @ m2, n1 @ n2)
        rhs = linalg.kron(m1, n1) @ linalg.kron(m2, n2)
        err = max(err, float(np.max(np.abs(lhs - rhs))))
    return err <= 1e-12, f"max entry error {err:.2e}"


def check_trace_product_symmetric():
    rng = _rng()
    err = 0.0
    for _ in range(200):
        a, b = random_hermitian(rng, 4), random_hermitian(rng, 4)
        err = max(err, abs(linalg.trace_product(a, b) - linalg.trace_product(b, a)))
    return err <= 1e-12, f"max asymmetry {err:.2e}"


def check_min_eigenvalue_against_eigh():
    rng = _rng()
    err = 0.0
    for _ in range(500):
        m = random_hermitian(rng, 2)
        err = max(err, abs(linalg.min_eigenvalue_hermitian2(m) - np.linalg.eigvalsh(m)[0]))
    return err <= 1e-12, f"max deviation from eigvalsh {err:.2e}"


def check_povm_forms():
    rng = _rng()
    complete = spectral = diff = 0.0
    for _ in range(300):
        a, p = random_direction(rng), random_params(rng)
        direct = povm.biased_povm(a, p)
        mixed = povm.spectral_povm(a, p)
        complete = max(complete, float(np.max(np.abs(direct.plus + direct.minus - IDENTITY2))))
        spectral = max(spectral, float(np.max(np.abs(direct.plus - mixed.plus))),
                       float(np.max(np.abs(direct.minus - mixed.minus))))
        target = p.alpha * IDENTITY2 + p.eta * linalg.bloch_to_observable(a)
        diff = max(diff, float(np.max(np.abs(direct.observable - target))))
    worst = max(complete, spectral, diff)
    return worst <= 1e-12, (
        f"completeness {complete:.2e}, direct-vs-spectral {spectral:.2e}, difference {diff:.2e}"
    )


def check_unbiased_reduction():
    rng = _rng()
    for _ in range(100):
        a, eta = random_direction(rng), rng.uniform()
        b = povm.biased_povm(a, PovmParams(0.0, eta))
        u = povm.unbiased_povm(a, eta)
        if not (np.array_equal(b.plus, u.plus) and np.array_equal(b.minus, u.minus)):
            return False, "alpha = 0 biased POVM differs from unbiased POVM"
    return True, "exact equality on 100 random inputs"


def check_correlation_factorization():
    rng = _rng()
    err_unbiased = err_biased = 0.0
    for _ in range(200):
        rho = random_density_matrix(rng)
        a, b = random_direction(rng), random_direction(rng)
        A, B = linalg.bloch_to_observable(a), linalg.bloch_to_observable(b)
        sharp = quantum.correlation(rho, povm.biased_povm(a, povm.SHARP), povm.biased_povm(b, povm.SHARP))
        eta = rng.uniform()
        unsharp = quantum.correlation(rho, povm.unbiased_povm(a, eta), povm.unbiased_povm(b, eta))
        err_unbiased = max(err_unbiased, abs(unsharp - eta**2 * sharp))
        pa, pb = random_params(rng), random_params(rng)
        biased = quantum.correlation(rho, povm.biased_povm(a, pa), povm.biased_povm(b, pb))
        mA = linalg.trace_product(rho.matrix, linalg.kron(A, IDENTITY2))
        mB = linalg.trace_product(rho.matrix, linalg.kron(IDENTITY2, B))
        expected = (pa.alpha * pb.alpha + pa.alpha * pb.eta * mB
                    + pa.eta * pb.alpha * mA + pa.eta * pb.eta * sharp)
        err_biased = max(err_biased, abs(biased - expected))
    worst = max(err_unbiased, err_biased)
    return worst <= 1e-12, f"unbiased scaling {err_unbiased:.2e}, bias decomposition {err_biased:.2e}"


def check_closed_form_agreement(n: int = 1000):
    rng = _rng()
    err = 0.0
    for _ in range(n):
        theta = rng.uniform(0.0, math.pi)
        p = random_params(rng)
        matrix = quantum.chsh_value(quantum.pure_state(theta), quantum.CANONICAL_SETTINGS, p)
        err = max(err, abs(matrix - quantum.closed_form_biased(theta, p.alpha, p.eta)))
    return err <= 1e-10, f"max |matrix - closed form| = {err:.2e} over {n} samples"


def check_tsirelson_ceiling():
    rng = _rng()
    worst = 0.0
    for _ in range(300):
        settings = quantum.MeasurementSettings(*(random_direction(rng) for _ in range(4)))
        v = quantum.chsh_value(random_density_matrix(rng), settings, random_params(rng), random_params(rng))
        worst = max(worst, abs(v))
    # near-optimal corner: entangled pure states, perturbed canonical settings
    for _ in range(300):
        c = quantum.CANONICAL_SETTINGS
        jitter = []
        for d in (c.a1, c.a2, c.b1, c.b2):
            v = d.as_array() + 1e-3 * rng.normal(size=3)
            jitter.append(BlochVector(*(v / np.linalg.norm(v))))
        v = quantum.chsh_value(quantum.pure_state(rng.uniform(0.6, 1.0)),
                               quantum.MeasurementSettings(*jitter), povm.SHARP)
        worst = max(worst, abs(v))
    return worst <= 2 * math.sqrt(2) + 1e-9, f"largest |CHSH| = {worst:.9f}"


def check_werner_scaling():
    rng = _rng()
    err = 0.0
    for _ in range(100):
        p, eta = rng.uniform(), rng.uniform()
        v = quantum.chsh_value(quantum.werner_state(p), quantum.CANONICAL_SETTINGS, PovmParams(0.0, eta))
        err = max(err, abs(v - p * quantum.closed_form_unbiased(math.pi / 4, eta)))
    return err <= 1e-10, f"max deviation {err:.2e}"


def triangle_grid(step: float, negative: bool = True):
    """Grid points of |alpha| + eta <= 1 with spacing ``step``."""
    n = round(1 / step)
    for i in range(-n if negative else 0, n + 1):
        for j in range(0, n + 1):
            alpha, eta = i * step, j * step
            if abs(alpha) + eta > 1.0 + 1e-12:
                continue
            # snap grid rounding back onto the feasible edge
            yield alpha, min(eta, 1.0 - abs(alpha))


def check_lhv_closed_form(step: float = 0.01):
    err = 0.0
    count = 0
    for alpha, eta in triangle_grid(step):
        r = lhv.lhv_bound_bruteforce(alpha, eta, tol=math.inf)
        err = max(err, abs(r.bound - 2 * (abs(alpha) + eta) ** 2))
        count += 1
    return err <= 1e-12, f"max |brute force - 2(|alpha|+eta)^2| = {err:.2e} over {count} points"


def check_lhv_sign_symmetry():
    # negating every sign keeps the eta^2 part and flips the alpha*eta part,
    # so it carries maximizers of (alpha, eta) onto maximizers of (-alpha, eta)
    missing = 0
    for alpha, eta in triangle_grid(0.05, negative=False):
        pos = lhv.lhv_bound_bruteforce(alpha, eta)
        neg = lhv.lhv_bound_bruteforce(-alpha, eta)
        if pos.bound != neg.bound:
            return False, f"bound({alpha}, {eta}) != bound({-alpha}, {eta})"
        neg_set = {s.as_tuple() for s in neg.maximizing_strategies}
        missing += sum(tuple(-x for x in s.as_tuple()) not in neg_set
                       for s in pos.maximizing_strategies)
    if missing:
        return False, f"{missing} maximizers lack a sign-flipped partner"
    return True, "bounds equal; maximizers map onto maximizers under global sign flip"


def check_lhv_extremality(samples: int = 100_000):
    rng = _rng()
    worst = -math.inf
    for _ in range(20):
        p = random_params(rng)
        vertex = lhv.lhv_bound_bruteforce(p.alpha, p.eta).bound
        q = rng.uniform(size=(samples // 20, 4))
        worst = max(worst, float(np.max(lhv.chsh_from_responses(q, p.alpha, p.eta))) - vertex)
    return worst <= 1e-12, f"largest interior excess over vertex maximum {worst:.2e}"


def check_bound_dominance():
    worst = max(2 * (abs(a) + e) ** 2 for a, e in triangle_grid(0.01))
    return worst <= 2.0 + 1e-12, f"largest modified bound {worst:.12g}"


def check_standard_threshold():
    eta = analysis.critical_eta_standard(math.pi / 4, 0.0)
    return abs(eta - 2 ** -0.25) <= 1e-8, f"critical eta {eta:.10f} vs 2^(-1/4) = {2 ** -0.25:.10f}"


def check_region_topology():
    cells = analysis.scan_region(math.pi / 4, 201, 201)
    standard_only = [c for c in cells if c.delta_standard > analysis.VIOLATION_TOL
                     and not c.delta_modified > analysis.VIOLATION_TOL]
    counts = analysis.class_counts(cells)
    ok = not standard_only and counts[analysis.ViolationClass.MODIFIED_ONLY] > 0
    return ok, f"class counts {{{', '.join(f'{k.value}: {v}' for k, v in counts.items())}}}"


def check_alpha_zero_line():
    threshold = 2 ** -0.25
    for cell in analysis.scan_region(math.pi / 4, 2, 1001)[:1001]:
        if cell.eta == 0.0:
            continue
        expect = (analysis.ViolationClass.BOTH if cell.eta > threshold
                  else analysis.ViolationClass.MODIFIED_ONLY)
        if cell.violation is not expect:
            return False, f"eta = {cell.eta} classed {cell.violation.value}"
    return True, "alpha = 0: modified-only below 2^(-1/4), both above"


def check_scan_matrix_subsample():
    rng = _rng()
    cells = [c for c in analysis.scan_region(math.pi / 4, 101, 101) if c.feasible]
    picks = rng.choice(len(cells), size=max(1, len(cells) // 20), replace=False)
    err = 0.0
    rho = quantum.pure_state(math.pi / 4)
    for i in picks:
        c = cells[i]
        v = quantum.chsh_value(rho, quantum.CANONICAL_SETTINGS, PovmParams(c.alpha, c.eta))
        err = max(err, abs(v - c.quantum_value))
    return err <= 1e-10, f"max deviation {err:.2e} on {len(picks)} cells"


def check_scan_bruteforce_consistency():
    def brute(alpha, eta):
        return lhv.lhv_bound_bruteforce(alpha, eta, tol=math.inf).bound

    for theta in (math.pi / 4, math.pi / 6, 0.3):
        closed = analysis.scan_region(theta, 101, 101)
        forced = analysis.scan_region(theta, 101, 101, local_bound=brute)
        for c, f in zip(closed, forced):
            if c.violation is not f.violation:
                return False, f"theta={theta}: cell ({c.alpha}, {c.eta}) differs"
    return True, "closed-form and brute-force bounds classify every cell alike"


def check_max_alpha():
    value = analysis.max_alpha_modified(math.pi / 4)
    exact = (math.sqrt(2) - 1) ** 2
    return 0.16 <= value <= 0.18 and abs(value - exact) <= 1e-6, (
        f"sup alpha = {value:.7f} (exact (sqrt2 - 1)^2 = {exact:.7f})"
    )


CHECKS: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("observable squares to identity", check_observable_squares_to_identity),
    ("kron mixed-product property", check_kron_mixed_product),
    ("trace product symmetry", check_trace_product_symmetric),
    ("2x2 min eigenvalue vs eigvalsh", check_min_eigenvalue_against_eigh),
    ("POVM completeness and spectral form", check_povm_forms),
    ("biased POVM alpha=0 reduction", check_unbiased_reduction),
    ("correlation factorization", check_correlation_factorization),
    ("closed form vs matrix CHSH", check_closed_form_agreement),
    ("Tsirelson ceiling", check_tsirelson_ceiling),
    ("Werner scaling", check_werner_scaling),
    ("LHV brute force = 2(|alpha|+eta)^2", check_lhv_closed_form),
    ("LHV sign symmetry", check_lhv_sign_symmetry),
    ("LHV vertex extremality", check_lhv_extremality),
    ("modified bound <= 2", check_bound_dominance),
    ("standard eta threshold", check_standard_threshold),
    ("region topology", check_region_topology),
    ("alpha = 0 line classes", check_alpha_zero_line),
    ("scan vs matrix subsample", check_scan_matrix_subsample),
    ("scan closed-form vs brute-force bound", check_scan_bruteforce_consistency),
    ("alpha supremum", check_max_alpha),
]


def run_all() -> list[CheckResult]:
    results = []
    for name, fn in CHECKS:
        try:
            ok, detail = fn()
        except Exception as exc:  # report, don't abort the suite
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(ok), detail))
    return results
