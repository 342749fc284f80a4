import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from unsharp_chsh.linalg import BlochVector
from unsharp_chsh.povm import SHARP, PovmParams, biased_povm, unbiased_povm
from unsharp_chsh.quantum import (
    CANONICAL_SETTINGS,
    DensityMatrix,
    MeasurementSettings,
    chsh_value,
    closed_form_biased,
    closed_form_unbiased,
    correlation,
    pure_state,
    werner_state,
)

from conftest import directions, povm_params

SQRT2 = math.sqrt(2)
Z = BlochVector(0, 0, 1)

# --- independent oracle: kets and outcome probabilities, no library code ---
_I = np.eye(2)
_PAULI = (np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1.0, -1.0]))


def _oracle_effect(d, alpha, eta, sign):
    obs = sum(c * p for c, p in zip(d, _PAULI))
    return (_I + sign * (alpha * _I + eta * obs)) / 2


def oracle_chsh(theta, alpha, eta):
    ket = np.array([math.cos(theta), 0, 0, math.sin(theta)])
    r = 1 / SQRT2
    a = [(0, 0, 1), (1, 0, 0)]
    b = [(r, 0, r), (-r, 0, r)]

    def corr(da, db):
        total = 0.0
        for sa, sb in itertools.product((1, -1), repeat=2):
            op = np.kron(_oracle_effect(da, alpha, eta, sa), _oracle_effect(db, alpha, eta, sb))
            total += sa * sb * (ket.conj() @ op @ ket).real
        return total

    return corr(a[0], b[0]) + corr(a[0], b[1]) + corr(a[1], b[0]) - corr(a[1], b[1])


# frozen from oracle_chsh
ORACLE_VALUES = [
    ((math.pi / 6, 0.2, 0.5), 0.910450286559826),
    ((math.pi / 4, 0.1, 0.6), 1.0382337649086282),
    ((math.pi / 4, 0.0, 1.0), 2.82842712474619),
    ((math.pi / 4, 0.0, 0.5), 0.7071067811865471),
    ((0.3, -0.25, 0.7), 0.716114308270241),
]


@pytest.mark.parametrize("args, expected", ORACLE_VALUES)
def test_oracle_is_frozen(args, expected):
    assert oracle_chsh(*args) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("args, expected", ORACLE_VALUES)
def test_matrix_path_matches_oracle(args, expected):
    theta, alpha, eta = args
    value = chsh_value(pure_state(theta), CANONICAL_SETTINGS, PovmParams(alpha, eta))
    assert value == pytest.approx(expected, abs=1e-10)


@pytest.mark.parametrize("args, expected", ORACLE_VALUES)
def test_closed_form_matches_oracle(args, expected):
    assert closed_form_biased(*args) == pytest.approx(expected, abs=1e-10)


def test_pure_state_examples():
    np.testing.assert_allclose(pure_state(0.0).matrix, np.diag([1, 0, 0, 0]), atol=1e-15)
    bell = pure_state(math.pi / 4).matrix
    expected = np.zeros((4, 4))
    expected[np.ix_([0, 3], [0, 3])] = 0.5
    np.testing.assert_allclose(bell, expected, atol=1e-15)
    rho = pure_state(math.pi / 6).matrix
    np.testing.assert_allclose(np.diag(rho).real, [0.75, 0, 0, 0.25], atol=1e-15)
    assert rho[0, 3].real == pytest.approx(math.sqrt(3) / 4, abs=1e-15)
    assert np.linalg.matrix_rank(rho) == 1


def test_werner_examples():
    np.testing.assert_allclose(werner_state(1.0).matrix, pure_state(math.pi / 4).matrix, atol=1e-15)
    np.testing.assert_allclose(werner_state(0.0).matrix, np.eye(4) / 4, atol=1e-15)
    half = werner_state(0.5).matrix
    np.testing.assert_allclose(np.diag(half).real, [0.375, 0.125, 0.125, 0.375], atol=1e-15)
    assert half[0, 3].real == pytest.approx(0.25)
    assert half[3, 0].real == pytest.approx(0.25)


@pytest.mark.parametrize("p", [-0.01, 1.5])
def test_werner_rejects_bad_weight(p):
    with pytest.raises(ValueError):
        werner_state(p)


def test_density_matrix_validation():
    with pytest.raises(ValueError, match="trace"):
        DensityMatrix(np.eye(4))
    with pytest.raises(ValueError, match="Hermitian"):
        m = np.eye(4, dtype=complex) / 4
        m[0, 1] = 0.1
        DensityMatrix(m)
    with pytest.raises(ValueError, match="positive"):
        DensityMatrix(np.diag([1.5, -0.5, 0, 0]))
    with pytest.raises(ValueError, match="4x4"):
        DensityMatrix(np.eye(2) / 2)


def test_density_matrix_entries_round_trip(tmp_path):
    rho = werner_state(0.3)
    path = tmp_path / "state.txt"
    path.write_text(" ".join(repr(v) for v in rho.to_entries()))
    loaded = DensityMatrix.from_file(path)
    np.testing.assert_array_equal(loaded.matrix, rho.matrix)


def test_density_matrix_entries_count():
    with pytest.raises(ValueError, match="32"):
        DensityMatrix.from_entries([0.25] * 31)


def test_correlation_examples():
    bell = pure_state(math.pi / 4)
    assert correlation(bell, biased_povm(Z, SHARP), biased_povm(Z, SHARP)) == pytest.approx(1.0, abs=1e-12)
    assert correlation(bell, unbiased_povm(Z, 0.6), unbiased_povm(Z, 0.6)) == pytest.approx(0.36, abs=1e-12)
    trivial = unbiased_povm(BlochVector(1, 0, 0), 0.0)
    assert correlation(werner_state(0.7), trivial, trivial) == 0.0


def test_chsh_examples():
    bell = pure_state(math.pi / 4)
    assert chsh_value(bell) == pytest.approx(2 * SQRT2, abs=1e-10)
    assert chsh_value(bell, CANONICAL_SETTINGS, PovmParams(0, 0)) == pytest.approx(0.0, abs=1e-15)
    v = chsh_value(pure_state(math.pi / 6), CANONICAL_SETTINGS, PovmParams(0.2, 0.5))
    assert v == pytest.approx(closed_form_biased(math.pi / 6, 0.2, 0.5), abs=1e-10)


def test_chsh_per_side_parameters(rng):
    # oracle: per-side outcome means multiply for product observables
    rho = pure_state(0.4)
    pa, pb = PovmParams(0.1, 0.5), PovmParams(-0.2, 0.7)
    v = chsh_value(rho, CANONICAL_SETTINGS, pa, pb)
    c, s = math.cos(0.8), math.sin(0.8)
    # <A1>=c, <A2>=0, <B1>=<B2>=c/sqrt2; <A1B1>=<A1B2>=1/sqrt2, <A2B1>=-<A2B2>=s/sqrt2
    def term(mA, mB, mAB):
        return pa.alpha * pb.alpha + pa.alpha * pb.eta * mB + pa.eta * pb.alpha * mA + pa.eta * pb.eta * mAB
    r = 1 / SQRT2
    expected = term(c, c * r, r) + term(c, c * r, r) + term(0, c * r, s * r) - term(0, c * r, -s * r)
    assert v == pytest.approx(expected, abs=1e-12)


def test_closed_form_unbiased_examples():
    assert closed_form_unbiased(math.pi / 4, 1.0) == pytest.approx(2 * SQRT2, abs=1e-15)
    assert closed_form_unbiased(0.0, 0.7) == pytest.approx(SQRT2 * 0.49, abs=1e-15)
    assert closed_form_unbiased(math.pi / 4, 0.5) == pytest.approx(0.7071068, abs=1e-7)
    with pytest.raises(ValueError):
        closed_form_unbiased(0.1, 1.1)


def test_closed_form_biased_examples():
    assert closed_form_biased(0.3, 0.0, 0.8) == pytest.approx(closed_form_unbiased(0.3, 0.8), abs=1e-15)
    assert closed_form_biased(math.pi / 4, 0.1, 0.6) == pytest.approx(1.0382338, abs=1e-7)
    with pytest.raises(ValueError):
        closed_form_biased(0.1, 0.5, 0.6)


@st.composite
def density_matrices(draw):
    vals = draw(st.lists(st.floats(-1, 1), min_size=32, max_size=32))
    g = np.array(vals[:16]).reshape(4, 4) + 1j * np.array(vals[16:]).reshape(4, 4)
    rho = g @ g.conj().T + 1e-3 * np.eye(4)
    rho /= np.trace(rho).real
    return DensityMatrix((rho + rho.conj().T) / 2)


@settings(max_examples=100, deadline=None)
@given(density_matrices(), directions(), directions(), st.floats(0, 1))
def test_unbiased_correlation_factorizes(rho, a, b, eta):
    sharp = correlation(rho, biased_povm(a, SHARP), biased_povm(b, SHARP))
    unsharp = correlation(rho, unbiased_povm(a, eta), unbiased_povm(b, eta))
    assert abs(unsharp - eta**2 * sharp) <= 1e-12


@settings(max_examples=100, deadline=None)
@given(density_matrices(), directions(), directions(), povm_params(), povm_params())
def test_biased_correlation_decomposes(rho, a, b, pa, pb):
    from unsharp_chsh.linalg import IDENTITY2, bloch_to_observable, kron, trace_product

    A, B = bloch_to_observable(a), bloch_to_observable(b)
    mA = trace_product(rho.matrix, kron(A, IDENTITY2))
    mB = trace_product(rho.matrix, kron(IDENTITY2, B))
    mAB = trace_product(rho.matrix, kron(A, B))
    expected = pa.alpha * pb.alpha + pa.alpha * pb.eta * mB + pa.eta * pb.alpha * mA + pa.eta * pb.eta * mAB
    got = correlation(rho, biased_povm(a, pa), biased_povm(b, pb))
    assert abs(got - expected) <= 1e-12
    assert -1 - 1e-12 <= got <= 1 + 1e-12


@settings(max_examples=200, deadline=None)
@given(st.floats(-2 * math.pi, 2 * math.pi), povm_params())
def test_closed_form_agrees_with_matrix_path(theta, params):
    v = chsh_value(pure_state(theta), CANONICAL_SETTINGS, params)
    assert abs(v - closed_form_biased(theta, params.alpha, params.eta)) <= 1e-10


@settings(max_examples=100, deadline=None)
@given(density_matrices(), directions(), directions(), directions(), directions(), povm_params(), povm_params())
def test_tsirelson_ceiling(rho, a1, a2, b1, b2, pa, pb):
    v = chsh_value(rho, MeasurementSettings(a1, a2, b1, b2), pa, pb)
    assert abs(v) <= 2 * SQRT2 + 1e-9


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 1), st.floats(0, 1))
def test_werner_scaling(p, eta):
    v = chsh_value(werner_state(p), CANONICAL_SETTINGS, PovmParams(0.0, eta))
    assert abs(v - p * closed_form_unbiased(math.pi / 4, eta)) <= 1e-10
