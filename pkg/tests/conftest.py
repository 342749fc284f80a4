import math

import numpy as np
import pytest
from hypothesis import strategies as st

from unsharp_chsh.linalg import BlochVector
from unsharp_chsh.povm import PovmParams


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@st.composite
def directions(draw):
    polar = draw(st.floats(0.0, math.pi))
    azimuth = draw(st.floats(0.0, 2 * math.pi))
    return BlochVector.from_angles(polar, azimuth)


@st.composite
def povm_params(draw, allow_negative=True):
    eta = draw(st.floats(0.0, 1.0))
    lo = -(1.0 - eta) if allow_negative else 0.0
    alpha = draw(st.floats(lo, 1.0 - eta))
    return PovmParams(alpha, eta)


@st.composite
def hermitian2(draw):
    f = st.floats(-5, 5)
    a, d, re, im = draw(f), draw(f), draw(f), draw(f)
    return np.array([[a, re + 1j * im], [re - 1j * im, d]])
