import math
import os

import numpy as np
import pytest
from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=int(os.environ.get("QDIRAC_HYPOTHESIS_EXAMPLES", 200)))
settings.load_profile("default")

# zero or |x| >= 1e-6, so products of four factors stay far from underflow
finite = st.one_of(st.just(0.0), st.floats(min_value=1e-6, max_value=10).flatmap(
    lambda x: st.sampled_from([x, -x])))
complexes = st.builds(complex, finite, finite)


@st.composite
def physical_points(draw):
    """(E, V0, |W0|, arg W0) with E in (1, 5], V0, |W0| in [0, 3], m = 1."""
    E = draw(st.floats(min_value=1.001, max_value=5.0))
    V0 = draw(st.floats(min_value=0.0, max_value=3.0))
    w = draw(st.floats(min_value=0.0, max_value=3.0))
    arg = draw(st.floats(min_value=0.0, max_value=2 * math.pi))
    return E, V0, w, arg


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
