import os

import pytest
from hypothesis import HealthCheck, settings

from langweil.gf import make_field
from langweil.mpoly import Hypersurface

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile (or load cached) kernels once so timed checks measure the work itself."""
    from langweil.counting import count_affine
    from langweil.slicing import slice_distribution
    from langweil.ledger import interval_system
    from langweil.components import component_count
    from langweil.mpoly import parse

    F = make_field(2, 2)
    count_affine(Hypersurface.affine("y^2+y+x^3", 2, F))
    count_affine(Hypersurface.affine("y^2+y+x^3", 2, F), method="fiberwise_gcd")
    count_affine(Hypersurface.affine("y^2+y+x^3", 2, F), method="brute")
    X = Hypersurface.affine("x", 3, make_field(3))
    slice_distribution(X, interval_system(3, 1), with_total=False)
    slice_distribution(X, interval_system(3, 1), "monte_carlo", samples=10, with_total=False)
    Y = Hypersurface.projective("x0", 2, make_field(2))
    slice_distribution(Y, interval_system(2, 1, "projective"), with_total=False)
    component_count(parse("x*y+1", 2, make_field(3)))
    yield


@pytest.fixture
def F4():
    return make_field(2, 2)
