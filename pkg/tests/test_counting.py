import json
import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from helpers import brute_affine, brute_projective, polys, small_fields
from langweil.counting import (
    chart_polys, count_affine, count_curve_ext, count_projective, count_projective_zeros, count_zeros, zeros_exceed,
)
from langweil.errors import WorkCapExceeded
from langweil.gf import field_tables, make_field
from langweil.kernels import get_backend
from langweil.mpoly import Hypersurface, MultiPoly, homogenize, parse


def test_hermitian_curve_f4():
    X = Hypersurface.affine("y^2+y-x^3", 2, make_field(2, 2))
    assert count_affine(X).count == 8


def test_hermitian_cylinder_a3_f4():
    X = Hypersurface.affine("y^2+y-x^3", 3, make_field(2, 2))
    assert count_affine(X).count == 32  # q^2 + 2 q^(3/2)


def test_lower_curve_f16():
    X = Hypersurface.affine("x^2*y+x*y^2-1", 2, make_field(2, 4))
    assert count_affine(X).count == 6  # q - 2 sqrt(q) - 2


def test_cone_p3_f4():
    X = Hypersurface.projective("x1^2*x2+x1*x2^2-x0^3", 3, make_field(2, 2))
    assert count_projective(X).count == 37


@pytest.mark.parametrize("method", ["brute", "fiberwise", "fiberwise_gcd"])
def test_methods_on_fixtures(method):
    F = make_field(2, 2)
    X = Hypersurface.affine("y^2+y-x^3", 3, F)
    assert count_affine(X, method=method).count == 32


@given(small_fields.flatmap(lambda F: st.tuples(st.just(F), polys(F, 2, max_deg=4))))
def test_all_methods_match_brute_oracle(args):
    F, f = args
    expect = brute_affine(f)
    for method in ("brute", "fiberwise", "fiberwise_gcd"):
        assert count_zeros(f, method) == expect


@given(small_fields.flatmap(lambda F: st.tuples(st.just(F), polys(F, 3, max_deg=3))))
def test_three_variables_match_oracle(args):
    F, f = args
    expect = brute_affine(f)
    assert count_zeros(f, "fiberwise") == expect
    assert count_zeros(f, "fiberwise_gcd") == expect


@given(small_fields.flatmap(lambda F: st.tuples(st.just(F), polys(F, 3, max_deg=3, nonconstant=False))))
def test_projective_matches_oracle(args):
    F, f = args
    h = homogenize(f, 0)
    assert count_projective_zeros(h) == brute_projective(h)


def test_partition_invariance():
    F = make_field(5)
    f = parse("x^3 + y^2*z - z + 1", 3, F)
    whole = count_zeros(f, "fiberwise")
    parts = [(0, 3), (3, 11), (11, 25)]
    assert count_zeros(f, "fiberwise", partitions=parts) == whole
    assert count_zeros(f, "fiberwise", workers=4) == whole


def test_zeros_exceed_agrees_with_count():
    F = make_field(7)
    f = parse("x^2 + y^2 - 1", 2, F)
    N = count_zeros(f)
    assert zeros_exceed(f, N - 1, chunk=2)
    assert not zeros_exceed(f, N, chunk=2)


def test_count_curve_ext_matches_direct_count():
    F = make_field(2)
    g = parse("y^2+y+x^3", 2, F)
    big = make_field(2, 2)
    assert count_curve_ext(g, 2).count == count_zeros(parse("y^2+y+x^3", 2, big))
    assert count_curve_ext(g, 1).count == count_zeros(g)


def test_chart_strata_partition_projective_space():
    F = make_field(3)
    zero = MultiPoly.zero(4, F)
    assert sum(count_zeros(g) if g.nvars else 1 for g in chart_polys(zero)) == 1 + 3 + 9 + 27


def test_work_cap():
    X = Hypersurface.affine("x*y*z*w - 1", 4, make_field(7))
    with pytest.raises(WorkCapExceeded):
        count_affine(X, method="brute", work_cap=1000)


@pytest.mark.parametrize("p,m,text", [(2, 2, "y^2+y+x^3"), (5, 1, "x^3*y+y^2-x+2"), (2, 3, "y^3+x*y+x^4+1"),
                                      (3, 2, "x^2+y^2-1")])
def test_backends_agree_on_kernels(p, m, text):
    F = make_field(p, m)
    f = parse(text, 2, F)
    tab = field_tables(F)
    exps, coefs = f.compiled
    nb, npy = get_backend("numba"), get_backend("numpy")
    for use_gcd in (False, True):
        a = nb.count_fibers(exps, coefs, 0, F.q, F.q, tab.log, tab.zech, tab.neg_shift, use_gcd)
        b = npy.count_fibers(exps, coefs, 0, F.q, F.q, tab.log, tab.zech, tab.neg_shift, use_gcd)
        assert int(a) == int(b)
    assert int(nb.count_brute(exps, coefs, 0, F.q**2, F.q, tab.log, tab.zech)) == \
        int(npy.count_brute(exps, coefs, 0, F.q**2, F.q, tab.log, tab.zech))


def test_numpy_backend_end_to_end():
    env = dict(os.environ, LANGWEIL_BACKEND="numpy")
    code = ("import json; from langweil.kernels import backend_name; from langweil.cli import main; "
            "print(backend_name)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
    out = subprocess.run([sys.executable, "-m", "langweil.cli", "count", "--poly", "y^2+y-x^3", "--p", "2",
                          "--m", "2", "--n", "3"], env=env, capture_output=True, text=True, check=True)
    assert json.loads(out.stdout)["count"] == 32


def test_bad_backend_env_rejected():
    env = dict(os.environ, LANGWEIL_BACKEND="fortran")
    out = subprocess.run([sys.executable, "-c", "import langweil.counting"], env=env, capture_output=True)
    assert out.returncode != 0
