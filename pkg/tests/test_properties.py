"""Property-based checks of the divisor identities on every built-in curve."""
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

import identities as ids
from cosetbounds import curve_from_name
from cosetbounds.curve_model import LatticeDivisor as L
from cosetbounds.gf_codes.codes import LinearCode, coset_distance
from cosetbounds.gf_codes.field import field

SETTINGS = settings(max_examples=1000, deadline=None, derandomize=True)
CURVES = {name: curve_from_name(name) for name in ids.BUILTIN}


def divisors(curve, spread=3):
    r = spread * curve.genus + curve.period
    return st.builds(L, st.integers(-r, r), st.integers(-r, r))


def gamma_divisors(curve):
    # shift any divisor up its line until it lands in Gamma_P
    def lift(A):
        while not curve.in_gamma_p(A):
            A = A + L(1, 0)
        return A
    return divisors(curve).map(lift)


def degree_zero(curve):
    return st.integers(-curve.period, curve.period).map(lambda k: L(k, -k))


def _check(found):
    assert found == [], found


@pytest.mark.parametrize("name", ids.BUILTIN)
def test_riemann_roch(name):
    c = CURVES[name]

    @SETTINGS
    @given(divisors(c))
    def check(A):
        _check(ids.riemann_roch(c, A))
    check()


@pytest.mark.parametrize("name", ids.BUILTIN)
def test_sigma_tau_and_residues(name):
    c = CURVES[name]
    r = 3 * c.genus + c.period

    @SETTINGS
    @given(st.integers(-r, r))
    def check(k):
        _check(ids.sigma_tau(c, k) + ids.residue_permutation(c, k))
    check()


@pytest.mark.parametrize("name", ids.BUILTIN)
def test_delta_symmetry(name):
    c = CURVES[name]

    @SETTINGS
    @given(divisors(c), divisors(c))
    def check(A, C):
        _check(ids.delta_symmetry(c, A, C))
    check()


@pytest.mark.parametrize("name", ids.BUILTIN)
def test_intersections_and_differences(name):
    c = CURVES[name]

    @SETTINGS
    @given(divisors(c), divisors(c), gamma_divisors(c))
    def check(B, C, E):
        _check(ids.intersections(c, B, C, E))
    check()


@pytest.mark.parametrize("name", ids.BUILTIN)
def test_counting(name):
    c = CURVES[name]

    @SETTINGS
    @given(divisors(c), divisors(c))
    def check(B, C):
        _check(ids.counting(c, B, C))
    check()


@pytest.mark.parametrize("name", ids.BUILTIN)
def test_cardinalities(name):
    c = CURVES[name]

    @SETTINGS
    @given(divisors(c), divisors(c), gamma_divisors(c), degree_zero(c), degree_zero(c))
    def check(B, C, E, B0, C0):
        _check(ids.cardinalities(c, B, C, E, B0, C0))
    check()


# -- linear codes over GF(4) ---------------------------------------------------------

def _code(rows):
    return LinearCode.from_rows(field(4), np.array(rows, dtype=np.int64), 6)


matrices = st.lists(st.lists(st.integers(0, 3), min_size=6, max_size=6), min_size=1, max_size=3)


@settings(max_examples=300, deadline=None, derandomize=True)
@given(matrices)
def test_dual_is_an_involution(rows):
    C = _code(rows)
    assert C.dual().dual() == C and C.k + C.dual().k == 6


@settings(max_examples=300, deadline=None, derandomize=True)
@given(matrices, st.integers(0, 2))
def test_coset_distance_strategies_agree(rows, drop):
    C = _code(rows)
    assume(C.k >= 1)
    sub = _code(C.generator[: max(0, C.k - 1 - drop)].tolist() or [[0] * 6])
    assert coset_distance(C, sub, "enumerate") == coset_distance(C, sub, "support")
