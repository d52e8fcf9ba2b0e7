import numpy as np
import pytest

from cosetbounds import (DivClass, LatticeDivisor, NumericalSemigroup, TwoPointCurve,
                         curve_from_name, hermitian_profile, suzuki_profile)
from cosetbounds.curve_model import (ProfileError, count_residue, dump_profile, load_profile,
                                     validate_profile)


def brute_dim(curve, A: LatticeDivisor) -> int:
    # dim L(A) = number of k <= A.k on the line A.l Q + kP that lie in Gamma_P
    lo = -2 * curve.genus - curve.period - abs(A.l)
    return sum(curve.in_gamma_p(LatticeDivisor(k, A.l)) for k in range(lo, A.k + 1))


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7])
def test_hermitian_profile_shape(q):
    c = hermitian_profile(q)
    assert c.genus == q * (q - 1) // 2
    assert c.period == q + 1
    assert validate_profile(c) == []
    assert c.semigroup("P") == NumericalSemigroup.generated_by([q, q + 1])
    assert c.semigroup("Q") == NumericalSemigroup.generated_by([q, q + 1])


@pytest.mark.parametrize("q0", [2, 4])
def test_suzuki_profile_shape(q0):
    c = suzuki_profile(q0)
    q = 2 * q0 * q0
    assert c.genus == q0 * (q - 1)
    assert c.period == q + 2 * q0 + 1
    gens = [q, q + q0, q + 2 * q0, q + 2 * q0 + 1]
    assert c.semigroup("P") == NumericalSemigroup.generated_by(gens)


@pytest.mark.parametrize("name", ["hermitian:2", "hermitian:3", "suzuki:2"])
def test_dim_matches_line_count(name):
    c = curve_from_name(name)
    g = c.genus
    for k in range(-2 * g - 2, 2 * g + 3):
        for l in range(-c.period, c.period + 1):
            A = LatticeDivisor(k, l)
            assert c.dim_l(A) == brute_dim(c, A)


@pytest.mark.parametrize("name", ["hermitian:3", "suzuki:2", "suzuki:4"])
def test_riemann_roch_window(name):
    c = curve_from_name(name)
    g, m = c.genus, c.period
    degs = np.repeat(np.arange(-3 * g, 3 * g + 1), m)
    ress = np.tile(np.arange(m), 6 * g + 1)
    K = c.canonical
    dims = c.dim_array(degs, ress)
    dual = c.dim_array(K.deg - degs, (K.res - ress) % m)
    assert np.all(dims - dual == degs + 1 - g)


def test_canonical_and_rep():
    c = hermitian_profile(3)
    assert c.canonical == DivClass(4, 0)
    assert c.dim_l(c.canonical) == c.genus
    A = c.rep(DivClass(5, 2))
    assert c.cls(A) == DivClass(5, 2) and -2 <= A.l <= 1


def test_class_arithmetic_and_swap():
    c = suzuki_profile(2)
    A, B = LatticeDivisor(3, -7), LatticeDivisor(-2, 11)
    assert c.add(A, B) == c.cls(A + B)
    assert c.sub(A, B) == c.cls(A - B)
    assert c.neg(A) == c.cls(-A)
    sw = c.swapped
    for k in range(-20, 20):
        for l in range(-5, 5):
            D = LatticeDivisor(k, l)
            assert c.in_gamma_q(D) == sw.in_gamma_p(D.swapped())


def test_count_residue():
    assert count_residue(0, 9, 1, 4) == 3      # 1, 5, 9
    assert count_residue(5, 4, 0, 3) == 0
    assert count_residue(-7, -1, 2, 3) == 3    # -7, -4, -1


@pytest.mark.parametrize("disc,msg", [
    ([1, 2, 0], "zero class"),
    ([0, 0, 2], "not unique"),
    ([0, 2, 2], "exactly one"),
    ([0, 9, 1], "outside"),
])
def test_validation_rejects(disc, msg):
    problems = validate_profile(TwoPointCurve.unchecked(1, 3, disc))
    assert any(msg in p for p in problems)
    with pytest.raises(ProfileError):
        TwoPointCurve(1, 3, disc)


def test_profile_roundtrip(tmp_path):
    c = suzuki_profile(2)
    path = tmp_path / "suz.profile"
    path.write_text("# comment line\n" + dump_profile(c))
    d = load_profile(path)
    assert (d.genus, d.period, d.disc_deg) == (c.genus, c.period, c.disc_deg)
    assert curve_from_name(f"file:{path}").disc_deg == c.disc_deg


def test_load_profile_errors(tmp_path):
    p = tmp_path / "bad"
    p.write_text("genus 1\nperiod 3\n")
    with pytest.raises(ProfileError):
        load_profile(p)
    p.write_text("genus 1\nperiod 3\ndisc 0 1 2\ncolour blue\n")
    with pytest.raises(ProfileError):
        load_profile(p)


@pytest.mark.parametrize("bad", ["elliptic:3", "hermitian:6", "suzuki:3"])
def test_curve_from_name_errors(bad):
    with pytest.raises(ValueError):
        curve_from_name(bad)


def test_semigroup_basics():
    s = NumericalSemigroup.generated_by([3, 4])
    assert s.gaps == frozenset({1, 2, 5})
    assert s.genus == 3
    assert 6 in s and 5 not in s and -1 not in s
    with pytest.raises(ValueError):
        NumericalSemigroup(frozenset({2}))     # 1 + 1 = 2 would be a nongap sum
