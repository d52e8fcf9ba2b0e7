import json
from itertools import product

import numpy as np
import pytest

from cosetbounds import hermitian_profile, LatticeDivisor as L
from cosetbounds.gf_codes import codes as codes_mod
from cosetbounds.gf_codes.codes import (BudgetExceeded, LinearCode, complement_rows,
                                        coset_distance, min_distance, span_words, support_gain)
from cosetbounds.gf_codes.field import GF, field, nullspace, rank, rref, solve
from cosetbounds.gf_codes.hermitian import (build_code_l, build_code_omega, default_support,
                                            evaluate, hermitian_field, hermitian_points,
                                            monomial_with_pole, pole_orders, rr_basis)


@pytest.mark.parametrize("order", [2, 3, 4, 5, 7, 8, 9, 16])
def test_field_axioms(order):
    F = field(order)
    a = np.arange(order)
    A, B = np.meshgrid(a, a, indexing="ij")
    assert np.array_equal(F.add(A, B), F.add(B, A))
    assert np.array_equal(F.mul(A, B), F.mul(B, A))
    for c in range(order):
        # distributivity
        assert np.array_equal(F.mul(c, F.add(A, B)), F.add(F.mul(c, A), F.mul(c, B)))
    assert np.all(F.sub(A, A) == 0)
    assert np.all(F.mul(a[1:], F.inv(a[1:])) == 1)
    # the multiplicative group is cyclic of order q - 1
    g = int(F.exp[1])
    assert len({F.pow(g, e) for e in range(order - 1)}) == order - 1


def test_field_errors():
    for bad in (1, 6, 12, 512):
        with pytest.raises(ValueError):
            GF(bad)
    F = field(4)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)
    assert F.pow(0, 0) == 1 and F.pow(0, 3) == 0


def test_gf4_defining_polynomial():
    F = field(4)
    x = 2                       # the class of x
    # x^2 = x + 1
    assert F.mul(x, x) == F.add(x, 1)
    F8 = field(8)
    assert F8.add(F8.pow(2, 3), F8.add(2, 1)) == 0     # x^3 + x + 1 = 0
    F9 = field(9)
    assert F9.add(F9.mul(3, 3), F9.add(3, 2)) == 0     # x^2 + x + 2 = 0, x encoded as 3


def test_frobenius_subfield():
    F = field(16)
    sub = F.frobenius_fixed(4)
    assert len(sub) == 4
    for a, b in product(sub, sub):
        assert F.add(a, b) in sub and F.mul(a, b) in sub


def test_linear_algebra_roundtrip():
    F = field(9)
    rng = np.random.default_rng(1)
    for _ in range(30):
        M = rng.integers(0, 9, (4, 7))
        R, piv = rref(F, M)
        N = nullspace(F, M)
        assert len(piv) + len(N) == 7 == rank(F, M) + N.shape[0]
        for v in N:
            assert not np.any(F.matvec(M, v))
        x = rng.integers(0, 9, 7)
        b = F.matvec(M, x)
        y = solve(F, M, b)
        assert y is not None and np.array_equal(F.matvec(M, y), b)
    M = np.array([[1, 0], [1, 0]])
    assert solve(field(3), M, np.array([1, 2])) is None


def _repetition(F, n):
    return LinearCode.from_rows(F, np.ones((1, n), dtype=np.int64), n)


def _parity(F, n):
    rows = np.zeros((n - 1, n), dtype=np.int64)
    for i in range(n - 1):
        rows[i, i] = 1
        rows[i, n - 1] = F.neg_t[1]
    return LinearCode.from_rows(F, rows, n)


@pytest.mark.parametrize("order,n", [(2, 5), (3, 4), (4, 5)])
def test_repetition_and_parity(order, n):
    F = field(order)
    rep, par = _repetition(F, n), _parity(F, n)
    assert rep.dual() == par and par.dual() == rep
    assert min_distance(rep) == n
    assert min_distance(par) == 2
    assert min_distance(par, "support") == min_distance(par, "enumerate") == 2


def test_dual_of_dual_and_containment():
    F = field(4)
    rng = np.random.default_rng(7)
    for _ in range(20):
        C = LinearCode.from_rows(F, rng.integers(0, 4, (3, 7)), 7)
        assert C.dual().dual() == C
        assert C.k + C.dual().k == 7
        w = C.random_word(rng)
        assert C.contains(w)
        assert all(F.dot(w, h) == 0 for h in C.dual().generator)


def test_enumerate_and_support_agree():
    F = field(4)
    rng = np.random.default_rng(3)
    for _ in range(25):
        big = LinearCode.from_rows(F, rng.integers(0, 4, (4, 7)), 7)
        if big.k < 2:
            continue
        sub = LinearCode.from_rows(F, big.generator[: big.k - 1 - int(rng.integers(0, 2))], 7)
        assert coset_distance(big, sub, "enumerate") == coset_distance(big, sub, "support")


def test_coset_distance_chain_identity():
    # d(C) = min over a filtration of the successive coset distances
    F = field(4)
    rng = np.random.default_rng(11)
    for _ in range(10):
        C = LinearCode.from_rows(F, rng.integers(0, 4, (4, 7)), 7)
        rows = C.generator
        levels = [LinearCode.from_rows(F, rows[i:], 7) for i in range(C.k)]
        steps = [coset_distance(levels[i], levels[i + 1]) for i in range(C.k - 1)]
        steps.append(min_distance(levels[-1]))
        assert min(steps) == min_distance(C)


def test_support_gain_definition():
    F = field(2)
    big = LinearCode.from_rows(F, [[1, 1, 0, 0], [0, 0, 1, 1]], 4)
    sub = LinearCode.from_rows(F, [[1, 1, 0, 0]], 4)
    assert support_gain(big, sub, [2, 3]) == 1
    assert support_gain(big, sub, [0, 1]) == 0
    assert len(complement_rows(F, big, sub)) == 1
    with pytest.raises(ValueError):
        complement_rows(F, sub, big)


def test_errors_and_budgets(monkeypatch):
    F = field(4)
    C = _repetition(F, 5)
    with pytest.raises(ValueError):
        coset_distance(C, C)
    with pytest.raises(ValueError):
        coset_distance(C, C, "magic")
    with pytest.raises(ValueError):
        min_distance(LinearCode.from_rows(F, np.zeros((0, 5)), 5))
    monkeypatch.setattr(codes_mod, "ENUM_BUDGET", 10)
    with pytest.raises(BudgetExceeded):
        span_words(F, _parity(F, 5).generator, 5)
    monkeypatch.setattr(codes_mod, "RANK_BUDGET", 3)
    with pytest.raises(BudgetExceeded):
        coset_distance(_parity(F, 5), LinearCode.from_rows(F, np.zeros((0, 5)), 5), "support")


def test_json_roundtrip():
    C = build_code_l(2, 3, 1)
    D = LinearCode.from_json(json.loads(C.dumps()))
    assert D == C and D.label == C.label


# -- Hermitian curve ------------------------------------------------------------

@pytest.mark.parametrize("q", [2, 3, 4])
def test_hermitian_points(q):
    pts = hermitian_points(q)
    F = hermitian_field(q)
    assert len(pts) == q ** 3 + 1
    assert pts[0].x == 0 and pts[0].y == 0 and pts[-1].at_infinity
    for p in pts[:-1]:
        # y^q + y = x^(q+1)
        assert F.add(F.pow(p.y, q), p.y) == F.pow(p.x, q + 1)
    assert default_support(q) == list(range(1, q ** 3))


@pytest.mark.parametrize("q", [2, 3])
def test_rr_basis_dimension(q):
    curve = hermitian_profile(q)
    for a in range(-4, 3 * q * q):
        for b in range(-q - 1, q + 2):
            basis = rr_basis(q, a, b)
            assert len(basis) == curve.dim_l(L(a, b))
            for mono in basis:
                pp, p0 = pole_orders(q, mono)
                assert pp <= a and p0 <= b


def test_monomial_with_pole():
    for q in (2, 3):
        for order in range(-12, 20):
            for at in ("P", "Q"):
                mono = monomial_with_pole(q, order, at)
                pp, p0 = pole_orders(q, mono)
                assert (pp if at == "P" else p0) == order
                assert 0 <= mono[0] <= q


def test_evaluate_product():
    q = 2
    pts = hermitian_points(q)[1:-1]
    F = hermitian_field(q)
    a, b = evaluate(q, (1, 0), pts), evaluate(q, (0, 1), pts)
    assert np.array_equal(F.mul(a, b), evaluate(q, (1, 1), pts))
    assert np.array_equal(evaluate(q, (0, -1), pts), F.inv(b))


@pytest.mark.parametrize("q", [2, 3])
def test_code_dimensions(q):
    curve = hermitian_profile(q)
    n = q ** 3 - 1
    for a in range(-2, n + 3, 3):
        for b in range(0, q + 1):
            C = build_code_l(q, a, b)
            if a + b < n:
                assert C.k == curve.dim_l(L(a, b))
            W = build_code_omega(q, a, b)
            assert W.k == n - C.k and W.dual() == C


def test_code_l_distance_at_least_goppa():
    q = 2
    n = q ** 3 - 1
    for a in range(0, n):
        for b in range(0, q + 1):
            C = build_code_l(q, a, b)
            if C.k and a + b < n:
                assert min_distance(C) >= n - (a + b)


def test_code_support_validation():
    with pytest.raises(ValueError):
        build_code_l(2, 3, 0, [0, 1, 2])
    with pytest.raises(ValueError):
        build_code_l(2, 3, 0, [1, 2, 8])
    C = build_code_l(2, 3, 0, [1, 2, 3, 4])
    assert C.n == 4
