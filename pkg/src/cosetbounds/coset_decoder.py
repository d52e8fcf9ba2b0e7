"""Majority coset decoding for two-point Hermitian codes.

For a lattice divisor ``G`` and a point ``pt`` the extension decoded here is
``C = C_Omega(D, G - pt)  ⊃  C1 = C_Omega(D, G)`` with dual extension
``D1 = C_L(D, G)  ⊃  Dsub = C_L(D, G - pt)``.  A chain ``A_1 < ... < A_w`` in
``Delta_pt(G - K - pt)`` yields vectors ``a_i = f_i(D)`` and ``b_{w+1-i} = g_i(D)``
whose products certify ``d(C/C1) >= w`` and drive the majority vote.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .bounds import ChainWitness, chain_bound
from .curve_model import P, Q, LatticeDivisor, TwoPointCurve, as_lattice, hermitian_profile
from .gf_codes.codes import BudgetExceeded, LinearCode, complement_rows, span_words
from .gf_codes.field import GF, solve
from .gf_codes.hermitian import (build_code_l, default_support, evaluate, hermitian_field,
                                 hermitian_points, monomial_with_pole, pole_orders)

log = logging.getLogger(__name__)


class WitnessError(ValueError):
    """The witness conditions fail; carries the offending index pair."""

    def __init__(self, msg: str, pair: Optional[tuple[int, int]] = None):
        super().__init__(msg)
        self.pair = pair


class DecodingFailure(RuntimeError):
    pass


@dataclass
class Extension:
    """The four codes of one codimension-one step (``Dsub ⊂ D1`` dual to ``C1 ⊂ C``)."""
    q: int
    G: LatticeDivisor
    point: str
    D: list
    code: LinearCode        # C  = C_Omega(D, G - pt)
    sub: LinearCode         # C1 = C_Omega(D, G)
    dual_big: LinearCode    # D1 = C_L(D, G)
    dual_small: LinearCode  # Dsub = C_L(D, G - pt)

    @property
    def trivial(self) -> bool:
        return self.code.k == self.sub.k


def _step(point: str) -> LatticeDivisor:
    return LatticeDivisor(1, 0) if point == P else LatticeDivisor(0, 1)


def extension(q: int, G, point: str = P, D: Optional[Sequence[int]] = None) -> Extension:
    G = as_lattice(G)
    D = default_support(q) if D is None else list(D)
    big = _code_l(q, G.k, G.l, tuple(D))
    H = G - _step(point)
    small = _code_l(q, H.k, H.l, tuple(D))
    return Extension(q, G, point, D, small.dual(), big.dual(), big, small)


@lru_cache(maxsize=4096)
def _code_l(q: int, a: int, b: int, D: tuple) -> LinearCode:
    return build_code_l(q, a, b, D)


@dataclass
class WitnessSystem:
    ext: Extension
    a: np.ndarray           # w x n
    b: np.ndarray           # w x n, b[j-1] is b_j
    x: np.ndarray
    c0: np.ndarray          # a word of C outside C1
    chain: tuple = ()
    monomials: dict = field(default_factory=dict)

    @property
    def w(self) -> int:
        return self.a.shape[0]

    @property
    def F(self) -> GF:
        return self.ext.code.F

    def to_json(self) -> dict:
        e = self.ext
        return {"q": e.q, "G": [e.G.k, e.G.l], "point": self.ext.point, "D": e.D, "w": self.w,
                "chain": [[A.k, A.l] for A in self.chain],
                "a": self.a.tolist(), "b": self.b.tolist(), "x": self.x.tolist(),
                "c0": self.c0.tolist()}


def _pole_pair(A: LatticeDivisor) -> tuple[int, int]:
    return A.k, A.l


def _leading_monomial(q: int, A: LatticeDivisor, point: str) -> tuple[int, int]:
    """The monomial in ``L(A)`` with exact pole order ``A`` at ``point``."""
    k, l = _pole_pair(A)
    mono = monomial_with_pole(q, k if point == P else l, point)
    pp, pq = pole_orders(q, mono)
    if pp > k or pq > l:
        raise WitnessError(f"{A} has a base point at {point}")
    return mono


def _in_code_perp(F: GF, parity: np.ndarray, v: np.ndarray) -> bool:
    # v lies in the code whose dual is spanned by ``parity``
    return parity.shape[0] == 0 or not np.any(F.matvec(parity, v))


def _hadamard(F: GF, u, v) -> np.ndarray:
    return F.mul_t[u, v]


def _label(F: GF, v: np.ndarray, x: np.ndarray, c0: np.ndarray) -> int:
    """Coefficient ``mu`` with ``v`` in ``mu*x + Dsub`` (for ``v`` in ``D1``)."""
    return int(F.div(F.dot(v, c0), F.dot(x, c0)))


def build_witnesses(q: int, G, point: str = P, chain: Optional[ChainWitness] = None,
                    D: Optional[Sequence[int]] = None, verify: bool = True) -> WitnessSystem:
    """Witness vectors for the step ``C_Omega(D, G - pt) ⊃ C_Omega(D, G)``."""
    G = as_lattice(G)
    ext = extension(q, G, point, D)
    if ext.trivial:
        raise WitnessError("extension is trivial")
    curve = hermitian_profile(q)
    C = curve.sub(curve.sub(curve.cls(G), curve.canonical), curve.point_class(point))
    if chain is None:
        chain = ChainWitness(chain_bound(curve, C, point).witness["chain"])
    elif not chain.verify(curve, C, point):
        raise WitnessError("chain is not valid for this extension")
    if len(chain) == 0:
        raise WitnessError("empty chain")
    F = ext.code.F
    pts = [hermitian_points(q)[i] for i in ext.D]
    fs = [_leading_monomial(q, A, point) for A in chain.chain]
    gs = [_leading_monomial(q, G - A, point) for A in chain.chain]
    a = np.array([evaluate(q, f, pts) for f in fs], dtype=np.int64)
    g_eval = np.array([evaluate(q, g, pts) for g in gs], dtype=np.int64)
    w = len(chain)
    b = g_eval[::-1].copy()                     # b_{w+1-i} = g_i
    x = _hadamard(F, a[0], b[w - 1])
    c0 = complement_rows(F, ext.code, ext.sub)[0]
    for i in range(w):
        mu = _label(F, _hadamard(F, a[i], b[w - 1 - i]), x, c0)
        if mu == 0:
            raise WitnessError("diagonal product falls in the small code", (i + 1, w - i))
        b[w - 1 - i] = F.mul_t[F.inv_t[mu], b[w - 1 - i]]
    ws = WitnessSystem(ext, a, b, x, c0, tuple(chain.chain), {"f": fs, "g": gs})
    if verify:
        check_witnesses(ws)
    return ws


def check_witnesses(ws: WitnessSystem) -> None:
    """Raise :class:`WitnessError` unless every product condition holds."""
    F, w = ws.F, ws.w
    parity = ws.ext.code.generator          # Dsub^perp = C
    if not _in_code_perp(F, ws.ext.sub.generator, ws.x) or _in_code_perp(F, parity, ws.x):
        raise WitnessError("x is not in D1 \\ Dsub")
    for i in range(1, w + 1):
        for j in range(1, w + 2 - i):
            v = _hadamard(F, ws.a[i - 1], ws.b[j - 1])
            if i + j <= w:
                ok = _in_code_perp(F, parity, v)
            else:
                ok = _in_code_perp(F, parity, F.sub(v, ws.x))
            if not ok:
                raise WitnessError(f"product condition fails at (i, j) = ({i}, {j})", (i, j))


def verify_witnesses(ws: WitnessSystem) -> bool:
    try:
        check_witnesses(ws)
    except WitnessError:
        return False
    return True


# -- decoding -----------------------------------------------------------------------

@dataclass
class StepResult:
    value: Optional[int]            # x . c, None on failure
    label: Optional[int]            # mu with c in mu*c0 + C1
    I: list
    I_star: list
    tally: dict

    @property
    def ok(self) -> bool:
        return self.value is not None

    def margin(self, truth: int) -> int:
        right = self.tally.get(truth, 0)
        return right - (sum(self.tally.values()) - right)

    def to_json(self) -> dict:
        return {"value": self.value, "label": self.label, "I": self.I, "I_star": self.I_star,
                "tally": {str(k): v for k, v in sorted(self.tally.items())}}


def syndromes(ws: WitnessSystem, y) -> np.ndarray:
    """``S[s, t] = (a_{s+1} * b_{t+1}) . y``."""
    F = ws.F
    ay = F.mul_t[ws.a, np.asarray(y, dtype=np.int64)[None, :]]
    prod = F.mul_t[ay[:, None, :], ws.b[None, :, :]]
    return F.sum(prod, axis=2)


def coset_decode_step(ws: WitnessSystem, y, t: Optional[int] = None) -> StepResult:
    """Majority vote for ``x . c`` where ``c`` is the codeword nearest to ``y``."""
    w, F = ws.w, ws.F
    if t is not None and 2 * t >= w:
        raise ValueError(f"need 2t < w, got t={t}, w={w}")
    S = syndromes(ws, y)
    I, I_star, votes = [], [], {}
    for i in range(1, w + 1):
        # a'_i = a_i + sum_{s<i} alpha_s a_s, orthogonal to b_1..b_{w-i} against y
        A = S[: i - 1, : w - i].T
        alpha = solve(F, A, F.neg_t[S[i - 1, : w - i]])
        if alpha is not None:
            I.append(i)
            col = w - i
            votes[i] = int(F.add(S[i - 1, col], F.dot(alpha, S[: i - 1, col]) if i > 1 else 0))
    for j in range(1, w + 1):
        # b'_j = b_{w+1-j} + sum_{t<=w-j} beta_t b_t, orthogonal to a_1..a_{j-1}
        A = S[: j - 1, : w - j]
        if solve(F, A, F.neg_t[S[: j - 1, w - j]]) is not None:
            I_star.append(j)
    both = sorted(set(I) & set(I_star))
    tally = Counter(votes[i] for i in both)
    value = None
    if tally:
        top, cnt = tally.most_common(1)[0]
        if 2 * cnt > len(both):
            value = top
    label = None if value is None else int(F.div(value, F.dot(ws.x, ws.c0)))
    log.debug("I=%s I*=%s tally=%s", I, I_star, dict(tally))
    return StepResult(value, label, I, I_star, dict(tally))


# -- filtrations -----------------------------------------------------------------------

@dataclass
class Filtration:
    q: int
    D: list
    G0: LatticeDivisor
    steps: list                     # WitnessSystem per nontrivial step
    residual: LatticeDivisor        # C_Omega(D, residual) is what is left after the steps
    residual_code: LinearCode

    @property
    def min_w(self) -> Optional[int]:
        return min((s.w for s in self.steps), default=None)


def _chain_len(curve: TwoPointCurve, G: LatticeDivisor, point: str) -> int:
    C = curve.sub(curve.sub(curve.cls(G), curve.canonical), curve.point_class(point))
    return chain_bound(curve, C, point).value


def build_filtration(q: int, G0, t: int, D: Optional[Sequence[int]] = None) -> Filtration:
    """Steps from ``C_Omega(D, G0)`` towards the zero code, raising ``G`` by P or Q.

    Among all monotone paths the one maximizing the smallest witness length is
    taken.  The path stops early (leaving a residual code) at the first step
    whose witness length is below ``2t + 1``.
    """
    G0 = as_lattice(G0)
    D = default_support(q) if D is None else list(D)
    Dt = tuple(D)
    n = len(D)
    curve = hermitian_profile(q)
    memo: dict = {}

    def omega_dim(G: LatticeDivisor) -> int:
        return n - _code_l(q, G.k, G.l, Dt).k

    def best(G: LatticeDivisor) -> tuple:
        if G in memo:
            return memo[G]
        if omega_dim(G) == 0:
            memo[G] = (float("inf"), None)
            return memo[G]
        out = None
        for pt in (P, Q):
            nxt = G + _step(pt)
            sub_val = best(nxt)[0]
            if omega_dim(nxt) == omega_dim(G):
                val = sub_val
            else:
                val = min(sub_val, _chain_len(curve, nxt, pt))
            if out is None or val > out[0]:
                out = (val, pt)
        memo[G] = out
        return out

    steps = []
    G = G0
    while omega_dim(G) > 0:
        pt = best(G)[1]
        nxt = G + _step(pt)
        if omega_dim(nxt) != omega_dim(G):
            if _chain_len(curve, nxt, pt) < 2 * t + 1:
                break
            steps.append(build_witnesses(q, nxt, pt, D=D))
        G = nxt
    residual = _code_l(q, G.k, G.l, Dt).dual()
    return Filtration(q, D, G0, steps, G, residual)


def _nearest(code: LinearCode, y: np.ndarray, t: int) -> np.ndarray:
    if code.k == 0:
        return np.zeros(code.n, dtype=np.int64)
    try:
        words = span_words(code.F, code.generator, code.n)
    except BudgetExceeded as exc:
        raise DecodingFailure(f"residual code too large to search: {exc}") from exc
    dist = np.count_nonzero(words != y[None, :], axis=1)
    close = np.nonzero(dist <= t)[0]
    if len(close) != 1:
        raise DecodingFailure("residual code has no unique word within distance t")
    return words[close[0]]


def decode(filt: Filtration, y, t: int) -> np.ndarray:
    """Codeword of ``C_Omega(D, G0)`` within distance ``t`` of ``y``."""
    bad = [s.w for s in filt.steps if s.w < 2 * t + 1]
    if bad:
        raise ValueError(f"witness length {bad[0]} below 2t+1 = {2 * t + 1}")
    F = hermitian_field(filt.q)
    y = np.asarray(y, dtype=np.int64)
    cur = y.copy()
    total = np.zeros_like(y)
    for k, ws in enumerate(filt.steps):
        r = coset_decode_step(ws, cur, t)
        if not r.ok:
            raise DecodingFailure(f"no majority at step {k}")
        c = F.mul_t[r.label, ws.c0]
        cur = F.sub(cur, c)
        total = F.add(total, c)
    total = F.add(total, _nearest(filt.residual_code, cur, t))
    return total
