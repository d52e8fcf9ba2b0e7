"""The Hermitian curve ``y^q + y = x^(q+1)`` over GF(q^2) and its two-point codes.

``P_inf`` plays the role of the lattice point P and ``P_0 = (0, 0)`` the role of
Q, so ``G = a*P_inf + b*P_0`` corresponds to the lattice divisor ``(a, b)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .codes import LinearCode
from .field import GF, field

INF = "inf"


@dataclass(frozen=True)
class CurvePoint:
    x: Optional[int]
    y: Optional[int]

    @property
    def at_infinity(self) -> bool:
        return self.x is None

    def __str__(self) -> str:
        return "P_inf" if self.at_infinity else f"({self.x},{self.y})"


def hermitian_field(q: int) -> GF:
    return field(q * q)


@lru_cache(maxsize=None)
def hermitian_points(q: int) -> tuple:
    """All rational points: ``P_0`` first, affine points in table order, ``P_inf`` last."""
    if q not in (2, 3, 4):
        raise ValueError(f"unsupported q={q}; use 2, 3 or 4")
    F = hermitian_field(q)
    pts = []
    for x in range(F.order):
        rhs = F.pow(x, q + 1)
        for y in range(F.order):
            if F.add(F.pow(y, q), y) == rhs:
                pts.append(CurvePoint(x, y))
    pts.remove(CurvePoint(0, 0))
    return tuple([CurvePoint(0, 0)] + pts + [CurvePoint(None, None)])


def default_support(q: int) -> list[int]:
    """Indices of every affine point except ``P_0``."""
    return list(range(1, q ** 3))


def rr_basis(q: int, a: int, b: int) -> list[tuple[int, int]]:
    """Monomials ``x^i y^j`` spanning ``L(a*P_inf + b*P_0)``."""
    out = []
    for i in range(q + 1):
        # -b - i <= (q+1) j <= a - q i
        jlo = -((b + i) // (q + 1))
        jhi = (a - q * i) // (q + 1)
        out.extend((i, j) for j in range(jlo, jhi + 1))
    return sorted(out, key=lambda t: (q * t[0] + (q + 1) * t[1], t))


def pole_orders(q: int, mono: tuple[int, int]) -> tuple[int, int]:
    """Pole orders of ``x^i y^j`` at ``P_inf`` and at ``P_0``."""
    i, j = mono
    return q * i + (q + 1) * j, -(i + (q + 1) * j)


def monomial_with_pole(q: int, order: int, at: str = "P") -> tuple[int, int]:
    """The unique monomial with given pole order at ``P_inf`` ("P") or ``P_0`` ("Q")."""
    i = (-order) % (q + 1)
    if at == "P":
        return i, (order - q * i) // (q + 1)
    return i, (-order - i) // (q + 1)


def evaluate(q: int, mono: tuple[int, int], pts: Sequence[CurvePoint]) -> np.ndarray:
    F = hermitian_field(q)
    i, j = mono
    out = np.zeros(len(pts), dtype=np.int64)
    for t, p in enumerate(pts):
        if p.at_infinity or (j < 0 and p.y == 0):
            raise ValueError(f"x^{i} y^{j} has a pole at {p}")
        out[t] = F.mul(F.pow(p.x, i), F.pow(p.y, j))
    return out


def _points(q: int, D: Sequence[int]) -> list[CurvePoint]:
    pts = hermitian_points(q)
    D = list(D)
    if 0 in D or len(pts) - 1 in D:
        raise ValueError("D must avoid P_0 and P_inf")
    if len(set(D)) != len(D):
        raise ValueError("repeated points in D")
    return [pts[i] for i in D]


def build_code_l(q: int, a: int, b: int, D: Optional[Sequence[int]] = None) -> LinearCode:
    """Evaluation code ``C_L(D, a*P_inf + b*P_0)``; ``D`` holds point indices."""
    D = default_support(q) if D is None else list(D)
    pts = _points(q, D)
    rows = [evaluate(q, mono, pts) for mono in rr_basis(q, a, b)]
    rows = np.array(rows, dtype=np.int64).reshape(-1, len(pts))
    return LinearCode.from_rows(hermitian_field(q), rows, len(pts),
                                {"q": q, "a": a, "b": b, "D": D, "kind": "L"})


def build_code_omega(q: int, a: int, b: int, D: Optional[Sequence[int]] = None) -> LinearCode:
    """``C_Omega(D, G)`` realised as the dual of ``C_L(D, G)``."""
    code = build_code_l(q, a, b, D).dual()
    code.label.update({"kind": "Omega"})
    return code
