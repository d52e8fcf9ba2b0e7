"""Delta sets, their line restrictions, diagnostic tables and the 6g partition."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .curve_model import (P, Q, DivClass, DivisorLike, LatticeDivisor, TwoPointCurve,
                          as_lattice)


def _unit(point: str) -> LatticeDivisor:
    return LatticeDivisor(1, 0) if point == P else LatticeDivisor(0, 1)


def _lattice(curve: TwoPointCurve, A: DivisorLike) -> LatticeDivisor:
    return curve.rep(A) if isinstance(A, DivClass) else as_lattice(A)


def degree_window(curve: TwoPointCurve, C: DivisorLike) -> tuple[int, int]:
    """Degrees that members of ``Delta(C)`` can have."""
    c = curve.cls(C).deg
    g = curve.genus
    return min(0, c), max(2 * g - 1, c + 2 * g - 1)


def in_delta(curve: TwoPointCurve, A: DivisorLike, C: DivisorLike, point: str = P) -> bool:
    return curve.in_gamma(A, point) and not curve.in_gamma(curve.sub(A, C), point)


@dataclass(frozen=True)
class DeltaSet:
    point: str
    threshold: DivClass
    members: tuple
    representatives: Optional[tuple] = None

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, A) -> bool:
        return A in self.members


def delta_p(curve: TwoPointCurve, C: DivisorLike, point: str = P) -> DeltaSet:
    """All classes ``A`` with ``A`` in Gamma and ``A - C`` not in Gamma."""
    c = curve.cls(C)
    lo, hi = degree_window(curve, c)
    members = tuple(DivClass(d, r) for d in range(lo, hi + 1) for r in range(curve.period)
                    if in_delta(curve, DivClass(d, r), c, point))
    return DeltaSet(point, c, members)


def delta_line(curve: TwoPointCurve, B: DivisorLike, C: DivisorLike, point: str = P) -> list[int]:
    """Indices ``i`` with ``B + i*point`` in ``Delta(C)``."""
    B = _lattice(curve, B)
    c = curve.cls(C)
    lo, hi = degree_window(curve, c)
    if point == Q:
        return delta_line(curve.swapped, B.swapped(), curve.swap_class(c), P)
    i = np.arange(lo - B.deg, hi - B.deg + 1)
    deg = B.deg + i
    res = (B.k + i) % curve.period
    ok = curve.gamma_p_array(deg, res) & ~curve.gamma_p_array(deg - c.deg, res - c.res)
    return [int(x) for x in i[ok]]


def delta_line_set(curve: TwoPointCurve, B: DivisorLike, C: DivisorLike, point: str = P) -> DeltaSet:
    B = _lattice(curve, B)
    u = _unit(point)
    reps = tuple(B + LatticeDivisor(i * u.k, i * u.l) for i in delta_line(curve, B, C, point))
    return DeltaSet(point, curve.cls(C), tuple(curve.cls(A) for A in reps), reps)


def dual_index_set(curve: TwoPointCurve, B: DivisorLike, C: DivisorLike, point: str = P) -> list[int]:
    """``I*(B, C) = I(B - C, -C)``; ``C`` must be a lattice divisor here."""
    B, C = _lattice(curve, B), _lattice(curve, C)
    return delta_line(curve, B - C, -C, point)


def count_identity_check(curve: TwoPointCurve, B: DivisorLike, C: DivisorLike,
                         point: str = P) -> tuple[int, int]:
    """Return ``(#Delta(B,C), #Delta(B-C,-C))``; they differ by ``deg C``."""
    B, C = _lattice(curve, B), _lattice(curve, C)
    return len(delta_line(curve, B, C, point)), len(delta_line(curve, B - C, -C, point))


def delta_le(curve: TwoPointCurve, B: DivisorLike, C: DivisorLike, point: str = P) -> list[int]:
    return [i for i in delta_line(curve, B, C, point) if i <= 0]


def delta_ge(curve: TwoPointCurve, B: DivisorLike, C: DivisorLike, point: str = P) -> list[int]:
    """Indices ``i >= 1`` of the line through ``B`` (the part above ``B``)."""
    return [i for i in delta_line(curve, B, C, point) if i >= 1]


# -- vectorised line counts ------------------------------------------------

def line_counts(curve: TwoPointCurve, C: DivisorLike, point: str = P) -> np.ndarray:
    """``#Delta(B, C)`` for every line ``B``, indexed by the transversal residue.

    For point P the lines are ``j*Q + ZP`` with ``j`` in ``[0, m)``; for point Q
    they are ``j*P + ZQ``.
    """
    if point == Q:
        return line_counts(curve.swapped, curve.swap_class(C), P)
    c = curve.cls(C)
    m = curve.period
    dp = curve.dp
    rho = np.arange(m)
    lo = dp[rho]
    hi = dp[(rho - c.res) % m] + c.deg - 1
    lam = np.arange(m)[:, None]
    return np.asarray(count_residue_2d(lo, hi, rho, lam, m).sum(axis=1))


def count_residue_2d(lo, hi, rho, lam, m):
    # integers u' in [lo, hi] with u' = rho + lam (mod m)
    target = rho[None, :] + lam
    n = (hi[None, :] - target) // m - (lo[None, :] - 1 - target) // m
    return np.maximum(n, 0)


def membership_grid(curve: TwoPointCurve, C: DivisorLike, point: str = P):
    """Membership of ``Delta(C)`` over (line, degree) over :func:`degree_window`.

    Returns ``(grid, lo)`` where ``grid[lam, d - lo]`` tells whether the class of
    degree ``d`` on line ``lam`` belongs to the set.  Lines are indexed as in
    :func:`line_counts`.
    """
    if point == Q:
        return membership_grid(curve.swapped, curve.swap_class(C), P)
    c = curve.cls(C)
    m = curve.period
    lo, hi = degree_window(curve, c)
    d = np.arange(lo, hi + 1)[None, :]
    lam = np.arange(m)[:, None]
    res = (d - lam) % m
    ok = (d >= curve.dp[res]) & (d - c.deg < curve.dp[(res - c.res) % m])
    return ok, lo


# -- tables -------------------------------------------------------------------

@dataclass
class TableRow:
    kind: str
    params: dict
    cells: dict
    members: dict = field(default_factory=dict)

    def render(self) -> list[str]:
        out = []
        for idx, v in self.cells.items():
            if self.kind.startswith("N"):
                out.append(str(int(v)))
            else:
                out.append(str(v) if self.members[idx] else f"({v})")
        return out

    def to_json(self) -> dict:
        return {"kind": self.kind, "params": self.params,
                "cells": [{"index": i, "value": (int(v) if self.kind.startswith("N") else v),
                           "member": bool(self.members.get(i, v))}
                          for i, v in self.cells.items()]}


class _Based:
    """sigma/tau and discrepancy degrees relative to a degree-0 base class."""

    def __init__(self, curve: TwoPointCurve, base: DivClass):
        self.c = curve
        self.r = curve.cls(base).res

    def d_p(self, k: int) -> int:
        return self.c.disc_deg[(self.r + k) % self.c.period]

    def d_q(self, l: int) -> int:
        return int(self.c.dq[(l - self.r) % self.c.period])

    def sigma(self, k: int) -> int:
        return self.d_p(k) - k

    def tau(self, l: int) -> int:
        return self.d_q(l) - l


def tables(curve: TwoPointCurve, B0: DivisorLike, C0: DivisorLike, kind: str,
           fixed: dict, indices) -> TableRow:
    """One row of the K/N (or K+/N+, K-/N-) diagnostic tables.

    ``kind`` "K"/"N": ``fixed`` holds ``l`` and ``i``; ``indices`` runs over ``j``.
    ``kind`` "K+"/"N+" and "K-"/"N-": ``fixed`` holds ``i`` and ``j``;
    ``indices`` runs over ``l``.  A divisor ``A = B0 + kP + lQ`` is tested
    against ``C = C0 + iP + jQ + Q``.
    """
    b0, c0 = curve.cls(B0), curve.cls(C0)
    if b0.deg or c0.deg:
        raise ValueError("B0 and C0 must have degree 0")
    s = _Based(curve, b0)
    s2 = _Based(curve, curve.sub(b0, c0))
    values, members = {}, {}
    base = kind.rstrip("+-")
    sign = kind[1:] if len(kind) > 1 else ""
    if base not in ("K", "N") or sign not in ("", "+", "-"):
        raise ValueError(f"unknown table kind {kind!r}")
    for idx in indices:
        if sign == "":
            l, i, j = fixed["l"], fixed["i"], idx
            k = s2.tau(l - j) + i
            ok = s.sigma(k) <= l
        elif sign == "+":
            i, j, l = fixed["i"], fixed["j"], idx
            k = s.tau(l)
            ok = s2.sigma(k - i) >= l - j
        else:
            i, j, l = fixed["i"], fixed["j"], idx
            k = s2.tau(l - j) + i
            ok = s.sigma(k) <= l
        values[idx] = k
        members[idx] = ok
    params = {"B0": [b0.deg, b0.res], "C0": [c0.deg, c0.res], **fixed}
    if base == "N":
        return TableRow(kind, params, {i: members[i] for i in values}, dict(members))
    return TableRow(kind, params, values, members)


def tables_csv(rows: list[TableRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if rows:
        w.writerow(["kind"] + [str(i) for i in rows[0].cells])
    for row in rows:
        w.writerow([row.kind] + row.render())
    return buf.getvalue()


def tables_json(rows: list[TableRow]) -> str:
    return json.dumps([r.to_json() for r in rows], indent=2)


# -- 6g partition -------------------------------------------------------------

def partition_6g(curve: TwoPointCurve, B0: DivisorLike, C0: DivisorLike,
                 point: str = P) -> dict[str, list[int]]:
    """Split ``[-2g, 4g)`` into the six sets N1, G1, N2, G2, N3, G3 (each of size g).

    ``point`` is the point moved along; the other point carries the 2g shifts.
    """
    b0, c0 = _lattice(curve, B0), _lattice(curve, C0)
    if b0.deg or c0.deg:
        raise ValueError("B0 and C0 must have degree 0")
    g = curve.genus
    u = _unit(point)
    v = _unit(Q if point == P else P)

    def on(base: LatticeDivisor, k: int) -> bool:
        return curve.in_gamma(base + LatticeDivisor(k * u.k, k * u.l), point)

    shift = LatticeDivisor(2 * g * v.k, 2 * g * v.l)
    parts = {}
    for name, base, ks in (("1", b0 - c0 + shift, range(-2 * g, 0)),
                           ("2", b0, range(0, 2 * g)),
                           ("3", b0 - c0 - shift, range(2 * g, 4 * g))):
        parts["N" + name] = [k for k in ks if on(base, k)]
        parts["G" + name] = [k for k in ks if not on(base, k)]
    return {key: parts[key] for key in ("N1", "G1", "N2", "G2", "N3", "G3")}
