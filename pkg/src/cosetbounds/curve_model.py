"""Two-point curve models given by their discrepancy profile.

A curve is described by its genus ``g``, the order ``m`` of ``P - Q`` in the
class group restricted to the lattice ``ZP + ZQ``, and ``disc_deg[r]``: the
degree of the unique discrepancy class whose P-coefficient is ``r`` mod ``m``.
Every Riemann-Roch question about divisors supported on ``{P, Q}`` reduces to
residue arithmetic on this table.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Union

import numpy as np

P = "P"
Q = "Q"
POINTS = (P, Q)


class ProfileError(ValueError):
    """Raised when a discrepancy profile violates the curve invariants."""


@dataclass(frozen=True, order=True)
class DivClass:
    """Linear equivalence class of a lattice divisor: degree and P-residue."""

    deg: int
    res: int


@dataclass(frozen=True, order=True)
class LatticeDivisor:
    """The divisor ``k*P + l*Q``."""

    k: int
    l: int

    @property
    def deg(self) -> int:
        return self.k + self.l

    def __add__(self, other: "LatticeDivisor") -> "LatticeDivisor":
        return LatticeDivisor(self.k + other.k, self.l + other.l)

    def __sub__(self, other: "LatticeDivisor") -> "LatticeDivisor":
        return LatticeDivisor(self.k - other.k, self.l - other.l)

    def __neg__(self) -> "LatticeDivisor":
        return LatticeDivisor(-self.k, -self.l)

    def swapped(self) -> "LatticeDivisor":
        return LatticeDivisor(self.l, self.k)

    def __str__(self) -> str:
        return f"{self.k}P{self.l:+d}Q"


DivisorLike = Union[DivClass, LatticeDivisor, tuple]


def as_lattice(A) -> LatticeDivisor:
    if isinstance(A, LatticeDivisor):
        return A
    if isinstance(A, tuple) and len(A) == 2:
        return LatticeDivisor(int(A[0]), int(A[1]))
    raise TypeError(f"not a lattice divisor: {A!r}")


def count_residue(lo, hi, rho, m):
    """Number of integers ``u`` in ``[lo, hi]`` with ``u = rho (mod m)``.

    Works elementwise on numpy arrays; empty intervals give 0.
    """
    n = (np.subtract(hi, rho) // m) - (np.subtract(lo, 1) - rho) // m
    return np.maximum(n, 0)


@dataclass(frozen=True)
class TwoPointCurve:
    genus: int
    period: int
    disc_deg: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "disc_deg", tuple(int(d) for d in self.disc_deg))
        problems = validate_profile(self)
        if problems:
            raise ProfileError("; ".join(problems))

    @classmethod
    def unchecked(cls, genus: int, period: int, disc_deg: Iterable[int], label: str = "") -> "TwoPointCurve":
        """Build a curve without validation (for diagnostics only)."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "genus", int(genus))
        object.__setattr__(obj, "period", int(period))
        object.__setattr__(obj, "disc_deg", tuple(int(d) for d in disc_deg))
        object.__setattr__(obj, "label", label)
        return obj

    # -- cached tables -------------------------------------------------
    @cached_property
    def dp(self) -> np.ndarray:
        return np.array(self.disc_deg, dtype=np.int64)

    @cached_property
    def dq(self) -> np.ndarray:
        """Degree of the discrepancy class indexed by its Q-residue."""
        m = self.period
        out = np.zeros(m, dtype=np.int64)
        for r, d in enumerate(self.disc_deg):
            out[(d - r) % m] = d
        return out

    @cached_property
    def rho_k(self) -> int:
        """P-residue of the degree-2g discrepancy, i.e. of K + P + Q."""
        return self.disc_deg.index(2 * self.genus)

    @cached_property
    def canonical(self) -> DivClass:
        return DivClass(2 * self.genus - 2, (self.rho_k - 1) % self.period)

    @cached_property
    def swapped(self) -> "TwoPointCurve":
        """The same curve with the roles of P and Q exchanged."""
        return TwoPointCurve.unchecked(self.genus, self.period, self.dq.tolist(),
                                       self.label + " (P<->Q)")

    # -- class arithmetic ----------------------------------------------
    def cls(self, A: DivisorLike) -> DivClass:
        if isinstance(A, DivClass):
            return DivClass(A.deg, A.res % self.period)
        A = as_lattice(A)
        return DivClass(A.deg, A.k % self.period)

    def add(self, A: DivisorLike, B: DivisorLike) -> DivClass:
        a, b = self.cls(A), self.cls(B)
        return DivClass(a.deg + b.deg, (a.res + b.res) % self.period)

    def sub(self, A: DivisorLike, B: DivisorLike) -> DivClass:
        a, b = self.cls(A), self.cls(B)
        return DivClass(a.deg - b.deg, (a.res - b.res) % self.period)

    def neg(self, A: DivisorLike) -> DivClass:
        a = self.cls(A)
        return DivClass(-a.deg, (-a.res) % self.period)

    def q_res(self, A: DivisorLike) -> int:
        a = self.cls(A)
        return (a.deg - a.res) % self.period

    def swap_class(self, A: DivisorLike) -> DivClass:
        """Class of ``A`` expressed on :attr:`swapped`."""
        a = self.cls(A)
        return DivClass(a.deg, (a.deg - a.res) % self.period)

    def rep(self, A: DivisorLike) -> LatticeDivisor:
        """Lattice representative with Q-coefficient in a centred window."""
        if isinstance(A, LatticeDivisor):
            return A
        a = self.cls(A)
        m = self.period
        lo = -(m // 2)
        l = lo + (self.q_res(a) - lo) % m
        return LatticeDivisor(a.deg - l, l)

    def point_class(self, point: str) -> DivClass:
        return DivClass(1, 1 % self.period) if point == P else DivClass(1, 0)

    # -- membership and dimensions --------------------------------------
    def in_gamma_p(self, A: DivisorLike) -> bool:
        a = self.cls(A)
        return a.deg >= self.disc_deg[a.res]

    def in_gamma_q(self, A: DivisorLike) -> bool:
        a = self.cls(A)
        return a.deg >= int(self.dq[(a.deg - a.res) % self.period])

    def in_gamma(self, A: DivisorLike, point: str) -> bool:
        return self.in_gamma_p(A) if point == P else self.in_gamma_q(A)

    def sigma(self, k: int) -> int:
        return self.disc_deg[k % self.period] - k

    def tau(self, l: int) -> int:
        return int(self.dq[l % self.period]) - l

    def dim_l(self, A: DivisorLike) -> int:
        a = self.cls(A)
        return int(self.dim_array(np.array([a.deg]), np.array([a.res]))[0])

    def dim_array(self, degs, ress) -> np.ndarray:
        """Vectorised ``dim L`` over arrays of classes."""
        degs = np.asarray(degs, dtype=np.int64)[..., None]
        k = np.asarray(ress, dtype=np.int64)[..., None] % self.period
        l = degs - k
        rho = np.arange(self.period)
        return count_residue(self.dp - l, k, rho, self.period).sum(axis=-1)

    def gamma_p_array(self, degs, ress) -> np.ndarray:
        degs = np.asarray(degs, dtype=np.int64)
        return degs >= self.dp[np.asarray(ress) % self.period]

    def semigroup(self, point: str = P) -> "NumericalSemigroup":
        """Weierstrass semigroup at ``point``."""
        d = self.dp if point == P else self.dq
        gaps = [k for k in range(1, 2 * self.genus) if k < d[k % self.period]]
        return NumericalSemigroup(frozenset(gaps))

    def __str__(self) -> str:
        return self.label or f"curve(g={self.genus}, m={self.period})"


def validate_profile(curve: TwoPointCurve) -> list[str]:
    """List every violated curve invariant; an empty list means valid."""
    g, m, d = curve.genus, curve.period, list(curve.disc_deg)
    out: list[str] = []
    if m < 1:
        return ["period must be positive"]
    if g < 0:
        out.append("genus must be nonnegative")
    if len(d) != m:
        return out + [f"expected {m} discrepancy degrees, got {len(d)}"]
    if d[0] != 0:
        out.append("zero class missing: disc_deg[0] must be 0")
    if any(x == 0 for x in d[1:]):
        out.append("degree-0 discrepancy is not unique")
    if any(x < 0 or x > 2 * g for x in d):
        out.append("discrepancy degree outside [0, 2g]")
    tops = [r for r in range(m) if d[r] == 2 * g]
    if len(tops) != 1:
        out.append(f"expected exactly one discrepancy of degree 2g, found {len(tops)}")
    else:
        rk = tops[0]
        bad = [r for r in range(m) if d[r] + d[(rk - r) % m] != 2 * g]
        if bad:
            out.append(f"pairing d + d* = 2g fails at residues {bad}")
    if sorted((x - r) % m for r, x in enumerate(d)) != list(range(m)):
        out.append("Q-residues of the discrepancies are not a permutation")
    if not out:
        # genus consistency: dim L = g at every class of degree 2g-1
        probe = TwoPointCurve.unchecked(g, m, d)
        dims = probe.dim_array(np.full(m, 2 * g - 1), np.arange(m))
        if not np.all(dims == g):
            out.append("Riemann-Roch fails in degree 2g-1; genus inconsistent with profile")
    return out


# -- builtin families ----------------------------------------------------

def _prime_power(n: int) -> bool:
    if n < 2:
        return False
    p = next(p for p in range(2, n + 1) if n % p == 0)
    while n % p == 0:
        n //= p
    return n == 1


def hermitian_profile(q: int) -> TwoPointCurve:
    """Profile of ``y^q + y = x^(q+1)`` with P, Q the points at infinity and origin."""
    if not _prime_power(q):
        raise ValueError(f"q must be a prime power >= 2, got {q}")
    m = q + 1
    disc = [0] * m
    for d in range(q + 1):
        disc[(-d) % m] = d * (q - 1)
    return TwoPointCurve(q * (q - 1) // 2, m, disc, f"hermitian:{q}")


def suzuki_profile(q0: int) -> TwoPointCurve:
    if q0 < 2 or q0 & (q0 - 1):
        raise ValueError(f"q0 must be a power of two >= 2, got {q0}")
    q = 2 * q0 * q0
    m = q + 2 * q0 + 1
    disc = [None] * m
    for a in range(-q0, q0 + 1):
        rest = q0 - abs(a)
        for b in range(-rest, rest + 1):
            k = (a * (q0 + 1) + b * q0 - q0 * (q0 + 1)) % m
            assert disc[k] is None
            disc[k] = (q0 - a) * (q - 1)
    return TwoPointCurve(q0 * (q - 1), m, disc, f"suzuki:{q0}")


def load_profile(path: Union[str, Path]) -> TwoPointCurve:
    fields: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        if key in ("genus", "period"):
            fields[key] = int(rest)
        elif key == "disc":
            fields["disc"] = [int(x) for x in rest.split()]
        elif key == "label":
            fields["label"] = rest
        else:
            raise ProfileError(f"line {lineno}: unknown key {key!r}")
    missing = {"genus", "period", "disc"} - fields.keys()
    if missing:
        raise ProfileError(f"missing keys: {sorted(missing)}")
    return TwoPointCurve(fields["genus"], fields["period"], fields["disc"],
                         fields.get("label", str(path)))


def dump_profile(curve: TwoPointCurve) -> str:
    lines = [f"label {curve.label}"] if curve.label else []
    lines += [f"genus {curve.genus}", f"period {curve.period}",
              "disc " + " ".join(map(str, curve.disc_deg))]
    return "\n".join(lines) + "\n"


def curve_from_name(name: str) -> TwoPointCurve:
    """Parse ``hermitian:q``, ``suzuki:q0`` or ``file:path``."""
    kind, _, arg = name.partition(":")
    if kind == "hermitian":
        return hermitian_profile(int(arg))
    if kind == "suzuki":
        return suzuki_profile(int(arg))
    if kind == "file":
        return load_profile(arg)
    raise ValueError(f"unknown curve {name!r}")


@dataclass(frozen=True)
class NumericalSemigroup:
    gaps: frozenset

    def __post_init__(self):
        gaps = frozenset(int(x) for x in self.gaps)
        object.__setattr__(self, "gaps", gaps)
        if any(x <= 0 for x in gaps):
            raise ValueError("gaps must be positive")
        for a in range(1, max(gaps, default=0) + 1):
            for b in range(a, max(gaps, default=0) + 1 - a):
                if a not in gaps and b not in gaps and a + b in gaps:
                    raise ValueError("nongaps are not closed under addition")

    @classmethod
    def generated_by(cls, gens: Iterable[int]) -> "NumericalSemigroup":
        gens = sorted(set(gens))
        limit = gens[0] * gens[-1] + 1
        reach = [False] * (limit + 1)
        reach[0] = True
        for n in range(1, limit + 1):
            reach[n] = any(n >= s and reach[n - s] for s in gens)
        return cls(frozenset(n for n in range(1, limit + 1) if not reach[n]))

    @property
    def genus(self) -> int:
        return len(self.gaps)

    def __contains__(self, n: int) -> bool:
        return n >= 0 and n not in self.gaps
