"""Linear codes over small fields and exact distance oracles."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

import numpy as np

from .field import GF, field as get_field, nullspace, rank, rref

ENUM_BUDGET = 10 ** 8
RANK_BUDGET = 10 ** 7


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True, eq=False)
class LinearCode:
    F: GF
    generator: np.ndarray
    n: int
    label: dict = field(default_factory=dict)

    @classmethod
    def from_rows(cls, F: GF, rows, n: int, label: Optional[dict] = None) -> "LinearCode":
        rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
        R, _ = rref(F, rows) if len(rows) else (rows, [])
        return cls(F, R, n, dict(label or {}))

    @property
    def k(self) -> int:
        return self.generator.shape[0]

    def dual(self) -> "LinearCode":
        return LinearCode.from_rows(self.F, nullspace(self.F, self.generator, self.n), self.n,
                                    {**self.label, "dual": not self.label.get("dual", False)})

    def contains(self, v) -> bool:
        v = np.asarray(v, dtype=np.int64)
        return rank(self.F, np.vstack([self.generator, v[None, :]])) == self.k

    def contains_code(self, other: "LinearCode") -> bool:
        return rank(self.F, np.vstack([self.generator, other.generator])) == self.k

    def __eq__(self, other) -> bool:
        return (isinstance(other, LinearCode) and other.n == self.n and other.k == self.k
                and self.contains_code(other))

    def __hash__(self) -> int:
        return hash((self.n, self.k))

    def encode(self, msg) -> np.ndarray:
        msg = np.asarray(msg, dtype=np.int64)
        if self.k == 0:
            return np.zeros(self.n, dtype=np.int64)
        return self.F.sum(self.F.mul_t[msg[:, None], self.generator], axis=0)

    def random_word(self, rng: np.random.Generator) -> np.ndarray:
        return self.encode(rng.integers(0, self.F.order, self.k))

    def codewords(self) -> np.ndarray:
        return span_words(self.F, self.generator, self.n)

    def to_json(self) -> dict:
        return {"field": self.F.order, "n": self.n, "k": self.k,
                "generator": self.generator.tolist(), "label": self.label}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data: dict) -> "LinearCode":
        F = get_field(int(data["field"]))
        return cls.from_rows(F, data["generator"], int(data["n"]), data.get("label"))


def span_words(F: GF, rows, n: int) -> np.ndarray:
    """All linear combinations of ``rows`` (exponential; callers check budgets)."""
    rows = np.asarray(rows, dtype=np.int64).reshape(-1, n)
    if F.order ** len(rows) * n > ENUM_BUDGET:
        raise BudgetExceeded(f"{F.order}^{len(rows)} words of length {n}")
    words = np.zeros((1, n), dtype=np.int64)
    for row in rows:
        scaled = F.mul_t[np.arange(F.order)[:, None], row[None, :]]
        words = F.add_t[words[None, :, :], scaled[:, None, :]].reshape(-1, n)
    return words


def dual(code: LinearCode) -> LinearCode:
    return code.dual()


def complement_rows(F: GF, code: LinearCode, sub: LinearCode) -> np.ndarray:
    """Rows of ``code`` extending a basis of ``sub`` to a basis of ``code``."""
    if not code.contains_code(sub):
        raise ValueError("subcode is not contained in code")
    basis = sub.generator.copy()
    extra = []
    for row in code.generator:
        trial = np.vstack([basis, row[None, :]]) if len(basis) else row[None, :]
        if rank(F, trial) > len(basis):
            basis = trial
            extra.append(row)
    return np.array(extra, dtype=np.int64).reshape(-1, code.n)


def _weights(words: np.ndarray) -> np.ndarray:
    return np.count_nonzero(words, axis=1)


def coset_distance(code: LinearCode, sub: LinearCode, strategy: str = "auto") -> int:
    """``min{wt(x) : x in code, x not in sub}``."""
    if strategy == "auto":
        F = code.F
        strategy = "enumerate" if F.order ** code.k * code.n <= ENUM_BUDGET // 10 else "support"
    if strategy == "enumerate":
        return _coset_distance_enum(code, sub)
    if strategy == "support":
        return _coset_distance_support(code, sub)
    raise ValueError(f"unknown strategy {strategy!r}")


def min_distance(code: LinearCode, strategy: str = "auto") -> int:
    if code.k == 0:
        raise ValueError("zero code has no minimum distance")
    zero = LinearCode.from_rows(code.F, np.zeros((0, code.n)), code.n)
    return coset_distance(code, zero, strategy)


def _coset_distance_enum(code: LinearCode, sub: LinearCode) -> int:
    F = code.F
    ext = complement_rows(F, code, sub)
    if len(ext) == 0:
        raise ValueError("trivial extension")
    sub_words = span_words(F, sub.generator, code.n)
    ext_words = span_words(F, ext, code.n)[1:]
    if len(sub_words) * len(ext_words) * code.n > ENUM_BUDGET:
        raise BudgetExceeded("coset enumeration exceeds budget")
    best = code.n
    for e in ext_words:
        best = min(best, int(_weights(F.add_t[sub_words, e[None, :]]).min()))
    return best


def _rank_cols(F: GF, G: np.ndarray, cols) -> int:
    if G.shape[0] == 0 or len(cols) == 0:
        return 0
    return rank(F, G[:, list(cols)])


def support_gain(code: LinearCode, sub: LinearCode, A) -> int:
    """``dim(code ∩ E_A) - dim(sub ∩ E_A)`` where ``E_A`` = words supported on ``A``."""
    F = code.F
    rest = [i for i in range(code.n) if i not in set(A)]
    dc = code.k - _rank_cols(F, code.generator, rest)
    ds = sub.k - _rank_cols(F, sub.generator, rest)
    return dc - ds


def _coset_distance_support(code: LinearCode, sub: LinearCode) -> int:
    if code.k == sub.k:
        raise ValueError("trivial extension")
    n = code.n
    spent = 0
    for w in range(1, n + 1):
        spent += comb(n, w)
        if spent > RANK_BUDGET:
            raise BudgetExceeded("support search exceeds budget")
        for A in combinations(range(n), w):
            if support_gain(code, sub, A) > 0:
                return w
    raise AssertionError("unreachable: full support always qualifies")
