"""Access structures of the secret-sharing schemes attached to a codimension-one extension.

For an extension ``C ⊃ C1`` with dual extension ``D1 ⊃ D``, shares are words of
``D1`` and the secret is the coset of ``D``.  A coordinate set ``A`` is qualified
exactly when ``C ∩ E_A`` is strictly larger than ``C1 ∩ E_A``; this module
evaluates that rank criterion and, independently, the definition itself.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

import numpy as np

from .codes import LinearCode, span_words, support_gain

EXHAUSTIVE_MAX_N = 14


@dataclass
class AccessSummary:
    n: int
    qualified: np.ndarray                   # bool over subset bitmasks (-1 where not evaluated)
    max_size: int
    counts: dict = field(default_factory=dict)  # size -> (qualified, unqualified)

    @property
    def min_qualified(self) -> Optional[int]:
        sizes = [s for s, (qc, _) in self.counts.items() if qc]
        return min(sizes) if sizes else None

    @property
    def max_unqualified(self) -> Optional[int]:
        sizes = [s for s, (_, uc) in self.counts.items() if uc]
        return max(sizes) if sizes else None

    def to_json(self) -> dict:
        return {"n": self.n, "max_size": self.max_size,
                "min_qualified": self.min_qualified, "max_unqualified": self.max_unqualified,
                "counts": {str(s): {"qualified": q, "unqualified": u}
                           for s, (q, u) in sorted(self.counts.items())}}


def _check_codim_one(code: LinearCode, sub: LinearCode) -> None:
    if code.n != sub.n or not code.contains_code(sub) or code.k - sub.k != 1:
        raise ValueError("expected a codimension-one extension")


def _mask_to_set(mask: int, n: int) -> list[int]:
    return [i for i in range(n) if mask >> i & 1]


def access_structure(code: LinearCode, sub: LinearCode,
                     max_size: Optional[int] = None) -> AccessSummary:
    """Qualified sets for the scheme with shares in the dual extension of ``code/sub``.

    Uses the rank criterion ``dim(code ∩ E_A) > dim(sub ∩ E_A)``.
    """
    _check_codim_one(code, sub)
    n = code.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive subset enumeration needs n <= {EXHAUSTIVE_MAX_N}")
    max_size = n if max_size is None else max_size
    qual = np.full(1 << n, -1, dtype=np.int8)
    counts = {}
    for s in range(max_size + 1):
        qc = uc = 0
        for A in combinations(range(n), s):
            ok = support_gain(code, sub, A) > 0
            qual[sum(1 << i for i in A)] = ok
            qc += ok
            uc += not ok
        counts[s] = (qc, uc)
    return AccessSummary(n, qual, max_size, counts)


def brute_force_qualified(shares: LinearCode, secret_free: LinearCode) -> np.ndarray:
    """Qualified sets straight from the definition, as a bool array over bitmasks.

    ``A`` is unqualified iff two share vectors with different secrets agree on
    ``A``, i.e. iff some word of ``shares`` outside ``secret_free`` vanishes on ``A``.
    """
    _check_codim_one(shares, secret_free)
    n = shares.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive subset enumeration needs n <= {EXHAUSTIVE_MAX_N}")
    words = span_words(shares.F, shares.generator, n)
    H = secret_free.dual().generator
    F = shares.F
    synd = F.sum(F.mul_t[words[:, None, :], H[None, :, :]], axis=2) if len(H) else np.zeros((len(words), 0))
    outside = np.any(synd != 0, axis=1)
    zero_masks = ((words[outside] == 0) * (1 << np.arange(n))).sum(axis=1)
    unqual = np.zeros(1 << n, dtype=bool)
    unqual[np.unique(zero_masks)] = True
    # close downwards: subsets of a zero set are zero sets too
    for i in range(n):
        bit = 1 << i
        idx = np.arange(1 << n)
        has = (idx & bit) != 0
        unqual[idx[~has]] |= unqual[idx[~has] | bit]
    return ~unqual


def complement_mask(mask: int, n: int) -> int:
    return ((1 << n) - 1) ^ mask


def duality_check(code: LinearCode, sub: LinearCode) -> dict:
    """Compare the rank criterion and the definition on both sides of the duality.

    Returns a dict of booleans, one per set equality, plus the raw summaries.
    """
    _check_codim_one(code, sub)
    n = code.n
    dual_big, dual_small = sub.dual(), code.dual()      # D1 ⊃ D
    rank_side = access_structure(code, sub).qualified.astype(bool)
    defn_dual = brute_force_qualified(dual_big, dual_small)     # Gamma(D1/D)
    defn_primal = brute_force_qualified(code, sub)              # Gamma(C/C1)
    comp = np.array([complement_mask(a, n) for a in range(1 << n)])
    return {
        "gamma_dual": bool(np.array_equal(defn_dual, rank_side)),
        "delta_dual": bool(np.array_equal(~defn_dual, ~rank_side)),
        "gamma_primal": bool(np.array_equal(defn_primal, ~defn_dual[comp])),
        "delta_primal": bool(np.array_equal(~defn_primal, defn_dual[comp])),
        "qualified_dual": defn_dual,
        "qualified_primal": defn_primal,
    }


def size_extremes(qualified: np.ndarray, n: int) -> tuple[Optional[int], Optional[int]]:
    """``(min qualified size, max unqualified size)`` from a bitmask table."""
    sizes = np.array([bin(a).count("1") for a in range(1 << n)])
    q = sizes[qualified]
    u = sizes[~qualified]
    return (int(q.min()) if len(q) else None, int(u.max()) if len(u) else None)


def qualified_sets(summary: AccessSummary, size: int) -> list[list[int]]:
    n = summary.n
    return [_mask_to_set(a, n) for a in range(1 << n)
            if bin(a).count("1") == size and summary.qualified[a] == 1]
