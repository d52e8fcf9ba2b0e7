"""Small finite fields GF(p^k) with table arithmetic, plus vectorised helpers.

Elements are integers ``0 .. p^k - 1`` encoding polynomials over GF(p) in
base ``p`` (digit ``i`` is the coefficient of ``x^i``).
"""
from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

# fixed defining polynomials, coefficients from x^0 upwards (monic, top omitted)
_POLYS = {
    4: (1, 1),          # x^2 + x + 1
    8: (1, 1, 0),       # x^3 + x + 1
    9: (2, 1),          # x^2 + x + 2
    16: (1, 1, 0, 0),   # x^4 + x + 1
}


def _factor_prime_power(n: int) -> tuple[int, int]:
    if n < 2:
        raise ValueError(f"field order must be a prime power, got {n}")
    p = next(p for p in range(2, n + 1) if n % p == 0)
    k, r = 0, n
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise ValueError(f"field order must be a prime power, got {n}")
    return p, k


class GF:
    """Finite field of order ``p^k <= 256`` with log/antilog tables."""

    def __init__(self, order: int):
        p, k = _factor_prime_power(order)
        if order > 256:
            raise ValueError("field order above 256 not supported")
        self.order, self.p, self.k = order, p, k
        self.poly = _POLYS.get(order) if k > 1 else None
        if k > 1 and self.poly is None:
            self.poly = self._find_primitive()
        self.exp, self.log = self._tables(self.poly)
        q = order
        a = np.arange(q)
        digits = np.array([[(x // p ** i) % p for i in range(k)] for x in range(q)])
        weights = p ** np.arange(k)
        self.add_t = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg_t = ((-digits) % p) @ weights
        self.mul_t = np.zeros((q, q), dtype=np.int64)
        nz = a[1:]
        la = self.log[nz]
        self.mul_t[1:, 1:] = self.exp[(la[:, None] + la[None, :]) % (q - 1)]
        self.inv_t = np.zeros(q, dtype=np.int64)
        self.inv_t[1:] = self.exp[(-self.log[nz]) % (q - 1)]
        self._check_axioms()

    def _mulx(self, v: list[int], poly) -> list[int]:
        # multiply a coefficient vector by x modulo the defining polynomial
        top = v[-1]
        out = [0] + v[:-1]
        return [(out[i] - top * poly[i]) % self.p for i in range(self.k)]

    def _tables(self, poly):
        q, p, k = self.order, self.p, self.k
        exp = np.zeros(2 * q, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        if k == 1:
            g = next(g for g in range(1, p) if len({pow(g, i, p) for i in range(p - 1)}) == p - 1) if p > 2 else 1
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = x * g % p
        else:
            v = [1] + [0] * (k - 1)
            for i in range(q - 1):
                e = sum(c * p ** j for j, c in enumerate(v))
                if log[e] != -1:
                    raise ValueError("defining polynomial is not primitive")
                exp[i] = e
                log[e] = i
                v = self._mulx(v, poly)
        exp[q - 1:2 * (q - 1)] = exp[:q - 1]
        return exp, log

    def _find_primitive(self):
        for coeffs in product(range(self.p), repeat=self.k):
            if coeffs[0] == 0:
                continue
            try:
                self._tables(coeffs)
                return coeffs
            except ValueError:
                continue
        raise ValueError("no primitive polynomial found")

    def _check_axioms(self):
        q = self.order
        if not (np.all(self.add_t[0] == np.arange(q)) and np.all(self.mul_t[1] == np.arange(q))):
            raise ValueError("field tables broken")
        if not np.all(self.mul_t[np.arange(1, q), self.inv_t[1:]] == 1):
            raise ValueError("field inverses broken")

    # scalar helpers
    def add(self, a, b):
        return self.add_t[a, b]

    def sub(self, a, b):
        return self.add_t[a, self.neg_t[b]]

    def mul(self, a, b):
        return self.mul_t[a, b]

    def inv(self, a):
        if np.any(np.asarray(a) == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.inv_t[a]

    def div(self, a, b):
        return self.mul_t[a, self.inv(b)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("negative power of zero")
            return 1 if e == 0 else 0
        return int(self.exp[(int(self.log[a]) * e) % (self.order - 1)])

    def frobenius_fixed(self, r: int) -> list[int]:
        """Elements ``a`` with ``a^r = a``."""
        return [a for a in range(self.order) if self.pow(a, r) == a]

    # vectorised helpers
    def sum(self, arr, axis: int = -1) -> np.ndarray:
        arr = np.moveaxis(np.asarray(arr), axis, 0)
        out = np.zeros(arr.shape[1:], dtype=np.int64)
        for row in arr:
            out = self.add_t[out, row]
        return out

    def dot(self, u, v) -> int:
        return int(self.sum(self.mul_t[np.asarray(u), np.asarray(v)]))

    def matvec(self, M, v) -> np.ndarray:
        return self.sum(self.mul_t[np.asarray(M), np.asarray(v)[None, :]], axis=1)

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF) and other.order == self.order

    def __hash__(self) -> int:
        return hash(("GF", self.order))


@lru_cache(maxsize=None)
def field(order: int) -> GF:
    return GF(order)


# -- linear algebra ------------------------------------------------------------

def rref(F: GF, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns; zero rows are dropped."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2 or M.shape[0] == 0:
        return M.reshape(0, M.shape[-1] if M.ndim == 2 else 0), []
    rows, cols = M.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if len(nz) == 0:
            continue
        s = r + nz[0]
        if s != r:
            M[[r, s]] = M[[s, r]]
        M[r] = F.mul_t[F.inv_t[M[r, c]], M[r]]
        f = F.neg_t[M[:, c]]
        f[r] = 0
        M = F.add_t[M, F.mul_t[f[:, None], M[r][None, :]]]
        pivots.append(c)
        r += 1
        if not M[r:].any():
            break
    return M[:r], pivots


def rank(F: GF, M) -> int:
    M = np.asarray(M)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def nullspace(F: GF, M, n: int | None = None) -> np.ndarray:
    """Basis of ``{v : M v = 0}`` as rows."""
    M = np.asarray(M, dtype=np.int64)
    n = M.shape[1] if n is None else n
    if M.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in piv]
    out = np.zeros((len(free), n), dtype=np.int64)
    for t, f in enumerate(free):
        out[t, f] = 1
        for i, pc in enumerate(piv):
            out[t, pc] = F.neg_t[R[i, f]]
    return out


def solve(F: GF, A, b) -> np.ndarray | None:
    """A solution of ``A x = b`` with free variables set to zero, or ``None``."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    rows, cols = A.shape
    if cols == 0:
        return np.zeros(0, dtype=np.int64) if not np.any(b) else None
    if rows == 0:
        return np.zeros(cols, dtype=np.int64)
    R, piv = rref(F, np.concatenate([A, b[:, None]], axis=1))
    if cols in piv:
        return None
    x = np.zeros(cols, dtype=np.int64)
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols]
    return x
