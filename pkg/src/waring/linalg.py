"""Matrix rank, kernel, and solve primitives over dual-mode scalars.

Exact matrices go through Gauss-Jordan elimination over the Gaussian
rationals and return canonical reduced echelon data, so kernels are
deterministic.  Float matrices go through numpy's SVD with the relative
tolerance convention ``sigma > eps * sigma_max * max(rows, cols)``.

A separate fast path computes ranks of integer matrices modulo two fixed
31-bit primes with an agreement check; products of two reduced entries stay
below 2^62, so the elimination runs entirely in int64.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import InternalConsistencyError, ScalarModeError
from .scalars import EXACT, FLOAT, Scalar, as_scalar, one, zero

NUM_RANK_EPS = 1e-10
DUAL_PRIMES = (2147483647, 2147483629)


class ScalarMatrix:
    __slots__ = ("rows", "cols", "entries", "mode")

    def __init__(self, entries, mode=None):
        self.entries = [list(row) for row in entries]
        self.rows = len(self.entries)
        self.cols = len(self.entries[0]) if self.rows else 0
        for row in self.entries:
            if len(row) != self.cols:
                raise ValueError("ragged matrix")
        if mode is None:
            mode = next(
                (s.mode for row in self.entries for s in row if isinstance(s, Scalar)),
                None,
            )
            if mode is None:
                raise ValueError("matrix without scalar entries needs an explicit mode")
        self.mode = mode
        for row in self.entries:
            for j, s in enumerate(row):
                if isinstance(s, Scalar):
                    if s.mode != mode:
                        raise ScalarModeError("mixed scalar modes inside one matrix")
                else:
                    row[j] = as_scalar(s, mode)

    @staticmethod
    def identity(n: int, mode: str) -> "ScalarMatrix":
        return ScalarMatrix(
            [[one(mode) if i == j else zero(mode) for j in range(n)] for i in range(n)],
            mode,
        )

    def shape(self):
        return (self.rows, self.cols)

    def transpose(self) -> "ScalarMatrix":
        return ScalarMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.mode,
        )

    def to_numpy(self) -> np.ndarray:
        return np.array(
            [[s.to_complex() for s in row] for row in self.entries], dtype=complex
        )

    def promote(self) -> "ScalarMatrix":
        if self.mode == FLOAT:
            return self
        return ScalarMatrix(
            [[s.promote() for s in row] for row in self.entries], FLOAT
        )

    # -- exact elimination ---------------------------------------------------

    def _rref(self, augment=None):
        """Gauss-Jordan over Q(i).  Returns (matrix rows, pivot columns, aug rows).

        Pivot choice: first row with a nonzero entry in the leftmost unsettled
        column, which makes the output canonical for a given input.
        """
        if self.mode != EXACT:
            raise ScalarModeError("_rref is exact-mode only")
        m = [row[:] for row in self.entries]
        aug = [row[:] for row in augment] if augment is not None else None
        pivots = []
        r = 0
        for c in range(self.cols):
            pivot_row = None
            for i in range(r, self.rows):
                if not m[i][c].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                continue
            m[r], m[pivot_row] = m[pivot_row], m[r]
            if aug is not None:
                aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
            inv = m[r][c].inverse()
            m[r] = [s * inv for s in m[r]]
            if aug is not None:
                aug[r] = [s * inv for s in aug[r]]
            for i in range(self.rows):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
                    if aug is not None:
                        aug[i] = [a - f * b for a, b in zip(aug[i], aug[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return m, pivots, aug

    # -- rank / kernel / solve ------------------------------------------------

    def rank(self, eps: float = NUM_RANK_EPS) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        if self.mode == EXACT:
            return len(self._rref()[1])
        return num_rank(self.to_numpy(), eps)

    def kernel_basis(self, eps: float = NUM_RANK_EPS):
        """Right kernel basis as lists of Scalars.

        Exact mode returns the canonical basis read off the RREF (one vector
        per free column, unit entry at the free column).  Float mode returns
        orthonormal trailing right-singular vectors.
        """
        if self.cols == 0:
            return []
        if self.rows == 0:
            return [
                [one(self.mode) if j == f else zero(self.mode) for j in range(self.cols)]
                for f in range(self.cols)
            ]
        if self.mode == EXACT:
            m, pivots, _ = self._rref()
            pivset = set(pivots)
            basis = []
            for f in range(self.cols):
                if f in pivset:
                    continue
                v = [zero(EXACT) for _ in range(self.cols)]
                v[f] = one(EXACT)
                for r, c in enumerate(pivots):
                    v[c] = -m[r][f]
                basis.append(v)
            return basis
        vecs = num_kernel(self.to_numpy(), eps)
        return [[Scalar.approx(x) for x in v] for v in vecs]

    def solve(self, rhs, eps: float = NUM_RANK_EPS):
        """One solution of ``self @ x = rhs`` or None if inconsistent.

        Free variables are set to zero, so the answer is deterministic.  In
        float mode a least-squares solution is returned only when its
        residual is below ``eps``-scaled norms.
        """
        if len(rhs) != self.rows:
            raise ValueError("rhs length mismatch")
        if self.mode == EXACT:
            m, pivots, aug = self._rref(augment=[[s] for s in rhs])
            x = [zero(EXACT) for _ in range(self.cols)]
            for r, c in enumerate(pivots):
                x[c] = aug[r][0]
            for r in range(len(pivots), self.rows):
                if not aug[r][0].is_zero():
                    return None
            # the RREF rows above pivot count are zero, but the pivot rows
            # may still involve free columns; with free vars at zero the
            # assignment above already solves the system.
            return x
        a = self.to_numpy()
        b = np.array([s.to_complex() for s in rhs], dtype=complex)
        x, *_ = np.linalg.lstsq(a, b, rcond=None)
        resid = np.linalg.norm(a @ x - b)
        scale = max(1.0, np.linalg.norm(a) * max(1.0, np.linalg.norm(x)))
        if resid > 1e-8 * scale:
            return None
        return [Scalar.approx(v) for v in x]

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return one(self.mode)
        if self.mode == FLOAT:
            return Scalar.approx(complex(np.linalg.det(self.to_numpy())))
        m = [row[:] for row in self.entries]
        det = one(EXACT)
        for c in range(n):
            pivot_row = None
            for i in range(c, n):
                if not m[i][c].is_zero():
                    pivot_row = i
                    break
            if pivot_row is None:
                return zero(EXACT)
            if pivot_row != c:
                m[c], m[pivot_row] = m[pivot_row], m[c]
                det = -det
            det = det * m[c][c]
            inv = m[c][c].inverse()
            for i in range(c + 1, n):
                if not m[i][c].is_zero():
                    f = m[i][c] * inv
                    m[i] = [a - f * b for a, b in zip(m[i], m[c])]
        return det


# -- float primitives ----------------------------------------------------------


def num_rank(a: np.ndarray, eps: float = NUM_RANK_EPS) -> int:
    """Singular values above ``eps * sigma_max * max(shape)``."""
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > eps * s[0] * max(a.shape)))


def num_kernel(a: np.ndarray, eps: float = NUM_RANK_EPS):
    """Orthonormal basis of the right kernel (list of 1-d complex arrays)."""
    if a.size == 0:
        n = a.shape[1] if a.ndim == 2 else 0
        return [np.eye(n, dtype=complex)[i] for i in range(n)]
    _, s, vh = np.linalg.svd(a)
    cutoff = eps * (s[0] if s.size else 0.0) * max(a.shape)
    r = int(np.sum(s > cutoff)) if s.size else 0
    return [vh[i].conj() for i in range(r, a.shape[1])]


# -- integer mod-p primitives ---------------------------------------------------


def _rank_mod(matrix: np.ndarray, p: int) -> int:
    a = np.mod(matrix.astype(object), p).astype(np.int64)
    m, n = a.shape
    r = 0
    for c in range(n):
        pivot = None
        for i in range(r, m):
            if a[i, c]:
                pivot = i
                break
        if pivot is None:
            continue
        if pivot != r:
            a[[r, pivot]] = a[[pivot, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        col = a[r + 1 :, c].copy()
        if col.size:
            a[r + 1 :] = (a[r + 1 :] - np.outer(col, a[r])) % p
        r += 1
        if r == m:
            break
    return r


def rank_int_mod_primes(matrix, primes=DUAL_PRIMES) -> int:
    """Rank of an integer matrix via two independent primes.

    Each prime gives a lower bound on the rational rank; agreement of two
    31-bit primes is accepted as the rank.  Disagreement raises
    InternalConsistencyError (retry with other primes would be the fix).
    """
    a = np.array(matrix, dtype=object)
    if a.size == 0:
        return 0
    ranks = [_rank_mod(a, p) for p in primes]
    if len(set(ranks)) != 1:
        raise InternalConsistencyError(
            "modular ranks disagree across primes: %r" % (ranks,)
        )
    return ranks[0]


def int_kernel_basis(rows):
    """Canonical rational kernel basis of an integer matrix.

    Fraction-free forward elimination keeps every intermediate entry an
    integer (each is a minor of the input, so the division by the previous
    pivot is exact) and selects the same pivot columns as Gauss-Jordan over
    Q.  Back-substitution then reproduces exactly the basis
    ``ScalarMatrix.kernel_basis`` returns in exact mode: reduced echelon form
    is unique, and the canonical kernel vectors are read off it.
    """
    m = [list(row) for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    prev = 1
    r = 0
    for c in range(nc):
        piv = None
        for i in range(r, nr):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        for i in range(r + 1, nr):
            fi = m[i][c]
            mi, mr = m[i], m[r]
            for j in range(nc):
                q, rem = divmod(lead * mi[j] - fi * mr[j], prev)
                if rem:
                    raise InternalConsistencyError("inexact fraction-free step")
                mi[j] = q
        prev = lead
        pivots.append(c)
        r += 1
        if r == nr:
            break
    pivset = set(pivots)
    basis = []
    for fcol in range(nc):
        if fcol in pivset:
            continue
        v = [Fraction(0)] * nc
        v[fcol] = Fraction(1)
        for k in range(len(pivots) - 1, -1, -1):
            pc = pivots[k]
            row = m[k]
            s = Fraction(0)
            for j in range(pc + 1, nc):
                if v[j]:
                    s += v[j] * row[j]
            v[pc] = -s / row[pc]
        basis.append(v)
    return basis
