"""Exact integer matrix/vector kernels.

Everything in this module computes exact arbitrary-precision integer results.
numpy is used purely as an engine: operands whose magnitudes provably fit are
run through int64 vector code, anything larger is split into base-2^24 limbs
(so no int64 product can overflow) or handled on dtype=object arrays.  The
dense-storage, fraction-free conventions of the linear algebra layer live on
top of these primitives.
"""

from __future__ import annotations

import numpy as np

LIMB_BITS = 24
LIMB_MASK = (1 << LIMB_BITS) - 1
# (2^24-1)^2 * inner_dim must stay below 2^63.
_MAX_INNER = 30000
_DIRECT_BOUND = 1 << 62
_INT64_SAFE = 1 << 60


def max_abs(rows) -> int:
    m = 0
    for row in rows:
        for x in row:
            ax = -x if x < 0 else x
            if ax > m:
                m = ax
    return m


def _limbify(obj_arr: np.ndarray, maxbits: int) -> list[np.ndarray]:
    """Split an object array of ints into int64 limb arrays, least
    significant first: arr == sum(limbs[i] << (24*i)).  Python's arithmetic
    right shift makes this exact for negative entries; the final limb keeps
    the (bounded) signed remainder."""
    nlimbs = maxbits // LIMB_BITS + 1
    limbs = []
    work = obj_arr
    for _ in range(nlimbs - 1):
        limbs.append((work & LIMB_MASK).astype(np.int64))
        work = work >> LIMB_BITS
    limbs.append(work.astype(np.int64))
    return limbs


def _matmul_limbs(A: list[list[int]], B: list[list[int]], amax: int, bmax: int):
    Aobj = np.array(A, dtype=object)
    Bobj = np.array(B, dtype=object)
    la = _limbify(Aobj, amax.bit_length() + 1)
    lb = _limbify(Bobj, bmax.bit_length() + 1)
    acc = None
    for i, Ai in enumerate(la):
        for j, Bj in enumerate(lb):
            part = (Ai @ Bj).astype(object) << (LIMB_BITS * (i + j))
            acc = part if acc is None else acc + part
    return acc.tolist()


def mat_mul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    """Exact product of integer matrices given as lists of rows."""
    m = len(A)
    n = len(A[0]) if m else 0
    kk = len(B[0]) if B else 0
    if m == 0 or kk == 0:
        return [[0] * kk for _ in range(m)]
    if n == 0:
        return [[0] * kk for _ in range(m)]
    if len(B) != n:
        raise ValueError("inner dimensions disagree")
    amax = max_abs(A)
    bmax = max_abs(B)
    if amax == 0 or bmax == 0:
        return [[0] * kk for _ in range(m)]
    if amax * bmax * n < _DIRECT_BOUND:
        out = np.array(A, dtype=np.int64) @ np.array(B, dtype=np.int64)
        return out.tolist()
    if n > _MAX_INNER:
        # Outside the envelope this package ever reaches; stay correct anyway.
        return [[sum(a * b for a, b in zip(ra, cb)) for cb in zip(*B)] for ra in A]
    return _matmul_limbs(A, B, amax, bmax)


def mat_mul_mod(A, B, modulus: int) -> list[list[int]]:
    """(A @ B) mod modulus with entries normalized into [0, modulus)."""
    Ar = [[x % modulus for x in row] for row in A]
    Br = [[x % modulus for x in row] for row in B]
    prod = mat_mul(Ar, Br)
    return [[x % modulus for x in row] for row in prod]


def identity_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_pow_mod(M, e: int, modulus: int) -> list[list[int]]:
    """M**e mod modulus by binary powering (exact exponent, e >= 0)."""
    n = len(M)
    result = identity_rows(n)
    base = [[x % modulus for x in row] for row in M]
    while e > 0:
        if e & 1:
            result = mat_mul_mod(result, base, modulus)
        e >>= 1
        if e:
            base = mat_mul_mod(base, base, modulus)
    return result


def rref_mod_p(M, p: int):
    """Reduced row echelon form over F_p.  Returns (rows, pivots)."""
    m = len(M)
    n = len(M[0]) if m else 0
    if m == 0 or n == 0:
        return [list(row) for row in M], []
    if p < (1 << 31):
        A = np.array(M, dtype=np.int64) % p
        pivots = []
        r = 0
        for c in range(n):
            if r >= m:
                break
            nz = np.nonzero(A[r:, c])[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                A[[r, pr]] = A[[pr, r]]
            inv = pow(int(A[r, c]), -1, p)
            A[r] = (A[r] * inv) % p
            col = A[:, c].copy()
            col[r] = 0
            A = (A - np.outer(col, A[r])) % p
            pivots.append(c)
            r += 1
        return A.tolist(), pivots
    # Arbitrary-precision fallback for huge moduli.
    A = [[x % p for x in row] for row in M]
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        pr = next((i for i in range(r, m) if A[i][c] % p), None)
        if pr is None:
            continue
        A[r], A[pr] = A[pr], A[r]
        inv = pow(A[r][c], -1, p)
        A[r] = [x * inv % p for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [(x - f * y) % p for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
    return A, pivots


def kernel_mod_p(M, p: int) -> list[list[int]]:
    """Basis of the right null space of M over F_p (vectors of length cols)."""
    m = len(M)
    n = len(M[0]) if m else 0
    R, pivots = rref_mod_p(M, p)
    pivset = set(pivots)
    free = [c for c in range(n) if c not in pivset]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = (-R[r][f]) % p
        basis.append(v)
    return basis


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class IntRowLattice:
    """A lattice in Z^n held as an echelonized list of integer rows.

    Rows live on numpy arrays, int64 while every entry provably fits and
    promoted to dtype=object beyond that, so all arithmetic stays exact.
    Insertion keeps one pivot per leading column via extended-gcd row
    combinations; `hnf()` finishes the reduction to the canonical Hermite
    form.
    """

    __slots__ = ("n", "rows", "pivcol", "maxes", "_bycol")

    def __init__(self, ncols: int):
        self.n = ncols
        self.rows: list[np.ndarray] = []
        self.pivcol: list[int] = []
        self.maxes: list[int] = []
        self._bycol: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def _wrap(self, vec) -> np.ndarray:
        m = 0
        for x in vec:
            ax = -x if x < 0 else x
            if ax > m:
                m = ax
        dtype = np.int64 if m < _INT64_SAFE else object
        return np.array(list(vec), dtype=dtype), m

    @staticmethod
    def _combine(a, va, b, vb, ma, mb):
        """a*va + b*vb with automatic promotion past int64 range."""
        bound = abs(a) * ma + abs(b) * mb
        if bound < _INT64_SAFE and va.dtype == np.int64 and vb.dtype == np.int64:
            out = a * va + b * vb
            return out, int(np.abs(out).max(initial=0))
        vao = va.astype(object) if va.dtype != object else va
        vbo = vb.astype(object) if vb.dtype != object else vb
        out = a * vao + b * vbo
        mo = int(max((abs(int(x)) for x in out.tolist()), default=0))
        if mo < _INT64_SAFE:
            out = out.astype(np.int64)
        return out, mo

    @staticmethod
    def _leading(vec: np.ndarray) -> int:
        nz = np.nonzero(vec)[0]
        return int(nz[0]) if nz.size else -1

    def add(self, vec) -> bool:
        """Insert vec into the lattice.  Returns True iff the lattice grew."""
        v, mv = self._wrap(vec)
        changed = False
        while True:
            j = self._leading(v)
            if j < 0:
                return changed
            ridx = self._bycol.get(j)
            if ridx is None:
                self._insert_row(j, v, mv)
                return True
            row = self.rows[ridx]
            a = int(row[j])
            b = int(v[j])
            if b % a == 0:
                v, mv = self._combine(1, v, -(b // a), row, mv, self.maxes[ridx])
                continue
            g, x, y = _xgcd(a, b)
            newrow, mr = self._combine(x, row, y, v, self.maxes[ridx], mv)
            v, mv = self._combine(a // g, v, -(b // g), row, mv, self.maxes[ridx])
            self.rows[ridx] = newrow
            self.maxes[ridx] = mr
            changed = True

    def _insert_row(self, j: int, v: np.ndarray, mv: int) -> None:
        pos = 0
        while pos < len(self.pivcol) and self.pivcol[pos] < j:
            pos += 1
        self.rows.insert(pos, v)
        self.pivcol.insert(pos, j)
        self.maxes.insert(pos, mv)
        self._bycol = {c: i for i, c in enumerate(self.pivcol)}

    def residual(self, vec) -> np.ndarray:
        """Reduce vec by divisibility-only steps; the result is zero exactly
        when vec lies in the lattice."""
        v, mv = self._wrap(vec)
        while True:
            j = self._leading(v)
            if j < 0:
                return v
            ridx = self._bycol.get(j)
            if ridx is None:
                return v
            a = int(self.rows[ridx][j])
            b = int(v[j])
            if b % a != 0:
                return v
            v, mv = self._combine(1, v, -(b // a), self.rows[ridx], mv, self.maxes[ridx])

    def contains(self, vec) -> bool:
        return self._leading(self.residual(vec)) < 0

    def express(self, vec):
        """Coefficients expressing vec over the current rows, or None.
        Call only after the insertion phase is finished."""
        v, mv = self._wrap(vec)
        coeffs = [0] * len(self.rows)
        while True:
            j = self._leading(v)
            if j < 0:
                return coeffs
            ridx = self._bycol.get(j)
            if ridx is None:
                return None
            a = int(self.rows[ridx][j])
            b = int(v[j])
            if b % a != 0:
                return None
            q = b // a
            coeffs[ridx] = q
            v, mv = self._combine(1, v, -q, self.rows[ridx], mv, self.maxes[ridx])

    def reduce_above(self) -> None:
        """Make every pivot positive and reduce entries above each pivot into
        [0, pivot): the Hermite normal form of the stored basis."""
        for i in range(len(self.rows)):
            if int(self.rows[i][self.pivcol[i]]) < 0:
                self.rows[i] = -self.rows[i]
        for i in range(len(self.rows) - 1, -1, -1):
            j = self.pivcol[i]
            a = int(self.rows[i][j])
            for e in range(i):
                b = int(self.rows[e][j])
                q = b // a  # floor division leaves a residue in [0, a)
                if q:
                    self.rows[e], self.maxes[e] = self._combine(
                        1, self.rows[e], -q, self.rows[i], self.maxes[e], self.maxes[i]
                    )

    def hnf_rows(self) -> list[list[int]]:
        self.reduce_above()
        return [[int(x) for x in row.tolist()] for row in self.rows]


def hnf_of_rows(rows, ncols: int) -> list[list[int]]:
    """Hermite normal form (nonzero rows only) of the lattice spanned by rows."""
    lat = IntRowLattice(ncols)
    for r in rows:
        lat.add(r)
    return lat.hnf_rows()


def right_kernel(rows, ncols: int) -> list[list[int]]:
    """Basis (HNF, saturated) of {x in Z^ncols : M @ x = 0} for the matrix M
    whose rows are `rows`."""
    m = len(rows)
    aug = IntRowLattice(m + ncols)
    for i in range(ncols):
        # i-th row of [M^T | I]
        vec = [rows[r][i] for r in range(m)] + [0] * ncols
        vec[m + i] = 1
        aug.add(vec)
    out = []
    for piv, row in zip(aug.pivcol, aug.rows):
        if piv >= m:
            out.append([int(x) for x in row.tolist()[m:]])
    return hnf_of_rows(out, ncols)


def lattice_preimage(C, Lrows, ncols: int) -> list[list[int]]:
    """Basis of {y in Z^m : y @ C in rowspan(Lrows)} where C is m x ncols."""
    m = len(C)
    aug = IntRowLattice(ncols + m)
    for i in range(m):
        aug.add(list(C[i]) + [1 if j == i else 0 for j in range(m)])
    for row in Lrows:
        aug.add(list(row) + [0] * m)
    out = []
    for piv, row in zip(aug.pivcol, aug.rows):
        if piv >= ncols:
            out.append([int(x) for x in row.tolist()[ncols:]])
    return hnf_of_rows(out, m)
