"""Exact dense linear algebra over Z, Q and F_p.

Dense storage, fraction-free elimination, arbitrary-precision scalars; every
result is exact.  Matrices at desk scale top out at a few thousand rows, so
correctness and simplicity win over asymptotics throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _fastint
from ._fastint import IntRowLattice, hnf_of_rows, mat_mul, mat_pow_mod, right_kernel
from ._primes import is_prime
from .errors import CommutativityError, InvalidRingError, NonSquareError

RING_ZZ = "ZZ"
RING_QQ = "QQ"
RING_GF = "GF"


class ExactMatrix:
    """Dense matrix with exact entries: Python ints over ZZ and GF(p),
    Fractions (lowest terms, positive denominator) over QQ."""

    __slots__ = ("rows", "cols", "ring", "modulus", "data")

    def __init__(self, rows, cols, ring, data, modulus=None):
        if ring not in (RING_ZZ, RING_QQ, RING_GF):
            raise InvalidRingError(f"unknown ring tag {ring!r}")
        if ring == RING_GF:
            if modulus is None or not is_prime(modulus):
                raise InvalidRingError("GF ring needs a prime modulus")
        elif modulus is not None:
            raise InvalidRingError("modulus only makes sense over GF")
        if len(data) != rows * cols:
            raise ValueError("entry count != rows*cols")
        self.rows = rows
        self.cols = cols
        self.ring = ring
        self.modulus = modulus
        if ring == RING_QQ:
            self.data = tuple(Fraction(x) for x in data)
        elif ring == RING_GF:
            self.data = tuple(int(x) % modulus for x in data)
        else:
            self.data = tuple(int(x) for x in data)

    @classmethod
    def from_rows(cls, rowlist, ring=RING_ZZ, modulus=None) -> "ExactMatrix":
        r = len(rowlist)
        c = len(rowlist[0]) if r else 0
        flat = [x for row in rowlist for x in row]
        return cls(r, c, ring, flat, modulus)

    @classmethod
    def identity(cls, n, ring=RING_ZZ, modulus=None) -> "ExactMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)], ring, modulus
        )

    @classmethod
    def zeros(cls, r, c, ring=RING_ZZ, modulus=None) -> "ExactMatrix":
        return cls(r, c, ring, [0] * (r * c), modulus)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i * self.cols + j]

    def row(self, i) -> list:
        return list(self.data[i * self.cols : (i + 1) * self.cols])

    def tolist(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.ring == other.ring
            and self.modulus == other.modulus
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.ring, self.modulus, self.rows, self.cols, self.data))

    def __repr__(self):
        tag = self.ring if self.ring != RING_GF else f"GF({self.modulus})"
        return f"ExactMatrix({self.rows}x{self.cols} over {tag})"

    def __matmul__(self, other) -> "ExactMatrix":
        if self.ring != other.ring or self.modulus != other.modulus:
            raise InvalidRingError("ring mismatch in product")
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        if self.ring == RING_QQ:
            a = self.tolist()
            b = other.tolist()
            out = [
                [sum(a[i][t] * b[t][j] for t in range(self.cols)) for j in range(other.cols)]
                for i in range(self.rows)
            ]
            return ExactMatrix.from_rows(out, RING_QQ) if out else ExactMatrix.zeros(self.rows, other.cols, RING_QQ)
        prod = mat_mul(self.tolist(), other.tolist())
        if self.ring == RING_GF:
            prod = [[x % self.modulus for x in row] for row in prod]
        return ExactMatrix.from_rows(prod, self.ring, self.modulus) if prod else ExactMatrix.zeros(self.rows, other.cols, self.ring, self.modulus)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_rows(
            [[self[i, j] for i in range(self.rows)] for j in range(self.cols)],
            self.ring,
            self.modulus,
        )


@dataclass(frozen=True)
class SmithNormalFormResult:
    """Invariant factors d1 | d2 | ... | dr, then zeros for the free part."""

    invariant_factors: tuple[int, ...]

    def cokernel_order(self):
        """|coker| when finite, None when a zero factor makes it infinite."""
        out = 1
        for d in self.invariant_factors:
            if d == 0:
                return None
            out *= d
        return out


def _require_gf(M: ExactMatrix):
    if M.ring != RING_GF:
        raise InvalidRingError("operation requires an F_p matrix")
    if not is_prime(M.modulus):
        raise InvalidRingError("modulus is not prime")


def rref_fp(M: ExactMatrix):
    """Reduced row echelon form over F_p: (R, pivots, rank)."""
    _require_gf(M)
    rows, pivots = _fastint.rref_mod_p(M.tolist(), M.modulus)
    R = ExactMatrix.from_rows(rows, RING_GF, M.modulus) if M.rows else ExactMatrix.zeros(0, M.cols, RING_GF, M.modulus)
    return R, tuple(pivots), len(pivots)


def kernel_fp(M: ExactMatrix) -> list[tuple[int, ...]]:
    """Basis of the right null space of M over F_p."""
    _require_gf(M)
    return [tuple(v) for v in _fastint.kernel_mod_p(M.tolist(), M.modulus)]


def generalized_kernel(M: ExactMatrix, N: int) -> list[tuple[int, ...]]:
    """Basis of ker(M^N) over F_p; equals the stable kernel once N >= dim."""
    _require_gf(M)
    if M.rows != M.cols:
        raise NonSquareError("generalized_kernel needs a square matrix")
    if N < 0:
        raise ValueError("N must be nonnegative")
    power = mat_pow_mod(M.tolist(), N, M.modulus) if M.rows else []
    return [tuple(v) for v in _fastint.kernel_mod_p(power, M.modulus)] if M.rows else []


def hnf(M: ExactMatrix) -> ExactMatrix:
    """Row Hermite normal form, zero rows trimmed off the bottom kept to
    preserve the shape contract: same column count, one row per basis vector
    plus zero rows so the row count matches the input."""
    if M.ring != RING_ZZ:
        raise InvalidRingError("hnf is defined over ZZ")
    basis = hnf_of_rows(M.tolist(), M.cols)
    out = basis + [[0] * M.cols for _ in range(M.rows - len(basis))]
    return ExactMatrix.from_rows(out, RING_ZZ) if out else ExactMatrix.zeros(0, M.cols, RING_ZZ)


def hnf_basis(M: ExactMatrix) -> ExactMatrix:
    """As hnf() but returning only the nonzero rows."""
    if M.ring != RING_ZZ:
        raise InvalidRingError("hnf is defined over ZZ")
    basis = hnf_of_rows(M.tolist(), M.cols)
    return ExactMatrix.from_rows(basis, RING_ZZ) if basis else ExactMatrix.zeros(0, M.cols, RING_ZZ)


def lattice_contains(H: ExactMatrix, vec) -> bool:
    """Membership of vec in the row lattice presented by H (any spanning set)."""
    lat = IntRowLattice(H.cols)
    for row in H.tolist():
        lat.add(row)
    return lat.contains(list(vec))


def _snf_invariants(rows) -> list[int]:
    """Invariant factors by fraction-free elimination with least-absolute-value
    pivoting; standard divisibility fix-up afterwards."""
    A = [list(r) for r in rows]
    m = len(A)
    n = len(A[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # locate a least-absolute-value nonzero pivot in the trailing block
        best = None
        for i in range(t, m):
            Ai = A[i]
            for j in range(t, n):
                x = Ai[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
                        if ax == 1:
                            break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, bi, bj = best
        A[t], A[bi] = A[bi], A[t]
        for row in A:
            row[t], row[bj] = row[bj], row[t]
        while True:
            # clear column t
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // A[t][t]
                    if q:
                        At = A[t]
                        A[i] = [x - q * y for x, y in zip(A[i], At)]
                    if A[i][t]:
                        A[t], A[i] = A[i], A[t]
            if any(A[i][t] for i in range(t + 1, m)):
                continue
            # clear row t
            changed = False
            for j in range(t + 1, n):
                if A[t][j]:
                    q = A[t][j] // A[t][t]
                    if q:
                        for row in A:
                            row[j] -= q * row[t]
                    if A[t][j]:
                        for row in A:
                            row[t], row[j] = row[j], row[t]
                        changed = True
            if not changed and not any(A[i][t] for i in range(t + 1, m)):
                break
        # divisibility fix-up: pivot must divide the whole trailing block
        a = A[t][t]
        fix = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if A[i][j] % a:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            At, Af = A[t], A[fix]
            A[t] = [x + y for x, y in zip(At, Af)]
            continue
        diag.append(abs(a))
        t += 1
    diag += [0] * (min(m, n) - len(diag))
    return diag


def snf(M: ExactMatrix) -> SmithNormalFormResult:
    """Smith normal form invariant factors of an integer matrix."""
    if M.ring != RING_ZZ:
        raise InvalidRingError("snf is defined over ZZ")
    if M.rows == 0 or M.cols == 0:
        return SmithNormalFormResult(())
    return SmithNormalFormResult(tuple(_snf_invariants(M.tolist())))


class AlgebraClosure:
    """Z-module basis (HNF coordinates on flattened matrices) of the smallest
    multiplicatively closed Z-module containing 1 and the given commuting
    generators, together with its structure constants."""

    def __init__(self, dim, basis_mats, basis_vecs, lattice, mult_table):
        self.matrix_dim = dim
        self.basis_matrices = basis_mats
        self.basis_vectors = basis_vecs
        self._lattice = lattice
        self.mult_table = mult_table

    @property
    def rank(self) -> int:
        return len(self.basis_matrices)

    def express_matrix(self, mat_rows) -> list[int]:
        flat = [x for row in mat_rows for x in row]
        coeffs = self._lattice.express(flat)
        if coeffs is None:
            raise ValueError("matrix is not in the algebra lattice")
        return coeffs

    def multiply_coords(self, u, v) -> list[int]:
        r = self.rank
        out = [0] * r
        for i, ci in enumerate(u):
            if not ci:
                continue
            ti = self.mult_table[i]
            for j, cj in enumerate(v):
                if not cj:
                    continue
                c = ci * cj
                row = ti[j]
                for midx, coeff in enumerate(row):
                    if coeff:
                        out[midx] += c * coeff
        return out


def algebra_closure(generators: list[ExactMatrix]) -> AlgebraClosure:
    """Close {1} U generators under multiplication as a Z-module.

    Iterates `adjoin generator * basis element, re-echelonize` until the
    lattice stabilizes; termination is guaranteed because the ambient matrix
    algebra has finite Z-rank.  Raises CommutativityError when generators do
    not commute pairwise (that always signals an operator-construction bug
    upstream).
    """
    if not generators:
        raise ValueError("need at least one generator")
    d = generators[0].rows
    for g in generators:
        if g.ring != RING_ZZ:
            raise InvalidRingError("algebra_closure works over ZZ")
        if g.rows != g.cols or g.rows != d:
            raise NonSquareError("generators must be square of equal size")
    gen_rows = [g.tolist() for g in generators]
    for i in range(len(gen_rows)):
        for j in range(i + 1, len(gen_rows)):
            if mat_mul(gen_rows[i], gen_rows[j]) != mat_mul(gen_rows[j], gen_rows[i]):
                raise CommutativityError(f"generators {i} and {j} do not commute")

    lat = IntRowLattice(d * d)
    pending: list[list[list[int]]] = []

    def flat(mat):
        return [x for row in mat for x in row]

    ident = _fastint.identity_rows(d)
    members: list[list[list[int]]] = []
    for mat in [ident] + gen_rows:
        if lat.add(flat(mat)):
            members.append(mat)
            pending.append(mat)
    while pending:
        batch, pending = pending, []
        for g in gen_rows:
            for b in batch:
                prod = mat_mul(g, b)
                if lat.add(flat(prod)):
                    members.append(prod)
                    pending.append(prod)
        if pending:
            continue
        # lattice may have changed via gcd steps without new member matrices;
        # re-sweep every generator against every member until a fixed point.
        stable = False
        while not stable:
            stable = True
            for g in gen_rows:
                for b in members:
                    prod = mat_mul(g, b)
                    if lat.add(flat(prod)):
                        members.append(prod)
                        stable = False

    basis_vecs = lat.hnf_rows()
    r = len(basis_vecs)
    basis_mats = [
        ExactMatrix.from_rows([vec[i * d : (i + 1) * d] for i in range(d)], RING_ZZ)
        for vec in basis_vecs
    ]
    # rebuild the lattice on the HNF basis so express() coefficients refer to it
    hlat = IntRowLattice(d * d)
    for vec in basis_vecs:
        hlat.add(vec)
    table = []
    for i in range(r):
        bi = basis_mats[i].tolist()
        row_i = []
        for j in range(r):
            prod = mat_mul(bi, basis_mats[j].tolist())
            coeffs = hlat.express([x for row in prod for x in row])
            if coeffs is None:
                raise CommutativityError("closure lattice is not multiplicatively closed")
            row_i.append(tuple(coeffs))
        table.append(tuple(row_i))
    return AlgebraClosure(d, basis_mats, basis_vecs, hlat, tuple(table))
