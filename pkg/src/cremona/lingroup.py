"""Transvection words for SL_m, straight-line families in SL, and determinant classes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from . import linalg
from .errors import DeterminantNotOne, InvalidParameter, SizeMismatch
from .families import Family
from .fields import QQ, FieldDescriptor, FieldScalar, nth_power_class
from .maps import Point, ProjMatrix
from .polynomials import MultiPoly, divide_exact, poly_ring


def word_length_bound(m: int) -> int:
    """Uniform word length: m(m-1) clearing steps plus 4 factors per diagonal pair."""
    return m * (m - 1) + 4 * (m - 1)


@dataclass(frozen=True)
class Transvection:
    """I + lam * e_{i,j} of size m (1-based indices)."""

    size: int
    i: int
    j: int
    lam: object  # raw field value
    field: FieldDescriptor = QQ

    def __post_init__(self):
        if self.i == self.j or not (1 <= self.i <= self.size and 1 <= self.j <= self.size):
            raise InvalidParameter(f"bad transvection indices ({self.i}, {self.j})")

    def matrix(self):
        M = linalg.identity(self.field, self.size)
        M[self.i - 1][self.j - 1] = self.lam
        return M

    def inverse(self) -> "Transvection":
        return Transvection(self.size, self.i, self.j, self.field.neg(self.lam), self.field)

    def triple(self):
        return (self.i, self.j, FieldScalar(self.field, self.lam))

    def __str__(self):
        return f"({self.i},{self.j},{self.field.format(self.lam)})"


@dataclass(frozen=True)
class TransvectionWord:
    size: int
    factors: tuple
    field: FieldDescriptor = QQ

    def __len__(self):
        return len(self.factors)

    def product(self):
        """Left-to-right product of the factors."""
        M = linalg.identity(self.field, self.size)
        f = self.field
        for tv in self.factors:
            if tv.lam:
                # right multiplication by I + lam e_ij adds lam * column i to column j
                a, b = tv.i - 1, tv.j - 1
                for r in range(self.size):
                    if M[r][a]:
                        M[r][b] = f.add(M[r][b], f.mul(tv.lam, M[r][a]))
        return M

    def padded(self, length: int) -> "TransvectionWord":
        if len(self.factors) > length:
            raise InvalidParameter("word longer than the requested length")
        pad = Transvection(self.size, 1, 2, self.field.zero, self.field)
        return TransvectionWord(self.size, self.factors + (pad,) * (length - len(self.factors)), self.field)

    def inverse(self) -> "TransvectionWord":
        return TransvectionWord(self.size, tuple(tv.inverse() for tv in reversed(self.factors)), self.field)

    def triples(self):
        return [tv.triple() for tv in self.factors]

    def __str__(self):
        return "[" + ", ".join(str(tv) for tv in self.factors) + "]"

    def to_list(self):
        return [[tv.i, tv.j, tv.field.format(tv.lam)] for tv in self.factors]


def diagonal_block(size, i, j, mu, field: FieldDescriptor = QQ):
    """Four transvections whose product is diag(mu at i, 1/mu at j) (1-based)."""
    f = field
    inv = f.inv(mu)
    return (
        Transvection(size, i, j, f.sub(mu, f.one), f),
        Transvection(size, j, i, f.one, f),
        Transvection(size, i, j, f.sub(inv, f.one), f),
        Transvection(size, j, i, f.neg(mu), f),
    )


def _as_raw_matrix(M, field):
    if isinstance(M, ProjMatrix):
        return [list(r) for r in M.rows]
    return [[field.coerce(a) for a in r] for r in M]


def sl_decompose(M, field: FieldDescriptor = QQ) -> TransvectionWord:
    """Write a determinant-one matrix as a product of exactly L(m) transvections.

    Row operations clear the strict lower triangle column by column (one extra
    operation first makes a pivot equal to 1 when something below it is
    nonzero), then the strict upper triangle. The remaining diagonal is split
    into 2x2 blocks, pairing non-unit entries from the right.
    """
    if isinstance(M, ProjMatrix):
        field = M.field
    A = _as_raw_matrix(M, field)
    m = len(A)
    if m == 0 or any(len(r) != m for r in A):
        raise SizeMismatch("matrix must be square")
    if linalg.det(field, A) != field.one:
        raise DeterminantNotOne("determinant is not 1")
    f = field
    ops = []  # (i, j, c): row_i += c * row_j, 0-based

    def row_op(i, j, c):
        A[i] = [f.add(a, f.mul(c, b)) for a, b in zip(A[i], A[j])]
        ops.append((i, j, c))

    for c in range(m - 1):
        below = [r for r in range(c + 1, m) if A[r][c]]
        if not below:
            continue
        if A[c][c] != f.one:
            r = below[0]
            row_op(c, r, f.div(f.sub(f.one, A[c][c]), A[r][c]))
        for r in range(c + 1, m):
            if A[r][c]:
                row_op(r, c, f.neg(A[r][c]))
    for c in range(m - 1, 0, -1):
        inv = f.inv(A[c][c])
        for r in range(c):
            if A[r][c]:
                row_op(r, c, f.neg(f.mul(A[r][c], inv)))

    # ops_N ... ops_1 M = D, so M = ops_1^-1 ... ops_N^-1 D
    factors = [Transvection(m, i + 1, j + 1, f.neg(c), f) for i, j, c in ops]
    diag = [A[i][i] for i in range(m)]
    blocks = []
    while True:
        nonunit = [i for i in range(m) if diag[i] != f.one]
        if not nonunit:
            break
        j = nonunit[-1]
        i = nonunit[-2]
        mu = f.inv(diag[j])
        blocks.extend(diagonal_block(m, i + 1, j + 1, mu, f))
        diag[i] = f.mul(diag[i], diag[j])
        diag[j] = f.one
    word = TransvectionWord(m, tuple(factors + blocks), f)
    return word.padded(word_length_bound(m))


# determinant classes -------------------------------------------------------------


class DetClass(NamedTuple):
    witness: FieldScalar  # det of the canonical lift, a representative of the class
    in_psl: bool
    root: FieldScalar | None  # (n+1)-th root of the witness when in_psl


def det_class(P: ProjMatrix) -> DetClass:
    d = P.det()
    ok, root = nth_power_class(d, P.size)
    return DetClass(d, ok, root)


# families in SL -------------------------------------------------------------------


def _tpoly_ring(field):
    return poly_ring(field, 0, True)


def _word_t_matrix(word: TransvectionWord, ring, scale):
    """Product of I + (scale(t) * lam) e_ij as a matrix of t-polynomials."""
    m = word.size
    zero, one = ring.zero(), ring.one()
    M = [[one if r == c else zero for c in range(m)] for r in range(m)]
    for tv in word.factors:
        if not tv.lam:
            continue
        coeff = scale.scale(tv.lam)
        a, b = tv.i - 1, tv.j - 1
        for r in range(m):
            if M[r][a].terms:
                M[r][b] = M[r][b] + coeff * M[r][a]
    return M


def t_matrix_det(M):
    """Fraction-free (Bareiss) determinant of a matrix of polynomials."""
    A = [list(r) for r in M]
    m = len(A)
    ring = A[0][0].ring
    sign = 1
    prev = ring.one()
    for k in range(m - 1):
        if not A[k][k].terms:
            swap = next((r for r in range(k + 1, m) if A[r][k].terms), None)
            if swap is None:
                return ring.zero()
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                num = A[i][j] * A[k][k] - A[i][k] * A[k][j]
                A[i][j] = divide_exact(num, prev)
        prev = A[k][k]
    d = A[m - 1][m - 1]
    return d if sign > 0 else -d


def family_from_t_matrix(M, Minv, field) -> Family:
    m = len(M)
    ring = poly_ring(field, m, True)
    gens = ring.gens()

    def forms(rows):
        return [sum((e * x for e, x in zip(row, gens) if e.terms), ring.zero()) for row in rows]

    # entries live in the t-only ring; packed t-monomials coincide in both rings
    lift = lambda rows: [[MultiPoly(ring, dict(e.terms)) for e in row] for row in rows]
    return Family(forms(lift(M)), forms(lift(Minv)))


@dataclass(frozen=True)
class LinearPath:
    """A straight line in transvection-parameter space and the family it defines."""

    start_word: TransvectionWord
    end_word: TransvectionWord
    family: Family
    t_matrix: tuple


def psl_path(A, B, field: FieldDescriptor = QQ) -> LinearPath:
    """Linear family in SL with value A at t=0 and B at t=1.

    The parameters of the concatenated word W_A W_B move on the segment from
    (lambda_A, 0) to (0, lambda_B): nu(t) = W_A((1-t) lambda_A) W_B(t lambda_B).
    """
    if isinstance(A, ProjMatrix):
        field = A.field
    RA = _as_raw_matrix(A, field)
    RB = _as_raw_matrix(B, field)
    if len(RA) != len(RB):
        raise SizeMismatch("matrices of different sizes")
    wa = sl_decompose(RA, field)
    wb = sl_decompose(RB, field)
    tr = _tpoly_ring(field)
    t = tr.t()
    one_minus_t = tr.one() - t
    MA = _word_t_matrix(wa, tr, one_minus_t)
    MB = _word_t_matrix(wb, tr, t)
    M = _tmat_mul(MA, MB)
    # inverse: W_B(t)^-1 W_A(1-t)^-1
    IA = _word_t_matrix(wa.inverse(), tr, one_minus_t)
    IB = _word_t_matrix(wb.inverse(), tr, t)
    Minv = _tmat_mul(IB, IA)
    if t_matrix_det(M) != tr.one():
        raise AssertionError("determinant of the path is not identically 1")
    fam = family_from_t_matrix(M, Minv, field)
    return LinearPath(wa, wb, fam, tuple(tuple(r) for r in M))


def _tmat_mul(A, B):
    m = len(A)
    zero = A[0][0].ring.zero()
    out = []
    for r in range(m):
        row = []
        for c in range(m):
            acc = zero
            for k in range(m):
                if A[r][k].terms and B[k][c].terms:
                    acc = acc + A[r][k] * B[k][c]
            row.append(acc)
        out.append(row)
    return out


# moving points -----------------------------------------------------------------


def transvection_to_point(q: Point, p: Point) -> TransvectionWord:
    """At most n+1 transvections whose product M has [M q] = [p].

    Rows i != a are corrected using coordinate a of q, then coordinate a is
    corrected using a coordinate b != a where p is nonzero.
    """
    f = p.field
    m = len(p.coords)
    if len(q.coords) != m:
        raise SizeMismatch("points in different dimensions")
    if q == p:
        return TransvectionWord(m, (), f)
    choice = None
    for a in range(m):
        if not q.coords[a]:
            continue
        b = next((b for b in range(m) if b != a and p.coords[b]), None)
        if b is not None:
            choice = (a, b)
            break
    if choice is None:
        # q and p are both the coordinate point e_a
        return TransvectionWord(m, (), f)
    a, b = choice
    v = list(q.coords)
    applied = []
    inv_qa = f.inv(v[a])
    for i in range(m):
        if i == a:
            continue
        c = f.mul(f.sub(p.coords[i], v[i]), inv_qa)
        if c:
            v[i] = p.coords[i]
            applied.append(Transvection(m, i + 1, a + 1, c, f))
    c = f.div(f.sub(p.coords[a], v[a]), v[b])
    if c:
        v[a] = p.coords[a]
        applied.append(Transvection(m, a + 1, b + 1, c, f))
    # the first operation applied is the rightmost factor
    return TransvectionWord(m, tuple(reversed(applied)), f)
