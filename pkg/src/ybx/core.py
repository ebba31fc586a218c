"""Yang-Baxter objects, the braid representation, and matrix-class predicates.

A Yang-Baxter object is a triple (N, a, R): rank N, level a, and an
invertible matrix R of size N^(2a) acting on two tensor slots of width N^a.
The braid group representation sends sigma_i to I^(i-1) (x) R (x) I^(n-i-1),
with slots of width N^a and words multiplying left to right.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .braid import BraidWord, fox, half_twist_word
from .config import DEFAULT_TOL
from .errors import (
    DimensionMismatch,
    GeneratorOutOfRange,
    NotGroupType,
    NotMonomial,
    SingularMatrix,
)
from .scalars import Backend, one, scalar_abs, zero
from .tensor import Matrix, index_to_word, kron


@dataclass(frozen=True)
class YBObject:
    N: int
    level: int
    R: Matrix
    verified: bool = False

    def __post_init__(self):
        if self.N < 1 or self.level < 1:
            raise DimensionMismatch("rank and level must be >= 1")
        size = self.N ** (2 * self.level)
        if self.R.rows != size or self.R.cols != size:
            raise DimensionMismatch(
                f"R must be {size}x{size} for rank {self.N} level {self.level}"
            )

    @property
    def slot_dim(self) -> int:
        return self.N ** self.level

    @property
    def backend(self) -> Backend:
        return self.R.backend


@dataclass(frozen=True)
class YbeReport:
    holds: bool
    residual: float
    witness: tuple | None  # ((row, col), magnitude) of the worst entry


def make_ybo(N: int, R: Matrix, level: int = 1, verify: bool = True,
             tol: float | None = None) -> YBObject:
    """Construct a Yang-Baxter object, checking invertibility and (optionally) YBE."""
    obj = YBObject(N, level, R)
    if R.backend.is_exact:
        if not R.det():
            raise SingularMatrix("R must be invertible")
    elif R.rank(tol=DEFAULT_TOL if tol is None else tol) < R.rows:
        raise SingularMatrix("R must be invertible")
    if verify:
        report = is_ybe(obj, tol=tol)
        if not report.holds:
            raise ValueError(f"matrix fails the Yang-Baxter equation (residual {report.residual})")
        obj = replace(obj, verified=True)
    return obj


def is_ybe(obj: YBObject, tol: float | None = None) -> YbeReport:
    """Check (R x I)(I x R)(R x I) = (I x R)(R x I)(I x R) on three slots."""
    w = obj.slot_dim
    I = Matrix.identity(w, obj.R.backend)
    R1 = kron(obj.R, I)
    R2 = kron(I, obj.R)
    lhs = R1.mul(R2).mul(R1)
    rhs = R2.mul(R1).mul(R2)
    worst = None
    worst_abs = 0.0
    for r in range(lhs.rows):
        lrow, rrow = lhs.data[r], rhs.data[r]
        for c in range(lhs.cols):
            a, b = lrow[c], rrow[c]
            if not a and not b:
                continue
            d = a - b
            if d:
                m = scalar_abs(d)
                if m > worst_abs:
                    worst_abs, worst = m, ((r, c), m)
    if obj.R.backend.is_exact:
        return YbeReport(worst is None, worst_abs, worst)
    tol = DEFAULT_TOL if tol is None else tol
    scale = max(1.0, lhs.inf_norm(), rhs.inf_norm())
    return YbeReport(worst_abs <= tol * scale, worst_abs, worst)


def verified(obj: YBObject, tol: float | None = None) -> YBObject:
    """Return the object tagged verified; raises if YBE fails."""
    if obj.verified:
        return obj
    report = is_ybe(obj, tol=tol)
    if not report.holds:
        raise ValueError(f"Yang-Baxter residual {report.residual}")
    return replace(obj, verified=True)


# -- representation -----------------------------------------------------------


def generator_image(obj: YBObject, n: int, i: int, inverse: bool = False) -> Matrix:
    """Image of sigma_i (or its inverse) on n strands."""
    if not 1 <= i <= n - 1:
        raise GeneratorOutOfRange(f"sigma_{i} does not exist on {n} strands")
    w = obj.slot_dim
    R = obj.R.inverse() if inverse else obj.R
    left = Matrix.identity(w ** (i - 1), obj.R.backend)
    right = Matrix.identity(w ** (n - i - 1), obj.R.backend)
    return kron(kron(left, R), right)


def rho(obj: YBObject, word: BraidWord) -> Matrix:
    """Representation of a braid word: product of generator images, left to right."""
    n = word.strands
    size = obj.slot_dim ** n
    result = Matrix.identity(size, obj.R.backend)
    cache: dict[int, Matrix] = {}
    for e in word.letters:
        if e not in cache:
            cache[e] = generator_image(obj, n, abs(e), inverse=e < 0)
        result = result.mul(cache[e])
    return result


def braid_relations_check(obj: YBObject, n: int, tol: float | None = None) -> bool:
    """Verify B1 (braid) and B2 (far commutation) relations on n strands."""
    gens = [generator_image(obj, n, i) for i in range(1, n)]
    for i in range(n - 2):
        lhs = gens[i].mul(gens[i + 1]).mul(gens[i])
        rhs = gens[i + 1].mul(gens[i]).mul(gens[i + 1])
        if not lhs.eq(rhs, tol):
            return False
    for i in range(n - 1):
        for j in range(i + 2, n - 1):
            if not gens[i].mul(gens[j]).eq(gens[j].mul(gens[i]), tol):
                return False
    return True


def reversal_conjugation_check(obj: YBObject, n: int, words, tol: float | None = None) -> bool:
    """Conjugation by the half twist realises the index-reversal symmetry.

    Checks rho(D_n) rho(w) rho(D_n)^(-1) = rho(fox(w)) for the given words.
    """
    delta = rho(obj, half_twist_word(n))
    delta_inv = delta.inverse()
    for w in words:
        if w.strands != n:
            raise GeneratorOutOfRange("word strand count mismatch")
        lhs = delta.mul(rho(obj, w)).mul(delta_inv)
        if not lhs.eq(rho(obj, fox(w)), tol):
            return False
    return True


# -- matrix class predicates ----------------------------------------------------


def _word_length(M: Matrix, N: int) -> int:
    if N == 1:
        if M.rows != 1 or M.cols != 1:
            raise DimensionMismatch("rank-1 matrices must be 1x1")
        return 2
    size, L = 1, 0
    while size < M.rows:
        size *= N
        L += 1
    if size != M.rows or M.rows != M.cols:
        raise DimensionMismatch(f"size {M.rows}x{M.cols} is not a power of {N}")
    return L


def _nonzero_entries(M: Matrix, tol: float | None):
    if M.backend.is_exact:
        for r, row in enumerate(M.data):
            for c, v in enumerate(row):
                if v:
                    yield r, c, v
    else:
        cut = (DEFAULT_TOL if tol is None else tol) * max(1.0, M.inf_norm())
        for r, row in enumerate(M.data):
            for c, v in enumerate(row):
                if scalar_abs(v) > cut:
                    yield r, c, v


def is_charge_conserving(M: Matrix, N: int, tol: float | None = None) -> bool:
    """Entries vanish unless the row word is a permutation of the column word."""
    L = _word_length(M, N)
    for r, c, _ in _nonzero_entries(M, tol):
        if sorted(index_to_word(r, N, L)) != sorted(index_to_word(c, N, L)):
            return False
    return True


def is_additive_cc(M: Matrix, N: int, tol: float | None = None) -> bool:
    """Entries vanish unless row and column words have equal symbol sums."""
    L = _word_length(M, N)
    for r, c, _ in _nonzero_entries(M, tol):
        if sum(index_to_word(r, N, L)) != sum(index_to_word(c, N, L)):
            return False
    return True


def cc_shape_level2(R: Matrix, N: int, tol: float | None = None):
    """Check the level-2 charge-conserving shape; returns (ok, violations).

    The allowed pattern reads basis words of length 4 over the base alphabet
    {1..N}: an entry may be nonzero only when the row word is a permutation
    of the column word.  Violations are ((row, col), value) triples.
    """
    if R.rows != N ** 4 or R.cols != N ** 4:
        raise DimensionMismatch("level-2 shape check needs an N^4 x N^4 matrix")
    violations = []
    for r, c, v in _nonzero_entries(R, tol):
        if sorted(index_to_word(r, N, 4)) != sorted(index_to_word(c, N, 4)):
            violations.append(((r, c), v))
    return (not violations, violations)


def is_monomial(M: Matrix, tol: float | None = None) -> bool:
    if not M.is_square():
        return False
    row_seen = [0] * M.rows
    col_seen = [0] * M.cols
    for r, c, _ in _nonzero_entries(M, tol):
        row_seen[r] += 1
        col_seen[c] += 1
    return all(x == 1 for x in row_seen) and all(x == 1 for x in col_seen)


def is_permutation(M: Matrix, tol: float | None = None) -> bool:
    if not is_monomial(M, tol):
        return False
    o = one(M.backend)
    for _, _, v in _nonzero_entries(M, tol):
        if M.backend.is_exact:
            if v != o:
                return False
        elif abs(v - 1) > (DEFAULT_TOL if tol is None else tol):
            return False
    return True


def is_involutive(M: Matrix, tol: float | None = None) -> bool:
    if not M.is_square():
        return False
    return M.mul(M).eq(Matrix.identity(M.rows, M.backend), tol)


def is_unitary(M: Matrix, tol: float | None = None) -> bool:
    if not M.is_square():
        return False
    return M.mul(M.dagger()).eq(Matrix.identity(M.rows, M.backend), tol)


# -- group type -----------------------------------------------------------------


def group_type_build(gs, verify: bool = False) -> YBObject:
    """Candidate R with R|ij> = g_i |j> (x) |i> for the given invertible g_i."""
    N = len(gs)
    backend = gs[0].backend
    for g in gs:
        if g.rows != N or g.cols != N:
            raise DimensionMismatch("each g_i must be N x N")
    R = Matrix.zeros(N * N, N * N, backend)
    for i in range(N):
        for j in range(N):
            col = i + N * j
            for k in range(N):
                R.data[k + N * i][col] = gs[i].data[k][j]
    return make_ybo(N, R, verify=verify) if verify else YBObject(N, 1, R)


def is_group_type(R: Matrix, N: int, tol: float | None = None):
    """Recover the g_i from R's block columns; raises NotGroupType on failure."""
    if R.rows != N * N or R.cols != N * N:
        raise DimensionMismatch("group-type detection needs an N^2 x N^2 matrix")
    gs = [Matrix.zeros(N, N, R.backend) for _ in range(N)]
    for i in range(N):
        for j in range(N):
            col = i + N * j
            for r in range(N * N):
                v = R.data[r][col]
                if not v:
                    continue
                k, i2 = r % N, r // N
                if i2 != i:
                    raise NotGroupType(f"column |{i+1}{j+1}> hits a word outside g_i|j>(x)|i>")
                gs[i].data[k][j] = v
    for i, g in enumerate(gs):
        if g.backend.is_exact:
            if not g.det():
                raise NotGroupType(f"g_{i+1} is singular")
        elif g.rank(tol=DEFAULT_TOL if tol is None else tol) < N:
            raise NotGroupType(f"g_{i+1} is singular")
    return gs


def group_type_ybe_condition(gs, tol: float | None = None) -> bool:
    """Check g_i g_j = g_k g_i whenever the coefficient of |k> in g_i|j> is nonzero."""
    N = len(gs)
    for i in range(N):
        for j in range(N):
            for k in range(N):
                coeff = gs[i].data[k][j]
                nonzero = bool(coeff) if gs[i].backend.is_exact else (
                    scalar_abs(coeff) > (DEFAULT_TOL if tol is None else tol)
                )
                if nonzero and not gs[i].mul(gs[j]).eq(gs[k].mul(gs[i]), tol):
                    return False
    return True


# -- monomial stripping ----------------------------------------------------------


def strip_to_permutation(R: Matrix, tol: float | None = None):
    """Write a monomial R as D.P with D diagonal and P a permutation matrix."""
    if not is_monomial(R, tol):
        raise NotMonomial("matrix is not monomial")
    D = Matrix.zeros(R.rows, R.rows, R.backend)
    P = Matrix.zeros(R.rows, R.cols, R.backend)
    o = one(R.backend)
    for r, c, v in _nonzero_entries(R, tol):
        D.data[r][r] = v
        P.data[r][c] = o
    return D, P
