"""Dense matrices with revlex word indexing and the Ab Kronecker convention.

Conventions, fixed once here and relied on everywhere else:

* A matrix with ``rows`` rows and ``cols`` columns sends basis column j to
  the vector ``sum_r data[r][j] e_r``.
* Tensor indices follow the *Ab* convention: in ``kron(A, B)`` the first
  factor's index varies fastest, so ``kron(A, I2)`` is block-diagonal
  ``[[A, 0], [0, A]]``.
* Basis words of length n over the alphabet {1..N} are enumerated in revlex
  order: ``index(w) = sum_k (w_k - 1) N^(k-1)``, hence ``|w> (x) |v> = |wv>``
  (concatenation).

All decision procedures (rank, nullspace, solve, inverse, det) require an
exact backend; the complex-float backend only supports them with an explicit
tolerance where stated.
"""

from __future__ import annotations

import numpy as np

from .config import DEFAULT_TOL
from .errors import (
    BackendMismatch,
    DimensionMismatch,
    RankDeficient,
    SingularMatrix,
)
from .scalars import (
    Backend,
    conjugate_scalar,
    join_backend,
    one,
    promote,
    scalar_abs,
    to_complex,
    zero,
)

# -- word indexing ------------------------------------------------------------


def word_to_index(word, N: int) -> int:
    """Zero-based revlex index of a word with letters in {1..N}."""
    idx = 0
    power = 1
    for letter in word:
        idx += (letter - 1) * power
        power *= N
    return idx


def index_to_word(index: int, N: int, n: int) -> tuple:
    word = []
    for _ in range(n):
        word.append(index % N + 1)
        index //= N
    return tuple(word)


# -- matrix -------------------------------------------------------------------


class Matrix:
    __slots__ = ("rows", "cols", "backend", "data")

    def __init__(self, rows: int, cols: int, backend: Backend, data):
        if len(data) != rows or any(len(r) != cols for r in data):
            raise DimensionMismatch("data shape does not match rows x cols")
        self.rows = rows
        self.cols = cols
        self.backend = backend
        self.data = data

    # construction

    @staticmethod
    def from_rows(rows, backend: Backend | None = None) -> "Matrix":
        from .scalars import backend_of

        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if backend is None:
            backend = Backend.EXACT_Q
            for r in rows:
                for v in r:
                    backend = join_backend(backend, backend_of(v))
        data = [[promote(v, backend) for v in r] for r in rows]
        return Matrix(nr, nc, backend, data)

    @staticmethod
    def identity(n: int, backend: Backend = Backend.EXACT_Q) -> "Matrix":
        z, o = zero(backend), one(backend)
        return Matrix(n, n, backend, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int, backend: Backend = Backend.EXACT_Q) -> "Matrix":
        z = zero(backend)
        return Matrix(rows, cols, backend, [[z] * cols for _ in range(rows)])

    @staticmethod
    def diagonal(values, backend: Backend | None = None) -> "Matrix":
        M = Matrix.from_rows([list(values)], backend)
        n = M.cols
        z = zero(M.backend)
        data = [[M.data[0][i] if i == j else z for j in range(n)] for i in range(n)]
        return Matrix(n, n, M.backend, data)

    @staticmethod
    def permutation(perm, backend: Backend = Backend.EXACT_Q) -> "Matrix":
        """Matrix P with P e_j = e_perm[j] (zero-based images)."""
        n = len(perm)
        out = Matrix.zeros(n, n, backend)
        o = one(backend)
        for j, image in enumerate(perm):
            out.data[image][j] = o
        return out

    @staticmethod
    def from_numpy(arr) -> "Matrix":
        arr = np.asarray(arr, dtype=complex)
        return Matrix(arr.shape[0], arr.shape[1], Backend.COMPLEX_F,
                      [[complex(v) for v in row] for row in arr])

    @staticmethod
    def column(values, backend: Backend | None = None) -> "Matrix":
        M = Matrix.from_rows([[v] for v in values], backend)
        return M

    # basics

    def get(self, r: int, c: int):
        return self.data[r][c]

    def promote_to(self, backend: Backend) -> "Matrix":
        if backend is self.backend:
            return self
        return Matrix(self.rows, self.cols, backend,
                      [[promote(v, backend) for v in row] for row in self.data])

    def to_numpy(self):
        return np.array([[to_complex(v) for v in row] for row in self.data], dtype=complex)

    def copy_data(self):
        return [list(row) for row in self.data]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __repr__(self):
        return f"Matrix({self.rows}x{self.cols}, {self.backend.value})"

    def pretty(self) -> str:
        from .scalars import format_scalar

        cells = [[format_scalar(v) for v in row] for row in self.data]
        width = max((len(c) for row in cells for c in row), default=1)
        return "\n".join(" ".join(c.rjust(width) for c in row) for row in cells)

    # arithmetic

    def _join(self, other: "Matrix"):
        backend = join_backend(self.backend, other.backend)
        return self.promote_to(backend), other.promote_to(backend), backend

    def add(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("add: shape mismatch")
        A, B, backend = self._join(other)
        return Matrix(self.rows, self.cols, backend,
                      [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A.data, B.data)])

    def sub(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("sub: shape mismatch")
        A, B, backend = self._join(other)
        return Matrix(self.rows, self.cols, backend,
                      [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A.data, B.data)])

    def scale(self, s) -> "Matrix":
        from .scalars import backend_of

        backend = join_backend(self.backend, backend_of(s))
        A = self.promote_to(backend)
        s = promote(s, backend)
        return Matrix(self.rows, self.cols, backend,
                      [[s * v for v in row] for row in A.data])

    def neg(self) -> "Matrix":
        return Matrix(self.rows, self.cols, self.backend,
                      [[-v for v in row] for row in self.data])

    def mul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"mul: {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        A, B, backend = self._join(other)
        z = zero(backend)
        b_nonzero = [[(c, b) for c, b in enumerate(row) if b] for row in B.data]
        out = []
        for arow in A.data:
            orow = [z] * other.cols
            for k, a in enumerate(arow):
                if not a:
                    continue
                for c, b in b_nonzero[k]:
                    orow[c] = orow[c] + a * b
            out.append(orow)
        return Matrix(self.rows, other.cols, backend, out)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return self.mul(other)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, self.backend,
                      [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)])

    def dagger(self) -> "Matrix":
        """Conjugate transpose; plain transpose on the exact-q backend."""
        return Matrix(self.cols, self.rows, self.backend,
                      [[conjugate_scalar(self.data[r][c]) for r in range(self.rows)]
                       for c in range(self.cols)])

    def trace(self):
        if not self.is_square():
            raise DimensionMismatch("trace of non-square matrix")
        t = zero(self.backend)
        for i in range(self.rows):
            t = t + self.data[i][i]
        return t

    def pow_int(self, k: int) -> "Matrix":
        if not self.is_square():
            raise DimensionMismatch("pow of non-square matrix")
        if k < 0:
            return self.inverse().pow_int(-k)
        result = Matrix.identity(self.rows, self.backend)
        base = self
        while k:
            if k & 1:
                result = result.mul(base)
            base = base.mul(base)
            k >>= 1
        return result

    # predicates / comparisons

    def is_zero_matrix(self, tol: float | None = None) -> bool:
        if self.backend.is_exact:
            return all(not v for row in self.data for v in row)
        return self.max_abs() <= (DEFAULT_TOL if tol is None else tol)

    def max_abs(self) -> float:
        return max((scalar_abs(v) for row in self.data for v in row), default=0.0)

    def inf_norm(self) -> float:
        return max((sum(scalar_abs(v) for v in row) for row in self.data), default=0.0)

    def eq(self, other: "Matrix", tol: float | None = None) -> bool:
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        backend = join_backend(self.backend, other.backend)
        if backend.is_exact:
            A, B, _ = self._join(other)
            return A.data == B.data
        tol = DEFAULT_TOL if tol is None else tol
        scale = max(1.0, self.inf_norm(), other.inf_norm())
        return self.max_abs_diff(other) <= tol * scale

    def max_abs_diff(self, other: "Matrix") -> float:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("max_abs_diff: shape mismatch")
        return max(
            (abs(to_complex(a) - to_complex(b))
             for ra, rb in zip(self.data, other.data) for a, b in zip(ra, rb)),
            default=0.0,
        )

    # exact elimination

    def _require_exact(self, what: str) -> None:
        if not self.backend.is_exact:
            raise BackendMismatch(f"{what} requires an exact backend (got complex-f)")

    def rref(self):
        """Reduced row echelon form; returns (Matrix, pivot column list)."""
        self._require_exact("rref")
        rows = self.copy_data()
        pivots = _rref_in_place(rows, self.cols)
        return Matrix(self.rows, self.cols, self.backend, rows), pivots

    def rank(self, tol: float | None = None) -> int:
        if not self.backend.is_exact:
            if tol is None:
                raise BackendMismatch("rank on complex-f requires an explicit tolerance")
            arr = self.to_numpy()
            if min(arr.shape) == 0:
                return 0
            sv = np.linalg.svd(arr, compute_uv=False)
            cutoff = tol * max(1.0, float(sv[0]) if len(sv) else 1.0)
            return int(np.sum(sv > cutoff))
        rows = self.copy_data()
        return len(_rref_in_place(rows, self.cols))

    def nullspace(self) -> list:
        """Exact basis of the right nullspace, as a list of column Matrices."""
        self._require_exact("nullspace")
        rows = self.copy_data()
        pivots = _rref_in_place(rows, self.cols)
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        basis = []
        z, o = zero(self.backend), one(self.backend)
        for fc in free:
            vec = [z] * self.cols
            vec[fc] = o
            for r, pc in enumerate(pivots):
                vec[pc] = -rows[r][fc]
            basis.append(Matrix(self.cols, 1, self.backend, [[v] for v in vec]))
        return basis

    def solve_right(self, rhs: "Matrix") -> "Matrix":
        """Exact solution X of self @ X = rhs; raises if inconsistent/underdetermined."""
        self._require_exact("solve")
        if rhs.rows != self.rows:
            raise DimensionMismatch("solve: rhs row count mismatch")
        A, B, backend = self._join(rhs)
        aug = [list(ra) + list(rb) for ra, rb in zip(A.data, B.data)]
        pivots = _rref_in_place(aug, self.cols + rhs.cols, stop_col=self.cols)
        rank = len(pivots)
        for r in range(rank, self.rows):
            if any(aug[r][c] for c in range(self.cols, self.cols + rhs.cols)):
                raise SingularMatrix("solve: inconsistent system")
        if rank < self.cols:
            raise SingularMatrix("solve: underdetermined system")
        z = zero(backend)
        out = [[z] * rhs.cols for _ in range(self.cols)]
        for r, pc in enumerate(pivots):
            for c in range(rhs.cols):
                out[pc][c] = aug[r][self.cols + c]
        return Matrix(self.cols, rhs.cols, backend, out)

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise DimensionMismatch("inverse of non-square matrix")
        if not self.backend.is_exact:
            arr = self.to_numpy()
            try:
                inv = np.linalg.inv(arr)
            except np.linalg.LinAlgError as exc:
                raise SingularMatrix(str(exc)) from exc
            return Matrix.from_numpy(inv)
        try:
            return self.solve_right(Matrix.identity(self.rows, self.backend))
        except SingularMatrix:
            raise SingularMatrix("inverse of singular matrix")

    def det(self):
        if not self.is_square():
            raise DimensionMismatch("det of non-square matrix")
        if not self.backend.is_exact:
            return complex(np.linalg.det(self.to_numpy()))
        rows = self.copy_data()
        n = self.rows
        sign = 1
        detval = one(self.backend)
        for col in range(n):
            pivot_row = next((r for r in range(col, n) if rows[r][col]), None)
            if pivot_row is None:
                return zero(self.backend)
            if pivot_row != col:
                rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
                sign = -sign
            pivot = rows[col][col]
            detval = detval * pivot
            for r in range(col + 1, n):
                factor = rows[r][col] / pivot
                if factor:
                    rows[r] = [a - factor * b for a, b in zip(rows[r], rows[col])]
        return detval if sign == 1 else -detval

    def is_invertible(self) -> bool:
        if not self.is_square():
            return False
        if self.backend.is_exact:
            return bool(self.det())
        return self.rank(tol=DEFAULT_TOL) == self.rows

    def column_space_basis(self):
        """First linearly independent columns, in index order, scaled monic.

        Returns (Q, indices); each chosen column is divided by its first
        nonzero entry, a deterministic representative of the column space.
        """
        self._require_exact("column_space_basis")
        rows = self.copy_data()
        pivots = _rref_in_place(rows, self.cols)
        cols = []
        for c in pivots:
            col = [self.data[r][c] for r in range(self.rows)]
            lead = next(v for v in col if v)
            cols.append([v / lead for v in col])
        data = [[col[r] for col in cols] for r in range(self.rows)]
        return Matrix(self.rows, len(pivots), self.backend, data), pivots


def _rref_in_place(rows, ncols: int, stop_col: int | None = None) -> list:
    """Gauss-Jordan over an exact field; returns pivot column indices."""
    if stop_col is None:
        stop_col = ncols
    nrows = len(rows)
    pivots = []
    r = 0
    for c in range(stop_col):
        pivot_row = next((k for k in range(r, nrows) if rows[k][c]), None)
        if pivot_row is None:
            continue
        if pivot_row != r:
            rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pivot = rows[r][c]
        if pivot != 1:
            rows[r] = [v / pivot for v in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][c]:
                factor = rows[k][c]
                rows[k] = [a - factor * b for a, b in zip(rows[k], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


# -- tensor operations --------------------------------------------------------


def kron(A: Matrix, B: Matrix) -> Matrix:
    """Ab-convention Kronecker product: the first factor's index varies fastest."""
    backend = join_backend(A.backend, B.backend)
    A = A.promote_to(backend)
    B = B.promote_to(backend)
    z = zero(backend)
    rows, cols = A.rows * B.rows, A.cols * B.cols
    out = [[z] * cols for _ in range(rows)]
    for rb in range(B.rows):
        brow = B.data[rb]
        for cb in range(B.cols):
            b = brow[cb]
            if not b:
                continue
            row_off = A.rows * rb
            col_off = A.cols * cb
            for ra in range(A.rows):
                arow = A.data[ra]
                target = out[row_off + ra]
                for ca in range(A.cols):
                    a = arow[ca]
                    if a:
                        target[col_off + ca] = a * b
    return Matrix(rows, cols, backend, out)


def kron_all(factors) -> Matrix:
    result = None
    for f in factors:
        result = f if result is None else kron(result, f)
    if result is None:
        raise DimensionMismatch("kron_all of empty sequence")
    return result


def flip_matrix(N: int, n: int, backend: Backend = Backend.EXACT_Q) -> Matrix:
    """Permutation matrix taking revlex order to lex order (word reversal)."""
    size = N ** n
    perm = [word_to_index(tuple(reversed(index_to_word(i, N, n))), N) for i in range(size)]
    return Matrix.permutation(perm, backend)


def swap_matrix(N: int, M: int, backend: Backend = Backend.EXACT_Q) -> Matrix:
    """The flip P_{N,M} with P(x (x) y) = y (x) x on elementary vectors."""
    out = Matrix.zeros(N * M, N * M, backend)
    o = one(backend)
    for x in range(N):
        for y in range(M):
            out.data[y + M * x][x + N * y] = o
    return out


def farr(M: Matrix, N: int, src_level: int, tgt_level: int) -> Matrix:
    """Transport to the opposite Kronecker convention: flip source and target words."""
    if M.cols != N ** src_level or M.rows != N ** tgt_level:
        raise DimensionMismatch(
            f"farr: expected {N ** tgt_level}x{N ** src_level}, got {M.rows}x{M.cols}"
        )
    f_src = flip_matrix(N, src_level, M.backend)
    f_tgt = flip_matrix(N, tgt_level, M.backend)
    return f_tgt.mul(M).mul(f_src)


def pseudo_inverse(Q: Matrix) -> Matrix:
    """Moore-Penrose left inverse (Q'Q)^(-1) Q' for full column rank Q."""
    gram = Q.dagger().mul(Q)
    if Q.backend.is_exact:
        if not gram.det():
            raise RankDeficient("pseudo_inverse: matrix does not have full column rank")
        return gram.inverse().mul(Q.dagger())
    if gram.rank(tol=DEFAULT_TOL) < Q.cols:
        raise RankDeficient("pseudo_inverse: matrix does not have full column rank")
    return gram.inverse().mul(Q.dagger())
