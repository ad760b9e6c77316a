"""Exact sparse linear algebra over the rationals and prime fields.

Vectors are dicts ``{index: nonzero scalar}``.  Matrices store one such dict
per row.  Over Q a scalar is an ``int`` or a ``Fraction`` with denominator
> 1 (integral values are always kept as ``int``); over F_p it is an ``int``
in ``[0, p)``.  There is no tolerance anywhere: zero means zero.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import isprime

Vector = dict


class FieldMismatch(TypeError):
    """Arithmetic between objects over different fields."""


class SemisimplicityViolation(ValueError):
    """The field characteristic divides n!, so the requested operation is undefined here."""


class Field:
    """Q (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        p = int(p)
        if p != 0 and not isprime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def parse(cls, spec: str) -> "Field":
        spec = spec.strip()
        if spec in ("Q", "QQ"):
            return cls(0)
        if spec.startswith("Fp:"):
            try:
                return cls(int(spec[3:]))
            except ValueError as exc:
                raise ValueError(f"bad field specifier {spec!r}") from exc
        raise ValueError(f"bad field specifier {spec!r}; expected 'Q' or 'Fp:<prime>'")

    @property
    def spec(self) -> str:
        return "Q" if self.p == 0 else f"Fp:{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"Field({self.spec})"

    def __call__(self, x):
        """Coerce an int, Fraction or string into a canonical scalar."""
        if isinstance(x, str):
            return self.from_str(x)
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        return int(x)

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(x, -1, self.p)
        return _norm(Fraction(1) / x)

    def neg(self, x):
        return (-x) % self.p if self.p else -x

    def mul(self, a, b):
        return a * b % self.p if self.p else _norm(a * b)

    def add(self, a, b):
        return (a + b) % self.p if self.p else _norm(a + b)

    def to_str(self, x) -> str:
        return str(x)

    def from_str(self, s: str):
        return self(Fraction(s.strip()))

    def check_semisimple(self, n: int):
        """Raise unless char 0 or char > n (group algebra of S_n semisimple)."""
        if self.p and self.p <= n:
            raise SemisimplicityViolation(
                f"characteristic {self.p} divides {n}!; decomposition requires p > {n}"
            )


Q = Field(0)


def _norm(x):
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def same_field(*objs) -> Field:
    fields = {o.field for o in objs}
    if len(fields) != 1:
        raise FieldMismatch(f"mixed fields: {sorted(f.spec for f in fields)}")
    return fields.pop()


# -- vector kernels -----------------------------------------------------------

def axpy(dst: dict, a, src: Mapping, p: int):
    """``dst += a * src`` in place, dropping zeros."""
    if p:
        for j, v in src.items():
            w = (dst.get(j, 0) + a * v) % p
            if w:
                dst[j] = w
            else:
                dst.pop(j, None)
    else:
        for j, v in src.items():
            w = dst.get(j, 0) + a * v
            if w:
                dst[j] = _norm(w)
            else:
                dst.pop(j, None)


def scale(v: Mapping, a, p: int) -> dict:
    if a == 0:
        return {}
    if p:
        return {j: x * a % p for j, x in v.items()}
    return {j: _norm(x * a) for j, x in v.items()}


# -- matrices -----------------------------------------------------------------

class Matrix:
    """Immutable sparse matrix over a Field.  Do not mutate ``rows`` after construction."""

    __slots__ = ("field", "nrows", "ncols", "rows", "_cols")

    def __init__(self, field: Field, nrows: int, ncols: int, rows: Sequence[dict] | None = None):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [{} for _ in range(nrows)]
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        self.rows = list(rows)
        self._cols = None

    # construction
    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, n, n, [{i: 1} for i in range(n)])

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls(field, nrows, ncols)

    @classmethod
    def from_lists(cls, field: Field, data: Sequence[Sequence], ncols: int | None = None) -> "Matrix":
        rows = []
        for r in data:
            row = {}
            for j, x in enumerate(r):
                x = field(x)
                if x:
                    row[j] = x
            rows.append(row)
        if ncols is None:
            ncols = len(data[0]) if data else 0
        return cls(field, len(rows), ncols, rows)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[Mapping]) -> "Matrix":
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(columns):
            for i, x in col.items():
                rows[i][j] = x
        return cls(field, nrows, len(columns), rows)

    @classmethod
    def permutation(cls, field: Field, images: Sequence[int]) -> "Matrix":
        """Matrix sending basis vector j to basis vector images[j]."""
        n = len(images)
        rows = [{} for _ in range(n)]
        for j, i in enumerate(images):
            rows[i][j] = 1
        return cls(field, n, n, rows)

    # inspection
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i].get(j, 0)

    def to_lists(self) -> list[list]:
        return [[r.get(j, 0) for j in range(self.ncols)] for r in self.rows]

    def columns(self) -> list[dict]:
        if self._cols is None:
            cols = [{} for _ in range(self.ncols)]
            for i, r in enumerate(self.rows):
                for j, x in r.items():
                    cols[j][i] = x
            self._cols = cols
        return self._cols

    def column(self, j: int) -> dict:
        return self.columns()[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def is_zero(self) -> bool:
        return not any(self.rows)

    def trace(self):
        p = self.field.p
        t = 0
        for i in range(min(self.nrows, self.ncols)):
            t += self.rows[i].get(i, 0)
        return t % p if p else _norm(t)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and all(a == b for a, b in zip(self.rows, other.rows))
        )

    def __hash__(self):
        return hash((self.field, self.shape, tuple(tuple(sorted(r.items())) for r in self.rows)))

    def __repr__(self):
        return f"Matrix({self.field.spec}, {self.nrows}x{self.ncols}, nnz={self.nnz()})"

    # arithmetic
    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.ncols, self.nrows, [dict(c) for c in self.columns()])

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            same_field(self, other)
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            p = self.field.p
            brows = other.rows
            out = []
            for r in self.rows:
                acc: dict = {}
                for k, a in r.items():
                    axpy(acc, a, brows[k], p)
                out.append(acc)
            return Matrix(self.field, self.nrows, other.ncols, out)
        if isinstance(other, dict):
            return self.apply(other)
        return NotImplemented

    def apply(self, v: Mapping) -> dict:
        """Matrix times a sparse column vector."""
        p = self.field.p
        cols = self.columns()
        acc: dict = {}
        for j, x in v.items():
            axpy(acc, x, cols[j], p)
        return acc

    def _combine(self, other: "Matrix", sign: int) -> "Matrix":
        same_field(self, other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        p = self.field.p
        out = []
        for a, b in zip(self.rows, other.rows):
            acc = dict(a)
            axpy(acc, sign, b, p)
            out.append(acc)
        return Matrix(self.field, self.nrows, self.ncols, out)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def scaled(self, a) -> "Matrix":
        a = self.field(a)
        p = self.field.p
        return Matrix(self.field, self.nrows, self.ncols, [scale(r, a, p) for r in self.rows])

    def submatrix(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "Matrix":
        rsel = range(self.nrows) if rows is None else rows
        if cols is None:
            return Matrix(self.field, len(rsel), self.ncols, [dict(self.rows[i]) for i in rsel])
        index = {c: k for k, c in enumerate(cols)}
        out = []
        for i in rsel:
            out.append({index[j]: x for j, x in self.rows[i].items() if j in index})
        return Matrix(self.field, len(rsel), len(cols), out)

    def hstack(self, other: "Matrix") -> "Matrix":
        same_field(self, other)
        if self.nrows != other.nrows:
            raise ValueError("row count mismatch")
        out = []
        for a, b in zip(self.rows, other.rows):
            row = dict(a)
            row.update({j + self.ncols: x for j, x in b.items()})
            out.append(row)
        return Matrix(self.field, self.nrows, self.ncols + other.ncols, out)

    def vstack(self, other: "Matrix") -> "Matrix":
        same_field(self, other)
        if self.ncols != other.ncols:
            raise ValueError("column count mismatch")
        return Matrix(self.field, self.nrows + other.nrows, self.ncols, self.rows + other.rows)

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self.to_lists()]

    @classmethod
    def from_json(cls, field: Field, data, ncols: int | None = None) -> "Matrix":
        return cls.from_lists(field, [[field.from_str(s) for s in row] for row in data], ncols)


# -- row reduction ------------------------------------------------------------

class Echelon:
    """Incrementally maintained reduced row echelon basis of a subspace of F^dim.

    Each stored row has a pivot equal to 1 at its smallest index, and no other
    stored row has a nonzero entry in that column.
    """

    def __init__(self, field: Field, dim: int):
        self.field = field
        self.dim = dim
        self.pivots: dict[int, dict] = {}

    def __len__(self) -> int:
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Mapping) -> dict:
        """Return ``v`` minus its component along the stored rows (a copy)."""
        w = dict(v)
        p = self.field.p
        hits = [c for c in w if c in self.pivots]
        for c in hits:
            a = w.get(c, 0)
            if a:
                axpy(w, -a, self.pivots[c], p)
        return w

    def coordinates(self, v: Mapping) -> dict[int, object] | None:
        """Coefficients of ``v`` on the stored rows (keyed by pivot), or None if not in the span."""
        w = dict(v)
        p = self.field.p
        coeffs = {}
        for c in [c for c in w if c in self.pivots]:
            a = w.get(c, 0)
            if a:
                coeffs[c] = a
                axpy(w, -a, self.pivots[c], p)
        if w:
            return None
        return coeffs

    def add(self, v: Mapping) -> dict | None:
        """Add ``v`` to the span; return the new normalized row, or None if dependent."""
        w = self.reduce(v)
        if not w:
            return None
        p = self.field.p
        c = min(w)
        inv = self.field.inv(w[c])
        if w[c] != 1:
            w = scale(w, inv, p)
        for row in self.pivots.values():
            a = row.get(c, 0)
            if a:
                axpy(row, -a, w, p)
        self.pivots[c] = w
        return w

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def rows(self) -> list[dict]:
        return [self.pivots[c] for c in sorted(self.pivots)]

    def basis(self) -> Matrix:
        """Basis vectors as the columns of a dim x rank matrix, ordered by pivot."""
        return Matrix.from_columns(self.field, self.dim, [dict(r) for r in self.rows()])

    def copy(self) -> "Echelon":
        e = Echelon(self.field, self.dim)
        e.pivots = {c: dict(r) for c, r in self.pivots.items()}
        return e


def row_echelon(A: Matrix) -> Echelon:
    """Reduced row echelon form of the rows of ``A``."""
    e = Echelon(A.field, A.ncols)
    for r in A.rows:
        if r:
            e.add(r)
    return e


def column_echelon(A: Matrix) -> Echelon:
    """Reduced echelon basis of the column space of ``A``."""
    e = Echelon(A.field, A.nrows)
    for c in A.columns():
        if c:
            e.add(c)
    return e


def rank(A: Matrix) -> int:
    if A.nrows <= A.ncols:
        return row_echelon(A).rank
    return column_echelon(A).rank


def kernel_basis(A: Matrix) -> Matrix:
    """Columns span {x : A x = 0}; one basis vector per free column of rref(A)."""
    e = row_echelon(A)
    pivots = e.pivots
    field = A.field
    p = field.p
    cols = []
    for j in range(A.ncols):
        if j in pivots:
            continue
        v = {j: 1}
        for c, row in pivots.items():
            a = row.get(j, 0)
            if a:
                v[c] = (-a) % p if p else -a
        cols.append(v)
    return Matrix.from_columns(field, A.ncols, cols)


def pivot_columns(A: Matrix) -> list[int]:
    """Indices of the columns of ``A`` that are not in the span of earlier columns."""
    e = Echelon(A.field, A.nrows)
    out = []
    for j, c in enumerate(A.columns()):
        if c and e.add(c) is not None:
            out.append(j)
    return out


def image_basis(A: Matrix) -> Matrix:
    """The pivot columns of ``A``: a basis of its column space drawn from its columns."""
    piv = pivot_columns(A)
    return A.submatrix(cols=piv)


def quotient_basis(ambient_dim: int, subspace: Matrix) -> tuple[list[int], Matrix]:
    """Coordinates for F^d / span(columns of ``subspace``).

    Returns ``(reps, P)`` where ``reps`` are the non-pivot coordinates of the
    reduced subspace basis (their unit vectors map to a basis of the quotient)
    and ``P`` is the (d - r) x d projection matrix.
    """
    if subspace.nrows != ambient_dim:
        raise ValueError("subspace does not live in the ambient space")
    e = column_echelon(subspace)
    return quotient_from_echelon(e)


def quotient_from_echelon(e: Echelon) -> tuple[list[int], Matrix]:
    field = e.field
    p = field.p
    pivots = e.pivots
    reps = [j for j in range(e.dim) if j not in pivots]
    pos = {j: k for k, j in enumerate(reps)}
    rows = [{} for _ in reps]
    for j in reps:
        rows[pos[j]][j] = 1
    for c, row in pivots.items():
        for j, a in row.items():
            if j != c:
                rows[pos[j]][c] = (-a) % p if p else -a
    return reps, Matrix(field, len(reps), e.dim, rows)


def section(reps: Sequence[int], ambient_dim: int, field: Field) -> Matrix:
    """The d x (d - r) matrix sending quotient basis vector k to the unit vector at reps[k]."""
    return Matrix.from_columns(field, ambient_dim, [{j: 1} for j in reps])


def close_under_maps(seed: Matrix, maps: Sequence[Matrix]) -> Matrix:
    """Basis (as columns) of the smallest subspace containing ``seed`` and stable under ``maps``."""
    e = Echelon(seed.field, seed.nrows)
    for M in maps:
        if M.nrows != seed.nrows or M.ncols != seed.nrows:
            raise ValueError("maps must be square of the ambient dimension")
    return _close(e, [c for c in seed.columns() if c], maps).basis()


def _close(e: Echelon, queue: list, maps: Sequence[Matrix]) -> Echelon:
    pending = []
    for v in queue:
        w = e.add(v)
        if w is not None:
            pending.append(dict(v))
    while pending:
        v = pending.pop()
        for M in maps:
            w = M.apply(v)
            if w and e.add(w) is not None:
                pending.append(w)
    return e


def solve(A: Matrix, b: Mapping) -> dict | None:
    """One solution x of A x = b (sparse), or None when inconsistent."""
    aug = A.hstack(Matrix.from_columns(A.field, A.nrows, [dict(b)]))
    e = row_echelon(aug)
    if A.ncols in e.pivots:
        return None
    x = {}
    for c, row in e.pivots.items():
        a = row.get(A.ncols, 0)
        if a:
            x[c] = a
    return x


def is_invariant(basis: Matrix, maps: Iterable[Matrix]) -> bool:
    """True if every map sends the column span of ``basis`` into itself."""
    e = column_echelon(basis)
    for M in maps:
        for c in basis.columns():
            if not e.contains(M.apply(c)):
                return False
    return True


def inverse(A: Matrix) -> Matrix:
    """Inverse of a square matrix; raises ValueError when singular."""
    if A.nrows != A.ncols:
        raise ValueError("inverse of a non-square matrix")
    n = A.nrows
    aug = A.hstack(Matrix.identity(A.field, n))
    e = row_echelon(aug)
    if any(c not in e.pivots for c in range(n)):
        raise ValueError("matrix is singular")
    rows = [{j - n: x for j, x in e.pivots[c].items() if j >= n} for c in range(n)]
    return Matrix(A.field, n, n, rows)
