"""Representations of S_n given by matrices for the adjacent transpositions."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Any, Sequence

from . import perms
from .combinatorics import (
    Partition,
    Tableau,
    Tabloid,
    as_partition,
    class_representative,
    class_size,
    partitions,
    standard_tableaux,
)
from .linalg import (
    Echelon,
    Field,
    FieldMismatch,
    Matrix,
    SemisimplicityViolation,
    axpy,
    kernel_basis,
    quotient_from_echelon,
    section,
)


class RepresentationError(ValueError):
    """A constructed object fails its defining relations."""


@dataclass(frozen=True, eq=False)
class SymRep:
    """A representation of S_n: ``gens[i]`` is the action of (i+1, i+2) on column vectors."""

    n: int
    field: Field
    labels: tuple
    gens: tuple[Matrix, ...]
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "gens", tuple(self.gens))
        if len(self.gens) != max(self.n - 1, 0):
            raise RepresentationError(f"S_{self.n} needs {max(self.n - 1, 0)} generators, got {len(self.gens)}")
        d = len(self.labels)
        for g in self.gens:
            if g.shape != (d, d):
                raise RepresentationError(f"generator of shape {g.shape}, expected {(d, d)}")
            if g.field != self.field:
                raise FieldMismatch("generator over the wrong field")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __repr__(self):
        return f"SymRep(n={self.n}, dim={self.dim}, field={self.field.spec})"

    def identity(self) -> Matrix:
        return Matrix.identity(self.field, self.dim)

    def check_coxeter(self) -> bool:
        I = self.identity()
        g = self.gens
        for i, a in enumerate(g):
            if a @ a != I:
                return False
            if i + 1 < len(g):
                ab = a @ g[i + 1]
                if ab @ ab @ ab != I:
                    return False
            for j in range(i + 2, len(g)):
                if a @ g[j] != g[j] @ a:
                    return False
        return True

    def matrix(self, sigma: Sequence[int]) -> Matrix:
        return apply_permutation(self, sigma)

    def act(self, sigma: Sequence[int], v: dict) -> dict:
        """Apply a permutation to a sparse vector without forming its matrix."""
        for j in reversed(perms.adjacent_word(perms.extend(sigma, self.n))):
            v = self.gens[j - 1].apply(v)
        return v

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "field": self.field.spec,
            "labels": [label_to_json(x) for x in self.labels],
            "gens": [g.to_json() for g in self.gens],
        }

    @classmethod
    def from_json(cls, doc: dict) -> "SymRep":
        field = Field.parse(doc["field"])
        d = doc["dim"]
        return cls(
            doc["n"],
            field,
            tuple(label_from_json(x) for x in doc["labels"]),
            tuple(Matrix.from_json(field, g, d) for g in doc["gens"]),
        )


def label_to_json(x):
    if isinstance(x, Tableau):
        return {"tableau": x.to_json()}
    if isinstance(x, Tabloid):
        return {"tabloid": x.to_json()}
    if isinstance(x, Partition):
        return {"partition": list(x.parts)}
    if isinstance(x, (tuple, list)):
        return [label_to_json(y) for y in x]
    return x


def label_from_json(x):
    if isinstance(x, dict):
        if "tableau" in x:
            return Tableau.from_json(x["tableau"])
        if "tabloid" in x:
            return Tabloid.from_json(x["tabloid"])
        if "partition" in x:
            return Partition(tuple(x["partition"]))
        raise ValueError(f"unknown label {x!r}")
    if isinstance(x, list):
        return tuple(label_from_json(y) for y in x)
    return x


@dataclass(frozen=True, eq=False)
class EquivMap:
    """A linear map from an S_n-rep to an S_m-rep (m >= n), equivariant for S_n."""

    source: SymRep
    target: SymRep
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise RepresentationError(
                f"map matrix {self.matrix.shape} does not fit {self.source.dim} -> {self.target.dim}"
            )
        if self.target.n < self.source.n:
            raise RepresentationError("target group must contain the source group")
        if self.source.field != self.target.field or self.matrix.field != self.source.field:
            raise FieldMismatch("map between representations over different fields")

    @property
    def field(self) -> Field:
        return self.source.field

    def is_equivariant(self) -> bool:
        A = self.matrix
        for i in range(self.source.n - 1):
            if A @ self.source.gens[i] != self.target.gens[i] @ A:
                return False
        return True

    def compose(self, other: "EquivMap") -> "EquivMap":
        """``self o other``."""
        if other.target is not self.source and other.target.dim != self.source.dim:
            raise ValueError("maps do not compose")
        return EquivMap(other.source, self.target, self.matrix @ other.matrix)


# -- standard representations -------------------------------------------------

def trivial(n: int, field: Field) -> SymRep:
    one = Matrix.identity(field, 1)
    return SymRep(n, field, ("1",), (one,) * max(n - 1, 0))


def sign_rep(n: int, field: Field) -> SymRep:
    return tensor_sign(trivial(n, field))


def permutation_rep(n: int, field: Field) -> SymRep:
    """The permutation representation on symbols [1], ..., [n]."""
    gens = []
    for i in range(1, n):
        images = list(range(n))
        images[i - 1], images[i] = i, i - 1
        gens.append(Matrix.permutation(field, images))
    return SymRep(n, field, tuple(range(1, n + 1)), tuple(gens))


def zero_rep(n: int, field: Field) -> SymRep:
    return SymRep(n, field, (), (Matrix.zeros(field, 0, 0),) * max(n - 1, 0))


# -- basic operations ---------------------------------------------------------

def apply_permutation(V: SymRep, sigma: Sequence[int]) -> Matrix:
    """Matrix of ``sigma`` on V, as a product of generators along a bubble-sort word."""
    sigma = tuple(sigma)
    if len(sigma) != V.n or not perms.is_permutation(sigma):
        raise ValueError(f"{sigma} is not a permutation of 1..{V.n}")
    cache = V._cache.setdefault("perm", {})
    if sigma in cache:
        return cache[sigma]
    word = perms.adjacent_word(sigma)
    M = V.identity()
    for j in reversed(word):
        M = V.gens[j - 1] @ M
    if len(cache) < 4096:
        cache[sigma] = M
    return M


def restrict(V: SymRep, m: int) -> SymRep:
    if not 0 <= m <= V.n:
        raise ValueError(f"cannot restrict S_{V.n} to S_{m}")
    return SymRep(m, V.field, V.labels, V.gens[: max(m - 1, 0)])


def tensor_sign(V: SymRep) -> SymRep:
    return SymRep(V.n, V.field, V.labels, tuple(-g for g in V.gens))


class Induction:
    """``Ind_{S_n x S_k}^{S_{n+k}} V (x) chi`` with chi trivial or sign on S_k.

    Basis: blocks indexed by coset representatives, each block a copy of V.
    With the default transversal, the representative for the k-subset ``A`` is
    the shuffle sending 1..n increasingly onto the complement of A and n+1..n+k
    increasingly onto A; subsets are listed lexicographically, so the identity
    coset ``A = {n+1..n+k}`` comes last.
    """

    def __init__(self, V: SymRep, k: int, twist: str = "trivial", transversal: Sequence[Sequence[int]] | None = None):
        if twist not in ("trivial", "sign"):
            raise ValueError("twist must be 'trivial' or 'sign'")
        if k < 0:
            raise ValueError("k must be nonnegative")
        self.base = V
        self.k = k
        self.twist = twist
        self.n = V.n
        self.m = V.n + k
        self.field = V.field
        self.subsets = [tuple(A) for A in combinations(range(1, self.m + 1), k)]
        self.index = {A: b for b, A in enumerate(self.subsets)}
        if transversal is None:
            self.reps = [self._shuffle(A) for A in self.subsets]
            self.canonical = True
        else:
            reps = [None] * len(self.subsets)
            for t in transversal:
                t = tuple(t)
                A = tuple(sorted(t[self.n:]))
                if A not in self.index or reps[self.index[A]] is not None:
                    raise ValueError("not a transversal of S_n x S_k in S_{n+k}")
                reps[self.index[A]] = t
            if any(r is None for r in reps):
                raise ValueError("transversal misses a coset")
            self.reps = reps
            self.canonical = False
        self.rep_inverses = [perms.inverse(r) for r in self.reps]
        d = V.dim
        labels = tuple((A, lab) for A in self.subsets for lab in V.labels)
        gens = tuple(self._generator(i) for i in range(1, self.m))
        self.rep = SymRep(self.m, self.field, labels, gens)
        top = self.index[tuple(range(self.n + 1, self.m + 1))]
        incl = Matrix.from_columns(self.field, self.rep.dim, [{top * d + i: 1} for i in range(d)])
        self.identity_block = top
        self.inclusion = EquivMap(V, self.rep, incl)

    def _shuffle(self, A: tuple[int, ...]) -> tuple[int, ...]:
        comp = [x for x in range(1, self.m + 1) if x not in A]
        return tuple(comp) + tuple(A)

    def _twist_value(self, h2: Sequence[int]) -> int:
        if self.twist == "trivial":
            return 1
        return perms.sign(h2)

    def factor(self, g: Sequence[int]) -> tuple[int, tuple[int, ...], int]:
        """Write ``g = rep[b] * (h1 x h2)``; return ``(b, h1, twist(h2))``."""
        A = tuple(sorted(g[self.n:]))
        b = self.index[A]
        h = perms.compose(self.rep_inverses[b], g)
        h1 = h[: self.n]
        h2 = tuple(x - self.n for x in h[self.n:])
        return b, h1, self._twist_value(h2)

    def _block_action(self, g: Sequence[int], b: int) -> tuple[int, Matrix]:
        """Block that ``g`` sends block ``b`` to, and the matrix applied."""
        g_rep = perms.compose(g, self.reps[b])
        b2, h1, chi = self.factor(g_rep)
        M = apply_permutation(self.base, h1) if self.n else self.base.identity()
        if chi == -1:
            M = -M
        return b2, M

    def _generator(self, i: int) -> Matrix:
        d = self.base.dim
        nb = len(self.subsets)
        rows = [{} for _ in range(nb * d)]
        s = perms.transposition(self.m, i, i + 1)
        for b, A in enumerate(self.subsets):
            if self.canonical:
                b2, M = self._canonical_block(i, A)
            else:
                b2, M = self._block_action(s, b)
            for r, row in enumerate(M.rows):
                target = rows[b2 * d + r]
                for c, x in row.items():
                    target[b * d + c] = x
        return Matrix(self.field, nb * d, nb * d, rows)

    def _canonical_block(self, i: int, A: tuple[int, ...]) -> tuple[int, Matrix]:
        ina, inb = i in A, (i + 1) in A
        if ina != inb:
            A2 = tuple(sorted((set(A) - {i, i + 1}) | ({i, i + 1} - set(A))))
            return self.index[A2], self.base.identity()
        if ina:
            I = self.base.identity()
            return self.index[A], (I if self.twist == "trivial" else -I)
        # both images of 1..n: s_i c_A = c_A s_j with j the rank of i in the complement
        j = i - sum(1 for a in A if a < i)
        return self.index[A], self.base.gens[j - 1]

    def act(self, g: Sequence[int], v: dict) -> dict:
        """Apply an arbitrary permutation of 1..n+k to a sparse vector."""
        d = self.base.dim
        p = self.field.p
        blocks: dict[int, dict] = {}
        for idx, x in v.items():
            blocks.setdefault(idx // d, {})[idx % d] = x
        out: dict = {}
        for b, sub in blocks.items():
            b2, M = self._block_action(g, b)
            w = M.apply(sub)
            axpy(out, 1, {b2 * d + r: x for r, x in w.items()}, p)
        return out

    def block_vector(self, b: int, v: dict) -> dict:
        d = self.base.dim
        return {b * d + i: x for i, x in v.items()}


def induce(V: SymRep, k: int, twist: str = "trivial", transversal=None) -> tuple[SymRep, EquivMap]:
    """Induced representation and the inclusion of V as the identity-coset block."""
    if k == 0 and transversal is None:
        return V, EquivMap(V, V, V.identity())
    ind = Induction(V, k, twist, transversal)
    return ind.rep, ind.inclusion


# -- characters ---------------------------------------------------------------

def character(V: SymRep) -> dict[Partition, Any]:
    """Trace of each cycle type's representative ``(1..l1)(l1+1..)...``."""
    out = {}
    for lam in partitions(V.n):
        out[lam] = apply_permutation(V, class_representative(lam)).trace()
    return out


@lru_cache(maxsize=None)
def _mn(beta: tuple[int, ...], lam: tuple[int, ...]) -> int:
    # Murnaghan-Nakayama on beta-sets: remove a rim hook of length r by moving a bead down r.
    if not lam:
        return 1
    r = lam[0]
    rest = lam[1:]
    beads = set(beta)
    total = 0
    for b in beta:
        if b - r >= 0 and (b - r) not in beads:
            between = sum(1 for c in beta if b - r < c < b)
            new = tuple(sorted((beads - {b}) | {b - r}, reverse=True))
            total += (-1) ** between * _mn(new, rest)
    return total


def specht_character(mu, lam) -> int:
    """Integer character value of the Specht module S^mu at cycle type lam."""
    mu, lam = as_partition(mu), as_partition(lam)
    if mu.n != lam.n:
        raise ValueError("mu and lambda must partition the same integer")
    ell = len(mu.parts)
    beta = tuple(mu.parts[i] + ell - 1 - i for i in range(ell))
    return _mn(beta, lam.parts)


def character_inner(chi: dict, psi: dict, n: int, field: Field):
    """``(1/n!) sum_lambda |C_lambda| chi(lambda) psi(lambda)``, computed in ``field``."""
    field.check_semisimple(n)
    total = sum(class_size(lam) * chi[lam] * psi[lam] for lam in partitions(n))
    return field(Fraction(total, factorial(n)))


def decompose(V: SymRep) -> Counter:
    """Multiplicity of each Specht module in V (semisimple fields only)."""
    V.field.check_semisimple(V.n)
    chi = character(V)
    field = V.field
    mults = Counter()
    for mu in partitions(V.n):
        psi = {lam: specht_character(mu, lam) for lam in chi}
        m = character_inner(chi, psi, V.n, field)
        if field.p == 0 and (not isinstance(m, int) or m < 0):
            raise RepresentationError(f"non-integral multiplicity {m} for {mu}")
        if m:
            mults[mu] = int(m)
    total = sum(m * len(standard_tableaux(mu)) for mu, m in mults.items())
    if total != V.dim:
        raise RepresentationError(
            f"multiplicities account for dimension {total}, representation has {V.dim}"
        )
    return mults


def width(V: SymRep) -> int:
    """Largest first row among the constituents of V (0 for the zero representation)."""
    return max((mu.first_row for mu in decompose(V)), default=0)


# -- isotypic components -------------------------------------------------------

def _content_weights(n: int, field: Field) -> tuple[list, dict]:
    """Coefficients ``a`` of g(x) = sum_r a_r x^r separating partitions of n by sum_box g(content)."""
    parts = partitions(n)
    contents = {mu: [c - r for r, c in mu.boxes()] for mu in parts}
    for degree in range(1, n + 1):
        for base in range(1, 50):
            coeffs = [base ** (r - 1) for r in range(1, degree + 1)]
            values = {
                mu: field(sum(a * c ** (r + 1) for c in contents[mu] for r, a in enumerate(coeffs)))
                for mu in parts
            }
            if len(set(values.values())) == len(parts):
                return [field(a) for a in coeffs], values
    raise SemisimplicityViolation(f"cannot separate the partitions of {n} over {field.spec}")


def central_element(V: SymRep) -> tuple[Matrix, dict]:
    """A central element of the group algebra acting on V, and its scalar on each S^mu.

    It is ``sum_k g(X_k)`` for the Jucys-Murphy elements ``X_k = sum_{i<k} (i k)``;
    on S^mu it acts by the sum of g over the contents of the boxes of mu, and g
    is chosen so that these scalars are distinct.
    """
    cache = V._cache
    if "central" in cache:
        return cache["central"]
    field = V.field
    field.check_semisimple(V.n)
    coeffs, values = _content_weights(V.n, field)
    Z = Matrix.zeros(field, V.dim, V.dim)
    for k in range(2, V.n + 1):
        X = Matrix.zeros(field, V.dim, V.dim)
        for i in range(1, k):
            X = X + apply_permutation(V, perms.transposition(V.n, i, k))
        # Horner: g(X) = X (a_1 + X (a_2 + ...))
        acc = None
        for a in reversed(coeffs):
            term = Matrix.identity(field, V.dim).scaled(a)
            acc = term if acc is None else term + X @ acc
        Z = Z + X @ acc
    cache["central"] = (Z, values)
    return Z, values


def isotypic_echelon(V: SymRep, shapes) -> Echelon:
    """Echelon basis of the sum of the isotypic components of V for the given shapes."""
    field = V.field
    Z, values = central_element(V)
    e = Echelon(field, V.dim)
    for mu in shapes:
        mu = as_partition(mu)
        K = kernel_basis(Z - Matrix.identity(field, V.dim).scaled(values[mu]))
        for c in K.columns():
            e.add(c)
    return e


def subrepresentation(V: SymRep, e: Echelon, check: bool = True) -> tuple[SymRep, EquivMap]:
    """Restrict V to an invariant subspace given by its echelon basis."""
    rows = e.rows()
    piv = sorted(e.pivots)
    basis = [dict(r) for r in rows]
    gens = []
    for g in V.gens:
        cols = []
        for b in basis:
            w = g.apply(b)
            coords = e.coordinates(w)
            if coords is None:
                raise RepresentationError("subspace is not invariant")
            cols.append({piv.index(c): x for c, x in coords.items()})
        gens.append(Matrix.from_columns(V.field, len(basis), cols))
    labels = tuple(V.labels[c] for c in piv)
    sub = SymRep(V.n, V.field, labels, tuple(gens))
    incl = EquivMap(sub, V, Matrix.from_columns(V.field, V.dim, basis))
    return sub, incl


def quotient_representation(V: SymRep, e: Echelon) -> tuple[SymRep, Matrix]:
    """V / span(e) with the induced action; returns the quotient and the projection matrix."""
    reps, P = quotient_from_echelon(e)
    S = section(reps, V.dim, V.field)
    gens = []
    for g in V.gens:
        G = P @ g
        # invariance of the subspace makes P g S well defined
        for r in e.rows():
            if G.apply(r):
                raise RepresentationError("subspace is not invariant; quotient action undefined")
        gens.append(G @ S)
    Qrep = SymRep(V.n, V.field, tuple(V.labels[j] for j in reps), tuple(gens))
    return Qrep, P


def width_subspace(V: SymRep, bound: int) -> EquivMap:
    """Inclusion of the sum of isotypic components whose first row is < bound."""
    shapes = [mu for mu in partitions(V.n) if mu.first_row < bound]
    e = isotypic_echelon(V, shapes)
    _, incl = subrepresentation(V, e)
    return incl
