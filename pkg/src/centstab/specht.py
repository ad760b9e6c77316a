"""Permutation modules on tabloids, polytabloids and (generalized) Specht modules."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations as iter_perms, product
from typing import Sequence

from . import perms
from .combinatorics import (
    Partition,
    Tableau,
    Tabloid,
    WeakPartition,
    as_partition,
    as_weak,
    stab,
    standard_tableaux,
    tabloids,
)
from .linalg import Echelon, Field, Matrix, inverse, row_echelon
from .symrep import EquivMap, RepresentationError, SymRep


def permutation_module(shape, field: Field) -> SymRep:
    """M^shape: the span of tabloids of a weak shape, permuted by S_n."""
    shape = as_weak(shape)
    basis = tabloids(shape)
    index = {t: i for i, t in enumerate(basis)}
    n = shape.n
    gens = []
    for i in range(1, n):
        s = perms.transposition(n, i, i + 1)
        gens.append(Matrix.permutation(field, [index[t.permute(s)] for t in basis]))
    return SymRep(n, field, tuple(basis), tuple(gens))


def _column_groups(t: Tableau, inner: WeakPartition | None) -> list[list[int]]:
    """Entries of ``t`` in each column of the sub-diagram ``inner`` (all of t if None)."""
    rows = t.rows
    if inner is None:
        return [list(c) for c in t.columns()]
    parts = inner.parts
    width = max(parts, default=0)
    cols = []
    for c in range(width):
        cols.append([rows[r][c] for r in range(len(parts)) if parts[r] > c])
    return cols


def column_group(t: Tableau, inner: WeakPartition | None = None) -> list[tuple[tuple[int, ...], int]]:
    """Elements of the column stabilizer as (one-line permutation, sign) pairs."""
    n = t.n
    per_column = []
    for col in _column_groups(t, inner):
        if len(col) < 2:
            continue
        options = []
        for img in iter_perms(col):
            mapping = dict(zip(col, img))
            options.append((mapping, perms.sign([col.index(x) + 1 for x in img])))
        per_column.append(options)
    out = []
    for choice in product(*per_column):
        sigma = list(range(1, n + 1))
        sgn = 1
        for mapping, s in choice:
            for a, b in mapping.items():
                sigma[a - 1] = b
            sgn *= s
        out.append((tuple(sigma), sgn))
    return out


def polytabloid(t: Tableau, field: Field, inner=None, index: dict | None = None) -> dict:
    """Coordinates of e_t (or e_t^inner) in the tabloid basis of M^{shape(t)}.

    ``inner`` restricts the column alternation to a sub-partition of the shape;
    an empty ``inner`` gives the tabloid {t} itself.
    """
    if inner is not None:
        inner = as_partition(inner)
        if not t.shape.contains(inner):
            raise ValueError(f"{inner} is not contained in {t.shape}")
    if index is None:
        index = {x: i for i, x in enumerate(tabloids(t.shape))}
    p = field.p
    vec: dict = {}
    for sigma, sgn in column_group(t, inner):
        j = index[t.permute(sigma).tabloid()]
        x = vec.get(j, 0) + sgn
        x = x % p if p else x
        if x:
            vec[j] = x
        else:
            vec.pop(j, None)
    return vec


@dataclass(frozen=True, eq=False)
class SpechtModule:
    """A submodule of a permutation module given by a spanning set of polytabloids.

    ``rep`` is the action in the basis ``generators`` (standard tableaux for
    the ordinary Specht module); ``embedding`` maps it into ``ambient``.
    """

    rep: SymRep
    ambient: SymRep
    embedding: EquivMap
    generators: tuple[Tableau, ...]
    inner: Partition
    _pivot_rows: tuple[int, ...]
    _solver: Matrix

    @property
    def dim(self) -> int:
        return self.rep.dim

    def coordinates(self, w: dict) -> dict:
        """Coordinates in the module basis of a vector of the ambient module lying in it."""
        sub = {k: w[r] for k, r in enumerate(self._pivot_rows) if r in w}
        x = self._solver.apply(sub)
        check = self.embedding.matrix.apply(x)
        if check != {j: v for j, v in w.items() if v}:
            raise RepresentationError("vector does not lie in the module")
        return x


def _build(inner: Partition, shape: WeakPartition, gens_tableaux: Sequence[Tableau], field: Field,
           ambient: SymRep | None = None) -> SpechtModule:
    if ambient is None:
        ambient = permutation_module(shape, field)
    index = {t: i for i, t in enumerate(ambient.labels)}
    vecs = [polytabloid(t, field, inner, index) for t in gens_tableaux]
    basis_t, basis_v = [], []
    e = Echelon(field, ambient.dim)
    for t, v in zip(gens_tableaux, vecs):
        if e.add(v) is not None:
            basis_t.append(t)
            basis_v.append(v)
    E = Matrix.from_columns(field, ambient.dim, basis_v)
    # rows where the embedding restricts to an invertible square matrix
    pivot_rows = tuple(sorted(row_echelon(E.T).pivots))
    solver = inverse(E.submatrix(rows=pivot_rows))
    n = shape.n
    d = len(basis_t)
    gens = []
    for i in range(1, n):
        s = perms.transposition(n, i, i + 1)
        cols = []
        for t in basis_t:
            w = polytabloid(t.permute(s), field, inner, index)
            sub = {k: w[r] for k, r in enumerate(pivot_rows) if r in w}
            cols.append(solver.apply(sub))
        gens.append(Matrix.from_columns(field, d, cols))
    rep = SymRep(n, field, tuple(basis_t), tuple(gens))
    emb = EquivMap(rep, ambient, E)
    return SpechtModule(rep, ambient, emb, tuple(basis_t), inner, pivot_rows, solver)


_CACHE: dict = {}


def specht_module(mu, field: Field) -> SpechtModule:
    """S^mu with its standard polytabloid basis, ordered like standard_tableaux(mu)."""
    mu = as_partition(mu)
    key = ("specht", mu.parts, field.p)
    if key not in _CACHE:
        st = standard_tableaux(mu)
        module = _build(mu, WeakPartition(mu.parts), st, field)
        if module.dim != len(st):
            raise RepresentationError("standard polytabloids are linearly dependent")
        _CACHE[key] = module
    return _CACHE[key]


def _generalized_generators(nu: Partition, eta: WeakPartition) -> list[Tableau]:
    """One tableau per distinct polytabloid e_t^nu up to sign, in a fixed order."""
    n = eta.n
    seen = set()
    out = []
    for filling in iter_perms(range(1, n + 1)):
        rows, pos = [], 0
        for length in eta.parts:
            rows.append(filling[pos:pos + length])
            pos += length
        t = Tableau(tuple(rows))
        # canonical key: nu-columns as sets, remaining row entries as sets
        cols = tuple(frozenset(c) for c in _column_groups(t, nu))
        rest = tuple(
            frozenset(rows[r][(nu.parts[r] if r < len(nu.parts) else 0):]) for r in range(len(rows))
        )
        key = (cols, rest)
        if key in seen:
            continue
        seen.add(key)
        out.append(t)
    return out


def generalized_specht(nu, eta, field: Field) -> SpechtModule:
    """S^{nu,eta}: span in M^eta of the polytabloids alternating over nu's columns only.

    The basis is the set of generators that were independent of the earlier
    ones, scanning tableaux in lexicographic order of their reading word.
    """
    nu = as_partition(nu)
    eta = as_weak(eta)
    if not eta.contains(nu):
        raise ValueError(f"{nu} is not contained in {eta}")
    key = ("gen", nu.parts, eta.parts, field.p)
    if key not in _CACHE:
        _CACHE[key] = _build(nu, eta, _generalized_generators(nu, eta), field)
    return _CACHE[key]


def stabilization_map(mu, field: Field) -> EquivMap:
    """S^mu -> S^{stab mu} induced by appending n+1 to the first row of each tabloid."""
    mu = as_partition(mu)
    src = specht_module(mu, field)
    tgt = specht_module(stab(mu), field)
    n = mu.n
    tgt_index = {t: i for i, t in enumerate(tgt.ambient.labels)}
    # tabloid-level map M^mu -> M^{stab mu}
    images = []
    for tab in src.ambient.labels:
        rows = list(tab.rows) or [()]
        rows[0] = rows[0] + (n + 1,)
        images.append(tgt_index[Tabloid(tuple(rows))])
    cols = []
    for v in src.embedding.matrix.columns():
        w = {images[j]: x for j, x in v.items()}
        cols.append(tgt.coordinates(w))
    return EquivMap(src.rep, tgt.rep, Matrix.from_columns(field, tgt.dim, cols))
