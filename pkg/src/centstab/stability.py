"""Central stabilization, boundary maps and the central stability chain complex."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from . import perms
from .combinatorics import (
    Partition,
    as_partition,
    bracket,
    dim_poly,
    format_partition,
    hatstab,
    stab,
    standard_tableaux,
)
from .linalg import Echelon, Field, Matrix, Q, _close, column_echelon, inverse, rank
from .specht import generalized_specht
from .symrep import (
    EquivMap,
    Induction,
    SymRep,
    decompose,
    isotypic_echelon,
    quotient_representation,
)


class PotentialStabilityViolation(ValueError):
    """A sequence is not potentially centrally stable."""


class InvalidSubrepresentation(ValueError):
    """A proposed quotient subspace is not closed under the group action."""


class ChainComplexError(ValueError):
    """Consecutive boundary maps do not compose to zero, or are not equivariant."""


# -- central stabilization -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class Stabilization:
    """W = Ind V_n, the relation subspace U, and the quotient W/U."""

    induction: Induction
    relations: Echelon
    rep: SymRep
    projection: Matrix
    natural_map: EquivMap

    @property
    def W(self) -> SymRep:
        return self.induction.rep


def stabilization_data(phi: EquivMap) -> Stabilization:
    V_prev, V = phi.source, phi.target
    n = V.n
    if V_prev.n != n - 1:
        raise ValueError(f"expected a map from an S_{n - 1}-rep, got S_{V_prev.n}")
    field = V.field
    ind = Induction(V, 1, "trivial")
    W = ind.rep
    incl = ind.inclusion.matrix
    phi_prime = incl @ phi.matrix
    s = W.gens[n - 1]  # (n, n+1)
    seeds = []
    p = field.p
    for v in phi_prime.columns():
        w = dict(v)
        for j, x in s.apply(v).items():
            y = w.get(j, 0) - x
            y = y % p if p else y
            if y:
                w[j] = y
            else:
                w.pop(j, None)
        if w:
            seeds.append(w)
    U = _close(Echelon(field, W.dim), seeds, W.gens)
    quot, P = quotient_representation(W, U)
    nat = EquivMap(V, quot, P @ incl)
    return Stabilization(ind, U, quot, P, nat)


def central_stabilization(phi: EquivMap) -> tuple[SymRep, EquivMap]:
    """Largest quotient of Ind_{S_n}^{S_{n+1}} V_n on which (n, n+1) fixes the image of V_{n-1}."""
    data = stabilization_data(phi)
    return data.rep, data.natural_map


# -- coherent sequences ---------------------------------------------------------

@dataclass(frozen=True, eq=False)
class CoherentSequence:
    """``reps[i]`` is a rep of S_{start+i}; ``maps[i]`` goes from reps[i] to reps[i+1]."""

    reps: tuple[SymRep, ...]
    maps: tuple[EquivMap, ...]

    def __post_init__(self):
        object.__setattr__(self, "reps", tuple(self.reps))
        object.__setattr__(self, "maps", tuple(self.maps))
        if len(self.maps) != len(self.reps) - 1:
            raise ValueError("need exactly one map between consecutive terms")
        for i, f in enumerate(self.maps):
            a, b = self.reps[i], self.reps[i + 1]
            if b.n != a.n + 1:
                raise ValueError("terms must be representations of consecutive symmetric groups")
            if f.matrix.shape != (b.dim, a.dim):
                raise ValueError(f"map {i} has the wrong shape")

    @property
    def start(self) -> int:
        return self.reps[0].n

    @property
    def end(self) -> int:
        return self.reps[-1].n

    def term(self, n: int) -> SymRep:
        return self.reps[n - self.start]

    def dims(self) -> list[int]:
        return [V.dim for V in self.reps]

    def composite(self, i: int, j: int) -> Matrix:
        """Matrix of V_i -> V_j (group indices)."""
        M = self.term(i).identity()
        for k in range(i, j):
            M = self.maps[k - self.start].matrix @ M
        return M

    def window(self, lo: int, hi: int) -> "CoherentSequence":
        a, b = lo - self.start, hi - self.start
        return CoherentSequence(self.reps[a:b + 1], self.maps[a:b])


def sequence_from_maps(maps: Sequence[EquivMap]) -> CoherentSequence:
    maps = list(maps)
    return CoherentSequence(tuple([maps[0].source] + [f.target for f in maps]), tuple(maps))


def potential_check(seq: CoherentSequence) -> bool:
    """Every image of V_i in V_j is fixed by S_{i+1..j}, checked on generators."""
    for i in range(seq.start, seq.end):
        for j in range(i + 1, seq.end + 1):
            C = seq.composite(i, j)
            Vj = seq.term(j)
            for l in range(i + 1, j):
                if Vj.gens[l - 1] @ C != C:
                    return False
    return True


def central_stabilization_sequence(phi: EquivMap, steps: int, quotient: Matrix | None = None) -> CoherentSequence:
    """``phi``, then ``steps - 1`` central stabilizations; ``steps`` counts the maps.

    ``quotient`` (columns in the coordinates of the first stabilization) is an
    S_{N+1}-subrepresentation divided out at the first step only.
    """
    if steps < 1:
        raise ValueError("steps must be at least 1")
    maps = [phi]
    prev = phi
    for step in range(steps - 1):
        rep, nat = central_stabilization(prev)
        if step == 0 and quotient is not None:
            e = column_echelon(quotient) if quotient.ncols else Echelon(rep.field, rep.dim)
            for c in quotient.columns():
                for g in rep.gens:
                    if not e.contains(g.apply(c)):
                        raise InvalidSubrepresentation("quotient subspace is not closed under the generators")
            rep2, P = quotient_representation(rep, e)
            nat = EquivMap(nat.source, rep2, P @ nat.matrix)
        maps.append(nat)
        prev = nat
    return sequence_from_maps(maps)


# -- boundary maps and the chain complex ----------------------------------------

def canonical_boundary_transversal(n: int, M: int) -> list[tuple[int, ...]]:
    """Minimal-length representatives of S_{n+2..M} in S_{n+1..M}: n+1 -> j, the rest in order."""
    out = []
    for j in range(n + 1, M + 1):
        sigma = list(range(1, n + 1))
        tail = [x for x in range(n + 1, M + 1) if x != j]
        img = [0] * (M - n)
        img[0] = j
        img[1:] = tail
        sigma.extend(img)
        out.append(tuple(sigma))
    return out


def _check_boundary_transversal(reps: Sequence[Sequence[int]], n: int, M: int):
    seen = set()
    for s in reps:
        if len(s) != M or not perms.is_permutation(s) or tuple(s[:n]) != tuple(range(1, n + 1)):
            raise ValueError("transversal elements must be permutations of 1..M fixing 1..n")
        seen.add(s[n])
    if seen != set(range(n + 1, M + 1)) or len(reps) != M - n:
        raise ValueError("not a transversal of S_{n+2..M} in S_{n+1..M}")


@dataclass(frozen=True, eq=False)
class BoundaryMap:
    source: Induction
    target: Induction
    matrix: Matrix

    def as_equiv_map(self) -> EquivMap:
        return EquivMap(self.source.rep, self.target.rep, self.matrix)


def _partial_prime(phi: EquivMap, tgt: Induction, reps) -> list[dict]:
    """partial'(v) = sum_sigma sign(sigma) sigma . phi(v) for each basis vector v."""
    p = phi.target.field.p
    top = tgt.identity_block
    d1 = phi.target.dim
    out = []
    for col in phi.matrix.columns():
        x = {top * d1 + i: a for i, a in col.items()}
        acc: dict = {}
        for sigma in reps:
            y = tgt.act(sigma, x)
            sg = perms.sign(sigma)
            for j, a in y.items():
                b = acc.get(j, 0) + sg * a
                b = b % p if p else b
                if b:
                    acc[j] = b
                else:
                    acc.pop(j, None)
        out.append(acc)
    return out


def partial_prime(phi: EquivMap, M: int, transversal=None) -> tuple[Induction, list[dict]]:
    """The vectors partial'(v) for the basis of V_n, inside Ind(V_{n+1}, M-n-1, sign)."""
    n = phi.source.n
    if M <= n:
        raise ValueError("M must exceed n")
    reps = canonical_boundary_transversal(n, M) if transversal is None else [tuple(s) for s in transversal]
    _check_boundary_transversal(reps, n, M)
    tgt = Induction(phi.target, M - n - 1, "sign")
    return tgt, _partial_prime(phi, tgt, reps)


def boundary_map(phi: EquivMap, M: int, transversal=None,
                 source: Induction | None = None, target: Induction | None = None) -> BoundaryMap:
    """The M-boundary map Ind(V_n, M-n, sign) -> Ind(V_{n+1}, M-n-1, sign) built from phi."""
    V, V1 = phi.source, phi.target
    n = V.n
    if M <= n:
        raise ValueError("M must exceed n")
    if V1.n != n + 1:
        raise ValueError("phi must map an S_n-rep to an S_{n+1}-rep")
    reps = canonical_boundary_transversal(n, M) if transversal is None else [tuple(s) for s in transversal]
    _check_boundary_transversal(reps, n, M)
    src = source or Induction(V, M - n, "sign")
    tgt = target or Induction(V1, M - n - 1, "sign")
    partial = _partial_prime(phi, tgt, reps)
    d = V.dim
    cols = [None] * src.rep.dim
    for b, c in enumerate(src.reps):
        c_ext = tuple(c)
        for i in range(d):
            cols[b * d + i] = tgt.act(c_ext, partial[i]) if partial[i] else {}
    return BoundaryMap(src, tgt, Matrix.from_columns(V.field, tgt.rep.dim, cols))


@dataclass(frozen=True, eq=False)
class ChainComplex:
    """Terms are S_M-reps; ``boundaries[i]`` maps terms[i] to terms[i+1]."""

    terms: tuple[SymRep, ...]
    boundaries: tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        object.__setattr__(self, "boundaries", tuple(self.boundaries))
        if len(self.boundaries) != max(len(self.terms) - 1, 0):
            raise ChainComplexError("need one boundary between consecutive terms")
        for i, d in enumerate(self.boundaries):
            if d.shape != (self.terms[i + 1].dim, self.terms[i].dim):
                raise ChainComplexError(f"boundary {i} has shape {d.shape}")
        for i in range(len(self.boundaries) - 1):
            if not (self.boundaries[i + 1] @ self.boundaries[i]).is_zero():
                raise ChainComplexError(f"d{i + 1} o d{i} is not zero")

    def is_equivariant(self) -> bool:
        for i, d in enumerate(self.boundaries):
            a, b = self.terms[i], self.terms[i + 1]
            for g, h in zip(a.gens, b.gens):
                if d @ g != h @ d:
                    return False
        return True

    def dims(self) -> list[int]:
        return [T.dim for T in self.terms]


def central_stability_complex(seq: CoherentSequence, M: int) -> ChainComplex:
    """Ind(V_n, M-n, sign) -> Ind(V_{n+1}, M-n-1, sign) -> ... -> Ind(V_m, M-m, sign)."""
    if M < seq.end:
        raise ValueError("M must be at least the last index of the sequence")
    if not potential_check(seq):
        raise PotentialStabilityViolation("sequence is not potentially centrally stable")
    inds = [Induction(V, M - V.n, "sign") for V in seq.reps]
    bounds = []
    for i, phi in enumerate(seq.maps):
        bounds.append(boundary_map(phi, M, source=inds[i], target=inds[i + 1]).matrix)
    return ChainComplex(tuple(ind.rep for ind in inds), tuple(bounds))


def homology_dims(C: ChainComplex) -> list[int]:
    """dim ker(out) - rank(in) at every position; the last term maps to 0.

    Position 0 has no incoming map.  Positions 1..end are the interior
    positions at which exactness is claimed.
    """
    ranks = [rank(d) for d in C.boundaries]
    out = []
    for i, T in enumerate(C.terms):
        r_out = ranks[i] if i < len(ranks) else 0
        r_in = ranks[i - 1] if i > 0 else 0
        out.append(T.dim - r_out - r_in)
    return out


def interior_homology(C: ChainComplex) -> list[int]:
    return homology_dims(C)[1:]


def cokernel(d: Matrix, target: SymRep) -> SymRep:
    """The quotient representation target / image(d)."""
    e = column_echelon(d)
    rep, _ = quotient_representation(target, e)
    return rep


# -- Specht stability certificate ---------------------------------------------

@dataclass
class CertificateTerm:
    n: int
    dim: int
    constituents: dict  # Partition -> multiplicity
    matched_next: bool | None = None

    def by_width(self) -> dict[int, list[tuple[Partition, int]]]:
        out: dict[int, list] = {}
        for mu, m in self.constituents.items():
            out.setdefault(mu.first_row, []).append((mu, m))
        return {w: sorted(v, key=lambda x: x[0].parts, reverse=True) for w, v in sorted(out.items(), reverse=True)}

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dim": self.dim,
            "width_graded": {
                str(w): [[format_partition(mu), m] for mu, m in items] for w, items in self.by_width().items()
            },
            "matched_next": self.matched_next,
        }


@dataclass
class Certificate:
    terms: list[CertificateTerm]
    stable_from: int | None

    def to_json(self) -> dict:
        return {"terms": [t.to_json() for t in self.terms], "stable_from": self.stable_from}


def _isotypic_coordinates(V: SymRep, constituents) -> tuple[dict, Matrix]:
    """Per-shape column ranges of an isotypic basis of V, and the inverse change of basis."""
    cols = []
    blocks = {}
    for mu in constituents:
        e = isotypic_echelon(V, [mu])
        start = len(cols)
        cols.extend(dict(r) for r in e.rows())
        blocks[mu] = (start, len(cols))
    B = Matrix.from_columns(V.field, V.dim, cols)
    return blocks, inverse(B)


def _maps_as_stabilization(phi: EquivMap, src_const, tgt_const) -> bool:
    """Each mu-isotypic piece of the source injects into the stab(mu)-isotypic piece of the target."""
    src_blocks, _ = _isotypic_coordinates(phi.source, src_const)
    tgt_blocks, tgt_inv = _isotypic_coordinates(phi.target, tgt_const)
    for mu, m in src_const.items():
        E = isotypic_echelon(phi.source, [mu]).basis()
        a, b = tgt_blocks[stab(mu)]
        proj = tgt_inv.submatrix(rows=range(a, b))
        if rank(proj @ phi.matrix @ E) != m * len(standard_tableaux(mu)):
            return False
    return True


def specht_stability_certificate(seq: CoherentSequence) -> Certificate:
    """Decompose each term and test whether each map is a stabilization map (semisimple case)."""
    for V in seq.reps:
        V.field.check_semisimple(V.n)
    terms = [CertificateTerm(V.n, V.dim, dict(decompose(V))) for V in seq.reps]
    for i, phi in enumerate(seq.maps):
        a, b = terms[i], terms[i + 1]
        expected = {}
        for mu, m in a.constituents.items():
            expected[stab(mu)] = expected.get(stab(mu), 0) + m
        ok = expected == b.constituents
        if ok and a.constituents:
            ok = _maps_as_stabilization(phi, a.constituents, b.constituents)
        a.matched_next = ok
    stable_from = None
    for i in range(len(terms) - 1, -1, -1):
        if i == len(terms) - 1 or terms[i].matched_next:
            if i < len(terms) - 1:
                stable_from = terms[i].n
        else:
            break
    return Certificate(terms, stable_from)


# -- dimension polynomial -------------------------------------------------------

def _poly_mul(a: list, b: list) -> list:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def binomial_poly(a: int, shift: int) -> list[Fraction]:
    """Coefficients (in n, low degree first) of C(a + n - shift, a)."""
    poly = [Fraction(1)]
    for i in range(1, a + 1):
        poly = _poly_mul(poly, [Fraction(i - shift, i), Fraction(1, i)])
    return poly


def eval_poly(coeffs: Sequence[Fraction], x) -> Fraction:
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


@dataclass
class DimensionReport:
    dims: dict[int, int]
    base: int | None
    polynomial: list[Fraction]
    agrees_from: int | None
    agrees_through: int | None

    def to_json(self) -> dict:
        return {
            "dims": {str(k): v for k, v in self.dims.items()},
            "base": self.base,
            "polynomial": [str(c) for c in self.polynomial],
            "agrees_from": self.agrees_from,
            "agrees_through": self.agrees_through,
        }


def dimension_polynomial_check(seq: CoherentSequence, certificate: Certificate | None = None) -> DimensionReport:
    """Compare term dimensions with the binomial-sum polynomial predicted from a stable term."""
    cert = certificate or specht_stability_certificate(seq)
    dims = {V.n: V.dim for V in seq.reps}
    base = cert.stable_from if cert.stable_from is not None else seq.end
    const = next(t.constituents for t in cert.terms if t.n == base)
    poly = [Fraction(0)]
    for mu, m in const.items():
        size = mu.n
        for t in standard_tableaux(mu):
            a = size - t.rows[0][-1]
            term = binomial_poly(a, base)
            poly = [x + m * y for x, y in zip(poly + [Fraction(0)] * (len(term) - len(poly)),
                                                 term + [Fraction(0)] * (len(poly) - len(term)))]
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    predicted = {n: sum(m * dim_poly(mu, n - base) for mu, m in const.items()) for n in dims if n >= base}
    assert all(eval_poly(poly, n) == predicted[n] for n in predicted)
    agree = [n for n in sorted(predicted) if predicted[n] == dims[n]]
    agrees_from = None
    if agree and agree[-1] == seq.end:
        agrees_from = seq.end
        for n in sorted(predicted, reverse=True):
            if predicted[n] != dims[n]:
                break
            agrees_from = n
    # extend backwards to earlier terms that happen to fit the polynomial too
    if agrees_from is not None:
        for n in range(agrees_from - 1, seq.start - 1, -1):
            if eval_poly(poly, n) != dims[n]:
                break
            agrees_from = n
    return DimensionReport(dims, base, poly, agrees_from, seq.end if agrees_from is not None else None)


# -- the short exact sequences of adding tails ---------------------------------

def tail_sequence_dims(nu, k: int, field: Field = Q) -> list[int]:
    """Dimensions along 0 -> S^{nu,nu[k]} -> Ind(S^nu, k) -> Ind(S^{hat nu}, k-1) -> ... -> S^{hat^k nu} -> 0.

    The first entry comes from the generalized Specht module; the others are
    binomial multiples of Specht dimensions.  Exactness forces the alternating
    sum to vanish.
    """
    nu = as_partition(nu)
    dims = [generalized_specht(nu, bracket(nu, k, weak=True), field).dim]
    for j in range(k + 1):
        mu = hatstab(nu, j)
        dims.append(len(standard_tableaux(mu)) * comb(mu.n + k - j, k - j))
    return dims


def alternating_sum(dims: Sequence[int]) -> int:
    return sum((-1) ** i * d for i, d in enumerate(dims))
