import random
from collections import Counter
from fractions import Fraction

import pytest

from centstab import perms
from centstab.combinatorics import Partition, partitions, stab, standard_tableaux
from centstab.linalg import Field, Matrix, Q, SemisimplicityViolation, rank
from centstab.specht import specht_module, stabilization_map
from centstab.stability import (
    ChainComplex,
    ChainComplexError,
    CoherentSequence,
    InvalidSubrepresentation,
    PotentialStabilityViolation,
    alternating_sum,
    boundary_map,
    canonical_boundary_transversal,
    central_stability_complex,
    central_stabilization,
    central_stabilization_sequence,
    cokernel,
    dimension_polynomial_check,
    homology_dims,
    partial_prime,
    potential_check,
    sequence_from_maps,
    specht_stability_certificate,
    stabilization_data,
    tail_sequence_dims,
)
from centstab.suites import build_seed
from centstab.symrep import EquivMap, character, decompose, permutation_rep, specht_character, trivial, zero_rep
from oracles import orbit_span_dim


def P(*parts):
    return Partition(parts)


def triv_seed(n, F=Q):
    return EquivMap(trivial(n - 1, F), trivial(n, F), Matrix.identity(F, 1))


def perm_seed(n, F=Q):
    return EquivMap(permutation_rep(n - 1, F), permutation_rep(n, F),
                    Matrix.from_columns(F, n, [{i: 1} for i in range(n - 1)]))


# -- central stabilization ------------------------------------------------------------

def test_stab_of_trivial_is_trivial():
    for n in range(2, 7):
        rep, nat = central_stabilization(triv_seed(n))
        assert rep.dim == 1 and rep.n == n + 1
        assert all(g == Matrix.identity(Q, 1) for g in rep.gens)
        assert nat.is_equivariant()


def test_stab_of_permutation_rep():
    for n in range(2, 7):
        rep, nat = central_stabilization(perm_seed(n))
        assert rep.dim == n + 1
        assert character(rep) == character(permutation_rep(n + 1, Q))
        assert nat.is_equivariant() and rank(nat.matrix) == n


def test_relations_match_full_orbit():
    # generator closure gives the same subspace as the span of the whole S_{n+1}-orbit
    for phi in (perm_seed(3), stabilization_map((2, 1), Q), stabilization_map((1, 1), Q)):
        data = stabilization_data(phi)
        W = data.W
        s = W.gens[phi.target.n - 1]
        seeds = []
        incl = data.induction.inclusion.matrix @ phi.matrix
        for v in incl.columns():
            w = dict(v)
            for j, x in s.apply(v).items():
                w[j] = w.get(j, 0) - x
            seeds.append({j: x for j, x in w.items() if x})
        assert orbit_span_dim(W, seeds) == data.relations.rank


def test_stab_of_specht_is_next_specht():
    for F in (Q, Field(11)):
        for n in range(1, 5):
            for mu in partitions(n):
                rep, _ = central_stabilization(stabilization_map(mu, F))
                target = stab(mu, 2)
                chi = character(rep)
                assert all(chi[lam] == F(specht_character(target, lam)) for lam in partitions(n + 2))


def test_stab_of_zero_map_is_induction():
    V = specht_module((2, 1), Q).rep
    phi = EquivMap(zero_rep(2, Q), V, Matrix.zeros(Q, 2, 0))
    rep, _ = central_stabilization(phi)
    assert rep.dim == 8


# -- sequences --------------------------------------------------------------------------

def test_sequence_examples():
    assert central_stabilization_sequence(triv_seed(2), 5).dims() == [1] * 6
    assert central_stabilization_sequence(perm_seed(2), 4).dims() == [1, 2, 3, 4, 5]
    seq = central_stabilization_sequence(stabilization_map((1, 1), Q), 3)
    assert seq.dims() == [1, 2, 3, 4]
    with pytest.raises(ValueError):
        central_stabilization_sequence(triv_seed(2), 0)


def test_sequence_validation():
    with pytest.raises(ValueError):
        CoherentSequence((trivial(1, Q), trivial(3, Q)), (EquivMap(trivial(1, Q), trivial(3, Q), Matrix.identity(Q, 1)),))


def test_quotient_at_first_step():
    # dividing Stab(P_1 -> P_2) = P_3 by its trivial line leaves the standard rep
    phi = perm_seed(2)
    rep, _ = central_stabilization(phi)
    ones = Matrix.from_lists(Q, [[1]] * rep.dim)
    seq = central_stabilization_sequence(phi, 4, quotient=ones)
    assert seq.dims()[2] == 2
    assert decompose(seq.reps[2]) == Counter({P(2, 1): 1})
    assert potential_check(seq)
    bad = Matrix.from_lists(Q, [[1]] + [[0]] * (rep.dim - 1))
    with pytest.raises(InvalidSubrepresentation):
        central_stabilization_sequence(phi, 3, quotient=bad)


def test_potential_check():
    assert potential_check(central_stabilization_sequence(triv_seed(2), 4))
    assert potential_check(central_stabilization_sequence(perm_seed(2), 4))
    # P_1 -> P_2 -> P_3 with [i] -> [i] built by hand
    maps = [perm_seed(n) for n in range(2, 5)]
    assert potential_check(sequence_from_maps(maps))
    # sending [1] to [1] + [3] in P_3 is not fixed by (2 3)
    bad = EquivMap(permutation_rep(2, Q), permutation_rep(3, Q),
                   Matrix.from_columns(Q, 3, [{0: 1, 2: 1}, {1: 1, 2: 1}]))
    assert bad.is_equivariant()
    seq = sequence_from_maps([perm_seed(2), bad])
    assert not potential_check(seq)
    with pytest.raises(PotentialStabilityViolation):
        central_stability_complex(seq, 4)


# -- boundary maps ------------------------------------------------------------------------

def test_boundary_with_one_step_is_phi_induced():
    phi = stabilization_map((2, 1), Q)
    b = boundary_map(phi, 4)
    assert b.source.rep.dim == 2 * 4 and b.target.rep.dim == 3
    # identity block goes to phi itself
    top = b.source.identity_block
    for i in range(2):
        assert b.matrix.column(top * 2 + i) == phi.matrix.column(i)
    assert b.as_equiv_map().is_equivariant()


def test_boundary_equivariant():
    for mu in [(1,), (2,), (1, 1), (2, 1)]:
        phi = stabilization_map(mu, Q)
        for M in range(phi.target.n, phi.target.n + 3):
            if M <= phi.source.n:
                continue
            assert boundary_map(phi, M).as_equiv_map().is_equivariant()


def random_transversal(rng, n, M):
    reps = []
    for j in range(n + 1, M + 1):
        rest = [x for x in range(n + 1, M + 1) if x != j]
        rng.shuffle(rest)
        reps.append(tuple(range(1, n + 1)) + (j,) + tuple(rest))
    rng.shuffle(reps)
    return reps


def test_boundary_independent_of_transversal():
    rng = random.Random(12)
    for mu in [(1,), (1, 1), (2, 1), (3,)]:
        phi = stabilization_map(mu, Q)
        n = phi.source.n
        for M in range(n + 1, n + 4):
            base = boundary_map(phi, M).matrix
            reversed_reps = canonical_boundary_transversal(n, M)[::-1]
            assert boundary_map(phi, M, transversal=reversed_reps).matrix == base
            transpositions = [perms.transposition(M, n + 1, j) if j > n + 1 else perms.identity(M)
                              for j in range(n + 1, M + 1)]
            assert boundary_map(phi, M, transversal=transpositions).matrix == base
            for _ in range(3):
                assert boundary_map(phi, M, transversal=random_transversal(rng, n, M)).matrix == base


def test_bad_boundary_transversal():
    phi = stabilization_map((1,), Q)
    with pytest.raises(ValueError):
        boundary_map(phi, 4, transversal=[(1, 2, 3, 4), (1, 2, 3, 4), (1, 4, 3, 2)])
    with pytest.raises(ValueError):
        boundary_map(phi, 1)


def test_partial_prime_is_antisymmetric():
    for mu in [(1,), (2, 1), (1, 1, 1)]:
        phi = stabilization_map(mu, Q)
        n = phi.source.n
        for M in range(n + 3, n + 5):
            tgt, vs = partial_prime(phi, M)
            for a in range(n + 1, M):
                # transpositions (a, a+1) with n+2 <= a: the group S_{n+2..M}
                if a < n + 2:
                    continue
                g = tgt.rep.gens[a - 1]
                for v in vs:
                    assert g.apply(v) == {j: -x for j, x in v.items()}


# -- chain complexes -----------------------------------------------------------------------

def test_complex_examples():
    seq = central_stabilization_sequence(stabilization_map((1,), Q), 2)
    C = central_stability_complex(seq, 3)
    assert C.dims() == [3, 3, 1]
    single = ChainComplex((trivial(3, Q),), ())
    assert homology_dims(single) == [1]


def test_homology_trivial_cases():
    V = trivial(2, Q)
    ident = ChainComplex((V, V), (Matrix.identity(Q, 1),))
    assert homology_dims(ident)[1] == 0
    W = permutation_rep(2, Q)
    zero = ChainComplex((W, W), (Matrix.zeros(Q, 2, 2),))
    assert homology_dims(zero) == [2, 2]


def test_complex_rejects_nonzero_composite():
    V = trivial(2, Q)
    I = Matrix.identity(Q, 1)
    with pytest.raises(ChainComplexError):
        ChainComplex((V, V, V), (I, I))


def test_dd_zero_for_specht_seeds():
    for n in range(1, 4):
        for mu in partitions(n):
            for M in range(n + 1, 8):
                seq = central_stabilization_sequence(stabilization_map(mu, Q), M - n)
                C = central_stability_complex(seq, M)
                for a, b in zip(C.boundaries, C.boundaries[1:]):
                    assert (b @ a).is_zero()
                assert C.is_equivariant()


def test_dd_zero_for_other_seeds():
    for phi in (triv_seed(2), perm_seed(2), perm_seed(3)):
        for M in range(phi.source.n + 1, phi.source.n + 4):
            seq = central_stabilization_sequence(phi, M - phi.source.n)
            central_stability_complex(seq, M)


@pytest.mark.parametrize("field", [Q, Field(7), Field(11)], ids=lambda f: f.spec)
def test_specht_resolution_exact(field):
    for n in range(1, 4):
        for mu in partitions(n):
            for k in range(1, 4):
                if field.p and field.p <= n + k:
                    continue
                seq = central_stabilization_sequence(stabilization_map(mu, field), k)
                C = central_stability_complex(seq, n + k)
                h = homology_dims(C)
                assert h[1:] == [0] * k, (mu, k, h)


def test_presentation_by_cokernel():
    seeds = [triv_seed(2), perm_seed(2), perm_seed(3)] + [stabilization_map(mu, Q) for mu in [(1,), (2, 1), (1, 1, 1)]]
    for phi in seeds:
        seq = central_stabilization_sequence(phi, 2)
        phi_n = seq.maps[1]
        b = boundary_map(phi_n, phi_n.source.n + 2)
        cok = cokernel(b.matrix, b.target.rep)
        rep, _ = central_stabilization(phi_n)
        assert cok.dim == rep.dim
        assert character(cok) == character(rep)


# -- certificates and dimension polynomials -------------------------------------------------------

def test_certificate_trivial():
    cert = specht_stability_certificate(central_stabilization_sequence(triv_seed(2), 3))
    assert [t.constituents for t in cert.terms] == [{P(n): 1} for n in range(1, 5)]
    assert cert.stable_from == 1


def test_certificate_permutation():
    cert = specht_stability_certificate(central_stabilization_sequence(perm_seed(3), 3))
    for t in cert.terms:
        assert t.constituents == {P(t.n): 1, P(t.n - 1, 1): 1}
    assert all(t.matched_next for t in cert.terms[:-1])
    assert cert.to_json()["terms"][0]["width_graded"] == {"2": [["2", 1]], "1": [["1,1", 1]]}


def test_certificate_specht_seed():
    cert = specht_stability_certificate(central_stabilization_sequence(stabilization_map((1, 1), Q), 4))
    for k, t in enumerate(cert.terms):
        assert t.constituents == {P(k + 1, 1): 1}
    assert cert.stable_from == 2


def test_certificate_detects_non_stabilization():
    # zero map: the multisets may match but the map is not injective on isotypic parts
    V2, V3 = specht_module((2,), Q).rep, specht_module((3,), Q).rep
    seq = sequence_from_maps([EquivMap(V2, V3, Matrix.zeros(Q, 1, 1))])
    cert = specht_stability_certificate(seq)
    assert cert.terms[0].matched_next is False


def test_certificate_requires_semisimple():
    with pytest.raises(SemisimplicityViolation):
        specht_stability_certificate(central_stabilization_sequence(triv_seed(2, Field(3)), 3))


def test_dimension_polynomials():
    r = dimension_polynomial_check(central_stabilization_sequence(triv_seed(2), 4))
    assert r.polynomial == [1] and r.agrees_from == 1
    r = dimension_polynomial_check(central_stabilization_sequence(perm_seed(2), 4))
    assert r.polynomial == [0, 1]
    r = dimension_polynomial_check(central_stabilization_sequence(stabilization_map((1, 1), Q), 4))
    assert r.polynomial == [-1, 1]
    r = dimension_polynomial_check(central_stabilization_sequence(stabilization_map((2, 1), Q), 3))
    # the terms are S^(n-1,1)
    for n, d in r.dims.items():
        assert d == len(standard_tableaux(Partition((n - 1, 1))))
    assert r.polynomial == [-1, 1]


def test_dimension_polynomial_quadratic():
    # S^(n-2,2) has dimension n(n-3)/2
    r = dimension_polynomial_check(central_stabilization_sequence(stabilization_map((2, 2), Q), 3))
    assert r.polynomial == [0, Fraction(-3, 2), Fraction(1, 2)]
    assert r.agrees_from == 4


# -- widths --------------------------------------------------------------------------------

def test_width_lower_bound():
    for N in range(1, 5):
        seeds = [EquivMap(zero_rep(N - 1, Q), specht_module(mu, Q).rep, Matrix.zeros(Q, specht_module(mu, Q).dim, 0))
                 for mu in partitions(N)]
        if N >= 2:
            seeds += [stabilization_map(mu, Q) for mu in partitions(N - 1)]
            seeds += [triv_seed(N), perm_seed(N)]
        for phi in seeds:
            seq = central_stabilization_sequence(phi, 4)
            for V in seq.reps[1:]:
                assert all(lam.first_row >= V.n - N for lam in decompose(V))


# -- tails --------------------------------------------------------------------------------

def test_tail_sequence_alternating_sum():
    for n in range(1, 4):
        for nu in partitions(n):
            for k in range(0, 4):
                d = tail_sequence_dims(nu, k)
                assert alternating_sum(d) == 0


def test_build_seed():
    assert build_seed("trivial", Q).source.n == 1
    assert build_seed("perm", Q).target.dim == 2
    assert build_seed("specht:2,1", Q).target.n == 4
    with pytest.raises(ValueError):
        build_seed("bogus", Q)
