"""Verification suites: named, filterable cases that each check one statement on one instance."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fnmatch import fnmatch
from math import comb, factorial
from typing import Callable, Iterator

from .combinatorics import (
    as_partition,
    bracket,
    conjugate,
    deletion_sequences,
    dim_poly,
    format_partition,
    hatstab,
    hook_length_count,
    partitions,
    stab,
    standard_tableaux,
)
from .linalg import Field, Matrix
from .specht import generalized_specht, specht_module, stabilization_map
from .stability import (
    alternating_sum,
    boundary_map,
    central_stability_complex,
    central_stabilization,
    central_stabilization_sequence,
    cokernel,
    homology_dims,
    tail_sequence_dims,
)
from .symrep import (
    EquivMap,
    character,
    character_inner,
    decompose,
    induce,
    permutation_rep,
    restrict,
    specht_character,
    tensor_sign,
    trivial,
    zero_rep,
)

SUITES = ("chain", "resolution", "restriction", "duality", "dimpoly")
# suites whose statements are about decompositions and so need char 0 or p > n
SEMISIMPLE = {"restriction", "dimpoly"}


@dataclass
class Case:
    id: str
    suite: str
    paper_statement: str
    run: Callable[[], dict]


@dataclass
class Result:
    id: str
    suite: str
    paper_statement: str
    passed: bool
    dims: list = field(default_factory=list)
    homology: list | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "suite": self.suite,
            "paper_statement": self.paper_statement,
            "pass": self.passed,
            "dims": list(self.dims),
            "homology": self.homology,
            "detail": self.detail,
        }


@dataclass(frozen=True)
class Bounds:
    max_n: int = 5
    max_k: int = 3
    max_m: int = 9


def _p(mu) -> str:
    return format_partition(as_partition(mu))


def _fmt_counter(c) -> str:
    return "+".join(f"{m}*({_p(mu)})" if m > 1 else f"({_p(mu)})" for mu, m in sorted(c.items(), key=lambda x: x[0].parts, reverse=True))


# -- chain ---------------------------------------------------------------------

def _chain_cases(F: Field, b: Bounds) -> Iterator[Case]:
    for n in range(1, min(b.max_n, b.max_m - 1) + 1):
        for mu in partitions(n):
            for M in range(n + 1, b.max_m + 1):
                steps = M - n

                def dd(mu=mu, M=M, steps=steps):
                    seq = central_stabilization_sequence(stabilization_map(mu, F), steps)
                    C = central_stability_complex(seq, M)  # raises if d o d != 0
                    return {"passed": C.is_equivariant(), "dims": C.dims()}

                yield Case(f"chain/dd/mu={_p(mu)}/M={M}", "chain", "Lemma 4.4", dd)

                def transversal(mu=mu, M=M, n=n):
                    phi = stabilization_map(mu, F)
                    rng = random.Random(f"{_p(mu)}:{M}")
                    base = boundary_map(phi, M).matrix
                    ok = True
                    for _ in range(5):
                        reps = []
                        for j in range(n + 1, M + 1):
                            rest = [x for x in range(n + 1, M + 1) if x != j]
                            rng.shuffle(rest)
                            reps.append(tuple(range(1, n + 1)) + (j,) + tuple(rest))
                        rng.shuffle(reps)
                        ok &= boundary_map(phi, M, transversal=reps).matrix == base
                    return {"passed": ok, "dims": [base.ncols, base.nrows]}

                yield Case(f"chain/transversal/mu={_p(mu)}/M={M}", "chain", "Lemma 4.1", transversal)

            if n + 2 <= b.max_m:
                def presentation(mu=mu, n=n):
                    seq = central_stabilization_sequence(stabilization_map(mu, F), 2)
                    bd = boundary_map(seq.maps[1], n + 3)
                    cok = cokernel(bd.matrix, bd.target.rep)
                    stab_rep, _ = central_stabilization(seq.maps[1])
                    ok = cok.dim == stab_rep.dim and character(cok) == character(stab_rep)
                    return {"passed": ok, "dims": [cok.dim, stab_rep.dim]}

                if n + 3 <= b.max_m:
                    yield Case(f"chain/presentation/mu={_p(mu)}", "chain", "Lemma 4.3", presentation)


# -- resolution ------------------------------------------------------------------

def _resolution_cases(F: Field, b: Bounds) -> Iterator[Case]:
    for n in range(1, b.max_n + 1):
        for mu in partitions(n):
            for k in range(1, b.max_k + 1):
                if n + k > b.max_m:
                    break

                def exact(mu=mu, k=k):
                    seq = central_stabilization_sequence(stabilization_map(mu, F), k)
                    C = central_stability_complex(seq, mu.n + k)
                    h = homology_dims(C)
                    return {"passed": not any(h[1:]), "dims": C.dims(), "homology": h}

                yield Case(f"resolution/exact/mu={_p(mu)}/k={k}", "resolution", "Prop. 6.2", exact)

            if n + 2 <= b.max_m:
                def stab_twice(mu=mu):
                    rep, _ = central_stabilization(stabilization_map(mu, F))
                    target = stab(mu, 2)
                    chi = character(rep)
                    ok = all(chi[lam] == F(specht_character(target, lam)) for lam in partitions(target.n))
                    return {"passed": ok, "dims": [rep.dim, len(standard_tableaux(target))]}

                yield Case(f"resolution/stab2/mu={_p(mu)}", "resolution", "Cor. 6.3", stab_twice)

            for k in range(0, b.max_k + 1):
                if n + k > b.max_m:
                    break

                def ses(mu=mu, k=k):
                    lhs = len(standard_tableaux(mu)) * comb(mu.n + k, k)
                    a = generalized_specht(mu, bracket(mu, k, weak=True), F).dim
                    h = hatstab(mu)
                    c = generalized_specht(h, bracket(h, k - 1, weak=True), F).dim if k >= 1 else 0
                    return {"passed": lhs == a + c, "dims": [a, lhs, c]}

                yield Case(f"resolution/ses/nu={_p(mu)}/k={k}", "resolution", "Thm. 6.4", ses)

                def tails(mu=mu, k=k):
                    d = tail_sequence_dims(mu, k, F)
                    return {"passed": alternating_sum(d) == 0, "dims": d}

                yield Case(f"resolution/tails/nu={_p(mu)}/k={k}", "resolution", "Cor. 6.5", tails)


# -- restriction -----------------------------------------------------------------

def _restriction_cases(F: Field, b: Bounds) -> Iterator[Case]:
    for m in range(1, b.max_n + 1):
        for mu in partitions(m):
            for k in range(0, min(2, m - 1, b.max_k) + 1):
                def rule(mu=mu, k=k):
                    V = restrict(specht_module(mu, F).rep, mu.n - k)
                    got = decompose(V)
                    want: dict = {}
                    for _, nu in deletion_sequences(mu, k):
                        want[nu] = want.get(nu, 0) + 1
                    return {"passed": dict(got) == want, "dims": [V.dim], "detail": _fmt_counter(got)}

                yield Case(f"restriction/branch/mu={_p(mu)}/k={k}", "restriction", "Thm. 6.1", rule)

    for n in range(1, b.max_n + 1):
        for mu in partitions(n):
            for k in range(1, b.max_k + 1):
                if n + k > b.max_n + b.max_k or n + k > b.max_m:
                    break

                def pieri(mu=mu, k=k):
                    rep, _ = induce(specht_module(mu, F).rep, k, "trivial")
                    got = decompose(rep)
                    ok = True
                    for nu in got:
                        ok &= nu.contains(mu) and all(
                            c <= 1 for c in _column_additions(mu, nu)
                        )
                    return {"passed": ok, "dims": [rep.dim], "detail": _fmt_counter(got)}

                if n <= 4:
                    yield Case(f"restriction/pieri/mu={_p(mu)}/k={k}", "restriction", "Pieri rule", pieri)


def _column_additions(mu, nu) -> list[int]:
    """Boxes of nu/mu in each column."""
    a, c = conjugate(mu).parts, conjugate(nu).parts
    return [c[j] - (a[j] if j < len(a) else 0) for j in range(len(c))]


# -- duality and property suites -------------------------------------------------

def _duality_cases(F: Field, b: Bounds) -> Iterator[Case]:
    for n in range(1, b.max_n + 1):
        for nu in partitions(n):
            def dual(nu=nu):
                chi = character(tensor_sign(specht_module(nu, F).rep))
                psi = character(specht_module(conjugate(nu), F).rep)
                return {"passed": chi == psi, "dims": [len(standard_tableaux(nu))]}

            yield Case(f"duality/sign/nu={_p(nu)}", "duality", "Sec. 6.5 duality", dual)

            def coxeter(nu=nu):
                V = specht_module(nu, F).rep
                return {"passed": V.check_coxeter(), "dims": [V.dim]}

            yield Case(f"duality/coxeter/mu={_p(nu)}", "duality", "Coxeter relations", coxeter)

        def squares(n=n):
            dims = [hook_length_count(mu) for mu in partitions(n)]
            ok = sum(d * d for d in dims) == factorial(n)
            ok &= dims == [len(standard_tableaux(mu)) for mu in partitions(n)]
            return {"passed": ok, "dims": dims}

        yield Case(f"duality/squares/n={n}", "duality", "sum of squared dimensions", squares)

        def orth(n=n):
            Q0 = Field(0)
            ps = partitions(n)
            ok = True
            for i, mu in enumerate(ps):
                chi = {lam: specht_character(mu, lam) for lam in ps}
                for nu in ps[i:]:
                    psi = {lam: specht_character(nu, lam) for lam in ps}
                    ok &= character_inner(chi, psi, n, Q0) == (1 if mu == nu else 0)
            return {"passed": ok, "dims": [len(ps)]}

        yield Case(f"duality/orthogonality/n={n}", "duality", "character orthogonality", orth)


# -- dimension polynomial and widths -----------------------------------------------

def _dimpoly_cases(F: Field, b: Bounds) -> Iterator[Case]:
    for n in range(1, b.max_n + 1):
        for mu in partitions(n):
            for k in range(0, b.max_k + 1):
                def poly(mu=mu, k=k):
                    lhs = dim_poly(mu, k)
                    rhs = len(standard_tableaux(stab(mu, k)))
                    return {"passed": lhs == rhs, "dims": [lhs, rhs]}

                yield Case(f"dimpoly/count/mu={_p(mu)}/k={k}", "dimpoly", "Sec. 8 dimension polynomial", poly)

    for N in range(1, min(b.max_n, 4) + 1):
        for mu in partitions(N):
            def widths(mu=mu, N=N):
                V = specht_module(mu, F).rep
                phi = EquivMap(zero_rep(N - 1, F), V, Matrix.zeros(F, V.dim, 0))
                seq = central_stabilization_sequence(phi, min(b.max_k, 3) + 1)
                ok = all(lam.first_row >= W.n - N for W in seq.reps[1:] for lam in decompose(W))
                return {"passed": ok, "dims": seq.dims()}

            yield Case(f"dimpoly/width/seed=0->{_p(mu)}", "dimpoly", "Lemma 7.1", widths)

    for name in ("trivial", "perm"):
        def seqdims(name=name):
            seq = central_stabilization_sequence(build_seed(name, F, 1), b.max_k + 1)
            want = [1] * len(seq.reps) if name == "trivial" else list(range(1, len(seq.reps) + 1))
            return {"passed": seq.dims() == want, "dims": seq.dims()}

        yield Case(f"dimpoly/example/{name}", "dimpoly", "Sec. 1 examples", seqdims)


# -- seeds -----------------------------------------------------------------------

def build_seed(spec: str, F: Field, start: int = 1) -> EquivMap:
    """``trivial``, ``perm`` or ``specht:<partition>`` as a map V_{N-1} -> V_N."""
    if spec == "trivial":
        return EquivMap(trivial(start, F), trivial(start + 1, F), Matrix.identity(F, 1))
    if spec == "perm":
        src, tgt = permutation_rep(start, F), permutation_rep(start + 1, F)
        return EquivMap(src, tgt, Matrix.from_columns(F, start + 1, [{i: 1} for i in range(start)]))
    if spec.startswith("specht:"):
        from .combinatorics import parse_partition

        mu = as_partition(parse_partition(spec[len("specht:"):]))
        if mu.n == 0:
            raise ValueError("specht seed needs a nonempty partition")
        return stabilization_map(mu, F)
    raise ValueError(f"unknown seed {spec!r}; expected trivial, perm or specht:<partition>")


_BUILDERS = {
    "chain": _chain_cases,
    "resolution": _resolution_cases,
    "restriction": _restriction_cases,
    "duality": _duality_cases,
    "dimpoly": _dimpoly_cases,
}


def cases(suite: str, F: Field, bounds: Bounds, pattern: str | None = None) -> list[Case]:
    names = SUITES if suite == "all" else (suite,)
    out = []
    for name in names:
        for c in _BUILDERS[name](F, bounds):
            if pattern is None or fnmatch(c.id, pattern):
                out.append(c)
    return out


def run_case(c: Case) -> Result:
    try:
        r = c.run()
    except Exception as exc:  # a crash is a failed case, reported with its message
        return Result(c.id, c.suite, c.paper_statement, False, detail=f"{type(exc).__name__}: {exc}")
    return Result(
        c.id, c.suite, c.paper_statement, bool(r["passed"]),
        r.get("dims", []), r.get("homology"), r.get("detail", ""),
    )
