"""Partitions, tableaux, tabloids and the counting functions built on them.

All objects are immutable.  Rows of diagrams are 1-indexed wherever they are
exposed to callers (deletion sequences), matching the usual way of talking
about Young diagrams; internally everything is plain tuples.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterator, Sequence


class ShapeError(ValueError):
    """Raised when a sequence of integers is not a valid (weak) partition."""


@dataclass(frozen=True, order=True)
class WeakPartition:
    """A finite sequence of nonnegative integers; zeros allowed anywhere."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise ShapeError(f"negative part in {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def boxes(self) -> list[tuple[int, int]]:
        """Boxes as (row, column) pairs, 0-indexed, in row-reading order."""
        return [(r, c) for r, p in enumerate(self.parts) for c in range(p)]

    def contains(self, other: "WeakPartition") -> bool:
        """True if ``other`` fits inside this shape row by row (other is a subshape)."""
        if len(other) > len(self):
            return all(p == 0 for p in other.parts[len(self):]) and all(
                a <= b for a, b in zip(other.parts, self.parts)
            )
        return all(a <= b for a, b in zip(other.parts, self.parts))

    def __str__(self) -> str:
        return format_partition(self)


@dataclass(frozen=True, order=True)
class Partition(WeakPartition):
    """A nonincreasing sequence of positive integers."""

    def __post_init__(self):
        super().__post_init__()
        parts = self.parts
        if any(p == 0 for p in parts):
            raise ShapeError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ShapeError(f"partition parts must be nonincreasing: {parts}")

    @property
    def first_row(self) -> int:
        return self.parts[0] if self.parts else 0


def as_partition(x) -> Partition:
    if isinstance(x, Partition):
        return x
    if isinstance(x, WeakPartition):
        return Partition(x.parts)
    if isinstance(x, str):
        return parse_partition(x)
    return Partition(tuple(x))


def as_weak(x) -> WeakPartition:
    if isinstance(x, WeakPartition):
        return x
    if isinstance(x, str):
        return WeakPartition(parse_partition(x, weak=True).parts)
    return WeakPartition(tuple(x))


def parse_partition(text: str, weak: bool = False) -> WeakPartition:
    """Parse ``"5,2,1"``; ``"0"`` (or the empty string) is the empty partition."""
    text = text.strip()
    if text in ("", "0"):
        return WeakPartition(()) if weak else Partition(())
    try:
        parts = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ShapeError(f"cannot parse partition {text!r}") from exc
    return WeakPartition(parts) if weak else Partition(parts)


def format_partition(shape: WeakPartition) -> str:
    if not shape.parts:
        return "0"
    return ",".join(str(p) for p in shape.parts)


# -- shape operations ---------------------------------------------------------

def conjugate(mu) -> Partition:
    mu = as_partition(mu)
    if not mu.parts:
        return mu
    return Partition(tuple(sum(1 for p in mu.parts if p >= j) for j in range(1, mu.parts[0] + 1)))


def stab(mu, k: int = 1) -> Partition:
    """Add ``k`` boxes to the first row."""
    mu = as_partition(mu)
    if k == 0:
        return mu
    if not mu.parts:
        return Partition((k,))
    return Partition((mu.parts[0] + k,) + mu.parts[1:])


def hatstab(nu, k: int = 1) -> Partition:
    """Append ``k`` new rows of length one, one at a time.

    ``hatstab(nu, 0)`` is ``nu``.  This is the iterated form that makes
    ``conjugate(stab(mu, k)) == hatstab(conjugate(mu), k)``.
    """
    nu = as_partition(nu)
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Partition(nu.parts + (1,) * k)


def bracket(nu, k: int, weak: bool = False) -> WeakPartition:
    """Add ``k`` boxes to the last row of ``nu``.

    With ``weak=False`` the result must be a partition and a ShapeError is
    raised otherwise.  With ``weak=True`` a WeakPartition is returned, which is
    what generalized Specht modules need (e.g. ``(1,1)[2] == (1,3)``).
    """
    nu = as_partition(nu)
    if k == 0:
        return nu if not weak else WeakPartition(nu.parts)
    if not nu.parts:
        parts = (k,)
    else:
        parts = nu.parts[:-1] + (nu.parts[-1] + k,)
    if weak:
        return WeakPartition(parts)
    return Partition(parts)


def deletable_rows(shape: Sequence[int]) -> list[int]:
    """0-indexed rows whose last box can be removed leaving a diagram."""
    parts = list(shape)
    out = []
    for i, p in enumerate(parts):
        below = parts[i + 1] if i + 1 < len(parts) else 0
        if p > 0 and p > below:
            out.append(i)
    return out


def deletion_sequences(mu, k: int) -> list[tuple[tuple[int, ...], Partition]]:
    """All length-``k`` deletion sequences of ``mu`` (rows 1-indexed) with their results."""
    mu = as_partition(mu)
    if k > mu.n:
        raise ValueError(f"cannot delete {k} boxes from a partition of {mu.n}")
    out = []

    def walk(parts: list[int], seq: tuple[int, ...]):
        if len(seq) == k:
            out.append((seq, Partition(tuple(p for p in parts if p > 0))))
            return
        for r in deletable_rows(parts):
            parts[r] -= 1
            walk(parts, seq + (r + 1,))
            parts[r] += 1

    walk(list(mu.parts), ())
    out.sort(key=lambda item: item[0])
    return out


# -- tableaux and tabloids ----------------------------------------------------

@dataclass(frozen=True, order=True)
class Tableau:
    """A filling of a (weak) diagram by 1..n, each used once; ``rows[i]`` is row i."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(x) for x in r) for r in self.rows)
        entries = sorted(x for r in rows for x in r)
        if entries != list(range(1, len(entries) + 1)):
            raise ShapeError(f"tableau entries must be 1..n exactly once: {rows}")
        object.__setattr__(self, "rows", rows)

    @property
    def shape(self) -> WeakPartition:
        return WeakPartition(tuple(len(r) for r in self.rows))

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        width = max((len(r) for r in self.rows), default=0)
        return [tuple(r[c] for r in self.rows if c < len(r)) for c in range(width)]

    def is_standard(self) -> bool:
        for r in self.rows:
            if any(r[i] >= r[i + 1] for i in range(len(r) - 1)):
                return False
        for i in range(len(self.rows) - 1):
            upper, lower = self.rows[i], self.rows[i + 1]
            if len(lower) > len(upper):
                return False
            if any(lower[c] <= upper[c] for c in range(len(lower))):
                return False
        return True

    def permute(self, sigma: Sequence[int]) -> "Tableau":
        """Apply a permutation given in one-line notation (``sigma[i-1]`` is the image of i)."""
        return Tableau(tuple(tuple(sigma[x - 1] for x in r) for r in self.rows))

    def tabloid(self) -> "Tabloid":
        return Tabloid(self.rows)

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "Tableau":
        return cls(tuple(tuple(r) for r in data))


@dataclass(frozen=True, order=True)
class Tabloid:
    """A tableau with the order inside each row forgotten; rows stored sorted."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(sorted(int(x) for x in r)) for r in self.rows))

    @property
    def shape(self) -> WeakPartition:
        return WeakPartition(tuple(len(r) for r in self.rows))

    def sort_key(self) -> tuple[int, ...]:
        return tuple(x for r in self.rows for x in r)

    def permute(self, sigma: Sequence[int]) -> "Tabloid":
        return Tabloid(tuple(tuple(sigma[x - 1] for x in r) for r in self.rows))

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @classmethod
    def from_json(cls, data) -> "Tabloid":
        return cls(tuple(tuple(r) for r in data))


def standard_tableaux(mu) -> list[Tableau]:
    """Standard tableaux of shape ``mu``, sorted by row-reading word."""
    return list(_standard_tableaux(as_partition(mu).parts))


@lru_cache(maxsize=None)
def _standard_tableaux(parts: tuple[int, ...]) -> tuple[Tableau, ...]:
    n = sum(parts)
    rows: list[list[int]] = [[] for _ in parts]
    found = []

    # place n, n-1, ... into removable corners
    def fill(shape: list[int], value: int):
        if value == 0:
            found.append(Tableau(tuple(tuple(r) for r in rows)))
            return
        for r in deletable_rows(shape):
            shape[r] -= 1
            rows[r].insert(0, value)
            fill(shape, value - 1)
            rows[r].pop(0)
            shape[r] += 1

    fill(list(parts), n)
    found.sort(key=lambda t: tuple(x for r in t.rows for x in r))
    return tuple(found)


def upper_right(t: Tableau) -> int:
    """Entry in the last box of the first row."""
    if not t.rows or not t.rows[0]:
        raise ValueError("tableau has an empty first row")
    return t.rows[0][-1]


def dim_poly(mu, k: int) -> int:
    """Dimension of the Specht module of ``stab(mu, k)``, as a sum of binomials in k."""
    mu = as_partition(mu)
    n = mu.n
    if n == 0:
        return 1
    return sum(comb(n - upper_right(t) + k, k) for t in standard_tableaux(mu))


def hook_length_count(mu) -> int:
    """Number of standard tableaux by the hook length formula."""
    mu = as_partition(mu)
    conj = conjugate(mu).parts
    hooks = prod(mu.parts[r] - c + conj[c] - r - 1 for r, c in mu.boxes())
    return factorial(mu.n) // hooks


# -- enumeration --------------------------------------------------------------

def partitions(n: int) -> list[Partition]:
    """Partitions of ``n`` in decreasing lexicographic order: (n), (n-1,1), ..."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return [Partition(p) for p in _partitions(n, n)]


def _partitions(n: int, largest: int) -> Iterator[tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            yield (first,) + rest


def tabloids(shape) -> list[Tabloid]:
    """Tabloids of a weak shape, ordered lexicographically by concatenated rows."""
    return list(_tabloids(as_weak(shape).parts))


@lru_cache(maxsize=None)
def _tabloids(parts: tuple[int, ...]) -> tuple[Tabloid, ...]:
    n = sum(parts)
    out = []

    def walk(remaining: tuple[int, ...], i: int, acc: list[tuple[int, ...]]):
        if i == len(parts):
            out.append(Tabloid(tuple(acc)))
            return
        for row in combinations(remaining, parts[i]):
            rest = tuple(x for x in remaining if x not in row)
            walk(rest, i + 1, acc + [row])

    walk(tuple(range(1, n + 1)), 0, [])
    out.sort(key=Tabloid.sort_key)
    return tuple(out)


def tabloid_count(shape) -> int:
    shape = as_weak(shape)
    return factorial(shape.n) // prod(factorial(p) for p in shape.parts)


def cycle_type(sigma: Sequence[int]) -> Partition:
    """Cycle type of a permutation in one-line notation (values 1..n)."""
    n = len(sigma)
    seen = [False] * n
    lengths = []
    for i in range(n):
        if seen[i]:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = sigma[j] - 1
            length += 1
        lengths.append(length)
    return Partition(tuple(sorted(lengths, reverse=True)))


def class_size(lam) -> int:
    """Number of permutations of cycle type ``lam``."""
    lam = as_partition(lam)
    denom = 1
    for length in set(lam.parts):
        m = lam.parts.count(length)
        denom *= length**m * factorial(m)
    return factorial(lam.n) // denom


def class_representative(lam) -> tuple[int, ...]:
    """The permutation (1..l1)(l1+1..l1+l2)... in one-line notation."""
    lam = as_partition(lam)
    sigma = []
    start = 1
    for length in lam.parts:
        sigma.extend(range(start + 1, start + length))
        sigma.append(start)
        start += length
    return tuple(sigma)
