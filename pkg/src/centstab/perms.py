"""Permutations of {1..n} in one-line notation: ``sigma[i-1]`` is the image of ``i``."""
from __future__ import annotations

from typing import Sequence

Perm = tuple[int, ...]


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(a: Sequence[int], b: Sequence[int]) -> Perm:
    """``a o b``: apply ``b`` first, then ``a``."""
    return tuple(a[x - 1] for x in b)


def inverse(a: Sequence[int]) -> Perm:
    out = [0] * len(a)
    for i, x in enumerate(a, start=1):
        out[x - 1] = i
    return tuple(out)


def transposition(n: int, i: int, j: int) -> Perm:
    s = list(range(1, n + 1))
    s[i - 1], s[j - 1] = j, i
    return tuple(s)


def extend(a: Sequence[int], n: int) -> Perm:
    """View a permutation of {1..m} as one of {1..n}, fixing m+1..n."""
    return tuple(a) + tuple(range(len(a) + 1, n + 1))


def is_permutation(a: Sequence[int]) -> bool:
    return sorted(a) == list(range(1, len(a) + 1))


def adjacent_word(sigma: Sequence[int]) -> list[int]:
    """Indices ``[j1, ..., jk]`` with ``sigma = s_j1 s_j2 ... s_jk`` (s_j = (j, j+1)).

    Found by bubble sort; the word has minimal length.
    """
    arr = list(sigma)
    swaps = []
    n = len(arr)
    for end in range(n - 1, 0, -1):
        for j in range(end):
            if arr[j] > arr[j + 1]:
                arr[j], arr[j + 1] = arr[j + 1], arr[j]
                swaps.append(j + 1)
    # sigma * s_{swaps[0]} * ... * s_{swaps[-1]} = id
    return swaps[::-1]


def sign(sigma: Sequence[int]) -> int:
    n = len(sigma)
    seen = [False] * n
    parity = 0
    for i in range(n):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = sigma[j] - 1
            length += 1
        parity += length - 1
    return -1 if parity % 2 else 1
