"""Multidegrees, multiindices, shuffles and the group G_k = prod Sigma_{k_i}.

Conventions used throughout the package:

* a multidegree ``k`` is a tuple of ``r`` non-negative ints;
* a multiindex ``J`` is a tuple of colours in ``1..r`` (1-based), colour ``i``
  occurring exactly ``k[i-1]`` times;
* a group element is a tuple of per-colour permutations, each a tuple
  ``(pi(1), ..., pi(k_i))`` of 1-based positions.
"""
from __future__ import annotations

import itertools
from math import comb, factorial, prod
from typing import Iterator, Sequence

MultiDegree = tuple[int, ...]
MultiIndex = tuple[int, ...]


def multidegree(k: Sequence[int]) -> MultiDegree:
    k = tuple(int(x) for x in k)
    if not k:
        raise ValueError("a multidegree needs at least one entry")
    if any(x < 0 for x in k):
        raise ValueError(f"negative entry in multidegree {k}")
    return k


def unit(r: int, i: int) -> MultiDegree:
    """The multidegree 1_i (1-based ``i``)."""
    if not 1 <= i <= r:
        raise ValueError(f"colour {i} out of range 1..{r}")
    return tuple(int(j == i - 1) for j in range(r))


def add(k: Sequence[int], l: Sequence[int]) -> MultiDegree:
    if len(k) != len(l):
        raise ValueError("multidegrees of different length")
    return tuple(a + b for a, b in zip(k, l))


def sub(k: Sequence[int], l: Sequence[int]) -> MultiDegree:
    if len(k) != len(l):
        raise ValueError("multidegrees of different length")
    out = tuple(a - b for a, b in zip(k, l))
    if any(x < 0 for x in out):
        raise ValueError(f"{tuple(k)} - {tuple(l)} is not a multidegree")
    return out


def degree_of(J: Sequence[int], r: int) -> MultiDegree:
    k = [0] * r
    for c in J:
        if not 1 <= c <= r:
            raise ValueError(f"colour {c} out of range 1..{r}")
        k[c - 1] += 1
    return tuple(k)


def multinomial(k: Sequence[int]) -> int:
    return factorial(sum(k)) // prod(factorial(x) for x in k)


def degrees_up_to(r: int, n: int) -> Iterator[MultiDegree]:
    """All multidegrees of length ``r`` with ``0 < |k| <= n``, ordered by total."""
    for total in range(1, n + 1):
        for k in _compositions(total, r):
            yield k


def _compositions(total: int, r: int) -> Iterator[MultiDegree]:
    if r == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, r - 1):
            yield (first,) + rest


def enumerate_multiindices(k: Sequence[int]) -> list[MultiIndex]:
    """All k-multiindices in lexicographic order."""
    k = multidegree(k)
    out: list[MultiIndex] = []
    counts = list(k)
    n = sum(k)
    word: list[int] = []

    def rec() -> None:
        if len(word) == n:
            out.append(tuple(word))
            return
        for i, c in enumerate(counts):
            if c:
                counts[i] -= 1
                word.append(i + 1)
                rec()
                word.pop()
                counts[i] += 1

    rec()
    return out


def inversions(seq: Sequence[int]) -> int:
    """Number of pairs ``a < b`` with ``seq[a] > seq[b]``."""
    return sum(1 for a, b in itertools.combinations(seq, 2) if a > b)


def sign(J: Sequence[int]) -> int:
    """Parity of the (stable) sorting permutation of ``J``."""
    return -1 if inversions(J) % 2 else 1


def cmap(J: Sequence[int]) -> tuple[int, ...]:
    """Per-colour occurrence counter: position ``a`` gets the rank of ``J[a]``
    among the earlier occurrences of that colour (1-based)."""
    seen: dict[int, int] = {}
    out = []
    for c in J:
        seen[c] = seen.get(c, 0) + 1
        out.append(seen[c])
    return tuple(out)


def sign_and_cmap(J: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    return sign(J), cmap(J)


def shuffle_splits(n1: int, n2: int) -> Iterator[tuple[int, ...]]:
    """Position sets S1 (0-based, increasing) of size ``n1`` in ``range(n1+n2)``."""
    return itertools.combinations(range(n1 + n2), n1)


def interleave(J1: Sequence[int], J2: Sequence[int], S1: Sequence[int]) -> MultiIndex:
    n = len(J1) + len(J2)
    mark = set(S1)
    it1, it2 = iter(J1), iter(J2)
    return tuple(next(it1) if a in mark else next(it2) for a in range(n))


def shuffles(J1: Sequence[int], J2: Sequence[int]) -> list[MultiIndex]:
    """All shuffles of ``J1`` and ``J2`` with multiplicity, one per position set S1.

    There are ``binomial(|J1|+|J2|, |J1|)`` of them.
    """
    return [interleave(J1, J2, S1) for S1 in shuffle_splits(len(J1), len(J2))]


def perm_sign(perm: Sequence[int]) -> int:
    return -1 if inversions(perm) % 2 else 1


def group_elements(k: Sequence[int]) -> Iterator[tuple[tuple[tuple[int, ...], ...], int]]:
    """Iterate ``(pi, sgn(pi))`` over G_k.

    ``pi[i][j-1]`` is the image of ``j`` under the permutation of colour ``i+1``.
    """
    blocks = [list(itertools.permutations(range(1, ki + 1))) for ki in k]
    for pi in itertools.product(*blocks):
        s = 1
        for p in pi:
            s *= perm_sign(p)
        yield pi, s


def group_order(k: Sequence[int]) -> int:
    return prod(factorial(x) for x in k)


def binomial(n: int, m: int) -> int:
    return comb(n, m)
