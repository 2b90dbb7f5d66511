"""Free algebra U_r and its graded dual A(k) in dual-basis coordinates.

A :class:`DualVector` over ``k`` stores ``x_J = <f~_J, x>`` for every
k-multiindex ``J``, i.e. ``x = sum_J x_J f~_J^*``.  The only place where the
reversal ``f~_J = f~_{J(|k|)} ... f~_{J(1)}`` appears is :func:`word_of` /
:func:`j_of`; everything else works with multiindices or with words stored in
left-to-right multiplication order.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from . import combinatorics as cb

Word = tuple[int, ...]


def word_of(J: Sequence[int]) -> Word:
    """Letters of the monomial f~_J, left to right."""
    return tuple(reversed(tuple(J)))


def j_of(w: Sequence[int]) -> cb.MultiIndex:
    return tuple(reversed(tuple(w)))


def _q(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


class DualVector:
    """An element of A(k), stored by its pairings with all monomials f~_J."""

    __slots__ = ("k", "coords")

    def __init__(self, k: Sequence[int], coords: Mapping[Sequence[int], object] | None = None):
        self.k = cb.multidegree(k)
        self.coords: dict[cb.MultiIndex, Fraction] = {}
        r = len(self.k)
        for J, c in (coords or {}).items():
            J = tuple(J)
            if cb.degree_of(J, r) != self.k:
                raise ValueError(f"multiindex {J} is not a {self.k}-multiindex")
            c = _q(c)
            if c:
                self.coords[J] = self.coords.get(J, Fraction(0)) + c
                if not self.coords[J]:
                    del self.coords[J]

    @classmethod
    def zero(cls, k: Sequence[int]) -> "DualVector":
        return cls(k)

    @classmethod
    def indicator(cls, J: Sequence[int], r: int) -> "DualVector":
        """The dual basis element f~_J^*."""
        J = tuple(J)
        return cls(cb.degree_of(J, r), {J: 1})

    @property
    def r(self) -> int:
        return len(self.k)

    def __getitem__(self, J: Sequence[int]) -> Fraction:
        return self.coords.get(tuple(J), Fraction(0))

    def __iter__(self) -> Iterator[tuple[cb.MultiIndex, Fraction]]:
        return iter(sorted(self.coords.items()))

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other) -> bool:
        if isinstance(other, DualVector):
            return self.k == other.k and self.coords == other.coords
        if other == 0:
            return not self.coords
        return NotImplemented

    def __hash__(self):
        return hash((self.k, frozenset(self.coords.items())))

    def _check(self, other: "DualVector") -> None:
        if self.k != other.k:
            raise ValueError(f"degree mismatch {self.k} vs {other.k}")

    def __add__(self, other: "DualVector") -> "DualVector":
        self._check(other)
        out = dict(self.coords)
        for J, c in other.coords.items():
            out[J] = out.get(J, Fraction(0)) + c
        return DualVector(self.k, out)

    def __neg__(self) -> "DualVector":
        return DualVector(self.k, {J: -c for J, c in self.coords.items()})

    def __sub__(self, other: "DualVector") -> "DualVector":
        return self + (-other)

    def __mul__(self, c) -> "DualVector":
        c = _q(c)
        return DualVector(self.k, {J: c * v for J, v in self.coords.items()})

    __rmul__ = __mul__

    def __truediv__(self, c) -> "DualVector":
        return self * (1 / _q(c))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*f{''.join(map(str, J))}*" for J, c in self)
        return f"DualVector(k={self.k}: {body or '0'})"

    def dense(self) -> list[Fraction]:
        """Coordinates in :func:`enumerate_multiindices` order."""
        return [self[J] for J in cb.enumerate_multiindices(self.k)]

    def pair_word(self, w: Sequence[int]) -> Fraction:
        """<monomial w, x> for a word in left-to-right order."""
        return self[j_of(w)]

    def pair_free(self, elem: Mapping[Sequence[int], object]) -> Fraction:
        """Pairing with a free-algebra element given as ``{word: coeff}``."""
        total = Fraction(0)
        for w, c in elem.items():
            if cb.degree_of(w, self.r) == self.k:
                total += _q(c) * self.pair_word(w)
        return total

    def to_json(self) -> dict:
        return {
            "k": list(self.k),
            "coords": [{"J": list(J), "c": format_fraction(c)} for J, c in self],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "DualVector":
        return cls(data["k"], {tuple(e["J"]): parse_fraction(e["c"]) for e in data["coords"]})


def format_fraction(c: Fraction) -> str:
    c = _q(c)
    return f"{c.numerator}/{c.denominator}"


def parse_fraction(s) -> Fraction:
    return Fraction(s)


def star_dual(x: DualVector, y: DualVector) -> DualVector:
    """Star product in dual coordinates: dual of the shuffle coproduct.

    ``(x*y)_J`` sums ``x_{J|S1} y_{J|S2}`` over all position sets S1.
    """
    if x.r != y.r:
        raise ValueError("star product of different ranks")
    k = cb.add(x.k, y.k)
    out: dict[cb.MultiIndex, Fraction] = {}
    for J1, a in x.coords.items():
        for J2, b in y.coords.items():
            ab = a * b
            for J in cb.shuffles(J1, J2):
                out[J] = out.get(J, Fraction(0)) + ab
    return DualVector(k, out)


def star_power(x: DualVector, n: int, r: int | None = None) -> DualVector:
    if n == 0:
        return one(r if r is not None else x.r)
    out = x
    for _ in range(n - 1):
        out = star_dual(out, x)
    return out


def star_product(factors: Iterable[DualVector], r: int) -> DualVector:
    out = one(r)
    for f in factors:
        out = star_dual(out, f)
    return out


def one(r: int) -> DualVector:
    """Unit of the star algebra: the one-vertex graph in degree 0."""
    return DualVector((0,) * r, {(): 1})


def residue_sign(k: Sequence[int], i: int) -> int:
    """(-1)^(k_1 + ... + k_i - 1)."""
    return -1 if (sum(k[:i]) - 1) % 2 else 1


def residue_dual(x: DualVector, i: int) -> DualVector:
    """Coordinates of res^{(i)}_{k_i} x, dual to right multiplication by f~_i.

    ``<f~_J, res x> = (-1)^(k_1+...+k_i-1) <f~_J f~_i, x>`` and
    ``f~_J f~_i = f~_{(i,)+J}``.
    """
    if not 1 <= i <= x.r:
        raise ValueError(f"colour {i} out of range 1..{x.r}")
    if x.k[i - 1] == 0:
        raise ValueError(f"residue in colour {i} of a degree {x.k} element")
    s = residue_sign(x.k, i)
    k1 = cb.sub(x.k, cb.unit(x.r, i))
    return DualVector(k1, {J[1:]: s * c for J, c in x.coords.items() if J[0] == i})


def free_monomial_product(w1: Sequence[int], w2: Sequence[int]) -> Word:
    return tuple(w1) + tuple(w2)


def free_multiply(a: Mapping[Word, object], b: Mapping[Word, object]) -> dict[Word, Fraction]:
    """Product in U_r of elements given as ``{word: coeff}``."""
    out: dict[Word, Fraction] = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = tuple(w1) + tuple(w2)
            out[w] = out.get(w, Fraction(0)) + _q(c1) * _q(c2)
    return {w: c for w, c in out.items() if c}


def free_bracket(a: Mapping[Word, object], b: Mapping[Word, object]) -> dict[Word, Fraction]:
    ab = free_multiply(a, b)
    for w, c in free_multiply(b, a).items():
        ab[w] = ab.get(w, Fraction(0)) - c
    return {w: c for w, c in ab.items() if c}


def free_commutator_word(I: Sequence[int]) -> dict[Word, Fraction]:
    """[f~_I] = [...[[f~_{i1}, f~_{i2}], f~_{i3}], ..., f~_{in}] as a free element."""
    if not I:
        raise ValueError("empty commutator word")
    out: dict[Word, Fraction] = {(I[0],): Fraction(1)}
    for i in I[1:]:
        out = free_bracket(out, {(i,): Fraction(1)})
    return out
