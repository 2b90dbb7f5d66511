"""Ordered spanning trees on T(k) u {z} and their formal rational combinations.

Vertices are the root ``"z"`` or coordinate pairs ``(i, j)`` standing for
t^{(i)}_j.  An :class:`OrderedTree` keeps its edges oriented away from the
root as ``(tail, head)`` pairs; the position in ``edges`` is the edge number
minus one.

Equality in A(k) is tested through :func:`to_dual`, the pairing vector
against all k-multiindices, which is faithful on the skew-invariant part.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

from . import combinatorics as cb
from .shuffle import DualVector

ROOT = "z"
Vertex = Union[str, tuple[int, int]]


def vertices_of(k: Sequence[int]) -> list[tuple[int, int]]:
    """T(k) in canonical order t^{(1)}_1, ..., t^{(r)}_{k_r}."""
    return [(i + 1, j + 1) for i, ki in enumerate(k) for j in range(ki)]


@dataclass(frozen=True)
class OrderedTree:
    k: tuple[int, ...]
    edges: tuple[tuple[Vertex, Vertex], ...]

    def __init__(self, k: Sequence[int], edges: Iterable[Sequence[Vertex]]):
        k = cb.multidegree(k)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "edges", _orient(k, [tuple(_vertex(v) for v in e) for e in edges]))

    @property
    def heads(self) -> tuple[Vertex, ...]:
        return tuple(h for _, h in self.edges)

    def parent(self) -> dict[Vertex, Vertex]:
        return {h: t for t, h in self.edges}

    def edge_number(self, u: Vertex, v: Vertex) -> int | None:
        """1-based number of the edge joining ``u`` and ``v``, if present."""
        for a, (t, h) in enumerate(self.edges, 1):
            if {t, h} == {u, v}:
                return a
        return None

    def relabel(self, mapping: Mapping[Vertex, Vertex], k: Sequence[int] | None = None) -> "OrderedTree":
        k = self.k if k is None else k
        return OrderedTree(k, [(mapping.get(t, t), mapping.get(h, h)) for t, h in self.edges])

    def act(self, pi: Sequence[Sequence[int]]) -> "OrderedTree":
        """Apply a G_k element: t^{(i)}_j -> t^{(i)}_{pi_i(j)}."""
        mapping = {(i + 1, j + 1): (i + 1, p[j]) for i, p in enumerate(pi) for j in range(len(p))}
        return self.relabel(mapping)

    def branch(self, v: Vertex) -> list[Vertex]:
        """B(v): ``v`` and every vertex whose path to the root passes through ``v``."""
        children: dict[Vertex, list[Vertex]] = {}
        for t, h in self.edges:
            children.setdefault(t, []).append(h)
        out, stack = [], [v]
        while stack:
            u = stack.pop()
            out.append(u)
            stack.extend(children.get(u, ()))
        return out

    def to_json(self) -> dict:
        return {"k": list(self.k), "edges": [[_vjson(t), _vjson(h)] for t, h in self.edges]}

    @classmethod
    def from_json(cls, data: Mapping) -> "OrderedTree":
        return cls(data["k"], [(_vparse(a), _vparse(b)) for a, b in data["edges"]])

    def __repr__(self) -> str:
        parts = [f"{_vname(t)}-{a}-{_vname(h)}" for a, (t, h) in enumerate(self.edges, 1)]
        return f"Tree({', '.join(parts)})"

    # arithmetic promotes to TreeCombination
    def __add__(self, other):
        return TreeCombination.of(self) + other

    def __sub__(self, other):
        return TreeCombination.of(self) - other

    def __neg__(self):
        return TreeCombination.of(self, -1)

    def __mul__(self, c):
        return TreeCombination.of(self, c)

    __rmul__ = __mul__


def _vertex(v) -> Vertex:
    if v == ROOT:
        return ROOT
    i, j = v
    return (int(i), int(j))


def _vjson(v: Vertex):
    return ROOT if v == ROOT else [v[0], v[1]]


def _vparse(v) -> Vertex:
    return ROOT if v == ROOT else (int(v[0]), int(v[1]))


def _vname(v: Vertex) -> str:
    return "z" if v == ROOT else f"t{v[0]}_{v[1]}"


def _orient(k, edges) -> tuple[tuple[Vertex, Vertex], ...]:
    verts = set(vertices_of(k))
    if len(edges) != len(verts):
        raise ValueError(f"a spanning tree on |k|+1={len(verts) + 1} vertices needs {len(verts)} edges")
    adj: dict[Vertex, list[int]] = {}
    for a, e in enumerate(edges):
        if len(e) != 2 or e[0] == e[1]:
            raise ValueError(f"bad edge {e}")
        for v in e:
            if v != ROOT and v not in verts:
                raise ValueError(f"vertex {v} is not in T({k})")
            adj.setdefault(v, []).append(a)
    oriented: list = [None] * len(edges)
    seen = {ROOT}
    stack = [ROOT]
    while stack:
        u = stack.pop()
        for a in adj.get(u, ()):
            if oriented[a] is not None:
                continue
            v = edges[a][1] if edges[a][0] == u else edges[a][0]
            if v in seen:
                raise ValueError("edge set contains a cycle")
            seen.add(v)
            oriented[a] = (u, v)
            stack.append(v)
    if len(seen) != len(verts) + 1:
        raise ValueError("edge set is not connected")
    return tuple(oriented)


def str_tree(k: Sequence[int], path: Sequence[Vertex]) -> OrderedTree:
    """The string z -1- u_1 -2- u_2 ... -n- u_n."""
    chain = [ROOT] + [_vertex(v) for v in path]
    return OrderedTree(k, list(zip(chain, chain[1:])))


def string_tree(J: Sequence[int]) -> OrderedTree:
    """z -> t^{(J(1))}_{c(1)} -> ... -> t^{(J(n))}_{c(n)}."""
    J = tuple(J)
    r = max(J) if J else 1
    return string_tree_r(J, r)


def string_tree_r(J: Sequence[int], r: int) -> OrderedTree:
    J = tuple(J)
    c = cb.cmap(J)
    return str_tree(cb.degree_of(J, r), list(zip(J, c)))


def epsilon(T: OrderedTree) -> int:
    """Sign of the permutation taking the canonical variable order to the head sequence."""
    pos = {v: a for a, v in enumerate(vertices_of(T.k))}
    return cb.perm_sign([pos[h] for h in T.heads])


class TreeCombination:
    """Finite rational combination of ordered trees sharing one multidegree."""

    __slots__ = ("k", "terms")

    def __init__(self, k: Sequence[int], terms: Mapping[OrderedTree, object] | Iterable | None = None):
        self.k = cb.multidegree(k)
        self.terms: dict[OrderedTree, Fraction] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for T, c in items:
            self._add(T, Fraction(c))

    def _add(self, T: OrderedTree, c: Fraction) -> None:
        if T.k != self.k:
            raise ValueError(f"tree of degree {T.k} in a degree {self.k} combination")
        if not c:
            return
        v = self.terms.get(T, Fraction(0)) + c
        if v:
            self.terms[T] = v
        else:
            del self.terms[T]

    @classmethod
    def of(cls, T: OrderedTree, c=1) -> "TreeCombination":
        return cls(T.k, {T: c})

    def __iter__(self) -> Iterator[tuple[OrderedTree, Fraction]]:
        return iter(self.terms.items())

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "TreeCombination") -> "TreeCombination":
        if isinstance(other, OrderedTree):
            other = TreeCombination.of(other)
        out = TreeCombination(self.k, self.terms)
        for T, c in other:
            out._add(T, c)
        return out

    __radd__ = __add__

    def __neg__(self) -> "TreeCombination":
        return TreeCombination(self.k, {T: -c for T, c in self})

    def __sub__(self, other) -> "TreeCombination":
        if isinstance(other, OrderedTree):
            other = TreeCombination.of(other)
        return self + (-other)

    def __mul__(self, c) -> "TreeCombination":
        c = Fraction(c)
        return TreeCombination(self.k, {T: c * v for T, v in self})

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return "TreeCombination(" + " + ".join(f"{c}*{T!r}" for T, c in self) + ")"

    def to_json(self) -> dict:
        from .shuffle import format_fraction

        terms = sorted(self.terms.items(), key=lambda tc: repr(tc[0]))
        return {"k": list(self.k), "terms": [{"tree": T.to_json(), "c": format_fraction(c)} for T, c in terms]}

    @classmethod
    def from_json(cls, data: Mapping) -> "TreeCombination":
        return cls(data["k"], [(OrderedTree.from_json(e["tree"]), Fraction(e["c"])) for e in data["terms"]])


TreeLike = Union[OrderedTree, TreeCombination]


def as_combination(x: TreeLike) -> TreeCombination:
    return TreeCombination.of(x) if isinstance(x, OrderedTree) else x


def asym(x: TreeLike) -> TreeCombination:
    """sum over pi in G_k of sgn(pi) pi(x)."""
    x = as_combination(x)
    out = TreeCombination(x.k)
    for pi, s in cb.group_elements(x.k):
        for T, c in x:
            out._add(T.act(pi), s * c)
    return out


def sym(x: TreeLike) -> TreeCombination:
    """sum over pi in G_k of pi(x)."""
    x = as_combination(x)
    out = TreeCombination(x.k)
    for pi, _ in cb.group_elements(x.k):
        for T, c in x:
            out._add(T.act(pi), c)
    return out


def contract(T: OrderedTree, v: Vertex) -> tuple[int, list[tuple[Vertex, Vertex]]] | None:
    """Contract the edge z - v, keeping all other labels.

    Returns ``((-1)^(a-1), remaining oriented edges)`` or ``None`` when ``v`` is
    not adjacent to the root.
    """
    for a, (t, h) in enumerate(T.edges, 1):
        if t == ROOT and h == v:
            rest = [(ROOT if tt == v else tt, hh) for b, (tt, hh) in enumerate(T.edges, 1) if b != a]
            return (1 if a % 2 else -1), rest
    return None


def residue(T: TreeLike, i: int, j: int) -> TreeCombination:
    """res^{(i)}_j as a combination over k - 1_i.

    The contracted vertex becomes ``z`` and edges above it are renumbered
    down.  The remaining t^{(i)}_{j'}, j' > j, are shifted to j' - 1 so that
    the vertex set is again T(k - 1_i) (a no-op for j = k_i).
    """
    x = as_combination(T)
    r = len(x.k)
    if not (1 <= i <= r and 1 <= j <= x.k[i - 1]):
        raise IndexError(f"t^({i})_{j} is not a coordinate of T({x.k})")
    k1 = cb.sub(x.k, cb.unit(r, i))
    mapping = {(i, jj): (i, jj - 1) for jj in range(j + 1, x.k[i - 1] + 1)}
    out = TreeCombination(k1)
    for S, c in x:
        res = contract(S, (i, j))
        if res is None:
            continue
        s, rest = res
        rest = [(mapping.get(a, a), mapping.get(b, b)) for a, b in rest]
        out._add(OrderedTree(k1, rest), s * c)
    return out


def pair_tree(J: Sequence[int], T: OrderedTree) -> int:
    """<f~_J, T> for a single tree, as an integer in {-1, 0, 1}.

    Iterated root contractions in the order of ``J``: each step needs the next
    vertex to hang off the (contracted) root, and the accumulated sign
    prod (-1)^(a-1) is the sign of the edge-removal order.
    """
    J = tuple(J)
    c = cb.cmap(J)
    parent = T.parent()
    number = {h: a for a, h in enumerate(T.heads)}
    removed = {ROOT}
    order = []
    for colour, idx in zip(J, c):
        v = (colour, idx)
        if parent.get(v) not in removed:
            return 0
        removed.add(v)
        order.append(number[v])
    return cb.sign(J) * cb.perm_sign(order)


def pair_by_residues(J: Sequence[int], x: TreeLike) -> Fraction:
    """<f~_J, x> by literally iterating label-preserving residues."""
    J = tuple(J)
    c = cb.cmap(J)
    x = as_combination(x)
    total = Fraction(0)
    for T, coeff in x:
        s = cb.sign(J)
        edges = list(T.edges)
        ok = True
        for colour, idx in zip(J, c):
            v = (colour, idx)
            for a, (t, h) in enumerate(edges, 1):
                if t == ROOT and h == v:
                    s *= 1 if a % 2 else -1
                    edges = [(ROOT if tt == v else tt, hh) for b, (tt, hh) in enumerate(edges, 1) if b != a]
                    break
            else:
                ok = False
                break
        if ok:
            total += s * coeff
    return total


def pair(J: Sequence[int], x: TreeLike) -> Fraction:
    J = tuple(J)
    x = as_combination(x)
    if cb.degree_of(J, len(x.k)) != x.k:
        raise ValueError(f"multiindex {J} does not have degree {x.k}")
    return sum((c * pair_tree(J, T) for T, c in x), Fraction(0))


def to_dual(x: TreeLike) -> DualVector:
    """Pairing vector (<f~_J, x>)_J over all k-multiindices."""
    x = as_combination(x)
    coords: dict = {}
    Js = cb.enumerate_multiindices(x.k)
    for T, c in x:
        for J in Js:
            p = pair_tree(J, T)
            if p:
                coords[J] = coords.get(J, Fraction(0)) + c * p
    return DualVector(x.k, coords)


def dual_basis_element(J: Sequence[int], r: int | None = None) -> TreeCombination:
    """f~_J^* = sgn(J) asym(string tree of J)."""
    J = tuple(J)
    r = r if r is not None else max(J)
    return asym(string_tree_r(J, r)) * cb.sign(J)


def from_dual(x: DualVector) -> TreeCombination:
    """A tree representative of a dual vector: sum_J x_J f~_J^*."""
    out = TreeCombination(x.k)
    for J, c in x:
        out = out + dual_basis_element(J, x.r) * c
    return out


def glue(T1: OrderedTree, T2: OrderedTree) -> OrderedTree:
    """Shift T2's labels past T1's, number its edges after T1's, identify roots."""
    k = cb.add(T1.k, T2.k)
    shift = {v: (v[0], T1.k[v[0] - 1] + v[1]) for v in vertices_of(T2.k)}
    e2 = [(shift.get(t, t), shift.get(h, h)) for t, h in T2.edges]
    return OrderedTree(k, list(T1.edges) + e2)


def star_trees(T1: OrderedTree, T2: OrderedTree) -> TreeCombination:
    T = glue(T1, T2)
    denom = 1
    for a, b in zip(T1.k, T2.k):
        denom *= cb.group_order((a, b))
    return asym(T) * Fraction(epsilon(T1) * epsilon(T2) * epsilon(T), denom)


def star(x: TreeLike, y: TreeLike) -> TreeCombination:
    """Bilinear extension of :func:`star_trees`."""
    x, y = as_combination(x), as_combination(y)
    out = TreeCombination(cb.add(x.k, y.k))
    for T1, a in x:
        for T2, b in y:
            out = out + star_trees(T1, T2) * (a * b)
    return out


def r1_relation(T: OrderedTree, a: int, b: int) -> TreeCombination:
    """T + T' where T' swaps the numbers of edges ``a`` and ``b`` (zero in A)."""
    e = list(T.edges)
    e[a - 1], e[b - 1] = e[b - 1], e[a - 1]
    return TreeCombination(T.k, [(T, 1), (OrderedTree(T.k, e), 1)])


def r2_relation(T: OrderedTree, a: int, b: int) -> TreeCombination:
    """The three-term relation on edges ``a`` = {B, L} and ``b`` = {B, R}.

    The other two terms are (b = {B, L}, a = {L, R}) and (b = {L, R}, a = {B, R}).
    """
    ea, eb = set(T.edges[a - 1]), set(T.edges[b - 1])
    common = ea & eb
    if len(common) != 1:
        raise ValueError("edges a and b must share exactly one vertex")
    (B,) = common
    (L,) = ea - common
    (R,) = eb - common
    e = list(T.edges)

    def variant(ea_new, eb_new):
        f = list(e)
        f[a - 1], f[b - 1] = ea_new, eb_new
        return OrderedTree(T.k, f)

    return TreeCombination(T.k, [(T, 1), (variant((L, R), (B, L)), 1), (variant((B, R), (L, R)), 1)])


def random_tree(k: Sequence[int], rng: random.Random) -> OrderedTree:
    verts = vertices_of(k)
    rng.shuffle(verts)
    placed: list[Vertex] = [ROOT]
    edges = []
    for v in verts:
        edges.append((rng.choice(placed), v))
        placed.append(v)
    rng.shuffle(edges)
    return OrderedTree(k, edges)


def random_r2(k: Sequence[int], rng: random.Random) -> tuple[OrderedTree, int, int]:
    """A random tree with a pair of adjacent edges, for R2 sampling (needs |k| >= 2)."""
    while True:
        T = random_tree(k, rng)
        n = len(T.edges)
        pairs = [
            (a, b)
            for a in range(1, n + 1)
            for b in range(1, n + 1)
            if a != b and len(set(T.edges[a - 1]) & set(T.edges[b - 1])) == 1
        ]
        if pairs:
            a, b = rng.choice(pairs)
            return T, a, b
