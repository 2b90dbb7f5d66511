"""Root data, matrix realizations and PBW straightening for A, B, C, D.

Roots are integer (or half-integer free) vectors in an orthonormal e-basis.
For each type the positive roots are listed in the PBW order used
throughout, each with its commutator word ``I`` and scalar prefactor, so that
``F_beta = prefactor * [f_I]`` with ``[f_I] = [...[[f_{i1}, f_{i2}], f_{i3}], ..., f_{in}]``.

Structure constants are read off a faithful matrix realization: the
defining representation, with B/C/D preserving an antidiagonal form.  Any
nonzero choice of the simple root vectors gives the same constants because
the ``F_beta`` are fixed commutator words in them.

Type A takes the matrix size as its rank parameter (``A 3`` is sl_3,
i.e. A_2); B, C, D take the Lie rank.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Iterable, Mapping, Sequence

Matrix = dict[tuple[int, int], Fraction]
Root = tuple[int, ...]
PBWElement = dict[tuple[int, ...], Fraction]


class RealizationError(RuntimeError):
    """A matrix sanity check failed; this indicates a bug, not bad input."""


# ---------------------------------------------------------------- matrices


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (i, j), v in b.items():
        rows.setdefault(i, []).append((j, v))
    out: Matrix = {}
    for (i, j), v in a.items():
        for l, w in rows.get(j, ()):
            out[i, l] = out.get((i, l), Fraction(0)) + v * w
    return {key: v for key, v in out.items() if v}


def mat_add(a: Matrix, b: Matrix, cb: Fraction = Fraction(1)) -> Matrix:
    out = dict(a)
    for key, v in b.items():
        out[key] = out.get(key, Fraction(0)) + cb * v
    return {key: v for key, v in out.items() if v}


def mat_scale(a: Matrix, c) -> Matrix:
    c = Fraction(c)
    return {key: c * v for key, v in a.items() if c * v}


def mat_transpose(a: Matrix) -> Matrix:
    return {(j, i): v for (i, j), v in a.items()}


def bracket(a: Matrix, b: Matrix) -> Matrix:
    return mat_add(mat_mul(a, b), mat_mul(b, a), Fraction(-1))


def commutator(gens: Sequence[Matrix], I: Sequence[int]) -> Matrix:
    """[f_I] for 1-based generator indices."""
    out = gens[I[0] - 1]
    for i in I[1:]:
        out = bracket(out, gens[i - 1])
    return out


def proportional(a: Matrix, b: Matrix) -> Fraction | None:
    """``c`` with ``a == c * b`` (``b`` nonzero), or ``None``."""
    if not b:
        raise ValueError("reference matrix is zero")
    key = next(iter(b))
    c = a.get(key, Fraction(0)) / b[key]
    return c if mat_add(a, b, -c) == {} else None


# ---------------------------------------------------------------- root data


@dataclass(frozen=True)
class PositiveRoot:
    vector: Root
    word: tuple[int, ...]
    prefactor: Fraction
    label: str


@dataclass
class MatrixRealization:
    dim: int
    generators: list[Matrix]
    weights: list[Root]  # e-basis weight of each basis vector
    form: Matrix | None = None

    def in_algebra(self, x: Matrix) -> bool:
        if self.form is None:
            return sum(x.get((a, a), Fraction(0)) for a in range(self.dim)) == 0
        g = self.form
        return mat_add(mat_mul(mat_transpose(x), g), mat_mul(g, x)) == {}

    def root_of(self, x: Matrix) -> Root | None:
        """The weight of ``x`` under the diagonal Cartan, if ``x`` is a weight vector."""
        found = None
        for a, b in x:
            w = tuple(p - q for p, q in zip(self.weights[a], self.weights[b]))
            if found is None:
                found = w
            elif w != found:
                return None
        return found


@dataclass
class RootSystem:
    type: str
    rank: int  # Lie rank = number of simple roots
    simple: list[Root]
    roots: list[PositiveRoot]
    realization: MatrixRealization
    F: list[Matrix] = field(default_factory=list)
    constants: dict[tuple[int, int], tuple[int, Fraction]] = field(default_factory=dict)
    simple_index: list[int] = field(default_factory=list)
    simple_scale: list[Fraction] = field(default_factory=list)
    _memo: dict = field(default_factory=dict, repr=False)

    @property
    def name(self) -> str:
        return f"{self.type}{self.rank}"

    @property
    def m(self) -> int:
        return len(self.roots)

    def degree(self, j: int) -> tuple[int, ...]:
        """k^{(j)}: simple-root coordinates of beta_j (0-based ``j``)."""
        return simple_coordinates(self.roots[j].vector, self.simple)

    def degrees(self) -> list[tuple[int, ...]]:
        return [self.degree(j) for j in range(self.m)]

    def index_of(self, vector: Sequence[int]) -> int | None:
        vector = tuple(vector)
        for j, b in enumerate(self.roots):
            if b.vector == vector:
                return j
        return None

    def monomials_of_degree(self, k: Sequence[int]) -> list[tuple[int, ...]]:
        """All exponent vectors ``p`` with sum_j p_j k^{(j)} = k, lexicographically."""
        k = tuple(k)
        degs = self.degrees()
        out: list[tuple[int, ...]] = []

        def rec(j: int, rest: tuple[int, ...], p: list[int]) -> None:
            if j == self.m:
                if not any(rest):
                    out.append(tuple(p))
                return
            d = degs[j]
            e = 0
            cur = rest
            while all(x >= 0 for x in cur):
                p.append(e)
                rec(j + 1, cur, p)
                p.pop()
                e += 1
                cur = tuple(x - y for x, y in zip(cur, d))

        rec(0, k, [])
        return sorted(out)

    # ---------------------------------------------------------- PBW algebra

    def _mul_letter(self, s: tuple[int, ...], c: int) -> dict[tuple[int, ...], Fraction]:
        """(sorted monomial s) * F_c, straightened; memoized."""
        key = (s, c)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if not s or s[-1] <= c:
            out = {s + (c,): Fraction(1)}
        else:
            b, head = s[-1], s[:-1]
            out = {}
            for m1, a1 in self._mul_letter(head, c).items():
                for m2, a2 in self._mul_letter(m1, b).items():
                    out[m2] = out.get(m2, Fraction(0)) + a1 * a2
            sc = self.constants.get((b, c))
            if sc is not None:
                g, coef = sc
                for m1, a1 in self._mul_letter(head, g).items():
                    out[m1] = out.get(m1, Fraction(0)) + coef * a1
            out = {m_: v for m_, v in out.items() if v}
        self._memo[key] = out
        return out

    def _to_exponents(self, s: tuple[int, ...]) -> tuple[int, ...]:
        p = [0] * self.m
        for j in s:
            p[j] += 1
        return tuple(p)

    def _from_exponents(self, p: Sequence[int]) -> tuple[int, ...]:
        return tuple(j for j, e in enumerate(p) for _ in range(e))

    def _straighten_sorted(self, letters: Iterable[int]) -> dict[tuple[int, ...], Fraction]:
        x = {(): Fraction(1)}
        for c in letters:
            y: dict[tuple[int, ...], Fraction] = {}
            for s, a in x.items():
                for s2, b in self._mul_letter(s, c).items():
                    y[s2] = y.get(s2, Fraction(0)) + a * b
            x = {s: v for s, v in y.items() if v}
        return x

    def straighten(self, letters: Sequence[int]) -> PBWElement:
        """PBW expansion of F_{letters[0]} F_{letters[1]} ... (0-based root indices)."""
        return {self._to_exponents(s): v for s, v in self._straighten_sorted(letters).items()}

    def multiply(self, x: Mapping[Sequence[int], Fraction], letters: Sequence[int]) -> PBWElement:
        """x * F_{letters[0]} * F_{letters[1]} ..., straightened."""
        out: dict[tuple[int, ...], Fraction] = {}
        for p, a in x.items():
            for s, b in self._straighten_sorted(self._from_exponents(p) + tuple(letters)).items():
                e = self._to_exponents(s)
                out[e] = out.get(e, Fraction(0)) + Fraction(a) * b
        return {e: v for e, v in out.items() if v}

    def q_map(self, word: Sequence[int]) -> PBWElement:
        """Image of the free monomial f~_{w1} f~_{w2} ... under f~_i -> f_i."""
        scale = Fraction(1)
        letters = []
        for i in word:
            letters.append(self.simple_index[i - 1])
            scale /= self.simple_scale[i - 1]
        return {p: scale * v for p, v in self.straighten(letters).items()}

    def multiply_by_generator(self, x: Mapping[Sequence[int], Fraction], i: int) -> PBWElement:
        """x * f_i in the PBW basis."""
        s = 1 / self.simple_scale[i - 1]
        return {p: s * v for p, v in self.multiply(x, [self.simple_index[i - 1]]).items()}

    def pbw_matrix(self, x: Mapping[Sequence[int], Fraction]) -> Matrix:
        """Evaluate a PBW element in the defining representation."""
        dim = self.realization.dim
        out: Matrix = {}
        for p, a in x.items():
            m: Matrix = {(d, d): Fraction(1) for d in range(dim)}
            for j in self._from_exponents(p):
                m = mat_mul(m, self.F[j])
            out = mat_add(out, m, Fraction(a))
        return out

    def to_json(self) -> dict:
        return {
            "algebra": self.name,
            "simple_roots": [list(a) for a in self.simple],
            "positive_roots": [
                {
                    "index": j + 1,
                    "root": list(b.vector),
                    "label": b.label,
                    "degree": list(self.degree(j)),
                    "word": list(b.word),
                    "prefactor": f"{b.prefactor.numerator}/{b.prefactor.denominator}",
                }
                for j, b in enumerate(self.roots)
            ],
        }


def simple_coordinates(beta: Sequence[int], simple: Sequence[Root]) -> tuple[int, ...]:
    """Solve beta = sum_i k_i alpha_i exactly (Gaussian elimination over Q)."""
    n = len(beta)
    r = len(simple)
    rows = [[Fraction(simple[i][a]) for i in range(r)] + [Fraction(beta[a])] for a in range(n)]
    piv_cols = []
    row = 0
    for col in range(r):
        pr = next((q for q in range(row, n) if rows[q][col] != 0), None)
        if pr is None:
            continue
        rows[row], rows[pr] = rows[pr], rows[row]
        pv = rows[row][col]
        rows[row] = [x / pv for x in rows[row]]
        for q in range(n):
            if q != row and rows[q][col] != 0:
                f = rows[q][col]
                rows[q] = [x - f * y for x, y in zip(rows[q], rows[row])]
        piv_cols.append(col)
        row += 1
    if any(rows[q][r] != 0 for q in range(row, n)):
        raise ValueError(f"{tuple(beta)} is not in the root lattice")
    k = [Fraction(0)] * r
    for q, col in enumerate(piv_cols):
        k[col] = rows[q][r]
    if any(x.denominator != 1 or x < 0 for x in k):
        raise ValueError(f"{tuple(beta)} is not a positive root combination: {k}")
    return tuple(int(x) for x in k)


def _e(n: int, *terms: tuple[int, int]) -> Root:
    v = [0] * n
    for idx, c in terms:
        v[idx - 1] += c
    return tuple(v)


def _rng(a: int, b: int) -> tuple[int, ...]:
    """a, a+-1, ..., b inclusive (empty when the step would overshoot is never needed)."""
    step = 1 if b >= a else -1
    return tuple(range(a, b + step, step))


def _data_A(n: int):
    simple = [_e(n, (i, 1), (i + 1, -1)) for i in range(1, n)]
    roots = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            roots.append(PositiveRoot(_e(n, (i, 1), (j, -1)), _rng(j - 1, i), Fraction(1), f"e{i}-e{j}"))
    return simple, roots


def _data_B(r: int, e2r_prefactor=None):
    simple = [_e(r, (i, 1), (i + 1, -1)) for i in range(1, r)] + [_e(r, (r, 1))]
    roots = []
    for i in range(r, 0, -1):
        for j in range(i + 1, r + 1):
            s = (-1) ** ((comb(j - i + 1, 2) + (r - j + 1)) % 2)
            roots.append(PositiveRoot(_e(r, (i, 1), (j, 1)), _rng(i, r) + _rng(r, j), Fraction(s), f"e{i}+e{j}"))
        roots.append(PositiveRoot(_e(r, (i, 1)), _rng(r, i), Fraction(1), f"e{i}"))
        for j in range(r, i, -1):
            roots.append(PositiveRoot(_e(r, (i, 1), (j, -1)), _rng(j - 1, i), Fraction(1), f"e{i}-e{j}"))
    return simple, roots


def _data_C(r: int):
    simple = [_e(r, (i, 1), (i + 1, -1)) for i in range(1, r)] + [_e(r, (r, 2))]
    roots = []
    for i in range(r, 0, -1):
        for j in range(i + 1, r + 1):
            word = _rng(i, r) + (_rng(r - 1, j) if r - 1 >= j else ())
            roots.append(PositiveRoot(_e(r, (i, 1), (j, 1)), word, Fraction((-1) ** ((r - j) % 2)), f"e{i}+e{j}"))
        word = _rng(i, r) + (_rng(r - 1, i) if r - 1 >= i else ())
        # for i = r the word is the single letter f_r and no factor 1/2 applies
        pref = Fraction((-1) ** ((r - i) % 2), 2) if i < r else Fraction(1)
        roots.append(PositiveRoot(_e(r, (i, 2)), word, pref, f"2e{i}"))
        for j in range(r, i, -1):
            roots.append(PositiveRoot(_e(r, (i, 1), (j, -1)), _rng(j - 1, i), Fraction(1), f"e{i}-e{j}"))
    return simple, roots


def _data_D(r: int):
    simple = [_e(r, (1, 1), (2, 1))] + [_e(r, (j, 1), (j - 1, -1)) for j in range(2, r + 1)]
    roots = []
    for j in range(2, r + 1):
        for i in range(j - 1, 0, -1):
            if i == 1:
                word = (_rng(j, 3) if j >= 3 else ()) + (1,)
            else:
                word = _rng(j, 1) + (_rng(3, i) if i >= 3 else ())
            roots.append(PositiveRoot(_e(r, (j, 1), (i, 1)), word, Fraction(1), f"e{j}+e{i}"))
        for i in range(1, j):
            roots.append(PositiveRoot(_e(r, (j, 1), (i, -1)), _rng(j, i + 1), Fraction(1), f"e{j}-e{i}"))
    return simple, roots


def _weights(type_: str, r: int) -> list[Root]:
    if type_ == "A":
        return [_e(r, (a, 1)) for a in range(1, r + 1)]
    pos = [_e(r, (a, 1)) for a in range(1, r + 1)]
    neg = [_e(r, (a, -1)) for a in range(r, 0, -1)]
    if type_ == "B":
        return pos + [(0,) * r] + neg
    return pos + neg


def _form(type_: str, dim: int) -> Matrix | None:
    if type_ == "A":
        return None
    if type_ == "C":
        return {(a, dim - 1 - a): Fraction(1 if a < dim // 2 else -1) for a in range(dim)}
    return {(a, dim - 1 - a): Fraction(1) for a in range(dim)}


def _lowering(weights: list[Root], form: Matrix | None, alpha: Root) -> Matrix:
    """A nonzero element of the root space -alpha in the realized algebra."""
    dim = len(weights)
    target = tuple(-x for x in alpha)
    for a in range(dim):
        for b in range(dim):
            if tuple(p - q for p, q in zip(weights[b], weights[a])) == target:
                x0 = {(b, a): Fraction(1)}
                if form is None:
                    return x0
                # project onto {X : X^T G + G X = 0}; G is a signed permutation
                gt = mat_transpose(form)
                corr = mat_mul(mat_mul(gt, mat_transpose(x0)), form)
                x = mat_add(x0, corr, Fraction(-1))
                if x:
                    return x
    raise RealizationError(f"no root vector for -{alpha}")


_SUPPORTED = {"A": 2, "B": 2, "C": 2, "D": 3}


def build_root_system(type_: str, rank: int) -> RootSystem:
    """Root data, realization, F_beta matrices and structure constants."""
    type_ = type_.upper()
    if type_ not in _SUPPORTED:
        raise ValueError(f"unsupported algebra type {type_!r}")
    if rank < _SUPPORTED[type_]:
        raise ValueError(f"type {type_} needs rank >= {_SUPPORTED[type_]}, got {rank}")
    simple, roots = {"A": _data_A, "B": _data_B, "C": _data_C, "D": _data_D}[type_](rank)
    n = rank
    weights = _weights(type_, n)
    form = _form(type_, len(weights))
    gens = [_lowering(weights, form, a) for a in simple]
    real = MatrixRealization(len(weights), gens, weights, form)
    rs = RootSystem(type_, len(simple), simple, roots, real)
    _finish(rs)
    return rs


def root_system_by_name(name: str) -> RootSystem:
    """'A2' (= sl_3), 'B3', 'C2', 'D4', ... by Lie rank."""
    type_, rank = name[0].upper(), int(name[1:])
    return build_root_system(type_, rank + 1 if type_ == "A" else rank)


def _finish(rs: RootSystem) -> None:
    real = rs.realization
    for g, a in zip(real.generators, rs.simple):
        if not real.in_algebra(g) or real.root_of(g) != tuple(-x for x in a):
            raise RealizationError(f"bad generator for simple root {a}")
    rs.F = []
    for b in rs.roots:
        f = mat_scale(commutator(real.generators, b.word), b.prefactor)
        neg = tuple(-x for x in b.vector)
        if not f or real.root_of(f) != neg:
            raise RealizationError(f"[f_{b.word}] is not a nonzero root vector for -{b.vector}")
        # the word must really have degree beta
        if sum(simple_coordinates(b.vector, rs.simple)) != len(b.word):
            raise RealizationError(f"word {b.word} has the wrong length for {b.label}")
        rs.F.append(f)
    rs.constants = {}
    for a in range(rs.m):
        for b in range(rs.m):
            if a == b:
                continue
            br = bracket(rs.F[a], rs.F[b])
            if not br:
                continue
            s = tuple(x + y for x, y in zip(rs.roots[a].vector, rs.roots[b].vector))
            g = rs.index_of(s)
            if g is None:
                raise RealizationError(f"[F_{a}, F_{b}] nonzero but {s} is not a root")
            c = proportional(br, rs.F[g])
            if c is None:
                raise RealizationError(f"[F_{a}, F_{b}] not proportional to F_{g}")
            rs.constants[a, b] = (g, c)
    rs.simple_index, rs.simple_scale = [], []
    for i, a in enumerate(rs.simple):
        j = rs.index_of(a)
        c = proportional(rs.F[j], real.generators[i])
        if j is None or c is None:
            raise RealizationError(f"simple root {a} has no PBW generator")
        rs.simple_index.append(j)
        rs.simple_scale.append(c)


def structure_constants(rs: RootSystem) -> dict[tuple[int, int], tuple[int, Fraction]]:
    """(a, b) -> (g, c) with [F_a, F_b] = c F_g (0-based); absent pairs commute."""
    return dict(rs.constants)


def cartan_matrix(rs: RootSystem) -> list[list[int]]:
    def ip(x, y):
        return sum(p * q for p, q in zip(x, y))

    return [[2 * ip(a, b) // ip(a, a) for b in rs.simple] for a in rs.simple]


def serre_relators(rs: RootSystem) -> list[tuple[int, ...]]:
    """Commutator words [f_(j, i, ..., i)] = +-ad(f_i)^(1 - a_ij) f_j for i != j."""
    A = cartan_matrix(rs)
    out = []
    for i in range(rs.rank):
        for j in range(rs.rank):
            if i != j:
                out.append((j + 1,) + (i + 1,) * (1 - A[i][j]))
    return out


# ---------------------------------------------------------------- Sym^d of C^{r+1}


class SymPowerModule:
    """Sym^d of the standard representation of sl_{r+1}, monomial basis.

    A matrix X acts as the derivation x_b -> sum_c X[c, b] x_c; the
    generator f_i = E_{i+1, i} sends x_i to x_{i+1}.
    """

    def __init__(self, r: int, d: int):
        if d < 0:
            raise ValueError("negative degree")
        self.r = r
        self.d = d
        self.rs = build_root_system("A", r + 1)

    def highest_weight_vector(self) -> dict[tuple[int, ...], Fraction]:
        return {(self.d,) + (0,) * self.r: Fraction(1)}

    def basis(self) -> list[tuple[int, ...]]:
        out = []

        def rec(prefix, left, slots):
            if slots == 1:
                out.append(prefix + (left,))
                return
            for a in range(left, -1, -1):
                rec(prefix + (a,), left - a, slots - 1)

        rec((), self.d, self.r + 1)
        return out

    def apply_matrix(self, x: Matrix, v: Mapping[tuple[int, ...], Fraction]) -> dict[tuple[int, ...], Fraction]:
        out: dict[tuple[int, ...], Fraction] = {}
        for mono, a in v.items():
            for (c, b), val in x.items():
                if mono[b] == 0:
                    continue
                new = list(mono)
                new[b] -= 1
                new[c] += 1
                key = tuple(new)
                out[key] = out.get(key, Fraction(0)) + a * val * mono[b]
        return {m: c for m, c in out.items() if c}

    def apply_generator(self, i: int, v):
        return self.apply_matrix(self.rs.realization.generators[i - 1], v)

    def apply_word(self, word: Sequence[int], v):
        """f_{w1} f_{w2} ... f_{wn} v (rightmost acts first)."""
        for i in reversed(tuple(word)):
            v = self.apply_generator(i, v)
        return v

    def apply_pbw(self, x: Mapping[Sequence[int], Fraction], v):
        out: dict[tuple[int, ...], Fraction] = {}
        for p, a in x.items():
            w = dict(v)
            for j in reversed(self.rs._from_exponents(p)):
                w = self.apply_matrix(self.rs.F[j], w)
            for m, c in w.items():
                out[m] = out.get(m, Fraction(0)) + Fraction(a) * c
        return {m: c for m, c in out.items() if c}

    def weight(self, mono: Sequence[int]) -> tuple[Fraction, ...]:
        """Weight of a monomial in simple-root coordinates (trace part removed)."""
        n = self.r + 1
        mean = Fraction(sum(mono), n)
        eps = [Fraction(a) - mean for a in mono]  # e-basis coordinates, traceless
        # alpha_i = e_i - e_{i+1}; coordinate c_i = sum_{l <= i} eps_l
        out = []
        acc = Fraction(0)
        for i in range(self.r):
            acc += eps[i]
            out.append(acc)
        return tuple(out)


def sym_power_action(r: int, d: int) -> SymPowerModule:
    return SymPowerModule(r, d)
