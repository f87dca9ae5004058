"""Finite reflection groups, hyperplane orbits and the rank-one operators mu_O.

Roots are kept as floating-point unit vectors.  Only dihedral angles,
snapped to rational multiples of pi, feed the exact arithmetic, so every
matrix built here has exact rational entries.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Sequence

import flint

from . import exact_linalg as xl

TOL = 1e-9
_KEY_DIGITS = 6

GOLDEN = (1 + math.sqrt(5)) / 2


def _dot(u: Sequence[float], v: Sequence[float]) -> float:
    return sum(a * b for a, b in zip(u, v))


def _norm(v: Sequence[float]) -> float:
    return math.sqrt(_dot(v, v))


def _unit(v: Sequence[float]) -> tuple[float, ...]:
    r = _norm(v)
    return tuple(x / r for x in v)


def _key(v: Sequence[float]) -> tuple[int, ...]:
    return tuple(round(x * 10 ** _KEY_DIGITS) for x in v)


def _reflect(v: Sequence[float], a: Sequence[float]) -> tuple[float, ...]:
    """Reflection of v in the hyperplane orthogonal to the unit vector a."""
    c = 2 * _dot(v, a)
    return tuple(x - c * y for x, y in zip(v, a))


# -- root systems -------------------------------------------------------------

@dataclass
class RootSystem:
    label: str
    rank: int
    roots: list[tuple[float, ...]]          # all roots, unit length
    lengths: list[float]                    # lengths before normalisation
    positive: list[int]                     # indices into roots
    simple: list[int]
    order: int
    crystallographic: bool
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._index = {_key(r): i for i, r in enumerate(self.roots)}

    @property
    def coxeter_number(self) -> int:
        return 2 * len(self.positive) // self.rank

    def index_of(self, v: Sequence[float]) -> int:
        try:
            return self._index[_key(v)]
        except KeyError:
            raise ArithmeticError(f"{v} is not a root of {self.label}") from None

    def negative_of(self, i: int) -> int:
        return self.index_of(tuple(-x for x in self.roots[i]))

    def positive_rep(self, i: int) -> tuple[int, int]:
        """(index of the positive root on the same line, sign relating them)."""
        if i in self._pos_set:
            return i, 1
        return self.negative_of(i), -1

    @property
    def _pos_set(self) -> set[int]:
        cache = self.__dict__.get("_pos_cache")
        if cache is None:
            cache = set(self.positive)
            self.__dict__["_pos_cache"] = cache
        return cache

    def reflect_root(self, i: int, by: int) -> int:
        return self.index_of(_reflect(self.roots[i], self.roots[by]))

    def is_closed(self) -> bool:
        """Every root reflected in every simple root is again a root."""
        try:
            for s in self.simple:
                for i in range(len(self.roots)):
                    self.reflect_root(i, s)
        except ArithmeticError:
            return False
        return True

    def generic_point(self) -> tuple[float, ...]:
        return self.__dict__["_generic"]


_ORDERS = {"F": {4: 1152}, "H": {3: 120, 4: 14400}, "E": {6: 51840, 7: 2903040, 8: 696729600}}
_POSITIVE_COUNTS = {"F4": 24, "H3": 15, "H4": 60, "E6": 36, "E7": 63, "E8": 120}


def parse_type(label: str) -> tuple[str, int]:
    """'A3' -> ('A', 3); 'I2(7)' -> ('I', 7)."""
    text = label.strip().upper().replace(" ", "")
    m = re.fullmatch(r"I2\((\d+)\)", text)
    if m:
        return "I", int(m.group(1))
    m = re.fullmatch(r"([ABDEFH])_?(\d+)", text)
    if not m:
        raise ValueError(f"unsupported type label {label!r}")
    return m.group(1), int(m.group(2))


def _e(n: int, i: int, c: float = 1.0) -> list[float]:
    v = [0.0] * n
    v[i] = c
    return v


def _type_a(n: int):
    # A_n lives in R^(n+1)
    d = n + 1
    out = []
    for i, j in permutations(range(d), 2):
        v = [0.0] * d
        v[i], v[j] = 1.0, -1.0
        out.append(v)
    return out, d


def _type_bd(n: int, with_short: bool):
    out = []
    for i, j in combinations(range(n), 2):
        for si, sj in product((1.0, -1.0), repeat=2):
            v = [0.0] * n
            v[i], v[j] = si, sj
            out.append(v)
    if with_short:
        for i in range(n):
            out.append(_e(n, i))
            out.append(_e(n, i, -1.0))
    return out


def _type_e8():
    out = _type_bd(8, False)
    for signs in product((0.5, -0.5), repeat=8):
        if sum(1 for s in signs if s < 0) % 2 == 0:
            out.append(list(signs))
    return out


_E7_FIX = [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 1.0]
_E6_FIX = [0.0, 0.0, 0.0, 0.0, 0.0, 1.0, -1.0, 0.0]


def _type_f4():
    out = _type_bd(4, True)
    for signs in product((0.5, -0.5), repeat=4):
        out.append(list(signs))
    return out


def _even_permutations(k: int):
    for p in permutations(range(k)):
        inv = sum(1 for a, b in combinations(range(k), 2) if p[a] > p[b])
        if inv % 2 == 0:
            yield p


def _type_h3():
    out = []
    for i in range(3):
        out.append(_e(3, i, 2.0))
        out.append(_e(3, i, -2.0))
    base = (GOLDEN, 1.0, 1 / GOLDEN)
    for p in _even_permutations(3):
        for signs in product((1, -1), repeat=3):
            out.append([signs[k] * base[p[k]] for k in range(3)])
    return out


def _type_h4():
    out = []
    for i in range(4):
        out.append(_e(4, i))
        out.append(_e(4, i, -1.0))
    for signs in product((0.5, -0.5), repeat=4):
        out.append(list(signs))
    base = (GOLDEN / 2, 0.5, 1 / (2 * GOLDEN), 0.0)
    seen = set()
    for p in _even_permutations(4):
        for signs in product((1, -1), repeat=4):
            v = tuple(signs[k] * base[p[k]] for k in range(4))
            k = _key(v)
            if k not in seen:
                seen.add(k)
                out.append(list(v))
    return out


def _type_i2(m: int):
    return [[math.cos(k * math.pi / m), math.sin(k * math.pi / m)] for k in range(2 * m)]


def _orthogonal_subsystem(roots, fixed):
    return [r for r in roots if all(abs(_dot(r, f)) < TOL for f in fixed)]


def _generic_functional(dim: int) -> list[float]:
    return [1.0 / (k + 1) ** 1.5 + 1e-3 * math.sqrt(k + 2) * (-1) ** k for k in range(dim)]


def build_root_system(label: str) -> RootSystem:
    """Construct the root system of a supported type."""
    family, n = parse_type(label)
    crystallographic = True
    if family == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        raw, _ = _type_a(n)
        rank, order = n, math.factorial(n + 1)
    elif family == "B":
        if n < 2:
            raise ValueError("B_n needs n >= 2")
        raw, rank, order = _type_bd(n, True), n, 2 ** n * math.factorial(n)
    elif family == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        raw, rank, order = _type_bd(n, False), n, 2 ** (n - 1) * math.factorial(n)
    elif family == "E":
        if n not in (6, 7, 8):
            raise ValueError("E_n needs n in 6, 7, 8")
        raw = _type_e8()
        # E7 is the centraliser of one root, E6 of an A2 pair of roots
        fixed = {8: [], 7: [_E7_FIX], 6: [_E7_FIX, _E6_FIX]}[n]
        raw = _orthogonal_subsystem(raw, fixed)
        rank, order = n, _ORDERS["E"][n]
    elif family == "F":
        if n != 4:
            raise ValueError("only F4 exists")
        raw, rank, order = _type_f4(), 4, _ORDERS["F"][4]
    elif family == "H":
        if n not in (3, 4):
            raise ValueError("H_n needs n in 3, 4")
        raw = _type_h3() if n == 3 else _type_h4()
        rank, order, crystallographic = n, _ORDERS["H"][n], False
    elif family == "I":
        if n < 3:
            raise ValueError("I2(m) needs m >= 3")
        raw, rank, order = _type_i2(n), 2, 2 * n
        crystallographic = n in (3, 4, 6)
    else:
        raise ValueError(f"unsupported type {label!r}")
    label = f"I2({n})" if family == "I" else f"{family}{n}"
    lengths = [_norm(v) for v in raw]
    roots = [_unit(v) for v in raw]
    f = _generic_functional(len(roots[0]))
    if min(abs(_dot(r, f)) for r in roots) < 1e-7:
        raise ArithmeticError("positivity functional is not generic")
    positive = [i for i, r in enumerate(roots) if _dot(r, f) > 0]
    rs = RootSystem(label, rank, roots, lengths, positive, [], order, crystallographic)
    # simple roots: positive roots whose reflection permutes the other positive roots
    simple = []
    for a in positive:
        ok = True
        for b in positive:
            if b != a and _dot(roots[rs.reflect_root(b, a)], f) < 0:
                ok = False
                break
        if ok:
            simple.append(a)
    rs.simple = simple
    if len(simple) != rank:
        raise ArithmeticError(f"{label}: found {len(simple)} simple roots, expected {rank}")
    rs.__dict__["_generic"] = tuple(f)
    expected = _expected_positive(family, n)
    if len(positive) != expected:
        raise ArithmeticError(f"{label}: {len(positive)} positive roots, expected {expected}")
    return rs


def _expected_positive(family: str, n: int) -> int:
    if family == "A":
        return n * (n + 1) // 2
    if family == "B":
        return n * n
    if family == "D":
        return n * (n - 1)
    if family == "I":
        return n
    return _POSITIVE_COUNTS[f"{family}{n}"]


# -- hyperplane orbits ----------------------------------------------------------

@dataclass
class HyperplaneOrbit:
    system: str
    positive: list[int]       # positive roots whose hyperplanes form the orbit
    length: float             # common root length before normalisation
    label: str

    def __len__(self):
        return len(self.positive)


def hyperplane_orbits(rs: RootSystem) -> list[HyperplaneOrbit]:
    """W-orbits of reflecting hyperplanes, by closure under simple reflections."""
    seen: set[int] = set()
    orbits = []
    for start in rs.positive:
        if start in seen:
            continue
        comp = {start}
        todo = [start]
        while todo:
            i = todo.pop()
            for s in rs.simple:
                j, _ = rs.positive_rep(rs.reflect_root(i, s))
                if j not in comp:
                    comp.add(j)
                    todo.append(j)
        seen |= comp
        members = sorted(comp)
        orbits.append(HyperplaneOrbit(rs.label, members, rs.lengths[start], ""))
    orbits.sort(key=lambda o: (o.length, len(o.positive), o.positive))
    if len(orbits) == 1:
        orbits[0].label = "all"
    elif orbits[0].length < orbits[1].length - TOL:
        orbits[0].label, orbits[1].label = "short", "long"
    else:
        for k, o in enumerate(orbits):
            o.label = f"orbit{k}"
    return orbits


def select_orbit(rs: RootSystem, selector: str = "all") -> HyperplaneOrbit:
    """Pick an orbit by 'short', 'long', 'orbitK', or 'all' (union of every orbit)."""
    orbits = hyperplane_orbits(rs)
    if selector == "all":
        if len(orbits) == 1:
            return orbits[0]
        members = sorted(i for o in orbits for i in o.positive)
        return HyperplaneOrbit(rs.label, members, 0.0, "union")
    for o in orbits:
        if o.label == selector:
            return o
    if len(orbits) == 1 and selector in ("short", "long"):
        return orbits[0]
    raise ValueError(f"{rs.label} has no orbit {selector!r}; available: {[o.label for o in orbits]}")


# -- angles and mu --------------------------------------------------------------

def snapped_angle(u: Sequence[float], v: Sequence[float], max_den: int) -> Fraction:
    """Angle between unit vectors, as a rational multiple of pi."""
    c = _dot(u, v)
    # atan2 stays accurate near 0 and pi where acos loses half the digits
    perp = _norm([y - c * x for x, y in zip(u, v)])
    ratio = math.atan2(perp, c) / math.pi
    frac = Fraction(ratio).limit_denominator(max_den)
    if abs(float(frac) - ratio) > TOL:
        raise ArithmeticError(f"angle {ratio}*pi does not snap to a rational multiple of pi")
    return frac


def mu_minus_matrix(rs: RootSystem, orbit: HyperplaneOrbit) -> xl.ExactMatrix:
    """mu_O on the minus space, basis e_a - e_-a over the positive roots of the orbit.

    The entry for (a, b) is |W| (2 theta - pi) / (2 pi), where theta = pi - angle(a, b)
    is the angular measure of the sector where both a and b are positive.
    """
    idx = orbit.positive
    d = len(idx)
    max_den = 2 * max(rs.coxeter_number, 2)
    m = flint.fmpq_mat(d, d)
    half = Fraction(rs.order, 2)
    for p in range(d):
        for q in range(d):
            ang = snapped_angle(rs.roots[idx[p]], rs.roots[idx[q]], max_den)
            theta = 1 - ang
            val = rs.order * (2 * theta - 1) / 2
            m[p, q] = flint.fmpq(val.numerator, val.denominator)
        if Fraction(int(m[p, p].p), int(m[p, p].q)) != half:
            raise ArithmeticError("diagonal entry differs from |W|/2")
    return m


def mu_plus_matrix(rs: RootSystem, orbit: HyperplaneOrbit) -> xl.ExactMatrix:
    """mu_O on the plus space e_a + e_-a: every entry is |W|/2."""
    d = len(orbit.positive)
    return xl.matrix([[Fraction(rs.order, 2)] * d for _ in range(d)])


def chambers(rs: RootSystem, limit: int = 20000) -> list[tuple[float, ...]]:
    """Orbit of a generic point under W, one point per chamber."""
    if rs.order > limit:
        raise ValueError(f"|W| = {rs.order} exceeds the chamber enumeration limit {limit}")
    x0 = rs.generic_point()
    seen = {_key(x0): x0}
    todo = [x0]
    while todo:
        x = todo.pop()
        for s in rs.simple:
            y = _reflect(x, rs.roots[s])
            k = _key(y)
            if k not in seen:
                seen[k] = y
                todo.append(y)
    pts = [seen[k] for k in sorted(seen)]
    if len(pts) != rs.order:
        raise ArithmeticError(f"found {len(pts)} chambers, expected |W| = {rs.order}")
    return pts


def chamber_sign_matrix(rs: RootSystem, orbit: HyperplaneOrbit, pts=None) -> list[list[int]]:
    pts = chambers(rs) if pts is None else pts
    return [[1 if _dot(rs.roots[i], x) > 0 else -1 for x in pts] for i in orbit.positive]


def mu_minus_from_chambers(rs: RootSystem, orbit: HyperplaneOrbit) -> xl.ExactMatrix:
    """Same operator counted directly: half the Gram matrix of chamber sign vectors."""
    s = chamber_sign_matrix(rs, orbit)
    m = flint.fmpz_mat(s)
    return flint.fmpq_mat(m * m.transpose()) / 2


def pi_matrix_on_chambers(rs: RootSystem, orbit: HyperplaneOrbit) -> xl.ExactMatrix:
    """0/1 matrix, rows +-a for a in the orbit, column per chamber, 1 where the root is positive."""
    pts = chambers(rs)
    rows = []
    for i in orbit.positive:
        for sgn in (1, -1):
            rows.append([1 if sgn * _dot(rs.roots[i], x) > 0 else 0 for x in pts])
    return flint.fmpq_mat(flint.fmpz_mat(rows))


def nu_on_chambers(rs: RootSystem, orbit: HyperplaneOrbit) -> xl.ExactMatrix:
    p = pi_matrix_on_chambers(rs, orbit)
    return p.transpose() * p


# -- characteristic polynomials ---------------------------------------------------

@dataclass
class FactoredPolynomial:
    roots: list[tuple[Fraction, int]]
    residual: object
    quadratic_power: tuple | None
    text: str

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.roots) + self.residual.degree()


def factor(poly, var: str = "x") -> FactoredPolynomial:
    roots, residual, qp = xl.factor_rational_roots(poly)
    return FactoredPolynomial(roots, residual, qp, xl.format_factored(roots, residual, var))


def rank_one_charpoly(label: str, selector: str = "all") -> FactoredPolynomial:
    """Factored characteristic polynomial of mu_O on the minus space."""
    rs = build_root_system(label)
    orbit = select_orbit(rs, selector)
    return factor(xl.charpoly(mu_minus_matrix(rs, orbit)))


DEFAULT_RANK_ONE_TYPES = (
    [(f"A{n - 1}", "all") for n in range(3, 8)]
    + [(f"B{n}", sel) for n in range(2, 6) for sel in ("short", "long")]
    + [("D4", "all"), ("D5", "all"), ("F4", "short"), ("F4", "long"), ("H3", "all"), ("H4", "all"), ("E6", "all")]
)
LONG_RANK_ONE_TYPES = [("E7", "all"), ("E8", "all")]


# -- closed forms for Weyl groups ----------------------------------------------

def in_pi_over_three_situation(rs: RootSystem, orbit: HyperplaneOrbit) -> bool:
    """Whether two hyperplanes of the orbit meet at angle pi/3."""
    max_den = 2 * max(rs.coxeter_number, 2)
    for a, b in combinations(orbit.positive, 2):
        ang = snapped_angle(rs.roots[a], rs.roots[b], max_den)
        if ang in (Fraction(1, 3), Fraction(2, 3)):
            return True
    return False


@dataclass
class ClosedFormReport:
    label: str
    orbit: str
    situation: str
    predicted: dict[Fraction, int]
    computed: dict[Fraction, int]
    simply_laced_form: Fraction | None = None

    @property
    def match(self) -> bool:
        return self.predicted == self.computed


_SIMPLY_LACED = ("A", "D", "E")


def weyl_closed_forms(label: str, selector: str = "all") -> ClosedFormReport:
    """Compare the minus-space spectrum with the closed forms for Weyl groups.

    With hyperplanes meeting at pi/3 the eigenvalues are |W|/6 with multiplicity
    |O| - l and (2|O| + l)|W|/(6l) with multiplicity l; otherwise the whole
    minus space carries |W||O|/(2l).
    """
    rs = build_root_system(label)
    if not rs.crystallographic or rs.label.startswith("I2"):
        raise ValueError(f"{rs.label} is not a Weyl group covered by the closed forms")
    orbit = select_orbit(rs, selector)
    if len(hyperplane_orbits(rs)) > 1 and orbit.label == "union":
        raise ValueError("closed forms need a single orbit")
    ell, size, order = rs.rank, len(orbit), rs.order
    fp = factor(xl.charpoly(mu_minus_matrix(rs, orbit)))
    if fp.residual.degree() > 0:
        raise ArithmeticError(f"{rs.label}: irrational eigenvalues in a Weyl group")
    computed = {r: m for r, m in fp.roots}
    simply = None
    if in_pi_over_three_situation(rs, orbit):
        situation = "pi/3"
        predicted = {Fraction(order, 6): size - ell, Fraction((2 * size + ell) * order, 6 * ell): ell}
        if rs.label[0] in _SIMPLY_LACED:
            simply = Fraction((rs.coxeter_number + 1) * order, 6)
    else:
        situation = "not pi/3"
        predicted = {Fraction(order * size, 2 * ell): ell}
    predicted = {k: v for k, v in predicted.items() if v}
    return ClosedFormReport(rs.label, orbit.label, situation, predicted, computed, simply)


# -- triples -------------------------------------------------------------------

@dataclass
class TripleReport:
    count: int
    span_rank: int
    expected_rank: int
    all_eigenvectors: bool


def _sum_zero(rs, a, b, c) -> bool:
    ra, rb, rc = rs.roots[a], rs.roots[b], rs.roots[c]
    return all(abs(x + y + z) < 1e-7 for x, y, z in zip(ra, rb, rc))


def triple_span_check(label: str, selector: str = "all") -> TripleReport:
    """Span of psi_{a,b,c} = f_a + f_b + f_c over root triples in the orbit summing to zero."""
    rs = build_root_system(label)
    orbit = select_orbit(rs, selector)
    pos = orbit.positive
    where = {i: k for k, i in enumerate(pos)}
    signed = [(i, 1) for i in pos] + [(rs.negative_of(i), -1) for i in pos]
    base = {rs.negative_of(i): i for i in pos}
    base.update({i: i for i in pos})
    max_den = 2 * max(rs.coxeter_number, 2)
    vectors = []
    seen = set()
    for (a, sa), (b, sb) in combinations(signed, 2):
        ra, rb = rs.roots[a], rs.roots[b]
        if snapped_angle(ra, rb, max_den) != Fraction(2, 3):
            continue
        c_vec = tuple(-(x + y) for x, y in zip(ra, rb))
        try:
            c = rs.index_of(c_vec)
        except ArithmeticError:
            continue
        if base.get(c) is None:
            continue
        key = frozenset((a, b, c))
        if key in seen:
            continue
        seen.add(key)
        v = [0] * len(pos)
        for r in (a, b, c):
            j, s = rs.positive_rep(r)
            v[where[j]] += s
        vectors.append(v)
    mu = mu_minus_matrix(rs, orbit)
    ev = Fraction(rs.order, 6)
    ok = True
    for v in vectors:
        col = xl.matrix([[x] for x in v])
        if mu * col != col * flint.fmpq(ev.numerator, ev.denominator):
            ok = False
            break
    span = xl.matrix(vectors).rank() if vectors else 0
    return TripleReport(len(vectors), span, len(pos) - rs.rank, ok)


# -- twisted Gelfand pairs ----------------------------------------------------------

def _generator_matrices(rs: RootSystem, orbit: HyperplaneOrbit) -> list[xl.ExactMatrix]:
    """Signed permutation matrices of the simple reflections on the minus space."""
    pos = orbit.positive
    where = {i: k for k, i in enumerate(pos)}
    mats = []
    for s in rs.simple:
        m = flint.fmpz_mat(len(pos), len(pos))
        for k, i in enumerate(pos):
            j, sgn = rs.positive_rep(rs.reflect_root(i, s))
            m[where[j], k] = sgn
        mats.append(flint.fmpq_mat(m))
    return mats


def commutant_basis(gens: Sequence[xl.ExactMatrix]) -> list[xl.ExactMatrix]:
    """Basis of {C : g C = C g for every generator g}."""
    d = gens[0].nrows()
    rows = []
    for g in gens:
        # (g C - C g)[i, j] = sum_k g[i,k] C[k,j] - C[i,k] g[k,j], C flattened row-major
        for i in range(d):
            for j in range(d):
                row = [0] * (d * d)
                for k in range(d):
                    gik = g[i, k]
                    if gik != 0:
                        row[k * d + j] += int(gik.p)
                    gkj = g[k, j]
                    if gkj != 0:
                        row[i * d + k] -= int(gkj.p)
                if any(row):
                    rows.append(row)
    if not rows:
        ker = xl.identity(d * d)
    else:
        ker = xl.kernel_basis(flint.fmpq_mat(flint.fmpz_mat(rows)))
    out = []
    for c in range(ker.ncols()):
        out.append(flint.fmpq_mat(d, d, [ker[r, c] for r in range(d * d)]))
    return out


@dataclass
class GelfandPairReport:
    label: str
    orbit: str
    commutant_dim: int
    commutative: bool

    @property
    def multiplicity_free(self) -> bool:
        return self.commutative


GELFAND_PAIR_TYPES = ([f"A{n - 1}" for n in range(2, 7)] + [f"B{n}" for n in range(2, 5)]
                      + [f"I2({m})" for m in range(3, 9)])


def gelfand_pair_check(label: str, selector: str | None = None) -> list[GelfandPairReport]:
    """Multiplicity-freeness of Ind_{Z(s)} chi for each hyperplane orbit.

    The induced representation is the minus space of the orbit; it is
    multiplicity free exactly when its commutant is commutative.
    """
    rs = build_root_system(label)
    orbits = hyperplane_orbits(rs) if selector is None else [select_orbit(rs, selector)]
    out = []
    for o in orbits:
        basis = commutant_basis(_generator_matrices(rs, o))
        comm = all(a * b == b * a for a, b in combinations(basis, 2))
        out.append(GelfandPairReport(rs.label, o.label, len(basis), comm))
    return out


def symmetric_group_induced_multiplicities(n: int) -> dict:
    """Ind from Z(s), s = (1 2), of the sign of z on e_1 - e_2, via S_n characters."""
    from .perm_core import all_permutations
    from .sn_characters import induced_multiplicities
    elements = []
    for w in all_permutations(n):
        if {w[0], w[1]} == {1, 2}:
            elements.append((w, -1 if w[0] == 2 else 1))
    return induced_multiplicities(elements, n)


def all_hyperplanes_charpoly(label: str = "B2") -> FactoredPolynomial:
    """nu_O on chambers for O the set of every reflecting hyperplane."""
    rs = build_root_system(label)
    orbit = select_orbit(rs, "all")
    return factor(xl.charpoly(nu_on_chambers(rs, orbit)), var="t")


def snapped_angle_set(label: str) -> set[Fraction]:
    rs = build_root_system(label)
    max_den = 2 * max(rs.coxeter_number, 2)
    out = set()
    for a, b in combinations(range(len(rs.roots)), 2):
        out.add(snapped_angle(rs.roots[a], rs.roots[b], max_den))
    return out
