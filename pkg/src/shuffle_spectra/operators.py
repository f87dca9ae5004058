"""Shuffling operators on the group algebra of S_n and their spectra.

Operators act on ``Q S_n`` by right multiplication: the matrix of
``x -> x a`` in the lexicographic permutation basis has entry
``a_{x^-1 y}`` in row y, column x.  Two independent engines produce
simultaneous eigenspace tables: dense matrices on the whole group algebra
(n <= 6) and per-irreducible Fourier blocks built from coset sums (n <= 8).
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb, factorial, prod
from typing import Iterable, Mapping, Sequence

import flint

from . import exact_linalg as xl
from . import sn_characters as snc
from .perm_core import (NumberPartition, Permutation, all_permutations, check_partition, compose,
                        conjugate, cycle_type, derangement_counts, descent_set, enumerate_set_partitions,
                        hook_partition, identity, inverse, longest_element, multiplicities, noninv_lambda,
                        oddcols, partition_label, partitions, perm_index, sign, standard_set_partition,
                        two_block_partition)
from .tableaux import predicted_factor

DENSE_LIMIT = 7


class BudgetError(ValueError):
    """Requested dense object is beyond the supported size."""


class IntegralityViolation(ArithmeticError):
    """An operator produced a non-integral or irrational eigenvalue."""


# -- group algebra ------------------------------------------------------------

class GroupAlgebraElement:
    """Sparse rational combination of permutations of {1..n}."""

    __slots__ = ("n", "coefficients")

    def __init__(self, n: int, coefficients: Mapping[Permutation, object] | None = None):
        self.n = n
        self.coefficients: dict[Permutation, Fraction] = {}
        for w, c in (coefficients or {}).items():
            if len(w) != n:
                raise ValueError(f"{w} is not in S_{n}")
            c = Fraction(c)
            if c:
                self.coefficients[tuple(w)] = c

    @classmethod
    def identity(cls, n: int) -> "GroupAlgebraElement":
        return cls(n, {identity(n): 1})

    @classmethod
    def basis(cls, w: Permutation) -> "GroupAlgebraElement":
        return cls(len(w), {tuple(w): 1})

    @classmethod
    def sum_of(cls, n: int, perms: Iterable[Permutation]) -> "GroupAlgebraElement":
        out: Counter = Counter()
        for w in perms:
            out[tuple(w)] += 1
        return cls(n, out)

    def coefficient(self, w: Permutation) -> Fraction:
        return self.coefficients.get(tuple(w), Fraction(0))

    def _check(self, other: "GroupAlgebraElement") -> None:
        if not isinstance(other, GroupAlgebraElement) or other.n != self.n:
            raise ValueError("elements over different symmetric groups")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coefficients)
        for w, c in other.coefficients.items():
            out[w] = out.get(w, 0) + c
        return GroupAlgebraElement(self.n, out)

    def __sub__(self, other):
        return self + (-1) * other

    def __neg__(self):
        return (-1) * self

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            self._check(other)
            out: dict[Permutation, Fraction] = {}
            for u, a in self.coefficients.items():
                for v, b in other.coefficients.items():
                    w = tuple(u[x - 1] for x in v)
                    out[w] = out.get(w, 0) + a * b
            return GroupAlgebraElement(self.n, out)
        c = Fraction(other)
        return GroupAlgebraElement(self.n, {w: c * a for w, a in self.coefficients.items()})

    def __rmul__(self, other):
        c = Fraction(other)
        return GroupAlgebraElement(self.n, {w: c * a for w, a in self.coefficients.items()})

    def __eq__(self, other):
        return isinstance(other, GroupAlgebraElement) and self.n == other.n \
            and self.coefficients == other.coefficients

    def __repr__(self):
        terms = sorted(self.coefficients.items())
        body = " + ".join(f"{c}*{''.join(map(str, w)) if self.n < 10 else w}" for w, c in terms[:6])
        more = " + ..." if len(terms) > 6 else ""
        return f"GroupAlgebraElement(n={self.n}: {body or '0'}{more})"

    def antipode(self) -> "GroupAlgebraElement":
        """sum a_w w^-1."""
        return GroupAlgebraElement(self.n, {inverse(w): c for w, c in self.coefficients.items()})

    def support(self) -> list[Permutation]:
        return sorted(self.coefficients)

    def right_multiplication_matrix(self) -> xl.ExactMatrix:
        _check_dense(self.n)
        return _right_matrix(self.n, self.coefficients)


def _check_dense(n: int) -> None:
    if n > DENSE_LIMIT:
        raise BudgetError(f"dense matrices on Q S_{n} exceed the size budget (n <= {DENSE_LIMIT})")


def _right_matrix(n: int, coeffs: Mapping[Permutation, object]) -> xl.ExactMatrix:
    perms = all_permutations(n)
    idx = {w: i for i, w in enumerate(perms)}
    size = len(perms)
    num: dict[Permutation, int] = {}
    den = 1
    for c in coeffs.values():
        den = den * Fraction(c).denominator // _gcd(den, Fraction(c).denominator)
    for u, c in coeffs.items():
        num[u] = int(Fraction(c) * den)
    flat = [0] * (size * size)
    items = list(num.items())
    for col, x in enumerate(perms):
        for u, c in items:
            y = tuple(x[t - 1] for t in u)
            flat[idx[y] * size + col] += c
    m = flint.fmpq_mat(flint.fmpz_mat(size, size, flat))
    return m / den if den != 1 else m


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def left_permutation_rows(n: int, g: Permutation) -> list[int]:
    """Row map of left multiplication by g: basis x goes to g x."""
    idx = perm_index(n)
    return [idx[compose(g, x)] for x in all_permutations(n)]


# -- the operators nu, pi, coset square roots -----------------------------

def nu_element(lam: Sequence[int], n: int | None = None) -> GroupAlgebraElement:
    """sum_w noninv_lam(w) w."""
    lam = check_partition(lam, n)
    n = sum(lam)
    return GroupAlgebraElement(n, {w: noninv_lambda(w, lam) for w in all_permutations(n)})


def nu_matrix(lam: Sequence[int], n: int | None = None) -> xl.ExactMatrix:
    lam = check_partition(lam, n)
    _check_dense(sum(lam))
    return nu_element(lam).right_multiplication_matrix()


def w0_matrix(n: int) -> xl.ExactMatrix:
    return GroupAlgebraElement.basis(longest_element(n)).right_multiplication_matrix()


def pi_row_labels(lam: Sequence[int], n: int | None = None) -> list[tuple]:
    """Rows of pi: a set partition of type lam with a linear order on each block."""
    lam = check_partition(lam, n)
    n = sum(lam)
    rows = []
    for x in enumerate_set_partitions(n, lam):
        for orders in _block_orders(x):
            rows.append(orders)
    return rows


def _block_orders(x):
    if not x:
        yield ()
        return
    for first in permutations(x[0]):
        for rest in _block_orders(x[1:]):
            yield (first,) + rest


def pi_matrix(lam: Sequence[int], n: int | None = None) -> xl.ExactMatrix:
    """0/1 matrix: row (X, orders), column w, entry 1 when w reads every block in its order."""
    lam = check_partition(lam, n)
    n = sum(lam)
    _check_dense(n)
    labels = pi_row_labels(lam)
    row_of = {orders: r for r, orders in enumerate(labels)}
    setparts = list(enumerate_set_partitions(n, lam))
    perms = all_permutations(n)
    m = flint.fmpz_mat(len(labels), len(perms))
    for col, w in enumerate(perms):
        pos = inverse(w)
        for x in setparts:
            # each set partition contributes the single row whose orders agree with w
            orders = tuple(tuple(sorted(b, key=lambda v: pos[v - 1])) for b in x)
            m[row_of[orders], col] = 1
    return flint.fmpq_mat(m)


def coset_representatives(lam: Sequence[int]) -> list[Permutation]:
    """Permutations increasing on each block of consecutive positions."""
    return snc.coset_representatives(check_partition(lam))


def stabilizer_index(lam: Sequence[int]) -> int:
    """[N(X0) : Z(X0)] for the standard set partition X0 of type lam.

    N permutes the blocks of X0 among themselves, Z keeps each block.
    Counted by enumeration, so keep n small.
    """
    lam = check_partition(lam)
    n = sum(lam)
    blocks = [frozenset(b) for b in standard_set_partition(lam)]
    bset = set(blocks)
    norm = stab = 0
    for w in all_permutations(n):
        images = [frozenset(w[x - 1] for x in b) for b in blocks]
        if all(im in bset for im in images):
            norm += 1
            if images == blocks:
                stab += 1
    return norm // stab


def n_x(lam: Sequence[int]) -> int:
    """prod over part sizes of (multiplicity)!, singletons included."""
    lam = check_partition(lam)
    return prod(factorial(m) for m in multiplicities(lam).values())


def coset_square_root(lam: Sequence[int], n: int | None = None):
    """(R^X, ^X R, n_X) with nu_lam = R^X ^X R / n_X.

    ^X W is the set of y reading every block of X0 in increasing order; its
    sum is ^X R and R^X is the sum of the inverses.
    """
    lam = check_partition(lam, n)
    n = sum(lam)
    reps = coset_representatives(lam)
    r_up = GroupAlgebraElement.sum_of(n, reps)
    r_down = GroupAlgebraElement.sum_of(n, (inverse(d) for d in reps))
    index = stabilizer_index(lam) if n <= 6 else n_x(lam)
    if n <= 6 and index != n_x(lam):
        raise ArithmeticError("stabilizer index disagrees with the product formula")
    return r_up, r_down, index


# -- faces of the braid arrangement ---------------------------------------

Face = tuple  # tuple of sorted tuples (an ordered set partition)


def make_face(blocks: Iterable[Iterable[int]]) -> Face:
    face = tuple(tuple(sorted(b)) for b in blocks if len(tuple(b)))
    seen = [x for b in face for x in b]
    if sorted(seen) != list(range(1, len(seen) + 1)):
        raise ValueError("blocks must partition 1..n")
    return face


def chamber(w: Permutation) -> Face:
    return tuple((x,) for x in w)


def chamber_permutation(c: Face) -> Permutation:
    if any(len(b) != 1 for b in c):
        raise ValueError("not a chamber")
    return tuple(b[0] for b in c)


def face_product(x: Face, y: Face) -> Face:
    """Refine each block of x by the order in which the blocks of y meet it."""
    out = []
    for b in x:
        bs = set(b)
        for c in y:
            meet = tuple(sorted(bs.intersection(c)))
            if meet:
                out.append(meet)
    return tuple(out)


def faces_of_type(composition: Sequence[int]) -> list[Face]:
    """All ordered set partitions whose block sizes read ``composition``."""
    n = sum(composition)

    def rec(rest: tuple[int, ...], sizes: Sequence[int]):
        if not sizes:
            yield ()
            return
        for block in combinations(rest, sizes[0]):
            remaining = tuple(x for x in rest if x not in block)
            for tail in rec(remaining, sizes[1:]):
                yield (block,) + tail

    return list(rec(tuple(range(1, n + 1)), list(composition)))


def compositions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []
    for first in range(1, n + 1):
        for rest in compositions(n - first):
            out.append((first,) + rest)
    return out


def all_faces(n: int) -> list[Face]:
    return [f for c in compositions(n) for f in faces_of_type(c)]


def face_support(x: Face) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(x))


def bhr_matrix(lam: Sequence[int], n: int | None = None) -> xl.ExactMatrix:
    """Left multiplication on chambers by the orbit sum of x(J).

    x(J) has blocks {1..lam_1}, {lam_1+1..}, ... in that order, so its orbit
    is every face with block sizes lam read left to right.
    """
    lam = check_partition(lam, n)
    n = sum(lam)
    _check_dense(n)
    orbit = faces_of_type(lam)
    perms = all_permutations(n)
    idx = {w: i for i, w in enumerate(perms)}
    m = flint.fmpz_mat(len(perms), len(perms))
    for col, w in enumerate(perms):
        c = chamber(w)
        for y in orbit:
            m[idx[chamber_permutation(face_product(y, c))], col] += 1
    return flint.fmpq_mat(m)


def weighted_face_operator(weights: Mapping[tuple[int, ...], object], n: int) -> xl.ExactMatrix:
    """Left multiplication by sum p_x x with p constant on compositions."""
    _check_dense(n)
    for comp, p in weights.items():
        if Fraction(p) < 0:
            raise ValueError("weights must be nonnegative")
        if sum(comp) != n:
            raise ValueError(f"{comp} is not a composition of {n}")
    perms = all_permutations(n)
    idx = {w: i for i, w in enumerate(perms)}
    m = xl.zeros(len(perms))
    for comp, p in weights.items():
        p = Fraction(p)
        if not p:
            continue
        cnt = flint.fmpz_mat(len(perms), len(perms))
        for y in faces_of_type(comp):
            for col, w in enumerate(perms):
                cnt[idx[chamber_permutation(face_product(y, chamber(w)))], col] += 1
        m += flint.fmpq(p.numerator, p.denominator) * flint.fmpq_mat(cnt)
    return m


def face_semigroup_eigenvalues(weights: Mapping[tuple[int, ...], object], n: int) -> set[Fraction]:
    """lambda_X = sum of p_x over faces x lying in the flat X, for every set partition X."""
    out = set()
    from .perm_core import all_set_partitions, refines
    flats = all_set_partitions(n)
    typed = [(face_support(f), Fraction(weights.get(c, 0))) for c in compositions(n) for f in faces_of_type(c)]
    for flat in flats:
        out.add(sum((p for supp, p in typed if refines(flat, supp)), Fraction(0)))
    return out


def brown_min_poly(weights: Mapping[tuple[int, ...], object], n: int) -> xl.IntPolynomial:
    """Minimal polynomial of the weighted face operator on chambers."""
    return xl.min_poly(weighted_face_operator(weights, n))


# -- Eulerian idempotents ---------------------------------------------------

def _rising_poly(shift: int, n: int) -> list[int]:
    """Coefficients of (t - shift)(t - shift + 1)...(t - shift + n - 1), ascending."""
    poly = [1]
    for i in range(n):
        c = i - shift
        new = [0] * (len(poly) + 1)
        for k, a in enumerate(poly):
            new[k] += a * c
            new[k + 1] += a
        poly = new
    return poly


def eulerian_idempotents(n: int) -> list[GroupAlgebraElement]:
    """[e^(1), ..., e^(n)]: coefficients of t^j in (1/n!) sum (t - des s)^(rising n) s."""
    if n < 1:
        raise ValueError("n must be positive")
    coeffs = [dict() for _ in range(n + 1)]
    by_des = {d: _rising_poly(d, n) for d in range(n)}
    for s in all_permutations(n):
        poly = by_des[len(descent_set(s))]
        for j in range(1, n + 1):
            if poly[j]:
                coeffs[j][s] = Fraction(poly[j], factorial(n))
    if any(by_des[d][0] for d in range(n)):
        raise ArithmeticError("constant term of the generating function must vanish")
    return [GroupAlgebraElement(n, coeffs[j]) for j in range(1, n + 1)]


# -- families -------------------------------------------------------------

FAMILIES = ("columns", "two-blocks")


def family_partitions(n: int, family: str) -> list[NumberPartition]:
    """Operators of a family, in table column order."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return [(1,)]
    if family == "columns":
        return [hook_partition(k, n) for k in range(1, n)]
    if family == "two-blocks":
        return [two_block_partition(a, n) for a in range(0, n // 2 + 1)]
    raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def fourier_block(lam: Sequence[int], op: Sequence[int]) -> xl.ExactMatrix:
    """rho_lam(nu_op) = S D^-1 S^T D / n_X with S the coset sum for op."""
    rep = snc.seminormal_rep(check_partition(lam))
    s = snc.coset_sum_rho(rep, check_partition(op))
    return s * rep.adjoint(s) / n_x(op)


# -- simultaneous eigenspace tables ------------------------------------------

@dataclass
class TableRow:
    eigenvalues: tuple[Fraction, ...]
    w0: int | None
    multiplicities: dict[NumberPartition, int]
    warning: str | None = None

    def first_nonzero(self) -> int | None:
        return next((i for i, e in enumerate(self.eigenvalues) if e != 0), None)


@dataclass
class SpectralTable:
    n: int
    family: str
    operators: list[NumberPartition]
    rows: list[TableRow]
    method: str
    violations: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "schema": 1,
            "n": self.n,
            "family": self.family,
            "operators": [partition_label(p) for p in self.operators],
            "rows": [{
                "eigenvalues": [_json_number(e) for e in r.eigenvalues],
                "w0": r.w0,
                "multiplicities": {partition_label(lam): m for lam, m in sorted(
                    r.multiplicities.items(), key=lambda kv: _partition_order(self.n, kv[0]))},
                **({"warning": r.warning} if r.warning else {}),
            } for r in self.rows],
            **({"violations": list(self.violations)} if self.violations else {}),
        }

    def to_tsv(self) -> str:
        shapes = partitions(self.n)
        head = [f"nu_{partition_label(p)}" for p in self.operators] + ["w0"] + \
            [f"chi_{partition_label(s)}" for s in shapes]
        lines = ["\t".join(head)]
        for r in self.rows:
            cells = [str(_json_number(e)) for e in r.eigenvalues] + ["" if r.w0 is None else str(r.w0)]
            cells += [str(r.multiplicities.get(s, 0)) for s in shapes]
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"

    def to_markdown(self) -> str:
        shapes = [s for s in partitions(self.n) if any(s in r.multiplicities for r in self.rows)]
        head = [f"ν_{partition_label(p)}" for p in self.operators] + ["w0"] + \
            [f"χ^{partition_label(s)}" for s in shapes]
        lines = ["| " + " | ".join(head) + " |", "|" + "---|" * len(head)]
        for r in self.rows:
            cells = ["·" if e == 0 else str(_json_number(e)) for e in r.eigenvalues]
            cells.append("?" if r.w0 is None else str(r.w0))
            cells += ["·" if not r.multiplicities.get(s) else str(r.multiplicities[s]) for s in shapes]
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"


def _json_number(x):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _partition_order(n: int, lam) -> int:
    return partitions(n).index(tuple(lam))


def _row_sort_key(row: TableRow, width: int):
    first = row.first_nonzero()
    block = width if first is None else first
    sign_key = 0 if row.w0 == 1 else (1 if row.w0 == -1 else 2)
    return (block, sign_key, tuple(-e for e in row.eigenvalues))


def _check_integral(values: Iterable[Fraction], where: str, violations: list[str]) -> None:
    for v in values:
        if Fraction(v).denominator != 1:
            violations.append(f"{where}: eigenvalue {v} is not an integer")


def _split_space(ops: Sequence[xl.ExactMatrix], basis: xl.ExactMatrix, label: str,
                 violations: list[str]) -> list[tuple[tuple, xl.ExactMatrix]]:
    """Joint eigenspaces of commuting operators on an invariant echelon basis."""
    spaces = [((), basis)]
    for k, op in enumerate(ops):
        nxt = []
        for key, b in spaces:
            piv = xl.pivot_rows(b)
            m = xl.restrict(op, b, piv)
            if op * b != b * m:
                raise ArithmeticError(f"{label}: subspace is not invariant under operator {k}")
            parts = xl.split_by_operator(op, b, piv)
            if parts is None:
                mp = xl.min_poly(m)
                roots, residual, _ = xl.factor_rational_roots(mp)
                violations.append(f"{label}: operator {k} has minimal polynomial factor "
                                  f"{xl.format_poly(residual, 't')} without rational roots")
                raise IntegralityViolation(violations[-1])
            for val, sub in parts:
                nxt.append((key + (val,), sub))
        spaces = nxt
    return spaces


def simultaneous_tables(n: int, family: str = "columns", method: str = "auto") -> SpectralTable:
    """Joint eigenspaces of a family together with w0, decomposed into irreducibles.

    ``method`` is "full" (dense operators on the group algebra, n <= 6),
    "fourier" (per-irreducible seminormal blocks, n <= 8) or "auto".
    """
    ops = family_partitions(n, family)
    if method == "auto":
        method = "full" if n <= 5 else "fourier"
    if method == "full":
        if n > 6:
            raise BudgetError("full-matrix tables are limited to n <= 6")
        return _tables_full(n, family, ops)
    if method == "fourier":
        return _tables_fourier(n, family, ops)
    raise ValueError(f"unknown method {method!r}")


def _merge_rows(raw: Iterable[tuple[tuple, int | None, NumberPartition, int]], width: int,
                n: int, family: str, ops, method, violations) -> SpectralTable:
    merged: dict[tuple, Counter] = {}
    for eigs, w0, lam, mult in raw:
        if mult:
            merged.setdefault((eigs, w0), Counter())[lam] += mult
    rows = [TableRow(tuple(Fraction(e) for e in eigs), w0, dict(c),
                     None if w0 is not None else "w0 does not preserve this eigenspace")
            for (eigs, w0), c in merged.items()]
    rows.sort(key=lambda r: _row_sort_key(r, width))
    return SpectralTable(n, family, list(ops), rows, method, violations)


def _tables_fourier(n: int, family: str, ops: list[NumberPartition]) -> SpectralTable:
    violations: list[str] = []
    raw = []
    for lam in partitions(n):
        rep = snc.seminormal_rep(lam)
        mats = [fourier_block(lam, op) for op in ops]
        w0 = rep.w0()
        for i, a in enumerate(mats):
            for b in mats[i + 1:]:
                if a * b != b * a:
                    raise ArithmeticError(f"block {partition_label(lam)}: family does not commute")
            if a * w0 != w0 * a:
                raise ArithmeticError(f"block {partition_label(lam)}: w0 does not commute")
        spaces = _split_space(mats + [w0], xl.identity(rep.dim), f"block {partition_label(lam)}", violations)
        for key, b in spaces:
            eigs, sign_ = key[:-1], key[-1]
            _check_integral(eigs, f"block {partition_label(lam)}", violations)
            raw.append((eigs, int(sign_), lam, b.ncols()))
    return _merge_rows(raw, len(ops), n, family, ops, "fourier", violations)


def _tables_full(n: int, family: str, ops: list[NumberPartition]) -> SpectralTable:
    violations: list[str] = []
    mats = [nu_matrix(op) for op in ops]
    w0 = w0_matrix(n)
    size = factorial(n)
    spaces = _split_space(mats, xl.identity(size), f"n={n}", violations)
    perms = all_permutations(n)
    idx = {w: i for i, w in enumerate(perms)}
    classes = partitions(n)
    reps = {mu: snc.standard_cycle_element(mu) for mu in classes}
    # basis index of g^-1 x for each class representative g
    pull = {mu: [idx[compose(inverse(g), x)] for x in perms] for mu, g in reps.items()}
    raw = []
    for key, b in spaces:
        _check_integral(key, f"n={n}", violations)
        piv = xl.pivot_rows(b)
        m = xl.restrict(w0, b, piv)
        if w0 * b != b * m:
            violations.append(f"n={n}: w0 does not preserve eigenspace {key}")
            for lam, mlt in _space_content(b, n, perms, pull).items():
                raw.append((tuple(key), None, lam, mlt))
            continue
        for sign_ in (1, -1):
            sub = xl.kernel_basis(m - sign_ * xl.identity(m.nrows()))
            if sub.ncols() == 0:
                continue
            space = xl.column_echelon(b * sub)
            for lam, mlt in _space_content(space, n, perms, pull).items():
                raw.append((tuple(key), sign_, lam, mlt))
    return _merge_rows(raw, len(ops), n, family, ops, "full", violations)


def _space_content(space, n, perms, pull) -> dict[NumberPartition, int]:
    """Irreducible multiplicities of a left-stable subspace with echelon basis."""
    spiv = xl.pivot_rows(space)
    chars = {}
    for mu, src in pull.items():
        chars[mu] = sum((space[src[p], c] for c, p in enumerate(spiv)), flint.fmpq(0))
    out = {}
    for lam, mlt in snc.isotypic_multiplicities(chars, n).items():
        if mlt.denominator != 1:
            raise ArithmeticError(f"non-integral multiplicity {mlt} of {lam}")
        if mlt:
            out[lam] = int(mlt)
    return out


def table_signature(table: SpectralTable) -> list[tuple]:
    """Canonical comparable form: (eigenvalues, w0, sorted multiplicities) per row."""
    return [(tuple(r.eigenvalues), r.w0, tuple(sorted(r.multiplicities.items()))) for r in table.rows]


def factor_content(table: SpectralTable) -> dict[int, Counter]:
    """Group a columns-family table by filtration level j, as (shape, sign) multisets.

    A row whose first nonzero eigenvalue is for nu_(1^n) sits at level n, one
    first nonzero at nu_(k,1^(n-k)) with k >= 2 at level n - k, and the
    common kernel at level 0.
    """
    if table.family != "columns":
        raise ValueError("filtration levels are defined for the columns family")
    n = table.n
    out: dict[int, Counter] = {j: Counter() for j in range(n + 1)}
    for r in table.rows:
        first = r.first_nonzero()
        if first is None:
            j = 0
        elif first == 0:
            j = n
        else:
            j = n - (first + 1)
        for lam, m in r.multiplicities.items():
            out[j][(lam, r.w0)] += m
    return out


# -- filtration -----------------------------------------------------------------

@dataclass
class FiltrationReport:
    n: int
    family: str
    kernel_dims: list[int]
    nested: bool
    factor_dims: dict[int, int]
    factor_sign_dims: dict[int, tuple[int, int]]
    predicted_dims: dict[int, int]
    predicted_sign_dims: dict[int, tuple[int, int]]
    factor_content: dict[int, Counter] = field(default_factory=dict)
    predicted_content: dict[int, Counter] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.nested and self.factor_dims == self.predicted_dims \
            and self.factor_sign_dims == self.predicted_sign_dims \
            and sum(self.factor_dims.values()) == factorial(self.n)


def _w0_split_dims(basis: xl.ExactMatrix, w0: xl.ExactMatrix) -> tuple[int, int]:
    d = basis.ncols()
    if d == 0:
        return 0, 0
    tr = int(xl.trace(xl.restrict(w0, basis)))
    return (d + tr) // 2, (d - tr) // 2


def _contains(big: xl.ExactMatrix, small: xl.ExactMatrix) -> bool:
    if small.ncols() == 0:
        return True
    return xl.hstack([big, small]).rank() == big.ncols()


def kernel_filtration(n: int, family: str = "columns") -> FiltrationReport:
    """Nested kernels along a family and the dimensions of successive quotients.

    Dense kernels are used for n <= 6; beyond that the dimensions come from
    Fourier-block ranks.
    """
    ops = family_partitions(n, family)
    if n <= 6:
        w0 = w0_matrix(n)
        kernels = [xl.identity(factorial(n))]
        nested = True
        for op in ops:
            k = xl.kernel_basis(nu_matrix(op))
            nested = nested and _contains(kernels[-1], k)
            kernels.append(k)
        dims = [k.ncols() for k in kernels]
        signs = [_w0_split_dims(k, w0) for k in kernels]
    else:
        nested = True
        dims, signs = [factorial(n)], []
        for i in range(len(ops)):
            dim, plus = 0, 0
            for lam in partitions(n):
                rep = snc.seminormal_rep(lam)
                stacked = _stack_rows([fourier_block(lam, op) for op in ops[:i + 1]])
                ker = xl.kernel_basis(stacked)
                dim += rep.dim * ker.ncols()
                if ker.ncols():
                    tr = int(xl.trace(xl.restrict(rep.w0(), ker))) if _invariant(rep.w0(), ker) else None
                    if tr is None:
                        raise ArithmeticError("w0 does not preserve a kernel")
                    plus += rep.dim * (ker.ncols() + tr) // 2
            dims.append(dim)
            signs.append((plus, dim - plus))
        signs.insert(0, (None, None))
    report_dims, report_signs = {}, {}
    pred_dims, pred_signs = {}, {}
    if family == "columns":
        levels = _column_levels(n, len(ops))
        total_plus = (factorial(n) + _trace_w0_regular(n)) // 2
        for j, (hi, lo) in levels.items():
            hi_dim = dims[hi] if hi is not None else factorial(n)
            lo_dim = dims[lo] if lo is not None else 0
            report_dims[j] = hi_dim - lo_dim
            if hi is None or hi == 0:
                hi_sign = (total_plus, factorial(n) - total_plus)
            else:
                hi_sign = signs[hi]
            lo_sign = signs[lo] if lo is not None else (0, 0)
            report_signs[j] = (hi_sign[0] - lo_sign[0], hi_sign[1] - lo_sign[1])
            _, dp, dm = derangement_counts(n - j)
            pred_dims[j] = comb(n, j) * (dp + dm)
            pred_signs[j] = (comb(n, j) * dp, comb(n, j) * dm)
    else:
        # every block of a two-block operator has rank at most one, so each
        # shape contributes f^lam once at the level where it first appears
        for a in range(len(ops)):
            report_dims[a] = dims[a] - dims[a + 1]
            pred_dims[a] = sum(snc.dimension(lam) for lam in partitions(n) if oddcols(lam) == n - 2 * a)
        report_dims[len(ops)] = dims[-1]
        pred_dims[len(ops)] = factorial(n) - sum(snc.dimension(lam) for lam in partitions(n))
        report_signs = pred_signs = {}
    return FiltrationReport(n, family, dims, nested, report_dims, report_signs, pred_dims, pred_signs)


def _stack_rows(mats: Sequence[xl.ExactMatrix]) -> xl.ExactMatrix:
    return xl.hstack([m.transpose() for m in mats]).transpose()


def _invariant(op: xl.ExactMatrix, basis: xl.ExactMatrix) -> bool:
    return op * basis == basis * xl.restrict(op, basis)


def _trace_w0_regular(n: int) -> int:
    # right multiplication by w0 on Q S_n has no fixed basis vectors for n >= 2
    return factorial(n) if n == 1 else 0


def _column_levels(n: int, count: int) -> dict[int, tuple[int | None, int | None]]:
    """Level j -> (index of the larger kernel, index of the smaller) in the kernel list.

    Index 0 is the whole space and index k is ker nu_(k,1^(n-k)).
    """
    if n == 1:
        return {1: (0, 1), 0: (1, None)}
    levels = {n: (0, 1), n - 1: (1, 1), 0: (count, None)}
    for k in range(2, n):
        levels[n - k] = (k - 1, k)
    return levels


# -- second family and Gelfand model --------------------------------------------

def second_family_trace(lam: Sequence[int], k: int, n: int) -> int:
    """sum_w noninv_(2^k,1^(n-2k))(w) chi^lam(w), summed over the whole group."""
    lam = check_partition(lam, n)
    op = two_block_partition(k, n)
    by_class: Counter = Counter()
    for w in all_permutations(n):
        by_class[cycle_type(w)] += noninv_lambda(w, op)
    return sum(c * snc.mn_character(lam, mu) for mu, c in by_class.items())


def second_family_eigenvalue(lam: Sequence[int], k: int, n: int) -> int:
    """The eigenvalue of nu_(2^k,1^(n-2k)) on its non-kernel chi^lam eigenspace.

    The Fourier block has rank at most one, so its only possible nonzero
    eigenvalue equals its trace.  Returns 0 when the block vanishes.
    """
    lam = check_partition(lam, n)
    if 2 * k > n:
        raise ValueError("2k must not exceed n")
    block = fourier_block(lam, two_block_partition(k, n))
    r = block.rank()
    if r > 1:
        raise ArithmeticError(f"block of rank {r} for {lam}, expected at most one")
    value = xl.trace(block)
    if (r == 0) != (oddcols(lam) < n - 2 * k):
        raise ArithmeticError("vanishing pattern disagrees with the odd-column count")
    if value.q != 1:
        raise IntegralityViolation(f"eigenvalue {value} on {lam} is not an integer")
    return int(value.p)


def gelfand_model_check(n: int) -> tuple[bool, dict[int, dict[NumberPartition, int]]]:
    """New non-kernel content per level a of the two-block family.

    Succeeds when level a carries exactly the lam with oddcols(lam) = n - 2a,
    each once; returns the computed content for reporting.
    """
    ops = family_partitions(n, "two-blocks")
    content: dict[int, dict[NumberPartition, int]] = {}
    ok = True
    for lam in partitions(n):
        prev = 0
        for a, op in enumerate(ops):
            stacked = _stack_rows([fourier_block(lam, o) for o in ops[:a + 1]])
            r = stacked.rank()
            new = r - prev
            prev = r
            if new:
                content.setdefault(a, {})[lam] = new
    seen = Counter()
    for a, block in content.items():
        for lam, m in block.items():
            seen[lam] += m
            if m != 1 or oddcols(lam) != n - 2 * a:
                ok = False
    if any(seen[lam] != 1 for lam in partitions(n)):
        ok = False
    return ok, content


# -- commutativity ----------------------------------------------------------

def operators_commute(lam: Sequence[int], gam: Sequence[int]) -> bool:
    """nu_lam and nu_gam commute iff every Fourier block pair does."""
    lam, gam = check_partition(lam), check_partition(gam)
    n = sum(lam)
    for kappa in partitions(n):
        a, b = fourier_block(kappa, lam), fourier_block(kappa, gam)
        if a * b != b * a:
            return False
    return True


def family_commutes_dense(n: int, family: str) -> bool:
    mats = [nu_matrix(op) for op in family_partitions(n, family)]
    return all(xl.commutator_is_zero(a, b) for i, a in enumerate(mats) for b in mats[i + 1:])


def family_commutes_blocks(n: int, family: str) -> bool:
    ops = family_partitions(n, family)
    for kappa in partitions(n):
        mats = [fourier_block(kappa, op) for op in ops]
        if not all(a * b == b * a for i, a in enumerate(mats) for b in mats[i + 1:]):
            return False
    return True


@dataclass
class CommutingPairsReport:
    n: int
    commuting: list[tuple[NumberPartition, NumberPartition]]
    predicted: list[tuple[NumberPartition, NumberPartition]]
    integral: dict[NumberPartition, bool]

    @property
    def matches(self) -> bool:
        fams = _family_members(self.n)
        integral_ok = all(v == (lam in fams) for lam, v in self.integral.items())
        return sorted(self.commuting) == sorted(self.predicted) and integral_ok


def _family_members(n: int) -> set[NumberPartition]:
    hooks = {hook_partition(k, n) for k in range(2, n)}
    twos = {two_block_partition(a, n) for a in range(1, n // 2 + 1)}
    return hooks | twos


def commuting_pairs_scan(n: int, check_integrality: bool = True) -> CommutingPairsReport:
    """Classify pairs of nu_lam (lam not (n) or (1^n)) by commutation.

    The prediction is that a pair commutes exactly when both lie in the hook
    family or both lie in the two-block family, and that nu_lam has integer
    spectrum exactly when lam lies in one of them.
    """
    cands = [lam for lam in partitions(n) if lam not in ((n,), (1,) * n)]
    hooks = {hook_partition(k, n) for k in range(2, n)}
    twos = {two_block_partition(a, n) for a in range(1, n // 2 + 1)}
    commuting, predicted = [], []
    for a, b in combinations(cands, 2):
        if operators_commute(a, b):
            commuting.append((a, b))
        if (a in hooks and b in hooks) or (a in twos and b in twos):
            predicted.append((a, b))
    integral = {}
    if check_integrality:
        for lam in cands:
            integral[lam] = _integral_spectrum(lam)
    return CommutingPairsReport(n, commuting, predicted, integral)


def _integral_spectrum(op: NumberPartition) -> bool:
    n = sum(op)
    for kappa in partitions(n):
        block = fourier_block(kappa, op)
        roots, residual, _ = xl.factor_rational_roots(xl.charpoly(block))
        if residual.degree() > 0 or any(r.denominator != 1 for r, _ in roots):
            return False
    return True


# -- injective words --------------------------------------------------------------

def injective_words(n: int, length: int) -> list[tuple[int, ...]]:
    return list(permutations(range(1, n + 1), length))


def delplus(n: int, j: int, i: int) -> xl.ExactMatrix:
    """Words of length j over {1..n} to the sum of their length-i subwords."""
    if not 0 <= i <= j <= n:
        raise ValueError("need 0 <= i <= j <= n")
    src, dst = injective_words(n, j), injective_words(n, i)
    idx = {w: r for r, w in enumerate(dst)}
    m = flint.fmpz_mat(len(dst), len(src))
    for col, a in enumerate(src):
        for pos in combinations(range(j), i):
            m[idx[tuple(a[p] for p in pos)], col] += 1
    return flint.fmpq_mat(m)


def delminus(n: int, i: int) -> xl.ExactMatrix:
    """Signed boundary from words of length i+1 to words of length i."""
    if not 0 <= i <= n - 1:
        raise ValueError("need 0 <= i <= n - 1")
    src, dst = injective_words(n, i + 1), injective_words(n, i)
    idx = {w: r for r, w in enumerate(dst)}
    m = flint.fmpz_mat(len(dst), len(src))
    for col, a in enumerate(src):
        for k in range(i + 1):
            m[idx[a[:k] + a[k + 1:]], col] += (-1) ** k
    return flint.fmpq_mat(m)


def delplus_composite_holds(n: int, k: int, j: int, i: int) -> bool:
    return delplus(n, j, i) * delplus(n, k, j) == comb(k - i, j - i) * delplus(n, k, i)


@dataclass
class BoundaryReport:
    n: int
    squares_vanish: bool
    kernel_dim: int
    sign_twist_matches: bool
    pi_content: Counter
    boundary_content: Counter

    @property
    def conjugate_match(self) -> bool:
        twisted = Counter({(conjugate(lam), e): m for (lam, e), m in self.pi_content.items()})
        return twisted == self.boundary_content


def _module_content(basis: xl.ExactMatrix, n: int, z2: xl.ExactMatrix) -> Counter:
    """(shape, sign) content of an S_n x Z2 stable subspace of Q S_n."""
    out: Counter = Counter()
    if basis.ncols() == 0:
        return out
    perms = all_permutations(n)
    idx = {w: i for i, w in enumerate(perms)}
    pull = {mu: [idx[compose(inverse(snc.standard_cycle_element(mu)), x)] for x in perms]
            for mu in partitions(n)}
    m = xl.restrict(z2, basis)
    for sgn in (1, -1):
        sub = xl.kernel_basis(m - sgn * xl.identity(m.nrows()))
        if sub.ncols() == 0:
            continue
        for lam, mult in _space_content(xl.column_echelon(basis * sub), n, perms, pull).items():
            out[(lam, sgn)] += mult
    return out


def injective_words_boundary(n: int) -> tuple[xl.ExactMatrix, BoundaryReport]:
    """Top signed boundary on Q S_n and its relation to the unsigned map pi_[n].

    Words of length n are permutations in one-line form, so Q S_n is the
    top chain group.  The sign map w -> sgn(w) w must carry ker pi onto
    ker of the boundary.
    """
    if n < 1:
        raise ValueError("n must be positive")
    top = delminus(n, n - 1)
    squares = True
    for i in range(1, n):
        sq = delminus(n, i - 1) * delminus(n, i)
        squares = squares and sq == xl.zeros(sq.nrows(), sq.ncols())
    pi_a = delplus(n, n, n - 1)
    k_pi = xl.kernel_basis(pi_a)
    k_bd = xl.kernel_basis(top)
    sgn = xl.diagonal([sign(w) for w in all_permutations(n)])
    twisted = xl.column_echelon(sgn * k_pi) if k_pi.ncols() else k_pi
    match = twisted == k_bd
    w0 = w0_matrix(n)
    pi_content = _module_content(k_pi, n, w0)
    bd_content = _module_content(k_bd, n, (-1) ** (n // 2) * w0)
    return top, BoundaryReport(n, squares, k_bd.ncols(), match, pi_content, bd_content)


# -- conjectural closed forms ----------------------------------------------------

@dataclass
class FormulaCell:
    description: str
    predicted: object
    computed: object

    @property
    def match(self) -> bool:
        return self.predicted == self.computed


def _joint_content(n: int, ops: Sequence[NumberPartition]) -> Counter:
    """Multiset {(shape, eigenvalue vector)} of joint eigenspaces, via Fourier blocks."""
    out: Counter = Counter()
    for lam in partitions(n):
        rep = snc.seminormal_rep(lam)
        mats = [fourier_block(lam, op) for op in ops]
        for key, b in _split_space(mats, xl.identity(rep.dim), partition_label(lam), []):
            out[(lam, tuple(Fraction(x) for x in key))] += b.ncols()
    return out


def conjecture_eigenvalue_formulas(n: int) -> list[FormulaCell]:
    """Compare closed-form eigenvalue guesses with computed spectra.

    Two families of guesses are checked.  First the nonzero joint eigenspaces
    of nu_(1^n), nu_(2,1^(n-2)), nu_(3,1^(n-3)) with their predicted shapes
    and eigenvalues; second the eigenvalues of every nu_(k,1^(n-k)) on the
    chi^(n-1,1) isotypic block, predicted as
    (n-k)! C(n-r-1, k-r-1) C(n+r, k+r) for r = 1..n-1.
    Mismatches are returned, not raised.
    """
    cells: list[FormulaCell] = []
    if n >= 4:
        ops = [hook_partition(k, n) for k in (1, 2, 3)]
        f = factorial
        guesses = [
            ((n,), (comb(n, 1) * f(n - 1), comb(n, 2) * f(n - 2), comb(n, 3) * f(n - 3))),
            ((n - 1, 1), (0, f(n + 1) // 6, f(n + 1) // 24)),
            ((n - 2, 1, 1), (0, f(n) // 6, comb(n, 2) * f(n - 1) // 6)),
            ((n - 1, 1), (0, 0, f(n + 2) // 120)),
            ((n - 2, 2), (0, 0, Fraction(f(n + 1), 30))),
            ((n - 2, 1, 1), (0, 0, Fraction(f(n + 1), 60))),
            ((n - 3, 2, 1), (0, 0, Fraction(f(n), 15))),
        ]
        computed = _joint_content(n, ops)
        nonzero = Counter({k: v for k, v in computed.items() if any(k[1])})
        predicted: Counter = Counter()
        for lam, vals in guesses:
            if all(lam[i] >= lam[i + 1] for i in range(len(lam) - 1)) and min(lam) > 0:
                predicted[(lam, tuple(Fraction(v) for v in vals))] += snc.dimension(lam)
        for key in sorted(set(predicted) | set(nonzero), key=lambda k: (k[1], k[0])):
            lam, vals = key
            desc = f"first three hooks on chi^{partition_label(lam)} at {tuple(_json_number(v) for v in vals)}"
            # store dimension-weighted presence: predicted spaces carry one copy
            cells.append(FormulaCell(desc, predicted.get(key, 0) > 0, nonzero.get(key, 0) > 0))
    if n >= 2:
        lam = (n - 1, 1)
        ops = [hook_partition(k, n) for k in range(1, n)]
        rep = snc.seminormal_rep(lam)
        mats = [fourier_block(lam, op) for op in ops]
        got = Counter()
        for key, b in _split_space(mats, xl.identity(rep.dim), "isotypic", []):
            got[tuple(Fraction(x) for x in key)] += b.ncols()
        want = Counter()
        for r in range(1, n):
            want[tuple(Fraction(factorial(n - k) * _binom(n - r - 1, k - r - 1) * _binom(n + r, k + r))
                       for k in range(1, n))] += 1
        cells.append(FormulaCell(f"chi^{partition_label(lam)} eigenvalue vectors over all hooks",
                                 sorted(want.items()), sorted(got.items())))
    return cells


def _binom(a: int, b: int) -> int:
    return comb(a, b) if 0 <= b <= a else 0


# -- single-operator facts --------------------------------------------------

def perron_value(lam: Sequence[int]) -> int:
    """Row sum of nu_lam, i.e. its eigenvalue on the all-ones vector."""
    lam = check_partition(lam)
    return sum(nu_element(lam).coefficients.values())


def orbit_index_product(lam: Sequence[int]) -> int:
    """[W : N(X)] [W : Z(X)] for the standard subspace of type lam.

    Z fixes X pointwise (permutes within blocks), N stabilises X.
    """
    lam = check_partition(lam)
    n = sum(lam)
    z = prod(factorial(p) for p in lam)
    nn = z * n_x(lam)
    return (factorial(n) // nn) * (factorial(n) // z)


def sign_eigenvalue(k: int, n: int) -> Fraction:
    """Eigenvalue of nu_(k,1^(n-k)) on the sign representation."""
    block = fourier_block((1,) * n, hook_partition(k, n))
    x = block[0, 0]
    return Fraction(int(x.p), int(x.q))


def random_invariant_weights(n: int, rng: random.Random, max_weight: int = 5) -> dict[tuple[int, ...], int]:
    return {c: rng.randint(0, max_weight) for c in compositions(n)}
