"""Characters and Young seminormal representations of the symmetric group.

Matrices are exact (``flint.fmpq_mat``).  Each seminormal representation
carries a diagonal invariant form ``D`` with ``rho(g)^T D rho(g) = D``, so the
image of the antipode ``a* = sum a_w w^-1`` is ``D^-1 rho(a)^T D``.
"""

from __future__ import annotations

import cmath
import json
import os
import tempfile
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import flint

from . import exact_linalg as xl
from .perm_core import (NumberPartition, Permutation, all_permutations, check_partition, class_size,
                        compose, cycle_type, descent_set, identity, inverse, longest_element,
                        partition_label, partitions, reduced_word)
from .tableaux import StandardTableau, enumerate_syt, hook_length_count, tableau_descents


# -- characters -------------------------------------------------------------

def dimension(lam: Sequence[int]) -> int:
    return hook_length_count(check_partition(lam))


@lru_cache(maxsize=None)
def _mn_beta(beta: tuple[int, ...], mu: tuple[int, ...]) -> int:
    if not mu:
        return 1
    r, rest = mu[0], mu[1:]
    occupied = set(beta)
    total = 0
    for b in beta:
        if b - r < 0 or (b - r) in occupied:
            continue
        between = sum(1 for x in beta if b - r < x < b)
        new = tuple(sorted((occupied - {b}) | {b - r}))
        total += (-1) ** between * _mn_beta(new, rest)
    return total


def mn_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi^lam on the class of cycle type mu, by removing border strips.

    Border strips are bead moves on the beta-set of lam; the sign is the
    parity of the beads jumped over.
    """
    lam, mu = check_partition(lam), check_partition(mu)
    if sum(lam) != sum(mu):
        raise ValueError("lam and mu must have the same size")
    length = len(lam)
    beta = tuple(sorted(lam[i] + length - 1 - i for i in range(length)))
    return _mn_beta(beta, mu)


@dataclass(frozen=True)
class CharacterTable:
    n: int
    partitions: tuple[NumberPartition, ...]
    classes: tuple[NumberPartition, ...]
    values: tuple[tuple[int, ...], ...]
    class_sizes: tuple[int, ...]

    def value(self, lam: NumberPartition, mu: NumberPartition) -> int:
        return self.values[self.partitions.index(tuple(lam))][self.classes.index(tuple(mu))]

    def dimension(self, lam: NumberPartition) -> int:
        return self.value(lam, (1,) * self.n)


@lru_cache(maxsize=None)
def character_table(n: int) -> CharacterTable:
    parts = tuple(partitions(n))
    vals = tuple(tuple(mn_character(lam, mu) for mu in parts) for lam in parts)
    return CharacterTable(n, parts, parts, vals, tuple(class_size(mu) for mu in parts))


# -- seminormal representations -------------------------------------------

class SeminormalRep:
    """Young's seminormal form for the irreducible indexed by lam.

    The basis is the standard tableaux of shape lam in ``enumerate_syt``
    order.  ``generators[i-1]`` is the matrix of s_i.
    """

    def __init__(self, lam: Sequence[int]):
        self.lam = check_partition(lam)
        self.n = sum(self.lam)
        self.tableaux: list[StandardTableau] = list(enumerate_syt(self.lam))
        self.index = {t.rows: k for k, t in enumerate(self.tableaux)}
        self.dim = len(self.tableaux)
        self.generators = [self._generator(i) for i in range(1, self.n)]
        self.form = self._invariant_form()
        self._form_inv = [1 / d for d in self.form]

    def _swap(self, t: StandardTableau, i: int) -> tuple:
        swap = {i: i + 1, i + 1: i}
        return tuple(tuple(swap.get(x, x) for x in r) for r in t.rows)

    def _generator(self, i: int) -> xl.ExactMatrix:
        m = xl.zeros(self.dim)
        for k, t in enumerate(self.tableaux):
            (r1, c1), (r2, c2) = t.position(i), t.position(i + 1)
            if r1 == r2:
                m[k, k] = 1
            elif c1 == c2:
                m[k, k] = -1
            else:
                r = (c2 - r2) - (c1 - r1)
                k2 = self.index[self._swap(t, i)]
                m[k, k] = flint.fmpq(1, r)
                m[k2, k] = 1 if r > 0 else 1 - flint.fmpq(1, r * r)
        return m

    def _invariant_form(self) -> list[flint.fmpq]:
        form: list = [None] * self.dim
        if self.dim == 0:
            return []
        form[0] = flint.fmpq(1)
        queue = deque([0])
        while queue:
            k = queue.popleft()
            t = self.tableaux[k]
            for i in range(1, self.n):
                (r1, c1), (r2, c2) = t.position(i), t.position(i + 1)
                if r1 == r2 or c1 == c2:
                    continue
                r = (c2 - r2) - (c1 - r1)
                k2 = self.index[self._swap(t, i)]
                if form[k2] is not None:
                    continue
                factor = 1 - flint.fmpq(1, r * r)
                form[k2] = form[k] * factor if r > 0 else form[k] / factor
                queue.append(k2)
        d = xl.diagonal(form)
        for g in self.generators:
            if g.transpose() * d * g != d:
                raise ArithmeticError("seminormal generators do not preserve the form")
        return form

    def rho_word(self, word: Iterable[int]) -> xl.ExactMatrix:
        out = xl.identity(self.dim)
        for i in word:
            out = out * self.generators[i - 1]
        return out

    def rho(self, w: Permutation) -> xl.ExactMatrix:
        if len(w) != self.n:
            raise ValueError("permutation size does not match the representation")
        return self.rho_word(reduced_word(w))

    def adjoint(self, m: xl.ExactMatrix) -> xl.ExactMatrix:
        """D^-1 m^T D: the image of the antipode of whatever m represents."""
        t = m.transpose()
        out = xl.zeros(self.dim)
        for i in range(self.dim):
            for j in range(self.dim):
                if t[i, j] != 0:
                    out[i, j] = self._form_inv[i] * t[i, j] * self.form[j]
        return out

    def w0(self) -> xl.ExactMatrix:
        return self.rho(longest_element(self.n)) if self.n else xl.identity(1)


@lru_cache(maxsize=None)
def seminormal_rep(lam: NumberPartition) -> SeminormalRep:
    return SeminormalRep(lam)


def rho_all(rep: SeminormalRep) -> dict[Permutation, xl.ExactMatrix]:
    """rho(w) for every w, by a breadth-first walk rho(w s_i) = rho(w) rho(s_i)."""
    n = rep.n
    start = identity(n)
    out = {start: xl.identity(rep.dim)}
    queue = deque([start])
    gens = []
    for i in range(1, n):
        s = list(range(1, n + 1))
        s[i - 1], s[i] = s[i], s[i - 1]
        gens.append(tuple(s))
    while queue:
        w = queue.popleft()
        for i, s in enumerate(gens):
            ws = compose(w, s)
            if ws not in out:
                out[ws] = out[w] * rep.generators[i]
                queue.append(ws)
    return out


def rho_of_element(rep: SeminormalRep, a) -> xl.ExactMatrix:
    """sum_w a_w rho(w) for a group-algebra element (or a plain mapping)."""
    coeffs: Mapping = getattr(a, "coefficients", a)
    if coeffs and len(next(iter(coeffs))) != rep.n:
        raise ValueError("element and representation live over different n")
    out = xl.zeros(rep.dim)
    if len(coeffs) > factorial(rep.n) // 4:
        table = rho_all(rep)
        for w, c in coeffs.items():
            out += xl._to_fmpq(c) * table[w]
    else:
        for w, c in coeffs.items():
            out += xl._to_fmpq(c) * rep.rho(w)
    return out


# -- coset sums -------------------------------------------------------------

def _cycle_chain(rep: SeminormalRep, m: int) -> list[xl.ExactMatrix]:
    """[rho(c_1), ..., rho(c_m)] for c_i = s_i s_{i+1} ... s_{m-1}."""
    chain = [xl.identity(rep.dim)]
    for i in range(m - 1, 0, -1):
        chain.append(rep.generators[i - 1] * chain[-1])
    return chain[::-1]


def shuffle_sum_rho(rep: SeminormalRep, a: int, b: int) -> xl.ExactMatrix:
    """rho of the sum of permutations increasing on 1..a and on a+1..a+b."""
    if b == 0:
        return xl.identity(rep.dim)
    level = _cycle_chain(rep, a + 1)
    for t in range(2, b + 1):
        chain = _cycle_chain(rep, a + t)
        nxt = []
        acc = xl.zeros(rep.dim)
        for j in range(1, a + t + 1):
            # acc = sum of level[j'] over j' < j
            nxt.append(chain[j - 1] * acc)
            if j - 1 < len(level):
                acc = acc + level[j - 1]
        level = nxt
    total = xl.zeros(rep.dim)
    for x in level:
        total += x
    return total


def coset_sum_rho(rep: SeminormalRep, composition: Sequence[int]) -> xl.ExactMatrix:
    """rho of the sum of all w increasing on each consecutive block of positions."""
    comp = [c for c in composition if c > 0]
    if sum(comp) != rep.n:
        raise ValueError("composition must sum to n")
    out = xl.identity(rep.dim)
    # D(c) = Sh(a, b) . D(c without its last block), built right to left
    factors = []
    while len(comp) > 1:
        b = comp.pop()
        a = sum(comp)
        factors.append(shuffle_sum_rho(rep, a, b))
    for f in factors:
        out = out * f
    return out


def coset_representatives(composition: Sequence[int]) -> list[Permutation]:
    """All w in S_n increasing on each consecutive block of positions."""
    n = sum(composition)
    cuts, start = [], 0
    for c in composition:
        cuts.append((start, start + c))
        start += c
    return [w for w in all_permutations(n)
            if all(all(w[i] < w[i + 1] for i in range(s, e - 1)) for s, e in cuts)]


# -- class functions ----------------------------------------------------------

def isotypic_multiplicities(class_function: Mapping, n: int) -> dict[NumberPartition, Fraction | complex]:
    """<f, chi^lam> for every lam, from values of f on cycle types."""
    table = character_table(n)
    out = {}
    exact = all(isinstance(v, (int, Fraction)) or hasattr(v, "p") for v in class_function.values())
    for li, lam in enumerate(table.partitions):
        total = 0
        for mi, mu in enumerate(table.classes):
            val = class_function.get(mu, 0)
            if hasattr(val, "p"):
                val = Fraction(int(val.p), int(val.q))
            total += table.class_sizes[mi] * val * table.values[li][mi]
        out[lam] = Fraction(total, factorial(n)) if exact else total / factorial(n)
    return out


def induced_character(elements: Iterable[tuple[Permutation, object]], n: int) -> dict[NumberPartition, object]:
    """Character of Ind_H^{S_n} psi for a subgroup H listed with psi values.

    Ind psi(g) = |C(g)| / |H| * sum of psi(h) over h in H conjugate to g.
    Values stay exact when psi is rational and become complex otherwise.
    """
    elements = list(elements)
    order = len(elements)
    if order == 0:
        raise ValueError("empty subgroup")
    sums: dict[NumberPartition, object] = {}
    for h, val in elements:
        mu = cycle_type(h)
        sums[mu] = sums.get(mu, 0) + val
    out = {}
    for mu in partitions(n):
        s = sums.get(mu, 0)
        cent = factorial(n) // class_size(mu)
        if isinstance(s, complex):
            out[mu] = cent * s / order
        else:
            out[mu] = Fraction(cent) * Fraction(s) / order
    return out


def induced_multiplicities(elements: Iterable[tuple[Permutation, object]], n: int,
                           tol: float = 1e-6) -> dict[NumberPartition, int]:
    """Multiplicities of irreducibles in an induced character, as integers.

    On the floating-point path every inner product must lie within tol of
    an integer with negligible imaginary part.
    """
    mult = isotypic_multiplicities(induced_character(elements, n), n)
    out = {}
    for lam, m in mult.items():
        if isinstance(m, Fraction):
            if m.denominator != 1:
                raise ArithmeticError(f"non-integral multiplicity {m} for {lam}")
            out[lam] = int(m)
        else:
            z = complex(m)
            k = round(z.real)
            if abs(z.real - k) > tol or abs(z.imag) > tol:
                raise ArithmeticError(f"multiplicity of {lam} is {z}, not an integer")
            out[lam] = k
    return out


def standard_cycle_element(lam: Sequence[int]) -> Permutation:
    """Product of cycles (1 2 .. l1)(l1+1 ..) on consecutive blocks."""
    lam = check_partition(lam)
    w, start = [], 1
    for part in lam:
        block = list(range(start, start + part))
        w.extend(block[1:] + block[:1])
        start += part
    return tuple(w)


def lehrer_solomon_elements(lam: Sequence[int]) -> list[tuple[Permutation, complex]]:
    """The centraliser of v_lam with the linear character xi_lam.

    xi sends every j-cycle of v_lam to exp(2 pi i / j) and is trivial on
    permutations of equal-length cycles; on a general centraliser element
    it multiplies the root powers picked up by each cycle.
    """
    lam = check_partition(lam)
    n = sum(lam)
    v = standard_cycle_element(lam)
    cycles, start = [], 1
    for part in lam:
        cycles.append(list(range(start, start + part)))
        start += part
    where = {x: (ci, k) for ci, c in enumerate(cycles) for k, x in enumerate(c)}
    out = []
    for g in all_permutations(n):
        if compose(g, v) != compose(v, g):
            continue
        val = complex(1)
        for c in cycles:
            ci, k = where[g[c[0] - 1]]
            val *= cmath.exp(2j * cmath.pi * k / len(c))
        out.append((g, val))
    return out


def whitney_character(lam: Sequence[int]) -> dict[NumberPartition, complex]:
    lam = check_partition(lam)
    return induced_character(lehrer_solomon_elements(lam), sum(lam))


def descent_class_schur_expansion(lam: Sequence[int]) -> dict[NumberPartition, Fraction]:
    """Schur coefficients of sum_{w of cycle type lam} F_Des(w).

    Fundamental quasisymmetric functions are independent and s_kappa is the
    sum of F_Des(Q) over tableaux Q of shape kappa, so the coefficients solve
    an exact linear system indexed by descent sets.
    """
    lam = check_partition(lam)
    n = sum(lam)
    shapes = partitions(n)
    subsets = sorted({frozenset(d) for d in _all_subsets(n - 1)}, key=sorted)
    row = {s: i for i, s in enumerate(subsets)}
    a = xl.zeros(len(subsets), len(shapes))
    for j, kappa in enumerate(shapes):
        for q in enumerate_syt(kappa):
            a[row[tableau_descents(q)], j] += 1
    b = xl.zeros(len(subsets), 1)
    for w in all_permutations(n):
        if cycle_type(w) == lam:
            b[row[descent_set(w)], 0] += 1
    at = a.transpose()
    x = (at * a).solve(at * b)
    if a * x != b:
        raise ArithmeticError("descent-class sum is not Schur positive combination")
    return {kappa: Fraction(int(x[j, 0].p), int(x[j, 0].q)) for j, kappa in enumerate(shapes)}


def _all_subsets(m: int):
    for mask in range(1 << m):
        yield {i + 1 for i in range(m) if mask >> i & 1}


# -- disk cache ---------------------------------------------------------------

CACHE_VERSION = 1


def _frac_pair(x) -> list[int]:
    return [int(x.p), int(x.q)]


def rep_to_json(rep: SeminormalRep) -> dict:
    return {
        "version": CACHE_VERSION,
        "n": rep.n,
        "lambda": list(rep.lam),
        "dim": rep.dim,
        "tableaux": [[list(r) for r in t.rows] for t in rep.tableaux],
        "form": [_frac_pair(d) for d in rep.form],
        "matrices": [[[_frac_pair(x) for x in row] for row in g.tolist()] for g in rep.generators],
    }


def table_to_json(table: CharacterTable) -> dict:
    return {
        "version": CACHE_VERSION,
        "n": table.n,
        "partitions": [list(p) for p in table.partitions],
        "class_sizes": list(table.class_sizes),
        "values": [list(r) for r in table.values],
    }


def _atomic_write(path: Path, payload: dict) -> None:
    text = json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=".tmp-", suffix=".json")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def build_cache(directory: str | os.PathLike, n: int) -> list[Path]:
    """Write the character table and every seminormal rep for S_n."""
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    written = []
    path = d / f"characters-n{n}.json"
    _atomic_write(path, table_to_json(character_table(n)))
    written.append(path)
    for lam in partitions(n):
        path = d / f"seminormal-n{n}-{partition_label(lam)}.json"
        _atomic_write(path, rep_to_json(seminormal_rep(lam)))
        written.append(path)
    return written


def inspect_cache(directory: str | os.PathLike, n: int) -> list[tuple[NumberPartition, int]]:
    """(lambda, dimension) for the cached reps of S_n, in partition order."""
    d = Path(directory)
    out = []
    for lam in partitions(n):
        path = d / f"seminormal-n{n}-{partition_label(lam)}.json"
        if not path.exists():
            raise FileNotFoundError(path)
        data = json.loads(path.read_text())
        if data.get("version") != CACHE_VERSION:
            raise ValueError(f"{path}: unsupported cache version")
        out.append((tuple(data["lambda"]), int(data["dim"])))
    return out


def load_rep_matrices(path: str | os.PathLike) -> list[xl.ExactMatrix]:
    data = json.loads(Path(path).read_text())
    mats = []
    for g in data["matrices"]:
        mats.append(xl.matrix([[Fraction(p, q) for p, q in row] for row in g]))
    return mats


def clear_cache(directory: str | os.PathLike) -> int:
    d = Path(directory)
    if not d.exists():
        return 0
    count = 0
    for path in d.glob("*.json"):
        path.unlink()
        count += 1
    return count
