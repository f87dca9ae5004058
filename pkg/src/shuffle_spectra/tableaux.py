"""Standard Young tableaux and the statistics eig, k and epsilon.

Tableaux use English orientation: row 1 is on top and rows are listed
top to bottom.  Positions are 0-based ``(row, col)`` pairs.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .perm_core import NumberPartition, Permutation, check_partition, partitions


class StandardTableau:
    """An immutable standard Young tableau."""

    __slots__ = ("rows", "shape", "n", "_pos")

    def __init__(self, rows: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in r) for r in rows if len(r))
        shape = tuple(len(r) for r in rows)
        if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)):
            raise ValueError(f"rows {rows} do not form a partition shape")
        n = sum(shape)
        entries = sorted(x for r in rows for x in r)
        if entries != list(range(1, n + 1)):
            raise ValueError("entries must be exactly 1..n")
        for r in rows:
            if any(r[i] >= r[i + 1] for i in range(len(r) - 1)):
                raise ValueError("rows must increase")
        for i in range(1, len(rows)):
            if any(rows[i - 1][c] >= rows[i][c] for c in range(len(rows[i]))):
                raise ValueError("columns must increase")
        self.rows = rows
        self.shape: NumberPartition = shape
        self.n = n
        self._pos = {x: (i, c) for i, r in enumerate(rows) for c, x in enumerate(r)}

    def position(self, x: int) -> tuple[int, int]:
        return self._pos[x]

    def content(self, x: int) -> int:
        r, c = self._pos[x]
        return c - r

    def __eq__(self, other):
        return isinstance(other, StandardTableau) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"StandardTableau({[list(r) for r in self.rows]})"

    def __str__(self):
        return "/".join(",".join(str(x) for x in r) for r in self.rows)


EMPTY = StandardTableau(())


def hook_length_count(lam: NumberPartition) -> int:
    """Number of standard tableaux of shape lam by the hook-length formula."""
    lam = check_partition(lam)
    conj = [sum(1 for part in lam if part > c) for c in range(lam[0])] if lam else []
    hooks = prod(lam[i] - c + conj[c] - i - 1 for i in range(len(lam)) for c in range(lam[i]))
    return factorial(sum(lam)) // hooks


@lru_cache(maxsize=None)
def _syt_rows(lam: NumberPartition) -> tuple:
    n = sum(lam)
    out = []
    rows: list[list[int]] = [[] for _ in lam]

    def rec(x: int) -> None:
        if x > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            if len(rows[i]) < lam[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(x)
                rec(x + 1)
                rows[i].pop()

    rec(1)
    return tuple(out)


def enumerate_syt(lam: Sequence[int]) -> Iterator[StandardTableau]:
    """Each standard tableau of shape lam once.

    The first one produced is the row-reading tableau (1..lam_1 in the top
    row and so on).
    """
    lam = check_partition(lam)
    for rows in _syt_rows(lam):
        yield StandardTableau(rows)


def all_syt(n: int) -> list[StandardTableau]:
    if n == 0:
        return [EMPTY]
    return [q for lam in partitions(n) for q in enumerate_syt(lam)]


# -- descents and the eig statistic ---------------------------------------

def tableau_descents(q: StandardTableau) -> frozenset[int]:
    """i is a descent when i+1 sits in a strictly lower row than i."""
    return frozenset(i for i in range(1, q.n) if q.position(i + 1)[0] > q.position(i)[0])


def is_ascent(q: StandardTableau, i: int) -> bool:
    return i == q.n or i not in tableau_descents(q)


def eig_and_k(q: StandardTableau) -> tuple[int, int]:
    """Return (eig(Q), k(Q)) from the first run of descents."""
    if q.n == 0:
        return 0, 0
    des = tableau_descents(q)
    if not des:
        return q.n, 0
    ell = min(des)
    m = 0
    while ell + m in des:
        m += 1
    return (ell, m) if m % 2 == 0 else (ell - 1, m + 1)


def eig_and_k_search(q: StandardTableau) -> tuple[int, int]:
    """Same statistic, found by testing each candidate j against its definition."""
    n = q.n
    des = tableau_descents(q)
    found = []
    for j in list(range(0, n - 1)) + [n]:
        if any(i in des for i in range(1, j)):
            continue
        if not des:
            found.append((j, 0))
            continue
        first = next((i for i in range(j + 1, n + 1) if i not in des), None)
        if first is not None and (first - j) % 2 == 0:
            found.append((j, first - j))
    if not des:
        # no descents: the statistic is pinned to its largest value
        return n, 0
    if len(found) != 1:
        raise ArithmeticError(f"no unique eig value for {q}: {found}")
    return found[0]


def eig(q: StandardTableau) -> int:
    return eig_and_k(q)[0]


def maj(q: StandardTableau) -> int:
    return sum(tableau_descents(q))


# -- jeu de taquin ----------------------------------------------------------

def demote(q: StandardTableau) -> StandardTableau:
    """Slide out the entry 1 and decrement everything that is left."""
    if q.n == 0:
        raise ValueError("cannot demote the empty tableau")
    grid = [list(r) for r in q.rows]
    r, c = 0, 0
    while True:
        right = grid[r][c + 1] if c + 1 < len(grid[r]) else None
        below = grid[r + 1][c] if r + 1 < len(grid) and c < len(grid[r + 1]) else None
        if right is None and below is None:
            break
        if below is None or (right is not None and right < below):
            grid[r][c] = right
            c += 1
        else:
            grid[r][c] = below
            r += 1
    grid[r].pop(c)
    return StandardTableau([[x - 1 for x in row] for row in grid if row])


def demote_power(q: StandardTableau, j: int) -> StandardTableau:
    for _ in range(j):
        q = demote(q)
    return q


def is_horizontal_strip(outer: NumberPartition, inner: NumberPartition) -> bool:
    inner = tuple(inner) + (0,) * (len(outer) - len(inner))
    if len(inner) > len(outer):
        return False
    for i in range(len(outer)):
        if inner[i] > outer[i]:
            return False
        if i + 1 < len(outer) and outer[i + 1] > inner[i]:
            return False
    return True


def undemote(qhat: StandardTableau, mu: Sequence[int]) -> StandardTableau:
    """Rebuild Q from (demote^j(Q), shape(Q)) with j = |mu| - |qhat|.

    Outward slides run into the cells of the horizontal strip from left to
    right; the holes they leave in the top row receive 1..j.
    """
    mu = check_partition(mu)
    j = sum(mu) - qhat.n
    if j < 0 or not is_horizontal_strip(mu, qhat.shape):
        raise ValueError("shape difference is not a horizontal strip")
    grid: list[list[int | None]] = [list(r) for r in qhat.rows]
    while len(grid) < len(mu):
        grid.append([])
    inner = list(qhat.shape) + [0] * (len(mu) - len(qhat.shape))
    strip = sorted(((i, c) for i in range(len(mu)) for c in range(inner[i], mu[i])), key=lambda rc: rc[1])
    for r, c in strip:
        grid[r].append(None)
        # move the larger of the upper and left neighbours into the hole
        while True:
            up = grid[r - 1][c] if r > 0 else None
            left = grid[r][c - 1] if c > 0 else None
            if up is None and left is None:
                break
            if left is None or (up is not None and up > left):
                grid[r][c] = up
                r -= 1
            else:
                grid[r][c] = left
                c -= 1
            grid[r][c] = None
    out = []
    for i, row in enumerate(grid):
        new = []
        for c, x in enumerate(row):
            if x is None:
                if i != 0:
                    raise ArithmeticError("hole left outside the top row")
                new.append(c + 1)
            else:
                new.append(x + j)
        out.append(new)
    return StandardTableau(out)


# -- signs --------------------------------------------------------------------

def shaven_minus(n: int) -> StandardTableau:
    """Q^(n)_-: first column 1..n-2, n with n-1 beside the 1 (n even, n >= 4)."""
    if n < 4 or n % 2:
        raise ValueError("needs even n >= 4")
    return StandardTableau([[1, n - 1]] + [[i] for i in range(2, n - 1)] + [[n]])


def shaven_plus(n: int) -> StandardTableau:
    """Q^(n)_+: first column 1..n-1 with n beside the 1 (n odd, n >= 3)."""
    if n < 3 or n % 2 == 0:
        raise ValueError("needs odd n >= 3")
    return StandardTableau([[1, n]] + [[i] for i in range(2, n)])


def remove_largest_two(q: StandardTableau) -> StandardTableau:
    return StandardTableau([[x for x in r if x < q.n - 1] for r in q.rows])


def epsilon(q: StandardTableau) -> int:
    """The +-1 sign attached to Q by shaving and demotion."""
    sgn = 1
    while True:
        j = eig(q)
        if j > 0:
            q = demote_power(q, j)
            continue
        n = q.n
        if n == 0:
            return sgn
        if n >= 4 and n % 2 == 0 and q == shaven_minus(n):
            return -sgn
        if n >= 3 and n % 2 == 1 and q == shaven_plus(n):
            return sgn
        if (n - 1) in tableau_descents(q):
            sgn = -sgn
        q = remove_largest_two(q)


def predicted_factor(n: int, j: int) -> Counter:
    """Multiset of (shape, sign) over tableaux of size n with eig = j."""
    if not 0 <= j <= n:
        raise ValueError("j out of range")
    out: Counter = Counter()
    if j == n - 1 and n > 0:
        return out
    for q in all_syt(n):
        if eig(q) == j:
            out[(q.shape, epsilon(q))] += 1
    return out


# -- Robinson-Schensted ---------------------------------------------------

def rsk(w: Permutation) -> tuple[StandardTableau, StandardTableau]:
    """Row insertion of w(1), ..., w(n); returns (insertion, recording)."""
    p: list[list[int]] = []
    q: list[list[int]] = []
    for step, x in enumerate(w, start=1):
        row = 0
        while True:
            if row == len(p):
                p.append([x])
                q.append([step])
                break
            cur = p[row]
            bump = next((i for i, y in enumerate(cur) if y > x), None)
            if bump is None:
                cur.append(x)
                q[row].append(step)
                break
            cur[bump], x = x, cur[bump]
            row += 1
    return StandardTableau(p), StandardTableau(q)
