"""Permutations, partitions, words and the elementary statistics on them.

Permutations are plain tuples in one-line notation: ``w[i-1]`` is the image
of ``i``.  Number partitions are weakly decreasing tuples of positive ints and
set partitions are tuples of sorted tuples, ordered by their minima.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations, permutations, product
from math import comb, factorial, prod
from typing import Iterator, Sequence

Permutation = tuple[int, ...]
NumberPartition = tuple[int, ...]
SetPartition = tuple[tuple[int, ...], ...]


# -- permutations ---------------------------------------------------------

def check_permutation(w: Sequence[int]) -> Permutation:
    w = tuple(int(x) for x in w)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def parse_permutation(text: str) -> Permutation:
    """Read ``"2413"`` or ``"2,4,1,3"`` as a permutation."""
    text = text.strip()
    if "," in text or " " in text:
        parts = [p for p in text.replace(",", " ").split() if p]
        return check_permutation(int(p) for p in parts)
    return check_permutation(int(c) for c in text)


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def compose(u: Permutation, v: Permutation) -> Permutation:
    """Return u∘v, i.e. the map i -> u(v(i))."""
    if len(u) != len(v):
        raise ValueError("permutations of different sizes")
    return tuple(u[x - 1] for x in v)


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for i, x in enumerate(w, start=1):
        out[x - 1] = i
    return tuple(out)


def longest_element(n: int) -> Permutation:
    if n < 1:
        raise ValueError("n must be at least 1")
    return tuple(range(n, 0, -1))


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n in lexicographic order of one-line words."""
    return list(permutations(range(1, n + 1)))


def perm_index(n: int) -> dict[Permutation, int]:
    return {w: i for i, w in enumerate(all_permutations(n))}


def sign(w: Permutation) -> int:
    s = 1
    seen = [False] * len(w)
    for i in range(len(w)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = w[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def cycle_type(w: Permutation) -> NumberPartition:
    seen = [False] * len(w)
    lengths = []
    for i in range(len(w)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = w[j] - 1
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def fixed_points(w: Permutation) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(w, start=1) if x == i)


def inversion_count(w: Permutation) -> int:
    n = len(w)
    return sum(1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j])


def descent_set(w: Permutation) -> frozenset[int]:
    return frozenset(j for j in range(1, len(w)) if w[j - 1] > w[j])


def reduced_word(w: Permutation) -> list[int]:
    """Lexicographically smallest reduced word, found by bubble sort.

    Returns indices i of adjacent transpositions s_i with
    w = s_{i_1} s_{i_2} ... s_{i_l}.
    """
    # bubble sort w into the identity by right multiplication: w s_i swaps
    # positions i, i+1; record the swaps and reverse them.
    cur = list(w)
    swaps = []
    changed = True
    while changed:
        changed = False
        for i in range(len(cur) - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                swaps.append(i + 1)
                changed = True
    return swaps[::-1]


# -- number partitions ----------------------------------------------------

def check_partition(lam: Sequence[int], n: int | None = None) -> NumberPartition:
    lam = tuple(int(x) for x in lam)
    if any(x <= 0 for x in lam) or list(lam) != sorted(lam, reverse=True):
        raise ValueError(f"{lam} is not a weakly decreasing sequence of positive integers")
    if n is not None and sum(lam) != n:
        raise ValueError(f"{lam} does not sum to {n}")
    return lam


def partitions(n: int) -> list[NumberPartition]:
    """Partitions of n in reverse lexicographic order, (n) first."""
    out: list[NumberPartition] = []

    def rec(rest: int, cap: int, acc: list[int]) -> None:
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, cap), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(n, n, [])
    return out


def multiplicities(lam: NumberPartition) -> dict[int, int]:
    return dict(Counter(lam))


def conjugate(lam: NumberPartition) -> NumberPartition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x > i) for i in range(lam[0]))


def oddcols(lam: NumberPartition) -> int:
    return sum(1 for c in conjugate(lam) if c % 2 == 1)


def hook_partition(k: int, n: int) -> NumberPartition:
    """The partition (k, 1^(n-k))."""
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return (k,) + (1,) * (n - k)


def two_block_partition(a: int, n: int) -> NumberPartition:
    """The partition (2^a, 1^(n-2a))."""
    if not 0 <= 2 * a <= n:
        raise ValueError("need 0 <= 2a <= n")
    return (2,) * a + (1,) * (n - 2 * a)


def partition_label(lam: NumberPartition) -> str:
    """Compact label such as ``"3111"``; parts above 9 are comma separated."""
    if any(x > 9 for x in lam):
        return ",".join(str(x) for x in lam)
    return "".join(str(x) for x in lam)


def parse_partition(text: str) -> NumberPartition:
    text = text.strip().strip("()")
    if "," in text:
        return check_partition(int(p) for p in text.split(",") if p.strip())
    return check_partition(int(c) for c in text)


def set_partition_count(lam: NumberPartition) -> int:
    n = sum(lam)
    denom = prod(factorial(x) for x in lam) * prod(factorial(m) for m in multiplicities(lam).values())
    return factorial(n) // denom


# -- set partitions -------------------------------------------------------

def enumerate_set_partitions(n: int, lam: NumberPartition) -> Iterator[SetPartition]:
    """Every set partition of {1..n} of type lam, exactly once.

    Blocks are sorted by their minimum; the block holding the smallest
    unused element is chosen first, so the stream is deterministic.
    """
    lam = check_partition(lam, n)

    def rec(rest: tuple[int, ...], sizes: Counter) -> Iterator[list[tuple[int, ...]]]:
        if not rest:
            yield []
            return
        first, others = rest[0], rest[1:]
        for size in sorted(sizes, reverse=True):
            if sizes[size] == 0:
                continue
            sizes[size] -= 1
            for mates in combinations(others, size - 1):
                block = (first,) + mates
                remaining = tuple(x for x in others if x not in mates)
                for tail in rec(remaining, sizes):
                    yield [block] + tail
            sizes[size] += 1

    for blocks in rec(tuple(range(1, n + 1)), Counter(lam)):
        yield tuple(blocks)


def set_partition_type(x: SetPartition) -> NumberPartition:
    return tuple(sorted((len(b) for b in x), reverse=True))


def standard_set_partition(lam: NumberPartition) -> SetPartition:
    """Blocks {1..l1}, {l1+1..l1+l2}, ... on consecutive integers."""
    blocks, start = [], 1
    for part in lam:
        blocks.append(tuple(range(start, start + part)))
        start += part
    return tuple(blocks)


# -- noninversions --------------------------------------------------------

def _check_k(k: int, n: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"k = {k} out of range 1..{n}")


def noninv_k(w: Permutation, k: int) -> int:
    """Number of increasing subsequences of length k in the word w."""
    n = len(w)
    _check_k(k, n)
    # ends[i][l]: increasing subsequences of length l ending at position i
    ends = [[0] * (k + 1) for _ in range(n)]
    for i in range(n):
        ends[i][1] = 1
        for j in range(i):
            if w[j] < w[i]:
                row_j, row_i = ends[j], ends[i]
                for length in range(2, k + 1):
                    row_i[length] += row_j[length - 1]
    return sum(row[k] for row in ends)


def noninv_lambda(w: Permutation, lam: NumberPartition) -> int:
    """Set partitions of type lam whose blocks all appear increasing in w.

    A block of letters appears in increasing order exactly when the
    corresponding positions carry increasing values, so the count runs over
    position sets on which w increases.
    """
    n = len(w)
    lam = check_partition(lam, n)
    if lam == (1,) * n:
        return 1
    big = [x for x in lam if x > 1]
    if len(big) == 1:
        return noninv_k(w, big[0])
    # chains[i]: bitmask of positions j > i with w_j > w_i
    above = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            if w[j] > w[i]:
                above[i] |= 1 << j
    sizes = tuple(sorted(big, reverse=True))
    return _count_chain_cover(above, (1 << n) - 1, sizes, n)


def _count_chain_cover(above: list[int], full: int, sizes: tuple[int, ...], n: int) -> int:
    memo: dict[tuple[int, tuple[int, ...]], int] = {}

    def chains_from(i: int, length: int, avail: int) -> Iterator[int]:
        # increasing chains of the given length starting at i using avail
        if length == 1:
            yield 1 << i
            return
        nxt = above[i] & avail
        while nxt:
            low = nxt & -nxt
            j = low.bit_length() - 1
            for rest in chains_from(j, length - 1, avail):
                yield (1 << i) | rest
            nxt ^= low

    def rec(avail: int, need: tuple[int, ...]) -> int:
        if not need:
            return 1
        key = (avail, need)
        if key in memo:
            return memo[key]
        total_need = sum(need)
        if bin(avail).count("1") < total_need:
            memo[key] = 0
            return 0
        # the lowest available position either starts a big block or is a singleton
        low = avail & -avail
        i = low.bit_length() - 1
        rest_avail = avail ^ low
        total = 0
        if bin(rest_avail).count("1") >= total_need:
            total += rec(rest_avail, need)
        for idx, size in enumerate(need):
            if idx and need[idx - 1] == size:
                continue
            rest_need = need[:idx] + need[idx + 1:]
            for chain in chains_from(i, size, avail):
                total += rec(avail & ~chain, rest_need)
        memo[key] = total
        return total

    return rec(full, sizes)


def noninv_lambda_bruteforce(w: Permutation, lam: NumberPartition) -> int:
    """Reference count straight from the definition, for small n."""
    pos = inverse(w)
    count = 0
    for x in enumerate_set_partitions(len(w), lam):
        if all(all(pos[b[i] - 1] < pos[b[i + 1] - 1] for i in range(len(b) - 1)) for b in x):
            count += 1
    return count


def inv_lambda(w: Permutation, lam: NumberPartition) -> int:
    """Inversion counterpart of noninv for a hyperplane orbit (2, 1^(n-2))."""
    n = len(w)
    lam = check_partition(lam, n)
    if lam != hook_partition(2, n):
        raise ValueError("inv_lambda is defined here only for lambda = (2, 1^(n-2))")
    return comb(n, 2) - noninv_lambda(w, lam)


def d_coefficient(w: Permutation, k: int, l: int) -> int:
    """Coefficient of w in nu_(k,1^(n-k)) * nu_(l,1^(n-l)), by brute force.

    Counts pairs (u, v) with uv = w, weighted by noninv of the hook shapes.
    For k = 1 the hook is (1^n) and every permutation has weight 1.
    """
    n = len(w)
    _check_k(k, n)
    _check_k(l, n)

    def weight(x: Permutation, j: int) -> int:
        return 1 if j == 1 else noninv_k(x, j)

    total = 0
    for u in all_permutations(n):
        a = weight(u, k)
        if a:
            v = compose(inverse(u), w)
            total += a * weight(v, l)
    return total


# -- derangements ---------------------------------------------------------

def derangement_counts(n: int) -> tuple[int, int, int]:
    """(d_n, d_n^+, d_n^-): all, even and odd fixed-point-free permutations.

    Summed over cycle types without parts equal to 1, using class sizes.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    even = odd = 0
    for lam in partitions(n) if n else [()]:
        if 1 in lam:
            continue
        size = class_size(lam)
        if (n - len(lam)) % 2 == 0:
            even += size
        else:
            odd += size
    return even + odd, even, odd


def derangement_identities(n_max: int) -> dict[str, bool]:
    """Check the classical derangement recurrences against class-size counts up to n_max.

    Keys name each identity; values say whether it held for every n in range.
    """
    d = [derangement_counts(n) for n in range(n_max + 1)]
    tot = [x[0] for x in d]
    plus = [x[1] for x in d]
    minus = [x[2] for x in d]
    rng2 = range(2, n_max + 1)
    return {
        "d_n = (n-1)(d_{n-1} + d_{n-2})": all(tot[n] == (n - 1) * (tot[n - 1] + tot[n - 2]) for n in rng2),
        "d+_n = (n-1)(d-_{n-1} + d-_{n-2})": all(plus[n] == (n - 1) * (minus[n - 1] + minus[n - 2]) for n in rng2),
        "d-_n = (n-1)(d+_{n-1} + d+_{n-2})": all(minus[n] == (n - 1) * (plus[n - 1] + plus[n - 2]) for n in rng2),
        "d_n = n d_{n-1} + (-1)^n": all(tot[n] == n * tot[n - 1] + (-1) ** n for n in range(1, n_max + 1)),
        "d+_n - d-_n = (-1)^(n-1) (n-1)": all(plus[n] - minus[n] == (-1) ** (n - 1) * (n - 1)
                                              for n in range(n_max + 1)),
        "d_n = 2 C(n,2) d_{n-2} + (-1)^(n-1) (n-1)": all(
            tot[n] == 2 * comb(n, 2) * tot[n - 2] + (-1) ** (n - 1) * (n - 1) for n in rng2),
        "n! = sum_j C(n,j) d_{n-j}, also by sign": all(
            factorial(n) == sum(comb(n, j) * tot[n - j] for j in range(n + 1))
            and _even_count(n) == sum(comb(n, j) * plus[n - j] for j in range(n + 1))
            for n in range(n_max + 1)),
    }


def _even_count(n: int) -> int:
    return factorial(n) if n < 2 else factorial(n) // 2


def class_size(mu: NumberPartition) -> int:
    n = sum(mu)
    return factorial(n) // centralizer_order(mu)


def centralizer_order(mu: NumberPartition) -> int:
    return prod(part ** m * factorial(m) for part, m in multiplicities(mu).items())


# -- words ----------------------------------------------------------------

def lyndon_factorization(x: Sequence) -> list[tuple]:
    """Duval's algorithm: factors are Lyndon and weakly decreasing."""
    x = list(x)
    n, i, out = len(x), 0, []
    while i < n:
        j, k = i + 1, i
        while j < n and x[k] <= x[j]:
            k = i if x[k] < x[j] else k + 1
            j += 1
        while i <= k:
            out.append(tuple(x[i:i + j - k]))
            i += j - k
    return out


def lyndon_type(x: Sequence) -> NumberPartition:
    if len(x) == 0:
        raise ValueError("empty word")
    return tuple(sorted((len(f) for f in lyndon_factorization(x)), reverse=True))


def is_lyndon(x: Sequence) -> bool:
    x = tuple(x)
    return len(x) > 0 and all(x < x[i:] + x[:i] for i in range(1, len(x)))


def _fundamental_expansion(descents: frozenset[int], n: int, m: int) -> Counter:
    """Monomials of the fundamental quasisymmetric function F_D in m variables."""
    out: Counter = Counter()

    def rec(pos: int, low: int, exps: list[int]) -> None:
        if pos > n:
            out[tuple(exps)] += 1
            return
        start = low
        if pos > 1 and (pos - 1) in descents:
            start = low + 1
        for var in range(start, m):
            exps[var] += 1
            rec(pos + 1, var, exps)
            exps[var] -= 1

    rec(1, 0, [0] * m)
    return out


def gessel_reutenauer_check(lam: NumberPartition, m: int, n: int | None = None):
    """Compare the Lyndon-type word count with the descent-class expansion.

    Returns ``(True, None)`` on coefficientwise equality and otherwise
    ``(False, monomial)`` for the first exponent vector that disagrees.
    """
    lam = check_partition(lam)
    n = sum(lam) if n is None else n
    if sum(lam) != n:
        raise ValueError("lambda must be a partition of n")
    if m < 1:
        raise ValueError("alphabet size must be positive")
    words: Counter = Counter()
    for word in product(range(m), repeat=n):
        if lyndon_type(word) == lam:
            exps = [0] * m
            for letter in word:
                exps[letter] += 1
            words[tuple(exps)] += 1
    quasi: Counter = Counter()
    for w in all_permutations(n):
        if cycle_type(w) == lam:
            quasi.update(_fundamental_expansion(descent_set(w), n, m))
    for mono in sorted(set(words) | set(quasi)):
        if words[mono] != quasi[mono]:
            return False, mono
    return True, None


@lru_cache(maxsize=None)
def _set_partitions_all(n: int) -> tuple[SetPartition, ...]:
    out = []
    for lam in partitions(n):
        out.extend(enumerate_set_partitions(n, lam))
    return tuple(out)


def all_set_partitions(n: int) -> tuple[SetPartition, ...]:
    return _set_partitions_all(n)


def refines(x: SetPartition, y: SetPartition) -> bool:
    """True if every block of x lies inside a block of y."""
    where = {}
    for idx, block in enumerate(y):
        for e in block:
            where[e] = idx
    return all(len({where[e] for e in block}) == 1 for block in x)


def partition_lattice_mobius(n: int) -> int:
    """Mobius function from the finest to the coarsest set partition of {1..n}."""
    elems = list(all_set_partitions(n))
    bottom = tuple((i,) for i in range(1, n + 1))
    # sort by number of blocks descending so lower elements come first
    elems.sort(key=lambda x: -len(x))
    mu: dict[SetPartition, int] = {}
    for y in elems:
        if y == bottom:
            mu[y] = 1
            continue
        mu[y] = -sum(mu[x] for x in mu if refines(x, y) and x != y)
    return mu[((tuple(range(1, n + 1))),)]
