from itertools import combinations, permutations
from math import comb, factorial

import pytest
from hypothesis import given, settings, strategies as st

from shuffle_spectra import perm_core as pc


def perms(max_n=6):
    return st.integers(1, max_n).flatmap(lambda n: st.permutations(list(range(1, n + 1))).map(tuple))


def brute_noninv_k(w, k):
    return sum(1 for pos in combinations(range(len(w)), k)
               if all(w[a] < w[b] for a, b in zip(pos, pos[1:])))


# -- permutations ---------------------------------------------------------

def test_compose_examples():
    assert pc.compose((2, 1, 3), (1, 3, 2)) == (2, 3, 1)
    w = (3, 1, 4, 2)
    assert pc.compose(pc.identity(4), w) == w
    assert pc.compose(w, pc.inverse(w)) == pc.identity(4)


def test_compose_size_mismatch():
    with pytest.raises(ValueError):
        pc.compose((1, 2), (1, 2, 3))


def test_longest_element():
    assert pc.longest_element(3) == (3, 2, 1)
    assert pc.longest_element(1) == (1,)
    with pytest.raises(ValueError):
        pc.longest_element(0)


def test_parse_permutation():
    assert pc.parse_permutation("2413") == (2, 4, 1, 3)
    assert pc.parse_permutation("2, 4, 1, 3") == (2, 4, 1, 3)
    with pytest.raises(ValueError):
        pc.parse_permutation("1134")


def test_descent_set_examples():
    assert pc.descent_set(pc.identity(4)) == frozenset()
    assert pc.descent_set(pc.longest_element(4)) == {1, 2, 3}
    assert pc.descent_set((2, 4, 1, 3)) == {2}


@given(perms())
def test_reduced_word_rebuilds_permutation(w):
    word = pc.reduced_word(w)
    assert len(word) == pc.inversion_count(w)
    cur = pc.identity(len(w))
    for i in word:
        s = list(pc.identity(len(w)))
        s[i - 1], s[i] = s[i], s[i - 1]
        cur = pc.compose(cur, tuple(s))
    assert cur == w


@given(perms())
def test_sign_matches_inversion_parity(w):
    assert pc.sign(w) == (-1) ** pc.inversion_count(w)


# -- noninversions --------------------------------------------------------

def test_noninv_k_examples():
    assert pc.noninv_k((1, 2, 3), 2) == 3
    assert pc.noninv_k((2, 1, 3), 2) == 2
    for n in range(2, 6):
        for k in range(2, n + 1):
            assert pc.noninv_k(pc.longest_element(n), k) == 0


def test_noninv_k_range():
    with pytest.raises(ValueError):
        pc.noninv_k((1, 2, 3), 4)


def test_noninv_lambda_examples():
    for w in permutations(range(1, 5)):
        assert pc.noninv_lambda(w, (1, 1, 1, 1)) == 1
    assert pc.noninv_lambda((1, 2, 3), (2, 1)) == 3
    assert pc.noninv_lambda((1, 2, 3, 4), (2, 2)) == 3


def test_inv_lambda_examples():
    assert pc.inv_lambda(pc.longest_element(4), (2, 1, 1)) == 6
    assert pc.inv_lambda(pc.identity(4), (2, 1, 1)) == 0
    assert pc.inv_lambda((2, 1, 3), (2, 1)) == 1


@given(perms(6), st.data())
def test_noninv_k_against_subsets(w, data):
    k = data.draw(st.integers(1, len(w)))
    assert pc.noninv_k(w, k) == brute_noninv_k(w, k)


@given(perms(6))
def test_noninv_symmetric_under_inverse(w):
    for k in range(1, len(w) + 1):
        assert pc.noninv_k(w, k) == pc.noninv_k(pc.inverse(w), k)


@given(perms(6))
def test_pairs_split_into_inversions_and_noninversions(w):
    if len(w) >= 2:
        assert pc.noninv_k(w, 2) + pc.inversion_count(w) == comb(len(w), 2)


@settings(max_examples=60)
@given(perms(7), st.data())
def test_noninv_lambda_against_bruteforce(w, data):
    lam = data.draw(st.sampled_from(pc.partitions(len(w))))
    assert pc.noninv_lambda(w, lam) == pc.noninv_lambda_bruteforce(w, lam)


# -- set partitions ---------------------------------------------------------

@pytest.mark.parametrize("n,lam,count", [(3, (2, 1), 3), (4, (2, 2), 3), (4, (2, 1, 1), 6)])
def test_set_partition_counts(n, lam, count):
    found = list(pc.enumerate_set_partitions(n, lam))
    assert len(found) == count == pc.set_partition_count(lam)
    assert len(set(found)) == count
    for x in found:
        assert pc.set_partition_type(x) == lam
        assert list(x) == sorted(x, key=min)
        assert all(list(b) == sorted(b) for b in x)


def test_all_set_partitions_bell_numbers():
    assert [len(pc.all_set_partitions(n)) for n in range(1, 7)] == [1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("n", range(1, 8))
def test_partition_lattice_mobius(n):
    assert abs(pc.partition_lattice_mobius(n)) == factorial(n - 1)
    n_cycles = sum(1 for w in pc.all_permutations(n) if pc.cycle_type(w) == (n,))
    assert abs(pc.partition_lattice_mobius(n)) == n_cycles


# -- partitions -------------------------------------------------------------

def test_partition_helpers():
    assert pc.conjugate((3, 1)) == (2, 1, 1)
    assert pc.oddcols((2, 2)) == 0
    assert pc.oddcols((3, 1)) == 2
    assert pc.hook_partition(3, 5) == (3, 1, 1)
    assert pc.two_block_partition(2, 5) == (2, 2, 1)
    assert pc.parse_partition(pc.partition_label((2, 2, 1))) == (2, 2, 1)
    with pytest.raises(ValueError):
        pc.check_partition((1, 2))


@given(st.integers(1, 9))
def test_class_sizes_sum_to_group_order(n):
    assert sum(pc.class_size(mu) for mu in pc.partitions(n)) == factorial(n)


# -- derangements -----------------------------------------------------------

def brute_derangements(n):
    even = odd = 0
    for w in permutations(range(1, n + 1)):
        if all(w[i] != i + 1 for i in range(n)):
            if pc.sign(w) == 1:
                even += 1
            else:
                odd += 1
    return even + odd, even, odd


def test_derangement_examples():
    assert pc.derangement_counts(4) == (9, 3, 6)
    assert pc.derangement_counts(5) == (44, 24, 20)
    assert pc.derangement_counts(0) == (1, 1, 0)


@pytest.mark.parametrize("n", range(0, 8))
def test_derangement_counts_against_enumeration(n):
    if n == 0:
        assert pc.derangement_counts(0) == (1, 1, 0)
    else:
        assert pc.derangement_counts(n) == brute_derangements(n)


def test_derangement_identities_to_twelve():
    results = pc.derangement_identities(12)
    assert len(results) == 7
    assert all(results.values()), results


# -- commutation coefficients -------------------------------------------------

def test_d_coefficient_matches_operator_product():
    from shuffle_spectra.operators import nu_element

    n = 4
    for k in range(1, n + 1):
        for l in range(1, n + 1):
            prod = nu_element(pc.hook_partition(k, n)) * nu_element(pc.hook_partition(l, n))
            for w in pc.all_permutations(n):
                assert prod.coefficient(w) == pc.d_coefficient(w, k, l)


@pytest.mark.slow
def test_d_coefficient_symmetric_to_five():
    for n in range(1, 6):
        for w in pc.all_permutations(n):
            for k in range(1, n + 1):
                for l in range(k + 1, n + 1):
                    assert pc.d_coefficient(w, k, l) == pc.d_coefficient(w, l, k)


def test_d_coefficient_top_k():
    for w in pc.all_permutations(4):
        for l in range(1, 5):
            assert pc.d_coefficient(w, 4, l) == pc.noninv_lambda(w, pc.hook_partition(l, 4))


# -- words ------------------------------------------------------------------

def test_lyndon_type_examples():
    assert pc.lyndon_type("aab") == (3,)
    assert pc.lyndon_type("ba") == (1, 1)
    assert pc.lyndon_type("abab") == (2, 2)


@given(st.lists(st.integers(0, 2), min_size=1, max_size=10))
def test_lyndon_factorization_properties(x):
    factors = pc.lyndon_factorization(x)
    assert [c for f in factors for c in f] == x
    assert all(pc.is_lyndon(f) for f in factors)
    assert all(factors[i] >= factors[i + 1] for i in range(len(factors) - 1))


def test_gessel_reutenauer_examples():
    assert pc.gessel_reutenauer_check((1,), 1) == (True, None)
    assert pc.gessel_reutenauer_check((2, 1), 3, 3) == (True, None)
    assert pc.gessel_reutenauer_check((1, 1, 1), 2, 3) == (True, None)
