import json
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from shuffle_spectra import exact_linalg as xl
from shuffle_spectra import operators as op
from shuffle_spectra import perm_core as pc
from shuffle_spectra import sn_characters as snc

GA = op.GroupAlgebraElement


def elements(n):
    coeff = st.integers(-3, 3)
    return st.dictionaries(st.permutations(list(range(1, n + 1))).map(tuple), coeff, max_size=6) \
        .map(lambda d: GA(n, d))


def partitions_up_to(n_max):
    return st.integers(1, n_max).flatmap(lambda n: st.sampled_from(pc.partitions(n)))


def faces(n):
    return st.sampled_from(op.all_faces(n))


# -- group algebra ------------------------------------------------------------

@given(elements(4), elements(4), elements(4))
def test_group_algebra_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a) == GA(4)


@given(elements(3), elements(3))
def test_antipode_reverses_products(a, b):
    assert (a * b).antipode() == b.antipode() * a.antipode()


@settings(max_examples=25)
@given(elements(3), elements(3))
def test_right_multiplication_is_antihomomorphism(a, b):
    assert (a * b).right_multiplication_matrix() == \
        b.right_multiplication_matrix() * a.right_multiplication_matrix()


def test_group_algebra_rejects_mixed_sizes():
    with pytest.raises(ValueError):
        GA.identity(3) + GA.identity(4)
    with pytest.raises(ValueError):
        GA(3, {(1, 2): 1})


def test_dense_budget():
    with pytest.raises(op.BudgetError):
        op.nu_matrix((2, 1, 1, 1, 1, 1, 1))


# -- nu and its square roots --------------------------------------------------

def test_nu_coefficients_are_noninversions():
    e = op.nu_element((2, 2))
    for w in pc.all_permutations(4):
        assert e.coefficient(w) == pc.noninv_lambda(w, (2, 2))


@pytest.mark.parametrize("lam", [lam for n in range(1, 6) for lam in pc.partitions(n)])
def test_nu_equals_pi_transpose_pi(lam):
    pi = op.pi_matrix(lam)
    nu = op.nu_matrix(lam)
    assert pi.transpose() * pi == nu
    assert xl.is_symmetric(nu)


@pytest.mark.parametrize("lam", [lam for n in range(1, 6) for lam in pc.partitions(n)])
def test_coset_square_root(lam):
    up, down, nx = op.coset_square_root(lam)
    assert nx == op.n_x(lam)
    assert (up * down) * Fraction(1, nx) == op.nu_element(lam)


@pytest.mark.parametrize("lam", [lam for n in range(1, 6) for lam in pc.partitions(n)])
def test_face_orbit_sum_matches_coset_sum_and_kernels(lam):
    up, _, _ = op.coset_square_root(lam)
    bhr = op.bhr_matrix(lam)
    assert bhr == up.right_multiplication_matrix()
    assert xl.kernel_basis(bhr) == xl.kernel_basis(op.nu_matrix(lam))


@pytest.mark.parametrize("n", [3, 4])
def test_nu_is_left_equivariant_and_commutes_with_w0(n):
    w0 = op.w0_matrix(n)
    perms = pc.all_permutations(n)
    for lam in pc.partitions(n):
        nu = op.nu_matrix(lam)
        assert nu * w0 == w0 * nu
        for g in perms[::3]:
            left = xl.zeros(len(perms))
            for col, row in enumerate(op.left_permutation_rows(n, g)):
                left[row, col] = 1
            assert nu * left == left * nu


@pytest.mark.parametrize("n", range(2, 6))
def test_nu_spectrum_is_nonnegative(n):
    for lam in pc.partitions(n):
        roots, residual, _ = xl.factor_rational_roots(xl.charpoly(op.nu_matrix(lam)))
        assert all(r >= 0 for r, _ in roots)


def test_stabilizer_index_matches_formula():
    for n in range(1, 7):
        for lam in pc.partitions(n):
            assert op.stabilizer_index(lam) == op.n_x(lam)


# -- faces ------------------------------------------------------------------

@given(st.integers(1, 4).flatmap(lambda n: st.tuples(faces(n), faces(n))))
def test_face_product_left_regular_band(pair):
    x, y = pair
    assert op.face_product(x, x) == x
    assert op.face_product(op.face_product(x, y), x) == op.face_product(x, y)


def test_face_helpers():
    assert op.make_face([[3], [1, 2]]) == ((3,), (1, 2))
    with pytest.raises(ValueError):
        op.make_face([[1], [3]])
    assert op.chamber_permutation(op.chamber((2, 3, 1))) == (2, 3, 1)
    with pytest.raises(ValueError):
        op.chamber_permutation(((1, 2),))
    assert [len(op.all_faces(n)) for n in range(1, 5)] == [1, 3, 13, 75]


def test_weighted_face_operator_rejects_bad_weights():
    with pytest.raises(ValueError):
        op.weighted_face_operator({(1, 2): -1}, 3)
    with pytest.raises(ValueError):
        op.weighted_face_operator({(1, 1): 1}, 3)


def test_random_to_top_eigenvalues():
    # weight one on the faces ({i}, rest): eigenvalues count singletons in a flat
    weights = {(1, 2): 1}
    got = op.face_semigroup_eigenvalues(weights, 3)
    assert got == {0, 1, 3}
    mp = op.brown_min_poly(weights, 3)
    assert xl.is_squarefree(mp)


# -- Perron value and degree-one eigenvalues ----------------------------------

@pytest.mark.parametrize("n", range(1, 7))
def test_perron_value_is_simple_top_eigenvalue(n):
    for lam in pc.partitions(n):
        value = op.perron_value(lam)
        assert value == op.orbit_index_product(lam)
        assert op.fourier_block((n,), lam) == xl.matrix([[value]])
        if lam in ((1,) * n, (n,)):
            # nu_(n) is the identity and nu_(1^n) has rank one
            continue
        for kappa in pc.partitions(n)[1:]:
            block = op.fourier_block(kappa, lam)
            roots, _, _ = xl.factor_rational_roots(xl.charpoly(block))
            assert all(r < value for r, _ in roots)


@pytest.mark.parametrize("n", range(2, 7))
def test_sign_eigenvalue_rule(n):
    for k in range(1, n + 1):
        expected = 1 if k == n or (k == n - 1 and n % 2 == 1) else 0
        if k == 1:
            expected = 1 if n == 1 else 0
        assert op.sign_eigenvalue(k, n) == expected


# -- Eulerian idempotents ----------------------------------------------------

def test_eulerian_small_case():
    e1, e2 = op.eulerian_idempotents(2)
    half = Fraction(1, 2)
    assert e1 == GA(2, {(1, 2): half, (2, 1): -half})
    assert e2 == GA(2, {(1, 2): half, (2, 1): half})
    with pytest.raises(ValueError):
        op.eulerian_idempotents(0)


# -- tables ------------------------------------------------------------------

def test_family_partitions():
    assert op.family_partitions(4, "columns") == [(1, 1, 1, 1), (2, 1, 1), (3, 1)]
    assert op.family_partitions(5, "two-blocks") == [(1, 1, 1, 1, 1), (2, 1, 1, 1), (2, 2, 1)]
    assert op.family_partitions(1, "columns") == [(1,)]
    with pytest.raises(ValueError):
        op.family_partitions(4, "rows")


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("family", op.FAMILIES)
def test_full_and_fourier_tables_agree(n, family):
    full = op.simultaneous_tables(n, family, "full")
    four = op.simultaneous_tables(n, family, "fourier")
    assert op.table_signature(full) == op.table_signature(four)
    assert not full.violations and not four.violations
    assert sum(sum(snc.dimension(l) * m for l, m in r.multiplicities.items()) for r in full.rows) == factorial(n)


def test_table_method_errors():
    with pytest.raises(ValueError):
        op.simultaneous_tables(3, "columns", "magic")
    with pytest.raises(op.BudgetError):
        op.simultaneous_tables(7, "columns", "full")


def test_table_renderings_three():
    t = op.simultaneous_tables(3)
    tsv = t.to_tsv().splitlines()
    assert tsv[0] == "nu_111\tnu_21\tw0\tchi_3\tchi_21\tchi_111"
    assert tsv[1:] == ["6\t9\t1\t1\t0\t0", "0\t4\t-1\t0\t1\t0", "0\t1\t-1\t0\t0\t1", "0\t0\t1\t0\t1\t0"]
    md = t.to_markdown()
    assert "·" in md and md.startswith("| ν_")
    data = t.to_json()
    assert data["schema"] == 1 and data["n"] == 3
    json.dumps(data)
    assert data["rows"][0]["eigenvalues"] == [6, 9]


def test_trivial_table():
    t = op.simultaneous_tables(1)
    assert len(t.rows) == 1
    assert t.rows[0].eigenvalues == (1,)
    assert t.rows[0].multiplicities == {(1,): 1}


def test_factor_content_requires_columns():
    with pytest.raises(ValueError):
        op.factor_content(op.simultaneous_tables(3, "two-blocks"))


# -- second family ------------------------------------------------------------

def test_second_family_examples():
    assert op.second_family_eigenvalue((4,), 1, 4) == 72
    assert op.second_family_eigenvalue((2, 2), 2, 4) == 8
    assert op.second_family_eigenvalue((2, 2), 1, 4) == 0
    with pytest.raises(ValueError):
        op.second_family_eigenvalue((2, 2), 3, 4)


@pytest.mark.parametrize("n", range(2, 6))
def test_second_family_eigenvalue_equals_character_sum(n):
    for lam in pc.partitions(n):
        for k in range(0, n // 2 + 1):
            assert op.second_family_eigenvalue(lam, k, n) == op.second_family_trace(lam, k, n)


@pytest.mark.parametrize("n", range(2, 6))
def test_second_family_kernel_filtration(n):
    rep = op.kernel_filtration(n, "two-blocks")
    assert rep.nested
    assert rep.factor_dims == rep.predicted_dims


# -- commutation scan ---------------------------------------------------------

def test_commuting_pairs_four():
    rep = op.commuting_pairs_scan(4)
    assert rep.matches
    assert ((3, 1), (2, 2)) not in rep.commuting and ((2, 2), (3, 1)) not in rep.commuting
    assert len(rep.commuting) == 2


def test_family_commutation_routes_agree():
    for n in range(2, 6):
        for fam in op.FAMILIES:
            assert op.family_commutes_dense(n, fam) == op.family_commutes_blocks(n, fam) is True


# -- injective words ----------------------------------------------------------

@pytest.mark.parametrize("n,kernel", [(2, 1), (3, 2), (4, 9), (5, 44)])
def test_injective_words_boundary(n, kernel):
    _, rep = op.injective_words_boundary(n)
    assert rep.squares_vanish
    assert rep.kernel_dim == kernel == pc.derangement_counts(n)[0]
    assert rep.sign_twist_matches
    assert rep.conjugate_match


def test_delplus_composites():
    for n in range(1, 5):
        for k in range(n + 1):
            for j in range(k + 1):
                for i in range(j + 1):
                    assert op.delplus_composite_holds(n, k, j, i)
    with pytest.raises(ValueError):
        op.delplus(3, 1, 2)
    with pytest.raises(ValueError):
        op.delminus(3, 3)


# -- closed-form guesses ------------------------------------------------------

def test_standard_rep_hook_formula_matches():
    for n in range(2, 7):
        cell = op.conjecture_eigenvalue_formulas(n)[-1]
        assert cell.match, (n, cell)


def test_formula_cells_are_reported():
    cells = op.conjecture_eigenvalue_formulas(5)
    assert cells and all(isinstance(c.match, bool) for c in cells)
