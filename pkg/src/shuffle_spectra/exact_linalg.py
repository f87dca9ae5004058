"""Exact rational linear algebra on top of python-flint.

Matrices are ``flint.fmpq_mat`` (aliased ``ExactMatrix``); polynomials are
``flint.fmpq_poly``.  A slow pure-Python characteristic polynomial (Bareiss
determinants plus Lagrange interpolation) is kept as an independent check
on flint's routine.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

import flint

ExactMatrix = flint.fmpq_mat
IntPolynomial = flint.fmpq_poly


# -- construction and conversion --------------------------------------------

def matrix(rows: Sequence[Sequence]) -> ExactMatrix:
    """Build an exact matrix from nested sequences of ints/Fractions."""
    rows = [list(r) for r in rows]
    if not rows:
        return flint.fmpq_mat(0, 0)
    nr, nc = len(rows), len(rows[0])
    entries = []
    for r in rows:
        if len(r) != nc:
            raise ValueError("ragged matrix")
        for x in r:
            entries.append(_to_fmpq(x))
    return flint.fmpq_mat(nr, nc, entries)


def _to_fmpq(x) -> flint.fmpq:
    if isinstance(x, flint.fmpq):
        return x
    if isinstance(x, Fraction):
        return flint.fmpq(x.numerator, x.denominator)
    if isinstance(x, flint.fmpz):
        return flint.fmpq(x)
    return flint.fmpq(int(x))


def zeros(nr: int, nc: int | None = None) -> ExactMatrix:
    return flint.fmpq_mat(nr, nr if nc is None else nc)


def identity(n: int) -> ExactMatrix:
    m = flint.fmpq_mat(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def diagonal(values: Iterable) -> ExactMatrix:
    values = list(values)
    m = zeros(len(values))
    for i, v in enumerate(values):
        m[i, i] = _to_fmpq(v)
    return m


def to_lists(a: ExactMatrix) -> list[list[Fraction]]:
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in a.tolist()]


def is_square(a: ExactMatrix) -> bool:
    return a.nrows() == a.ncols()


def is_symmetric(a: ExactMatrix) -> bool:
    return is_square(a) and a == a.transpose()


def scale_to_integer(a: ExactMatrix) -> tuple[flint.fmpz_mat, int]:
    """Return (B, d) with B integral and a = B / d."""
    num, den = a.numer_denom()
    return num, int(den)


def trace(a: ExactMatrix) -> flint.fmpq:
    if not is_square(a):
        raise ValueError("trace of a non-square matrix")
    return sum((a[i, i] for i in range(a.nrows())), flint.fmpq(0))


def hstack(blocks: Sequence[ExactMatrix]) -> ExactMatrix:
    blocks = [b for b in blocks if b.ncols()]
    if not blocks:
        raise ValueError("nothing to stack")
    nr = blocks[0].nrows()
    out = flint.fmpq_mat(nr, sum(b.ncols() for b in blocks))
    col = 0
    for b in blocks:
        for i in range(nr):
            for j in range(b.ncols()):
                out[i, col + j] = b[i, j]
        col += b.ncols()
    return out


def columns(a: ExactMatrix, idx: Sequence[int]) -> ExactMatrix:
    out = flint.fmpq_mat(a.nrows(), len(idx))
    for i in range(a.nrows()):
        for k, j in enumerate(idx):
            out[i, k] = a[i, j]
    return out


def rows(a: ExactMatrix, idx: Sequence[int]) -> ExactMatrix:
    out = flint.fmpq_mat(len(idx), a.ncols())
    for k, i in enumerate(idx):
        for j in range(a.ncols()):
            out[k, j] = a[i, j]
    return out


# -- characteristic polynomials -----------------------------------------

def charpoly(a: ExactMatrix) -> IntPolynomial:
    """Monic characteristic polynomial det(tI - A)."""
    if not is_square(a):
        raise ValueError("charpoly needs a square matrix")
    if a.nrows() == 0:
        return flint.fmpq_poly([1])
    return a.charpoly()


def bareiss_det(m: list[list[int]]) -> int:
    """Fraction-free Gaussian elimination determinant of an integer matrix."""
    m = [list(r) for r in m]
    n = len(m)
    if n == 0:
        return 1
    sgn, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sgn = -sgn
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - lead * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sgn * m[n - 1][n - 1]


def charpoly_interpolated(a: ExactMatrix) -> list[Fraction]:
    """Characteristic polynomial by determinants at t = 0..N and interpolation.

    Independent of flint's charpoly; returns ascending coefficients.
    """
    if not is_square(a):
        raise ValueError("charpoly needs a square matrix")
    n = a.nrows()
    num, d = scale_to_integer(a)
    b = [[int(x) for x in row] for row in num.tolist()]
    # det(tI - A) = d^-n det(t d I - B)
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        m = [[(t * d if i == j else 0) - b[i][j] for j in range(n)] for i in range(n)]
        ys.append(Fraction(bareiss_det(m), d ** n))
    return _lagrange(xs, ys)


def _lagrange(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        basis = [Fraction(1)]
        denom = 1
        for j in range(n):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xs[j] * basis[k + 1]
            denom *= xs[i] - xs[j]
        scale = ys[i] / denom
        for k in range(n):
            coeffs[k] += scale * basis[k]
    return coeffs


def poly_from_coeffs(coeffs: Sequence) -> IntPolynomial:
    return flint.fmpq_poly([_to_fmpq(c) for c in coeffs])


def poly_coeffs(p: IntPolynomial) -> list[Fraction]:
    return [Fraction(int(c.p), int(c.q)) for c in p.coeffs()]


def poly_from_roots(roots: dict) -> IntPolynomial:
    """prod (t - r)^m for a mapping root -> multiplicity."""
    p = flint.fmpq_poly([1])
    for r, m in roots.items():
        p *= flint.fmpq_poly([-_to_fmpq(r), 1]) ** m
    return p


def _primitive_int_poly(p: IntPolynomial) -> flint.fmpz_poly:
    coeffs = p.coeffs()
    den = lcm(*[int(c.q) for c in coeffs]) if coeffs else 1
    return flint.fmpz_poly([int(c.p) * (den // int(c.q)) for c in coeffs])


def factor_rational_roots(p) -> tuple[list[tuple[Fraction, int]], IntPolynomial, tuple | None]:
    """Split off all rational roots of p.

    Returns ``(roots, residual, quadratic_power)`` where roots is a list of
    (root, multiplicity) sorted descending, residual is the monic cofactor
    with no rational root, and quadratic_power is ``(q, m)`` when the
    residual equals q^m for a monic quadratic q, otherwise None.
    """
    if not isinstance(p, flint.fmpq_poly):
        p = poly_from_coeffs(p)
    if p.is_zero():
        raise ValueError("zero polynomial")
    zp = _primitive_int_poly(p)
    _, factors = zp.factor()
    roots: list[tuple[Fraction, int]] = []
    residual = flint.fmpq_poly([1])
    for f, mult in factors:
        if f.degree() == 1:
            c0, c1 = int(f.coeffs()[0]), int(f.coeffs()[1])
            roots.append((Fraction(-c0, c1), mult))
        else:
            residual *= flint.fmpq_poly(f) ** mult
    if residual.degree() > 0:
        residual = residual / residual.leading_coefficient()
    # every extracted root must annihilate p exactly
    for r, _ in roots:
        if p(_to_fmpq(r)) != 0:
            raise ArithmeticError("extracted root does not annihilate polynomial")
    roots.sort(key=lambda rm: rm[0], reverse=True)
    return roots, residual, detect_quadratic_power(residual)


def detect_quadratic_power(r: IntPolynomial) -> tuple[IntPolynomial, int] | None:
    """If r = q^m with q a monic quadratic, return (q, m)."""
    deg = r.degree()
    if deg < 2 or deg % 2:
        return None
    # squarefree part r / gcd(r, r')
    g = r.gcd(r.derivative())
    q = r / g if g.degree() > 0 else r
    q = q / q.leading_coefficient()
    if q.degree() != 2:
        return None
    m = deg // 2
    return (q, m) if q ** m == r else None


def format_factored(roots: Sequence[tuple[Fraction, int]], residual: IntPolynomial | None = None,
                    var: str = "x") -> str:
    """Render like ``(x^2-248x+3856)^3 (x-24)^4 (x-12)^5``."""
    parts = []
    if residual is not None and residual.degree() > 0:
        qp = detect_quadratic_power(residual)
        if qp is not None:
            q, m = qp
            parts.append(_paren(format_poly(q, var), m))
        else:
            parts.append(_paren(format_poly(residual, var), 1))
    for r, m in roots:
        if r == 0:
            parts.append(var if m == 1 else f"{var}^{m}")
        else:
            sign = "-" if r > 0 else "+"
            parts.append(_paren(f"{var}{sign}{abs(r)}", m))
    return " ".join(parts) if parts else "1"


def _paren(body: str, m: int) -> str:
    return f"({body})" if m == 1 else f"({body})^{m}"


def format_poly(p: IntPolynomial, var: str = "x") -> str:
    coeffs = poly_coeffs(p)
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{mag}{mono}"
        if not terms:
            terms.append(("-" if c < 0 else "") + body)
        else:
            terms.append(("-" if c < 0 else "+") + body)
    return "".join(terms) if terms else "0"


# -- kernels, restrictions, projectors -----------------------------------

def kernel_basis(a: ExactMatrix) -> ExactMatrix:
    """Columns spanning ker A, in reduced form (identity on the free rows)."""
    nc = a.ncols()
    if a.nrows() == 0:
        return identity(nc)
    num, _ = scale_to_integer(a)
    x, nullity = num.nullspace()
    out = flint.fmpq_mat(nc, nullity)
    for i in range(nc):
        for j in range(nullity):
            out[i, j] = x[i, j]
    return column_echelon(out)


def column_echelon(b: ExactMatrix) -> ExactMatrix:
    """Column-reduced basis of the span of the columns of b."""
    if b.ncols() == 0:
        return b
    r, rank = b.transpose().rref()
    out = flint.fmpq_mat(b.nrows(), rank)
    for i in range(b.nrows()):
        for j in range(rank):
            out[i, j] = r[j, i]
    return out


def pivot_rows(b: ExactMatrix) -> list[int]:
    """For a column-echelon basis, the rows carrying the identity block."""
    piv = []
    col = 0
    for i in range(b.nrows()):
        if col < b.ncols() and b[i, col] == 1 and all(b[i, j] == 0 for j in range(b.ncols()) if j != col):
            piv.append(i)
            col += 1
    if len(piv) != b.ncols():
        raise ValueError("basis is not in column echelon form")
    return piv


def restrict(a: ExactMatrix, basis: ExactMatrix, piv: list[int] | None = None) -> ExactMatrix:
    """Matrix of A on the invariant subspace spanned by an echelon basis."""
    if piv is None:
        piv = pivot_rows(basis)
    ab = a * basis
    return rows(ab, piv)


def rank(a: ExactMatrix) -> int:
    return a.rank()


def nullity(a: ExactMatrix) -> int:
    return a.ncols() - a.rank()


def eigenprojector(a: ExactMatrix, lam0, spectrum: Iterable | None = None) -> ExactMatrix:
    """Spectral projector prod_{mu != lam0} (A - mu I) / (lam0 - mu).

    ``spectrum`` lists the distinct eigenvalues; when omitted it is found
    from the characteristic polynomial and must be rational.
    """
    if not is_square(a):
        raise ValueError("eigenprojector needs a square matrix")
    lam0 = _to_fmpq(lam0)
    if spectrum is None:
        roots, residual, _ = factor_rational_roots(charpoly(a))
        if residual.degree() > 0:
            raise ValueError("minimal polynomial has a non-rational root")
        spectrum = [r for r, _ in roots]
    spectrum = {_to_fmpq(s) for s in spectrum}
    if lam0 not in spectrum:
        raise ValueError(f"{lam0} is not an eigenvalue")
    n = a.nrows()
    eye = identity(n)
    p = identity(n)
    for mu in sorted(spectrum):
        if mu == lam0:
            continue
        p = p * (a - mu * eye) / (lam0 - mu)
    return p


def commutator_is_zero(a: ExactMatrix, b: ExactMatrix) -> bool:
    if not (is_square(a) and is_square(b)) or a.nrows() != b.nrows():
        raise ValueError("size mismatch")
    return a * b == b * a


# -- minimal polynomials ------------------------------------------------------

def local_min_poly(a: ExactMatrix, v: ExactMatrix) -> IntPolynomial:
    """Monic generator of {p : p(A) v = 0}, by a Krylov sequence."""
    n = a.nrows()
    krylov = [v]
    while True:
        k = len(krylov)
        stack = hstack(krylov)
        if stack.rank() < k or k > n:
            break
        krylov.append(a * krylov[-1])
    # last vector depends on the previous ones
    k = len(krylov)
    stack = hstack(krylov)
    null = kernel_basis(stack)
    # take the relation with the last column normalised to 1
    rel = None
    for j in range(null.ncols()):
        if null[k - 1, j] != 0:
            rel = [null[i, j] / null[k - 1, j] for i in range(k)]
            break
    if rel is None:
        raise ArithmeticError("Krylov relation not found")
    return flint.fmpq_poly(rel)


def min_poly(a: ExactMatrix, trials: int = 2, seed: int = 0) -> IntPolynomial:
    """Minimal polynomial as the lcm of local minimal polynomials.

    Random integer start vectors plus the unit vectors missing from their
    joint span make the result exact rather than probabilistic.
    """
    n = a.nrows()
    if n == 0:
        return flint.fmpq_poly([1])
    rng = random.Random(seed)
    result = flint.fmpq_poly([1])
    vectors = []
    for _ in range(trials):
        vectors.append(flint.fmpq_mat(n, 1, [rng.randint(-9, 9) for _ in range(n)]))
    for v in vectors:
        p = local_min_poly(a, v)
        result = _poly_lcm(result, p)
    # the minimal polynomial kills the whole space: confirm, else extend
    pa = poly_at_matrix(result, a)
    if any(x != 0 for x in pa.entries()):
        for i in range(n):
            e = flint.fmpq_mat(n, 1)
            e[i, 0] = 1
            if any(x != 0 for x in (pa * e).entries()):
                result = _poly_lcm(result, local_min_poly(a, e))
                pa = poly_at_matrix(result, a)
    return result


def _poly_lcm(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    g = p.gcd(q)
    out = p * q / g
    return out / out.leading_coefficient()


def poly_at_matrix(p: IntPolynomial, a: ExactMatrix) -> ExactMatrix:
    n = a.nrows()
    out = zeros(n)
    eye = identity(n)
    for c in reversed(p.coeffs()):
        out = out * a + c * eye
    return out


def is_squarefree(p: IntPolynomial) -> bool:
    return p.gcd(p.derivative()).degree() == 0


# -- joint eigenspaces ----------------------------------------------------

def split_by_operator(a: ExactMatrix, basis: ExactMatrix, piv=None) -> list[tuple[Fraction, ExactMatrix]] | None:
    """Split an A-invariant subspace into eigenspaces of A.

    Returns a list of (eigenvalue, echelon basis) pairs, or None when A is
    not diagonalisable over Q on the subspace.
    """
    m = restrict(a, basis, piv)
    d = m.nrows()
    if d == 0:
        return []
    mp = min_poly(m)
    roots, residual, _ = factor_rational_roots(mp)
    if residual.degree() > 0:
        return None
    out = []
    total = 0
    eye = identity(d)
    for r, mult in roots:
        if mult != 1:
            return None
        k = kernel_basis(m - _to_fmpq(r) * eye)
        total += k.ncols()
        out.append((r, column_echelon(basis * k)))
    if total != d:
        return None
    return out
