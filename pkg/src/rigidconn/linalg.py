"""Exact linear algebra over the rationals.

Matrices are lists of row lists with Fraction or int entries (ints mix
freely and stay exact).  Everything is classical Gaussian elimination
with exact pivots; there is no floating point in this module.
"""

from fractions import Fraction


def frac_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def zeros(nrows, ncols):
    return [[Fraction(0)] * ncols for _ in range(nrows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def transpose(m):
    return [list(col) for col in zip(*m)]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[c * x for x in row] for row in a]


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    bt = transpose(b)
    out = []
    for i in range(n):
        row = a[i]
        out.append([sum(row[s] * col[s] for s in range(k)) for col in bt])
    return out


def mat_vec(a, v):
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def mat_pow(a, k):
    n = len(a)
    out = identity(n)
    base = [row[:] for row in a]
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def is_zero_matrix(a):
    return all(x == 0 for row in a for x in row)


def hstack(a, b):
    return [ra + rb for ra, rb in zip(a, b)]


def vstack(a, b):
    return [row[:] for row in a] + [row[:] for row in b]


def _row_reduce(m):
    """Reduced row echelon form in place; returns the pivot columns."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = Fraction(1) / Fraction(m[r][c])
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [x - factor * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def rank(m):
    if not m or not m[0]:
        return 0
    work = frac_matrix(m)
    return len(_row_reduce(work))


def nullspace(m):
    """Basis of the right kernel of m, as a list of vectors."""
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if ncols == 0:
        return []
    if nrows == 0:
        return [[Fraction(i == j) for i in range(ncols)] for j in range(ncols)]
    work = frac_matrix(m)
    pivots = _row_reduce(work)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -work[r][f]
        basis.append(v)
    return basis


def solve(m, rhs):
    """One solution of m x = rhs, or None if the system is inconsistent."""
    nrows = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(rhs[i])] for i, row in enumerate(m)]
    pivots = _row_reduce(aug)
    ncols = len(m[0]) if nrows else 0
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, c in enumerate(pivots):
        x[c] = aug[r][ncols]
    return x


def inverse(m):
    n = len(m)
    aug = hstack(frac_matrix(m), identity(n))
    pivots = _row_reduce(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in aug]


def _hessenberg(m):
    h = frac_matrix(m)
    n = len(h)
    for c in range(n - 2):
        pivot = next((i for i in range(c + 1, n) if h[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != c + 1:
            h[c + 1], h[pivot] = h[pivot], h[c + 1]
            for row in h:
                row[c + 1], row[pivot] = row[pivot], row[c + 1]
        for i in range(c + 2, n):
            if h[i][c] != 0:
                f = h[i][c] / h[c + 1][c]
                h[i] = [x - f * y for x, y in zip(h[i], h[c + 1])]
                for row in h:
                    row[c + 1] += f * row[i]
    return h


def charpoly(m):
    """Coefficients of det(x I - m), ascending degree, exact."""
    n = len(m)
    if n == 0:
        return [Fraction(1)]
    h = _hessenberg(m)
    # p[k] is the charpoly of the leading k x k block of h.
    p = [[Fraction(1)]]
    for k in range(1, n + 1):
        # (x - h[k-1][k-1]) * p[k-1]
        prev = p[k - 1]
        term = [Fraction(0)] + prev
        term = [term[i] - (h[k - 1][k - 1] * prev[i] if i < len(prev) else 0)
                for i in range(len(term))]
        sub = Fraction(1)
        for i in range(k - 2, -1, -1):
            sub *= h[i + 1][i]
            coeff = h[i][k - 1] * sub
            if coeff != 0:
                q = p[i]
                for j, c in enumerate(q):
                    term[j] -= coeff * c
        p.append(term)
    return p[n]


def poly_at_matrix(coeffs, m):
    """Evaluate a polynomial (ascending coefficients) at a square matrix."""
    n = len(m)
    out = zeros(n, n)
    for c in reversed(coeffs):
        out = mat_mul(out, m)
        for i in range(n):
            out[i][i] += c
    return out


def is_semisimple(m):
    """True iff the squarefree part of the charpoly annihilates m."""
    from .poly import pderiv, pgcd, pdivmod

    chi = charpoly(m)
    g = pgcd(chi, pderiv(chi))
    s, r = pdivmod(chi, g)
    assert not any(r), "BUG: gcd does not divide charpoly"
    return is_zero_matrix(poly_at_matrix(s, m))


def is_nilpotent(m):
    chi = charpoly(m)
    return all(c == 0 for c in chi[:-1])
