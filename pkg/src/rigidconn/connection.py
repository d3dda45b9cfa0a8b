"""Matrix forms of the connection, gauge moves, scalar reduction, slopes.

A connection is theta + A(t) with theta = t d/dt and A a matrix of
Laurent polynomials, stored sparsely as {power: coefficient matrix}.
The built-in cases all have A(t) = N(V) + t E(V), normalized so N(V)
has 1's below the diagonal and E(V) is the minimal raising term.
"""

from fractions import Fraction

from .chevalley import build_chevalley, principal_triple
from .errors import (CyclicVectorError, SlopeVerificationError,
                     ValidationError)
from .linalg import is_nilpotent, is_semisimple, zeros
from .poly import RatFun
from .rootsys import build_root_system


class MatrixConnection:
    def __init__(self, coeffs, label, h=None, rho_weights=None, group=None):
        cleaned = {}
        dim = None
        for k, mat in coeffs.items():
            rows = [[Fraction(x) for x in row] for row in mat]
            if dim is None:
                dim = len(rows)
            if len(rows) != dim or any(len(r) != dim for r in rows):
                raise ValidationError("coefficient matrices must be square "
                                      "of equal size")
            if any(any(x != 0 for x in row) for row in rows):
                cleaned[int(k)] = rows
        if dim is None:
            raise ValidationError("a connection needs at least one coefficient")
        self.dim = dim
        self.coeffs = cleaned
        self.label = label
        self.h = h
        self.rho_weights = (None if rho_weights is None
                            else [Fraction(w) for w in rho_weights])
        self.group = group

    def coefficient(self, k):
        got = self.coeffs.get(k)
        if got is None:
            return zeros(self.dim, self.dim)
        return [row[:] for row in got]

    def support(self):
        return sorted(self.coeffs)

    def is_polynomial(self):
        return all(k >= 0 for k in self.coeffs)

    def ratfun_matrix(self):
        shift = min((k for k in self.coeffs if k < 0), default=0)
        den = [Fraction(0)] * (-shift) + [Fraction(1)]
        out = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                num = [Fraction(0)] * (max(self.coeffs, default=0) - shift + 1)
                for k, mat in self.coeffs.items():
                    num[k - shift] = mat[i][j]
                row.append(RatFun(num, den[:]))
            out.append(row)
        return out

    def entry_terms(self, i, j):
        return {k: mat[i][j] for k, mat in sorted(self.coeffs.items())
                if mat[i][j] != 0}

    def dual(self):
        coeffs = {k: [[-mat[j][i] for j in range(self.dim)]
                      for i in range(self.dim)]
                  for k, mat in self.coeffs.items()}
        rw = None if self.rho_weights is None else [-w for w in self.rho_weights]
        return MatrixConnection(coeffs, self.label + " dual", h=self.h,
                                rho_weights=rw, group=self.group)

    def to_json_dict(self):
        entries = {}
        for i in range(self.dim):
            for j in range(self.dim):
                terms = self.entry_terms(i, j)
                if terms:
                    entries["%d,%d" % (i, j)] = {str(k): str(v)
                                                 for k, v in terms.items()}
        return {"dimension": self.dim, "label": self.label, "entries": entries}

    def render_entry(self, i, j, var="t"):
        terms = self.entry_terms(i, j)
        if not terms:
            return "0"
        parts = []
        for k, c in terms.items():
            if k == 0:
                parts.append(str(c))
            else:
                mon = var if k == 1 else "%s^%d" % (var, k)
                if c == 1:
                    parts.append(mon)
                elif c == -1:
                    parts.append("-" + mon)
                else:
                    parts.append("%s*%s" % (c, mon))
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out


def _subdiagonal(n):
    m = zeros(n, n)
    for i in range(1, n):
        m[i][i - 1] = Fraction(1)
    return m


def sl_standard(n):
    if n < 2:
        raise ValidationError("sl standard needs matrix size >= 2")
    e = zeros(n, n)
    e[0][n - 1] = Fraction(1)
    weights = [Fraction(n - 1 - 2 * i, 2) for i in range(n)]
    return MatrixConnection({0: _subdiagonal(n), 1: e}, "sl%d standard" % n,
                            h=n, rho_weights=weights, group=("A", n - 1))


def sp_standard(n):
    if n < 2 or n % 2:
        raise ValidationError("sp standard needs even matrix size >= 2")
    base = sl_standard(n)
    return MatrixConnection(base.coeffs, "sp%d standard" % n, h=n,
                            rho_weights=base.rho_weights, group=("C", n // 2))


def so_odd_standard(n):
    if n < 3 or n % 2 == 0:
        raise ValidationError("so standard needs odd matrix size >= 3")
    m = (n - 1) // 2
    e = zeros(n, n)
    e[0][n - 2] = Fraction(1)
    e[1][n - 1] = Fraction(1)
    weights = [Fraction(m - i) for i in range(n)]
    group = ("B", m) if m >= 2 else ("A", 1)
    return MatrixConnection({0: _subdiagonal(n), 1: e}, "so%d standard" % n,
                            h=2 * m, rho_weights=weights, group=group)


def g2_seven_dim():
    base = so_odd_standard(7)
    return MatrixConnection(base.coeffs, "g2 7-dim", h=6,
                            rho_weights=base.rho_weights, group=("G", 2))


def adjoint_connection(type_label, rank):
    alg = build_chevalley(type_label, rank)
    n_el, e_el, _ = principal_triple(alg)
    weights = [Fraction(alg.weight_of_index(i)) for i in range(alg.dim)]
    return MatrixConnection({0: alg.ad_matrix(n_el), 1: alg.ad_matrix(e_el)},
                            "adjoint %s" % alg.rs.label(),
                            h=alg.rs.coxeter_number, rho_weights=weights,
                            group=(alg.rs.type_label, alg.rs.rank))


def sl2_sym(k):
    if k < 1:
        raise ValidationError("sym power must be >= 1")
    n = k + 1
    e = zeros(n, n)
    for i in range(1, n):
        e[i - 1][i] = Fraction(i * (k - i + 1))
    weights = [Fraction(k - 2 * i, 2) for i in range(n)]
    return MatrixConnection({0: _subdiagonal(n), 1: e}, "sl2 Sym^%d" % k,
                            h=2, rho_weights=weights, group=("A", 1))


_CASES = {
    "sl": (sl_standard, "matrix size n >= 2"),
    "sp": (sp_standard, "even matrix size"),
    "so": (so_odd_standard, "odd matrix size"),
    "g2_dim7": (g2_seven_dim, "no arguments"),
    "adjoint": (adjoint_connection, "type label and rank"),
    "sym": (sl2_sym, "symmetric power k >= 1"),
}


def build_connection(case, *args):
    entry = _CASES.get(case)
    if entry is None:
        raise ValidationError("unknown case %r; supported: %s"
                              % (case, ", ".join(sorted(_CASES))))
    return entry[0](*args)


# -- gauge transformations ----------------------------------------------------


def _as_ratfun_matrix(g, n):
    if len(g) != n or any(len(row) != n for row in g):
        raise ValidationError("gauge matrix size does not match the connection")
    return [[x if isinstance(x, RatFun) else RatFun(x) for x in row]
            for row in g]


def _rf_invert(g):
    """Inverse and determinant of a RatFun matrix via Gauss-Jordan."""
    n = len(g)
    work = [row[:] for row in g]
    aug = [[RatFun(1 if i == j else 0) for j in range(n)] for i in range(n)]
    det = RatFun(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if not work[i][c].is_zero()), None)
        if pivot is None:
            raise ValidationError("gauge matrix is singular")
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            aug[c], aug[pivot] = aug[pivot], aug[c]
            det = -det
        det = det * work[c][c]
        inv = RatFun(1) / work[c][c]
        work[c] = [x * inv for x in work[c]]
        aug[c] = [x * inv for x in aug[c]]
        for i in range(n):
            if i != c and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[c])]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[c])]
    return aug, det


def _is_monomial(p):
    return sum(1 for c in p if c != 0) == 1


def _rf_matmul(a, b):
    n = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), RatFun(0))
             for j in range(n)] for i in range(n)]


def _laurent_terms(f):
    """{exponent: coefficient} for a RatFun whose denominator is t^m."""
    if not _is_monomial(f.den) and not f.is_zero():
        raise ValidationError("entry %s is not a Laurent polynomial"
                              % f.render())
    shift = len(f.den) - 1
    return {i - shift: c for i, c in enumerate(f.num) if c != 0}


def gauge_transform(conn, g):
    """theta + A conjugated by g: A -> g A g^{-1} - theta(g) g^{-1}."""
    n = conn.dim
    g = _as_ratfun_matrix(g, n)
    for row in g:
        for x in row:
            if not _is_monomial(x.den) and not x.is_zero():
                raise ValidationError("gauge entries must be Laurent "
                                      "polynomials")
    g_inv, det = _rf_invert(g)
    if not (_is_monomial(det.num) and _is_monomial(det.den)):
        raise ValidationError("gauge determinant %s is not a unit"
                              % det.render())
    a = conn.ratfun_matrix()
    theta_g = [[x.theta() for x in row] for row in g]
    new = _rf_matmul(g, _rf_matmul(a, g_inv))
    correction = _rf_matmul(theta_g, g_inv)
    coeffs = {}
    for i in range(n):
        for j in range(n):
            entry = new[i][j] - correction[i][j]
            for k, c in _laurent_terms(entry).items():
                coeffs.setdefault(k, zeros(n, n))[i][j] = c
    return MatrixConnection(coeffs, conn.label + " gauged", h=conn.h,
                            rho_weights=None, group=conn.group)


# -- scalar reduction ---------------------------------------------------------


class ScalarOperator:
    """theta^n + c_{n-1} theta^{n-1} + ... + c_0 with theta = t d/dt."""

    def __init__(self, coeffs, h=None):
        self.coeffs = [x if isinstance(x, RatFun) else RatFun(x)
                       for x in coeffs]
        self.order = len(self.coeffs)
        self.h = h

    def laurent_coefficients(self):
        """Per-coefficient {exponent: value} maps, or None when rational."""
        out = []
        for c in self.coeffs:
            try:
                out.append(_laurent_terms(c))
            except ValidationError:
                return None
        return out

    def render(self, symbol="theta"):
        parts = ["%s^%d" % (symbol, self.order)]
        for i in range(self.order - 1, -1, -1):
            c = self.coeffs[i]
            if c.is_zero():
                continue
            if i == 0:
                mon = ""
            elif i == 1:
                mon = symbol
            else:
                mon = "%s^%d" % (symbol, i)
            text = c.render()
            if text == "1" and mon:
                parts.append(mon)
            elif text == "-1" and mon:
                parts.append("-" + mon)
            elif ("+" in text or ("-" in text[1:])) and mon:
                parts.append("(%s)*%s" % (text, mon))
            else:
                parts.append(("%s*%s" % (text, mon)) if mon else text)
        out = parts[0]
        for p in parts[1:]:
            out += (" - " + p[1:]) if p.startswith("-") else (" + " + p)
        return out

    def to_json_dict(self):
        maps = self.laurent_coefficients()
        if maps is not None:
            coeffs = [{str(k): str(v) for k, v in m.items()} for m in maps]
            return {"order": self.order, "theta_coefficients": coeffs}
        return {"order": self.order,
                "theta_coefficients_rational": [c.render()
                                                for c in self.coeffs]}


def _theta_compose(op):
    """theta composed with sum op_j theta^j, as operator coefficients."""
    out = [RatFun(0)] * (len(op) + 1)
    for j, c in enumerate(op):
        out[j] = out[j] + c.theta()
        out[j + 1] = out[j + 1] + c
    return out


def connection_apply(conn_matrix, vec):
    """(theta + A) acting on a column of rational functions."""
    n = len(vec)
    return [vec[i].theta() + sum((conn_matrix[i][j] * vec[j]
                                  for j in range(n)), RatFun(0))
            for i in range(n)]


def scalar_reduction(conn, cyclic_vector=None):
    n = conn.dim
    a = conn.ratfun_matrix()
    if cyclic_vector is None:
        vec = [RatFun(1 if i == 0 else 0) for i in range(n)]
    else:
        if len(cyclic_vector) != n:
            raise ValidationError("cyclic vector length %d does not match "
                                  "dimension %d" % (len(cyclic_vector), n))
        vec = [x if isinstance(x, RatFun) else RatFun(x)
               for x in cyclic_vector]
    frame = [vec]
    for _ in range(n):
        frame.append(connection_apply(a, frame[-1]))
    # solve [v, Dv, ..., D^{n-1}v] d = D^n v over the rational-function field
    work = [[frame[j][i] for j in range(n)] + [frame[n][i]] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, n) if not work[i][c].is_zero()), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = RatFun(1) / work[r][c]
        work[r] = [x * inv for x in work[r]]
        for i in range(n):
            if i != r and not work[i][c].is_zero():
                f = work[i][c]
                work[i] = [x - f * y for x, y in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
    if r < n:
        raise CyclicVectorError(rank_found=r, needed=n)
    d = [work[i][n] for i in range(n)]
    op = [RatFun(1)]
    for i in range(n - 2, -1, -1):
        op = [-x for x in _theta_compose(op)]
        op[0] = op[0] - d[i + 1]
    op = _theta_compose(op)
    op[0] = op[0] + d[0]
    sign = RatFun(1 if (n - 1) % 2 == 0 else -1)
    op = [sign * x for x in op]
    assert op[n] == RatFun(1), "BUG: reduction lost monicity"
    return ScalarOperator(op[:n], h=conn.h)


def companion_connection(op):
    """The connection theta + A whose last solution coordinate satisfies op.

    A has 1's below the diagonal and first row (-1)^j c_{n-1-j}; feeding
    the built cases' scalar operators back through this reproduces the
    canonical forms, e.g. the sl_n matrix itself.
    """
    n = op.order
    coeffs = {0: _subdiagonal(n)}
    for j in range(n):
        c = op.coeffs[n - 1 - j]
        sign = 1 if j % 2 == 0 else -1
        for k, val in _laurent_terms(c).items():
            coeffs.setdefault(k, zeros(n, n))[0][j] = sign * val
    return MatrixConnection(coeffs, "companion order %d" % n, h=op.h,
                            rho_weights=None)


# -- slope at infinity --------------------------------------------------------


def _weights_from_sparsity(conn):
    """Recover a grading from the constant term's chain structure.

    Each nonzero entry of A(0) ties w_i = w_j - 1; canonical companion
    forms have a single chain, which pins the weights up to one shift
    per connected component (shifts only move the regular part).  The
    caller still verifies the resulting leading term, so a bad guess
    fails loudly rather than silently.
    """
    n = conn.dim
    a0 = conn.coefficient(0)
    edges = {i: [] for i in range(n)}
    for i in range(n):
        for j in range(n):
            if a0[i][j] != 0 and i != j:
                edges[j].append((i, Fraction(-1)))
                edges[i].append((j, Fraction(1)))
    weights = [None] * n
    for start in range(n):
        if weights[start] is not None:
            continue
        weights[start] = Fraction(0)
        queue = [start]
        while queue:
            i = queue.pop()
            for j, diff in edges[i]:
                expect = weights[i] + diff
                if weights[j] is None:
                    weights[j] = expect
                    queue.append(j)
                elif weights[j] != expect:
                    raise ValidationError("inconsistent grading in %s; "
                                          "provide rho_weights" % conn.label)
    return weights


def slope_at_infinity(conn, h=None, details=False):
    """Slope of the connection at t = infinity, verified to be 1/h.

    Substitutes t = u^{-h}, gauges by diag(u^{w_i}) with w the rho-check
    weights, and checks a second-order pole whose leading coefficient is
    semisimple and nonzero (it equals -h(N+E) in the representation).
    """
    if h is None:
        h = conn.h
    if h is None:
        raise ValidationError("slope needs the Coxeter number h")
    w = conn.rho_weights
    if w is None:
        w = _weights_from_sparsity(conn)
    n = conn.dim
    by_exp = {}

    def add(exp, i, j, val):
        assert (Fraction(exp) * 2 * h).denominator == 1, \
            "BUG: exponent outside (1/2h) Z"
        mat = by_exp.get(exp)
        if mat is None:
            mat = by_exp[exp] = zeros(n, n)
        mat[i][j] += val

    for k, mat in conn.coeffs.items():
        for i in range(n):
            for j in range(n):
                if mat[i][j] != 0:
                    add(Fraction(-h * k) + w[i] - w[j], i, j,
                        -h * mat[i][j])
    for i in range(n):
        if w[i] != 0:
            add(Fraction(0), i, i, -w[i])
    by_exp = {e: m for e, m in by_exp.items()
              if any(any(x != 0 for x in row) for row in m)}
    low = min(by_exp, default=Fraction(0))
    if low < -1:
        raise SlopeVerificationError("pole order %s at infinity exceeds 2 "
                                     "for %s" % (1 - low, conn.label))
    leading = by_exp.get(Fraction(-1))
    if leading is None:
        raise SlopeVerificationError("no second-order pole at infinity "
                                     "for %s" % conn.label)
    if is_nilpotent(leading):
        raise SlopeVerificationError("nilpotent leading term at infinity "
                                     "for %s" % conn.label)
    if not is_semisimple(leading):
        raise SlopeVerificationError("leading term at infinity is not "
                                     "semisimple for %s" % conn.label)
    slope = Fraction(1, h)
    if not details:
        return slope
    return {"slope": slope, "pole_order": 2, "leading": leading,
            "exponents": sorted(by_exp), "gauge_weights": list(w)}
