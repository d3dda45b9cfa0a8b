"""Truncated formal solutions of (theta + A)f = 0 and the residue pairing.

The recursion n v_n + sum_k A_k v_{n-k} = 0 is propagated upward with a
running parameter space: parameters enter where n Id + A(0) is singular
(n = 0 for the built connections) or, for spaces with an infinite tail
at t = 0, as free seed layers placed a buffer below the reported
window.  Equations at the singular levels and at a closed top edge cut
the parameter space down.  Reported dimensions are ranks over the core
window [-M, M], which makes them independent of the seed placement.
"""

from fractions import Fraction

from .errors import ConsistencyError, ValidationError
from .linalg import (_row_reduce, identity, inverse, mat_mul, nullspace,
                     rank, zeros)

SPACES = ("taylor0", "taylor_inf", "two_sided", "laurent_polys")


class SeriesWindow:
    """Finitely many exact coefficients v_n of a formal series."""

    def __init__(self, dim, coeffs):
        self.dim = dim
        self.coeffs = {}
        for n, vec in coeffs.items():
            vec = [Fraction(x) for x in vec]
            if len(vec) != dim:
                raise ValidationError("coefficient at degree %d has length "
                                      "%d, expected %d" % (n, len(vec), dim))
            if any(x != 0 for x in vec):
                self.coeffs[int(n)] = vec
        if self.coeffs:
            self.n_min = min(self.coeffs)
            self.n_max = max(self.coeffs)
        else:
            self.n_min = self.n_max = 0

    def coefficient(self, n):
        got = self.coeffs.get(n)
        if got is None:
            return [Fraction(0)] * self.dim
        return got[:]

    def support(self):
        return sorted(self.coeffs)

    def is_zero(self):
        return not self.coeffs


class KernelReport:
    def __init__(self, space, dimension, truncation, stabilized, basis):
        self.space = space
        self.dimension = dimension
        self.truncation = truncation
        self.stabilized = stabilized
        self.basis = basis

    def __repr__(self):
        return ("KernelReport(space=%r, dimension=%d, truncation=%d, "
                "stabilized=%r)" % (self.space, self.dimension,
                                    self.truncation, self.stabilized))


def _solve_square(b, r):
    """X with b X = r when b is invertible, else None."""
    d = len(b)
    p = len(r[0]) if r and r[0] is not None else 0
    aug = [b[i][:] + (r[i][:] if p else []) for i in range(d)]
    pivots = _row_reduce(aug)
    if len(pivots) != d or any(c >= d for c in pivots):
        return None
    return [row[d:] for row in aug]


def _solve_space(conn, space, m_window, buffer_depth):
    if not conn.is_polynomial():
        raise ValidationError("formal solving needs polynomial A(t); %s has "
                              "poles at t = 0" % conn.label)
    d = conn.dim
    ks = [k for k in conn.coeffs if k >= 1]
    big_k = max(ks, default=0)
    seed_layers = max(big_k, 1)
    a0 = conn.coefficient(0)
    a = {k: conn.coefficient(k) for k in ks}
    open_bottom = space in ("taylor_inf", "two_sided")
    closed_top = space in ("taylor_inf", "laurent_polys")
    phi = {}
    if open_bottom:
        start = -m_window - buffer_depth
        p = seed_layers * d
        for j in range(seed_layers):
            block = zeros(d, p)
            for i in range(d):
                block[i][j * d + i] = Fraction(1)
            phi[start + j] = block
        first_eq = start + seed_layers
    else:
        start = -m_window
        p = 0
        first_eq = start
    for n in range(first_eq, m_window + 1):
        r = zeros(d, p)
        for k in ks:
            prev = phi.get(n - k)
            if prev is None:
                continue
            ak = a[k]
            for i in range(d):
                row = r[i]
                arow = ak[i]
                for s in range(d):
                    c = arow[s]
                    if c:
                        prev_row = prev[s]
                        for q in range(p):
                            row[q] -= c * prev_row[q]
        b = [[a0[i][j] + (Fraction(n) if i == j else 0) for j in range(d)]
             for i in range(d)]
        x = _solve_square(b, r)
        if x is not None:
            phi[n] = x
            continue
        block = [b[i] + [-r[i][q] for q in range(p)] for i in range(d)]
        kern = nullspace(block)
        p2 = len(kern)
        pmap = [[kern[c][d + q] for c in range(p2)] for q in range(p)]
        for m in list(phi):
            phi[m] = mat_mul(phi[m], pmap) if p else zeros(d, p2)
        phi[n] = [[kern[c][i] for c in range(p2)] for i in range(d)]
        p = p2
    if closed_top:
        for n in range(m_window + 1, m_window + big_k + 1):
            c_rows = zeros(d, p)
            hit = False
            for k in ks:
                prev = phi.get(n - k)
                if prev is None:
                    continue
                hit = True
                ak = a[k]
                for i in range(d):
                    for s in range(d):
                        coef = ak[i][s]
                        if coef:
                            for q in range(p):
                                c_rows[i][q] += coef * prev[s][q]
            if not hit or p == 0:
                continue
            kern = nullspace(c_rows)
            pmap = [[kern[c][q] for c in range(len(kern))] for q in range(p)]
            for m in list(phi):
                phi[m] = mat_mul(phi[m], pmap)
            p = len(kern)
    core = [n for n in range(-m_window, m_window + 1) if n in phi]
    if p == 0:
        return 0, []
    stacked = []
    for n in core:
        stacked.extend(row[:] for row in phi[n])
    pivots = _row_reduce(stacked) if stacked else []
    basis = []
    for col in pivots:
        window = {n: [phi[n][i][col] for i in range(d)] for n in core}
        basis.append(SeriesWindow(d, window))
    return len(pivots), basis


def kernel_dimension(conn, space, truncation, enforce_floor=True):
    """Dimension of the truncated solution space, with stabilization.

    The dimension is recomputed with the window enlarged by one h-period
    and the report is flagged unstabilized if the two values differ.
    """
    if space not in SPACES:
        raise ValidationError("unknown space %r; expected one of %s"
                              % (space, ", ".join(SPACES)))
    h_step = conn.h if conn.h else conn.dim + 1
    floor = 2 * conn.dim + 2 * h_step
    if enforce_floor and truncation < floor:
        raise ValidationError("truncation %d is below the floor %d for %s; "
                              "pass enforce_floor=False to override"
                              % (truncation, floor, conn.label))
    dim1, basis = _solve_space(conn, space, truncation, truncation + h_step)
    m2 = truncation + h_step
    dim2, _ = _solve_space(conn, space, m2, m2 + h_step)
    return KernelReport(space, dim1, truncation, dim1 == dim2, basis)


def check_rigidity(conn, conn_dual, truncation):
    """The two solver-side rigidity criteria, evaluated at truncation.

    Passes when the Laurent-polynomial kernels of V and V* vanish and
    the two-sided kernel splits as taylor0 + taylor_inf.
    """
    reports = {
        "laurent_V": kernel_dimension(conn, "laurent_polys", truncation),
        "laurent_V_dual": kernel_dimension(conn_dual, "laurent_polys",
                                           truncation),
        "two_sided": kernel_dimension(conn, "two_sided", truncation),
        "taylor0": kernel_dimension(conn, "taylor0", truncation),
        "taylor_inf": kernel_dimension(conn, "taylor_inf", truncation),
    }
    split_ok = (reports["two_sided"].dimension
                == reports["taylor0"].dimension
                + reports["taylor_inf"].dimension)
    passed = (reports["laurent_V"].dimension == 0
              and reports["laurent_V_dual"].dimension == 0
              and split_ok)
    return {
        "passed": passed,
        "splits": split_ok,
        "dimensions": {k: r.dimension for k, r in reports.items()},
        "stabilized": all(r.stabilized for r in reports.values()),
        "reports": reports,
    }


def h1_middle_via_solver(conn, conn_dual, truncation):
    """dim two_sided - dim taylor0 - dim taylor_inf for V.

    This equals the middle-extension h^1 when the connection has no flat
    sections over the punctured line, which is checked first.
    """
    h0 = kernel_dimension(conn, "laurent_polys", truncation)
    if h0.dimension != 0:
        raise ConsistencyError("solver h1 needs a vanishing global kernel; "
                               "%s has dimension %d" % (conn.label,
                                                        h0.dimension))
    two = kernel_dimension(conn, "two_sided", truncation)
    t0 = kernel_dimension(conn, "taylor0", truncation)
    tinf = kernel_dimension(conn, "taylor_inf", truncation)
    out = two.dimension - t0.dimension - tinf.dimension
    if out < 0:
        raise ConsistencyError("negative h1 accounting for %s: %d - %d - %d"
                               % (conn.label, two.dimension, t0.dimension,
                                  tinf.dimension))
    return out


def apply_connection(conn, window):
    """(theta + A) acting on a series window."""
    if not conn.is_polynomial():
        raise ValidationError("series application needs polynomial A(t)")
    d = conn.dim
    if window.dim != d:
        raise ValidationError("window dimension %d does not match connection "
                              "dimension %d" % (window.dim, d))
    out = {}
    for n, vec in window.coeffs.items():
        acc = out.setdefault(n, [Fraction(0)] * d)
        for i in range(d):
            acc[i] += n * vec[i]
        for k, mat in conn.coeffs.items():
            tgt = out.setdefault(n + k, [Fraction(0)] * d)
            for i in range(d):
                row = mat[i]
                tgt[i] += sum(row[j] * vec[j] for j in range(d))
    return SeriesWindow(d, out)


def residue_pair(f, omega):
    """Res_{t=0} of the pairing series: sum over n + m = 0 of <v_n, w_m>."""
    total = Fraction(0)
    for n, vec in f.coeffs.items():
        other = omega.coeffs.get(-n)
        if other is not None:
            total += sum(x * y for x, y in zip(vec, other))
    return total


def sl2_double_cover_h1(n):
    """The middle h^1 for the even-dimensional SL2 representation.

    Works on the double cover t = z^2 after the diagonal gauge: the
    two-sided solutions are seeded at level n, a solution dies at the
    bottom exactly when its level-0 layer vanishes, and the answer is
    the rank of the down-propagation on even-level seeds.
    """
    if n < 2 or n % 2:
        raise ValidationError("the double-cover computation needs even "
                              "dimension n >= 2")
    e = zeros(n, n)
    for i in range(1, n):
        e[i - 1][i] = Fraction(i * (n - i))
    f = zeros(n, n)
    for i in range(1, n):
        f[i][i - 1] = Fraction(1)
    ef = [[e[i][j] + f[i][j] for j in range(n)] for i in range(n)]
    ef_inv = inverse(ef)
    down = identity(n)
    for m in range(n, 0, -1):
        step = [[Fraction(-1, 2) * ef_inv[i][j] * (m - (j + 1))
                 for j in range(n)] for i in range(n)]
        down = mat_mul(step, down)
    even_cols = [j for j in range(n) if (j + 1) % 2 == 0]
    selected = [[down[i][j] for j in even_cols] for i in range(n)]
    return rank(selected)
