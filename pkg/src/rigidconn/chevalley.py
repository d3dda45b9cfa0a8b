"""Chevalley bases, the principal triple, and the loop-algebra grading.

Structure constants come from the extraspecial-pair normalization: for
each non-simple positive root gamma the special pair (alpha, beta) with
alpha + beta = gamma and alpha minimal gets N(alpha, beta) = p + 1 > 0,
and every other constant follows from the standard identities relating
N on rotated, negated, and quadruple configurations.  Elements are
sparse dicts {basis index: Fraction}.
"""

from fractions import Fraction

from .errors import ValidationError
from .linalg import is_semisimple, mat_mul, nullspace, rank, zeros
from .rootsys import RootSystem, build_root_system


def _add_into(acc, key, val):
    if val == 0:
        return
    cur = acc.get(key)
    if cur is None:
        acc[key] = val
    else:
        cur += val
        if cur == 0:
            del acc[key]
        else:
            acc[key] = cur


class ChevalleyAlgebra:
    def __init__(self, rs):
        self.rs = rs
        self.rank = rs.rank
        self.pos = list(rs.pos_roots)
        self.npos = len(self.pos)
        self.dim = rs.rank + 2 * self.npos
        # basis: 0..rank-1 the simple coroots, then e_beta, then f_beta
        self.root_of_index = [None] * rs.rank
        self.index_of_root = {}
        for k, beta in enumerate(self.pos):
            self.root_of_index.append(beta)
            self.index_of_root[beta] = rs.rank + k
        for k, beta in enumerate(self.pos):
            neg = tuple(-x for x in beta)
            self.root_of_index.append(neg)
            self.index_of_root[neg] = rs.rank + self.npos + k
        self._order = {beta: k for k, beta in enumerate(self.pos)}
        self._nc = {}
        self._extraspecial = {}
        self._bracket_cache = {}
        self._kappa = None

    # -- structure constants ----------------------------------------------

    def _chain_down(self, alpha, beta):
        """Largest p with beta - p*alpha a root."""
        p = 0
        cur = beta
        while True:
            cur = tuple(b - a for b, a in zip(cur, alpha))
            if cur in self.rs.root_set:
                p += 1
            else:
                return p

    def extraspecial_pair(self, gamma):
        """The special pair (alpha, beta) for gamma with alpha minimal."""
        pair = self._extraspecial.get(gamma)
        if pair is not None:
            return pair
        order = self._order
        for alpha in self.pos:
            beta = tuple(g - a for g, a in zip(gamma, alpha))
            if beta in order and order[alpha] < order[beta]:
                pair = (alpha, beta)
                break
        assert pair is not None, "BUG: no special pair for a non-simple root"
        self._extraspecial[gamma] = pair
        return pair

    def structure_constant(self, a, b):
        """N(a, b) with [x_a, x_b] = N(a, b) x_{a+b}; a, b, a+b roots."""
        key = (a, b)
        val = self._nc.get(key)
        if val is not None:
            return val
        val = self._compute_nc(a, b)
        self._nc[key] = val
        return val

    def _compute_nc(self, a, b):
        rs = self.rs
        order = self._order
        pos_a, pos_b = a in order, b in order
        if pos_a and pos_b:
            if order[a] > order[b]:
                return -self.structure_constant(b, a)
            gamma = tuple(x + y for x, y in zip(a, b))
            a0, b0 = self.extraspecial_pair(gamma)
            if (a, b) == (a0, b0):
                return Fraction(self._chain_down(a, b) + 1)
            # quadruple (a0, b0, -a, -b) sums to zero, no two summing to zero
            na = tuple(-x for x in a)
            nb = tuple(-x for x in b)
            total = Fraction(0)
            d1 = tuple(x - y for x, y in zip(b0, a))
            if d1 in rs.root_set:
                total += (self.structure_constant(b0, na)
                          * self.structure_constant(a0, nb)
                          / rs.root_length_sq(d1))
            d2 = tuple(x - y for x, y in zip(a0, a))
            if d2 in rs.root_set:
                total += (self.structure_constant(na, a0)
                          * self.structure_constant(b0, nb)
                          / rs.root_length_sq(d2))
            n_neg = -total * rs.root_length_sq(gamma) / self.structure_constant(a0, b0)
            return -n_neg
        if not pos_a and not pos_b:
            return -self.structure_constant(tuple(-x for x in a),
                                            tuple(-x for x in b))
        if not pos_a:
            return -self.structure_constant(b, a)
        # a positive, b negative; rotate to a same-sign pair
        v = tuple(-x for x in b)
        c = tuple(x + y for x, y in zip(a, b))
        if c in order:
            return (-self.structure_constant(v, c)
                    * rs.root_length_sq(c) / rs.root_length_sq(a))
        w = tuple(-x for x in c)
        return (self.structure_constant(w, a)
                * rs.root_length_sq(c) / rs.root_length_sq(v))

    # -- brackets -----------------------------------------------------------

    def coroot_element(self, beta):
        """h_beta = beta-check as an element, for beta a positive root."""
        return {i: Fraction(c) for i, c in enumerate(self.rs.coroot_coeffs(beta))
                if c != 0}

    def bracket_indices(self, i, j):
        key = (i, j)
        out = self._bracket_cache.get(key)
        if out is not None:
            return out
        out = self._compute_bracket(i, j)
        self._bracket_cache[key] = out
        return out

    def _compute_bracket(self, i, j):
        alpha = self.root_of_index[i]
        beta = self.root_of_index[j]
        if alpha is None and beta is None:
            return {}
        if alpha is None:
            return {j: Fraction(beta[i])} if beta[i] else {}
        if beta is None:
            return {i: Fraction(-alpha[j])} if alpha[j] else {}
        total = tuple(x + y for x, y in zip(alpha, beta))
        if all(x == 0 for x in total):
            if i < j:  # [e, f] = h_alpha
                return dict(self.coroot_element(alpha))
            return {k: -v for k, v in self.coroot_element(beta).items()}
        if total in self.rs.root_set:
            n = self.structure_constant(alpha, beta)
            return {self.index_of_root[total]: n}
        return {}

    def bracket(self, x, y):
        acc = {}
        for i, xi in x.items():
            for j, yj in y.items():
                for k, c in self.bracket_indices(i, j).items():
                    _add_into(acc, k, xi * yj * c)
        return acc

    def ad_matrix(self, x):
        m = zeros(self.dim, self.dim)
        for j in range(self.dim):
            for i, xi in x.items():
                for k, c in self.bracket_indices(i, j).items():
                    m[k][j] += xi * c
        return m

    # -- distinguished elements ----------------------------------------------

    def simple_e(self, i):
        return {self.index_of_root[self.rs.simple_roots[i]]: Fraction(1)}

    def simple_f(self, i):
        neg = tuple(-x for x in self.rs.simple_roots[i])
        return {self.index_of_root[neg]: Fraction(1)}

    def e_theta(self):
        return {self.index_of_root[self.rs.theta]: Fraction(1)}

    def f_theta(self):
        neg = tuple(-x for x in self.rs.theta)
        return {self.index_of_root[neg]: Fraction(1)}

    def rho_check(self):
        return {i: Fraction(c, 2) for i, c in enumerate(self.rs.a_coeffs)}

    def weight_of_index(self, i):
        """The ad rho-check eigenvalue of a basis element (signed height)."""
        beta = self.root_of_index[i]
        if beta is None:
            return 0
        ht = self.rs.a_value(beta) // 2
        return ht

    # -- invariant form -------------------------------------------------------

    def kappa(self, x, y):
        """Invariant form normalized by kappa(e_theta, f_theta) = 1."""
        if self._kappa is None:
            self._build_kappa()
        total = Fraction(0)
        for i, xi in x.items():
            row = self._kappa.get(i)
            if not row:
                continue
            for j, yj in y.items():
                c = row.get(j)
                if c is not None:
                    total += xi * yj * c
        return total

    def _build_kappa(self):
        rs = self.rs
        r = self.rank
        gram = {}

        def put(i, j, v):
            gram.setdefault(i, {})[j] = v

        for i in range(r):
            for j in range(r):
                v = Fraction(0)
                for beta in self.pos:
                    v += 2 * Fraction(beta[i] * beta[j])
                if v:
                    put(i, j, v)
        for k, beta in enumerate(self.pos):
            ei = r + k
            fi = r + self.npos + k
            tr = Fraction(0)
            e = {ei: Fraction(1)}
            f = {fi: Fraction(1)}
            for j in range(self.dim):
                y = self.bracket(f, {j: Fraction(1)})
                z = self.bracket(e, y)
                c = z.get(j)
                if c:
                    tr += c
            put(ei, fi, tr)
            put(fi, ei, tr)
        theta_e = r + self._order[rs.theta]
        scale = gram[theta_e][r + self.npos + self._order[rs.theta]]
        assert scale != 0
        self._kappa = {i: {j: v / scale for j, v in row.items()}
                       for i, row in gram.items()}


def build_chevalley(rs_or_type, rank=None):
    if isinstance(rs_or_type, RootSystem):
        rs = rs_or_type
    else:
        rs = build_root_system(rs_or_type, rank)
    return ChevalleyAlgebra(rs)


def principal_triple(alg):
    """(N, E, rho_check) with N the sum of simple f's and E = e_theta."""
    n = {}
    for i in range(alg.rank):
        n.update(alg.simple_f(i))
    return n, alg.e_theta(), alg.rho_check()


def ad_matrix(alg, x):
    return alg.ad_matrix(x)


def _degree_classes(alg):
    h = alg.rs.coxeter_number
    classes = {}
    for i in range(alg.dim):
        classes.setdefault(alg.weight_of_index(i) % h, []).append(i)
    return classes


def kostant_check(alg):
    """Kernel dimension and semisimplicity of ad(N + E).

    ad(N + E) lowers the rho-check degree by one modulo h, so it cycles
    the degree classes; kernel and semisimplicity are computed per class,
    with a direct charpoly test for small algebras.
    """
    n, e, _ = principal_triple(alg)
    x = dict(n)
    for k, v in e.items():
        _add_into(x, k, v)
    m = alg.ad_matrix(x)
    h = alg.rs.coxeter_number
    classes = _degree_classes(alg)
    for j in range(alg.dim):
        cj = alg.weight_of_index(j) % h
        for i in range(alg.dim):
            if m[i][j] != 0:
                assert alg.weight_of_index(i) % h == (cj - 1) % h, \
                    "BUG: ad(N+E) does not lower degree by one mod h"
    # per-class restriction: class c -> class c-1
    blocks = {}
    kernel_dim = 0
    for c, cols in classes.items():
        rows = classes.get((c - 1) % h, [])
        block = [[m[i][j] for j in cols] for i in rows]
        blocks[c] = block
        kernel_dim += len(cols) - (rank(block) if rows else 0)
    if alg.dim <= 30:
        squarefree = is_semisimple(m)
    else:
        squarefree = True
        ker_mh = 0
        for c, cols in classes.items():
            power = [[Fraction(i == j) for j in range(len(cols))]
                     for i in range(len(cols))]
            cur = c
            for _ in range(h):
                power = mat_mul(blocks[cur], power)
                cur = (cur - 1) % h
            assert cur == c
            ker_mh += len(cols) - rank(power)
            if not is_semisimple(power):
                squarefree = False
        if ker_mh != kernel_dim:
            squarefree = False
    return {"kernel_dim": kernel_dim, "minpoly_squarefree": squarefree}


class KacWindow:
    """Principal-grading slices of the loop algebra on degrees |n| <= D.

    Loop elements are dicts over (basis index, t-power); the degree of
    b t^k is h k - e(b) with e the ad rho-check eigenvalue.
    """

    def __init__(self, alg, depth):
        h = alg.rs.coxeter_number
        if depth < h:
            raise ValidationError("window depth %d below the Coxeter number %d"
                                  % (depth, h))
        self.alg = alg
        self.depth = depth
        self.h = h
        self._n, self._e, _ = principal_triple(alg)
        self._slices = {}
        self._a = {}
        self._c = {}

    def slice_basis(self, n):
        key = self._slices.get(n)
        if key is None:
            alg, h = self.alg, self.h
            key = []
            for i in range(alg.dim):
                e = alg.weight_of_index(i)
                if (n + e) % h == 0:
                    key.append((i, (n + e) // h))
            self._slices[n] = key
        return key

    def ad_p1(self, elem):
        """Bracket with p1 = N + E t on a loop element."""
        alg = self.alg
        out = {}
        for (i, k), v in elem.items():
            for j, c in alg.bracket(self._n, {i: Fraction(1)}).items():
                _add_into(out, (j, k), v * c)
            for j, c in alg.bracket(self._e, {i: Fraction(1)}).items():
                _add_into(out, (j, k + 1), v * c)
        return out

    def ad_p1_matrix(self, n):
        """Matrix of ad p1 from slice n to slice n+1."""
        src = self.slice_basis(n)
        dst = self.slice_basis(n + 1)
        dst_index = {key: i for i, key in enumerate(dst)}
        m = zeros(len(dst), len(src))
        for col, key in enumerate(src):
            image = self.ad_p1({key: Fraction(1)})
            for out_key, v in image.items():
                m[dst_index[out_key]][col] += v
        return m

    def a_slice(self, n):
        """Basis of the commuting part: Ker(ad p1) inside slice n."""
        got = self._a.get(n)
        if got is None:
            got = nullspace(self.ad_p1_matrix(n))
            self._a[n] = got
        return got

    def c_slice(self, n):
        """Basis of the complement: Im(ad p1: slice n-1 -> slice n)."""
        got = self._c.get(n)
        if got is None:
            m = self.ad_p1_matrix(n - 1)
            cols = [[row[j] for row in m] for j in range(len(m[0]) if m else 0)]
            got = []
            for v in cols:
                if rank(got + [v]) > len(got):
                    got.append(v)
            self._c[n] = got
        return got

    def slice_element(self, n, coords):
        return {key: c for key, c in zip(self.slice_basis(n), coords) if c != 0}

    def loop_pairing(self, x, y):
        """kappa(x, y) delta_{a+b,0} extended to loop elements."""
        alg = self.alg
        total = Fraction(0)
        for (i, k), xv in x.items():
            for (j, l), yv in y.items():
                if k + l == 0:
                    total += xv * yv * alg.kappa({i: Fraction(1)}, {j: Fraction(1)})
        return total

    def heisenberg_cocycle(self, x, y):
        """omega(x t^a, y t^b) = a kappa(x, y) delta_{a+b,0}."""
        alg = self.alg
        total = Fraction(0)
        for (i, k), xv in x.items():
            for (j, l), yv in y.items():
                if k + l == 0:
                    total += k * xv * yv * alg.kappa({i: Fraction(1)},
                                                     {j: Fraction(1)})
        return total


def kac_decomposition(alg, depth):
    return KacWindow(alg, depth)


def heisenberg_pairing_check(alg, depth):
    """Non-degeneracy of the cocycle on a_n x a_{-n} over the window."""
    win = kac_decomposition(alg, depth)
    for n in range(1, depth + 1):
        plus = win.a_slice(n)
        minus = win.a_slice(-n)
        if len(plus) != len(minus):
            return False
        if not plus:
            continue
        gram = [[win.heisenberg_cocycle(win.slice_element(n, u),
                                        win.slice_element(-n, v))
                 for v in minus] for u in plus]
        if rank(gram) != len(plus):
            return False
    return True
