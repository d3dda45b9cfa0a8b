"""Root systems of the finite simple types in fundamental-weight coordinates.

Weights are integer tuples of pairings with the simple coroots, so
<mu, alpha_i-check> is just mu[i].  The Cartan matrix convention is
A[i][j] = <alpha_j, alpha_i-check>, which makes the j-th simple root
equal to the j-th column of A in these coordinates.
"""

from fractions import Fraction
from math import gcd

from .errors import ValidationError
from .linalg import (frac_matrix, identity, inverse, is_zero_matrix, mat_mul,
                     mat_sub, mat_vec, poly_at_matrix)
from .poly import cyclotomic, pbezout, pdeg, pdivmod, pmul

SUPPORTED = {"A": (1, 8), "B": (2, 9), "C": (2, 8), "D": (4, 8),
             "E": (6, 8), "F": (4, 4), "G": (2, 2)}


def cartan_matrix(type_label, rank):
    n = rank
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2

    def bond(i, j, aij=-1, aji=-1):
        a[i - 1][j - 1] = aij
        a[j - 1][i - 1] = aji

    if type_label == "A":
        for i in range(1, n):
            bond(i, i + 1)
    elif type_label == "B":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 1, n, -1, -2)
    elif type_label == "C":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 1, n, -2, -1)
    elif type_label == "D":
        for i in range(1, n - 1):
            bond(i, i + 1)
        bond(n - 2, n)
    elif type_label == "E":
        for i, j in [(1, 3), (3, 4), (4, 5), (5, 6), (2, 4)][: n - 1]:
            bond(i, j)
        if n >= 7:
            bond(6, 7)
        if n == 8:
            bond(7, 8)
    elif type_label == "F":
        bond(1, 2)
        bond(2, 3, -1, -2)
        bond(3, 4)
    elif type_label == "G":
        bond(1, 2, -3, -1)
    else:
        raise ValidationError("unknown type %r" % type_label)
    return a


class RootSystem:
    def __init__(self, type_label, rank):
        type_label = type_label.upper()
        if type_label not in SUPPORTED:
            raise ValidationError("unknown type %r" % type_label)
        lo, hi = SUPPORTED[type_label]
        if not lo <= rank <= hi:
            raise ValidationError("rank %d out of range [%d, %d] for type %s"
                                  % (rank, lo, hi, type_label))
        if type_label == "B" and rank == 9:
            # rank 9 is admitted only for the spin-threshold computation
            pass
        self.type_label = type_label
        self.rank = rank
        self.cartan = cartan_matrix(type_label, rank)
        self.cartan_inv = inverse(frac_matrix(self.cartan))
        self.simple_roots = [tuple(self.cartan[k][j] for k in range(rank))
                             for j in range(rank)]
        self._build_positive_roots()
        self._build_lengths()
        self._build_exponents()
        self._build_a_coeffs()

    # -- construction ---------------------------------------------------

    def _build_positive_roots(self):
        n = self.rank
        simples = self.simple_roots
        height = {beta: 1 for beta in simples}
        layer = list(simples)
        pos = list(simples)
        ht = 1
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    gamma = tuple(b + a for b, a in zip(beta, simples[i]))
                    if gamma in height:
                        continue
                    p = 0
                    down = beta
                    while True:
                        down = tuple(b - a for b, a in zip(down, simples[i]))
                        if down in height or down == (0,) * n:
                            if down == (0,) * n:
                                break
                            p += 1
                        else:
                            break
                    # alpha_i string through beta: q = p - <beta, alpha_i-check>
                    if p - beta[i] > 0:
                        height[gamma] = ht + 1
                        nxt.append(gamma)
                        pos.append(gamma)
            layer = nxt
            ht += 1
        self.height = height
        self.pos_roots = sorted(height, key=lambda b: (height[b], b))
        self.root_set = set(self.pos_roots)
        self.root_set.update(tuple(-x for x in b) for b in self.pos_roots)
        self.max_height = max(height.values())
        tops = [b for b, h in height.items() if h == self.max_height]
        assert len(tops) == 1, "BUG: highest root is not unique"
        self.theta = tops[0]

    def _build_lengths(self):
        n = self.rank
        a = self.cartan
        ell = [None] * n
        ell[0] = Fraction(1)
        todo = [0]
        while todo:
            i = todo.pop()
            for j in range(n):
                if i != j and a[i][j] != 0 and ell[j] is None:
                    ell[j] = ell[i] * Fraction(a[i][j], a[j][i])
                    todo.append(j)
        assert all(x is not None for x in ell), "BUG: Dynkin diagram disconnected"
        scale = Fraction(2) / max(ell)
        self.length_sq = [x * scale for x in ell]
        self.d = [x / 2 for x in self.length_sq]

    def _build_exponents(self):
        counts = {}
        for h in self.height.values():
            counts[h] = counts.get(h, 0) + 1
        exps = []
        for k in range(1, self.max_height + 1):
            mult = counts.get(k, 0) - counts.get(k + 1, 0)
            assert mult >= 0, "BUG: height histogram not unimodal"
            exps.extend([k] * mult)
        assert len(exps) == self.rank
        self.exponents = exps
        self.coxeter_number = self.max_height + 1
        self.degrees = [m + 1 for m in exps]
        order = 1
        for deg in self.degrees:
            order *= deg
        self.weyl_order = order

    def _build_a_coeffs(self):
        coeffs = [0] * self.rank
        for beta in self.pos_roots:
            for i, c in enumerate(self.coroot_coeffs(beta)):
                coeffs[i] += c
        self.a_coeffs = coeffs  # a(omega_i) = coeffs[i]; 2 rho-check in coroot basis

    # -- basic queries ---------------------------------------------------

    def simple_coords(self, mu):
        return mat_vec(self.cartan_inv, list(mu))

    def form(self, mu, nu):
        """W-invariant symmetric form with (theta, theta) = 2."""
        c = self.simple_coords(mu)
        return sum(cj * dj * vj for cj, dj, vj in zip(c, self.d, nu))

    def root_length_sq(self, beta):
        return self.form(beta, beta)

    def coroot_coeffs(self, beta):
        """Coordinates of beta-check in the simple coroot basis (integers)."""
        k = self.simple_coords(beta)
        dbeta = self.root_length_sq(beta) / 2
        out = []
        for ki, di in zip(k, self.d):
            c = ki * di / dbeta
            assert c.denominator == 1, "BUG: coroot coordinates not integral"
            out.append(int(c))
        return out

    def a_value(self, mu):
        """Pairing <mu, 2 rho-check>; the principal grading of the weight mu."""
        return sum(m * c for m, c in zip(mu, self.a_coeffs))

    def is_root(self, mu):
        return tuple(mu) in self.root_set

    def reflection_matrix(self, i):
        n = self.rank
        s = identity(n)
        for k in range(n):
            s[k][i] -= self.cartan[k][i]
        return s

    def fundamental_weight(self, i):
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def label(self):
        return "%s%d" % (self.type_label, self.rank)


def build_root_system(type_label, rank):
    return RootSystem(type_label, rank)


def coxeter_element(rs):
    """The Coxeter element s_1 s_2 ... s_r acting on fundamental-weight
    coordinates (applied right to left)."""
    w = rs.reflection_matrix(0)
    for i in range(1, rs.rank):
        w = mat_mul(w, rs.reflection_matrix(i))
    return w


def cyclotomic_factorization(p, h):
    """Factor p as a product of cyclotomic polynomials Phi_d with d | h.

    Returns {d: multiplicity}.  Raises if the factorization is not exact,
    which would mean p has an eigenvalue that is not an h-th root of unity.
    """
    factors = {}
    rest = list(p)
    for d in range(1, h + 1):
        if h % d:
            continue
        phi = list(cyclotomic(d))
        while pdeg(rest) >= pdeg(phi):
            quot, rem = pdivmod(rest, phi)
            if rem:
                break
            factors[d] = factors.get(d, 0) + 1
            rest = quot
    assert pdeg(rest) == 0, "BUG: charpoly has a non-root-of-unity factor"
    return factors


def coxeter_primitive_projector(w, h):
    """Projector onto the primitive h-th root-of-unity eigenspaces of w,
    as a polynomial in w over Q."""
    from .linalg import charpoly

    chi = charpoly(w)
    factors = cyclotomic_factorization(chi, h)
    assert h in factors, "BUG: Coxeter element without primitive eigenvalue"
    rest = [Fraction(1)]
    for d in factors:
        if d != h:
            rest = pmul(rest, list(cyclotomic(d)))
    if pdeg(rest) == 0:
        return identity(len(w))
    u, _v, g = pbezout(rest, list(cyclotomic(h)))
    assert g == [Fraction(1)], "BUG: cyclotomic factors not coprime"
    proj = poly_at_matrix(pmul(u, rest), w)
    assert is_zero_matrix(mat_sub(mat_mul(proj, proj), proj)), "BUG: not idempotent"
    assert is_zero_matrix(mat_sub(mat_mul(proj, w), mat_mul(w, proj)))
    assert is_zero_matrix(mat_mul(poly_at_matrix(list(cyclotomic(h)), w), proj))
    return proj


def primitive_rank(rs):
    """Number of exponents coprime to the Coxeter number."""
    h = rs.coxeter_number
    return sum(1 for m in rs.exponents if gcd(m, h) == 1)
