"""Polynomials over Q as ascending coefficient lists, and rational functions.

A polynomial is a list [c0, c1, ...] meaning c0 + c1 x + ...; the zero
polynomial is the empty list.  RatFun is a reduced fraction of two such
lists with a monic denominator, used for the variable t.
"""

from fractions import Fraction
from functools import lru_cache


def ptrim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def pdeg(p):
    return len(p) - 1


def padd(p, q):
    n = max(len(p), len(q))
    out = [Fraction(0)] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return ptrim(out)


def pneg(p):
    return [-c for c in p]


def psub(p, q):
    return padd(p, pneg(q))


def pscale(p, c):
    c = Fraction(c)
    if c == 0:
        return []
    return [c * x for x in p]


def pmul(p, q):
    if not p or not q:
        return []
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return ptrim(out)


def peval(p, x):
    out = Fraction(0)
    for c in reversed(p):
        out = out * x + c
    return out


def pderiv(p):
    return ptrim([i * c for i, c in enumerate(p)][1:])


def pmonic(p):
    if not p:
        return []
    lead = p[-1]
    return [c / lead for c in p]


def pdivmod(p, q):
    assert q, "division by the zero polynomial"
    p = [Fraction(c) for c in p]
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    inv = Fraction(1) / Fraction(q[-1])
    for i in range(len(p) - len(q), -1, -1):
        f = p[i + len(q) - 1] * inv
        if f:
            quot[i] = f
            for j, c in enumerate(q):
                p[i + j] -= f * c
    return ptrim(quot), ptrim(p)


def pgcd(p, q):
    a, b = list(p), list(q)
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def pbezout(p, q):
    """(u, v, g) with u p + v q = g, g the monic gcd."""
    r0, r1 = list(p), list(q)
    u0, u1 = [Fraction(1)], []
    v0, v1 = [], [Fraction(1)]
    while r1:
        quot, rem = pdivmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, psub(u0, pmul(quot, u1))
        v0, v1 = v1, psub(v0, pmul(quot, v1))
    if not r0:
        return [], [], []
    lead = r0[-1]
    return pscale(u0, 1 / lead), pscale(v0, 1 / lead), pmonic(r0)


def squarefree_part(p):
    g = pgcd(p, pderiv(p))
    s, r = pdivmod(p, g)
    assert not r
    return pmonic(s)


@lru_cache(maxsize=None)
def cyclotomic(d):
    """Coefficients of the d-th cyclotomic polynomial (ascending)."""
    num = [Fraction(0)] * d + [Fraction(1)]
    num[0] = Fraction(-1)
    for e in range(1, d):
        if d % e == 0:
            num, rem = pdivmod(num, cyclotomic(e))
            assert not rem
    return tuple(num)


class RatFun:
    """A rational function num/den over Q, den monic, gcd-reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, RatFun):
            assert den is None
            self.num, self.den = num.num, num.den
            return
        if not isinstance(num, list):
            num = [Fraction(num)] if num else []
        else:
            num = ptrim([Fraction(c) for c in num])
        if den is None:
            den = [Fraction(1)]
        elif not isinstance(den, list):
            den = [Fraction(den)]
        else:
            den = ptrim([Fraction(c) for c in den])
        assert den, "zero denominator"
        if num:
            g = pgcd(num, den)
            if pdeg(g) > 0:
                num, _ = pdivmod(num, g)
                den, _ = pdivmod(den, g)
        else:
            den = [Fraction(1)]
        lead = den[-1]
        if lead != 1:
            num = [c / lead for c in num]
            den = [c / lead for c in den]
        self.num, self.den = num, den

    @staticmethod
    def t():
        return RatFun([0, 1])

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return self.den == [Fraction(1)]

    def __bool__(self):
        return bool(self.num)

    def __add__(self, other):
        other = other if isinstance(other, RatFun) else RatFun(other)
        return RatFun(padd(pmul(self.num, other.den), pmul(other.num, self.den)),
                      pmul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFun(pneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-(other if isinstance(other, RatFun) else RatFun(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = other if isinstance(other, RatFun) else RatFun(other)
        return RatFun(pmul(self.num, other.num), pmul(self.den, other.den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = other if isinstance(other, RatFun) else RatFun(other)
        assert other.num, "division by zero rational function"
        return RatFun(pmul(self.num, other.den), pmul(self.den, other.num))

    def __rtruediv__(self, other):
        return RatFun(other) / self

    def __eq__(self, other):
        other = other if isinstance(other, RatFun) else RatFun(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((tuple(self.num), tuple(self.den)))

    def theta(self):
        """t d/dt of this function."""
        n, d = self.num, self.den
        deriv = psub(pmul(pderiv(n), d), pmul(n, pderiv(d)))
        return RatFun(pmul([Fraction(0), Fraction(1)], deriv), pmul(d, d))

    def __repr__(self):
        return "RatFun(%r, %r)" % (self.num, self.den)

    def render(self, var="t"):
        return render_poly_fraction(self.num, self.den, var)


def render_poly(p, var="t"):
    if not p:
        return "0"
    terms = []
    for i, c in enumerate(p):
        if c == 0:
            continue
        if i == 0:
            terms.append(str(c))
            continue
        mon = var if i == 1 else "%s^%d" % (var, i)
        if c == 1:
            terms.append(mon)
        elif c == -1:
            terms.append("-" + mon)
        else:
            terms.append("%s*%s" % (c, mon))
    out = terms[0]
    for term in terms[1:]:
        out += " - " + term[1:] if term.startswith("-") else " + " + term
    return out


def render_poly_fraction(num, den, var="t"):
    if den == [Fraction(1)] or not num:
        return render_poly(num, var)
    return "(%s)/(%s)" % (render_poly(num, var), render_poly(den, var))
