"""Differential Galois data and cohomology dimensions from weight data.

Everything here is weight combinatorics: the irregularity comes from
counting weights killed by the Coxeter primitive projector, the inertia
invariants from the principal a-grading, and the fixed space of the
differential Galois group from branching through the folded subgroup
when the group has a nontrivial diagram automorphism fixing the
connection.
"""

from .errors import ConsistencyError, ValidationError
from .linalg import mat_vec
from .rootsys import (build_root_system, coxeter_element,
                      coxeter_primitive_projector)
from .weights import weight_system


def folding_target(type_label, rank):
    """The type of the differential Galois group, or None when it is
    the full dual group."""
    if type_label == "A" and rank >= 3 and rank % 2 == 1:
        return ("C", (rank + 1) // 2)
    if type_label == "B" and rank == 3:
        return ("G", 2)
    if type_label == "D":
        return ("G", 2) if rank == 4 else ("B", rank - 1)
    if type_label == "E" and rank == 6:
        return ("F", 4)
    return None


def folding_matrix(type_label, rank):
    """Rows of the weight-lattice projection onto the folded subsystem.

    Each row gives one fundamental-weight coordinate of the target as
    an integer combination of source coordinates (orbit sums of the
    diagram automorphism).
    """
    target = folding_target(type_label, rank)
    if target is None:
        raise ValidationError("type %s%d does not fold" % (type_label, rank))

    def row(*cols):
        out = [0] * rank
        for c in cols:
            out[c - 1] += 1
        return out

    if type_label == "A":
        n = (rank + 1) // 2
        rows = [row(j, rank + 1 - j) for j in range(1, n)] + [row(n)]
    elif type_label == "B":
        rows = [row(1, 3), row(2)]
    elif type_label == "D" and rank == 4:
        rows = [row(1, 3, 4), row(2)]
    elif type_label == "D":
        rows = [row(j) for j in range(1, rank - 1)] + [row(rank - 1, rank)]
    else:
        rows = [row(2), row(4), row(3, 5), row(1, 6)]
    rs = build_root_system(type_label, rank)
    rs_t = build_root_system(*target)
    for i in range(rank):
        omega = rs.fundamental_weight(i)
        image = tuple(r[i] for r in rows)
        if rs_t.a_value(image) != rs.a_value(omega):
            raise ConsistencyError("folding %s -> %s does not preserve the "
                                   "principal grading at node %d"
                                   % (rs.label(), rs_t.label(), i + 1))
    return rows


class GaloisProfile:
    def __init__(self, source, target):
        self.source = tuple(source)
        self.target = tuple(target)
        self.folded = self.source != self.target
        rs_s = build_root_system(*self.source)
        rs_t = build_root_system(*self.target)
        if rs_s.coxeter_number != rs_t.coxeter_number:
            raise ConsistencyError("folding target %s has a different "
                                   "Coxeter number than %s"
                                   % (rs_t.label(), rs_s.label()))
        self.h = rs_t.coxeter_number
        if all(c % 2 == 0 for c in rs_s.a_coeffs):
            self.epsilon_rule = "always +1"
        else:
            self.epsilon_rule = "sign (-1)^<lambda, 2 rho-check>"

    def label(self):
        return "%s%d" % self.target

    def __repr__(self):
        return "GaloisProfile(%s%d -> %s)" % (self.source[0], self.source[1],
                                              self.label())


def galois_group(type_label, rank):
    source = (type_label.upper(), rank)
    build_root_system(*source)
    target = folding_target(*source)
    return GaloisProfile(source, target if target else source)


def fold_branching(ws, target_rs, rows):
    """Weight multiset of ws pushed along the folding projection."""
    out = {}
    for mu, mult in ws.table.items():
        image = tuple(sum(r[i] * mu[i] for i in range(len(mu))) for r in rows)
        if target_rs.a_value(image) != ws.rs.a_value(mu):
            raise ConsistencyError("projected weight %s changed a-value"
                                   % (mu,))
        out[image] = out.get(image, 0) + mult
    return out


def peel_components(rs, table):
    """Decompose a weight multiset into irreducibles of rs, greedily.

    Repeatedly takes a weight of maximal a-value, which must be the
    highest weight of some summand, and subtracts that irreducible.
    Returns [(highest weight, multiplicity)] in peel order.
    """
    rest = {mu: mult for mu, mult in table.items() if mult}
    comps = []
    while rest:
        mu = max(rest, key=lambda m: (rs.a_value(m), m))
        if any(x < 0 for x in mu):
            raise ConsistencyError("peeling reached the non-dominant weight "
                                   "%s; the projection map is wrong" % (mu,))
        count = rest[mu]
        sub = weight_system(rs, mu)
        for nu, m2 in sub.table.items():
            new = rest.get(nu, 0) - count * m2
            if new < 0:
                raise ConsistencyError("branching multiplicity of %s went "
                                       "negative while peeling %s"
                                       % (nu,  mu))
            if new:
                rest[nu] = new
            else:
                rest.pop(nu, None)
        comps.append((mu, count))
    return comps


def _a_histogram(rs, table):
    hist = {}
    for mu, mult in table.items():
        a = rs.a_value(mu)
        hist[a] = hist.get(a, 0) + mult
    return hist


def _sl2_mults(hist, dim):
    """Multiplicities m(k) of Sym^k in a module with a-histogram hist."""
    for a, c in hist.items():
        if hist.get(-a, 0) != c:
            raise ConsistencyError("a-histogram is not symmetric at %d" % a)
    mults = {}
    top = max(hist) if hist else 0
    for k in range(0, top + 1):
        m = hist.get(k, 0) - hist.get(k + 2, 0)
        if m < 0:
            raise ConsistencyError("negative Sym^%d multiplicity" % k)
        if m:
            mults[k] = m
    if len({k % 2 for k in mults}) > 1:
        raise ConsistencyError("mixed parities in the principal SL2 "
                               "decomposition; the central involution does "
                               "not act by a scalar")
    if sum(m * (k + 1) for k, m in mults.items()) != dim:
        raise ConsistencyError("SL2 multiplicities do not add up to dim %d"
                               % dim)
    return mults


def _invariant_bundle(rs, table):
    """S-invariants, irregularity and inertia data of a weight multiset."""
    dim = sum(table.values())
    h = rs.coxeter_number
    w = coxeter_element(rs)
    proj = coxeter_primitive_projector(w, h)
    v_s = 0
    for mu, mult in table.items():
        if all(x == 0 for x in mat_vec(proj, list(mu))):
            v_s += mult
    if (dim - v_s) % h:
        raise ConsistencyError("(dim - dim V^S)/h = (%d - %d)/%d is not an "
                               "integer" % (dim, v_s, h))
    irr = (dim - v_s) // h
    hist = _a_histogram(rs, table)
    mults = _sl2_mults(hist, dim)
    i0 = sum(mults.values())
    n_fixed = sum(mult for mu, mult in table.items()
                  if rs.a_value(mu) % (2 * h) == 0)
    return {"dim": dim, "V_S": v_s, "irr": irr, "hist": hist,
            "sl2_mults": mults, "I0": i0, "n_fixed": n_fixed}


def coxeter_torus_invariants(ws, w):
    """dim V^S: total multiplicity of weights killed by the primitive
    projector of the Coxeter element w."""
    proj = coxeter_primitive_projector(w, ws.rs.coxeter_number)
    total = 0
    for mu, mult in ws.table.items():
        if all(x == 0 for x in mat_vec(proj, list(mu))):
            total += mult
    return total


def irregularity(ws, w):
    """Irr_infinity(V) = (dim V - dim V^S)/h, an integer here."""
    v_s = coxeter_torus_invariants(ws, w)
    h = ws.rs.coxeter_number
    if (ws.dim - v_s) % h:
        raise ConsistencyError("irregularity (%d - %d)/%d is not an integer"
                               % (ws.dim, v_s, h))
    return (ws.dim - v_s) // h


def inertia_invariants(ws):
    """dims of V^{I_0}, V^{<n>} and V^{I_infinity} from the a-grading."""
    rs = ws.rs
    bundle = _invariant_bundle(rs, ws.table)
    epsilon = 1 if rs.a_value(ws.highest) % 2 == 0 else -1
    if epsilon == 1:
        i_inf = bundle["n_fixed"] - bundle["irr"]
        if i_inf < 0:
            raise ConsistencyError("m(chi_0) = %d - %d is negative"
                                   % (bundle["n_fixed"], bundle["irr"]))
    else:
        i_inf = 0
    return {"I0": bundle["I0"], "n": bundle["n_fixed"], "Iinf": i_inf}


class CohomologyReport:
    def __init__(self, group, rank, highest, dim, epsilon, irr, inv_i0,
                 inv_n, inv_iinf, inv_galois, galois_label, trace):
        self.group = group
        self.rank = rank
        self.highest = tuple(highest)
        self.dim = dim
        self.epsilon = epsilon
        self.irr = irr
        self.inv_I0 = inv_i0
        self.inv_n = inv_n
        self.inv_Iinf = inv_iinf
        self.inv_galois = inv_galois
        self.galois_label = galois_label
        self.trace = list(trace)
        self.h0 = inv_galois
        self.h2 = inv_galois
        self.h1 = irr - inv_i0 - inv_iinf + 2 * inv_galois
        if self.h1 < 0:
            raise ConsistencyError("negative h1 = %d - %d - %d + 2*%d for "
                                   "%s%d weight %s"
                                   % (irr, inv_i0, inv_iinf, inv_galois,
                                      group, rank, list(highest)))

    def to_json_dict(self):
        return {
            "group": self.group,
            "rank": self.rank,
            "lambda": list(self.highest),
            "dim": self.dim,
            "epsilon": self.epsilon,
            "irr": self.irr,
            "inv_I0": self.inv_I0,
            "inv_n": self.inv_n,
            "inv_Iinf": self.inv_Iinf,
            "inv_galois": self.inv_galois,
            "h0": self.h0,
            "h1": self.h1,
            "h2": self.h2,
            "galois_group": self.galois_label,
        }


def dim_invariants_under_galois(ws, profile):
    """Multiplicity of the trivial representation of the differential
    Galois group in V."""
    if not profile.folded:
        return 1 if not any(ws.highest) else 0
    rows = folding_matrix(*profile.source)
    rs_t = build_root_system(*profile.target)
    table = fold_branching(ws, rs_t, rows)
    comps = peel_components(rs_t, table)
    return sum(count for mu, count in comps if not any(mu))


def cohomology_dims(type_label, rank, highest):
    """Cohomology of the middle extension for the irreducible V(highest).

    All local invariants are computed inside the differential Galois
    group; for folded types that means projecting the weights first and
    working in the smaller system.
    """
    type_label = type_label.upper()
    rs = build_root_system(type_label, rank)
    highest = tuple(int(x) for x in highest)
    ws = weight_system(rs, highest)
    profile = galois_group(type_label, rank)
    epsilon = 1 if rs.a_value(highest) % 2 == 0 else -1
    trace = []
    if profile.folded:
        rows = folding_matrix(type_label, rank)
        rs_t = build_root_system(*profile.target)
        table = fold_branching(ws, rs_t, rows)
        comps = peel_components(rs_t, table)
        inv_g = sum(count for mu, count in comps if not any(mu))
        pieces = " + ".join("%d" % (weight_system(rs_t, mu).dim * count)
                            for mu, count in comps)
        trace.append("folded %s -> %s; V restricts as %s"
                     % (rs.label(), rs_t.label(), pieces))
    else:
        rs_t = rs
        table = ws.table
        inv_g = 1 if not any(highest) else 0
        trace.append("galois group is all of %s" % rs.label())
    bundle = _invariant_bundle(rs_t, table)
    trace.append("irregularity (%d - %d)/%d = %d via the Coxeter projector"
                 % (bundle["dim"], bundle["V_S"], rs_t.coxeter_number,
                    bundle["irr"]))
    if epsilon == 1:
        i_inf = bundle["n_fixed"] - bundle["irr"]
        if i_inf < 0:
            raise ConsistencyError("m(chi_0) = %d - %d is negative"
                                   % (bundle["n_fixed"], bundle["irr"]))
        trace.append("epsilon = +1: I_inf = n-fixed(%d) - irr(%d) = %d"
                     % (bundle["n_fixed"], bundle["irr"], i_inf))
    else:
        i_inf = 0
        trace.append("epsilon = -1 forbids the trivial character: I_inf = 0")
    return CohomologyReport(type_label, rank, highest, ws.dim, epsilon,
                            bundle["irr"], bundle["I0"], bundle["n_fixed"],
                            i_inf, inv_g, profile.label(), trace)


def epsilon_plus_crosscheck(ws):
    """The even-case identity d(V) = 2(#{a > 0, a-fixed} - m(chi_0)).

    Checked against the main formula; also checks that d(V) is even.
    Only meaningful when the central involution acts trivially on V.
    """
    rs = ws.rs
    rep = cohomology_dims(rs.type_label, rs.rank, ws.highest)
    if rep.epsilon != 1:
        raise ValidationError("cross-check needs epsilon = +1 on V; "
                              "%s has epsilon = -1" % ws.label())
    h = rs.coxeter_number
    pos = sum(mult for mu, mult in ws.table.items()
              if rs.a_value(mu) > 0 and rs.a_value(mu) % (2 * h) == 0)
    alt = 2 * (pos - rep.inv_Iinf)
    d_main = rep.h1 - 2 * rep.inv_galois
    if d_main % 2:
        raise ConsistencyError("d(V) = %d is odd with epsilon = +1" % d_main)
    if alt != d_main:
        raise ConsistencyError("even-case formula gives %d but the main "
                               "formula gives %d for %s" % (alt, d_main,
                                                            ws.label()))
    return True


def epsilon_minus_crosscheck(ws):
    """The odd-case identity, valid when the central involution lies in
    the Coxeter torus (true for SL2): d(V) = #{a = 2k+1 : k = 0 mod h,
    k nonzero}."""
    rs = ws.rs
    rep = cohomology_dims(rs.type_label, rs.rank, ws.highest)
    if rep.epsilon != -1:
        raise ValidationError("cross-check needs epsilon = -1 on V")
    h = rs.coxeter_number
    count = 0
    for mu, mult in ws.table.items():
        a = rs.a_value(mu)
        if a % 2 == 0:
            continue
        k = (a - 1) // 2
        if k != 0 and k % h == 0:
            count += mult
    d_main = rep.h1 - 2 * rep.inv_galois
    if count != d_main:
        raise ConsistencyError("odd-case formula gives %d but the main "
                               "formula gives %d for %s" % (count, d_main,
                                                            ws.label()))
    return True


class SubregularRow:
    def __init__(self, type_label, rank, m, d, orbits, f_label, galois):
        self.type_label = type_label
        self.rank = rank
        self.m = m
        self.d = d
        self.orbits = orbits
        self.f_label = f_label
        self.galois = galois

    def to_json_dict(self):
        return {"group": "%s%d" % (self.type_label, self.rank), "m": self.m,
                "d": self.d, "orbits": self.orbits, "F": self.f_label,
                "galois_group": self.galois}


_SUBREGULAR_STATIC = [
    ("G", 2, "F(3)", "SL3"),
    ("F", 4, "F(8)", "Spin9"),
    ("E", 6, "F(9)", "E6"),
    ("E", 7, "F(14)*F(2)", "E7"),
    ("E", 8, "F(24)", "E8"),
]


def subregular_table():
    """Numerical invariants of the subregular analog, one row per
    exceptional type: m, d = h - m, and the orbit count r + 2."""
    rows = []
    for type_label, rank, f_label, galois in _SUBREGULAR_STATIC:
        rs = build_root_system(type_label, rank)
        coeffs = rs.simple_coords(rs.theta)
        m = max(coeffs)
        assert m.denominator == 1
        m = int(m)
        d = rs.coxeter_number - m
        orbits, rem = divmod(rank * rs.coxeter_number, d)
        if rem or orbits != rank + 2:
            raise ConsistencyError("subregular orbit count for %s is "
                                   "%d*%d/%d, expected %d"
                                   % (rs.label(), rank, rs.coxeter_number,
                                      d, rank + 2))
        rows.append(SubregularRow(type_label, rank, m, d, orbits, f_label,
                                  galois))
    return rows
