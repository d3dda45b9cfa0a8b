"""Galois-side invariants: foldings, irregularity, cohomology dimensions."""

import itertools
import math

import pytest

from rigidconn.connection import build_connection
from rigidconn.errors import ConsistencyError, ValidationError
from rigidconn.formal import h1_middle_via_solver
from rigidconn.galois import (cohomology_dims, coxeter_torus_invariants,
                              dim_invariants_under_galois,
                              epsilon_minus_crosscheck,
                              epsilon_plus_crosscheck, fold_branching,
                              folding_matrix, folding_target, galois_group,
                              inertia_invariants, irregularity,
                              peel_components, subregular_table)
from rigidconn.linalg import mat_vec
from rigidconn.rootsys import (build_root_system, coxeter_element,
                               coxeter_primitive_projector)
from rigidconn.weights import epsilon_on, weight_system


def adjoint_ws(type_label, rank):
    rs = build_root_system(type_label, rank)
    return weight_system(rs, rs.theta)


# ---------------------------------------------------------------- foldings

FOLDING_TARGETS = {
    ("A", 2): None,
    ("A", 3): ("C", 2),
    ("A", 4): None,
    ("A", 5): ("C", 3),
    ("A", 7): ("C", 4),
    ("B", 2): None,
    ("B", 3): ("G", 2),
    ("B", 4): None,
    ("C", 4): None,
    ("D", 4): ("G", 2),
    ("D", 5): ("B", 4),
    ("D", 8): ("B", 7),
    ("E", 6): ("F", 4),
    ("E", 7): None,
    ("E", 8): None,
    ("F", 4): None,
    ("G", 2): None,
}


def test_folding_targets():
    for source, target in FOLDING_TARGETS.items():
        assert folding_target(*source) == target


def test_galois_profiles():
    for source, target in FOLDING_TARGETS.items():
        prof = galois_group(*source)
        assert prof.source == source
        assert prof.folded == (target is not None)
        expect = target if target else source
        assert prof.target == expect
        assert prof.label() == "%s%d" % expect
        assert prof.h == build_root_system(*source).coxeter_number


def test_epsilon_rule_matches_fundamental_weights():
    # "always +1" should mean exactly that: every fundamental weight is
    # even for the principal grading.  Otherwise some node is odd.
    for type_label, rank in [("A", 1), ("A", 2), ("A", 3), ("A", 4),
                             ("B", 2), ("B", 3), ("C", 2), ("C", 3),
                             ("D", 4), ("G", 2)]:
        rs = build_root_system(type_label, rank)
        prof = galois_group(type_label, rank)
        signs = [epsilon_on(weight_system(rs, rs.fundamental_weight(i)))
                 for i in range(rank)]
        if prof.epsilon_rule == "always +1":
            assert all(s == 1 for s in signs)
        else:
            assert -1 in signs


def test_epsilon_rule_by_type():
    plus = [("A", 2), ("B", 3), ("B", 4), ("D", 4), ("D", 5), ("E", 6),
            ("E", 8), ("F", 4), ("G", 2)]
    sign = [("A", 1), ("A", 3), ("B", 2), ("C", 3), ("E", 7)]
    for type_label, rank in plus:
        assert galois_group(type_label, rank).epsilon_rule == "always +1"
    for type_label, rank in sign:
        rule = galois_group(type_label, rank).epsilon_rule
        assert rule.startswith("sign")


def test_folding_matrix_shape():
    for source, target in FOLDING_TARGETS.items():
        if target is None:
            with pytest.raises(ValidationError):
                folding_matrix(*source)
            continue
        rows = folding_matrix(*source)
        assert len(rows) == target[1]
        assert all(len(r) == source[1] for r in rows)


# Each case: source type, highest weight provider, expected component
# dimensions in peel order (multiplicities expanded).
def _theta(type_label, rank):
    return build_root_system(type_label, rank).theta


BRANCHINGS = [
    (("A", 3), _theta("A", 3), [10, 5]),
    (("A", 5), _theta("A", 5), [21, 14]),
    (("B", 3), (1, 0, 0), [7]),
    (("B", 3), (0, 0, 1), [7, 1]),
    (("B", 3), _theta("B", 3), [14, 7]),
    (("D", 4), _theta("D", 4), [14, 7, 7]),
    (("D", 5), _theta("D", 5), [36, 9]),
    (("E", 6), _theta("E", 6), [52, 26]),
]


@pytest.mark.parametrize("source,highest,expected", BRANCHINGS,
                         ids=lambda v: str(v))
def test_fold_branching_components(source, highest, expected):
    rs = build_root_system(*source)
    target = folding_target(*source)
    rs_t = build_root_system(*target)
    ws = weight_system(rs, highest)
    table = fold_branching(ws, rs_t, folding_matrix(*source))
    assert sum(table.values()) == ws.dim
    dims = []
    for mu, count in peel_components(rs_t, table):
        dims.extend([weight_system(rs_t, mu).dim] * count)
    assert dims == expected


def test_invariants_under_galois():
    # multiplicity of the trivial summand after restriction
    cases = [
        (("B", 3), (0, 0, 1), 1),      # spin restricts as 7 + 1
        (("A", 3), (1, 0, 1), 0),
        (("E", 6), (1, 0, 0, 0, 0, 0), 1),    # 27 = 26 + 1
        (("A", 2), (1, 1), 0),         # no folding, nontrivial weight
        (("A", 2), (0, 0), 1),         # no folding, trivial weight
    ]
    for source, highest, expected in cases:
        rs = build_root_system(*source)
        ws = weight_system(rs, highest)
        prof = galois_group(*source)
        assert dim_invariants_under_galois(ws, prof) == expected


def test_peel_rejects_impossible_tables():
    rs = build_root_system("G", 2)
    # a bare highest weight with none of its orbit present
    with pytest.raises(ConsistencyError):
        peel_components(rs, {(1, 0): 1})
    # a table whose maximal weight is not dominant
    with pytest.raises(ConsistencyError):
        peel_components(rs, {(-1, 0): 1})


# ------------------------------------------- irregularity and inertia data

ADJOINT_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3),
                 ("C", 3), ("D", 4), ("F", 4), ("G", 2)]


@pytest.mark.parametrize("type_label,rank", ADJOINT_TYPES)
def test_adjoint_coxeter_invariants(type_label, rank):
    rs = build_root_system(type_label, rank)
    ws = weight_system(rs, rs.theta)
    w = coxeter_element(rs)
    assert coxeter_torus_invariants(ws, w) == rank
    assert irregularity(ws, w) == rank
    assert inertia_invariants(ws) == {"I0": rank, "n": rank, "Iinf": 0}


def test_irregularity_small_cases():
    for n in range(2, 7):
        rs = build_root_system("A", n - 1)
        ws = weight_system(rs, rs.fundamental_weight(0))
        assert irregularity(ws, coxeter_element(rs)) == 1
    rs = build_root_system("G", 2)
    ws = weight_system(rs, (1, 0))
    w = coxeter_element(rs)
    assert coxeter_torus_invariants(ws, w) == 1
    assert irregularity(ws, w) == 1
    rs = build_root_system("F", 4)
    ws = weight_system(rs, (0, 0, 0, 1))
    w = coxeter_element(rs)
    assert coxeter_torus_invariants(ws, w) == 2
    assert irregularity(ws, w) == 2
    for m in (2, 3, 4):
        rs = build_root_system("B", m)
        ws = weight_system(rs, rs.fundamental_weight(0))
        assert irregularity(ws, coxeter_element(rs)) == 1


def test_trivial_weight_has_no_irregularity():
    rs = build_root_system("A", 2)
    ws = weight_system(rs, (0, 0))
    w = coxeter_element(rs)
    assert coxeter_torus_invariants(ws, w) == 1
    assert irregularity(ws, w) == 0
    assert inertia_invariants(ws) == {"I0": 1, "n": 1, "Iinf": 1}


def test_inertia_invariants_examples():
    rs = build_root_system("A", 1)
    assert inertia_invariants(weight_system(rs, (5,))) == \
        {"I0": 1, "n": 0, "Iinf": 0}
    rs = build_root_system("F", 4)
    assert inertia_invariants(weight_system(rs, (0, 0, 0, 1))) == \
        {"I0": 2, "n": 2, "Iinf": 0}


# ------------------------------------------------- cohomology dimensions

@pytest.mark.parametrize("type_label,rank", ADJOINT_TYPES + [("E", 6)])
def test_adjoint_cohomology_vanishes(type_label, rank):
    rs = build_root_system(type_label, rank)
    rep = cohomology_dims(type_label, rank, rs.theta)
    assert rep.epsilon == 1
    assert rep.irr == rank
    assert rep.inv_I0 == rank
    assert rep.inv_Iinf == 0
    assert rep.inv_galois == 0
    assert (rep.h0, rep.h1, rep.h2) == (0, 0, 0)


def sym_h1(n):
    if n % 2:
        return (n - 1) // 2
    if n % 4 == 2:
        return (n - 2) // 2
    return (n - 4) // 2


def test_sym_family_closed_form():
    for n in range(1, 13):
        rep = cohomology_dims("A", 1, (n,))
        assert rep.epsilon == (1 if n % 2 == 0 else -1)
        assert rep.inv_galois == 0
        assert rep.h1 == sym_h1(n)


def test_e6_adjoint_restriction():
    rep = cohomology_dims("E", 6, _theta("E", 6))
    assert rep.galois_label == "F4"
    assert rep.trace[0] == "folded E6 -> F4; V restricts as 52 + 26"
    assert (rep.irr, rep.inv_I0, rep.inv_Iinf, rep.h1) == (6, 6, 0, 0)


def test_f4_26_dim_report():
    rep = cohomology_dims("F", 4, (0, 0, 0, 1))
    assert rep.dim == 26
    assert (rep.irr, rep.inv_I0, rep.inv_Iinf) == (2, 2, 0)
    assert rep.inv_n == 2
    assert rep.h1 == 0
    from rigidconn.weights import principal_sl2_decomposition
    rs = build_root_system("F", 4)
    dec = principal_sl2_decomposition(weight_system(rs, (0, 0, 0, 1)))
    assert dec.pieces() == [(8, 1), (16, 1)]


def test_e6_27_dim_report():
    rep = cohomology_dims("E", 6, (1, 0, 0, 0, 0, 0))
    assert rep.dim == 27
    assert rep.trace[0] == "folded E6 -> F4; V restricts as 26 + 1"
    assert rep.irr == 2
    assert rep.inv_I0 == 3
    assert rep.inv_n == 3
    assert rep.inv_Iinf == 1
    assert rep.inv_galois == 1
    assert (rep.h0, rep.h1, rep.h2) == (1, 0, 1)


def test_b3_spin_report():
    rep = cohomology_dims("B", 3, (0, 0, 1))
    assert rep.galois_label == "G2"
    assert (rep.irr, rep.inv_I0, rep.inv_Iinf, rep.inv_galois) == (1, 2, 1, 1)
    assert (rep.h0, rep.h1, rep.h2) == (1, 0, 1)


def test_spin_threshold():
    for n in range(2, 8):
        highest = tuple([0] * (n - 1) + [1])
        rep = cohomology_dims("B", n, highest)
        assert rep.dim == 2 ** n
        assert rep.h1 == 0
    rep8 = cohomology_dims("B", 8, (0, 0, 0, 0, 0, 0, 0, 1))
    assert rep8.epsilon == 1
    assert rep8.h1 == 2
    rep9 = cohomology_dims("B", 9, (0, 0, 0, 0, 0, 0, 0, 0, 1))
    assert rep9.epsilon == -1
    assert rep9.h1 == 5


def test_trivial_rep_cohomology():
    rep = cohomology_dims("A", 2, (0, 0))
    assert (rep.h0, rep.h1, rep.h2) == (1, 0, 1)
    assert rep.irr == 0
    assert rep.inv_galois == 1


def test_report_json_shape():
    rep = cohomology_dims("G", 2, (0, 1))
    d = rep.to_json_dict()
    assert d == {"group": "G", "rank": 2, "lambda": [0, 1], "dim": 14,
                 "epsilon": 1, "irr": 2, "inv_I0": 2, "inv_n": 2,
                 "inv_Iinf": 0, "inv_galois": 0, "h0": 0, "h1": 0, "h2": 0,
                 "galois_group": "G2"}


def test_small_weights_are_rigid():
    # For an unfolded group, a nontrivial even weight with a(lambda) at
    # most 2h - 2 gives no invariants at infinity and h1 = 0.
    for type_label, rank in [("A", 1), ("A", 2), ("A", 4), ("B", 2),
                             ("B", 4), ("C", 3), ("F", 4), ("G", 2)]:
        rs = build_root_system(type_label, rank)
        bound = 2 * rs.coxeter_number - 2
        top = [bound // int(c) for c in rs.a_coeffs]
        for coords in itertools.product(*[range(t + 1) for t in top]):
            a = rs.a_value(coords)
            if not any(coords) or a % 2 or a > bound:
                continue
            rep = cohomology_dims(type_label, rank, coords)
            assert rep.inv_Iinf == 0, (type_label, rank, coords)
            assert rep.inv_galois == 0
            assert rep.h1 == 0, (type_label, rank, coords)


def test_h1_is_even_for_even_weights():
    cases = [("A", 1, (8,)), ("A", 1, (12,)), ("A", 2, (1, 1)),
             ("B", 8, (0, 0, 0, 0, 0, 0, 0, 1)), ("F", 4, (0, 0, 0, 1)),
             ("G", 2, (2, 0))]
    for type_label, rank, highest in cases:
        rep = cohomology_dims(type_label, rank, highest)
        assert rep.epsilon == 1
        assert (rep.h1 - 2 * rep.inv_galois) % 2 == 0


# ------------------------------------------------ orbit-size criterion

def integer_kernel(mat):
    """Z-basis for the integer kernel, by unimodular column operations."""
    rows = len(mat)
    cols = len(mat[0]) if rows else 0
    m = [[int(x) for x in row] for row in mat]
    track = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def combine(j, k, q):
        for i in range(rows):
            m[i][j] -= q * m[i][k]
        for i in range(cols):
            track[i][j] -= q * track[i][k]

    def swap(j, k):
        for i in range(rows):
            m[i][j], m[i][k] = m[i][k], m[i][j]
        for i in range(cols):
            track[i][j], track[i][k] = track[i][k], track[i][j]

    pivot = 0
    for row in range(rows):
        while pivot < cols:
            live = [j for j in range(pivot, cols) if m[row][j]]
            if not live:
                break
            swap(pivot, min(live, key=lambda j: abs(m[row][j])))
            finished = True
            for j in range(pivot + 1, cols):
                if m[row][j]:
                    combine(j, pivot, m[row][j] // m[row][pivot])
                    if m[row][j]:
                        finished = False
            if finished:
                pivot += 1
                break
    return [[track[i][j] for i in range(cols)] for j in range(pivot, cols)]


def in_lattice(gens, vec):
    cols = [list(g) for g in gens] + [list(vec)]
    mat = [[col[i] for col in cols] for i in range(len(vec))]
    g = 0
    for basis_vec in integer_kernel(mat):
        g = math.gcd(g, basis_vec[-1])
    return g == 1


def small_orbit_lattice(rs):
    """Generators of the sublattice spanned by weights whose Coxeter
    orbit has size less than h."""
    h = rs.coxeter_number
    w = [[int(x) for x in row] for row in coxeter_element(rs)]
    gens = []
    for d in range(1, h):
        if h % d:
            continue
        power = [[int(i == j) for j in range(rs.rank)]
                 for i in range(rs.rank)]
        for _ in range(d):
            power = [[sum(power[i][k] * w[k][j] for k in range(rs.rank))
                      for j in range(rs.rank)] for i in range(rs.rank)]
        delta = [[power[i][j] - (i == j) for j in range(rs.rank)]
                 for i in range(rs.rank)]
        gens.extend(integer_kernel(delta))
    return gens


def test_integer_kernel_basics():
    assert integer_kernel([[1, 0], [0, 1]]) == []
    ker = integer_kernel([[2, -4]])
    assert len(ker) == 1
    v = ker[0]
    assert 2 * v[0] - 4 * v[1] == 0
    assert math.gcd(v[0], v[1]) == 1
    assert in_lattice([[2, 0], [0, 3]], [4, 3])
    assert not in_lattice([[2, 0], [0, 3]], [1, 0])
    assert in_lattice([], [0, 0])
    assert not in_lattice([], [1, 0])


@pytest.mark.parametrize("type_label,rank",
                         [("A", 1), ("A", 2), ("A", 3), ("A", 4),
                          ("B", 2), ("B", 3), ("B", 4), ("C", 2),
                          ("C", 3), ("C", 4), ("D", 4), ("F", 4),
                          ("G", 2)])
def test_projector_kernel_is_small_orbit_lattice(type_label, rank):
    # A weight vanishes under the primitive projector exactly when it
    # lies in the sublattice generated by weights with short Coxeter
    # orbits.  Checked on a box around the origin.
    rs = build_root_system(type_label, rank)
    w = coxeter_element(rs)
    proj = coxeter_primitive_projector(w, rs.coxeter_number)
    gens = small_orbit_lattice(rs)
    spread = 3 if rank <= 3 else 2
    for coords in itertools.product(range(-spread, spread + 1), repeat=rank):
        killed = all(x == 0 for x in mat_vec(proj, list(coords)))
        assert killed == in_lattice(gens, coords), coords


# ------------------------------------------------ solver cross-checks

SOLVER_CASES = [
    (("sym", 1), ("A", 1, (1,)), 40),
    (("sym", 2), ("A", 1, (2,)), 40),
    (("sym", 3), ("A", 1, (3,)), 40),
    (("sym", 4), ("A", 1, (4,)), 40),
    (("sym", 5), ("A", 1, (5,)), 40),
    (("sym", 6), ("A", 1, (6,)), 40),
    (("sl", 3), ("A", 2, (1, 0)), 30),
    (("sl", 4), ("A", 3, (1, 0, 0)), 30),
    (("so", 3), ("A", 1, (2,)), 30),
    (("so", 5), ("B", 2, (1, 0)), 30),
    (("sp", 4), ("C", 2, (1, 0)), 30),
    (("g2_dim7",), ("G", 2, (1, 0)), 36),
    (("adjoint", "A", 2), ("A", 2, (1, 1)), 30),
]


@pytest.mark.parametrize("case,rep_key,trunc", SOLVER_CASES,
                         ids=lambda v: str(v))
def test_solver_agrees_with_formula(case, rep_key, trunc):
    conn = build_connection(*case)
    solved = h1_middle_via_solver(conn, conn.dual(), trunc)
    assert solved == cohomology_dims(*rep_key).h1


# ------------------------------------------------ epsilon cross-checks

def test_epsilon_plus_crosscheck_cases():
    assert epsilon_plus_crosscheck(adjoint_ws("G", 2))
    assert epsilon_plus_crosscheck(adjoint_ws("E", 6))
    rs = build_root_system("A", 1)
    assert epsilon_plus_crosscheck(weight_system(rs, (6,)))
    assert epsilon_plus_crosscheck(weight_system(rs, (8,)))
    rs = build_root_system("F", 4)
    assert epsilon_plus_crosscheck(weight_system(rs, (0, 0, 0, 1)))
    rs = build_root_system("B", 8)
    assert epsilon_plus_crosscheck(
        weight_system(rs, (0, 0, 0, 0, 0, 0, 0, 1)))


def test_epsilon_plus_needs_even_weight():
    rs = build_root_system("A", 1)
    with pytest.raises(ValidationError):
        epsilon_plus_crosscheck(weight_system(rs, (1,)))


def test_epsilon_minus_crosscheck_cases():
    rs = build_root_system("A", 1)
    for n in (1, 3, 5, 7, 9):
        assert epsilon_minus_crosscheck(weight_system(rs, (n,)))
    with pytest.raises(ValidationError):
        epsilon_minus_crosscheck(weight_system(rs, (2,)))


# ------------------------------------------------------- subregular rows

def test_subregular_table():
    rows = subregular_table()
    got = [(r.type_label, r.rank, r.m, r.d, r.orbits, r.f_label, r.galois)
           for r in rows]
    assert got == [
        ("G", 2, 3, 3, 4, "F(3)", "SL3"),
        ("F", 4, 4, 8, 6, "F(8)", "Spin9"),
        ("E", 6, 3, 9, 8, "F(9)", "E6"),
        ("E", 7, 4, 14, 9, "F(14)*F(2)", "E7"),
        ("E", 8, 6, 24, 10, "F(24)", "E8"),
    ]
    assert rows[0].to_json_dict() == {"group": "G2", "m": 3, "d": 3,
                                      "orbits": 4, "F": "F(3)",
                                      "galois_group": "SL3"}
    for r in rows:
        assert r.orbits == r.rank + 2
