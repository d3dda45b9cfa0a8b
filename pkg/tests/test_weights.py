"""Weight multiplicities, the principal SL2 decomposition, and the cache."""

import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rigidconn.errors import ConsistencyError, ValidationError
from rigidconn.rootsys import build_root_system
from rigidconn.weights import (epsilon_on, load_weight_system,
                               principal_sl2_decomposition,
                               save_weight_system, weight_system, weyl_dim)

KNOWN_DIMS = [
    ("A", 1, (1,), 2), ("A", 1, (6,), 7),
    ("A", 2, (1, 0), 3), ("A", 2, (1, 1), 8), ("A", 2, (3, 0), 10),
    ("A", 3, (0, 1, 0), 6), ("A", 4, (0, 0, 1, 0), 10),
    ("B", 2, (1, 0), 5), ("B", 3, (0, 0, 1), 8), ("B", 4, (0, 0, 0, 1), 16),
    ("C", 3, (1, 0, 0), 6), ("C", 3, (0, 0, 1), 14),
    ("D", 4, (1, 0, 0, 0), 8), ("D", 5, (0, 1, 0, 0, 0), 45),
    ("G", 2, (1, 0), 7), ("G", 2, (0, 1), 14),
    ("F", 4, (0, 0, 0, 1), 26), ("F", 4, (1, 0, 0, 0), 52),
    ("E", 6, (1, 0, 0, 0, 0, 0), 27), ("E", 7, (0, 0, 0, 0, 0, 0, 1), 56),
]


@pytest.mark.parametrize("type_label,rank,lam,dim", KNOWN_DIMS)
def test_known_dimensions(type_label, rank, lam, dim):
    rs = build_root_system(type_label, rank)
    ws = weight_system(rs, lam)
    assert ws.dim == dim
    assert weyl_dim(rs, lam) == dim
    assert sum(ws.table.values()) == dim


def test_adjoint_zero_weight_multiplicity():
    for type_label, rank in [("A", 2), ("B", 2), ("G", 2), ("D", 4)]:
        rs = build_root_system(type_label, rank)
        ws = weight_system(rs, rs.theta)
        zero = (0,) * rank
        assert ws.multiplicity(zero) == rank
        for beta in rs.pos_roots:
            assert ws.multiplicity(beta) == 1


def test_random_weyl_dimension_crosscheck():
    """Freudenthal total vs the product formula on random dominant
    weights; the two routes share no code."""
    rng = random.Random(2024)
    types = [("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 3), ("D", 4),
             ("G", 2)]
    for _ in range(25):
        type_label, rank = rng.choice(types)
        rs = build_root_system(type_label, rank)
        lam = tuple(rng.randint(0, 2) for _ in range(rank))
        ws = weight_system(rs, lam)
        assert ws.dim == weyl_dim(rs, lam)


def test_spin_b8_histogram_oracle():
    """B8 spin weights are (+-1/2, ..., +-1/2) in coordinates; their
    a-values are sums of signed odd-stage contributions n-i+1.  The
    histogram computed that way must match the weight-system one."""
    n = 8
    rs = build_root_system("B", n)
    ws = weight_system(rs, (0,) * (n - 1) + (1,))
    want = {}
    for signs in itertools.product((1, -1), repeat=n):
        a = sum(s * (n - i) for i, s in enumerate(signs))
        want[a] = want.get(a, 0) + 1
    assert ws.a_histogram() == want
    assert ws.dim == 2 ** n


def test_spin_b3_epsilon_and_pieces():
    rs = build_root_system("B", 3)
    ws = weight_system(rs, (0, 0, 1))
    assert epsilon_on(ws) == 1
    assert principal_sl2_decomposition(ws).pieces() == [(0, 1), (6, 1)]


@pytest.mark.parametrize("type_label,rank", [("A", 2), ("B", 2), ("B", 3),
                                             ("C", 3), ("D", 4), ("G", 2),
                                             ("F", 4)])
def test_adjoint_sl2_pieces_are_doubled_exponents(type_label, rank):
    rs = build_root_system(type_label, rank)
    ws = weight_system(rs, rs.theta)
    dec = principal_sl2_decomposition(ws)
    want = {}
    for m in rs.exponents:
        want[2 * m] = want.get(2 * m, 0) + 1
    assert dec.pieces() == sorted(want.items())
    assert dec.summand_count() == rank


def test_g2_seven_dim_is_one_sl2_string():
    rs = build_root_system("G", 2)
    ws = weight_system(rs, (1, 0))
    assert principal_sl2_decomposition(ws).pieces() == [(6, 1)]


def test_non_dominant_rejected():
    rs = build_root_system("A", 2)
    with pytest.raises(ValidationError):
        weight_system(rs, (-1, 0))


def test_cache_round_trip(tmp_path):
    rs = build_root_system("B", 2)
    ws = weight_system(rs, (1, 1))
    path = tmp_path / "b2.json"
    save_weight_system(ws, str(path))
    loaded = load_weight_system(str(path))
    assert loaded.table == ws.table
    assert loaded.dim == ws.dim


def test_cache_detects_tampering(tmp_path):
    rs = build_root_system("A", 2)
    ws = weight_system(rs, (1, 1))
    path = tmp_path / "a2.json"
    save_weight_system(ws, str(path))
    data = json.loads(path.read_text())
    data["entries"][0][-2] += 1
    path.write_text(json.dumps(data))
    with pytest.raises(ConsistencyError):
        load_weight_system(str(path))


small_types = st.sampled_from([("A", 1), ("A", 2), ("B", 2), ("C", 3),
                               ("G", 2)])


@st.composite
def dominant_weights(draw):
    type_label, rank = draw(small_types)
    lam = tuple(draw(st.integers(min_value=0, max_value=2))
                for _ in range(rank))
    return type_label, rank, lam


@given(dominant_weights())
@settings(max_examples=40, deadline=None)
def test_reflection_invariance(case):
    type_label, rank, lam = case
    rs = build_root_system(type_label, rank)
    ws = weight_system(rs, lam)
    for mu, mult in ws.table.items():
        for i in range(rank):
            refl = tuple(x - mu[i] * y
                         for x, y in zip(mu, rs.simple_roots[i]))
            assert ws.multiplicity(refl) == mult


@given(dominant_weights())
@settings(max_examples=40, deadline=None)
def test_a_parity_is_constant(case):
    type_label, rank, lam = case
    rs = build_root_system(type_label, rank)
    ws = weight_system(rs, lam)
    parity = rs.a_value(lam) % 2
    assert all(a % 2 == parity for a in ws.a_of.values())
    assert epsilon_on(ws) == (1 if parity == 0 else -1)
