from itertools import combinations

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import brute_circuits, brute_closure, brute_faces, h_vector_by_series, sub_rank
from otk import corpus
from otk.errors import DegenerateTheta, InvalidConfig, MissingTheta, NotUnimodular, ParseError
from otk.matroid import (
    VectorConfig,
    broken_circuits,
    circuits,
    closure,
    complex_summary,
    f_to_h,
    flats,
    h_to_f,
    is_independent,
    is_unimodular,
    kernel_lattice_basis,
    lattice_coordinates,
    rank,
    signed_circuit,
    signed_circuits,
    validate,
)
from strategies import configs, unimodular_configs


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def test_non_primitive_vector_rejected():
    with pytest.raises(InvalidConfig, match="primitive"):
        VectorConfig(1, ((1,), (2,)))


def test_zero_vector_rejected():
    with pytest.raises(InvalidConfig, match="zero"):
        VectorConfig(2, ((1, 0), (0, 0)))


def test_too_few_vectors_rejected():
    with pytest.raises(InvalidConfig):
        VectorConfig(2, ((1, 0),))


def test_theta_length_checked():
    with pytest.raises(InvalidConfig):
        VectorConfig(1, ((1,), (-1,)), (0,))


def test_json_round_trip(config_b):
    again = VectorConfig.from_json(__import__("json").dumps(config_b.to_dict()))
    assert again == config_b


def test_json_errors():
    with pytest.raises(ParseError):
        VectorConfig.from_json("{not json")
    with pytest.raises(ParseError):
        VectorConfig.from_json('{"vectors": [[1]]}')


# ---------------------------------------------------------------------------
# rank and validation
# ---------------------------------------------------------------------------


def test_rank_examples(config_b):
    assert rank(config_b, (0, 1)) == 2
    assert rank(config_b, (0, 1, 2)) == 2
    assert rank(config_b, ()) == 0


def test_validate_config_a(config_a):
    r = validate(config_a)
    assert (r.full_rank, r.no_coloops, r.unimodular, r.simple) == (True, True, True, True)
    assert r.ok and r.violations == []


def test_validate_minor_two():
    # (1,0),(1,2) are primitive but span an index-2 sublattice
    r = validate(VectorConfig(2, ((1, 0), (1, 2), (0, 1))), check_simple=False)
    assert not r.unimodular
    assert any("minor" in v for v in r.violations)


def test_validate_basis_has_coloops(basis_config):
    r = validate(basis_config)
    assert not r.no_coloops
    assert len([v for v in r.violations if v.startswith("no_coloops")]) == 2


def test_validate_not_full_rank():
    r = validate(VectorConfig(2, ((1, 0), (-1, 0))), check_simple=False)
    assert not r.full_rank and not r.ok


def test_validate_simple_needs_theta(config_d):
    with pytest.raises(MissingTheta):
        validate(config_d, check_simple=True)


def test_validate_not_simple():
    # three lines through the origin in the plane
    cfg = VectorConfig(2, ((1, 0), (0, 1), (1, 1)), (0, 0, 0))
    r = validate(cfg)
    assert r.simple is False and not r.ok


def test_corpus_configs_are_valid():
    for cfg in corpus.all_configs():
        assert validate(cfg).ok, cfg.name


# ---------------------------------------------------------------------------
# circuits and signs
# ---------------------------------------------------------------------------


def test_circuits_examples(config_a, config_b, basis_config):
    assert circuits(config_a) == [(0, 1)]
    assert circuits(config_b) == [(0, 1, 2)]
    assert circuits(basis_config) == []


def test_circuits_config_d(config_d):
    # frozen from brute force over all subsets with sympy ranks
    assert circuits(config_d) == [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)]
    assert circuits(config_d) == brute_circuits(config_d.vectors)


def test_signed_circuit_examples(config_a, config_b):
    sc = signed_circuit(config_a, (0, 1))
    assert (sc.plus, sc.minus) == ((0, 1), ())
    assert sc.tau(config_a.theta) == -1
    sc = signed_circuit(config_b, (0, 1, 2))
    assert (sc.plus, sc.minus) == ((0, 1), (2,))
    assert sc.tau(config_b.theta) == -1


def test_theta_swap(config_a):
    sc = signed_circuit(config_a.with_theta((0, 1)), (0, 1))
    assert (sc.plus, sc.minus) == ((), (0, 1))


def test_orientation_without_theta(config_b):
    sc = signed_circuit(config_b.with_theta(None), (0, 1, 2))
    assert 0 in sc.plus


def test_degenerate_theta(config_b):
    with pytest.raises(DegenerateTheta):
        signed_circuit(config_b.with_theta((0, 0, 0)), (0, 1, 2))


def test_non_unimodular_relation(config_d):
    # (1,1) + (1,-1) = 2*(1,0)
    with pytest.raises(NotUnimodular):
        signed_circuit(config_d, (0, 2, 3))


def test_four_vector_circuit_with_empty_plus():
    cfg = corpus.get("four")
    sc = signed_circuit(cfg, (0, 3))
    assert sc.plus == () and sc.minus == (0, 3)


# ---------------------------------------------------------------------------
# closure, flats, broken circuits, complexes
# ---------------------------------------------------------------------------


def test_closure_examples(config_b):
    assert closure(config_b, (0, 1)) == (0, 1, 2)
    assert closure(config_b, (2,)) == (2,)
    assert closure(config_b, (0, 1, 2)) == (0, 1, 2)


def test_flats_examples(config_a, config_b):
    assert flats(config_b) == [(), (0,), (1,), (2,), (0, 1, 2)]
    assert flats(config_a) == [(), (0, 1)]
    assert flats(VectorConfig(1, ((1,),))) == [(), (0,)]


def test_broken_circuits_examples(config_a, config_b, basis_config):
    assert broken_circuits(config_a) == [(0,)]
    assert broken_circuits(config_b) == [(0, 1)]
    assert broken_circuits(basis_config) == []


def test_complex_summary_examples(config_a, config_b):
    s = complex_summary(config_b, "broken_circuit")
    assert (s.f_vector, s.h_vector) == ([1, 3, 2], [1, 1])
    s = complex_summary(config_b, "independence")
    assert (s.f_vector, s.h_vector) == ([1, 3, 3], [1, 1, 1])
    s = complex_summary(config_a, "broken_circuit")
    assert (s.f_vector, s.h_vector) == ([1, 1], [1])


def test_complex_summary_corpus_frozen():
    # frozen from brute-force face enumeration and sympy series expansion
    expected = {
        "tp1": ([1], [1, 1]),
        "triangle": ([1, 1], [1, 1, 1]),
        "four": ([1, 1], [1, 2, 2]),
        "k4minus": ([1, 2, 1], [1, 2, 3, 2]),
        "k4": ([1, 3, 2], [1, 3, 6, 6]),
    }
    for name, (h_bc, h_ind) in expected.items():
        cfg = corpus.get(name)
        assert complex_summary(cfg, "bc").h_vector == h_bc, name
        assert complex_summary(cfg, "ind").h_vector == h_ind, name


@pytest.mark.parametrize("name", corpus.names())
def test_corpus_summaries_match_brute_force(name):
    cfg = corpus.get(name)
    for which, forbidden in (("ind", brute_circuits(cfg.vectors)), ("bc", [C[:-1] for C in brute_circuits(cfg.vectors)])):
        faces = brute_faces(cfg.vectors, forbidden)
        f = [0] * (max(len(S) for S in faces) + 1)
        for S in faces:
            f[len(S)] += 1
        assert complex_summary(cfg, which).f_vector == f
        assert complex_summary(cfg, which).h_vector == (h_vector_by_series(f, cfg.d) or [0])


# ---------------------------------------------------------------------------
# lattices
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("name", corpus.names())
def test_kernel_lattice(name):
    cfg = corpus.get(name)
    basis = kernel_lattice_basis(cfg)
    assert len(basis) == cfg.n - cfg.d
    for b in basis:
        assert all(sum(b[i] * cfg.vectors[i][j] for i in range(cfg.n)) == 0 for j in range(cfg.d))
    for sc in signed_circuits(cfg):
        beta = sc.beta(cfg.n)
        coords = lattice_coordinates(basis, beta)
        assert tuple(sum(c * b[i] for c, b in zip(coords, basis)) for i in range(cfg.n)) == beta


# ---------------------------------------------------------------------------
# properties
# ---------------------------------------------------------------------------


@given(configs())
@settings(max_examples=40)
def test_circuits_match_brute_force(cfg):
    circs = circuits(cfg)
    assert circs == brute_circuits(cfg.vectors)
    for a, b in combinations(circs, 2):
        assert not set(a) <= set(b) and not set(b) <= set(a)


@given(configs(), st.data())
@settings(max_examples=40)
def test_closure_is_a_closure_operator(cfg, data):
    S = tuple(sorted(data.draw(st.sets(st.integers(0, cfg.n - 1)))))
    T = tuple(sorted(set(S) | data.draw(st.sets(st.integers(0, cfg.n - 1)))))
    cS = closure(cfg, S)
    assert set(S) <= set(cS)
    assert closure(cfg, cS) == cS
    assert set(cS) <= set(closure(cfg, T))
    assert cS == brute_closure(cfg.vectors, S)


@given(configs())
@settings(max_examples=40)
def test_rank_matches_sympy(cfg):
    for k in range(cfg.n + 1):
        for S in combinations(range(cfg.n), k):
            assert rank(cfg, S) == sub_rank(cfg.vectors, S)


@given(configs())
@settings(max_examples=40)
def test_broken_circuits_are_independent(cfg):
    for B in broken_circuits(cfg):
        assert is_independent(cfg, B)


@given(unimodular_configs())
@settings(max_examples=40)
def test_signed_circuits_are_exact_relations(cfg):
    assert is_unimodular(cfg)
    for sc in signed_circuits(cfg):
        for j in range(cfg.d):
            assert sum(cfg.vectors[i][j] for i in sc.plus) - sum(cfg.vectors[i][j] for i in sc.minus) == 0
        assert sc.opposite().opposite() == sc
        assert set(sc.plus).isdisjoint(sc.minus)


@given(unimodular_configs(), st.data())
@settings(max_examples=40)
def test_theta_selects_one_orientation(cfg, data):
    theta = tuple(data.draw(st.lists(st.integers(-3, 3), min_size=cfg.n, max_size=cfg.n)))
    with_theta = cfg.with_theta(theta)
    for C in circuits(cfg):
        base = signed_circuit(cfg, C)
        tau = base.tau(theta)
        assume(tau != 0)
        chosen = signed_circuit(with_theta, C)
        assert chosen in (base, base.opposite())
        assert chosen.tau(theta) < 0


@given(st.lists(st.integers(0, 9), min_size=1, max_size=5), st.integers(0, 2))
@settings(max_examples=100)
def test_h_vector_round_trip(f, extra):
    D = len(f) - 1 + extra
    f = list(f)
    while len(f) > 1 and f[-1] == 0:
        f.pop()
    h = f_to_h(f, D)
    assert h_to_f(h, D) == f
    assert h == (h_vector_by_series(f, D) or [0])
