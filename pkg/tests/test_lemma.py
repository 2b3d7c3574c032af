import random

import pytest
from gmpy2 import mpq

from biharm.lemma.frame import build_frame_instance
from biharm.lemma.powersums import (power_sum_certificates, reduce_to_jets,
                                    verify_power_sum_chain)
from biharm.lemma.vandermonde import (PowerSumSystem, det_cofactor, det_gauss, node_ring,
                                      solve_vanishing_system, vandermonde_certificates,
                                      vandermonde_det, vandermonde_matrix, vandermonde_product)

NAMES = ["f1", "f2", "g1", "f3", "g2", "f4", "g3", "g4", "f5"]


@pytest.mark.parametrize("count", [4, 5])
def test_power_sum_chain_certified(count):
    ledger = verify_power_sum_chain(build_frame_instance(count))
    assert [c.name for c in ledger.certificates] == NAMES
    for c in ledger.certificates:
        assert c.certified and not c.residual, c.name
    assert ledger.certificate("f1").notes == ("cleared by E",)
    assert "E != 0" in ledger.certificate("f1").assumptions


def test_degenerate_single_slot_instance():
    inst = build_frame_instance(1, _allow_degenerate=True)
    ledger = verify_power_sum_chain(inst)
    assert ledger.all_certified
    # one slot: S_2 times n1 equals S_1 squared
    n1 = inst.ring.var("n1")
    assert not n1 * inst.S(2) - inst.S(1) ** 2


def test_frame_count_out_of_range():
    with pytest.raises(ValueError):
        build_frame_instance(3)
    with pytest.raises(ValueError):
        build_frame_instance(6)


def test_slot_derivation_rules():
    inst = build_frame_instance(4)
    ring = inst.ring
    lam, c = ring.vars("lambda1", "c")
    l2, w2 = inst.slot(2)
    assert inst.derive(w2) == w2 ** 2 + lam * l2 + c
    assert inst.derive(l2) == (l2 - lam) * w2


def test_trace_constraint_derivative():
    inst = build_frame_instance(5)
    ring = inst.ring
    lam, e = ring.vars("lambda1", "E")
    trace = inst.moment_sum(1, 0) + 3 * lam
    expected = 3 * e - sum((lam - inst.slot(i)[0]) * inst.slot(i)[1] * ring.var(f"n{i}")
                           for i in range(1, 6))
    assert inst.derive(trace) == expected


@pytest.mark.parametrize("count", [4, 5])
def test_sums_reduce_to_jets_only(count):
    inst = build_frame_instance(count)
    allowed = {"lambda1", "E", "E2", "E3", "E4", "E5", "E6", "n", "c", "R"}
    for k in range(1, 6):
        f = reduce_to_jets(inst, inst.S(k))
        assert set(f.num.symbols()) <= allowed
    for k in range(1, 4):
        assert set(reduce_to_jets(inst, inst.T(k)).num.symbols()) <= allowed


def test_power_sum_certificate_names():
    names = [c.name for c in power_sum_certificates()]
    assert names == [f"{n}@4" for n in NAMES] + [f"{n}@5" for n in NAMES]


def test_vandermonde_small_cases():
    ring = node_ring(2)
    assert vandermonde_det(2, ring) == ring.var("u2") - ring.var("u1")
    assert det_cofactor(vandermonde_matrix([0, 1, 2])) == 2


@pytest.mark.parametrize("k", range(1, 7))
def test_vandermonde_product_identity(k):
    ring = node_ring(k)
    assert not vandermonde_det(k, ring) - vandermonde_product(k, ring)


def test_vandermonde_out_of_range():
    with pytest.raises(ValueError):
        vandermonde_det(7)


def test_gauss_matches_cofactor_on_random_nodes():
    rng = random.Random(11)
    for _ in range(100):
        k = rng.randint(1, 5)
        nodes = [mpq(rng.randint(-30, 30), rng.randint(1, 9)) for _ in range(k)]
        m = vandermonde_matrix(nodes)
        assert det_gauss(m) == det_cofactor(m) == vandermonde_product(k).evaluate(
            {f"u{i + 1}": u for i, u in enumerate(nodes)})


def test_distinct_nodes_force_zero_solution():
    v = solve_vanishing_system(PowerSumSystem((1, 2, 3, 4, 5), (2, 1, 1, 3, 1)))
    assert v.unique and v.witness != 0 and all(x == 0 for x in v.solution)


def test_repeated_node_is_singular_with_witness():
    ring = node_ring(5)
    v = solve_vanishing_system(PowerSumSystem((1, 1, 3, 4, 5), (1, 1, 1, 1, 1)))
    assert v.kind == "singular"
    assert v.witness == ring.var("u2") - ring.var("u1")
    m = PowerSumSystem((1, 1, 3, 4, 5), (1, 1, 1, 1, 1)).matrix()
    assert any(v.solution)
    assert all(sum(a * x for a, x in zip(row, v.solution)) == 0 for row in m)


def test_random_distinct_rationals_k4():
    rng = random.Random(5)
    nodes = set()
    while len(nodes) < 4:
        nodes.add(mpq(rng.randint(-40, 40), rng.randint(1, 9)))
    v = solve_vanishing_system(PowerSumSystem(tuple(sorted(nodes)), (1, 2, 3, 4)))
    assert v.unique


def test_symbolic_system_records_distinctness():
    v = solve_vanishing_system(PowerSumSystem(("u1", "u2", "u3"), (1, 1, 1)))
    assert v.unique and "u2 != u1" in v.assumptions
    assert v.witness == vandermonde_product(3)


def test_nonpositive_multiplicity_is_rejected():
    with pytest.raises(ValueError):
        solve_vanishing_system(PowerSumSystem((1, 2), (1, 0)))


def test_vandermonde_certificates_all_certified():
    certs = {c.name: c for c in vandermonde_certificates()}
    assert [f"vandermonde-k{k}" for k in range(1, 7)] == list(certs)[:6]
    assert all(c.certified for c in certs.values())
