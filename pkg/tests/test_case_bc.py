import pytest

from biharm.elimination.case_b import admissible_n5, branch_run, flow_ring
from biharm.elimination.case_c import real_root_count, case_c_ring

B_NAMES = ["4.27", "4.28", "B-axioms-r", "B-axioms-u", "B-psi-flow", "B1-v-slot", "B3-v-slot",
           "B-phi0", "B1-lc", "B1-v2c", "B1-C3", "B-final", "B2-lc", "B2-R6", "B2-final",
           "B3-lc", "B3-C3", "B3-final"]
C_NAMES = ["C-ratio", "C-nonzero", "C-phipsi-c", "C-phipsi", "C-lp0-omega", "C-lp0-c",
           "C-lp0-ratio", "C-lp0", "C-lu0-omega", "C-lu0-c", "C-lu0-ratio", "C-lu0-phi-flow",
           "C-lu0-C3", "C-lu0"]


def test_case_b_inventory(case_b_by_name):
    assert list(case_b_by_name) == B_NAMES


@pytest.mark.parametrize("name", B_NAMES)
def test_case_b_certified(case_b_by_name, name):
    assert case_b_by_name[name].certified


def test_4_28_is_an_exact_rewrite(case_b_by_name):
    assert case_b_by_name["4.28"].multiple == -1
    assert "phi != 0" in case_b_by_name["4.27"].assumptions


def test_admissible_fifth_multiplicity():
    assert admissible_n5(6) == [1]
    assert admissible_n5(8) == [1, 2, 3]


@pytest.mark.parametrize("branch, weight, degree", [("B1", 186, 180), ("B2", 36, 36),
                                                    ("B3", 132, 132)])
def test_branch_final_shapes(branch, weight, degree):
    el = branch_run(branch).elimination
    assert (el.weight, el.degree) == (weight, degree)
    assert el.top_form


def test_b1_top_is_a_power_of_c():
    top = branch_run("B1").elimination.top_form
    assert len(top) == 1 and tuple(top.symbols()) == ("c",) and top.degree("c") == 3


def test_b2_top_constant():
    assert str(branch_run("B2").elimination.top_form) == "1717986918400/59049"


def test_flow_ring_symbols():
    assert set(flow_ring().names) >= {"lambda1", "phi", "psi", "v", "n", "c", "R", "m"}


def test_case_c_inventory(case_c_by_name):
    assert list(case_c_by_name) == C_NAMES


@pytest.mark.parametrize("name", C_NAMES)
def test_case_c_certified(case_c_by_name, name):
    assert case_c_by_name[name].certified


def test_squares_have_no_real_roots(case_c_by_name):
    ring = case_c_ring()
    psi, gamma = ring.vars("psi", "gamma")
    assert real_root_count(psi ** 2 + 1, "psi") == 0
    assert real_root_count(gamma ** 2 - 1, "gamma") == 2
    assert any("0 real roots" in n for n in case_c_by_name["C-phipsi"].notes)
    assert any("0 real roots" in n for n in case_c_by_name["C-lp0"].notes)


def test_distinct_curvatures_recorded(case_c_by_name):
    for cert in case_c_by_name.values():
        assert any("pairwise distinct" in a for a in cert.assumptions)
