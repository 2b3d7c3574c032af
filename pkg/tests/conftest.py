import pytest


@pytest.fixture(scope="session")
def case_a():
    from biharm.elimination.case_a import case_a_certificates

    return case_a_certificates()


@pytest.fixture(scope="session")
def case_a_by_name(case_a):
    return {c.name: c for c in case_a["certificates"]}


@pytest.fixture(scope="session")
def case_b_by_name():
    from biharm.elimination.case_b import case_b_certificates

    return {c.name: c for c in case_b_certificates()}


@pytest.fixture(scope="session")
def case_c_by_name():
    from biharm.elimination.case_c import case_c_certificates

    return {c.name: c for c in case_c_certificates()}
