"""Acceptance gate: one test per headline criterion, each with a pinned
tolerance and wall-time budget.  A per-criterion PASS/FAIL line is
printed in the terminal summary (see conftest.py)."""

import time

import pytest

from freeqsg import solver
from freeqsg.algebra import make_cn
from freeqsg.morphism import iota_morphism
from freeqsg.qsg import (
    c2star2_generators,
    check_coassociativity,
    check_qsg_morphism,
    cyclic_group,
    free_product_qsg,
    group_function_qsg,
    noqg_presentation,
    quantum_family_of_maps,
    tensor_elem_first,
    verify_gamma_equals_delta,
)
from freeqsg.suites import Options, run_suite


class Budget:
    def __init__(self, seconds):
        self.limit = seconds

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, (
                f"runtime {self.elapsed:.1f}s exceeds the {self.limit}s budget"
            )


def assert_suite(name, **kw):
    report = run_suite(name, Options(**kw))
    bad = [c for c in report.checks if c.status != "ok"]
    assert not bad, [(c.id, c.anchor, c.residual) for c in bad]
    return report


def test_criterion_1_universal_family():
    with Budget(1.0):
        A = make_cn(2)
        C, Phi = quantum_family_of_maps(A, 2)
        p, q = c2star2_generators(C)
        T = Phi.codomain
        B = T.legs[0]
        want = tensor_elem_first(T, B.basis_element(0), p) + \
            tensor_elem_first(T, B.basis_element(1), q)
        assert Phi.images["e1"] == want
        assert_suite("qfam-universal")


def test_criterion_2_free_product_comultiplication():
    with Budget(5.0):
        assert_suite("wang-coassoc")


def test_criterion_3_pushed_through_comultiplication():
    with Budget(10.0):
        for m, n in ((2, 2), (2, 3), (3, 2), (4, 2)):
            qsg, _ = group_function_qsg(cyclic_group(m))
            verdict = verify_gamma_equals_delta(qsg, n)
            assert verdict.ok, f"Z{m}, {n} copies: {verdict.describe()}"


def test_criterion_4_counits_and_morphisms():
    with Budget(2.0):
        assert_suite("counit")
        assert_suite("pi-morphism")


def test_criterion_5_composition_structure():
    with Budget(2.0):
        assert_suite("composition-semigroup")
        assert_suite("character-monoid")


def test_criterion_6_obstruction_relations():
    with Budget(1.0):
        assert_suite("noqg-phi")


def test_criterion_7_character_geometry():
    with Budget(120.0):
        report = assert_suite("noqg-characters", step=0.1, tol=1e-10)
        by_id = {c.id: c for c in report.checks}
        assert by_id["component-count"].residual == 3.0
        assert by_id["family-distance"].residual <= 1e-5
        assert by_id["family-residual"].residual <= 1e-12


def test_criterion_8_function_model_and_oracle():
    with Budget(10.0):
        assert_suite("funcmodel", samples=1000)
        assert_suite("oracle-crosscheck")


def test_criterion_9_property_suites():
    with Budget(10.0):
        assert_suite("freeprod-arith", samples=500)
