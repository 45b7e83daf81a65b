import math

import numpy as np
import pytest

from freeqsg.algebra import AlgebraError, Presentation
from freeqsg.kernel import backend_name, max_residuals
from freeqsg.ncpoly import GenDecl, NCExpr
from freeqsg.parser import parse_presentation
from freeqsg.qsg import noqg_presentation
from freeqsg.solver import (
    MAX_REAL_UNKNOWNS,
    cluster_components,
    compile_presentation,
    nearest_family_distance,
    noqg_families,
    residual,
    solve_grid,
)

IDEMPOTENT = """
generator p selfadjoint
relation p p - p
"""

UNITARY = """
generator u
relation u' u - 1
relation u u' - 1
"""


def test_backend_reports():
    assert backend_name() in ("cython", "numpy")


def test_compile_coordinates():
    cs = compile_presentation(noqg_presentation())
    assert cs.coord_names == ["p", "q", "z.re", "z.im"]
    a = cs.assignment(np.array([0.5, 0.25, 0.1, -0.2]))
    assert a["p"] == 0.5 and a["z"] == 0.1 - 0.2j
    back = cs.coords(a)
    assert np.allclose(back, [0.5, 0.25, 0.1, -0.2])


def test_residual_examples():
    pres = noqg_presentation()
    assert residual(pres, {"p": 0, "q": 0, "z": 0}) == 0.0
    assert residual(pres, {"p": 1, "q": 1, "z": 0}) == 0.0
    assert residual(pres, {"p": 0.5, "q": 0.5, "z": 0.5}) <= 1e-15
    assert residual(pres, {"p": 1, "q": 1, "z": 1}) > 0.5
    with pytest.raises(AlgebraError):
        residual(pres, {"p": 0, "q": 0})


def test_idempotent_two_points():
    pres = parse_presentation(IDEMPOTENT)
    result = solve_grid(pres, (-1.5, 1.5), step=0.1)
    values = sorted(round(v, 6) for v in result.cloud[:, 0])
    assert values == [-0.0, 1.0] or values == [0.0, 1.0]
    report = cluster_components(result.cloud, merge_radius=0.25)
    assert report.count == 2 and report.isolated_count == 2


def test_unitary_circle():
    pres = parse_presentation(UNITARY)
    result = solve_grid(pres, (-1.5, 1.5), step=0.1)
    radii = np.hypot(result.cloud[:, 0], result.cloud[:, 1])
    assert np.max(np.abs(radii - 1.0)) <= 1e-9
    report = cluster_components(result.cloud, merge_radius=0.25)
    assert report.count == 1
    assert not report.components[0].is_isolated
    assert report.components[0].diameter > 1.9


def test_unknown_limit():
    gens = [GenDecl(f"g{i}") for i in range(4)]  # 8 real unknowns
    pres = Presentation(gens, [NCExpr.gen("g0")])
    with pytest.raises(AlgebraError):
        solve_grid(pres, (-1, 1), step=0.5)
    assert MAX_REAL_UNKNOWNS == 6


def test_noqg_families_residual():
    pres = noqg_presentation()
    for kind, par in (
        ("omega", 0), ("omega", 1), ("plus", 0.2), ("minus", 0.3j),
        ("plus", 0.1 + 0.2j), ("zero", 0.5), ("zero", 0.3 + 0.4j),
    ):
        assert residual(pres, noqg_families(kind, par)) <= 1e-12
    with pytest.raises(AlgebraError):
        noqg_families("plus", 0.6)
    with pytest.raises(AlgebraError):
        noqg_families("zero", 0.4)
    with pytest.raises(AlgebraError):
        noqg_families("omega", 2)


def test_noqg_geometry():
    pres = noqg_presentation()
    result = solve_grid(pres, (-1.5, 1.5), step=0.2, tol=1e-10)
    report = cluster_components(result.cloud, merge_radius=0.5)
    assert report.count == 3 and report.isolated_count == 2
    worst = max(
        nearest_family_distance(result.system, row) for row in result.cloud
    )
    assert worst <= 1e-5
    # the two isolated points are the endpoints of the unit interval on
    # the diagonal p = q, z = 0
    isolated = sorted(
        tuple(np.round(c.representative, 6))
        for c in report.components if c.is_isolated
    )
    assert isolated == [(-0.0, -0.0, -0.0, 0.0), (1.0, 1.0, -0.0, 0.0)] or [
        tuple(abs(v) for v in pt) for pt in isolated
    ] == [(0.0, 0.0, 0.0, 0.0), (1.0, 1.0, 0.0, 0.0)]


def test_kernel_backends_agree():
    cs = compile_presentation(noqg_presentation())
    rng = np.random.default_rng(3)
    pts = np.ascontiguousarray(rng.uniform(-1.5, 1.5, size=(500, 4)))
    fast = max_residuals(cs.flat, pts)
    slow = max_residuals(cs.flat, pts, force_numpy=True)
    assert np.allclose(fast, slow, rtol=0, atol=1e-13)


def test_sphere_component_matches_closed_form():
    pres = noqg_presentation()
    result = solve_grid(pres, (-1.5, 1.5), step=0.25, tol=1e-10)
    for row in result.cloud:
        p, q, zre, zim = row
        r2 = (p - 0.5) ** 2 + zre ** 2 + zim ** 2
        on_sphere = abs(p + q - 1) <= 1e-8 and abs(r2 - 0.25) <= 1e-8
        at_omega = (
            math.hypot(zre, zim) <= 1e-8
            and (abs(p) <= 1e-8 or abs(p - 1) <= 1e-8)
            and abs(p - q) <= 1e-8
        )
        assert on_sphere or at_omega
