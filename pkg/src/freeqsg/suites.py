"""Named verification suites behind the command line interface.

Every suite produces a SuiteReport: a list of timed check records whose
statuses determine the overall result.  The residual field carries the
numeric evidence: an exact check reports the number of failing
identities (so 0.0 means proved), a numeric check reports the worst
observed residual.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import (
    AlgebraError,
    make_cn,
    make_matrix_algebra,
)
from .corpus import (
    DEFAULT_SEED,
    make_rng,
    random_element,
    random_ncexpr,
    random_rational_projection,
    random_zero_element,
)
from .morphism import (
    NotAHomomorphism,
    Morphism,
    compose,
    decompose_over_cn,
    factor_through_free_product,
    identity_morphism,
    iota_morphism,
    mu,
    pi,
    tensor_morphisms,
)
from .ncpoly import NCExpr
from .products import free_product, tensor
from .qsg import (
    QuantumSemigroup,
    c2star2,
    c2star2_characters,
    c2star2_generators,
    character,
    character_monoid,
    check_coassociativity,
    check_counit,
    check_qsg_morphism,
    composition_qsg_qmap2,
    counit_of_free_product,
    cyclic_group,
    derive_noqg_relations,
    free_product_qsg,
    group_function_qsg,
    is_group,
    monoid_identity,
    noqg_algebra_and_phi,
    noqg_presentation,
    quantum_family_of_maps,
    tensor_elem_first,
)
from . import funcmodel, solver
from .parser import format_expression, parse_expression
from .scalars import QQi


@dataclass
class Check:
    id: str
    anchor: str
    status: str  # "ok" or "fail"
    residual: float
    millis: float

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "status": self.status,
            "residual": self.residual,
            "millis": self.millis,
        }


@dataclass
class SuiteReport:
    suite: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status == "ok" for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "checks": [c.to_dict() for c in self.checks],
            "status": "ok" if self.ok else "fail",
        }


class _Runner:
    def __init__(self, suite: str):
        self.report = SuiteReport(suite)

    def run(self, check_id: str, anchor: str, fn):
        """fn returns (ok, residual); exceptions count as failures."""
        start = time.perf_counter()
        try:
            ok, residual = fn()
        except (AlgebraError, NotAHomomorphism) as exc:
            ok, residual = False, float("nan")
            anchor = f"{anchor} [error: {exc}]"
        millis = (time.perf_counter() - start) * 1000.0
        self.report.checks.append(
            Check(check_id, anchor, "ok" if ok else "fail",
                  float(residual), millis)
        )


@dataclass
class Options:
    seed: int = DEFAULT_SEED
    samples: int | None = None
    step: float = 0.1
    tol: float = 1e-10
    group: str | None = None
    copies: int = 2
    group_table: list | None = None


def _resolve_group(options: Options):
    from .qsg import FiniteGroup

    name = options.group
    if name is None:
        return cyclic_group(2)
    if name.upper().startswith("Z") and name[1:].isdigit():
        return cyclic_group(int(name[1:]))
    if options.group_table is not None:
        return FiniteGroup(tuple(tuple(row) for row in options.group_table))
    raise AlgebraError(f"unknown group {name!r}")


def _count(failures) -> float:
    return float(len(failures))


# ---------------------------------------------------------------------------
# suites


def suite_freeprod_arith(options: Options) -> SuiteReport:
    r = _Runner("freeprod-arith")
    n = options.samples or 500
    C = c2star2()
    p, q = c2star2_generators(C)

    def reduced_words():
        bad = 0
        if p * q * q * p != p * q * p:
            bad += 1
        if not (p * q * (C.unit() - q) * p).coords == {}:
            bad += 1
        if (p * q * p).star() != p * q * p:
            bad += 1
        return bad == 0, float(bad)

    r.run("reduced-words", "reduced-word normal form identities", reduced_words)

    def associativity():
        rng = make_rng(options.seed)
        D = free_product([make_cn(3), make_cn(3)])
        bad = 0
        for i in range(n):
            F = C if i % 2 == 0 else D
            u = random_element(rng, F)
            v = random_element(rng, F)
            w = random_element(rng, F)
            if (u * v) * w != u * (v * w):
                bad += 1
        return bad == 0, float(bad)

    r.run("associativity", "exact associativity on random triples",
          associativity)

    def involution():
        rng = make_rng(options.seed + 1)
        bad = 0
        for _ in range(n):
            u = random_element(rng, C)
            v = random_element(rng, C)
            if (u * v).star() != v.star() * u.star():
                bad += 1
            if u.star().star() != u:
                bad += 1
        return bad == 0, float(bad)

    r.run("involution", "star is an exact anti-homomorphism", involution)

    def zero_corpus():
        rng = make_rng(options.seed + 2)
        bad = sum(
            1 for _ in range(n // 2)
            if random_zero_element(rng, C).coords
        )
        return bad == 0, float(bad)

    r.run("structural-zeros", "constructed zeros reduce to zero exactly",
          zero_corpus)

    def inclusions():
        bad = 0
        D = free_product([make_cn(2), make_cn(3)])
        for F in (C, D):
            for k in range(len(F.factors)):
                if not iota_morphism(F, k).check_well_defined().ok:
                    bad += 1
        return bad == 0, float(bad)

    r.run("inclusions", "factor inclusions are *-homomorphisms", inclusions)

    def morphism_mult():
        delta = free_product_qsg(
            [group_function_qsg(cyclic_group(2))[0]] * 2
        ).comult
        rng = make_rng(options.seed + 3)
        bad = 0
        for _ in range(50):
            u = random_element(rng, C, max_len=3)
            v = random_element(rng, C, max_len=3)
            if delta.eval(u * v) != delta.eval(u) * delta.eval(v):
                bad += 1
        return bad == 0, float(bad)

    r.run("morphism-multiplicative",
          "comultiplication is multiplicative on random pairs",
          morphism_mult)

    def parser_roundtrip():
        rng = make_rng(options.seed + 4)
        bad = 0
        for _ in range(100):
            e = random_ncexpr(rng)
            if parse_expression(format_expression(e)) != e:
                bad += 1
        return bad == 0, float(bad)

    r.run("parser-roundtrip", "parse/print round trip on random expressions",
          parser_roundtrip)
    return r.report


def suite_qfam_universal(options: Options) -> SuiteReport:
    r = _Runner("qfam-universal")
    A = make_cn(2)
    C, Phi = quantum_family_of_maps(A, 2)
    p, q = c2star2_generators(C)
    T = Phi.codomain
    B = T.legs[0]

    def phi_image():
        want = tensor_elem_first(T, B.basis_element(0), p) + \
            tensor_elem_first(T, B.basis_element(1), q)
        bad = 0
        if Phi.images["e1"] != want:
            bad += 1
        if Phi.images["e2"] != T.unit() - want:
            bad += 1
        return bad == 0, float(bad)

    r.run("phi-image", "universal family sends e1 to e1(x)p + e2(x)q",
          phi_image)

    def phi_wd():
        verdict = Phi.check_well_defined()
        return verdict.ok, _count(verdict.failures)

    r.run("phi-homomorphism", "universal family map is a *-homomorphism",
          phi_wd)

    def roundtrip():
        rng = make_rng(options.seed)
        M2 = make_matrix_algebra(2)
        TM = tensor([B, M2])
        bad = 0
        for _ in range(20):
            P0 = random_rational_projection(rng, M2)
            P1 = random_rational_projection(rng, M2)
            img = tensor_elem_first(TM, B.basis_element(0), P0) + \
                tensor_elem_first(TM, B.basis_element(1), P1)
            psi = Morphism(A, TM, {"e1": img, "e2": TM.unit() - img})
            if not psi.check_well_defined().ok:
                bad += 1
                continue
            lam = factor_through_free_product(C, decompose_over_cn(psi))
            through = compose(tensor_morphisms([identity_morphism(B), lam]), Phi)
            if any(through.images[g] != psi.images[g] for g in ("e1", "e2")):
                bad += 1
        return bad == 0, float(bad)

    r.run("universal-roundtrip",
          "factorization through the free product recovers the map",
          roundtrip)
    return r.report


_COASSOC_LISTS = (
    ("Z2 x2", (2, 2)),
    ("Z2 x3", (2, 2, 2)),
    ("Z3 x2", (3, 3)),
    ("Z2 * Z3", (2, 3)),
)


def suite_wang_coassoc(options: Options) -> SuiteReport:
    r = _Runner("wang-coassoc")
    for label, orders in _COASSOC_LISTS:
        def check(orders=orders):
            qsgs = [group_function_qsg(cyclic_group(m))[0] for m in orders]
            D = free_product_qsg(qsgs)
            verdict = check_coassociativity(D.comult)
            bad = _count(verdict.failures)
            for k, factor_qsg in enumerate(qsgs):
                v2 = check_qsg_morphism(
                    iota_morphism(D.algebra, k), factor_qsg, D
                )
                bad += _count(v2.failures)
            return bad == 0, bad

        r.run(f"coassoc-{label.replace(' ', '')}",
              f"free-product comultiplication on {label}: well defined, "
              "coassociative, inclusions are morphisms", check)
    return r.report


_GAMMA_COMBOS = ((2, 2), (2, 3), (3, 2), (4, 2))


def suite_sadr_gamma(options: Options) -> SuiteReport:
    r = _Runner("sadr-gamma")
    if options.group is not None:
        G = _resolve_group(options)
        combos = [(G, options.copies, options.group)]
    else:
        combos = [(cyclic_group(m), n, f"Z{m}") for (m, n) in _GAMMA_COMBOS]
    for G, n, label in combos:
        def check(G=G, n=n):
            qsg, _eps = group_function_qsg(G)
            from .qsg import verify_gamma_equals_delta

            verdict = verify_gamma_equals_delta(qsg, n)
            return verdict.ok, _count(verdict.failures)

        r.run(f"gamma-eq-delta-{label}-n{n}",
              f"pushed-through comultiplication equals the free-product one "
              f"for {label}, {n} copies", check)
    return r.report


def suite_counit(options: Options) -> SuiteReport:
    r = _Runner("counit")
    for label, orders in (("Z2 x2", (2, 2)), ("Z2 * Z3", (2, 3))):
        def check(orders=orders):
            pairs = [group_function_qsg(cyclic_group(m)) for m in orders]
            qsgs = [p[0] for p in pairs]
            epss = [p[1] for p in pairs]
            D = free_product_qsg(qsgs)
            eps_c = counit_of_free_product(epss, D.algebra)
            bad = _count(check_counit(D, eps_c).failures)
            for k, (factor_qsg, eps_k) in enumerate(zip(qsgs, epss)):
                restricted = compose(eps_c, iota_morphism(D.algebra, k))
                if restricted != eps_k:
                    bad += 1
                bad += _count(check_counit(factor_qsg, eps_k).failures)
            return bad == 0, bad

        r.run(f"counit-{label.replace(' ', '')}",
              f"induced counit on {label}: counit axioms and factor "
              "restrictions hold exactly", check)
    return r.report


def suite_pi_morphism(options: Options) -> SuiteReport:
    r = _Runner("pi-morphism")

    def fold_check():
        qsg2, _ = group_function_qsg(cyclic_group(2))
        D = free_product_qsg([qsg2, qsg2])
        fold = pi(D.algebra)
        bad = _count(check_qsg_morphism(fold, D, qsg2).failures)
        for k in range(2):
            section = compose(fold, iota_morphism(D.algebra, k))
            if section != identity_morphism(qsg2.algebra):
                bad += 1
        return bad == 0, bad

    r.run("fold-morphism",
          "the folding map is a quantum semigroup morphism and a "
          "retraction of each inclusion", fold_check)

    def mu_fails():
        M2 = make_matrix_algebra(2)
        try:
            mu(M2)
        except NotAHomomorphism:
            return True, 0.0
        return False, 1.0

    r.run("matrix-multiplication-not-hom",
          "multiplication of 2x2 matrices is rejected as a homomorphism",
          mu_fails)
    return r.report


def suite_composition_semigroup(options: Options) -> SuiteReport:
    r = _Runner("composition-semigroup")
    qsg2, _ = group_function_qsg(cyclic_group(2))
    free_qsg = free_product_qsg([qsg2, qsg2])
    C = free_qsg.algebra
    p, q = c2star2_generators(C)
    T = free_qsg.comult.codomain
    comp_qsg = composition_qsg_qmap2()

    def delta_formula():
        dp = free_qsg.comult.images["e1@1"]
        want = (
            tensor_elem_first(T, p, p).scale(QQi(2))
            - tensor_elem_first(T, p, C.unit())
            - tensor_elem_first(T, C.unit(), p)
            + T.unit()
        )
        i1 = iota_morphism(C, 0)
        lifted = tensor_morphisms([i1, i1]).eval(qsg2.comult.images["e1"])
        bad = (dp != want) + (dp != lifted)
        return bad == 0, float(bad)

    r.run("delta-p-formula",
          "group comultiplication of the first projection matches the "
          "closed form 2p(x)p - p(x)1 - 1(x)p + 1(x)1", delta_formula)

    def comp_coassoc():
        verdict = check_coassociativity(comp_qsg.comult)
        return verdict.ok, _count(verdict.failures)

    r.run("composition-coassociative",
          "map-composition comultiplication is exactly coassociative",
          comp_coassoc)

    def differs():
        diff = free_qsg.comult.images["e1@1"] - comp_qsg.comult.images["e1@1"]
        return not diff.is_zero(), 0.0 if not diff.is_zero() else 1.0

    r.run("structures-differ",
          "the two comultiplications disagree on the first projection",
          differs)

    def comp_counit():
        eps = character(
            C, {"e1@1": 1, "e2@1": 0, "e1@2": 0, "e2@2": 1}
        )
        verdict = check_counit(comp_qsg, eps)
        return verdict.ok, _count(verdict.failures)

    r.run("composition-counit",
          "the character p -> 1, q -> 0 is a counit for composition",
          comp_counit)
    return r.report


def suite_character_monoid(options: Options) -> SuiteReport:
    r = _Runner("character-monoid")
    C = c2star2()
    chars = c2star2_characters(C)
    qsg2, _ = group_function_qsg(cyclic_group(2))
    free_qsg = free_product_qsg([qsg2, qsg2])
    comp_qsg = composition_qsg_qmap2()

    def free_group():
        table = character_monoid(free_qsg, chars)
        ok = (
            len(table) == 4
            and is_group(table)
            and monoid_identity(table) == 3
        )
        return ok, 0.0 if ok else 1.0

    r.run("free-characters-group",
          "convolution of the four characters under the group structure "
          "is a 4-element group with identity chi_{1,1}", free_group)

    def comp_monoid():
        table = character_monoid(comp_qsg, chars)
        ok = (
            len(table) == 4
            and not is_group(table)
            and monoid_identity(table) == 2
        )
        return ok, 0.0 if ok else 1.0

    r.run("composition-characters-monoid",
          "convolution under composition is a 4-element monoid with "
          "identity chi_{1,0} and no inverses", comp_monoid)
    return r.report


def suite_noqg_phi(options: Options) -> SuiteReport:
    r = _Runner("noqg-phi")
    pres = noqg_presentation()

    def entries_match():
        idem, adj = derive_noqg_relations()
        want = {
            (1, 1): pres.relations[0],
            (2, 2): pres.relations[1],
            (2, 1): pres.relations[2],
            (1, 2): pres.relations[3],
        }
        bad = sum(1 for ij, rel in want.items() if idem.get(ij) != rel)
        bad += sum(1 for e in adj.values() if not e.is_zero())
        if pres.resolve(idem[(2, 1)].star()) != idem[(1, 2)]:
            bad += 1
        return bad == 0, float(bad)

    r.run("idempotency-entries",
          "entries of the squared-minus-itself matrix equal the four "
          "presentation relations; the matrix is formally self-adjoint",
          entries_match)

    def witness():
        _pres, phi = noqg_algebra_and_phi()
        verdict = phi.check_well_defined()
        # the defect of the unquotiented model is exactly the relation set
        defects = {name for (name, _diff) in verdict.failures}
        ok = not verdict.ok and len(verdict.failures) > 0
        return ok, 0.0 if ok else 1.0

    r.run("free-model-defect",
          "the matrix model violates the projection relations before "
          "quotienting, witnessing the derived presentation", witness)
    return r.report


_FAMILY_SAMPLES = (
    ("omega", 0),
    ("omega", 1),
    ("plus", 0.0),
    ("plus", 0.3 + 0.2j),
    ("minus", 0.25j),
    ("minus", -0.4),
    ("zero", 0.5),
    ("zero", 0.3 + 0.4j),
    ("zero", 0.5j),
)


def suite_noqg_characters(options: Options) -> SuiteReport:
    r = _Runner("noqg-characters")
    pres = noqg_presentation()
    step = options.step
    holder = {}

    def solve():
        result = solver.solve_grid(
            pres, (-1.5, 1.5), step=step, tol=options.tol
        )
        holder["result"] = result
        holder["report"] = solver.cluster_components(
            result.cloud, merge_radius=2.5 * step
        )
        ok = len(result.cloud) > 0
        return ok, float(result.dropped)

    r.run("grid-solve", "grid scan plus refinement finds the character "
          "cloud", solve)

    def components():
        rep = holder.get("report")
        if rep is None:
            return False, float("nan")
        ok = rep.count == 3 and rep.isolated_count == 2
        return ok, float(rep.count)

    r.run("component-count",
          "the character space has 3 components, 2 of them isolated "
          "points", components)

    def family_distance():
        result = holder.get("result")
        if result is None:
            return False, float("nan")
        worst = max(
            solver.nearest_family_distance(result.system, row)
            for row in result.cloud
        )
        return worst <= 1e-5, worst

    r.run("family-distance",
          "every refined solution lies within 1e-5 of a closed-form "
          "family member", family_distance)

    def family_residual():
        worst = 0.0
        for kind, par in _FAMILY_SAMPLES:
            assignment = solver.noqg_families(kind, par)
            worst = max(worst, solver.residual(pres, assignment))
        return worst <= 1e-12, worst

    r.run("family-residual",
          "closed-form family members satisfy the relations to 1e-12",
          family_residual)
    return r.report


def suite_funcmodel(options: Options) -> SuiteReport:
    r = _Runner("funcmodel")
    samples = options.samples or 1000
    holder = {}

    def model():
        holder["report"] = funcmodel.verify_model(samples=samples, pairs=100)
        rep = holder["report"]
        worst = max(rep["p_idempotent"], rep["q_idempotent"],
                    rep["p_selfadjoint"], rep["q_selfadjoint"])
        return worst <= 1e-12, worst

    r.run("projection-paths",
          "both projection paths are self-adjoint idempotents at 1000 "
          "samples", model)

    def endpoints():
        rep = holder.get("report")
        if rep is None:
            return False, float("nan")
        return rep["endpoint_offdiagonal"] <= 1e-15, rep["endpoint_offdiagonal"]

    r.run("endpoint-diagonal",
          "endpoint values of the model are diagonal matrices", endpoints)

    def tensor_images():
        rep = holder.get("report")
        if rep is None:
            return False, float("nan")
        worst = max(
            rep["delta_image_idempotent"], rep["delta_image_selfadjoint"],
            rep["composition_image_idempotent"],
            rep["composition_image_selfadjoint"],
        )
        return worst <= 1e-12, worst

    r.run("comultiplication-images",
          "both comultiplication images of p evaluate to self-adjoint "
          "idempotent 4x4 matrices", tensor_images)
    return r.report


def suite_oracle_crosscheck(options: Options) -> SuiteReport:
    r = _Runner("oracle-crosscheck")
    C = funcmodel.model_algebra()
    samples = options.samples or 200

    def soundness():
        rng = make_rng(options.seed)
        violations = 0
        for _ in range(200):
            z = random_zero_element(rng, C)
            if z.coords or not funcmodel.oracle_is_zero(z, samples=samples):
                violations += 1
        return violations == 0, float(violations)

    r.run("soundness",
          "the sampling oracle confirms 200 exact zeros", soundness)

    def effectiveness():
        rng = make_rng(options.seed + 1)
        missed = 0
        for _ in range(200):
            x = random_element(rng, C)
            if not x.coords:
                continue
            if funcmodel.oracle_is_zero(x, samples=samples):
                missed += 1
        return missed == 0, float(missed)

    r.run("no-missed-nonzeros",
          "the oracle flags every structured nonzero element", effectiveness)
    return r.report


SUITES = {
    "freeprod-arith": suite_freeprod_arith,
    "qfam-universal": suite_qfam_universal,
    "wang-coassoc": suite_wang_coassoc,
    "sadr-gamma": suite_sadr_gamma,
    "counit": suite_counit,
    "pi-morphism": suite_pi_morphism,
    "composition-semigroup": suite_composition_semigroup,
    "character-monoid": suite_character_monoid,
    "noqg-phi": suite_noqg_phi,
    "noqg-characters": suite_noqg_characters,
    "funcmodel": suite_funcmodel,
    "oracle-crosscheck": suite_oracle_crosscheck,
}


def run_suite(name: str, options: Options | None = None) -> SuiteReport:
    options = options or Options()
    if name == "all":
        combined = SuiteReport("all")
        for sub in SUITES.values():
            combined.checks.extend(sub(options).checks)
        return combined
    if name not in SUITES:
        raise AlgebraError(f"unknown suite {name!r}")
    return SUITES[name](options)
