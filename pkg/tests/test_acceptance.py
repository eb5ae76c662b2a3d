"""Acceptance gate: one test per criterion, summarized as PASS/FAIL lines at the end of the run."""

import random
import time

import pytest

from superbicross.bicross import (
    BicrossData,
    build_bicrossproduct,
    check_comodule_coalgebra,
    check_compatibility,
    check_module_algebra,
    verify_built,
)
from superbicross.dsl import DslError, build_model, parse_presentation, print_presentation, run_checks
from superbicross.dsl.bundled import BUNDLED, bundled_text, programmatic
from superbicross.dsl.mutations import MUTATIONS, mutation_text
from superbicross.hopf import structure_tables, verify_antipode, verify_bialgebra
from superbicross.instances.kpoincare import (
    AMENDMENTS,
    CHANGE_BASIS_NOTES,
    change_basis_check,
    classical_limit_data,
    lorentz_property,
    undeformed_super_poincare,
)
from superbicross.presentation import local_confluence_check
from superbicross.scalars import ONE, I, Scalar
from superbicross.tensor import graded_flip, tensor, tensor_mul


def _homogeneous(P, rng, degree=2):
    parity = rng.randrange(2)
    words = [w for w in P.normal_words(degree) if P.word_parity(w) == parity]
    coeffs = [ONE, -ONE, I, Scalar.const(3), Scalar.const(-1, 2)]
    e = P.zero()
    for w in rng.sample(words, min(2, len(words))):
        e = e + P.word_element(w).scale(rng.choice(coeffs))
    return e, parity


def _permutation_sign(px, py):
    # reorder x1..xn y1..yn into x1 y1 x2 y2 ..., counting odd-odd inversions
    items = [(2 * j, p) for j, p in enumerate(px)] + [(2 * j + 1, p) for j, p in enumerate(py)]
    s = sum(a[1] * b[1] for n, a in enumerate(items) for b in items[n + 1 :] if a[0] > b[0])
    return -1 if s % 2 else 1


@pytest.mark.criterion(1, "graded-sign kernel on 1000 random homogeneous pairs")
def test_criterion_1_graded_signs(superspace, lorentz):
    start = time.perf_counter()
    factors = (superspace.algebra, lorentz.algebra)
    rng = random.Random(1)
    for _ in range(1000):
        xs = [_homogeneous(P, rng) for P in factors]
        ys = [_homogeneous(P, rng) for P in factors]
        zs = [_homogeneous(P, rng) for P in factors]
        x, y, z = (tensor(*(e for e, _ in t)) for t in (xs, ys, zs))
        xy = tensor_mul(x, y)
        sign = _permutation_sign([p for _, p in xs], [p for _, p in ys])
        assert xy == tensor(*(a * b for (a, _), (b, _) in zip(xs, ys))).scale(Scalar.const(sign))
        assert graded_flip(graded_flip(x)) == x
        assert tensor_mul(xy, z) == tensor_mul(x, tensor_mul(y, z))
    assert time.perf_counter() - start < 5


@pytest.mark.criterion(2, "classical Poincare: confluence, Hopf axioms to degree 3, compatibility, built structure")
def test_criterion_2_classical(classical):
    start = time.perf_counter()
    for h in (classical.h1, classical.h2):
        assert local_confluence_check(h.algebra).ok
        n = sum(1 for d in (1, 2, 3) for _ in h.algebra.normal_words(d))
        rep = verify_bialgebra(h, degree=3, samples=n)
        rep.extend(verify_antipode(h, degree=3, samples=n))
        assert rep.ok, [r.id for r in rep.failed]
    rep = check_module_algebra(classical, degree=2, samples=50)
    rep.extend(check_comodule_coalgebra(classical, degree=2, samples=50))
    rep.extend(check_compatibility(classical, degree=2, samples=50))
    assert rep.ok, [r.id for r in rep.failed]
    built = build_bicrossproduct(classical, check=False)
    rep = verify_built(built, degree=3, samples=200)
    assert rep.ok, [r.id for r in rep.failed]
    assoc = next(r for r in rep.records if r.id.startswith("built.associativity"))
    hom = next(r for r in rep.records if r.id.startswith("built.coproduct_homomorphism"))
    assert assoc.detail["checked"] >= 200 and hom.detail["checked"] >= 200
    assert time.perf_counter() - start < 60


@pytest.mark.criterion(3, "kappa-Poincare supergroup: module, comodule and compatibility on all generator pairs")
def test_criterion_3_kappa_tables(kappa_data):
    start = time.perf_counter()
    rep = check_module_algebra(kappa_data, degree=2, samples=10)
    rep.extend(check_comodule_coalgebra(kappa_data, degree=2, samples=10))
    rep.extend(check_compatibility(kappa_data, degree=2, samples=10))
    assert rep.ok, [r.id for r in rep.failed]
    pairs = len(kappa_data.P1) * len(kappa_data.P2)
    compat = [r for r in rep.records if r.id.startswith(("bicross.compat_a", "bicross.compat_b", "bicross.compat_d"))]
    assert all(r.detail["checked"] >= pairs for r in compat)
    lines = kappa_data.metadata["action_lines"]
    assert len(lines) == 8 and all(v["status"] in ("matches", "amended") for v in lines.values())
    assert all("shipped_minus_reference" in v for v in lines.values() if v["status"] == "amended")
    assert kappa_data.metadata["amendments"] == AMENDMENTS
    assert time.perf_counter() - start < 600


@pytest.mark.criterion(4, "built supergroup Hopf axioms on generators and all 120 mixed degree-2 products")
def test_criterion_4_built_axioms(kappa_bundle):
    rep = kappa_bundle.report
    assert rep.ok, [r.id for r in rep.failed]
    assert "amendments" in rep.header and "action_lines" in rep.header
    tag = f"[{kappa_bundle.built.name}:mixed]"
    mixed = {r.id: r for r in rep.records if r.id.endswith(tag)}
    for key in ("coproduct_homomorphism", "coassociativity", "counit", "antipode_left", "antipode_right"):
        rec = mixed[f"hopf.{key}{tag}"]
        assert rec.status == "pass" and rec.detail["checked"] >= 100
    gens = {r.id.split("[")[0] for r in rep.records if r.id.endswith(f"[{kappa_bundle.built.name}]")}
    assert {"hopf.coassociativity", "hopf.counit_left", "hopf.counit_right", "hopf.antipode_left", "hopf.antipode_right"} <= gens


@pytest.mark.criterion(5, "change of basis: exact brackets and coproducts, residuals exhibited and annotated")
def test_criterion_5_change_of_basis(kappa_bundle):
    rep = change_basis_check(kappa_bundle)
    status = {r.id.rsplit(".", 1)[1]: r for r in rep.records}
    for key in ("theta_thetabar", "odd_anticommutators", "coproduct_theta", "antipode_a"):
        assert status[key].status == "pass" and status[key].detail["differences"] == 0
    notes = set(CHANGE_BASIS_NOTES.values())
    for r in rep.records:
        assert r.status in ("pass", "annotated")
        if r.status == "annotated":
            assert r.detail["annotation"] in notes
            assert all(c["difference"] not in ("", "0") for c in r.detail["counterexamples"])


@pytest.mark.criterion(6, "classical limit equals the undeformed super-Poincare group structurally")
def test_criterion_6_classical_limit(kappa_data):
    limit = classical_limit_data(kappa_data)
    built = build_bicrossproduct(limit, degree=1, samples=5)
    assert structure_tables(built) == structure_tables(undeformed_super_poincare())


@pytest.mark.criterion(7, "Lorentz property of Lambda modulo unimodularity")
def test_criterion_7_lorentz(lorentz):
    start = time.perf_counter()
    assert all(e.is_zero() for row in lorentz_property(lorentz.algebra) for e in row)
    assert time.perf_counter() - start < 10


@pytest.mark.criterion(8, "each of the 10 shipped mutations makes a named check fail")
def test_criterion_8_mutations():
    assert len(MUTATIONS) == 10
    missed = []
    for m in MUTATIONS:
        rep = run_checks(parse_presentation(mutation_text(m.name)))
        if not any(r.id.startswith(m.expect) for r in rep.failed):
            missed.append(m.name)
    assert not missed


def _golden(name):
    model = build_model(parse_presentation(bundled_text(name)))
    obj = programmatic(name)
    if isinstance(obj, BicrossData):
        (d,) = model.bicross.values()
        same = structure_tables(d.h1) == structure_tables(obj.h1) and structure_tables(d.h2) == structure_tables(obj.h2)
        render = lambda t: {k: str(v) for k, v in t.items()}
        return same and render(d.action_table()) == render(obj.action_table()) and render(
            d.coaction_table()
        ) == render(obj.coaction_table())
    (h,) = model.hopf.values()
    return structure_tables(h) == structure_tables(obj)


_TOKENS = (
    "name convention symbol algebra bicross check gen rel coproduct counit antipode supercommutative act coact "
    "even odd weight confluence hopf degree i k a b t H B 0 1 2 17 \"x\" ; : , = + - * / ^ ( ) { } @ <| $"
).split() + ["\n", '"open']


@pytest.mark.criterion(9, "parser round trip, golden equivalence and 10000 fuzzed token streams")
def test_criterion_9_parser():
    for name in BUNDLED:
        text = bundled_text(name)
        once = print_presentation(parse_presentation(text))
        assert once == text and print_presentation(parse_presentation(once)) == once
        assert _golden(name)
    rng = random.Random(9)
    for _ in range(10_000):
        text = " ".join(rng.choice(_TOKENS) for _ in range(rng.randint(0, 40)))
        try:
            parse_presentation(text)
        except DslError:
            pass
