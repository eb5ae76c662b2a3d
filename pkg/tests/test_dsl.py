import random

import pytest

from superbicross.dsl import (
    DslError,
    DslSyntaxError,
    ParityMismatch,
    UndeclaredGenerator,
    build_model,
    parse_expression,
    parse_presentation,
    print_expression,
    print_presentation,
    run_checks,
)
from superbicross.dsl.bundled import BUNDLED, bundled_text, generate, programmatic
from superbicross.dsl.mutations import MUTATIONS, mutated_text, mutation_text
from superbicross.dsl.printer import SKELETON
from superbicross.dsl.syntax import PresentationDoc
from superbicross.bicross import BicrossData
from superbicross.hopf import structure_tables
from superbicross.scalars import I, KAPPA


def test_minimal_odd_generator():
    doc = parse_presentation("gen theta : odd; rel theta*theta = 0;")
    model = build_model(doc)
    (P,) = model.algebras.values()
    assert P.names == ("theta",) and P.parities == (1,)
    assert (P.gen("theta") * P.gen("theta")).is_zero()


def test_undeclared_generator_position():
    text = "gen z0 : even;\nrel z0*z1 = z1*z0 + (i/k)*z1;"
    with pytest.raises(UndeclaredGenerator) as exc:
        parse_presentation(text)
    assert (exc.value.line, exc.value.col) == (2, 8)
    assert "z1" in exc.value.message


def test_parity_mismatch():
    with pytest.raises(ParityMismatch):
        parse_presentation("gen a : even; gen t : odd; rel t*a = a*t + a;")
    with pytest.raises(ParityMismatch):
        parse_presentation("gen t : odd; counit t = 1;")


@pytest.mark.parametrize(
    "text,line,col,expected",
    [
        ("gen a : even", 1, 13, {";", "weight"}),
        ("gen a b : even;", 1, 7, {":", ","}),
        ("gen a : strange;", 1, 9, {"even", "odd"}),
        ("algebra H {\n  gen a : even;\n", 3, 1, {"}"}),
        ("rel a*b = ;", 1, 11, None),
        ('name "x', 1, 6, None),
    ],
)
def test_syntax_error_positions(text, line, col, expected):
    with pytest.raises(DslSyntaxError) as exc:
        parse_presentation(text)
    err = exc.value
    assert (err.line, err.col) == (line, col)
    if expected is not None:
        assert expected <= set(err.expected)
    assert err.to_dict()["kind"] == "syntax"


def test_empty_doc_skeleton():
    assert print_presentation(PresentationDoc()) == SKELETON
    assert parse_presentation(SKELETON) == PresentationDoc()
    assert parse_presentation("") == PresentationDoc()


def test_canonical_scalar_syntax():
    assert print_expression(parse_expression("-(i/2)*k^-1")) == "-(i/2)*k^-1"
    from superbicross.dsl.semantics import evaluate

    raw = evaluate(parse_expression("-(i/2)*k^-1"), {})
    assert raw == {(): -(I * KAPPA ** -1) / 2}


@pytest.mark.parametrize("name", BUNDLED)
def test_bundled_round_trip(name):
    text = bundled_text(name)
    doc = parse_presentation(text)
    printed = print_presentation(doc)
    assert printed == text
    assert parse_presentation(printed) == doc
    assert print_presentation(parse_presentation(printed)) == printed
    assert doc == generate(name)


def _same_hopf(a, b):
    assert structure_tables(a) == structure_tables(b)


@pytest.mark.parametrize("name", BUNDLED)
def test_golden_equivalence(name):
    model = build_model(parse_presentation(bundled_text(name)))
    obj = programmatic(name)
    if isinstance(obj, BicrossData):
        (d,) = model.bicross.values()
        _same_hopf(d.h1, obj.h1)
        _same_hopf(d.h2, obj.h2)
        assert {k: str(v) for k, v in d.action_table().items()} == {k: str(v) for k, v in obj.action_table().items()}
        assert {k: str(v) for k, v in d.coaction_table().items()} == {k: str(v) for k, v in obj.coaction_table().items()}
    else:
        (h,) = model.hopf.values()
        _same_hopf(h, obj)


@pytest.mark.parametrize("m", MUTATIONS, ids=lambda m: m.name)
def test_mutation_files_are_current(m):
    assert mutation_text(m.name) == mutated_text(m)
    parse_presentation(mutation_text(m.name))


def test_run_checks_classical_and_determinism():
    doc = parse_presentation(bundled_text("classical_poincare"))
    rep = run_checks(doc)
    assert rep.ok
    assert rep.to_jsonl() == run_checks(parse_presentation(bundled_text("classical_poincare"))).to_jsonl()
    ids = [r.id for r in rep.records]
    assert ids == sorted(ids)


def test_run_checks_setup_failure():
    doc = parse_presentation("gen a, b : even; rel a*a = b;")
    rep = run_checks(doc)
    assert not rep.ok
    (rec,) = rep.failed
    assert rec.id == "setup.build[main]" and "b*a" in rec.detail["message"]


def test_default_suites_without_directives():
    doc = parse_presentation("gen z0, z1 : even; rel z1*z0 = z0*z1 + i*k^-1*z1; coproduct z0 = z0 @ 1 + 1 @ z0;"
                             "coproduct z1 = z1 @ 1 + 1 @ z1; counit z0 = 0; counit z1 = 0; antipode z0 = -z0; antipode z1 = -z1;")
    rep = run_checks(doc)
    assert rep.ok
    assert any(r.id.startswith("presentation.confluence") for r in rep.records)
    assert any(r.id.startswith("hopf.") for r in rep.records)


_VOCAB = (
    ["name", "convention", "symbol", "algebra", "bicross", "check", "gen", "rel", "coproduct", "counit", "antipode",
     "supercommutative", "act", "coact", "even", "odd", "weight", "i", "k", "a", "b", "t", "H", "B"]
    + ["0", "1", "2", "17", '"x"', '"C(z)"']
    + list(";:,=+-*/^(){}@") + ["<|", "\n", "#c\n", "$", '"open']
)


def test_fuzz_token_streams_never_crash():
    rng = random.Random(2024)
    seeds = ["gen a, b : even; gen t : odd; supercommutative;", "algebra H {", ""]
    outcomes = {"ok": 0, "error": 0}
    for _ in range(10_000):
        toks = [rng.choice(_VOCAB) for _ in range(rng.randint(0, 30))]
        text = rng.choice(seeds) + " ".join(toks)
        try:
            doc = parse_presentation(text)
        except DslError:
            outcomes["error"] += 1
            continue
        outcomes["ok"] += 1
        try:
            build_model(doc)
        except DslError:
            pass
    assert outcomes["ok"] > 0 and outcomes["error"] > 0
