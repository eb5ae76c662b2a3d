import itertools

import pytest
from hypothesis import given, settings, strategies as st

from superbicross.instances.common import graded_algebra
from superbicross.presentation import (
    DuplicateGenerator,
    GeneratorDecl,
    MissingRule,
    MixedPresentation,
    NonTerminatingRule,
    RewriteRule,
    element_parity,
    local_confluence_check,
    mul,
    normal_form,
    register_presentation,
)
from superbicross.scalars import I, KAPPA, ONE, Scalar

K1 = KAPPA ** -1


def chiral(tweak=None):
    rules = {}
    for i in (1, 2, 3):
        rules[(f"z{i}", "z0")] = {("z0", f"z{i}"): ONE, (f"z{i}",): I * K1}
    for a in (1, 2):
        rules[(f"th{a}", "z0")] = {("z0", f"th{a}"): ONE, (f"th{a}",): I * K1 / 2}
    if tweak:
        tweak(rules)
    gens = [(f"z{m}", 0) for m in range(4)] + [("th1", 1), ("th2", 1)]
    return graded_algebra("chiral", gens, rules)


def test_register_valid():
    P = register_presentation(
        [GeneratorDecl("z0", 0, 0), GeneratorDecl("z1", 0, 1)],
        [RewriteRule(("z1", "z0"), {("z0", "z1"): ONE, ("z1",): I * K1})],
    )
    assert P.names == ("z0", "z1")


def test_wrong_orientation_rejected():
    with pytest.raises(NonTerminatingRule):
        register_presentation(
            [GeneratorDecl("z0", 0, 0), GeneratorDecl("z1", 0, 1)],
            [RewriteRule(("z0", "z1"), {("z1", "z0"): ONE})],
        )


def test_missing_and_duplicate():
    with pytest.raises(MissingRule):
        register_presentation([GeneratorDecl("a", 0, 0), GeneratorDecl("b", 0, 1)], [])
    with pytest.raises(MissingRule):
        register_presentation([GeneratorDecl("t", 1, 0)], [])
    with pytest.raises(DuplicateGenerator):
        register_presentation([GeneratorDecl("a", 0, 0), GeneratorDecl("a", 0, 1)], [])


def test_odd_sector_valid():
    P = graded_algebra("odd", [("th1", 1), ("th2", 1)])
    assert set(P.rules) == {(1, 0), (0, 0), (1, 1)}


def test_normal_form_examples():
    P = chiral()
    z0, z1, th1, th2 = (P.gen(n) for n in ("z0", "z1", "th1", "th2"))
    assert normal_form(th1 * th1) == P.zero()
    assert z1 * z0 == z0 * z1 + z1.scale(I * K1)
    assert th2 * th1 == -(th1 * th2)
    assert th1 * z0 == z0 * th1 + th1.scale(I * K1 / 2)
    assert normal_form({(1, 0): ONE}, P) == z0 * z1 + z1.scale(I * K1)


def test_mul_examples():
    P = chiral()
    z0, z1, th1, th2 = (P.gen(n) for n in ("z0", "z1", "th1", "th2"))
    assert mul(z0, z1).render() == "z0*z1"
    assert mul(z1, z0) == z0 * z1 + z1.scale(I * K1)
    # brute force: the four products of the expansion, each normal-ordered by hand
    s = th1 + th2
    expanded = {("th1", "th1"): 0, ("th1", "th2"): 1, ("th2", "th1"): -1, ("th2", "th2"): 0}
    assert sum(expanded.values()) == 0
    assert mul(s, s).is_zero()


def test_mixed_presentation_rejected():
    with pytest.raises(MixedPresentation):
        mul(chiral().gen("z0"), chiral().gen("z0"))


def test_element_parity():
    P = chiral()
    z0, th1, th2 = P.gen("z0"), P.gen("th1"), P.gen("th2")
    assert element_parity(th1 * th2) == "even"
    assert element_parity(z0 * th1) == "odd"
    assert element_parity(z0 + th1) == "mixed"
    assert element_parity(P.zero()) == "zero"


def test_confluence():
    assert local_confluence_check(chiral()).ok
    assert local_confluence_check(graded_algebra("abelian", [(f"z{i}", 0) for i in range(4)])).ok


def test_dropping_the_tail_stays_confluent():
    # without the tail the relations still close into a Lie algebra
    def drop(r):
        r[("z1", "z0")] = {("z0", "z1"): ONE}

    assert local_confluence_check(chiral(drop)).ok


def test_corrupted_rules_are_detected():
    def corrupt(r):
        r[("z2", "z1")] = {("z1", "z2"): ONE, ("z0",): ONE}

    rep = local_confluence_check(chiral(corrupt), report_limit=2)
    assert not rep.ok
    assert rep.mismatch_count == 4
    assert len(rep.mismatches) == 2
    first = rep.mismatches[0]
    assert first["overlap"] == "z2*z1*z0"
    assert first["difference"] == "-(2*i)*k^-1*z0"


P_CHIRAL = chiral()
letters = st.lists(st.integers(0, len(P_CHIRAL) - 1), max_size=4).map(tuple)
coeffs = st.sampled_from([ONE, -ONE, I, K1, 2 * I * K1, ONE / 2])
raw_sums = st.dictionaries(letters, coeffs, max_size=3)


@settings(max_examples=60, deadline=None)
@given(raw_sums)
def test_normal_form_idempotent(raw):
    e = normal_form(raw, P_CHIRAL)
    assert normal_form(e) == e
    assert all(P_CHIRAL.is_normal(w) for w in e.terms)


@settings(max_examples=40, deadline=None)
@given(raw_sums, raw_sums, raw_sums)
def test_mul_associative(a, b, c):
    a, b, c = (normal_form(x, P_CHIRAL) for x in (a, b, c))
    assert (a * b) * c == a * (b * c)


@settings(max_examples=40, deadline=None)
@given(letters, letters)
def test_graded_commutativity_without_tails(u, v):
    P = graded_algebra("free", [(f"z{m}", 0) for m in range(4)] + [("th1", 1), ("th2", 1)])
    a, b = P.word_element(u), P.word_element(v)
    sign = -1 if P.word_parity(u) and P.word_parity(v) else 1
    assert a * b == (b * a).scale(Scalar.const(sign))


def test_normal_words_enumeration():
    P = chiral()
    words = list(P.normal_words(2))
    assert all(P.is_normal(w) for w in words)
    # 4 even commuting letters and 2 anticommuting odd ones: 1 + 6 + (10 + 8 + 1) words of degree <= 2
    assert sum(1 for w in words if len(w) == 2) == len(list(itertools.combinations_with_replacement(range(4), 2))) + 8 + 1
