import random

import pytest

from superbicross.bicross import (
    BicrossData,
    BicrossError,
    CompatibilityFailed,
    act,
    build_bicrossproduct,
    check_all,
    check_comodule_coalgebra,
    check_compatibility,
    check_module_algebra,
    coact,
    verify_built,
)
from superbicross.hopf import structure_tables
from superbicross.scalars import I, ONE
from superbicross.tensor import apply_factorwise, tensor


@pytest.fixture(scope="module")
def kappa_built(kappa_data):
    return build_bicrossproduct(kappa_data, check=False)


@pytest.fixture(scope="module")
def classical_built(classical):
    return build_bicrossproduct(classical, degree=1, samples=10)


def test_action_unit_laws(kappa_data):
    P1, P2 = kappa_data.P1, kappa_data.P2
    a = P2.gen("A11") * P2.gen("tb1")
    assert act(kappa_data, a, P1.one()) == a
    assert act(kappa_data, P2.one(), P1.gen("z0")).is_zero()
    assert act(kappa_data, P2.one(), P1.one()) == P2.one()


def test_coaction_examples(kappa_data):
    P1, P2 = kappa_data.P1, kappa_data.P2
    assert coact(kappa_data, P1.one()) == tensor(P2.one(), P1.one())
    for a in (1, 2):
        # sum over b of (A^-1)_{b a} (x) th_b, with A^-1 = S(A)
        expected = sum(
            (tensor(kappa_data.h2.antipode(P2.gen(f"A{b}{a}")), P1.gen(f"th{b}")) for b in (1, 2)),
            start=tensor(P2.zero(), P1.zero()),
        )
        assert coact(kappa_data, P1.gen(f"th{a}")) == expected
    for m in range(4):
        z = P1.gen(f"z{m}")
        reduced = apply_factorwise(coact(kappa_data, z), 1, kappa_data.h2.eps_map)
        assert reduced == tensor(P2.one(), z)


def test_classical_action_is_lorentz_rotation(classical):
    P1, P2 = classical.P1, classical.P2
    assert act(classical, P2.gen("P0"), P1.gen("M01")) == P2.gen("P1").scale(-I)
    assert act(classical, P2.gen("P2"), P1.gen("M01")).is_zero()


def test_classical_passes(classical):
    rep = check_all(classical, degree=2, samples=20)
    assert rep.ok, [r.id for r in rep.failed]


def test_kappa_module_comodule_pass(kappa_data):
    rep = check_module_algebra(kappa_data, degree=1, samples=10)
    rep.extend(check_comodule_coalgebra(kappa_data, degree=1, samples=10))
    rep.extend(check_compatibility(kappa_data, degree=1, samples=5))
    assert rep.ok, [r.id for r in rep.failed]


def test_dropping_koszul_sign_is_detected(kappa_data):
    bad = kappa_data.with_tables(koszul_action=False)
    rep = check_module_algebra(bad, degree=1, samples=10)
    failed = {r.id.split("[")[0] for r in rep.failed}
    assert "bicross.module_algebra" in failed


def test_wrong_coaction_order_is_detected(kappa_data):
    P1, P2 = kappa_data.P1, kappa_data.P2
    # A_{ab} in place of (A^-1)_{ba} in the odd coaction
    wrong = {f"th{a}": sum((tensor(P2.gen(f"A{a}{b}"), P1.gen(f"th{b}")) for b in (1, 2)), start=tensor(P2.zero(), P1.zero())) for a in (1, 2)}
    rep = check_comodule_coalgebra(kappa_data.with_tables(coaction=wrong), degree=1, samples=5)
    assert not rep.ok


def test_table_validation(classical):
    P1, P2 = classical.P1, classical.P2
    action = classical.action_table()
    coaction = classical.coaction_table()
    missing = dict(action)
    missing.pop(("P0", "M01"))
    with pytest.raises(BicrossError):
        BicrossData(classical.h1, classical.h2, missing, coaction)
    with pytest.raises(BicrossError):
        BicrossData(classical.h1, classical.h2, action, {k: v for k, v in coaction.items() if k != "M01"})


def test_build_refuses_incompatible_data(classical):
    bad = classical.with_tables(action={("P0", "M01"): classical.P2.gen("P1").scale(I)})
    with pytest.raises(CompatibilityFailed) as exc:
        build_bicrossproduct(bad, degree=1, samples=5)
    assert not exc.value.report.ok
    forced = build_bicrossproduct(bad, check=False)
    assert not verify_built(forced, degree=2, samples=20).ok


def test_crossing_relation_classical(classical_built):
    big = classical_built.algebra
    P0, M01, P1 = big.gen("P0"), big.gen("M01"), big.gen("P1")
    assert P0 * M01 == M01 * P0 + P1.scale(-I)


def test_crossing_relation_kappa(kappa_built, kappa_data):
    big = kappa_built.algebra
    for m in range(4):
        z = big.gen(f"z{m}")
        A = big.gen("A11")
        acted = kappa_built.embed2(act(kappa_data, kappa_data.P2.gen("A11"), kappa_data.P1.gen(f"z{m}")))
        assert A * z == z * A + acted


def test_built_counit_on_pairs(kappa_built):
    big = kappa_built.algebra
    rng = random.Random(5)
    n1 = kappa_built.n1
    for _ in range(40):
        h = rng.randrange(n1)
        a = rng.randrange(n1, len(big))
        w = (h, a)
        assert kappa_built.counit_word(w) == kappa_built.counit_word((h,)) * kappa_built.counit_word((a,))


def test_classical_built_verifies(classical_built):
    rep = verify_built(classical_built, degree=3, samples=30)
    assert rep.ok, [r.id for r in rep.failed]


def test_trivial_bicross_is_tensor_product(superspace, lorentz):
    P1, P2 = superspace.algebra, lorentz.algebra
    action = {(a, h): P2.zero() for a in P2.names for h in P1.names}
    coaction = {h: tensor(P2.one(), P1.gen(h)) for h in P1.names}
    d = BicrossData(superspace, lorentz, action, coaction, name="trivial")
    assert check_all(d, degree=1, samples=5).ok
    b = build_bicrossproduct(d, check=False)
    big = b.algebra
    for h in P1.names:
        for a in P2.names:
            x, y = big.gen(h), big.gen(a)
            sign = -1 if P1.parities[P1.index[h]] and P2.parities[P2.index[a]] else 1
            assert y * x == (x * y).scale(ONE * sign)
    t = structure_tables(b)
    for src in (superspace, lorentz):
        s = structure_tables(src)
        for g in src.algebra.names:
            assert t["coproduct"][g] == s["coproduct"][g]
            assert t["counit"][g] == s["counit"][g]
            assert t["antipode"][g] == s["antipode"][g]
