import pytest

from superbicross.hopf import (
    HopfStructure,
    HopfTableError,
    antipode,
    coproduct,
    counit,
    structure_tables,
    verify_antipode,
    verify_bialgebra,
)
from superbicross.scalars import ONE, ZERO
from superbicross.tensor import graded_flip, tensor


def test_coproduct_examples(superspace, lorentz):
    S = superspace.algebra
    one, th1, th2 = S.one(), S.gen("th1"), S.gen("th2")
    assert coproduct(superspace, th1) == tensor(th1, one) + tensor(one, th1)
    # brute-force expansion of (th1 (x) 1 + 1 (x) th1)(th2 (x) 1 + 1 (x) th2); one odd crossing
    expected = tensor(th1 * th2, one) + tensor(th1, th2) - tensor(th2, th1) + tensor(one, th1 * th2)
    assert coproduct(superspace, th1 * th2) == expected
    L = lorentz.algebra
    for a in (1, 2):
        for b in (1, 2):
            d = sum((tensor(L.gen(f"A{a}{c}"), L.gen(f"A{c}{b}")) for c in (1, 2)), start=tensor(L.zero(), L.zero()))
            assert coproduct(lorentz, L.gen(f"A{a}{b}")) == d


def test_counit_examples(superspace, lorentz):
    S, L = superspace.algebra, lorentz.algebra
    for a in (1, 2):
        for b in (1, 2):
            assert counit(lorentz, L.gen(f"A{a}{b}")) == (ONE if a == b else ZERO)
    assert counit(superspace, S.gen("th1")) == ZERO
    assert counit(superspace, S.gen("z0") * S.gen("z1")) == ZERO
    assert counit(superspace, S.one()) == ONE


def test_antipode_examples(superspace, lorentz):
    S = superspace.algebra
    th1, th2 = S.gen("th1"), S.gen("th2")
    assert antipode(superspace, th1) == -th1
    assert antipode(superspace, th1 * th2) == th1 * th2
    L = lorentz.algebra
    A = {(a, b): L.gen(f"A{a}{b}") for a in (1, 2) for b in (1, 2)}
    adj = {(1, 1): A[2, 2], (1, 2): -A[1, 2], (2, 1): -A[2, 1], (2, 2): A[1, 1]}
    for key, inv in adj.items():
        assert antipode(lorentz, A[key]) == inv
    for a in (1, 2):
        for b in (1, 2):
            s = sum((antipode(lorentz, A[a, c]) * A[c, b] for c in (1, 2)), start=L.zero())
            assert s == (L.one() if a == b else L.zero())


def test_antipode_coproduct_identity(superspace):
    S = superspace.algebra
    x = S.gen("th1") * S.gen("th2")
    d = coproduct(superspace, x)
    ss = sum(
        (tensor(antipode(superspace, S.word_element(u)), antipode(superspace, S.word_element(v))).scale(c) for (u, v), c in d.terms.items()),
        start=tensor(S.zero(), S.zero()),
    )
    assert ss == graded_flip(coproduct(superspace, antipode(superspace, x)))


@pytest.mark.parametrize("which,degree,samples", [("superspace", 3, 50), ("lorentz", 2, 25)])
def test_bundled_structures_verify(request, which, degree, samples):
    h = request.getfixturevalue(which)
    rep = verify_bialgebra(h, degree=degree, samples=samples)
    rep.extend(verify_antipode(h, degree=degree, samples=samples))
    assert rep.ok, [r.id for r in rep.failed]
    assert len(rep.records) == 13


def test_generator_parity_and_counit_antipode(superspace, lorentz):
    for h in (superspace, lorentz):
        P = h.algebra
        for g in P.names:
            x = P.gen(g)
            assert counit(h, antipode(h, x)) == counit(h, x)
            assert all(P.word_parity(w) == P.parities[P.index[g]] for w in antipode(h, x).terms)


def _tables(h):
    P = h.algebra
    co = {g: h.coproduct_table[P.index[g]] for g in P.names}
    eps = {g: h.counit_table[P.index[g]] for g in P.names}
    s = {g: h.antipode_table[P.index[g]] for g in P.names}
    return co, eps, s


def test_mutated_coproduct_breaks_counit(superspace):
    S = superspace.algebra
    co, eps, s = _tables(superspace)
    co["th1"] = tensor(S.gen("th1"), S.one())
    bad = HopfStructure(S, co, eps, s, name="bad")
    rep = verify_bialgebra(bad, degree=1, samples=10)
    failed = {r.id for r in rep.failed}
    assert "hopf.counit_left[bad]" in failed
    rec = next(r for r in rep.failed if r.id == "hopf.counit_left[bad]")
    assert rec.detail["failures"]


def test_table_validation(superspace):
    S = superspace.algebra
    co, eps, s = _tables(superspace)
    with pytest.raises(HopfTableError):
        HopfStructure(S, co, {**eps, "th1": ONE}, s)
    with pytest.raises(HopfTableError):
        HopfStructure(S, {**co, "th1": tensor(S.gen("z0"), S.one())}, eps, s)
    with pytest.raises(HopfTableError):
        HopfStructure(S, co, eps, {**s, "z0": S.gen("th1")})
    missing = dict(co)
    del missing["z0"]
    with pytest.raises(HopfTableError):
        HopfStructure(S, missing, eps, s)


def test_structure_tables_shape(superspace):
    t = structure_tables(superspace)
    assert set(t) == {"generators", "rules", "coproduct", "counit", "antipode"}
    assert t["counit"]["th1"] == "0"
