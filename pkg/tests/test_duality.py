import pytest
from helpers import expr_corpus, exprs, supernaturals
from hypothesis import given

from solenoids import duality as du
from solenoids.supernat import INF, Supernatural, is_universal

U = Supernatural.universal()
S2 = Supernatural.of({2: INF})


def test_dual_examples():
    assert du.dual(du.T()) == du.Z()
    assert du.dual(du.Solenoid(U)) == du.Q()
    assert du.dual(du.Power(du.T(), "product")) == du.Power(du.Z(), "sum")
    assert du.dual(du.Q()) == du.Solenoid(U)
    assert du.dual(du.Prufer(3)) == du.PadicInt(3)
    assert du.dual(du.Cyclic(6)) == du.Cyclic(6)


def test_dual_errors():
    with pytest.raises(du.NonCompactProduct):
        du.dual(du.Power(du.Z(), "product"))
    with pytest.raises(du.NonDiscreteSum):
        du.dual(du.Power(du.T(), "sum"))
    assert not du.dual_defined(du.Power(du.Q(), "product"))


@pytest.mark.parametrize("e", [du.Z(), du.Solenoid(S2), du.DirectSum((du.T(), du.Cyclic(4)))])
def test_double_dual_examples(e):
    assert du.double_dual_is_identity(e)


def test_predicate_examples():
    p = du.predicates(du.T())
    assert (p.compact, p.connected, p.metrizable, p.divisible) == (True,) * 4
    assert not (p.torsion_free or p.discrete or p.countable)
    p = du.predicates(du.Solenoid(S2))
    assert p.compact and p.connected and p.metrizable and p.divisible and not p.torsion_free
    assert du.predicates(du.Solenoid(U)).torsion_free


@pytest.mark.parametrize("e", [du.T(), du.PadicInt(3), du.Power(du.T(), "product")])
def test_law_examples(e):
    rep = du.check_duality_laws(e)
    assert rep.compact_metrizable and rep.connected_torsion_free and rep.torsion_free_divisible


def test_indecomposable_examples():
    assert du.is_indecomposable(du.Solenoid(U))
    assert not du.is_indecomposable(du.DirectSum((du.Solenoid(U), du.Solenoid(U))))
    assert not du.is_indecomposable(du.T())
    assert du.is_indecomposable(du.DirectSum((du.Solenoid(S2), du.Cyclic(1))))
    with pytest.raises(du.NotAContinuum):
        du.is_indecomposable(du.Z())


def test_characterization_examples():
    assert du.characterize_universal_solenoid(du.Solenoid(U))[0]
    assert du.characterize_universal_solenoid(du.dual(du.Q()))[0]
    ok, why = du.characterize_universal_solenoid(du.Solenoid(S2))
    assert not ok and [k for k, v in why.items() if not v] == ["torsion_free"]
    ok, why = du.characterize_universal_solenoid(du.T())
    assert not ok and {k for k, v in why.items() if not v} == {"torsion_free", "indecomposable"}
    ok, why = du.characterize_universal_solenoid(du.Power(du.T(), "product"))
    assert not ok and {k for k, v in why.items() if not v} == {"torsion_free", "indecomposable"}
    ok, why = du.characterize_universal_solenoid(du.DirectSum((du.Solenoid(U), du.Solenoid(U))))
    assert not ok and [k for k, v in why.items() if not v] == ["indecomposable"]


def test_corpus_laws():
    n = 0
    for e in expr_corpus(1500, seed=1):
        if not du.dual_defined(e):
            continue
        n += 1
        assert du.double_dual_is_identity(e), e
        assert du.check_duality_laws(e).passed, e
    assert n >= 1000


@given(exprs)
def test_laws_property(e):
    if du.dual_defined(e):
        assert du.double_dual_is_identity(e)
        assert du.check_duality_laws(e).passed
        assert du.check_duality_laws(du.dual(e)).passed


@given(exprs)
def test_compact_and_discrete_means_finite(e):
    p = du.predicates(e)
    if p.compact and p.discrete:
        assert du.normalize(e) == du.TRIVIAL or _finite(du.normalize(e))


def _finite(e) -> bool:
    if isinstance(e, du.Cyclic):
        return True
    if isinstance(e, du.DirectSum):
        return all(_finite(x) for x in e.items)
    return False


@given(exprs)
def test_characterization_is_exact(e):
    ok, _ = du.characterize_universal_solenoid(e)
    assert ok == (du.normalize(e) == du.Solenoid(U))


@given(supernaturals)
def test_universality_links(S):
    assert du.predicates(du.QWithDenominators(S)).divisible == is_universal(S)
    assert du.predicates(du.Solenoid(S)).torsion_free == is_universal(S)


@given(exprs)
def test_json_round_trip(e):
    assert du.from_json(e.to_json()) == e


def test_normalize_flattens_and_sorts():
    a = du.DirectSum((du.T(), du.DirectSum((du.Cyclic(1), du.Z()))))
    b = du.DirectSum((du.Z(), du.T()))
    assert du.normalize(a) == du.normalize(b)
    assert du.normalize(du.Power(du.Cyclic(1), "product")) == du.TRIVIAL
