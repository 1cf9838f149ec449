import pytest

from repkit.algebra import (
    Congruence,
    FiniteGroup,
    FiniteModule,
    FiniteRing,
    RepHomomorphism,
    congruence_violation,
    cyclic_group,
    direct_product,
    enumerate_congruences,
    faithful_quotient,
    filtered_product,
    principal_ultrafilter,
    quotient,
    restrict,
    subgroups,
    trivial_filter,
    trivial_representation,
    validate_filter,
    validate_representation,
)
from repkit.errors import AxiomViolation, GuardExceeded, NotACongruence, NotAFilter, NotASubgroup


# --- groups ---------------------------------------------------------------

def test_from_cayley_rejects_bad_tables():
    with pytest.raises(AxiomViolation) as err:
        FiniteGroup.from_cayley([[0, 1], [1, 1]])  # 1 has no inverse row
    assert err.value.axiom in ("group.identity", "group.inverse", "group.associativity")
    with pytest.raises(AxiomViolation) as err:
        FiniteGroup.from_cayley([[0, 1], [1]])
    assert err.value.axiom == "group.table"
    with pytest.raises(AxiomViolation) as err:
        FiniteGroup.from_cayley([[0, 1], [1, 5]])
    assert err.value.axiom == "group.table"


def test_from_cayley_rejects_non_associative():
    # a Latin square with two-sided identity that is not a group
    table = [
        [0, 1, 2, 3, 4],
        [1, 4, 3, 2, 0],
        [2, 3, 0, 4, 1],
        [3, 0, 4, 1, 2],
        [4, 2, 1, 0, 3],
    ]
    with pytest.raises(AxiomViolation) as err:
        FiniteGroup.from_cayley(table)
    assert err.value.axiom == "group.associativity"


def test_cyclic_group_orders():
    g = cyclic_group(6)
    assert g.identity == 0
    assert [g.element_order(i) for i in range(6)] == [1, 6, 3, 2, 3, 6]
    assert g.inv(2) == 4


# --- modules ----------------------------------------------------------------

def test_module_index_tuple_roundtrip():
    mod = FiniteModule(FiniteRing(6), (2, 3))
    for i in range(6):
        assert mod.index_of(mod.element_tuple(i)) == i
    # last coordinate fastest
    assert mod.element_tuple(0) == (0, 0)
    assert mod.element_tuple(1) == (0, 1)
    assert mod.element_tuple(3) == (1, 0)


def test_module_arithmetic_and_orders():
    mod = FiniteModule(FiniteRing(6), (2, 3))
    a, b = mod.index_of((1, 2)), mod.index_of((1, 1))
    assert mod.add(a, b) == mod.index_of((0, 0))
    assert mod.scale(4, b) == mod.index_of((0, 1))
    assert mod.additive_order(mod.index_of((1, 0))) == 2
    assert mod.additive_order(mod.index_of((1, 1))) == 6
    assert mod.neg(a) == mod.index_of((1, 1))


def test_module_orders_must_divide_modulus():
    with pytest.raises(AxiomViolation):
        FiniteModule(FiniteRing(4), (3,))
    with pytest.raises(AxiomViolation):
        FiniteModule(FiniteRing(1), (2,))


# --- the action axioms ------------------------------------------------------

def test_action_axiom_order_reports_shift_as_axiom_1():
    """a∘g = a+1 on Z/3 is compatible with nothing, but the violation
    reported is non-additivity (axiom 1), not axiom 2."""
    mod = FiniteModule(FiniteRing(3), (3,))
    with pytest.raises(AxiomViolation) as err:
        validate_representation(mod, cyclic_group(2), [[0, 1, 2], [1, 2, 0]])
    assert err.value.axiom == 1


def test_action_identity_violation_reported_first():
    mod = FiniteModule(FiniteRing(3), (3,))
    with pytest.raises(AxiomViolation) as err:
        validate_representation(mod, cyclic_group(2), [[1, 2, 0], [0, 1, 2]])
    assert err.value.axiom == 3


def test_action_compatibility_violation(r2):
    # rows individually additive (identity and doubling), but assigned to C4
    # so that g^2 should act like 4a = a and instead acts like 2a
    mod = FiniteModule(FiniteRing(3), (3,))
    with pytest.raises(AxiomViolation) as err:
        validate_representation(
            mod, cyclic_group(4), [[0, 1, 2], [0, 2, 1], [0, 2, 1], [0, 1, 2]])
    assert err.value.axiom == 2


def test_action_shape_errors():
    mod = FiniteModule(FiniteRing(2), (2,))
    with pytest.raises(AxiomViolation) as err:
        validate_representation(mod, cyclic_group(2), [[0, 1]])
    assert err.value.axiom == "action.shape"


# --- congruences and quotients ----------------------------------------------

def test_r2_has_exactly_three_congruences(r2):
    congs = enumerate_congruences(r2)
    as_sets = {(frozenset(c.submodule), frozenset(c.normal_subgroup)) for c in congs}
    assert as_sets == {
        (frozenset({0}), frozenset({0})),
        (frozenset({0, 1, 2}), frozenset({0})),
        (frozenset({0, 1, 2}), frozenset({0, 1})),
    }


def test_congruence_violation_reasons(r2):
    assert congruence_violation(r2, Congruence({0}, {0})) is None
    # {0,1} is not additively closed in Z/3
    assert congruence_violation(r2, Congruence({0, 1}, {0}))
    # C2 does not act trivially on Z/3 / {0}
    assert congruence_violation(r2, Congruence({0}, {0, 1}))


def test_quotient_by_full_congruence_is_trivial(r2):
    q = quotient(r2, Congruence({0, 1, 2}, {0, 1}))
    assert q.module.size == 1 and q.group.order == 1


def test_quotient_rejects_non_congruence(r2):
    with pytest.raises(NotACongruence):
        quotient(r2, Congruence({0}, {0, 1}))


def test_faithful_quotient_of_c4(c4):
    bar, beta0 = faithful_quotient(c4)
    assert bar.group.order == 2
    assert beta0 == (0, 1, 0, 1)
    # the quotient action agrees pointwise through beta0
    for g in range(4):
        for a in range(3):
            assert c4.act(a, g) == bar.act(a, beta0[g])


def test_faithful_quotient_of_faithful_rep_is_identity(r2):
    bar, beta0 = faithful_quotient(r2)
    assert bar.group.cayley == r2.group.cayley
    assert beta0 == (0, 1)


def test_quotient_module_re_presentation(neg4):
    # dividing Z/4 by {0, 2} leaves Z/2 with the negation collapsing
    q = quotient(neg4, Congruence({0, 2}, {0}))
    assert q.module.cyclic_orders == (2,)
    assert q.group.order == 2


# --- subgroups and restriction ----------------------------------------------

def test_subgroups_of_s3(gl2):
    subs = subgroups(gl2.group)
    assert len(subs) == 6
    assert sorted(len(s) for s in subs) == [1, 2, 2, 2, 3, 6]


def test_subgroups_guard(gl2):
    with pytest.raises(GuardExceeded):
        subgroups(gl2.group, max_order=2)


def test_restrict_keeps_relative_order(c4):
    sub = restrict(c4, (0, 2))
    assert sub.group.order == 2
    assert sub.act(1, 1) == c4.act(1, 2)
    with pytest.raises(NotASubgroup):
        restrict(c4, (0, 1))  # not closed: 1*1 = 2 missing


# --- products and filters -----------------------------------------------------

def test_direct_product_mixes_rings(r1, r2):
    prod = direct_product([r1, r2])
    assert prod.module.ring.modulus == 6
    assert prod.module.cyclic_orders == (2, 3)
    assert prod.group.order == 4
    # second factor fastest on both sorts
    assert prod.act(prod.module.index_of((1, 1)), 1) == prod.module.index_of((1, 2))


def test_validate_filter_rejections():
    with pytest.raises(NotAFilter):
        validate_filter([], 2)
    with pytest.raises(NotAFilter):
        validate_filter([set(), {0, 1}], 2)  # contains the empty set
    with pytest.raises(NotAFilter):
        validate_filter([{0}, {1}, {0, 1}], 2)  # not intersection-closed
    with pytest.raises(NotAFilter):
        validate_filter([{0}], 2)  # not superset-closed
    validate_filter([{0}, {0, 1}], 2)
    assert validate_filter(principal_ultrafilter(1, 3), 3)
    assert validate_filter(trivial_filter(4), 4)


def test_filtered_product_trivial_filter_is_plain_product(r1, r2):
    prod = direct_product([r1, r2])
    full = filtered_product([r1, r2], trivial_filter(2))
    assert full.module.cyclic_orders == prod.module.cyclic_orders
    assert full.group.cayley == prod.group.cayley
    assert full.action == prod.action


def test_filtered_product_principal_sizes(r1, r2):
    for j, factor in enumerate((r1, r2)):
        up = filtered_product([r1, r2], principal_ultrafilter(j, 2))
        assert up.module.size == factor.module.size
        assert up.group.order == factor.group.order


# --- homomorphisms ------------------------------------------------------------

def test_homomorphism_violation_detection(r2, triv3):
    ok = RepHomomorphism(r2, r2, (0, 1, 2), (0, 1))
    assert ok.violation() is None and ok.is_bijective
    # doubling the module side is additive and commutes with the action
    double = RepHomomorphism(r2, r2, (0, 2, 1), (0, 1))
    assert double.violation() is None
    # identity on sorts but between different actions: compatibility fails
    bad = RepHomomorphism(r2, triv3, (0, 1, 2), (0, 1))
    assert "compatibility" in bad.violation()


def test_trivial_representation():
    t = trivial_representation(5)
    assert t.module.size == 1 and t.group.order == 1
    assert t.act(0, 0) == 0
