import random
import re

import pytest

from repkit.algebra import (
    FiniteGroup,
    cyclic_group,
    direct_product,
    filtered_product,
    principal_ultrafilter,
    restrict,
    trivial_representation,
)
from repkit.classes import (
    Catalog,
    FormulaSet,
    Record,
    SuiteConfig,
    action_type_law_suite,
    check_hereditary_equation,
    check_right_hereditary,
    check_saturated,
    closure_check,
    find_isomorphism,
    formula_modulus,
    frozen_equivalence_suite,
    galois_law_suite,
    layer,
    quantifier_axiom_suite,
    run_all_suites,
    star_of_class,
    star_of_formulas,
    val_homomorphism_suite,
)
from repkit.errors import GuardExceeded, ModulusMismatch, NotActionType
from repkit.formulas import parse
from repkit.semantics import fiber, val

CFG = SuiteConfig(seed=3, formulas=12, fuzz=15, bitset_pairs=20, frozen_triples=15,
                  galois_rounds=6)


@pytest.fixture()
def z3_catalog(r2, triv3, c4):
    return Catalog.create([("r2", r2), ("triv3", triv3), ("c4", c4)])


# --- star maps ------------------------------------------------------------

def test_star_of_empty_pool_is_everything(z3_catalog):
    assert star_of_formulas(FormulaSet(()), z3_catalog).names() == z3_catalog.names()
    tautology = FormulaSet.create([("taut", parse("0 = 0", 3))])
    assert star_of_formulas(tautology, z3_catalog).names() == z3_catalog.names()


def test_star_selects_trivial_action(z3_catalog):
    pool = FormulaSet.create([("t", parse("x1*(y1 - 1) = 0", 3))])
    assert star_of_formulas(pool, z3_catalog).names() == ("triv3",)


def test_star_of_empty_catalog_is_whole_pool(z3_catalog):
    pool = FormulaSet.create([("t", parse("x1*(y1 - 1) = 0", 3)), ("z", parse("0 = 0", 3))])
    assert star_of_class(Catalog(()), pool).names() == ("t", "z")
    assert star_of_class(z3_catalog, pool).names() == ("z",)


def test_star_modulus_mismatch_strict_vs_permissive(r1, r2):
    mixed = Catalog.create([("r1", r1), ("r2", r2)])
    pool = FormulaSet.create([("t", parse("exists x1 (~x1*(1) = 0)", 3))])
    with pytest.raises(ModulusMismatch):
        star_of_formulas(pool, mixed)
    # permissive: r1 is skipped (wrong ring), r2 is kept (|V| > 1)
    assert star_of_formulas(pool, mixed, mode="permissive").names() == ("r2",)


def test_formula_modulus():
    assert formula_modulus(parse("x1*(1) = 0", 5)) == 5
    assert formula_modulus(parse("y1 = 1", 5)) is None
    assert formula_modulus(parse("y1 = 1 | x1*(1) = 0", 5)) == 5


# --- saturation -------------------------------------------------------------

def test_saturated_for_action_type_pool(z3_catalog):
    pool = FormulaSet.create([
        ("a", parse("x1*(y1 - 1) = 0", 3)),
        ("b", parse("exists x1 (~x1*(1) = 0)", 3)),
    ])
    report = check_saturated(pool, z3_catalog)
    assert report.ok
    assert [r.subject for r in report.records] == ["r2", "triv3", "c4"]


def test_saturation_negative_control(r1):
    """y1 = 1 distinguishes (V,G) from (V,Ḡ) when the trivial action hides a
    nontrivial group — the reason the action-type hypothesis exists."""
    pool = FormulaSet.create([("nc", parse("y1 = 1", 2))])
    catalog = Catalog.create([("r1", r1)])
    with pytest.raises(NotActionType):
        check_saturated(pool, catalog)
    report = check_saturated(pool, catalog, allow_non_action=True)
    assert not report.ok
    assert report.records[0].witness == "formula:nc"


# --- heredity -----------------------------------------------------------------

def test_hereditary_equation_on_catalog(catalog):
    rng = random.Random(41)
    from repkit.formulas import random_formula

    for name, rep in catalog:
        for _ in range(8):
            u = random_formula(rng, rep.module.ring.modulus, action_only=True)
            ok, witness = check_hereditary_equation(u, rep)
            assert ok, (name, witness)


def test_hereditary_identity_subgroup_is_identity_fiber(r2):
    u = parse("x1*(y1 - 1) = 0", 3)
    vs = val(u, r2, 1, 1)
    sub = restrict(r2, (0,))
    vs_sub = val(u, sub, 1, 1)
    assert vs_sub.bits == fiber(vs, {1: 0}).bits


def test_right_hereditary_report(z3_catalog):
    pool = FormulaSet.create([("t", parse("exists x1 (x1*(y1) = 0)", 3))])
    report = check_right_hereditary(pool, z3_catalog)
    assert report.ok
    # a rep that fails the pool is vacuously fine
    pool2 = FormulaSet.create([("t", parse("x1*(y1 - 1) = 0", 3))])
    assert check_right_hereditary(pool2, z3_catalog).ok


def test_restriction_can_gain_formulas(r2):
    # heredity is one-directional: T holds after restricting r2 to {1}
    u = parse("x1*(y1 - 1) = 0", 3)
    from repkit.semantics import holds

    assert not holds(u, r2)
    assert holds(u, restrict(r2, (0,)))


# --- the law suite -------------------------------------------------------------

def test_law_suite_clean_run(z3_catalog):
    report = action_type_law_suite(z3_catalog, CFG)
    assert report.ok
    counts = report.counts()
    assert counts["saturation"] == (36, 0)
    assert counts["heredity"] == (36, 0)
    assert counts["support"] == (36, 0)


def test_law_suite_detects_injected_fault(z3_catalog):
    bad = SuiteConfig(seed=3, formulas=12, fault="bad-quotient")
    report = action_type_law_suite(z3_catalog, bad)
    assert not report.ok
    assert all(r.check == "saturation" for r in report.failures())


def test_law_suite_rejects_unknown_fault(z3_catalog):
    with pytest.raises(ValueError):
        action_type_law_suite(z3_catalog, SuiteConfig(fault="nope"))


def test_other_suites_clean(z3_catalog):
    assert quantifier_axiom_suite(z3_catalog, CFG).ok
    assert val_homomorphism_suite(z3_catalog, CFG).ok
    assert frozen_equivalence_suite(z3_catalog, CFG).ok


def test_galois_suite_mixed_rings(catalog):
    report = galois_law_suite(catalog, CFG)
    assert report.ok
    assert len(report.records) == CFG.galois_rounds


def test_run_all_suites_aggregates(z3_catalog):
    report = run_all_suites(z3_catalog, CFG)
    expected = {"saturation", "heredity", "support", "quantifier",
                "val-homomorphism", "frozen", "galois"}
    assert set(report.counts()) == expected
    assert report.ok


# --- report format -----------------------------------------------------------------

def test_report_lines_are_machine_splittable(z3_catalog):
    report = run_all_suites(z3_catalog, CFG)
    text = report.text()
    for line in text.splitlines():
        if line.startswith("#"):
            continue
        assert re.fullmatch(
            r"(PASS|FAIL) [\w-]+ rep=\S+ formula=\d+ seed=\S+( witness=\S+)?", line)
    assert "# summary" in text
    assert text.endswith(f"# total pass={len(report.records)} fail=0\n")


def test_report_is_deterministic(z3_catalog):
    a = run_all_suites(z3_catalog, CFG).text()
    b = run_all_suites(z3_catalog, CFG).text()
    assert a == b
    c = run_all_suites(z3_catalog, SuiteConfig(seed=4, formulas=12, fuzz=15,
                                               bitset_pairs=20, frozen_triples=15,
                                               galois_rounds=6)).text()
    assert a != c


def test_failure_record_renders_witness():
    line = Record("saturation", "x", 3, "0:x:3", False, "point:7").line()
    assert line == "FAIL saturation rep=x formula=3 seed=0:x:3 witness=point:7"


# --- layers ------------------------------------------------------------------------

def test_layer_matches_exact_group(catalog):
    c2 = cyclic_group(2)
    names = set(layer(catalog, c2).names())
    assert names == {"r1", "r2", "neg_c2_z4", "zero_ring"}
    assert layer(catalog, cyclic_group(5)).names() == ()
    for name, rep in catalog:
        assert name in layer(catalog, rep.group).names()


# --- isomorphism -----------------------------------------------------------------------

def test_find_isomorphism_identity_and_relabeled(r2):
    alpha, beta = find_isomorphism(r2, r2)
    assert alpha[0] == 0 and beta[0] == 0
    # same structure with the module relabeled by doubling
    from repkit.algebra import FiniteModule, FiniteRing, validate_representation

    other = validate_representation(
        FiniteModule(FiniteRing(3), (3,)), cyclic_group(2), [[0, 1, 2], [0, 2, 1]])
    assert find_isomorphism(r2, other) is not None


def test_find_isomorphism_distinguishes(r2, triv3, r1):
    assert find_isomorphism(r2, triv3) is None  # same sizes, different action
    assert find_isomorphism(r2, r1) is None     # different sizes


def test_product_commutes_up_to_isomorphism(r1, r2):
    a = direct_product([r1, r2])
    b = direct_product([r2, r1])
    assert a.module.cyclic_orders != b.module.cyclic_orders
    assert find_isomorphism(a, b) is not None


def test_isomorphism_guard(catalog):
    big = direct_product([catalog.get("gl2_z2sq"), catalog.get("gl2_z2sq")])
    with pytest.raises(GuardExceeded):
        find_isomorphism(big, big, max_size=16)


def test_nonabelian_group_isomorphism(gl2):
    # relabel S3 by conjugation: g -> hgh^-1 is an automorphism
    g = gl2.group
    h = 0
    perm = [g.mul(g.mul(h, x), g.inv(h)) for x in g.elements()]
    cayley = [[perm.index(g.mul(perm[i], perm[j])) for j in g.elements()] for i in g.elements()]
    relabeled = FiniteGroup.from_cayley(cayley)
    action = [gl2.action[perm[i]] for i in g.elements()]
    from repkit.algebra import validate_representation

    other = validate_representation(gl2.module, relabeled, action)
    assert find_isomorphism(gl2, other) is not None


# --- closure ---------------------------------------------------------------------------

def test_trivial_catalog_is_closed(r1):
    cat = Catalog.create([("t", trivial_representation(2))])
    for op in ("S", "H", "Cfin", "Cup"):
        assert closure_check(cat, op).ok, op


def test_r2_alone_is_not_closed_under_s(r2):
    report = closure_check(Catalog.create([("r2", r2)]), "S")
    assert not report.ok
    bad = {r.subject for r in report.failures()}
    assert "r2:V{0}H{0,1}" in bad  # the trivial-module subalgebra


def test_r2_closure_under_h_finds_quotients(r2, triv3):
    report = closure_check(Catalog.create([("r2", r2)]), "H")
    # quotient by (V, G) is the one-point rep with trivial group: not r2
    assert not report.ok


def test_cup_closure_is_automatic(catalog):
    small = catalog.subset(["r1", "r2", "neg_c2_z4"])
    report = closure_check(small, "Cup")
    assert report.ok
    assert all(r.check == "closure-Cup" for r in report.records)


def test_ultraproduct_isomorphic_to_factor(catalog):
    entries = list(catalog)
    for i, (_, a) in enumerate(entries):
        for _, b in entries[i:]:
            for j, factor in enumerate((a, b)):
                up = filtered_product([a, b], principal_ultrafilter(j, 2))
                assert find_isomorphism(up, factor, max_size=64) is not None
