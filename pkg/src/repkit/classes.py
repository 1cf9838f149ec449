"""Catalogs, formula pools, the star maps between them, and the law suites.

A *catalog* is a finite named family of representations standing in for a
class, and a *pool* is a finite named family of formulas standing in for the
full formula language.  The two star maps

    ``star_of_formulas(T)``  = reps satisfying every formula of T,
    ``star_of_class(C)``     = pool formulas holding in every rep of C,

form a Galois connection between them, and the suites in this module verify
its laws together with the three structural laws of action-type formula
classes — saturation (membership is insensitive to dividing out the kernel
of the action), the hereditary value equation over subgroups, and locality
of values in the y-support — plus closure of catalogs under
subrepresentations, quotients, finite products and principal ultraproducts.

Every suite is deterministic: randomness is drawn from per-item seed strings
``"{seed}:{subject}:{index}"`` that are written into the report, and reports
render as line-oriented text (one PASS/FAIL record per check) followed by a
``# summary`` count block, byte-stable across runs.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator

from repkit.algebra import (
    DEFAULT_SUBGROUP_GUARD,
    FiniteGroup,
    Representation,
    _additive_subgroups,
    _presented_submodule,
    direct_product,
    enumerate_congruences,
    faithful_quotient,
    filtered_product,
    principal_ultrafilter,
    quotient,
    restrict,
    subgroups,
    validate_representation,
)
from repkit.errors import GuardExceeded, ModulusMismatch, NotActionType
from repkit.formulas import (
    ActionEq,
    And,
    ExistsX,
    ExistsY,
    Formula,
    GroupEq,
    Not,
    Or,
    dimensions,
    format_formula,
    is_action_type,
    random_formula,
    y_support,
)
from repkit.free import eval_module_term, eval_word
from repkit.semantics import (
    DEFAULT_MAX_POINTS,
    HomSpace,
    ValSet,
    check_support_invariance,
    exists_x,
    exists_y,
    fiber,
    frozen_val,
    holds,
    val,
)

__all__ = [
    "Catalog",
    "FormulaSet",
    "Record",
    "Report",
    "SuiteConfig",
    "action_type_law_suite",
    "check_hereditary_equation",
    "check_right_hereditary",
    "check_saturated",
    "closure_check",
    "find_isomorphism",
    "formula_modulus",
    "frozen_equivalence_suite",
    "galois_law_suite",
    "holds_all",
    "layer",
    "quantifier_axiom_suite",
    "run_all_suites",
    "star_of_class",
    "star_of_formulas",
    "subrepresentation",
    "subrepresentations",
    "val_homomorphism_suite",
]


# ---------------------------------------------------------------------------
# catalogs and pools


@dataclass(frozen=True)
class Catalog:
    """Named representations; names are unique and order is significant."""

    entries: tuple[tuple[str, Representation], ...]

    @staticmethod
    def create(pairs: Iterable[tuple[str, Representation]]) -> "Catalog":
        entries = tuple((str(name), rep) for name, rep in pairs)
        names = [name for name, _ in entries]
        if len(set(names)) != len(names):
            raise ValueError("catalog names must be unique")
        for name, rep in entries:
            validate_representation(rep.module, rep.group, rep.action)
        return Catalog(entries)

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def get(self, name: str) -> Representation:
        for entry_name, rep in self.entries:
            if entry_name == name:
                return rep
        raise KeyError(name)

    def subset(self, names: Iterable[str]) -> "Catalog":
        wanted = set(names)
        return Catalog(tuple(e for e in self.entries if e[0] in wanted))

    def __iter__(self) -> Iterator[tuple[str, Representation]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class FormulaSet:
    """Named formulas, typically a parsed ``.fml`` batch."""

    entries: tuple[tuple[str, Formula], ...]

    @staticmethod
    def create(pairs: Iterable[tuple[str, Formula]]) -> "FormulaSet":
        entries = tuple((str(name), f) for name, f in pairs)
        names = [name for name, _ in entries]
        if len(set(names)) != len(names):
            raise ValueError("formula names must be unique")
        return FormulaSet(entries)

    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.entries)

    def subset(self, names: Iterable[str]) -> "FormulaSet":
        wanted = set(names)
        return FormulaSet(tuple(e for e in self.entries if e[0] in wanted))

    def __iter__(self) -> Iterator[tuple[str, Formula]]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)


def formula_modulus(f: Formula) -> int | None:
    """The coefficient modulus of the formula's module equalities, or None
    for formulas built from group equalities alone (those evaluate over any
    representation)."""
    if isinstance(f, ActionEq):
        return f.term.modulus
    if isinstance(f, GroupEq):
        return None
    if isinstance(f, (Or, And)):
        left = formula_modulus(f.left)
        return left if left is not None else formula_modulus(f.right)
    if isinstance(f, Not):
        return formula_modulus(f.child)
    if isinstance(f, (ExistsX, ExistsY)):
        return formula_modulus(f.child)
    raise TypeError(f"not a formula: {f!r}")


def _check_modulus(f: Formula, rep: Representation) -> None:
    fm = formula_modulus(f)
    if fm is not None and fm != rep.module.ring.modulus:
        raise ModulusMismatch(
            f"formula over Z/{fm} evaluated against a representation over "
            f"Z/{rep.module.ring.modulus}")


def holds_all(
    formulas: Iterable[Formula],
    rep: Representation,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
) -> tuple[bool, int | None]:
    """Whether every formula holds; on failure also the index of the first
    one that does not."""
    for i, f in enumerate(formulas):
        _check_modulus(f, rep)
        if not holds(f, rep, max_points=max_points):
            return False, i
    return True, None


def star_of_formulas(
    pool: FormulaSet,
    catalog: Catalog,
    *,
    mode: str = "strict",
    max_points: int = DEFAULT_MAX_POINTS,
) -> Catalog:
    """The sub-catalog of representations in which every pool formula holds.

    In permissive mode a representation whose evaluation trips a guard or a
    modulus mismatch is skipped (left out of the result); strict mode raises.
    """
    kept = []
    for name, rep in catalog:
        try:
            ok, _ = holds_all((f for _, f in pool), rep, max_points=max_points)
        except (GuardExceeded, ModulusMismatch):
            if mode == "strict":
                raise
            continue
        if ok:
            kept.append((name, rep))
    return Catalog(tuple(kept))


def star_of_class(
    catalog: Catalog,
    pool: FormulaSet,
    *,
    mode: str = "strict",
    max_points: int = DEFAULT_MAX_POINTS,
) -> FormulaSet:
    """The pool formulas holding in every representation of the catalog."""
    kept = []
    for name, f in pool:
        try:
            ok = all(
                (_check_modulus(f, rep) or holds(f, rep, max_points=max_points))
                for _, rep in catalog)
        except (GuardExceeded, ModulusMismatch):
            if mode == "strict":
                raise
            continue
        if ok:
            kept.append((name, f))
    return FormulaSet(tuple(kept))


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class Record:
    """One verdict.  ``witness`` must be a single whitespace-free token so
    the rendered line stays machine-splittable."""

    check: str
    subject: str
    index: int
    seed: str
    ok: bool
    witness: str | None = None

    def line(self) -> str:
        head = "PASS" if self.ok else "FAIL"
        text = f"{head} {self.check} rep={self.subject} formula={self.index} seed={self.seed}"
        if not self.ok and self.witness is not None:
            text += f" witness={self.witness}"
        return text


@dataclass
class Report:
    records: list[Record] = field(default_factory=list)

    def add(self, record: Record) -> None:
        self.records.append(record)

    def extend(self, other: "Report") -> None:
        self.records.extend(other.records)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def failures(self) -> list[Record]:
        return [r for r in self.records if not r.ok]

    def counts(self) -> dict[str, tuple[int, int]]:
        out: dict[str, tuple[int, int]] = {}
        for r in self.records:
            passed, failed = out.get(r.check, (0, 0))
            out[r.check] = (passed + r.ok, failed + (not r.ok))
        return out

    def text(self) -> str:
        lines = [r.line() for r in self.records]
        lines.append("# summary")
        total_pass = total_fail = 0
        for check, (passed, failed) in self.counts().items():
            lines.append(f"# check {check} pass={passed} fail={failed}")
            total_pass += passed
            total_fail += failed
        lines.append(f"# total pass={total_pass} fail={total_fail}")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# saturation


def _require_action_type(f: Formula) -> None:
    if not is_action_type(f):
        raise NotActionType(f"not an action-type formula: {format_formula(f)}")


def _y_index_map(m: int, src_order: int, dst_order: int, element_map) -> list[int]:
    """Mixed-radix transport of y-parts: digit-by-digit image under
    ``element_map`` (y1 is the fastest digit on both sides)."""
    out = []
    for y in range(src_order**m):
        t, image, scale = y, 0, 1
        for _ in range(m):
            image += element_map[t % src_order] * scale
            t //= src_order
            scale *= dst_order
        out.append(image)
    return out


def _slices_agree(
    bits_a: int, bits_b: int, block: int, y_map: list[int]
) -> tuple[bool, int | None]:
    """Compare y-slice ``y`` of ``bits_a`` with slice ``y_map[y]`` of
    ``bits_b``; on mismatch return the offending point index on the a-side."""
    mask = (1 << block) - 1
    for y, y_image in enumerate(y_map):
        here = (bits_a >> (y * block)) & mask
        there = (bits_b >> (y_image * block)) & mask
        if here != there:
            diff = here ^ there
            return False, y * block + (diff & -diff).bit_length() - 1
    return True, None


def _pointwise_saturation(
    u: Formula,
    rep: Representation,
    bar: Representation,
    beta0,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
) -> tuple[bool, str | None]:
    """The point-level content of saturation: a point satisfies ``u`` in
    (V, G) exactly when its image under the kernel projection satisfies
    ``u`` in (V, Ḡ).  Since every point of the (V, Ḡ)-space is such an
    image, this is the full two-way correspondence.  Also cross-checks the
    formula-level verdicts.  Returns ``(ok, witness)``."""
    _require_action_type(u)
    n, m = dimensions(u)
    vs = val(u, rep, n, m, max_points=max_points)
    vs_bar = val(u, bar, n, m, max_points=max_points)
    y_map = _y_index_map(m, rep.group.order, bar.group.order, beta0)
    ok, point = _slices_agree(vs.bits, vs_bar.bits, vs.space.block, y_map)
    if not ok:
        return False, f"point:{point}"
    if vs.is_full != vs_bar.is_full:
        return False, "holds-verdicts-differ"
    return True, None


def check_saturated(
    pool: FormulaSet,
    catalog: Catalog,
    *,
    allow_non_action: bool = False,
    max_points: int = DEFAULT_MAX_POINTS,
) -> Report:
    """Per representation: the pool holds in (V, G) iff it holds in the
    faithful quotient (V, Ḡ).

    The equivalence is guaranteed for action-type formulas; other formulas
    are rejected unless ``allow_non_action`` is set, which is how the
    negative control demonstrating the necessity of the hypothesis runs.
    """
    if not allow_non_action:
        for _, f in pool:
            _require_action_type(f)
    report = Report()
    for name, rep in catalog:
        bar, _ = faithful_quotient(rep)
        ok_full, _ = holds_all((f for _, f in pool), rep, max_points=max_points)
        ok_bar, _ = holds_all((f for _, f in pool), bar, max_points=max_points)
        witness = None
        if ok_full != ok_bar:
            for fname, f in pool:
                if holds(f, rep, max_points=max_points) != holds(f, bar, max_points=max_points):
                    witness = f"formula:{fname}"
                    break
        report.add(Record("saturation", name, 0, "-", ok_full == ok_bar, witness))
    return report


# ---------------------------------------------------------------------------
# heredity


def check_hereditary_equation(
    u: Formula,
    rep: Representation,
    *,
    max_subgroup_order: int = DEFAULT_SUBGROUP_GUARD,
    max_points: int = DEFAULT_MAX_POINTS,
) -> tuple[bool, str | None]:
    """For every subgroup H of G: the value of ``u`` over (V, H) equals the
    value over (V, G) cut down to points whose y-coordinates lie in H, under
    the canonical embedding of the smaller hom-space."""
    _require_action_type(u)
    n, m = dimensions(u)
    vs = val(u, rep, n, m, max_points=max_points)
    for sub in subgroups(rep.group, max_subgroup_order):
        sub_rep = restrict(rep, sub)
        vs_sub = val(u, sub_rep, n, m, max_points=max_points)
        y_map = _y_index_map(m, len(sub), rep.group.order, sub)
        ok, point = _slices_agree(vs_sub.bits, vs.bits, vs.space.block, y_map)
        if not ok:
            return False, f"subgroup:{','.join(map(str, sub))};point:{point}"
    return True, None


def check_right_hereditary(
    pool: FormulaSet,
    catalog: Catalog,
    *,
    max_subgroup_order: int = DEFAULT_SUBGROUP_GUARD,
    max_points: int = DEFAULT_MAX_POINTS,
) -> Report:
    """For each representation satisfying the whole pool, every subgroup
    restriction must satisfy it too."""
    for _, f in pool:
        _require_action_type(f)
    report = Report()
    for name, rep in catalog:
        ok_full, _ = holds_all((f for _, f in pool), rep, max_points=max_points)
        ok, witness = True, None
        if ok_full:
            for sub in subgroups(rep.group, max_subgroup_order):
                sub_ok, bad = holds_all(
                    (f for _, f in pool), restrict(rep, sub), max_points=max_points)
                if not sub_ok:
                    ok = False
                    witness = f"subgroup:{','.join(map(str, sub))};formula:{pool.entries[bad][0]}"
                    break
        report.add(Record("heredity", name, 0, "-", ok, witness))
    return report


# ---------------------------------------------------------------------------
# suites


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    formulas: int = 200
    fuzz: int = 500
    bitset_pairs: int = 1000
    frozen_triples: int = 500
    galois_rounds: int = 50
    depth: int = 4
    n_vars: int = 2
    m_vars: int = 2
    max_summands: int = 3
    max_word_len: int = 4
    max_points: int = DEFAULT_MAX_POINTS
    max_subgroup_order: int = DEFAULT_SUBGROUP_GUARD
    fault: str | None = None

    def rng(self, label: str) -> tuple[random.Random, str]:
        seed_str = f"{self.seed}:{label}"
        return random.Random(seed_str), seed_str

    def draw_formula(self, rng: random.Random, modulus: int, *, action_only: bool) -> Formula:
        return random_formula(
            rng,
            modulus,
            max_depth=self.depth,
            n_vars=self.n_vars,
            m_vars=self.m_vars,
            max_summands=self.max_summands,
            max_word_len=self.max_word_len,
            action_only=action_only,
        )


def _trivialized_action(rep: Representation) -> Representation:
    row = tuple(range(rep.module.size))
    return Representation(rep.module, rep.group, tuple(row for _ in rep.group.elements()))


_FAULTS = {"bad-quotient"}


def action_type_law_suite(catalog: Catalog, config: SuiteConfig) -> Report:
    """Random action-type formulas against every catalog entry, asserting the
    three structural laws: the pointwise saturation correspondence against
    the faithful quotient, the hereditary value equation over all subgroups,
    and value locality in the formula's y-support inside one extra
    y-dimension.

    ``config.fault = "bad-quotient"`` swaps the faithful quotient for a
    deliberately broken double (same group, action discarded); the suite is
    then expected to report saturation failures, which is the sanity check
    that it can detect violations at all.
    """
    if config.fault is not None and config.fault not in _FAULTS:
        raise ValueError(f"unknown fault {config.fault!r}; known: {sorted(_FAULTS)}")
    report = Report()
    for name, rep in catalog:
        bar, beta0 = faithful_quotient(rep)
        if config.fault == "bad-quotient":
            bar = _trivialized_action(bar)
        modulus = rep.module.ring.modulus
        for i in range(config.formulas):
            rng, seed_str = config.rng(f"{name}:{i}")
            u = config.draw_formula(rng, modulus, action_only=True)
            n, m = dimensions(u)

            ok, witness = _pointwise_saturation(u, rep, bar, beta0, max_points=config.max_points)
            report.add(Record("saturation", name, i, seed_str, ok, witness))

            ok, witness = check_hereditary_equation(
                u, rep,
                max_subgroup_order=config.max_subgroup_order,
                max_points=config.max_points)
            report.add(Record("heredity", name, i, seed_str, ok, witness))

            ok, point = check_support_invariance(
                u, rep, y_support(u), n=n, m=m + 1, max_points=config.max_points)
            report.add(Record("support", name, i, seed_str, ok,
                              None if ok else f"point:{point}"))
    return report


def quantifier_axiom_suite(catalog: Catalog, config: SuiteConfig) -> Report:
    """Random bitset pairs on each entry's (n_vars, m_vars) hom-space: both
    existential operators satisfy the three quantifier laws — empty set to
    empty set, extensivity, and the exchange law E(A & E(B)) = E(A) & E(B) —
    as exact set identities, plus idempotence."""
    report = Report()
    if not len(catalog):
        return report
    spaces = {
        name: HomSpace.create(rep, config.n_vars, config.m_vars, config.max_points)
        for name, rep in catalog
    }
    names = catalog.names()
    for i in range(config.bitset_pairs):
        name = names[i % len(names)]
        space = spaces[name]
        rng, seed_str = config.rng(f"bitsets:{name}:{i}")
        a = ValSet(space, rng.getrandbits(space.size))
        b = ValSet(space, rng.getrandbits(space.size))
        ops: list[tuple[str, Callable[[ValSet], ValSet]]] = []
        for x in range(1, space.n + 1):
            ops.append((f"x{x}", lambda s, x=x: exists_x(s, x)))
        for y in range(1, space.m + 1):
            ops.append((f"y{y}", lambda s, y=y: exists_y(s, y)))
        witness = None
        for label, op in ops:
            if not op(space.empty()).is_empty:
                witness = f"{label}:empty"
            elif not a <= op(a):
                witness = f"{label}:extensive"
            elif op(a & op(b)).bits != (op(a) & op(b)).bits:
                witness = f"{label}:exchange"
            elif op(op(a)).bits != op(a).bits:
                witness = f"{label}:idempotent"
            if witness:
                break
        report.add(Record("quantifier", name, i, seed_str, witness is None, witness))
    return report


def _reference_bits(f: Formula, space: HomSpace) -> int:
    """Evaluate ``f`` over ``space`` without the kernels or the shift-mask
    quantifier tricks: atoms pointwise through the term evaluators,
    existentials by scanning the coordinate.  This is the slow oracle the
    fast path is measured against."""
    rep = space.rep
    if isinstance(f, (ActionEq, GroupEq)):
        bits = 0
        for idx in range(space.size):
            p = space.point_at(idx)
            if isinstance(f, ActionEq):
                alpha = {i + 1: c for i, c in enumerate(p.a)}
                beta = {j + 1: c for j, c in enumerate(p.g)}
                hit = eval_module_term(f.term, alpha, beta, rep) == rep.module.zero
            else:
                beta = {j + 1: c for j, c in enumerate(p.g)}
                hit = eval_word(f.word, beta, rep.group) == rep.group.identity
            if hit:
                bits |= 1 << idx
        return bits
    if isinstance(f, Or):
        return _reference_bits(f.left, space) | _reference_bits(f.right, space)
    if isinstance(f, And):
        return _reference_bits(f.left, space) & _reference_bits(f.right, space)
    if isinstance(f, Not):
        return _reference_bits(f.child, space) ^ space._mask
    if isinstance(f, (ExistsX, ExistsY)):
        child = _reference_bits(f.child, space)
        if isinstance(f, ExistsX):
            stride, radix = space.v_size ** (f.index - 1), space.v_size
        else:
            stride, radix = space.block * space.g_size ** (f.index - 1), space.g_size
        bits = 0
        for idx in range(space.size):
            digit = (idx // stride) % radix
            base = idx - digit * stride
            if any((child >> (base + v * stride)) & 1 for v in range(radix)):
                bits |= 1 << idx
        return bits
    raise TypeError(f"not a formula: {f!r}")


def _composed_bits(f: Formula, rep: Representation, n: int, m: int, max_points: int) -> int:
    """One homomorphism step: evaluate the immediate subformulas with fresh
    top-level ``val`` calls and combine them with plain set operations."""
    if isinstance(f, Or):
        return (val(f.left, rep, n, m, max_points=max_points)
                | val(f.right, rep, n, m, max_points=max_points)).bits
    if isinstance(f, And):
        return (val(f.left, rep, n, m, max_points=max_points)
                & val(f.right, rep, n, m, max_points=max_points)).bits
    if isinstance(f, Not):
        return (~val(f.child, rep, n, m, max_points=max_points)).bits
    if isinstance(f, ExistsX):
        return exists_x(val(f.child, rep, n, m, max_points=max_points), f.index).bits
    if isinstance(f, ExistsY):
        return exists_y(val(f.child, rep, n, m, max_points=max_points), f.index).bits
    return val(f, rep, n, m, max_points=max_points).bits


def _subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, (Or, And)):
        yield from _subformulas(f.left)
        yield from _subformulas(f.right)
    elif isinstance(f, Not):
        yield from _subformulas(f.child)
    elif isinstance(f, (ExistsX, ExistsY)):
        yield from _subformulas(f.child)


_REFERENCE_EVERY = 10


def val_homomorphism_suite(catalog: Catalog, config: SuiteConfig) -> Report:
    """Random formulas per entry; at every subformula the recursive value
    must equal the set-operation composition of freshly evaluated children,
    and on a subsample the whole value is re-derived by the pointwise
    reference evaluator."""
    report = Report()
    for name, rep in catalog:
        modulus = rep.module.ring.modulus
        for i in range(config.fuzz):
            rng, seed_str = config.rng(f"fuzz:{name}:{i}")
            u = config.draw_formula(rng, modulus, action_only=False)
            n, m = dimensions(u)
            vs = val(u, rep, n, m, max_points=config.max_points)
            witness = None
            for node in _subformulas(u):
                direct = val(node, rep, n, m, max_points=config.max_points).bits
                if direct != _composed_bits(node, rep, n, m, config.max_points):
                    witness = "composition"
                    break
            if witness is None and i % _REFERENCE_EVERY == 0:
                if vs.bits != _reference_bits(u, vs.space):
                    witness = "reference"
            report.add(Record("val-homomorphism", name, i, seed_str, witness is None, witness))
    return report


def frozen_equivalence_suite(catalog: Catalog, config: SuiteConfig) -> Report:
    """Random (action-type formula, representation, y-assignment) triples:
    the one-sorted frozen evaluation equals the corresponding fiber of the
    two-sorted value, bit for bit."""
    report = Report()
    if not len(catalog):
        return report
    names = catalog.names()
    for i in range(config.frozen_triples):
        name = names[i % len(names)]
        rep = catalog.get(name)
        rng, seed_str = config.rng(f"frozen:{name}:{i}")
        u = config.draw_formula(rng, rep.module.ring.modulus, action_only=True)
        n, m = dimensions(u)
        beta = {j: rng.randrange(rep.group.order) for j in range(1, m + 1)}
        frozen = frozen_val(u, rep, beta, n, max_points=config.max_points)
        sliced = fiber(val(u, rep, n, m, max_points=config.max_points), beta)
        ok = frozen.bits == sliced.bits
        witness = None
        if not ok:
            diff = frozen.bits ^ sliced.bits
            witness = f"point:{(diff & -diff).bit_length() - 1}"
        report.add(Record("frozen", name, i, seed_str, ok, witness))
    return report


def galois_law_suite(catalog: Catalog, config: SuiteConfig) -> Report:
    """Random (pool, sub-catalog) rounds checking the Galois connection:
    both star maps are antitone and both unit laws hold.  Rounds run inside
    a single ring layer so every formula evaluates against every chosen
    representation."""
    report = Report()
    layers: dict[int, list[str]] = {}
    for name, rep in catalog:
        layers.setdefault(rep.module.ring.modulus, []).append(name)
    moduli = sorted(layers)
    if not moduli:
        return report
    for i in range(config.galois_rounds):
        modulus = moduli[i % len(moduli)]
        rng, seed_str = config.rng(f"galois:{modulus}:{i}")
        layer_cat = catalog.subset(layers[modulus])
        pool = FormulaSet.create(
            (f"u{k}", config.draw_formula(rng, modulus, action_only=False))
            for k in range(6))
        small = FormulaSet(tuple(e for e in pool if rng.random() < 0.5))
        large = FormulaSet(tuple(sorted(
            set(small.entries) | {e for e in pool.entries if rng.random() < 0.5})))
        sub = Catalog(tuple(e for e in layer_cat if rng.random() < 0.5))
        sup = Catalog(tuple(sorted(
            set(sub.entries) | {e for e in layer_cat.entries if rng.random() < 0.5})))

        witness = None
        star_small = star_of_formulas(small, layer_cat, max_points=config.max_points)
        star_large = star_of_formulas(large, layer_cat, max_points=config.max_points)
        if not set(star_large.names()) <= set(star_small.names()):
            witness = "antitone-formulas"
        if witness is None:
            pool_sub = star_of_class(sub, pool, max_points=config.max_points)
            pool_sup = star_of_class(sup, pool, max_points=config.max_points)
            if not set(pool_sup.names()) <= set(pool_sub.names()):
                witness = "antitone-class"
        if witness is None:
            back = star_of_class(star_small, pool, max_points=config.max_points)
            if not set(small.names()) <= set(back.names()):
                witness = "unit-formulas"
        if witness is None:
            forward = star_of_formulas(
                star_of_class(sub, pool, max_points=config.max_points),
                layer_cat, max_points=config.max_points)
            if not set(sub.names()) <= set(forward.names()):
                witness = "unit-class"
        report.add(Record("galois", f"mod{modulus}", i, seed_str, witness is None, witness))
    return report


def run_all_suites(catalog: Catalog, config: SuiteConfig) -> Report:
    report = Report()
    report.extend(action_type_law_suite(catalog, config))
    report.extend(quantifier_axiom_suite(catalog, config))
    report.extend(val_homomorphism_suite(catalog, config))
    report.extend(frozen_equivalence_suite(catalog, config))
    report.extend(galois_law_suite(catalog, config))
    return report


# ---------------------------------------------------------------------------
# layers and closure operators


def layer(catalog: Catalog, group: FiniteGroup) -> Catalog:
    """The entries acting through exactly this group — same Cayley table and
    identity label, not merely isomorphic."""
    return Catalog(tuple(
        (name, rep) for name, rep in catalog
        if rep.group.cayley == group.cayley and rep.group.identity == group.identity))


def subrepresentation(rep: Representation, submodule, subgroup) -> Representation:
    """The two-sorted subalgebra on an additive subset closed under a
    subgroup's action; the subset is re-presented as a product of cyclics."""
    sub_mod, to_sub, from_sub = _presented_submodule(rep.module, frozenset(submodule))
    sub_grp = restrict(rep, subgroup)
    elems = tuple(sorted(set(subgroup)))
    action = tuple(
        tuple(to_sub[rep.act(from_sub[v], g)] for v in range(sub_mod.size))
        for g in elems)
    return validate_representation(sub_mod, sub_grp.group, action)


def subrepresentations(
    rep: Representation,
    *,
    max_subgroup_order: int = DEFAULT_SUBGROUP_GUARD,
) -> list[tuple[str, Representation]]:
    """Every (invariant additive subset, subgroup) subalgebra, labeled by its
    element sets."""
    out = []
    for sub_g in subgroups(rep.group, max_subgroup_order):
        for sub_v in _additive_subgroups(rep.module):
            if all(rep.act(v, g) in sub_v for v in sub_v for g in sub_g):
                label = f"V{{{','.join(map(str, sorted(sub_v)))}}}H{{{','.join(map(str, sub_g))}}}"
                out.append((label, subrepresentation(rep, sub_v, sub_g)))
    return out


DEFAULT_ISO_GUARD = 16
DEFAULT_ULTRA_ISO_GUARD = 64


def _generating_sequence(group: FiniteGroup) -> list[int]:
    gens: list[int] = []
    known = {group.identity}
    for g in group.elements():
        if g not in known:
            gens.append(g)
            frontier = [g]
            while frontier:
                x = frontier.pop()
                for y in list(known):
                    for z in (group.mul(x, y), group.mul(y, x)):
                        if z not in known:
                            known.add(z)
                            frontier.append(z)
    return gens


def _extend_group_map(g1: FiniteGroup, g2: FiniteGroup, mapping: dict[int, int],
                      gen: int, image: int) -> dict[int, int] | None:
    """Extend a partial homomorphism (defined on a subgroup) by one generator
    image, closing under products; None on any conflict or collision."""
    new = dict(mapping)
    if gen in new:
        return new if new[gen] == image else None
    new[gen] = image
    pending = [gen]
    while pending:
        x = pending.pop()
        for y in list(new):
            for a, b in ((x, y), (y, x)):
                prod = g1.mul(a, b)
                want = g2.mul(new[a], new[b])
                have = new.get(prod)
                if have is None:
                    new[prod] = want
                    pending.append(prod)
                elif have != want:
                    return None
    if len(set(new.values())) != len(new):
        return None
    return new


def _group_isomorphisms(g1: FiniteGroup, g2: FiniteGroup) -> Iterator[tuple[int, ...]]:
    if g1.order != g2.order:
        return
    orders1 = [g1.element_order(g) for g in g1.elements()]
    orders2 = [g2.element_order(g) for g in g2.elements()]
    if sorted(orders1) != sorted(orders2):
        return
    gens = _generating_sequence(g1)

    def recurse(idx: int, mapping: dict[int, int]) -> Iterator[tuple[int, ...]]:
        if idx == len(gens):
            yield tuple(mapping[g] for g in g1.elements())
            return
        gen = gens[idx]
        for image in g2.elements():
            if orders2[image] != orders1[gen] or image in mapping.values():
                continue
            extended = _extend_group_map(g1, g2, mapping, gen, image)
            if extended is not None:
                yield from recurse(idx + 1, extended)

    yield from recurse(0, {g1.identity: g2.identity})


def _module_isomorphism(a: Representation, b: Representation,
                        beta: tuple[int, ...]) -> tuple[int, ...] | None:
    """An additive bijection compatible with the action along ``beta``.
    Additivity alone is the right module condition here: integer scalars act
    by repeated addition, so the comparison works across different ring
    moduli with the same additive structure."""
    mod_a, mod_b = a.module, b.module
    gens = []
    stride = mod_a.size
    for d in mod_a.cyclic_orders:
        stride //= d
        if d > 1:
            gens.append((stride, d))

    def compatible(alpha: dict[int, int]) -> bool:
        for v, w in alpha.items():
            for g in a.group.elements():
                img = alpha.get(a.act(v, g))
                if img is not None and img != b.act(w, beta[g]):
                    return False
        return True

    def recurse(idx: int, alpha: dict[int, int]) -> tuple[int, ...] | None:
        if idx == len(gens):
            if len(alpha) != mod_a.size or len(set(alpha.values())) != mod_a.size:
                return None
            if not compatible(alpha):
                return None
            return tuple(alpha[v] for v in mod_a.elements())
        unit, order = gens[idx]
        for image in mod_b.elements():
            if mod_b.additive_order(image) != order:
                continue
            new = dict(alpha)
            ok = True
            for v, w in list(alpha.items()):
                acc_v, acc_w = v, w
                for _ in range(order - 1):
                    acc_v = mod_a.add(acc_v, unit)
                    acc_w = mod_b.add(acc_w, image)
                    prior = new.get(acc_v)
                    if prior is None:
                        new[acc_v] = acc_w
                    elif prior != acc_w:
                        ok = False
                        break
                if not ok:
                    break
            if ok and len(set(new.values())) == len(new) and compatible(new):
                found = recurse(idx + 1, new)
                if found is not None:
                    return found
        return None

    return recurse(0, {mod_a.zero: mod_b.zero})


def find_isomorphism(
    a: Representation,
    b: Representation,
    *,
    max_size: int = DEFAULT_ULTRA_ISO_GUARD,
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """A two-sorted isomorphism ``(alpha, beta)`` with ``alpha`` an additive
    bijection of the modules, ``beta`` a group isomorphism, and
    ``alpha(v∘g) = alpha(v)∘beta(g)`` — or None.  Exhaustive search, guarded
    by ``max_size`` on both sorts."""
    if a.module.size != b.module.size or a.group.order != b.group.order:
        return None
    if max(a.module.size, a.group.order) > max_size:
        raise GuardExceeded(
            f"isomorphism search on sizes {a.sizes} exceeds guard {max_size}")
    orders_a = sorted(a.module.additive_order(v) for v in a.module.elements())
    orders_b = sorted(b.module.additive_order(v) for v in b.module.elements())
    if orders_a != orders_b:
        return None
    for beta in _group_isomorphisms(a.group, b.group):
        alpha = _module_isomorphism(a, b, beta)
        if alpha is not None:
            return alpha, beta
    return None


def closure_check(
    catalog: Catalog,
    operator: str,
    *,
    product_arity: int = 2,
    iso_guard: int = DEFAULT_ISO_GUARD,
    max_subgroup_order: int = DEFAULT_SUBGROUP_GUARD,
    congruence_guard: int = 64,
    mode: str = "strict",
) -> Report:
    """Apply one closure operator to the catalog members and report, per
    generated representation, whether it is isomorphic to some member.

    Operators: ``S`` subalgebras, ``H`` congruence quotients, ``Cfin``
    pairwise direct products, ``Cup`` principal-ultrafilter products of
    pairs (each isomorphic to a factor, so a catalog is always Cup-closed).
    A FAIL record is a closure counterexample, not an error.  In permissive
    mode candidates whose isomorphism search trips the guard are recorded
    as failures with a ``guard`` witness instead of raising.
    """
    if operator not in ("S", "H", "Cfin", "Cup"):
        raise ValueError(f"unknown closure operator {operator!r}")
    candidates: list[tuple[str, Representation]] = []
    if operator == "S":
        for name, rep in catalog:
            for label, sub in subrepresentations(rep, max_subgroup_order=max_subgroup_order):
                candidates.append((f"{name}:{label}", sub))
    elif operator == "H":
        for name, rep in catalog:
            for k, cong in enumerate(enumerate_congruences(rep, congruence_guard)):
                candidates.append((f"{name}:cong{k}", quotient(rep, cong)))
    elif operator == "Cfin":
        for arity in range(2, product_arity + 1):
            for combo in itertools.combinations_with_replacement(list(catalog), arity):
                label = "x".join(name for name, _ in combo)
                candidates.append((label, direct_product([rep for _, rep in combo])))
    else:
        entries = list(catalog)
        for i, (name_a, rep_a) in enumerate(entries):
            for name_b, rep_b in entries[i:]:
                for j in range(2):
                    product = filtered_product(
                        [rep_a, rep_b], principal_ultrafilter(j, 2))
                    candidates.append((f"{name_a}x{name_b}@{j}", product))
    report = Report()
    for index, (label, candidate) in enumerate(candidates):
        witness = None
        match = None
        for name, member in catalog:
            try:
                iso = find_isomorphism(candidate, member, max_size=iso_guard)
            except GuardExceeded:
                if mode == "strict":
                    raise
                witness = "guard"
                break
            if iso is not None:
                match = name
                break
        ok = match is not None
        if not ok and witness is None:
            witness = f"sizes:{candidate.module.size},{candidate.group.order}"
        report.add(Record(f"closure-{operator}", label, index, "-", ok,
                          None if ok else witness))
    return report
