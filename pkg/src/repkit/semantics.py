"""Subset-valued formula evaluation over finite hom-spaces.

A hom-space for a representation ``(V, G)`` and dimensions ``(n, m)`` is the
set of assignment points ``(a_1..a_n, g_1..g_m)`` — all maps from n x-slots
into V and m y-slots into G.  Points are enumerated mixed-radix with the
x-coordinates first (x1 varying fastest) followed by the y-coordinates (y1
fastest among them), and subsets are stored as arbitrary-precision integer
bitmasks with bit ``i`` = point ``i``.

``val`` maps a formula to such a subset by structural recursion: equalities
are evaluated pointwise by the kernels, the connectives become boolean mask
operations, and the two existential quantifiers become cylindrifications
along a coordinate.  ``holds`` asks whether the value is the full space, with
dimensions defaulting to the maximal (bound or free) variable indices of the
formula.

The dump format used by the command line is the header line
``space n=<n> m=<m> |V|=<v> |G|=<g>`` followed by the bitset as lowercase hex
of length ceil(size/4), least-significant digit covering points 0..3.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Mapping

from repkit import kernels
from repkit.algebra import Representation
from repkit.errors import (
    DimensionMismatch,
    GuardExceeded,
    ModulusMismatch,
    NotActionType,
    SupportNotCovered,
    UnboundVariable,
)
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
    is_action_type,
    y_support,
)
from repkit.free import FreeWord, ModuleTerm, eval_module_term

DEFAULT_MAX_POINTS = 1 << 20


@dataclass(frozen=True)
class HomPoint:
    """One assignment: module element indices for x1..xn, group element
    indices for y1..ym."""

    a: tuple[int, ...]
    g: tuple[int, ...]


@dataclass(frozen=True)
class HomSpace:
    rep: Representation
    n: int
    m: int

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise DimensionMismatch("dimensions must be non-negative")

    @staticmethod
    def create(rep: Representation, n: int, m: int, max_points: int = DEFAULT_MAX_POINTS) -> "HomSpace":
        size = rep.module.size**n * rep.group.order**m
        if size > max_points:
            raise GuardExceeded(f"hom-space has {size} points, guard is {max_points}")
        return HomSpace(rep, n, m)

    @cached_property
    def v_size(self) -> int:
        return self.rep.module.size

    @cached_property
    def g_size(self) -> int:
        return self.rep.group.order

    @cached_property
    def block(self) -> int:
        return self.v_size**self.n

    @cached_property
    def size(self) -> int:
        return self.block * self.g_size**self.m

    @cached_property
    def _mask(self) -> int:
        return (1 << self.size) - 1

    def index_of(self, point: HomPoint) -> int:
        if len(point.a) != self.n or len(point.g) != self.m:
            raise DimensionMismatch("point arity does not match the space")
        idx = 0
        for c in reversed(point.g):
            if not 0 <= c < self.g_size:
                raise DimensionMismatch(f"group index {c} out of range")
            idx = idx * self.g_size + c
        for c in reversed(point.a):
            if not 0 <= c < self.v_size:
                raise DimensionMismatch(f"module index {c} out of range")
            idx = idx * self.v_size + c
        return idx

    def point_at(self, index: int) -> HomPoint:
        if not 0 <= index < self.size:
            raise DimensionMismatch(f"point index {index} out of range")
        a = []
        for _ in range(self.n):
            index, c = divmod(index, self.v_size)
            a.append(c)
        g = []
        for _ in range(self.m):
            index, c = divmod(index, self.g_size)
            g.append(c)
        return HomPoint(tuple(a), tuple(g))

    def points(self) -> Iterator[HomPoint]:
        for i in range(self.size):
            yield self.point_at(i)

    def full(self) -> "ValSet":
        return ValSet(self, self._mask)

    def empty(self) -> "ValSet":
        return ValSet(self, 0)

    def from_indices(self, indices) -> "ValSet":
        bits = 0
        for i in indices:
            if not 0 <= i < self.size:
                raise DimensionMismatch(f"point index {i} out of range")
            bits |= 1 << i
        return ValSet(self, bits)

    # flat tables handed to the kernels -------------------------------
    @cached_property
    def _orders_arr(self):
        return array("q", self.rep.module.cyclic_orders)

    @cached_property
    def _cayley_arr(self):
        return array("q", [x for row in self.rep.group.cayley for x in row])

    @cached_property
    def _inv_arr(self):
        return array("q", self.rep.group.inverse)

    @cached_property
    def _action_arr(self):
        return array("q", [x for row in self.rep.action for x in row])


@dataclass(frozen=True)
class ValSet:
    """A subset of a hom-space as an integer bitmask."""

    space: HomSpace
    bits: int

    def _compat(self, other: "ValSet") -> None:
        if self.space != other.space:
            raise DimensionMismatch("operands live in different hom-spaces")

    def __or__(self, other: "ValSet") -> "ValSet":
        self._compat(other)
        return ValSet(self.space, self.bits | other.bits)

    def __and__(self, other: "ValSet") -> "ValSet":
        self._compat(other)
        return ValSet(self.space, self.bits & other.bits)

    def __invert__(self) -> "ValSet":
        return ValSet(self.space, self.bits ^ self.space._mask)

    def __le__(self, other: "ValSet") -> bool:
        self._compat(other)
        return self.bits | other.bits == other.bits

    def __contains__(self, point) -> bool:
        index = point if isinstance(point, int) else self.space.index_of(point)
        return (self.bits >> index) & 1 == 1

    def count(self) -> int:
        return self.bits.bit_count()

    @property
    def is_full(self) -> bool:
        return self.bits == self.space._mask

    @property
    def is_empty(self) -> bool:
        return self.bits == 0

    def indices(self) -> Iterator[int]:
        bits = self.bits
        i = 0
        while bits:
            if bits & 1:
                yield i
            bits >>= 1
            i += 1

    def to_hex(self) -> str:
        digits = max(1, -(-self.space.size // 4))
        return format(self.bits, f"0{digits}x")

    def dump(self) -> str:
        s = self.space
        return f"space n={s.n} m={s.m} |V|={s.v_size} |G|={s.g_size}\n{self.to_hex()}\n"


# ---------------------------------------------------------------------------
# atoms


def _marshal_action_atom(space: HomSpace, term: ModuleTerm):
    if term.modulus != space.rep.module.ring.modulus:
        raise ModulusMismatch(
            f"term reduced mod {term.modulus}, representation ring is Z/{space.rep.module.ring.modulus}")
    if term.x_indices() and max(term.x_indices()) > space.n:
        raise DimensionMismatch(f"term uses x{max(term.x_indices())} but the space has n={space.n}")
    if term.y_support() and max(term.y_support()) > space.m:
        raise DimensionMismatch(f"term uses y{max(term.y_support())} but the space has m={space.m}")
    # The coefficient only matters modulo the exponent of the module, which
    # keeps kernel arithmetic inside machine integers for any ring modulus.
    exponent = 1
    for d in space.rep.module.cyclic_orders:
        exponent = exponent * d // math.gcd(exponent, d)
    by_slot = dict(term.summands)
    slot_offsets = array("q", [0])
    coeffs = array("q")
    word_offsets = array("q", [0])
    letter_gens = array("q")
    letter_signs = array("q")
    for i in range(1, space.n + 1):
        u = by_slot.get(i)
        if u is not None:
            for w, c in u.terms:
                coeffs.append(c % exponent)
                for gen, sign in w.letters:
                    letter_gens.append(gen - 1)
                    letter_signs.append(sign)
                word_offsets.append(len(letter_gens))
        slot_offsets.append(len(coeffs))
    return slot_offsets, coeffs, word_offsets, letter_gens, letter_signs


def atom_val_action(term: ModuleTerm, space: HomSpace) -> ValSet:
    """Points where the module term evaluates to 0."""
    slot_offsets, coeffs, word_offsets, letter_gens, letter_signs = _marshal_action_atom(space, term)
    raw = kernels.action_atom_bits(
        space.n,
        space.m,
        space._orders_arr,
        space.g_size,
        space._cayley_arr,
        space._inv_arr,
        space.rep.group.identity,
        space._action_arr,
        slot_offsets,
        coeffs,
        word_offsets,
        letter_gens,
        letter_signs,
    )
    return ValSet(space, int.from_bytes(raw, "little") & space._mask)


def atom_val_group(word: FreeWord, space: HomSpace) -> ValSet:
    """Points where the group word evaluates to the identity."""
    if word.generators() and max(word.generators()) > space.m:
        raise DimensionMismatch(f"word uses y{max(word.generators())} but the space has m={space.m}")
    letter_gens = array("q", [gen - 1 for gen, _ in word.letters])
    letter_signs = array("q", [sign for _, sign in word.letters])
    raw = kernels.group_atom_bits(
        space.block,
        space.m,
        space.g_size,
        space._cayley_arr,
        space._inv_arr,
        space.rep.group.identity,
        letter_gens,
        letter_signs,
    )
    return ValSet(space, int.from_bytes(raw, "little") & space._mask)


# ---------------------------------------------------------------------------
# cylindrification


def _tile_pattern(width: int, period: int, size: int) -> int:
    pattern = (1 << width) - 1
    covered = period
    while covered < size:
        pattern |= pattern << covered
        covered <<= 1
    return pattern & ((1 << size) - 1)


def _cylindrify(bits: int, size: int, stride: int, radix: int) -> int:
    if radix == 1:
        return bits
    base_mask = _tile_pattern(stride, stride * radix, size)
    collapsed = 0
    for j in range(radix):
        collapsed |= (bits >> (j * stride)) & base_mask
    out = 0
    for j in range(radix):
        out |= collapsed << (j * stride)
    return out


def exists_x(vs: ValSet, index: int) -> ValSet:
    """Union over the x_index coordinate: a point is kept iff some point
    differing only at that coordinate lies in the set."""
    s = vs.space
    if not 1 <= index <= s.n:
        raise DimensionMismatch(f"x{index} is outside the space (n={s.n})")
    stride = s.v_size ** (index - 1)
    return ValSet(s, _cylindrify(vs.bits, s.size, stride, s.v_size))


def exists_y(vs: ValSet, index: int) -> ValSet:
    s = vs.space
    if not 1 <= index <= s.m:
        raise DimensionMismatch(f"y{index} is outside the space (m={s.m})")
    stride = s.block * s.g_size ** (index - 1)
    return ValSet(s, _cylindrify(vs.bits, s.size, stride, s.g_size))


# ---------------------------------------------------------------------------
# the evaluator


def _val_in(f: Formula, space: HomSpace) -> ValSet:
    if isinstance(f, ActionEq):
        return atom_val_action(f.term, space)
    if isinstance(f, GroupEq):
        return atom_val_group(f.word, space)
    if isinstance(f, Or):
        return _val_in(f.left, space) | _val_in(f.right, space)
    if isinstance(f, And):
        return _val_in(f.left, space) & _val_in(f.right, space)
    if isinstance(f, Not):
        return ~_val_in(f.child, space)
    if isinstance(f, ExistsX):
        return exists_x(_val_in(f.child, space), f.index)
    if isinstance(f, ExistsY):
        return exists_y(_val_in(f.child, space), f.index)
    raise TypeError(f"not a formula: {f!r}")


def val(
    formula: Formula,
    rep: Representation,
    n: int | None = None,
    m: int | None = None,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
) -> ValSet:
    """The subset of the (n, m) hom-space satisfying ``formula``; dimensions
    default to the formula's own and may only be enlarged."""
    fn, fm = dimensions(formula)
    n = fn if n is None else n
    m = fm if m is None else m
    if fn > n or fm > m:
        raise DimensionMismatch(f"formula needs n>={fn}, m>={fm}; got n={n}, m={m}")
    return _val_in(formula, HomSpace.create(rep, n, m, max_points=max_points))


def holds(
    formula: Formula,
    rep: Representation,
    n: int | None = None,
    m: int | None = None,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
) -> bool:
    """Universal reading: every assignment point satisfies the formula."""
    return val(formula, rep, n, m, max_points=max_points).is_full


# ---------------------------------------------------------------------------
# frozen-y evaluation


def frozen_val(
    formula: Formula,
    rep: Representation,
    beta: Mapping[int, int],
    n: int | None = None,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
) -> ValSet:
    """One-sorted evaluation of an action-type formula with the y-variables
    frozen to the explicit assignment ``beta``.

    The result lives in the (n, 0) hom-space, i.e. is a subset of V^n.  Atoms
    are evaluated directly through the term evaluator rather than the
    kernels, so agreement with the beta-fiber of :func:`val` genuinely
    cross-checks two routes.
    """
    if not is_action_type(formula):
        raise NotActionType("frozen evaluation is defined for action-type formulas only")
    for j in sorted(y_support(formula)):
        if j not in beta:
            raise UnboundVariable("y", j)
    fn, _ = dimensions(formula)
    n = fn if n is None else n
    if fn > n:
        raise DimensionMismatch(f"formula needs n>={fn}, got n={n}")
    space = HomSpace.create(rep, n, 0, max_points=max_points)

    def ev(f: Formula) -> ValSet:
        if isinstance(f, ActionEq):
            bits = 0
            for idx in range(space.size):
                alpha = {i + 1: c for i, c in enumerate(space.point_at(idx).a)}
                if eval_module_term(f.term, alpha, beta, rep) == rep.module.zero:
                    bits |= 1 << idx
            return ValSet(space, bits)
        if isinstance(f, Or):
            return ev(f.left) | ev(f.right)
        if isinstance(f, And):
            return ev(f.left) & ev(f.right)
        if isinstance(f, Not):
            return ~ev(f.child)
        if isinstance(f, ExistsX):
            return exists_x(ev(f.child), f.index)
        raise NotActionType(f"unexpected node {type(f).__name__}")

    return ev(formula)


def fiber(vs: ValSet, beta: Mapping[int, int]) -> ValSet:
    """Restrict to the points whose y-part equals ``beta`` (given on all of
    y1..ym), re-indexed as a subset of the (n, 0) space."""
    s = vs.space
    y_index = 0
    for j in range(s.m, 0, -1):
        if j not in beta:
            raise UnboundVariable("y", j)
        c = beta[j]
        if not 0 <= c < s.g_size:
            raise DimensionMismatch(f"group index {c} out of range")
        y_index = y_index * s.g_size + c
    small = HomSpace(s.rep, s.n, 0)
    bits = (vs.bits >> (y_index * s.block)) & ((1 << s.block) - 1)
    return ValSet(small, bits)


# ---------------------------------------------------------------------------
# y-support locality


def y0_modify(point: HomPoint, y0, group) -> HomPoint:
    """Reset every y-coordinate outside ``y0`` to the group identity."""
    y0 = set(y0)
    g = tuple(c if (j + 1) in y0 else group.identity for j, c in enumerate(point.g))
    return HomPoint(point.a, g)


def check_support_invariance(
    formula: Formula,
    rep: Representation,
    y0,
    n: int | None = None,
    m: int | None = None,
    *,
    max_points: int = DEFAULT_MAX_POINTS,
) -> tuple[bool, int | None]:
    """Membership in the value set only depends on the y-coordinates in
    ``y0`` whenever ``y0`` covers the formula's y-support: modifying the rest
    to the identity never changes membership.  Returns ``(ok, witness)`` with
    the first offending point index on failure."""
    if not is_action_type(formula):
        raise NotActionType("support invariance is stated for action-type formulas")
    y0 = frozenset(y0)
    if not y_support(formula) <= y0:
        raise SupportNotCovered(
            f"Y0={sorted(y0)} misses y-indices {sorted(y_support(formula) - y0)}")
    vs = val(formula, rep, n, m, max_points=max_points)
    space = vs.space
    if y0 and max(y0) > space.m:
        raise DimensionMismatch(f"Y0 mentions y{max(y0)} but the space has m={space.m}")
    # The x-part of a point never moves, so the pointwise comparison is a
    # comparison of whole y-slices of the bitset.
    block = space.block
    mask = (1 << block) - 1
    gsz = space.g_size
    ident = rep.group.identity
    for y_index in range(space.g_size**space.m):
        t, moved, scale = y_index, 0, 1
        for j in range(1, space.m + 1):
            digit = t % gsz
            t //= gsz
            moved += (digit if j in y0 else ident) * scale
            scale *= gsz
        if moved == y_index:
            continue
        here = (vs.bits >> (y_index * block)) & mask
        there = (vs.bits >> (moved * block)) & mask
        if here != there:
            diff = here ^ there
            return False, y_index * block + (diff & -diff).bit_length() - 1
    return True, None
