"""Finite two-sorted algebras: a module over Z/n together with a finite group
acting on it by module automorphisms.

Carriers are index-based.  A module element is an index into the mixed-radix
enumeration of ``Z/d_1 x ... x Z/d_k`` with the *last* coordinate varying
fastest; a group element is a row/column index of its Cayley table.  A
representation stores the action as a table ``action[g][v]`` and is only
handed out after all three action axioms have been checked exhaustively:

    1. for every g, the map ``v -> v∘g`` is additive and bijective
       (additivity gives Z/n-linearity, since scalars act by repeated
       addition);
    2. ``(a∘g1)∘g2 == a∘(g1*g2)`` for all a, g1, g2;
    3. ``a∘1 == a`` for all a.

The module also provides the congruence machinery (invariant submodule plus a
normal subgroup acting trivially on the quotient), quotients, restrictions to
subgroups, direct products and filter quotients of products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd, lcm, prod

from repkit.errors import (
    AxiomViolation,
    GuardExceeded,
    NotACongruence,
    NotAFilter,
    NotASubgroup,
)

DEFAULT_SUBGROUP_GUARD = 12
DEFAULT_CONGRUENCE_GUARD = 64
DEFAULT_PRODUCT_GUARD = 1 << 16


# ---------------------------------------------------------------------------
# carriers


@dataclass(frozen=True)
class FiniteRing:
    """The ring Z/n, n >= 1.  n == 1 is the zero ring."""

    modulus: int

    def __post_init__(self):
        if not isinstance(self.modulus, int) or self.modulus < 1:
            raise AxiomViolation("ring.modulus", (self.modulus,), "ring modulus must be an integer >= 1")

    @property
    def size(self) -> int:
        return self.modulus

    def elements(self) -> range:
        return range(self.modulus)


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group as a Cayley table on indices ``0..order-1``.

    ``cayley[a][b]`` is the product ``a*b`` (row = left factor).  Build
    external tables through :meth:`from_cayley`, which validates the group
    laws; the plain constructor trusts its input and is meant for tables that
    are products/quotients of already-validated ones.
    """

    cayley: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.cayley)

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def elements(self) -> range:
        return range(self.order)

    def element_order(self, g: int) -> int:
        n, x = 1, g
        while x != self.identity:
            x = self.cayley[x][g]
            n += 1
        return n

    @staticmethod
    def from_cayley(cayley) -> "FiniteGroup":
        table = tuple(tuple(row) for row in cayley)
        order = len(table)
        if order == 0:
            raise AxiomViolation("group.table", (), "a group has at least one element")
        for i, row in enumerate(table):
            if len(row) != order:
                raise AxiomViolation("group.table", (i,), f"row {i} has length {len(row)}, expected {order}")
            for j, v in enumerate(row):
                if not (isinstance(v, int) and 0 <= v < order):
                    raise AxiomViolation("group.table", (i, j), f"entry ({i},{j}) = {v} is not an element index")
        identity = None
        for e in range(order):
            if all(table[e][x] == x and table[x][e] == x for x in range(order)):
                identity = e
                break
        if identity is None:
            raise AxiomViolation("group.identity", (), "no two-sided identity element")
        for a in range(order):
            for b in range(order):
                for c in range(order):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise AxiomViolation("group.associativity", (a, b, c))
        inverse = []
        for a in range(order):
            inv = next((b for b in range(order) if table[a][b] == identity and table[b][a] == identity), None)
            if inv is None:
                raise AxiomViolation("group.inverse", (a,), f"element {a} has no two-sided inverse")
            inverse.append(inv)
        return FiniteGroup(table, identity, tuple(inverse))


def cyclic_group(k: int) -> FiniteGroup:
    if k < 1:
        raise ValueError("cyclic group order must be >= 1")
    table = tuple(tuple((i + j) % k for j in range(k)) for i in range(k))
    return FiniteGroup(table, 0, tuple((-i) % k for i in range(k)))


@dataclass(frozen=True)
class FiniteModule:
    """An explicit product of cyclic groups ``Z/d_1 x ... x Z/d_k`` viewed as
    a Z/n-module; every ``d_i`` must divide n (for n == 1 this forces the
    trivial module)."""

    ring: FiniteRing
    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "cyclic_orders", tuple(self.cyclic_orders))
        n = self.ring.modulus
        for d in self.cyclic_orders:
            if not isinstance(d, int) or d < 1:
                raise AxiomViolation("module.orders", (d,), f"cyclic order {d} is not an integer >= 1")
            if n % d != 0:
                raise AxiomViolation("module.orders", (d,), f"cyclic order {d} does not divide the ring modulus {n}")

    @cached_property
    def size(self) -> int:
        return prod(self.cyclic_orders)

    @property
    def zero(self) -> int:
        return 0

    def elements(self) -> range:
        return range(self.size)

    def element_tuple(self, index: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.cyclic_orders):
            index, r = divmod(index, d)
            out.append(r)
        return tuple(reversed(out))

    def index_of(self, coords) -> int:
        coords = tuple(coords)
        if len(coords) != len(self.cyclic_orders):
            raise ValueError("coordinate length mismatch")
        idx = 0
        for c, d in zip(coords, self.cyclic_orders):
            if not 0 <= c < d:
                raise ValueError(f"coordinate {c} out of range for Z/{d}")
            idx = idx * d + c
        return idx

    def add(self, i: int, j: int) -> int:
        a, b = self.element_tuple(i), self.element_tuple(j)
        return self.index_of((x + y) % d for x, y, d in zip(a, b, self.cyclic_orders))

    def neg(self, i: int) -> int:
        return self.index_of((-x) % d for x, d in zip(self.element_tuple(i), self.cyclic_orders))

    def sub(self, i: int, j: int) -> int:
        return self.add(i, self.neg(j))

    def scale(self, k: int, i: int) -> int:
        return self.index_of((k * x) % d for x, d in zip(self.element_tuple(i), self.cyclic_orders))

    def additive_order(self, i: int) -> int:
        return lcm(1, *(d // gcd(x, d) for x, d in zip(self.element_tuple(i), self.cyclic_orders)))


@dataclass(frozen=True)
class Representation:
    """A validated two-sorted algebra ``(V, G)``; use
    :func:`validate_representation` for untrusted tables."""

    module: FiniteModule
    group: FiniteGroup
    action: tuple[tuple[int, ...], ...]

    def act(self, v: int, g: int) -> int:
        return self.action[g][v]

    @property
    def sizes(self) -> tuple[int, int]:
        return (self.module.size, self.group.order)


def validate_representation(module: FiniteModule, group: FiniteGroup, action) -> Representation:
    """Check the three action axioms exhaustively and return the wrapped
    representation; raises :class:`AxiomViolation` naming the first failure.

    Axiom 1 is checked before axiom 2 so that a non-linear per-element map is
    reported as such even when compatibility also fails.
    """
    table = tuple(tuple(row) for row in action)
    if len(table) != group.order:
        raise AxiomViolation("action.shape", (len(table),), f"action has {len(table)} rows, expected {group.order}")
    size = module.size
    for g, row in enumerate(table):
        if len(row) != size:
            raise AxiomViolation("action.shape", (g,), f"action row {g} has length {len(row)}, expected {size}")
        for v in row:
            if not (isinstance(v, int) and 0 <= v < size):
                raise AxiomViolation("action.shape", (g, v), f"action row {g} contains {v}, not a module index")
    # axiom 3: the group unit fixes everything
    e = group.identity
    for a in range(size):
        if table[e][a] != a:
            raise AxiomViolation(3, (a,), f"a∘1 != a at a={a}")
    # axiom 1: each g acts additively and bijectively
    for g in range(group.order):
        row = table[g]
        if len(set(row)) != size:
            raise AxiomViolation(1, (g,), f"v -> v∘g is not injective for g={g}")
        for a in range(size):
            for b in range(a, size):
                s = module.add(a, b)
                if row[s] != module.add(row[a], row[b]):
                    raise AxiomViolation(1, (g, a, b), f"(a+b)∘g != a∘g + b∘g at g={g}, a={a}, b={b}")
    # axiom 2: compatibility with the group product
    for g1 in range(group.order):
        for g2 in range(group.order):
            prod_row = table[group.mul(g1, g2)]
            for a in range(size):
                if table[g2][table[g1][a]] != prod_row[a]:
                    raise AxiomViolation(2, (a, g1, g2), f"(a∘g1)∘g2 != a∘(g1*g2) at a={a}, g1={g1}, g2={g2}")
    return Representation(module, group, table)


def trivial_representation(ring: FiniteRing | int = 2) -> Representation:
    if isinstance(ring, int):
        ring = FiniteRing(ring)
    module = FiniteModule(ring, (1,))
    return Representation(module, cyclic_group(1), ((0,),))


# ---------------------------------------------------------------------------
# congruences and quotients


@dataclass(frozen=True)
class Congruence:
    """A pair (submodule, normal subgroup) — both as element-index sets."""

    submodule: frozenset[int]
    normal_subgroup: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "submodule", frozenset(self.submodule))
        object.__setattr__(self, "normal_subgroup", frozenset(self.normal_subgroup))


def congruence_violation(rep: Representation, cong: Congruence) -> str | None:
    """None when ``cong`` is a congruence of ``rep``, else the first reason:
    the submodule must be closed, invariant under the whole group, the
    subgroup normal, and every subgroup element must act trivially on the
    quotient module (``a∘h - a`` lands in the submodule)."""
    mod, grp = rep.module, rep.group
    v0, h0 = cong.submodule, cong.normal_subgroup
    if not v0 <= set(mod.elements()):
        return "submodule contains a non-element"
    if mod.zero not in v0:
        return "submodule misses 0"
    for a in v0:
        for b in v0:
            if mod.add(a, b) not in v0:
                return f"submodule not closed under +: {a}+{b}"
    if not h0 <= set(grp.elements()):
        return "subgroup contains a non-element"
    if grp.identity not in h0:
        return "subgroup misses the identity"
    for a in h0:
        for b in h0:
            if grp.mul(a, b) not in h0:
                return f"subgroup not closed: {a}*{b}"
    for g in grp.elements():
        gi = grp.inv(g)
        for h in h0:
            if grp.mul(grp.mul(gi, h), g) not in h0:
                return f"subgroup not normal at g={g}, h={h}"
    for g in grp.elements():
        for a in v0:
            if rep.action[g][a] not in v0:
                return f"submodule not invariant: {a}∘{g}"
    for h in h0:
        for a in mod.elements():
            if mod.sub(rep.action[h][a], a) not in v0:
                return f"{h} acts nontrivially on the quotient at a={a}"
    return None


def _closure_add(add_table, seed) -> frozenset[int]:
    known = set(seed) | {0}
    frontier = list(known)
    while frontier:
        x = frontier.pop()
        for y in list(known):
            for z in (add_table[x][y], add_table[y][x]):
                if z not in known:
                    known.add(z)
                    frontier.append(z)
    return frozenset(known)


def _abelian_orders(add_table) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Cyclic decomposition of a finite abelian group presented by an
    addition table with zero at index 0.

    Returns ``(orders, index_of)`` where ``index_of[x]`` is the mixed-radix
    index (first coordinate slowest) of ``x`` in ``Z/orders[0] x ...``; the
    resulting relabeling is an additive isomorphism.  Splits off a cyclic
    summand generated by an element of maximal order, with the complement
    found greedily — a subgroup maximal w.r.t. trivial intersection with that
    summand is automatically a direct complement.
    """
    q = len(add_table)
    if q == 1:
        return (), (0,)

    def order_of(x: int) -> int:
        n, y = 1, x
        while y != 0:
            y = add_table[y][x]
            n += 1
        return n

    orders_all = [order_of(x) for x in range(q)]
    d1 = max(orders_all)
    a = orders_all.index(d1)
    cyc = [0]
    cur = 0
    for _ in range(d1 - 1):
        cur = add_table[cur][a]
        cyc.append(cur)
    cyc_set = set(cyc)
    if d1 == q:
        pos = {x: j for j, x in enumerate(cyc)}
        return (d1,), tuple(pos[x] for x in range(q))
    target = q // d1
    comp: frozenset[int] = frozenset({0})
    for x in range(q):
        if len(comp) == target:
            break
        if x in comp:
            continue
        grown = _closure_add(add_table, comp | {x})
        if len(grown & cyc_set) == 1:
            comp = grown
    if len(comp) != target:
        raise RuntimeError("abelian decomposition failed to find a complement")
    comp_sorted = sorted(comp)
    pos_comp = {x: i for i, x in enumerate(comp_sorted)}
    sub_add = [[pos_comp[add_table[x][y]] for y in comp_sorted] for x in comp_sorted]
    sub_orders, sub_index = _abelian_orders(sub_add)
    sub_size = prod(sub_orders)
    index_of = [0] * q
    for x in range(q):
        for j in range(d1):
            b = add_table[x][cyc[(d1 - j) % d1]]  # x - j*a
            if b in pos_comp:
                index_of[x] = j * sub_size + sub_index[pos_comp[b]]
                break
        else:
            raise RuntimeError("abelian decomposition lost an element")
    return (d1,) + sub_orders, tuple(index_of)


def _presented_submodule(module: FiniteModule, elems: frozenset[int]):
    """Present a subset closed under + as a FiniteModule.

    Returns ``(sub_module, to_sub, from_sub)`` where ``to_sub`` maps ambient
    element indices (of members) to indices of the new module and ``from_sub``
    is the inverse list.
    """
    members = sorted(elems)
    pos = {x: i for i, x in enumerate(members)}
    if members[0] != module.zero:
        raise ValueError("submodule must contain 0")
    add_table = [[pos[module.add(x, y)] for y in members] for x in members]
    orders, index_of = _abelian_orders(add_table)
    sub = FiniteModule(module.ring, orders)
    to_sub = {x: index_of[pos[x]] for x in members}
    from_sub = [0] * len(members)
    for x in members:
        from_sub[to_sub[x]] = x
    return sub, to_sub, from_sub


def _group_quotient(group: FiniteGroup, normal: frozenset[int]):
    """Quotient by a normal subgroup; cosets are labeled in increasing order
    of their smallest member.  Returns ``(quotient_group, projection)``."""
    coset_of = [-1] * group.order
    reps: list[int] = []
    for g in range(group.order):
        if coset_of[g] >= 0:
            continue
        label = len(reps)
        reps.append(g)
        for h in normal:
            coset_of[group.mul(g, h)] = label
    k = len(reps)
    cayley = tuple(tuple(coset_of[group.mul(reps[i], reps[j])] for j in range(k)) for i in range(k))
    identity = coset_of[group.identity]
    inverse = tuple(coset_of[group.inv(reps[i])] for i in range(k))
    return FiniteGroup(cayley, identity, inverse), tuple(coset_of)


def quotient(rep: Representation, cong: Congruence) -> Representation:
    """Quotient by a congruence.  The quotient module is re-presented as an
    explicit product of cyclic groups; when the submodule (resp. subgroup)
    part is trivial the module (resp. group) is kept as-is."""
    reason = congruence_violation(rep, cong)
    if reason is not None:
        raise NotACongruence(reason)
    mod, grp = rep.module, rep.group

    if cong.normal_subgroup == {grp.identity}:
        new_group, proj_g = grp, tuple(range(grp.order))
    else:
        new_group, proj_g = _group_quotient(grp, cong.normal_subgroup)

    if cong.submodule == {mod.zero}:
        new_module = mod
        vmap = tuple(range(mod.size))
        rep_of = list(range(mod.size))
    else:
        coset_of = [-1] * mod.size
        reps_v: list[int] = []
        for v in range(mod.size):
            if coset_of[v] >= 0:
                continue
            label = len(reps_v)
            reps_v.append(v)
            for w in cong.submodule:
                coset_of[mod.add(v, w)] = label
        k = len(reps_v)
        add_table = [[coset_of[mod.add(reps_v[i], reps_v[j])] for j in range(k)] for i in range(k)]
        orders, index_of = _abelian_orders(add_table)
        new_module = FiniteModule(mod.ring, orders)
        vmap = tuple(index_of[coset_of[v]] for v in range(mod.size))
        rep_of = [0] * k
        for i in range(k):
            rep_of[index_of[i]] = reps_v[i]

    # action is constant on cosets by the congruence laws
    group_reps = [-1] * new_group.order
    for g in range(grp.order):
        if group_reps[proj_g[g]] < 0:
            group_reps[proj_g[g]] = g
    table = tuple(
        tuple(vmap[rep.action[group_reps[c]][rep_of[t]]] for t in range(new_module.size))
        for c in range(new_group.order)
    )
    return validate_representation(new_module, new_group, table)


def faithful_quotient(rep: Representation) -> tuple[Representation, tuple[int, ...]]:
    """Divide out the kernel of the action, keeping the module untouched.

    Returns ``(quotient_rep, beta0)`` with ``beta0[g]`` the image of ``g``;
    the result satisfies ``a∘g == a∘beta0(g)`` literally (same module
    indices) and acts faithfully.
    """
    identity_row = tuple(range(rep.module.size))
    kernel = frozenset(g for g in rep.group.elements() if rep.action[g] == identity_row)
    new_group, beta0 = _group_quotient(rep.group, kernel)
    reps = [-1] * new_group.order
    for g in range(rep.group.order):
        if reps[beta0[g]] < 0:
            reps[beta0[g]] = g
    table = tuple(rep.action[reps[c]] for c in range(new_group.order))
    return Representation(rep.module, new_group, table), beta0


# ---------------------------------------------------------------------------
# subgroups and restriction


def _closure_mul(group: FiniteGroup, seed) -> frozenset[int]:
    known = set(seed) | {group.identity}
    frontier = list(known)
    while frontier:
        x = frontier.pop()
        for y in list(known):
            for z in (group.mul(x, y), group.mul(y, x)):
                if z not in known:
                    known.add(z)
                    frontier.append(z)
    return frozenset(known)


def subgroups(group: FiniteGroup, max_order: int = DEFAULT_SUBGROUP_GUARD) -> list[tuple[int, ...]]:
    """Every subgroup, as a sorted element tuple; includes {1} and G."""
    if group.order > max_order:
        raise GuardExceeded(f"group order {group.order} exceeds subgroup guard {max_order}")
    base = frozenset({group.identity})
    found = {base}
    queue = [base]
    while queue:
        current = queue.pop()
        for x in group.elements():
            if x in current:
                continue
            grown = _closure_mul(group, current | {x})
            if grown not in found:
                found.add(grown)
                queue.append(grown)
    return sorted((tuple(sorted(h)) for h in found), key=lambda t: (len(t), t))


def restrict(rep: Representation, subgroup) -> Representation:
    """Restrict the action to a subgroup (given as element indices); elements
    keep their relative order, so the new index of ``h`` is its rank."""
    elems = tuple(sorted(set(subgroup)))
    grp = rep.group
    if not elems or any(not (0 <= h < grp.order) for h in elems):
        raise NotASubgroup("subgroup must be a nonempty subset of the group")
    members = set(elems)
    if grp.identity not in members:
        raise NotASubgroup("subgroup misses the identity")
    for a in elems:
        if grp.inv(a) not in members:
            raise NotASubgroup(f"subgroup misses the inverse of {a}")
        for b in elems:
            if grp.mul(a, b) not in members:
                raise NotASubgroup(f"subgroup not closed: {a}*{b}")
    pos = {h: i for i, h in enumerate(elems)}
    k = len(elems)
    cayley = tuple(tuple(pos[grp.mul(a, b)] for b in elems) for a in elems)
    new_group = FiniteGroup(cayley, pos[grp.identity], tuple(pos[grp.inv(a)] for a in elems))
    table = tuple(rep.action[h] for h in elems)
    return Representation(rep.module, new_group, table)


# ---------------------------------------------------------------------------
# congruence enumeration


def _additive_subgroups(module: FiniteModule) -> list[frozenset[int]]:
    add_table = [[module.add(i, j) for j in module.elements()] for i in module.elements()]
    base = frozenset({0})
    found = {base}
    queue = [base]
    while queue:
        current = queue.pop()
        for x in module.elements():
            if x in current:
                continue
            grown = _closure_add(add_table, current | {x})
            if grown not in found:
                found.add(grown)
                queue.append(grown)
    return sorted(found, key=lambda s: (len(s), tuple(sorted(s))))


def enumerate_congruences(rep: Representation, max_size: int = DEFAULT_CONGRUENCE_GUARD) -> list[Congruence]:
    """All congruences of ``rep``; guarded by ``|V|*|G| <= max_size``."""
    mod, grp = rep.module, rep.group
    if mod.size * grp.order > max_size:
        raise GuardExceeded(f"|V|*|G| = {mod.size * grp.order} exceeds congruence guard {max_size}")
    invariant = []
    for v0 in _additive_subgroups(mod):
        if all(rep.action[g][a] in v0 for g in grp.elements() for a in v0):
            invariant.append(v0)
    normal = []
    for h in subgroups(grp, max_order=grp.order):
        hs = frozenset(h)
        if all(grp.mul(grp.mul(grp.inv(g), x), g) in hs for g in grp.elements() for x in hs):
            normal.append(hs)
    out = []
    for v0 in invariant:
        for h0 in normal:
            if all(mod.sub(rep.action[h][a], a) in v0 for h in h0 for a in mod.elements()):
                out.append(Congruence(v0, h0))
    out.sort(key=lambda c: (len(c.submodule), tuple(sorted(c.submodule)), len(c.normal_subgroup), tuple(sorted(c.normal_subgroup))))
    return out


# ---------------------------------------------------------------------------
# products


def _common_ring(reps) -> FiniteRing:
    moduli = {r.module.ring.modulus for r in reps}
    if len(moduli) == 1:
        return FiniteRing(moduli.pop())
    # Modules over different Z/n embed into modules over Z/lcm: the scalar
    # action factors through the integers either way.
    return FiniteRing(lcm(*sorted(moduli)))


def direct_product(reps, max_size: int = DEFAULT_PRODUCT_GUARD) -> Representation:
    """Componentwise product.  Module coordinates are the concatenation of the
    factor coordinates; factor indices combine mixed-radix with the last
    factor varying fastest, on both sorts."""
    reps = list(reps)
    if not reps:
        raise ValueError("direct_product needs at least one factor")
    if len(reps) == 1:
        return reps[0]
    v_size = prod(r.module.size for r in reps)
    g_size = prod(r.group.order for r in reps)
    if v_size * g_size > max_size:
        raise GuardExceeded(f"product size {v_size}*{g_size} exceeds guard {max_size}")
    ring = _common_ring(reps)
    orders = tuple(d for r in reps for d in r.module.cyclic_orders)
    module = FiniteModule(ring, orders)

    v_radii = [r.module.size for r in reps]
    g_radii = [r.group.order for r in reps]

    def split(idx, radii):
        out = []
        for rdx in reversed(radii):
            idx, c = divmod(idx, rdx)
            out.append(c)
        return tuple(reversed(out))

    def join(parts, radii):
        idx = 0
        for c, rdx in zip(parts, radii):
            idx = idx * rdx + c
        return idx

    cayley = tuple(
        tuple(
            join([r.group.mul(x, y) for r, x, y in zip(reps, split(a, g_radii), split(b, g_radii))], g_radii)
            for b in range(g_size)
        )
        for a in range(g_size)
    )
    identity = join([r.group.identity for r in reps], g_radii)
    inverse = tuple(join([r.group.inv(x) for r, x in zip(reps, split(a, g_radii))], g_radii) for a in range(g_size))
    group = FiniteGroup(cayley, identity, inverse)

    action = tuple(
        tuple(
            join([r.action[gc][vc] for r, gc, vc in zip(reps, split(g, g_radii), split(v, v_radii))], v_radii)
            for v in range(v_size)
        )
        for g in range(g_size)
    )
    return Representation(module, group, action)


def product_component_maps(reps):
    """Index splitters for a product built by :func:`direct_product`: returns
    ``(split_v, split_g)`` mapping a product index to the tuple of factor
    indices."""
    v_radii = [r.module.size for r in reps]
    g_radii = [r.group.order for r in reps]

    def splitter(radii):
        def split(idx):
            out = []
            for rdx in reversed(radii):
                idx, c = divmod(idx, rdx)
                out.append(c)
            return tuple(reversed(out))

        return split

    return splitter(v_radii), splitter(g_radii)


def validate_filter(subsets, index_size: int) -> frozenset[frozenset[int]]:
    """A filter on ``{0..index_size-1}``: nonempty, proper (no empty set),
    closed under intersection and supersets."""
    universe = frozenset(range(index_size))
    fam = frozenset(frozenset(s) for s in subsets)
    if not fam:
        raise NotAFilter("a filter is nonempty")
    for s in fam:
        if not s <= universe:
            raise NotAFilter(f"{sorted(s)} is not a subset of the index set")
        if not s:
            raise NotAFilter("a proper filter does not contain the empty set")
    for s in fam:
        for t in fam:
            if s & t not in fam:
                raise NotAFilter(f"not closed under intersection: {sorted(s)} ∩ {sorted(t)}")
    for s in fam:
        for t in map(frozenset, _supersets(s, universe)):
            if t not in fam:
                raise NotAFilter(f"not upward closed: {sorted(s)} ⊆ {sorted(t)}")
    return fam


def _supersets(s: frozenset[int], universe: frozenset[int]):
    rest = sorted(universe - s)
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            yield s | set(extra)


def principal_ultrafilter(j: int, index_size: int) -> frozenset[frozenset[int]]:
    return frozenset(frozenset(s) for s in _supersets(frozenset({j}), frozenset(range(index_size))))


def trivial_filter(index_size: int) -> frozenset[frozenset[int]]:
    return frozenset({frozenset(range(index_size))})


def filtered_product(reps, filter_subsets, max_size: int = DEFAULT_PRODUCT_GUARD) -> Representation:
    """Quotient of the direct product by the congruence a filter D induces:
    two tuples are identified when they agree on a set of coordinates lying
    in D.  The trivial filter {I} gives back the plain product; a principal
    ultrafilter at j collapses onto factor j."""
    reps = list(reps)
    fam = validate_filter(filter_subsets, len(reps))
    product = direct_product(reps, max_size=max_size)
    split_v, split_g = product_component_maps(reps)
    v0 = frozenset(
        v for v in product.module.elements()
        if frozenset(i for i, c in enumerate(split_v(v)) if c == reps[i].module.zero) in fam
    )
    h0 = frozenset(
        g for g in product.group.elements()
        if frozenset(i for i, c in enumerate(split_g(g)) if c == reps[i].group.identity) in fam
    )
    return quotient(product, Congruence(v0, h0))


# ---------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class RepHomomorphism:
    """A pair of index maps (module side, group side) from ``source`` to
    ``target``."""

    source: Representation
    target: Representation
    alpha: tuple[int, ...]
    beta: tuple[int, ...]

    def violation(self) -> str | None:
        src, dst = self.source, self.target
        if len(self.alpha) != src.module.size or len(self.beta) != src.group.order:
            return "map length mismatch"
        for a in range(src.module.size):
            for b in range(src.module.size):
                if self.alpha[src.module.add(a, b)] != dst.module.add(self.alpha[a], self.alpha[b]):
                    return f"alpha not additive at {a},{b}"
        for g in range(src.group.order):
            for h in range(src.group.order):
                if self.beta[src.group.mul(g, h)] != dst.group.mul(self.beta[g], self.beta[h]):
                    return f"beta not multiplicative at {g},{h}"
        for g in range(src.group.order):
            for a in range(src.module.size):
                if self.alpha[src.action[g][a]] != dst.action[self.beta[g]][self.alpha[a]]:
                    return f"action compatibility fails at a={a}, g={g}"
        return None

    @property
    def is_bijective(self) -> bool:
        return (
            len(set(self.alpha)) == self.target.module.size == self.source.module.size
            and len(set(self.beta)) == self.target.group.order == self.source.group.order
        )


def product_projection(reps, product: Representation, j: int) -> RepHomomorphism:
    split_v, split_g = product_component_maps(reps)
    alpha = tuple(split_v(v)[j] for v in product.module.elements())
    beta = tuple(split_g(g)[j] for g in product.group.elements())
    return RepHomomorphism(product, reps[j], alpha, beta)
