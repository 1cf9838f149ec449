"""First-order formulas over the two sorts, their concrete syntax, and
syntactic analyses (variable supports, shape classification, random
generation).

Grammar (EBNF; ``#`` starts a comment, one formula per line in batch files)::

    formula := impl
    impl    := disj ("->" disj)?
    disj    := conj ("|" conj)*
    conj    := neg ("&" neg)*
    neg     := "~" neg | atom
    atom    := "(" formula ")" | quant | acteq | grpeq
    quant   := ("exists" | "forall") var "(" formula ")"
    acteq   := mterm "=" "0"
    grpeq   := gword "=" "1"

Module terms are sums ``x<i>*(<algebra-expr>) + ...`` (or the literal ``0``);
an algebra expression is a ``+``/``-`` separated list of monomials, each an
optional integer coefficient times a ``*``-separated product of powers
``y<j>^<e>`` (integer exponents, negative allowed), e.g. ``2 + y1 - y1^-1*y2``.
A group word is such a power product, or the literal ``1``.  Precedence is
``~`` over ``&`` over ``|`` over ``->``; ``A -> B`` is sugar for ``~A | B``
and ``forall v (u)`` for ``~exists v (~u)``, so parsed trees contain neither.

Coefficients are reduced against the ring modulus at parse time, which is why
:func:`parse` takes the modulus alongside the text.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from repkit.errors import ParseError
from repkit.free import (
    FreeWord,
    GroupAlgebraElement,
    ModuleTerm,
    ga_add,
    reduce_word,
    word_pow,
)


@dataclass(frozen=True)
class ActionEq:
    term: ModuleTerm


@dataclass(frozen=True)
class GroupEq:
    word: FreeWord


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Not:
    child: "Formula"


@dataclass(frozen=True)
class ExistsX:
    index: int
    child: "Formula"


@dataclass(frozen=True)
class ExistsY:
    index: int
    child: "Formula"


Formula = Union[ActionEq, GroupEq, Or, And, Not, ExistsX, ExistsY]


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""(?P<ws>\s+)
      | (?P<xvar>x\d+)
      | (?P<yvar>y\d+)
      | (?P<int>\d+)
      | (?P<kw>exists\b|forall\b)
      | (?P<op>->|[()=+\-*^|&~])
    """,
    re.VERBOSE,
)


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(pos, f"a token (got {text[pos]!r})")
        pos = m.end()
        kind = m.lastgroup
        if kind == "ws":
            continue
        tokens.append((kind, m.group(), m.start()))
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, modulus: int):
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        self.tokens = _tokenize(text)
        self.i = 0
        self.modulus = modulus

    # token helpers ---------------------------------------------------
    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, val, pos = self.peek()
        if val != value:
            raise ParseError(pos, f"'{value}'")
        return self.next()

    def var_index(self, tok) -> int:
        idx = int(tok[1][1:])
        if idx < 1:
            raise ParseError(tok[2], "a 1-based variable index")
        return idx

    # formula levels --------------------------------------------------
    def formula(self) -> Formula:
        left = self.disj()
        if self.peek()[1] == "->":
            self.next()
            right = self.disj()
            return Or(Not(left), right)
        return left

    def disj(self) -> Formula:
        node = self.conj()
        while self.peek()[1] == "|":
            self.next()
            node = Or(node, self.conj())
        return node

    def conj(self) -> Formula:
        node = self.neg()
        while self.peek()[1] == "&":
            self.next()
            node = And(node, self.neg())
        return node

    def neg(self) -> Formula:
        if self.peek()[1] == "~":
            self.next()
            return Not(self.neg())
        return self.atom()

    def atom(self) -> Formula:
        kind, val, pos = self.peek()
        if val == "(":
            self.next()
            node = self.formula()
            self.expect(")")
            return node
        if kind == "kw":
            self.next()
            vtok = self.next()
            if vtok[0] not in ("xvar", "yvar"):
                raise ParseError(vtok[2], "a quantified variable like x1 or y1")
            idx = self.var_index(vtok)
            self.expect("(")
            body = self.formula()
            self.expect(")")
            if vtok[0] == "xvar":
                node: Formula = ExistsX(idx, body)
            else:
                node = ExistsY(idx, body)
            if val == "forall":
                node = Not(type(node)(idx, Not(body)))
            return node
        if kind == "xvar" or (kind == "int" and val == "0"):
            term = self.mterm()
            self.expect("=")
            tok = self.next()
            if tok[1] != "0":
                raise ParseError(tok[2], "'0' on the right of a module equality")
            return ActionEq(term)
        if kind == "yvar" or (kind == "int" and val == "1"):
            w = self.gword()
            self.expect("=")
            tok = self.next()
            if tok[1] != "1":
                raise ParseError(tok[2], "'1' on the right of a group equality")
            return GroupEq(w)
        raise ParseError(pos, "an atom, '(', '~', 'exists' or 'forall'")

    # atoms -----------------------------------------------------------
    def mterm(self) -> ModuleTerm:
        kind, val, pos = self.peek()
        if kind == "int" and val == "0":
            self.next()
            return ModuleTerm.build(self.modulus, {})
        parts: list[tuple[int, GroupAlgebraElement]] = []
        while True:
            tok = self.next()
            if tok[0] != "xvar":
                raise ParseError(tok[2], "a module variable like x1")
            idx = self.var_index(tok)
            self.expect("*")
            self.expect("(")
            u = self.algebra()
            self.expect(")")
            parts.append((idx, u))
            if self.peek()[1] == "+":
                self.next()
                continue
            break
        return ModuleTerm.build(self.modulus, parts)

    def algebra(self) -> GroupAlgebraElement:
        acc = GroupAlgebraElement.build(self.modulus, {})
        sign = 1
        if self.peek()[1] == "-":
            self.next()
            sign = -1
        while True:
            acc = ga_add(acc, self.monomial(sign))
            nxt = self.peek()[1]
            if nxt == "+":
                self.next()
                sign = 1
            elif nxt == "-":
                self.next()
                sign = -1
            else:
                return acc

    def monomial(self, sign: int) -> GroupAlgebraElement:
        kind, val, pos = self.peek()
        coeff = 1
        if kind == "int":
            self.next()
            coeff = int(val)
            if self.peek()[1] == "*":
                self.next()
            else:
                return GroupAlgebraElement.build(self.modulus, {FreeWord(()): sign * coeff})
        w = self.power_product()
        return GroupAlgebraElement.build(self.modulus, {w: sign * coeff})

    def power_product(self) -> FreeWord:
        w = self.power()
        while self.peek()[1] == "*":
            self.next()
            w = reduce_word(w.letters + self.power().letters)
        return w

    def power(self) -> FreeWord:
        tok = self.next()
        if tok[0] != "yvar":
            raise ParseError(tok[2], "a group variable like y1")
        gen = self.var_index(tok)
        exp = 1
        if self.peek()[1] == "^":
            self.next()
            neg = False
            if self.peek()[1] == "-":
                self.next()
                neg = True
            etok = self.next()
            if etok[0] != "int":
                raise ParseError(etok[2], "an integer exponent")
            exp = -int(etok[1]) if neg else int(etok[1])
        return word_pow(reduce_word([(gen, 1)]), exp)

    def gword(self) -> FreeWord:
        kind, val, _ = self.peek()
        if kind == "int" and val == "1":
            self.next()
            return FreeWord(())
        return self.power_product()


def parse(text: str, modulus: int) -> Formula:
    """Parse one formula; coefficients are reduced mod ``modulus``."""
    p = _Parser(text, modulus)
    node = p.formula()
    kind, _, pos = p.peek()
    if kind != "eof":
        raise ParseError(pos, "end of input")
    return node


# ---------------------------------------------------------------------------
# printing

_LEVEL_OR, _LEVEL_AND, _LEVEL_NOT = 1, 2, 3


def _format_word(w: FreeWord, unit: str) -> str:
    if not w.letters:
        return unit
    runs: list[tuple[int, int]] = []
    for gen, sign in w.letters:
        if runs and runs[-1][0] == gen and (runs[-1][1] > 0) == (sign > 0):
            runs[-1] = (gen, runs[-1][1] + sign)
        else:
            runs.append((gen, sign))
    return "*".join(f"y{g}" if e == 1 else f"y{g}^{e}" for g, e in runs)


def format_algebra(u: GroupAlgebraElement) -> str:
    if u.is_zero:
        return "0"
    parts = []
    for w, c in u.terms:
        if not w.letters:
            parts.append(str(c))
        elif c == 1:
            parts.append(_format_word(w, "1"))
        else:
            parts.append(f"{c}*{_format_word(w, '1')}")
    return " + ".join(parts)


def _format_term(t: ModuleTerm) -> str:
    if t.is_zero:
        return "0"
    return " + ".join(f"x{i}*({format_algebra(u)})" for i, u in t.summands)


def format_formula(f: Formula, _prec: int = 0) -> str:
    """Canonical text; ``parse(format_formula(f), modulus)`` returns ``f``."""
    if isinstance(f, ActionEq):
        return _format_term(f.term) + " = 0"
    if isinstance(f, GroupEq):
        return _format_word(f.word, "1") + " = 1"
    if isinstance(f, Or):
        s = f"{format_formula(f.left, _LEVEL_OR)} | {format_formula(f.right, _LEVEL_OR + 1)}"
        return f"({s})" if _prec > _LEVEL_OR else s
    if isinstance(f, And):
        s = f"{format_formula(f.left, _LEVEL_AND)} & {format_formula(f.right, _LEVEL_AND + 1)}"
        return f"({s})" if _prec > _LEVEL_AND else s
    if isinstance(f, Not):
        return "~" + format_formula(f.child, _LEVEL_NOT)
    if isinstance(f, ExistsX):
        return f"exists x{f.index} ({format_formula(f.child)})"
    if isinstance(f, ExistsY):
        return f"exists y{f.index} ({format_formula(f.child)})"
    raise TypeError(f"not a formula: {f!r}")


# ---------------------------------------------------------------------------
# syntactic analyses


def x_support(f: Formula) -> frozenset[int]:
    """x-indices used by atoms or bound by an x-quantifier."""
    if isinstance(f, ActionEq):
        return f.term.x_indices()
    if isinstance(f, GroupEq):
        return frozenset()
    if isinstance(f, (Or, And)):
        return x_support(f.left) | x_support(f.right)
    if isinstance(f, Not):
        return x_support(f.child)
    if isinstance(f, ExistsX):
        return x_support(f.child) | {f.index}
    return x_support(f.child)


def y_support(f: Formula) -> frozenset[int]:
    """y-indices occurring in atoms; unchanged by negation and quantifiers,
    a union across binary connectives."""
    if isinstance(f, ActionEq):
        return f.term.y_support()
    if isinstance(f, GroupEq):
        return f.word.generators()
    if isinstance(f, (Or, And)):
        return y_support(f.left) | y_support(f.right)
    return y_support(f.child)


def dimensions(f: Formula) -> tuple[int, int]:
    """Smallest hom-space dimensions (n, m) accommodating every variable,
    bound ones included."""
    if isinstance(f, ActionEq):
        xs = f.term.x_indices()
        ys = f.term.y_support()
        return (max(xs, default=0), max(ys, default=0))
    if isinstance(f, GroupEq):
        return (0, max(f.word.generators(), default=0))
    if isinstance(f, (Or, And)):
        nl, ml = dimensions(f.left)
        nr, mr = dimensions(f.right)
        return (max(nl, nr), max(ml, mr))
    if isinstance(f, Not):
        return dimensions(f.child)
    n, m = dimensions(f.child)
    if isinstance(f, ExistsX):
        return (max(n, f.index), m)
    return (n, max(m, f.index))


def is_action_type(f: Formula) -> bool:
    """No group equalities and no group quantifiers anywhere."""
    if isinstance(f, ActionEq):
        return True
    if isinstance(f, GroupEq):
        return False
    if isinstance(f, (Or, And)):
        return is_action_type(f.left) and is_action_type(f.right)
    if isinstance(f, Not):
        return is_action_type(f.child)
    if isinstance(f, ExistsX):
        return is_action_type(f.child)
    return False


def _flatten(f: Formula, node_type) -> list[Formula]:
    if isinstance(f, node_type):
        return _flatten(f.left, node_type) + [f.right]
    return [f]


def _is_equality(f: Formula) -> bool:
    return isinstance(f, (ActionEq, GroupEq))


@dataclass(frozen=True)
class FormulaClass:
    """Shape flags for the quantifier-free fragments.

    ``is_identity``: a single equality.  ``is_pseudo_identity``: a disjunction
    of equalities.  ``is_quasi_identity``: an equality, or
    ``~(e1 & ... & ek) | e`` — the parsed form of ``e1 & ... & ek -> e``.
    ``is_universal``: a disjunction of equalities and negated equalities.
    Each flag has an action-type refinement.
    """

    is_action_type: bool
    is_identity: bool
    is_pseudo_identity: bool
    is_quasi_identity: bool
    is_universal: bool
    is_action_identity: bool
    is_action_pseudo_identity: bool
    is_action_quasi_identity: bool
    is_action_universal: bool


def classify(f: Formula) -> FormulaClass:
    action = is_action_type(f)
    identity = _is_equality(f)
    disjuncts = _flatten(f, Or)
    pseudo = all(_is_equality(d) for d in disjuncts)
    quasi = identity or (
        isinstance(f, Or)
        and isinstance(f.left, Not)
        and all(_is_equality(c) for c in _flatten(f.left.child, And))
        and _is_equality(f.right)
    )
    universal = all(
        _is_equality(d) or (isinstance(d, Not) and _is_equality(d.child)) for d in disjuncts
    )
    return FormulaClass(
        is_action_type=action,
        is_identity=identity,
        is_pseudo_identity=pseudo,
        is_quasi_identity=quasi,
        is_universal=universal,
        is_action_identity=identity and action,
        is_action_pseudo_identity=pseudo and action,
        is_action_quasi_identity=quasi and action,
        is_action_universal=universal and action,
    )


# ---------------------------------------------------------------------------
# random generation (seeded; used by the fuzz suites and round-trip tests)


def random_formula(
    rng,
    modulus: int,
    *,
    max_depth: int = 4,
    n_vars: int = 2,
    m_vars: int = 2,
    max_summands: int = 3,
    max_word_len: int = 4,
    action_only: bool = False,
) -> Formula:
    """A random formula whose variable indices stay within ``n_vars`` x-slots
    and ``m_vars`` y-slots; with ``action_only`` no group atom or group
    quantifier is produced."""

    def rand_word() -> FreeWord:
        length = rng.randint(0, max_word_len) if m_vars >= 1 else 0
        return reduce_word(
            (rng.randint(1, m_vars), rng.choice((1, -1))) for _ in range(length)
        )

    def rand_algebra() -> GroupAlgebraElement:
        k = rng.randint(1, 3)
        return GroupAlgebraElement.build(
            modulus, [(rand_word(), rng.randrange(modulus)) for _ in range(k)]
        )

    def rand_atom() -> Formula:
        if not action_only and rng.random() < 0.35:
            return GroupEq(rand_word())
        k = rng.randint(1, max(1, min(max_summands, n_vars)))
        slots = rng.sample(range(1, n_vars + 1), k) if n_vars else []
        return ActionEq(ModuleTerm.build(modulus, [(i, rand_algebra()) for i in slots]))

    def gen(depth: int) -> Formula:
        if depth <= 0 or rng.random() < 0.3:
            return rand_atom()
        kinds = ["or", "and", "not", "ex"]
        if not action_only:
            kinds.append("ey")
        kind = rng.choice(kinds)
        if kind == "or":
            return Or(gen(depth - 1), gen(depth - 1))
        if kind == "and":
            return And(gen(depth - 1), gen(depth - 1))
        if kind == "not":
            return Not(gen(depth - 1))
        if kind == "ex":
            return ExistsX(rng.randint(1, max(n_vars, 1)), gen(depth - 1))
        return ExistsY(rng.randint(1, max(m_vars, 1)), gen(depth - 1))

    return gen(max_depth)
