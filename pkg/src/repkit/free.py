"""Free words over y-generators, group-algebra elements over Z/n, and module
terms in x-variables — together with their evaluation maps into a concrete
representation.

A letter is a pair ``(j, s)`` with a 1-based generator index ``j >= 1`` and a
sign ``s in {+1, -1}``.  Words are kept reduced (no adjacent ``y*y^-1``), the
empty word is the group unit.  Group-algebra elements store coefficients
already reduced mod n; zero coefficients are pruned so equality of the stored
data is equality of the algebra element.  Module terms map x-indices to
nonzero algebra elements and denote sums ``x1*u1 + x2*u2 + ...``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from repkit.errors import ModulusMismatch, UnboundVariable

Letter = tuple[int, int]


def _check_letters(letters: Iterable[Letter]) -> tuple[Letter, ...]:
    out = []
    for gen, sign in letters:
        if gen < 1:
            raise ValueError(f"generator index must be >= 1, got {gen}")
        if sign not in (1, -1):
            raise ValueError(f"letter sign must be +1 or -1, got {sign}")
        out.append((gen, sign))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """A reduced word; construct through :func:`reduce_word` or :func:`word`."""

    letters: tuple[Letter, ...]

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def generators(self) -> frozenset[int]:
        return frozenset(gen for gen, _ in self.letters)


def reduce_word(letters: Iterable[Letter]) -> FreeWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[Letter] = []
    for gen, sign in _check_letters(letters):
        if stack and stack[-1][0] == gen and stack[-1][1] == -sign:
            stack.pop()
        else:
            stack.append((gen, sign))
    return FreeWord(tuple(stack))


def word(*letters: Letter) -> FreeWord:
    return reduce_word(letters)


def word_mul(f: FreeWord, g: FreeWord) -> FreeWord:
    return reduce_word(f.letters + g.letters)


def word_inv(f: FreeWord) -> FreeWord:
    return FreeWord(tuple((gen, -sign) for gen, sign in reversed(f.letters)))


def word_pow(f: FreeWord, e: int) -> FreeWord:
    if e < 0:
        return word_pow(word_inv(f), -e)
    out = FreeWord(())
    for _ in range(e):
        out = word_mul(out, f)
    return out


def _word_key(w: FreeWord):
    # Total order used to canonicalise term lists: length first, then letters.
    return (len(w.letters), w.letters)


@dataclass(frozen=True)
class GroupAlgebraElement:
    """A finite formal sum ``sum_k c_k * f_k`` with ``c_k`` in Z/n, ``f_k``
    reduced words.  ``terms`` is sorted by word and contains no zero
    coefficients, so structural equality is algebra equality."""

    modulus: int
    terms: tuple[tuple[FreeWord, int], ...]

    @staticmethod
    def build(modulus: int, coeffs: Mapping[FreeWord, int] | Iterable[tuple[FreeWord, int]]) -> "GroupAlgebraElement":
        if modulus < 1:
            raise ValueError("modulus must be >= 1")
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        acc: dict[FreeWord, int] = {}
        for w, c in items:
            acc[w] = (acc.get(w, 0) + c) % modulus
        terms = tuple(sorted(((w, c) for w, c in acc.items() if c), key=lambda t: _word_key(t[0])))
        return GroupAlgebraElement(modulus, terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for w, _ in self.terms:
            out |= w.generators()
        return frozenset(out)


def ga_zero(modulus: int) -> GroupAlgebraElement:
    return GroupAlgebraElement.build(modulus, {})


def ga_one(modulus: int) -> GroupAlgebraElement:
    return GroupAlgebraElement.build(modulus, {FreeWord(()): 1})


def ga_word(modulus: int, w: FreeWord, coeff: int = 1) -> GroupAlgebraElement:
    return GroupAlgebraElement.build(modulus, {w: coeff})


def _same_modulus(u: GroupAlgebraElement, v: GroupAlgebraElement) -> None:
    if u.modulus != v.modulus:
        raise ModulusMismatch(f"cannot combine coefficients mod {u.modulus} with mod {v.modulus}")


def ga_add(u: GroupAlgebraElement, v: GroupAlgebraElement) -> GroupAlgebraElement:
    _same_modulus(u, v)
    acc = {w: c for w, c in u.terms}
    for w, c in v.terms:
        acc[w] = acc.get(w, 0) + c
    return GroupAlgebraElement.build(u.modulus, acc)


def ga_neg(u: GroupAlgebraElement) -> GroupAlgebraElement:
    return GroupAlgebraElement.build(u.modulus, {w: -c for w, c in u.terms})


def ga_scale(k: int, u: GroupAlgebraElement) -> GroupAlgebraElement:
    return GroupAlgebraElement.build(u.modulus, {w: k * c for w, c in u.terms})


def ga_mul(u: GroupAlgebraElement, v: GroupAlgebraElement) -> GroupAlgebraElement:
    _same_modulus(u, v)
    acc: dict[FreeWord, int] = {}
    for wu, cu in u.terms:
        for wv, cv in v.terms:
            w = word_mul(wu, wv)
            acc[w] = acc.get(w, 0) + cu * cv
    return GroupAlgebraElement.build(u.modulus, acc)


@dataclass(frozen=True)
class ModuleTerm:
    """``sum_i x_i * u_i`` with distinct x-indices and nonzero ``u_i``;
    ``summands`` is sorted by x-index."""

    modulus: int
    summands: tuple[tuple[int, GroupAlgebraElement], ...]

    @staticmethod
    def build(modulus: int, parts: Mapping[int, GroupAlgebraElement] | Iterable[tuple[int, GroupAlgebraElement]]) -> "ModuleTerm":
        items = parts.items() if isinstance(parts, Mapping) else parts
        acc: dict[int, GroupAlgebraElement] = {}
        for i, u in items:
            if i < 1:
                raise ValueError(f"x-index must be >= 1, got {i}")
            if u.modulus != modulus:
                raise ModulusMismatch(f"summand reduced mod {u.modulus}, term wants mod {modulus}")
            acc[i] = ga_add(acc[i], u) if i in acc else u
        summands = tuple(sorted(((i, u) for i, u in acc.items() if not u.is_zero)))
        return ModuleTerm(modulus, summands)

    @property
    def is_zero(self) -> bool:
        return not self.summands

    def x_indices(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.summands)

    def y_support(self) -> frozenset[int]:
        out: set[int] = set()
        for _, u in self.summands:
            out |= u.support()
        return frozenset(out)


def eval_word(f: FreeWord, beta: Mapping[int, int], group) -> int:
    """Image of ``f`` under the substitution ``y_j -> beta[j]``; raises
    :class:`UnboundVariable` when a generator of ``f`` is missing from beta."""
    g = group.identity
    for gen, sign in f.letters:
        if gen not in beta:
            raise UnboundVariable("y", gen)
        h = beta[gen]
        g = group.mul(g, h if sign > 0 else group.inverse[h])
    return g


def eval_action(a: int, u: GroupAlgebraElement, beta: Mapping[int, int], rep) -> int:
    """``a ∘ u`` extended linearly: ``sum_k c_k * (a ∘ f_k^beta)``."""
    if u.modulus != rep.module.ring.modulus:
        raise ModulusMismatch(
            f"element reduced mod {u.modulus}, representation ring is Z/{rep.module.ring.modulus}")
    acc = 0
    for w, c in u.terms:
        g = eval_word(w, beta, rep.group)
        acc = rep.module.add(acc, rep.module.scale(c, rep.action[g][a]))
    return acc


def eval_module_term(w: ModuleTerm, alpha: Mapping[int, int], beta: Mapping[int, int], rep) -> int:
    """Value of ``sum_i x_i*u_i`` at ``x_i -> alpha[i]``, ``y_j -> beta[j]``."""
    acc = 0
    for i, u in w.summands:
        if i not in alpha:
            raise UnboundVariable("x", i)
        acc = rep.module.add(acc, eval_action(alpha[i], u, beta, rep))
    return acc
