"""Enveloping-algebra elements as combinations of PBW-ordered monomials.

A monomial records the multiplicity of each basis generator; the underlying
word is the generators repeated in the algebra's global order (positives,
Cartan, negatives).  ``normal_order`` rewrites an arbitrary word into this
basis by repeatedly applying x*y = y*x + [x, y] to the leftmost out-of-order
adjacent pair.  Every swap either lowers the inversion count at fixed length
or hands off to strictly shorter words (the bracket remainder), so the
rewriting terminates; by the PBW theorem the normal form is independent of
the strategy.

Coefficients are rational functions so the same arithmetic is shared with
the parametric solver, although plain words only ever produce polynomials.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from .algebra import Generator, JacobiAlgebra, Weight
from .ring import PolyQ, RatFuncQ


@dataclass(frozen=True)
class PbwMonomial:
    """Exponents over the algebra's ordered basis (dense tuple, hashable)."""

    exps: Tuple[int, ...]

    @classmethod
    def unit(cls, alg: JacobiAlgebra) -> "PbwMonomial":
        return cls((0,) * len(alg.generators))

    @classmethod
    def from_word(cls, alg: JacobiAlgebra, word: Sequence[int]) -> "PbwMonomial":
        """Monomial with the given generator indices as multiplicities.

        Only meaningful when the word is already sorted in the global order.
        """
        exps = [0] * len(alg.generators)
        for idx in word:
            exps[idx] += 1
        return cls(tuple(exps))

    @classmethod
    def from_generators(cls, alg: JacobiAlgebra, gens: Iterable[Generator]) -> "PbwMonomial":
        return cls.from_word(alg, [alg.index[g] for g in gens])

    def word(self) -> Tuple[int, ...]:
        out: List[int] = []
        for idx, e in enumerate(self.exps):
            out.extend([idx] * e)
        return tuple(out)

    def degree(self) -> int:
        return sum(self.exps)

    @property
    def is_unit(self) -> bool:
        return all(e == 0 for e in self.exps)

    def times(self, other: "PbwMonomial") -> "PbwMonomial":
        """Exponent-wise product; only a PBW monomial when no reordering is needed."""
        return PbwMonomial(tuple(a + b for a, b in zip(self.exps, other.exps)))


def monomial_weight(alg: JacobiAlgebra, m: PbwMonomial) -> Weight:
    w = Weight.zero(alg.n)
    for idx, e in enumerate(m.exps):
        if e:
            w = w + alg.weight(alg.generators[idx]).scale(e)
    return w


def _is_ordered(word: Sequence[int]) -> bool:
    return all(word[k] <= word[k + 1] for k in range(len(word) - 1))


class UElement:
    """Finite combination of PBW monomials with RatFuncQ coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[Dict[PbwMonomial, RatFuncQ]] = None):
        self.nvars = nvars
        self.terms: Dict[PbwMonomial, RatFuncQ] = {}
        if terms:
            for m, c in terms.items():
                if not c.is_zero:
                    self.terms[m] = c

    @classmethod
    def zero(cls, alg: JacobiAlgebra) -> "UElement":
        return cls(alg.n)

    @classmethod
    def unit(cls, alg: JacobiAlgebra) -> "UElement":
        return cls(alg.n, {PbwMonomial.unit(alg): RatFuncQ.one(alg.n)})

    @classmethod
    def of_generator(cls, alg: JacobiAlgebra, g: Generator) -> "UElement":
        m = PbwMonomial.from_generators(alg, [g])
        return cls(alg.n, {m: RatFuncQ.one(alg.n)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "UElement") -> "UElement":
        res = dict(self.terms)
        for m, c in other.terms.items():
            v = res.get(m, RatFuncQ.zero(self.nvars)) + c
            if v.is_zero:
                res.pop(m, None)
            else:
                res[m] = v
        return UElement(self.nvars, res)

    def __neg__(self) -> "UElement":
        return UElement(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "UElement") -> "UElement":
        return self + (-other)

    def scale(self, c: Union[int, Fraction, PolyQ, RatFuncQ]) -> "UElement":
        if not isinstance(c, RatFuncQ):
            c = RatFuncQ(c) if isinstance(c, PolyQ) else RatFuncQ.from_scalar(self.nvars, c)
        if c.is_zero:
            return UElement(self.nvars)
        return UElement(self.nvars, {m: v * c for m, v in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, UElement)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __repr__(self):
        if self.is_zero:
            return "UElement(0)"
        return "UElement(" + ", ".join(f"{m.exps}: {c.to_text()}" for m, c in self.terms.items()) + ")"


def normal_order(
    alg: JacobiAlgebra,
    word: Sequence[Union[int, Generator]],
    prefactor: Optional[RatFuncQ] = None,
) -> UElement:
    """PBW normal form of a word of generators with an optional coefficient.

    Rewrites the leftmost inverted adjacent pair at each step.  The result is
    supported on ordered monomials only and is linear in the prefactor.
    """
    idx_word = tuple(alg.index[g] if isinstance(g, Generator) else int(g) for g in word)
    for idx in idx_word:
        if not 0 <= idx < len(alg.generators):
            raise ValueError(f"generator index {idx} out of range")
    if prefactor is None:
        prefactor = RatFuncQ.one(alg.n)
    result: Dict[PbwMonomial, RatFuncQ] = {}
    agenda: List[Tuple[Tuple[int, ...], RatFuncQ]] = [(idx_word, prefactor)]
    while agenda:
        w, coeff = agenda.pop()
        if coeff.is_zero:
            continue
        swap_at = -1
        for k in range(len(w) - 1):
            if w[k] > w[k + 1]:
                swap_at = k
                break
        if swap_at < 0:
            m = PbwMonomial.from_word(alg, w)
            v = result.get(m, RatFuncQ.zero(alg.n)) + coeff
            if v.is_zero:
                result.pop(m, None)
            else:
                result[m] = v
            continue
        k = swap_at
        x, y = w[k], w[k + 1]
        agenda.append((w[:k] + (y, x) + w[k + 2:], coeff))
        br = alg.bracket_by_index(x, y)
        if br.scalar != 0:
            agenda.append((w[:k] + w[k + 2:], coeff * br.scalar))
        for g, c in br.terms.items():
            agenda.append((w[:k] + (alg.index[g],) + w[k + 2:], coeff * c))
    return UElement(alg.n, result)


def multiply(alg: JacobiAlgebra, a: UElement, b: UElement) -> UElement:
    """Product in the enveloping algebra, returned in normal form."""
    out = UElement.zero(alg)
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            out = out + normal_order(alg, m1.word() + m2.word(), c1 * c2)
    return out


def element_weights(alg: JacobiAlgebra, u: UElement) -> set:
    return {monomial_weight(alg, m) for m in u.terms}
