"""Restriction of equivariant Schubert classes to torus-fixed points.

The Chow-side restriction is a sum over reduced subexpressions of a fixed
reduced word, each contributing a product of the roots r(j) attached to the
word; the K-theory side sums over 0-Hecke subexpressions with factors
(e^{-r(j)} - 1).  Both classes are word-independent; the subexpression
lists are not, which is why an explicit word can be supplied to reproduce
a particular presentation.

Positions in subexpression lists are 1-based, matching the convention for
generator indices s_1 .. s_n.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .rootsys import Covector, Root
from .schub import Variant, down_up_sets, max_parabolic
from .weyl import WeylElement, WeylGroup, bruhat_leq, demazure_right

__all__ = [
    "NotReducedError",
    "ChowClass",
    "KClass",
    "RootSequence",
    "root_sequence",
    "enumerate_subexpressions",
    "billey_restriction",
    "gw_restriction",
]


class NotReducedError(ValueError):
    """A word that had to be reduced is not."""


@dataclass(frozen=True)
class ChowClass:
    """Integer polynomial in the simple-root variables alpha_1..alpha_rank.

    Terms map exponent vectors to coefficients; the zero class has an
    empty term map.
    """

    rank: int
    terms: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k in [k for k, v in self.terms.items() if v == 0]:
            del self.terms[k]

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set[int]:
        return {sum(e) for e in self.terms}

    def evaluate(self, cov: Covector) -> Fraction:
        total = Fraction(0)
        for expo, coeff in self.terms.items():
            term = Fraction(coeff)
            for e, c in zip(expo, cov):
                if e:
                    term *= c**e
            total += term
        return total

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ChowClass):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    @classmethod
    def one(cls, rank: int) -> "ChowClass":
        return cls(rank, {(0,) * rank: 1})

    @classmethod
    def zero(cls, rank: int) -> "ChowClass":
        return cls(rank, {})


def _poly_mul_linear(
    terms: dict[tuple[int, ...], int], root: Root
) -> dict[tuple[int, ...], int]:
    out: dict[tuple[int, ...], int] = {}
    for expo, coeff in terms.items():
        for i, m in enumerate(root):
            if not m:
                continue
            key = expo[:i] + (expo[i] + 1,) + expo[i + 1 :]
            val = out.get(key, 0) + coeff * m
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


def _poly_add_into(acc: dict[tuple[int, ...], int], terms: dict[tuple[int, ...], int]) -> None:
    for key, coeff in terms.items():
        val = acc.get(key, 0) + coeff
        if val:
            acc[key] = val
        elif key in acc:
            del acc[key]


@dataclass(frozen=True)
class KClass:
    """Integer element of the group ring of the root lattice.

    Terms map lattice vectors lam (exponents of e^lam, in simple-root
    coordinates) to coefficients.
    """

    rank: int
    terms: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k in [k for k, v in self.terms.items() if v == 0]:
            del self.terms[k]

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.rank, 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KClass):
            return NotImplemented
        return self.rank == other.rank and self.terms == other.terms

    @classmethod
    def one(cls, rank: int) -> "KClass":
        return cls(rank, {(0,) * rank: 1})


def _kmul_exp_minus_one(
    terms: dict[tuple[int, ...], int], root: Root
) -> dict[tuple[int, ...], int]:
    # multiply by (e^{-root} - 1)
    out: dict[tuple[int, ...], int] = {}
    for lam, coeff in terms.items():
        shifted = tuple(a - b for a, b in zip(lam, root))
        for key, sign in ((shifted, 1), (lam, -1)):
            val = out.get(key, 0) + sign * coeff
            if val:
                out[key] = val
            elif key in out:
                del out[key]
    return out


@dataclass(frozen=True)
class RootSequence:
    """A reduced word for x together with its roots r(1..l(x)).

    r(j) = s_{i_1} ... s_{i_{j-1}} (alpha_{i_j}); as a set the r(j) are
    exactly Down_x = I(x^{-1}).
    """

    word: tuple[int, ...]
    roots: tuple[Root, ...]


def root_sequence(g: WeylGroup, word: Sequence[int]) -> RootSequence:
    """Compute the r-sequence of a reduced word; reject non-reduced input."""
    word = tuple(word)
    prefix = g.identity
    roots = []
    for i in word:
        g._check_index(i)
        if not prefix.acts_positively(i):
            raise NotReducedError(f"word {word} is not reduced (letter s_{i})")
        roots.append(prefix.act(g.datum.simple_root(i)))
        prefix = prefix.mul_simple(i)
    return RootSequence(word, tuple(roots))


def _verify_word_for(g: WeylGroup, word: Sequence[int], x: WeylElement) -> tuple[int, ...]:
    word = tuple(word)
    prod = g.from_word(word)
    if prod != x:
        raise NotReducedError(f"word {word} does not multiply to the requested element")
    if len(word) != x.length():
        raise NotReducedError(f"word {word} is not reduced")
    return word


def enumerate_subexpressions(
    g: WeylGroup, word: Sequence[int], w: WeylElement, mode: str = "reduced"
) -> Iterator[tuple[int, ...]]:
    """Position lists (1-based) of subexpressions of `word` producing w.

    mode "reduced": lists of length l(w) whose letters, multiplied in the
    group, form a reduced word for w.  mode "hecke": lists of any length
    whose 0-Hecke product is w.  Emission is lexicographic; the search is
    depth first over positions, pruned by whether w remains reachable via
    the Demazure product of the remaining suffix.
    """
    if mode not in ("reduced", "hecke"):
        raise ValueError(f"mode must be 'reduced' or 'hecke', not {mode!r}")
    word = tuple(word)
    rs = root_sequence(g, word)  # also validates reducedness
    del rs
    # suffix Demazure products D[j] = Dem(word[j:])
    k = len(word)
    D = [g.identity] * (k + 1)
    for j in reversed(range(k)):
        d = D[j + 1]
        d_inv = d.inverse()
        if not d_inv.acts_positively(word[j]):
            D[j] = d
        else:
            D[j] = d.simple_mul(word[j])

    # Both walks pick the next taken position in ascending order, with the
    # "stop here" option first; that makes emission genuinely lexicographic
    # even when one valid position list is a prefix of another.
    if mode == "reduced":
        target_len = w.length()

        def walk_reduced(
            j: int, u: WeylElement, u_inv: WeylElement, chosen: tuple[int, ...]
        ) -> Iterator[tuple[int, ...]]:
            if u == w:
                yield chosen  # chosen letters all increase length, so no extension works
                return
            for p in range(j, k):
                i = word[p]
                if not u.acts_positively(i):
                    continue
                u2 = u.mul_simple(i)
                u2_inv = u_inv.simple_mul(i)
                rem = u2_inv * w
                if u2.length() + rem.length() == target_len and bruhat_leq(rem, D[p + 1]):
                    yield from walk_reduced(p + 1, u2, u2_inv, chosen + (p + 1,))

        if bruhat_leq(w, D[0]):
            yield from walk_reduced(0, g.identity, g.identity, ())
        return

    def walk_hecke(j: int, u: WeylElement, chosen: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if u == w:
            yield chosen  # extensions may still produce w again
        for p in range(j, k):
            i = word[p]
            u2 = u.mul_simple(i) if u.acts_positively(i) else u
            if not bruhat_leq(u2, w):
                continue
            if not bruhat_leq(w, demazure_right(u2, D[p + 1])):
                continue
            yield from walk_hecke(p + 1, u2, chosen + (p + 1,))

    if bruhat_leq(w, D[0]):
        yield from walk_hecke(0, g.identity, ())


def _standard_twist_inputs(
    w: WeylElement, x: WeylElement, word: Sequence[int] | None
) -> tuple[WeylElement, WeylElement]:
    if word is not None:
        raise NotImplementedError(
            "an explicit reduced word applies to the opposite variant only; "
            "the standard variant is computed through the longest-element twist"
        )
    w0 = w.group.longest_element()
    return w0 * w, w0 * x


def _twist_sign_permutation(g: WeylGroup) -> tuple[int, ...]:
    """sigma with w_0(alpha_i) = -alpha_{sigma(i)} (0-based output)."""
    w0 = g.longest_element()
    out = []
    for i in range(1, g.rank + 1):
        img = tuple(-c for c in w0.act(g.datum.simple_root(i)))
        out.append(img.index(1))
    return tuple(out)


def billey_restriction(
    w: WeylElement,
    x: WeylElement,
    word: Sequence[int] | None = None,
    variant: Variant = Variant.OPPOSITE,
) -> ChowClass:
    """Restriction of the equivariant Chow Schubert class of w to x.

    Sum over reduced subexpressions for w inside a reduced word for x of
    the products r(i_1) ... r(i_d).  Zero exactly when x is not in the
    Schubert variety.  The standard variant is reduced to the opposite one
    by the longest-element symmetry X_w = w_0 X^{w_0 w}.
    """
    g = x.group
    if variant == Variant.STANDARD:
        wop, xop = _standard_twist_inputs(w, x, word)
        inner = billey_restriction(wop, xop, None, Variant.OPPOSITE)
        sigma = _twist_sign_permutation(g)
        terms: dict[tuple[int, ...], int] = {}
        for expo, coeff in inner.terms.items():
            out = [0] * g.rank
            for i, e in enumerate(expo):
                out[sigma[i]] = e
            sign = -1 if sum(expo) % 2 else 1
            key = tuple(out)
            terms[key] = terms.get(key, 0) + sign * coeff
        return ChowClass(g.rank, terms)

    word = x.word() if word is None else _verify_word_for(g, word, x)
    rs = root_sequence(g, word)
    acc: dict[tuple[int, ...], int] = {}
    for positions in enumerate_subexpressions(g, word, w, "reduced"):
        term = {(0,) * g.rank: 1}
        for p in positions:
            term = _poly_mul_linear(term, rs.roots[p - 1])
        _poly_add_into(acc, term)
    return ChowClass(g.rank, acc)


def gw_restriction(
    w: WeylElement,
    x: WeylElement,
    word: Sequence[int] | None = None,
    variant: Variant = Variant.OPPOSITE,
) -> KClass:
    """Restriction of the K-theory structure-sheaf class of w to x.

    (-1)^{l(w)} times the sum over 0-Hecke subexpressions for w of the
    products (e^{-r(i_1)} - 1) ... (e^{-r(i_m)} - 1).
    """
    g = x.group
    if variant == Variant.STANDARD:
        wop, xop = _standard_twist_inputs(w, x, word)
        inner = gw_restriction(wop, xop, None, Variant.OPPOSITE)
        w0 = g.longest_element()
        terms: dict[tuple[int, ...], int] = {}
        for lam, coeff in inner.terms.items():
            key = w0.act(lam)
            terms[key] = terms.get(key, 0) + coeff
        return KClass(g.rank, terms)

    word = x.word() if word is None else _verify_word_for(g, word, x)
    rs = root_sequence(g, word)
    sign = -1 if w.length() % 2 else 1
    acc: dict[tuple[int, ...], int] = {}
    for positions in enumerate_subexpressions(g, word, w, "hecke"):
        term = {(0,) * g.rank: sign}
        for p in positions:
            term = _kmul_exp_minus_one(term, rs.roots[p - 1])
        for key, coeff in term.items():
            val = acc.get(key, 0) + coeff
            if val:
                acc[key] = val
            elif key in acc:
                del acc[key]
    return KClass(g.rank, acc)


def denominator_roots(
    w: WeylElement, x: WeylElement, variant: Variant = Variant.OPPOSITE
) -> tuple[Root, ...]:
    """The roots whose product (or lambda_-1 factors) normalizes the
    restriction: Down_{x,P} for the opposite variant, Up_x^P for the
    standard one, with P the maximal parabolic of w."""
    P = max_parabolic(w, variant)
    sets = down_up_sets(x, P)
    return sets.down_p if variant == Variant.OPPOSITE else sets.up_p
