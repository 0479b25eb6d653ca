"""Weyl group arithmetic: elements, words, Bruhat order, 0-Hecke products.

An element is stored by its action on the simple roots; the action extends
linearly to the whole root lattice.  Words multiply left to right, so
appending a letter multiplies on the right.  Generator indices are 1-based
throughout, matching the usual s_1 .. s_n naming.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .rootsys import (
    CartanDatum,
    Covector,
    Root,
    build_root_system,
    coroot_pairing,
    root_sign,
)

__all__ = [
    "MixedGroupError",
    "WeylGroup",
    "WeylElement",
    "group",
    "bruhat_leq",
    "hecke_product",
    "demazure_right",
    "reduced_words",
    "coset_rep",
]

# Memo caches stop growing past this many elements; lookups keep working.
CACHE_CAP = 200_000


class MixedGroupError(ValueError):
    """Raised when operands live in different Weyl groups."""


@lru_cache(maxsize=None)
def group(label: str) -> "WeylGroup":
    """Shared WeylGroup instance for a type label."""
    return WeylGroup(CartanDatum.from_label(label))


class WeylGroup:
    """The Weyl group of a Cartan datum, with per-group memo caches."""

    def __init__(self, datum: CartanDatum):
        self.datum = datum
        self.rank = datum.rank
        self.positive_roots = build_root_system(datum)
        self._simple_images = tuple(
            tuple(_reflect_simple(datum, i, datum.simple_root(j + 1)) for j in range(self.rank))
            for i in range(self.rank)
        )
        self.identity = WeylElement(
            self, tuple(datum.simple_root(j + 1) for j in range(self.rank))
        )
        self._word_cache: dict[tuple, tuple[int, ...]] = {}
        self._rw_cache: dict[tuple, tuple[tuple[int, ...], ...]] = {}
        self._rw_lock = threading.Lock()

    def __eq__(self, other: object) -> bool:
        return isinstance(other, WeylGroup) and self.datum == other.datum

    def __hash__(self) -> int:
        return hash(self.datum)

    def __repr__(self) -> str:
        return f"WeylGroup({self.datum.label})"

    @property
    def is_type_a(self) -> bool:
        return self.datum.is_type_a

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    def simple(self, i: int) -> "WeylElement":
        self._check_index(i)
        return WeylElement(self, self._simple_images[i - 1])

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexError(f"generator index {i} out of range 1..{self.rank}")

    def from_word(self, word: Iterable[int]) -> "WeylElement":
        """Group product s_{i_1} ... s_{i_k}; the word need not be reduced."""
        w = self.identity
        for i in word:
            self._check_index(i)
            w = w.mul_simple(i)
        return w

    def from_one_line(self, perm: Sequence[int]) -> "WeylElement":
        """Type A only: the permutation given in one-line notation."""
        if not self.is_type_a:
            raise MixedGroupError(f"one-line notation needs type A, not {self.datum.label}")
        n = self.rank + 1
        p = tuple(perm)
        if sorted(p) != list(range(1, n + 1)):
            raise ValueError(f"{perm!r} is not a permutation of 1..{n}")
        images = []
        for i in range(1, n):
            images.append(_eps_diff(p[i - 1], p[i], n))
        return WeylElement(self, tuple(images))

    def reflection(self, beta: Root) -> "WeylElement":
        """The reflection s_beta for any root beta."""
        images = []
        for j in range(self.rank):
            alpha_j = self.datum.simple_root(j + 1)
            c = coroot_pairing(self.datum, alpha_j, beta)
            images.append(tuple(a - c * b for a, b in zip(alpha_j, beta)))
        return WeylElement(self, tuple(images))

    def longest_element(self) -> "WeylElement":
        w = self.identity
        while True:
            i = next((i for i in range(1, self.rank + 1) if w.acts_positively(i)), None)
            if i is None:
                return w
            w = w.mul_simple(i)

    def elements(self) -> Iterator["WeylElement"]:
        """All group elements, BFS by length (deterministic order)."""
        seen = {self.identity}
        layer = [self.identity]
        while layer:
            yield from layer
            nxt = []
            for w in layer:
                for i in range(1, self.rank + 1):
                    if w.acts_positively(i):
                        u = w.mul_simple(i)
                        if u not in seen:
                            seen.add(u)
                            nxt.append(u)
            nxt.sort(key=lambda u: u.images)
            layer = nxt


def _reflect_simple(datum: CartanDatum, i: int, beta: Root) -> Root:
    c = sum(m * datum.cartan[i][j] for j, m in enumerate(beta) if m)
    out = list(beta)
    out[i] -= c
    return tuple(out)


def _eps_diff(a: int, b: int, n: int) -> Root:
    # e_a - e_b as a vector over alpha_1..alpha_{n-1}
    coords = [0] * (n - 1)
    lo, hi, sgn = (a, b, 1) if a < b else (b, a, -1)
    for k in range(lo, hi):
        coords[k - 1] = sgn
    return tuple(coords)


@dataclass(frozen=True)
class WeylElement:
    """A Weyl group element, stored as its images of the simple roots."""

    group: WeylGroup
    images: tuple[Root, ...]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.images == other.images and self.group == other.group

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        if self.group.is_type_a:
            return f"W[{' '.join(map(str, self.one_line()))}]"
        return f"W{self.word()}"

    def _same_group(self, other: "WeylElement") -> None:
        if self.group != other.group:
            raise MixedGroupError(
                f"elements of {self.group.datum.label} and {other.group.datum.label} do not mix"
            )

    def act(self, root: Sequence[int]) -> Root:
        """Linear action on a root-lattice vector."""
        out = [0] * self.group.rank
        for j, m in enumerate(root):
            if m:
                img = self.images[j]
                for k in range(self.group.rank):
                    out[k] += m * img[k]
        return tuple(out)

    def act_covector(self, cov: Covector) -> Covector:
        """Push a covector forward: (w . v) pairs with alpha as v does with w^{-1} alpha."""
        inv = self.inverse()
        rank = self.group.rank
        return tuple(
            sum((m * cov[k] for k, m in enumerate(inv.images[j]) if m), Fraction(0))
            for j in range(rank)
        )

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        self._same_group(other)
        return WeylElement(self.group, tuple(self.act(img) for img in other.images))

    def mul_simple(self, i: int) -> "WeylElement":
        """Right multiplication by s_i (cheap: one column update)."""
        self.group._check_index(i)
        cartan = self.group.datum.cartan
        col = self.images[i - 1]
        images = []
        for j in range(self.group.rank):
            c = cartan[i - 1][j]
            if j == i - 1:
                images.append(tuple(-x for x in col))
            elif c:
                images.append(tuple(x - c * y for x, y in zip(self.images[j], col)))
            else:
                images.append(self.images[j])
        return WeylElement(self.group, tuple(images))

    def simple_mul(self, i: int) -> "WeylElement":
        """Left multiplication by s_i."""
        datum = self.group.datum
        return WeylElement(
            self.group, tuple(_reflect_simple(datum, i - 1, img) for img in self.images)
        )

    def inverse(self) -> "WeylElement":
        """Exact inverse of the (unimodular) action matrix."""
        n = self.group.rank
        # columns of the action matrix are the images
        m = [[Fraction(self.images[j][k]) for j in range(n)] for k in range(n)]
        inv = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
        for col in range(n):
            piv = next(r for r in range(col, n) if m[r][col] != 0)
            m[col], m[piv] = m[piv], m[col]
            inv[col], inv[piv] = inv[piv], inv[col]
            f = m[col][col]
            m[col] = [x / f for x in m[col]]
            inv[col] = [x / f for x in inv[col]]
            for r in range(n):
                if r != col and m[r][col] != 0:
                    g = m[r][col]
                    m[r] = [a - g * b for a, b in zip(m[r], m[col])]
                    inv[r] = [a - g * b for a, b in zip(inv[r], inv[col])]
        images = tuple(
            tuple(int(inv[k][j]) for k in range(n)) for j in range(n)
        )
        return WeylElement(self.group, images)

    def is_identity(self) -> bool:
        return self == self.group.identity

    def acts_positively(self, i: int) -> bool:
        """True iff w(alpha_i) > 0, i.e. l(w s_i) > l(w)."""
        return root_sign(self.images[i - 1]) > 0

    def length(self) -> int:
        return sum(1 for beta in self.group.positive_roots if root_sign(self.act(beta)) < 0)

    def inversion_set(self) -> tuple[Root, ...]:
        """I(w) = positive roots sent negative, in root-system order."""
        return tuple(
            beta for beta in self.group.positive_roots if root_sign(self.act(beta)) < 0
        )

    def word(self) -> tuple[int, ...]:
        """Canonical reduced word: lexicographically least, by repeated
        leftmost-descent extraction."""
        cache = self.group._word_cache
        got = cache.get(self.images)
        if got is not None:
            return got
        letters = []
        u_inv = self.inverse()  # l(s_i w) < l(w)  iff  w^{-1}(alpha_i) < 0
        while True:
            i = next(
                (i for i in range(1, self.group.rank + 1) if not u_inv.acts_positively(i)),
                None,
            )
            if i is None:
                break
            letters.append(i)
            u_inv = u_inv.mul_simple(i)
        out = tuple(letters)
        if len(cache) < CACHE_CAP:
            cache[self.images] = out
        return out

    def one_line(self) -> tuple[int, ...]:
        """Type A only: one-line notation of the permutation."""
        if not self.group.is_type_a:
            raise MixedGroupError(f"one-line notation needs type A, not {self.group.datum.label}")
        n = self.group.rank + 1
        eps_images = [_to_eps(img, n) for img in self.images]
        out = [0] * n
        out[0] = next(k + 1 for k, c in enumerate(eps_images[0]) if c == 1)
        for i in range(1, n):
            out[i] = next(k + 1 for k, c in enumerate(eps_images[i - 1]) if c == -1)
        return tuple(out)

    def descents_left(self) -> tuple[int, ...]:
        inv = self.inverse()
        return tuple(
            i for i in range(1, self.group.rank + 1) if not inv.acts_positively(i)
        )


def _to_eps(coords: Root, n: int) -> tuple[int, ...]:
    # expand sum m_i (e_i - e_{i+1}) into epsilon coordinates
    out = [0] * n
    prev = 0
    for k in range(n - 1):
        out[k] = coords[k] - prev
        prev = coords[k]
    out[n - 1] = -prev
    return tuple(out)


def bruhat_leq(x: WeylElement, w: WeylElement) -> bool:
    """True iff x <= w in Bruhat order.

    Type A uses the one-line (tableau) criterion; other types walk the
    canonical word of w with the lifting property.  The two routes agree
    (cross-checked in the test suite).
    """
    x._same_group(w)
    if x.group.is_type_a:
        return _bruhat_tableau(x.one_line(), w.one_line())
    return _bruhat_subword(x, w)


def _bruhat_tableau(a: Sequence[int], b: Sequence[int]) -> bool:
    n = len(a)
    sa: list[int] = []
    sb: list[int] = []
    for i in range(n - 1):
        _insort(sa, a[i])
        _insort(sb, b[i])
        for p, q in zip(sa, sb):
            if p > q:
                return False
    return True


def _insort(lst: list[int], v: int) -> None:
    lo, hi = 0, len(lst)
    while lo < hi:
        mid = (lo + hi) // 2
        if lst[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    lst.insert(lo, v)


def _bruhat_subword(x: WeylElement, w: WeylElement) -> bool:
    if x.length() > w.length():
        return False
    u = x
    u_inv = x.inverse()
    for i in w.word():
        # lifting: replace x <= w by (s_i x <= s_i w) when s_i descends both
        if not u_inv.acts_positively(i):
            u = u.simple_mul(i)
            u_inv = u_inv.mul_simple(i)
    return u.is_identity()


def hecke_product(g: WeylGroup, word: Iterable[int]) -> WeylElement:
    """0-Hecke (Demazure) product of the letters of the word."""
    u = g.identity
    for i in word:
        g._check_index(i)
        if u.acts_positively(i):
            u = u.mul_simple(i)
    return u


def demazure_right(u: WeylElement, v: WeylElement) -> WeylElement:
    """Demazure product u * v of two elements."""
    u._same_group(v)
    for i in v.word():
        if u.acts_positively(i):
            u = u.mul_simple(i)
    return u


def reduced_words(w: WeylElement) -> Iterator[tuple[int, ...]]:
    """All reduced words of w, lexicographically, duplicate-free."""
    return iter(_reduced_words_cached(w))


def _reduced_words_cached(w: WeylElement) -> tuple[tuple[int, ...], ...]:
    g = w.group
    with g._rw_lock:
        got = g._rw_cache.get(w.images)
    if got is not None:
        return got
    if w.is_identity():
        out: tuple[tuple[int, ...], ...] = ((),)
    else:
        acc = []
        for i in w.descents_left():
            for tail in _reduced_words_cached(w.simple_mul(i)):
                acc.append((i,) + tail)
        out = tuple(acc)
    with g._rw_lock:
        if len(g._rw_cache) < CACHE_CAP:
            g._rw_cache[w.images] = out
    return out


def coset_rep(x: WeylElement, simples: Iterable[int], side: str = "min") -> WeylElement:
    """Minimal or maximal length representative of the coset x W_J.

    The minimal representative r satisfies r(alpha_j) > 0 for all j in J,
    the maximal one r(alpha_j) < 0.
    """
    J = sorted(set(simples))
    for j in J:
        x.group._check_index(j)
    if side not in ("min", "max"):
        raise ValueError(f"side must be 'min' or 'max', not {side!r}")
    want_positive = side == "min"
    r = x
    while True:
        j = next(
            (j for j in J if r.acts_positively(j) != want_positive),
            None,
        )
        if j is None:
            return r
        r = r.mul_simple(j)
