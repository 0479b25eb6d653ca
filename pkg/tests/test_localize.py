"""Subexpression enumeration and fixed-point class restrictions."""

import itertools
from fractions import Fraction

import pytest

from schublocal.localize import (
    ChowClass,
    KClass,
    NotReducedError,
    billey_restriction,
    enumerate_subexpressions,
    gw_restriction,
    root_sequence,
)
from schublocal.rootsys import covector_from_diag, pair
from schublocal.schub import Variant, down_up_sets
from schublocal.weyl import bruhat_leq, hecke_product, reduced_words

from conftest import WORD_72, WORD_73, eps

R_LIST_72 = (
    eps(2, 3), eps(1, 3), eps(4, 5), eps(2, 5), eps(4, 6), eps(2, 6),
    eps(1, 5), eps(3, 5), eps(1, 6), eps(3, 6), eps(2, 4), eps(1, 4),
)
R_LIST_73 = (
    eps(4, 5), eps(3, 5), eps(2, 5), eps(1, 5), eps(4, 6), eps(3, 6),
    eps(2, 6), eps(1, 6), eps(2, 3), eps(1, 3), eps(2, 4), eps(1, 4),
)

# the fifteen reduced subexpressions of the first worked example: seven are
# listed explicitly, the other eight come from the free choices 1-or-1,
# 3-or-3, 5-or-5 around fixed positions 1, 10, 12
SUBS_72 = {
    (1, 2, 4, 5, 6, 7), (1, 2, 4, 5, 7, 12), (1, 2, 4, 7, 11, 12),
    (5, 7, 8, 9, 10, 12), (7, 8, 9, 10, 11, 12),
    (1, 2, 4, 5, 6, 10), (1, 4, 5, 6, 8, 10),
} | {
    tuple(sorted((1, a, b, c, 10, 12)))
    for a in (2, 8) for b in (4, 9) for c in (5, 11)
}

SUBS_73_REDUCED = {
    (2, 3, 4, 7, 8, 11, 12),
    (2, 3, 4, 5, 7, 8, 12),
    (2, 3, 4, 5, 7, 8, 9),
}
SUBS_73_HECKE = SUBS_73_REDUCED | {
    (2, 3, 4, 5, 7, 8, 11, 12),
    (2, 3, 4, 5, 7, 8, 9, 12),
}


# --- root sequences -----------------------------------------------------------


def test_root_sequence_worked_examples(a5):
    assert root_sequence(a5, WORD_72).roots == R_LIST_72
    assert root_sequence(a5, WORD_73).roots == R_LIST_73


def test_root_sequence_is_inversion_set_of_inverse(a5, a3):
    x = a5.from_word(WORD_72)
    assert set(root_sequence(a5, WORD_72).roots) == set(x.inverse().inversion_set())
    for w in a3.elements():
        rs = root_sequence(a3, w.word())
        assert set(rs.roots) == set(w.inverse().inversion_set())
        assert len(rs.roots) == w.length()


def test_root_sequence_single_letter(a3):
    assert root_sequence(a3, (2,)).roots == ((0, 1, 0),)


def test_root_sequence_rejects_non_reduced(a3):
    with pytest.raises(NotReducedError):
        root_sequence(a3, (1, 1))
    with pytest.raises(NotReducedError):
        root_sequence(a3, (1, 2, 1, 2))


# --- subexpression enumeration ---------------------------------------------------


def naive_subexpressions(g, word, w, mode):
    """Oracle: scan all 2^k position subsets."""
    out = []
    k = len(word)
    for mask in range(1 << k):
        positions = tuple(i + 1 for i in range(k) if mask >> i & 1)
        letters = [word[p - 1] for p in positions]
        if mode == "reduced":
            u = g.from_word(letters)
            if u == w and u.length() == len(letters) == w.length():
                out.append(positions)
        else:
            if hecke_product(g, letters) == w:
                out.append(positions)
    return sorted(out)


def test_worked_reduced_subexpressions(a5, fix72):
    w, _ = fix72
    subs = list(enumerate_subexpressions(a5, WORD_72, w, "reduced"))
    assert len(subs) == 15
    assert set(subs) == SUBS_72
    assert subs == sorted(subs)  # lexicographic emission
    assert (1, 2, 4, 5, 6, 7) in subs


def test_worked_hecke_subexpressions(a5, fix73):
    w, _ = fix73
    reduced = list(enumerate_subexpressions(a5, WORD_73, w, "reduced"))
    hecke = list(enumerate_subexpressions(a5, WORD_73, w, "hecke"))
    assert set(reduced) == SUBS_73_REDUCED
    assert set(hecke) == SUBS_73_HECKE
    assert hecke == sorted(hecke)


def test_pruned_enumeration_matches_naive(a3, a5, fix72, fix73):
    for mode in ("reduced", "hecke"):
        # the two 12-letter A5 fixtures
        for (w, _), word in [(fix72, WORD_72), (fix73, WORD_73)]:
            got = sorted(enumerate_subexpressions(a5, word, w, mode))
            assert got == naive_subexpressions(a5, word, w, mode)
        # all words of x = w0 in A3 against a few targets
        w0 = a3.longest_element()
        targets = [a3.identity, a3.simple(2), a3.from_one_line((2, 4, 1, 3)),
                   a3.from_one_line((3, 4, 1, 2)), w0]
        for word in list(reduced_words(w0))[:4]:
            for w in targets:
                got = sorted(enumerate_subexpressions(a3, word, w, mode))
                assert got == naive_subexpressions(a3, word, w, mode)


def test_identity_subexpressions(a3):
    word = a3.longest_element().word()
    assert list(enumerate_subexpressions(a3, word, a3.identity, "reduced")) == [()]
    assert list(enumerate_subexpressions(a3, word, a3.identity, "hecke")) == [()]


def test_subexpression_counts_vs_bruhat(a3):
    els = list(a3.elements())
    for x in els:
        word = x.word()
        for w in els:
            reduced = len(list(enumerate_subexpressions(a3, word, w, "reduced")))
            hecke = len(list(enumerate_subexpressions(a3, word, w, "hecke")))
            assert (reduced >= 1) == bruhat_leq(w, x)
            assert hecke >= reduced


# --- Chow restriction --------------------------------------------------------------


def test_billey_identity_class(a5, fix72):
    _, x = fix72
    assert billey_restriction(a5.identity, x) == ChowClass.one(5)


def test_billey_at_base_point(a5, fix72):
    w, _ = fix72
    cls = billey_restriction(w, w)
    # single full-word subexpression: the product of the Down_w roots
    expected = ChowClass.one(5)
    terms = expected.terms
    for beta in down_up_sets(w, ()).down:
        nxt = {}
        for expo, coeff in terms.items():
            for i, m in enumerate(beta):
                if m:
                    key = expo[:i] + (expo[i] + 1,) + expo[i + 1 :]
                    nxt[key] = nxt.get(key, 0) + coeff * m
        terms = nxt
    assert cls == ChowClass(5, terms)


def test_billey_worked_evaluation(a5, fix72, fix73):
    v = covector_from_diag([1, 1, 0, 0, -1, -1])
    w, x = fix72
    assert billey_restriction(w, x, WORD_72).evaluate(v) == 48  # 16+8+8+16
    w73, _ = fix73
    assert billey_restriction(w73, x, WORD_73).evaluate(v) == 48  # 16+16+16


def test_billey_contribution_groups(a5, fix72):
    # the worked example tallies its fifteen terms in four groups
    w, x = fix72
    v = covector_from_diag([1, 1, 0, 0, -1, -1])
    rs = root_sequence(a5, WORD_72)

    def contribution(positions):
        val = Fraction(1)
        for p in positions:
            val *= pair(rs.roots[p - 1], v)
        return val

    group1 = [(1, 2, 4, 5, 6, 7), (1, 2, 4, 5, 7, 12), (1, 2, 4, 7, 11, 12)]
    group2 = [(5, 7, 8, 9, 10, 12), (7, 8, 9, 10, 11, 12)]
    group3 = [(1, 2, 4, 5, 6, 10), (1, 4, 5, 6, 8, 10)]
    group4 = [t for t in SUBS_72 if t not in group1 + group2 + group3]
    assert sum(contribution(t) for t in group1) == 16
    assert sum(contribution(t) for t in group2) == 8
    assert sum(contribution(t) for t in group3) == 8
    assert sum(contribution(t) for t in group4) == 16
    assert contribution((1, 2, 4, 5, 6, 7)) == 8


def test_billey_zero_iff_not_bruhat(a3):
    els = list(a3.elements())
    for w, x in itertools.product(els, repeat=2):
        assert billey_restriction(w, x).is_zero() == (not bruhat_leq(w, x))


def test_billey_homogeneous_degree(a3):
    els = list(a3.elements())
    for w, x in itertools.product(els, repeat=2):
        cls = billey_restriction(w, x)
        if not cls.is_zero():
            assert cls.degrees() == {w.length()}


def test_billey_word_independence(a3, a5, fix72, fix73):
    els = list(a3.elements())
    for x in els:
        canon = {w.images: billey_restriction(w, x) for w in els if bruhat_leq(w, x)}
        for word in reduced_words(x):
            for w in els:
                if bruhat_leq(w, x):
                    assert billey_restriction(w, x, word) == canon[w.images]
    # A5 spot checks with both worked-example words for the same x
    for w, x in [fix72, fix73]:
        assert billey_restriction(w, x, WORD_72) == billey_restriction(w, x, WORD_73)


def test_billey_rejects_bad_words(a5, fix72):
    w, x = fix72
    with pytest.raises(NotReducedError):
        billey_restriction(w, x, (1, 2))  # not a word for x
    with pytest.raises(NotReducedError):
        billey_restriction(w, x, WORD_72 + (1, 1))  # multiplies to x, not reduced


# --- K-theory restriction -------------------------------------------------------------


def test_gw_identity_class(a5, fix72):
    _, x = fix72
    assert gw_restriction(a5.identity, x) == KClass.one(5)


def test_gw_word_independence(a3, a5, fix72, fix73):
    els = list(a3.elements())
    for x in els:
        for w in els:
            if not bruhat_leq(w, x):
                continue
            canon = gw_restriction(w, x)
            for word in reduced_words(x):
                assert gw_restriction(w, x, word) == canon
    for w, x in [fix72, fix73]:
        assert gw_restriction(w, x, WORD_72) == gw_restriction(w, x, WORD_73)


def u_poly_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def test_gw_worked_summands(a5, fix73):
    # each 0-Hecke summand evaluates to (t-1)^3 (t^2-1)^4 for the three
    # reduced lists and (t-1)^4 (t^2-1)^4 for the two longer ones
    v = covector_from_diag([1, 1, 0, 0, -1, -1])  # evaluation at minus the certificate
    rs = root_sequence(a5, WORD_73)
    t_minus_1 = {1: 1, 0: -1}
    t2_minus_1 = {2: 1, 0: -1}

    def summand(positions):
        acc = {0: 1}
        for p in positions:
            val = pair(rs.roots[p - 1], v)
            acc = u_poly_mul(acc, t_minus_1 if val == 1 else t2_minus_1)
            assert val in (1, 2)
        return acc

    short = u_poly_mul({0: 1}, t_minus_1)
    for _ in range(2):
        short = u_poly_mul(short, t_minus_1)
    for _ in range(4):
        short = u_poly_mul(short, t2_minus_1)
    long = u_poly_mul(short, t_minus_1)
    got = sorted(tuple(sorted(summand(s).items())) for s in SUBS_73_HECKE)
    expected = sorted(
        [tuple(sorted(short.items()))] * 3 + [tuple(sorted(long.items()))] * 2
    )
    assert got == expected


def chow_like_expansion(kcls, degree):
    """Taylor-expand sum c_lam e^lam through total degree `degree`.

    Returns a list of Fraction-coefficient polynomials by degree; the
    oracle for the lowest-order comparison against the Chow class.
    """
    rank = kcls.rank
    by_degree = [dict() for _ in range(degree + 1)]
    for lam, coeff in kcls.terms.items():
        # powers of the linear form lam, divided by factorials
        power = {(0,) * rank: Fraction(1)}
        fact = 1
        for k in range(degree + 1):
            if k:
                fact *= k
            for expo, c in power.items():
                tgt = by_degree[k]
                val = tgt.get(expo, Fraction(0)) + coeff * c / fact
                if val:
                    tgt[expo] = val
                elif expo in tgt:
                    del tgt[expo]
            if k < degree:
                nxt = {}
                for expo, c in power.items():
                    for i, m in enumerate(lam):
                        if m:
                            key = expo[:i] + (expo[i] + 1,) + expo[i + 1 :]
                            nxt[key] = nxt.get(key, Fraction(0)) + c * m
                power = {k2: v for k2, v in nxt.items() if v}
        # note: power now holds lam^degree coefficients; factorial folded in
    return by_degree


def test_gw_lowest_degree_is_billey(a3):
    # every Hecke summand has at least l(w) factors, each of lowest order
    # one, so the K class starts in degree l(w) -- and there it equals the
    # Chow class (the sign (-1)^{l(w)} cancels against the lowest terms of
    # the l(w) factors e^{-r} - 1 = -r + r^2/2 - ...)
    els = list(a3.elements())
    for w, x in itertools.product(els, repeat=2):
        if not bruhat_leq(w, x):
            continue
        lw = w.length()
        expansion = chow_like_expansion(gw_restriction(w, x), lw)
        for k in range(lw):
            assert not expansion[k], (w.one_line(), x.one_line(), k)
        chow = billey_restriction(w, x)
        assert expansion[lw] == {e: Fraction(c) for e, c in chow.terms.items()}


# --- standard variant ------------------------------------------------------------------


def test_standard_restriction_mirrors_opposite(a3):
    w0 = a3.longest_element()
    els = list(a3.elements())
    for w, x in itertools.product(els, repeat=2):
        std = billey_restriction(w, x, variant=Variant.STANDARD)
        assert std.is_zero() == (not bruhat_leq(x, w))
        if not std.is_zero():
            assert std.degrees() == {w0.length() - w.length()}
    # support of the K class agrees too
    for w, x in itertools.product(els[:10], repeat=2):
        kstd = gw_restriction(w, x, variant=Variant.STANDARD)
        assert kstd.is_zero() == (not bruhat_leq(x, w))


def test_standard_base_point_class(a3):
    # at x = w the standard restriction is the product of the Up_w roots
    for w in a3.elements():
        cls = billey_restriction(w, w, variant=Variant.STANDARD)
        terms = {(0, 0, 0): 1}
        for beta in down_up_sets(w, ()).up:
            nxt = {}
            for expo, coeff in terms.items():
                for i, m in enumerate(beta):
                    if m:
                        key = expo[:i] + (expo[i] + 1,) + expo[i + 1 :]
                        nxt[key] = nxt.get(key, 0) + coeff * m
            terms = nxt
        assert cls == ChowClass(3, {k: v for k, v in terms.items() if v})


def test_standard_variant_rejects_explicit_word(a3):
    w0 = a3.longest_element()
    with pytest.raises(NotImplementedError):
        billey_restriction(a3.simple(1), w0, w0.word(), variant=Variant.STANDARD)
