"""Evaluation maps and the multiplicity / Hilbert-series pipeline.

A cominuscule certificate v can pair to zero with some of the roots in the
normalizing denominators, which makes direct evaluation 0/0.  Rather than
describing those cancellations combinatorially, we evaluate along the
pencil v + eps*g for a deterministic covector g that pairs nonzero with
every root, carry eps (multiplicatively, as a second series variable on
the K-theory side) through exact polynomial arithmetic, cancel, and only
then set eps to zero.  Everything is integer or Fraction arithmetic; no
floats anywhere.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, lcm
from typing import Sequence

from .localize import ChowClass, KClass, billey_restriction, denominator_roots, gw_restriction
from .rootsys import Covector, Root, pair
from .schub import (
    NotCominusculeError,
    Variant,
    certify,
    check_bruhat,
    comin_certificate,
    down_up_sets,
    is_cominuscule_element,
    max_parabolic,
)
from .weyl import WeylElement

__all__ = [
    "InternalConsistencyError",
    "HilbertSeries",
    "ev_chow",
    "ev_k",
    "generic_direction",
    "multiplicity",
    "hilbert_series",
    "fast_path_321",
]


class InternalConsistencyError(RuntimeError):
    """An exact cancellation promised by the theory failed to happen."""


def ev_chow(c: ChowClass, v: Covector) -> Fraction:
    """Substitute alpha_i -> alpha_i(v) into the polynomial; exact rational."""
    return c.evaluate(v)


def ev_k(c: KClass, v: Covector) -> tuple[dict[int, int], int]:
    """Evaluate e^lam -> t^{lam(v)}.

    Returns (terms, d) where terms maps u-exponents to coefficients and
    u^d = t; d is the lcm of the denominators of lam(v) over the support,
    so d = 1 means the result is a Laurent polynomial in t itself.
    """
    values = {lam: pair(lam, v) for lam in c.terms}
    d = lcm(*(val.denominator for val in values.values())) if values else 1
    out: dict[int, int] = {}
    for lam, coeff in c.terms.items():
        e = _scaled_int(values[lam], d)
        val = out.get(e, 0) + coeff
        if val:
            out[e] = val
        elif e in out:
            del out[e]
    return out, d


def _scaled_int(value: Fraction, scale: int) -> int:
    scaled = value * scale
    if scaled.denominator != 1:
        raise InternalConsistencyError(f"pairing {value} is not integral at scale {scale}")
    return int(scaled)


def generic_direction(rank: int) -> Covector:
    """Pairings (1, 1/2, 1/4, ...): positive on every positive root, hence
    nonzero on every root."""
    return tuple(Fraction(1, 2**i) for i in range(rank))


def _random_direction(rank: int, seed: int) -> Covector:
    rng = random.Random(seed)
    return tuple(Fraction(rng.randint(1, 997), rng.randint(1, 97)) for _ in range(rank))


def _pick_direction(
    rank: int, roots: Sequence[Root], direction: Covector | None
) -> Covector:
    """Use the supplied or default direction, falling back to seeded random
    rational directions if some constraint root pairs to zero."""
    candidates = [direction] if direction is not None else []
    candidates.append(generic_direction(rank))
    for seed in range(16):
        g = candidates.pop(0) if candidates else _random_direction(rank, seed)
        if all(pair(alpha, g) != 0 for alpha in roots):
            return g
    raise InternalConsistencyError("could not find a direction generic for the constraints")


# ---------------------------------------------------------------------------
# small exact-polynomial toolkits: eps-polynomials (list of Fractions,
# index = power of eps) and Laurent dictionaries in one or two variables.


def _eps_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _eps_order(a: list[Fraction]) -> int | None:
    for i, x in enumerate(a):
        if x:
            return i
    return None


def _u_mul(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    out: dict[int, int] = {}
    for i, x in a.items():
        for j, y in b.items():
            k = i + j
            val = out.get(k, 0) + x * y
            if val:
                out[k] = val
            elif k in out:
                del out[k]
    return out


def _u_div_one_minus_um(f: dict[int, int], m: int) -> dict[int, int] | None:
    """Exact division of a Laurent polynomial by (1 - u^m), m > 0."""
    if not f:
        return {}
    work = dict(f)
    shift = min(work)
    work = {e - shift: c for e, c in work.items()}
    q: dict[int, int] = {}
    while work:
        top = max(work)
        if top < m:
            return None
        c = work.pop(top)
        qe = top - m
        q[qe] = q.get(qe, 0) - c
        lo = work.get(qe, 0) + c
        if lo:
            work[qe] = lo
        elif qe in work:
            del work[qe]
    return {e + shift: c for e, c in q.items()}


def _u_div_binomial(f: dict[int, int], k: int) -> dict[int, int] | None:
    """Exact division by (1 - u^k) for nonzero integer k of either sign."""
    if k > 0:
        return _u_div_one_minus_um(f, k)
    m = -k
    # 1 - u^{-m} = -u^{-m} (1 - u^m):  f / (1 - u^{-m}) = -(u^m f) / (1 - u^m)
    shifted = {e + m: -c for e, c in f.items()}
    return _u_div_one_minus_um(shifted, m)


def _biv_div_z_binomial(
    f: dict[tuple[int, int], int], b: int
) -> dict[tuple[int, int], int] | None:
    """Exact division of a Laurent polynomial in (u, z) by (1 - z^b), b != 0.

    The u-variable is inert here, so the division runs independently on
    each u-slice.
    """
    slices: dict[int, dict[int, int]] = {}
    for (eu, ez), c in f.items():
        slices.setdefault(eu, {})[ez] = c
    out: dict[tuple[int, int], int] = {}
    for eu, zpoly in slices.items():
        q = _u_div_binomial(zpoly, b)
        if q is None:
            return None
        for ez, c in q.items():
            out[(eu, ez)] = c
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HilbertSeries:
    """Canonical form numerator / (1 - t)^dim, plus derived presentations.

    `numerator[j]` is the coefficient of t^j (of u^j when var == "u", in
    which case t = u^scale and the t-structure did not fully collapse --
    a diagnostic, see `warnings`).  `partial_fractions` lists (order i,
    coefficient A_i) with the series equal to sum A_i / (t - 1)^i, and
    `hilbert_poly` holds the exact coefficients of the Hilbert polynomial
    in k, constant term first.
    """

    numerator: tuple[int, ...]
    dim: int
    var: str = "t"
    scale: int = 1
    taylor_prefix: tuple[int, ...] = ()
    hilbert_poly: tuple[Fraction, ...] = ()
    partial_fractions: tuple[tuple[int, int], ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def multiplicity(self) -> int:
        return sum(self.numerator)

    def canonical_str(self) -> str:
        var = self.var
        terms = []
        for j, c in enumerate(self.numerator):
            if not c:
                continue
            if j == 0:
                terms.append(str(c))
            else:
                mono = var if j == 1 else f"{var}^{j}"
                terms.append(f"{c}{mono}" if c != 1 else mono)
        num = " + ".join(terms).replace("+ -", "- ") or "0"
        base = "t" if self.var == "t" else f"u^{self.scale}"
        if self.dim == 0:
            return num
        return f"({num})/(1-{base})^{self.dim}"


def _taylor_prefix(numerator: Sequence[int], dim: int, n: int) -> tuple[int, ...]:
    out = []
    for k in range(n):
        acc = 0
        for j, c in enumerate(numerator):
            if j > k:
                break
            acc += c * comb(k - j + dim - 1, dim - 1) if dim > 0 else (c if j == k else 0)
        out.append(acc)
    return tuple(out)


def _binom_poly(a: int, b: int) -> list[Fraction]:
    """C(k + a, b) as a polynomial in k, constant term first."""
    coeffs = [Fraction(1)]
    for i in range(b):
        # multiply by (k + a - i)
        nxt = [Fraction(0)] * (len(coeffs) + 1)
        for p, c in enumerate(coeffs):
            nxt[p] += c * (a - i)
            nxt[p + 1] += c
        coeffs = nxt
    fb = 1
    for i in range(1, b + 1):
        fb *= i
    return [c / fb for c in coeffs]


def _hilbert_polynomial(numerator: Sequence[int], dim: int) -> tuple[Fraction, ...]:
    if dim == 0:
        return ()
    acc = [Fraction(0)] * dim
    for j, c in enumerate(numerator):
        if not c:
            continue
        for p, q in enumerate(_binom_poly(dim - 1 - j, dim - 1)):
            acc[p] += c * q
    while acc and acc[-1] == 0:
        acc.pop()
    return tuple(acc)


def _partial_fractions(numerator: Sequence[int], dim: int) -> tuple[tuple[int, int], ...]:
    """Write numerator/(1-t)^dim as sum over i of A_i / (t-1)^i."""
    # expand the numerator in powers of s = 1 - t:  P(t) = sum B_m s^m
    B = [Fraction(0)] * (len(numerator) + 1)
    for j, c in enumerate(numerator):
        # t^j = (1 - s)^j
        for m in range(j + 1):
            B[m] += c * comb(j, m) * (-1) ** m
    out = []
    for m, bm in enumerate(B):
        if bm:
            i = dim - m
            coeff = bm * (-1) ** i
            if coeff.denominator != 1:
                raise InternalConsistencyError("non-integer partial fraction coefficient")
            out.append((i, int(coeff)))
    return tuple(sorted(out, reverse=True))


def _scales(v: Covector, g: Covector, roots: Sequence[Root]) -> tuple[int, int]:
    d = lcm(*(pair(beta, v).denominator for beta in roots))
    e = lcm(*(pair(beta, g).denominator for beta in roots))
    return d, e


def _weight_form(x: WeylElement, u: Covector) -> Covector:
    """Transport a positive-root-form certificate to weight form v = -(x.u)."""
    return tuple(-c for c in x.act_covector(u))


def _resolve_certificate(
    w: WeylElement,
    x: WeylElement,
    variant: Variant,
    certificate: Covector | None,
) -> tuple[Covector, tuple[Root, ...]]:
    cert = comin_certificate(w, x, variant)
    if certificate is None:
        if not cert.feasible:
            raise NotCominusculeError(cert)
        return cert.covector, cert.slice_weights  # type: ignore[return-value]
    bad = [b for b in cert.slice_weights if pair(b, certificate) != -1]
    if bad:
        raise ValueError(f"supplied certificate violates constraints at {bad[0]}")
    return tuple(Fraction(c) for c in certificate), cert.slice_weights


def multiplicity(
    w: WeylElement,
    x: WeylElement,
    variant: Variant = Variant.OPPOSITE,
    *,
    word: Sequence[int] | None = None,
    certificate: Covector | None = None,
    direction: Covector | None = None,
) -> int:
    """Multiplicity of the Schubert variety of w at the fixed point of x.

    Evaluates the restricted Chow class against the product of the
    normalizing roots along -(v + eps*g) and reads off the value at
    eps = 0 after cancelling the common power of eps.  The result does not
    depend on the reduced word, the certificate, or the direction.
    """
    u_cert, _ = _resolve_certificate(w, x, variant, certificate)
    v = _weight_form(x, u_cert)
    droots = denominator_roots(w, x, variant)
    g_dir = _pick_direction(x.group.rank, droots, direction)

    numer_class = billey_restriction(w, x, word, variant)
    if numer_class.is_zero():
        raise InternalConsistencyError("restriction vanished although the Bruhat test passed")

    # linear eps-polynomials -(v_i + eps g_i) per variable
    rank = x.group.rank
    lin = [[-v[i], -g_dir[i]] for i in range(rank)]
    powers: list[list[list[Fraction]]] = [[[Fraction(1)]] for _ in range(rank)]
    N = [Fraction(0)]
    for expo, coeff in numer_class.terms.items():
        term = [Fraction(coeff)]
        for i, e in enumerate(expo):
            while len(powers[i]) <= e:
                powers[i].append(_eps_mul(powers[i][-1], lin[i]))
            if e:
                term = _eps_mul(term, powers[i][e])
        if len(term) > len(N):
            N, term = term, N
        for j, c in enumerate(term):
            N[j] += c

    D = [Fraction(1)]
    for alpha in droots:
        D = _eps_mul(D, [-pair(alpha, v), -pair(alpha, g_dir)])

    k = _eps_order(D)
    if k is None:
        raise InternalConsistencyError("denominator vanished identically; direction not generic")
    ordN = _eps_order(N)
    if ordN is None or ordN < k:
        raise InternalConsistencyError(
            "numerator has a pole against the denominator; eps-cancellation failed"
        )
    value = (N[k] if k < len(N) else Fraction(0)) / D[k]
    if value <= 0 or value.denominator != 1:
        raise InternalConsistencyError(f"multiplicity evaluated to {value}, not a positive integer")
    return int(value)


def _canonicalize_u(
    num: dict[int, int],
    d: int,
    dim: int,
    ones_power: int,
    other_factors: Sequence[tuple[int, Root]],
    terms: int,
) -> HilbertSeries:
    """Assemble numerator/(1-t)^dim from an evaluated numerator and the
    denominator factor list: (1-u^d)^ones_power times binomials (1-u^k)."""
    for _ in range(dim):
        num = _u_mul(num, {0: 1, d: -1})
    for _ in range(ones_power):
        quotient = _u_div_binomial(num, d)
        if quotient is None:
            raise InternalConsistencyError("canonicalization failure at factor (1 - t)")
        num = quotient
    for k, alpha in other_factors:
        quotient = _u_div_binomial(num, k)
        if quotient is None:
            raise InternalConsistencyError(
                f"canonicalization failure at factor (1 - u^{k}) from root {alpha}"
            )
        num = quotient

    warnings: list[str] = []
    if not num:
        raise InternalConsistencyError("Hilbert numerator collapsed to zero")
    if min(num) < 0:
        raise InternalConsistencyError("Hilbert numerator has negative exponents")
    if all(e % d == 0 for e in num):
        coeffs = [0] * (max(num) // d + 1)
        for e, c in num.items():
            coeffs[e // d] = c
        var, scale = "t", 1
    else:
        # the result did not collapse to a series in t = u^d; report in u
        coeffs = [0] * (max(num) + 1)
        for e, c in num.items():
            coeffs[e] = c
        var, scale = "u", d
        warnings.append(
            f"series did not collapse to t = u^{d}; upstream certificate is suspect"
        )

    if var == "t":
        if len(coeffs) - 1 > dim:
            raise InternalConsistencyError(
                f"numerator degree {len(coeffs) - 1} exceeds dimension {dim}"
            )
        if coeffs[0] != 1:
            raise InternalConsistencyError(f"numerator constant term is {coeffs[0]}, not 1")
        prefix = _taylor_prefix(coeffs, dim, terms)
        if any(c < 0 for c in prefix):
            raise InternalConsistencyError("negative coefficient in the Hilbert series")
        return HilbertSeries(
            numerator=tuple(coeffs),
            dim=dim,
            taylor_prefix=prefix,
            hilbert_poly=_hilbert_polynomial(coeffs, dim),
            partial_fractions=_partial_fractions(coeffs, dim),
            warnings=tuple(warnings),
        )
    return HilbertSeries(
        numerator=tuple(coeffs), dim=dim, var=var, scale=scale, warnings=tuple(warnings)
    )


def hilbert_series(
    w: WeylElement,
    x: WeylElement,
    variant: Variant = Variant.OPPOSITE,
    terms: int = 12,
    *,
    word: Sequence[int] | None = None,
    certificate: Covector | None = None,
    direction: Covector | None = None,
) -> HilbertSeries:
    """Hilbert series of the Schubert variety of w at the fixed point of x.

    The K-theory restriction and its normalizing product are evaluated as
    Laurent polynomials in (u, z) along the two-parameter direction (v, g);
    the factors that vanish at z = 1 are cancelled exactly, z is set to 1,
    and the remaining rational function in u is brought to the canonical
    form numerator/(1 - t)^dim with dim the variety dimension.
    """
    g = x.group
    u_cert, _ = _resolve_certificate(w, x, variant, certificate)
    v = _weight_form(x, u_cert)
    droots = denominator_roots(w, x, variant)
    g_dir = _pick_direction(g.rank, droots, direction)
    d, e = _scales(v, g_dir, g.positive_roots)

    numer_class = gw_restriction(w, x, word, variant)
    if numer_class.is_zero():
        raise InternalConsistencyError("restriction vanished although the Bruhat test passed")

    num: dict[tuple[int, int], int] = {}
    for lam, coeff in numer_class.terms.items():
        key = (_scaled_int(pair(lam, v), d), _scaled_int(pair(lam, g_dir), e))
        val = num.get(key, 0) + coeff
        if val:
            num[key] = val
        elif key in num:
            del num[key]

    # denominator bookkeeping
    sets = down_up_sets(x, max_parabolic(w, variant))
    if variant == Variant.OPPOSITE:
        ones_power = g.n_positive - x.length() + len(sets.down_l)  # d'
        dim = g.n_positive - w.length()
    else:
        ones_power = x.length() + len(sets.up_l)
        dim = w.length()

    other_factors: list[tuple[int, Root]] = []
    for alpha in droots:
        a = _scaled_int(-pair(alpha, v), d)
        b = _scaled_int(-pair(alpha, g_dir), e)
        if a == 0:
            quotient = _biv_div_z_binomial(num, b)
            if quotient is None:
                raise InternalConsistencyError(
                    f"cancellation of vanishing factor for root {alpha} failed"
                )
            num = quotient
        else:
            other_factors.append((a, alpha))

    num_u: dict[int, int] = {}
    for (eu, _ez), coeff in num.items():
        val = num_u.get(eu, 0) + coeff
        if val:
            num_u[eu] = val
        elif eu in num_u:
            del num_u[eu]

    return _canonicalize_u(num_u, d, dim, ones_power, other_factors, terms)


def fast_path_321(
    w: WeylElement,
    x: WeylElement,
    variant: Variant = Variant.OPPOSITE,
    terms: int = 12,
) -> tuple[int, HilbertSeries]:
    """Simplified evaluation at a cominuscule Weyl-group element.

    Needs a covector pairing to -1 with all of Down_x (opposite variant;
    Up_x for the standard one).  The multiplicity is then a plain
    evaluation of the Chow restriction and the Hilbert series needs no
    normalizing product at all.  Agrees with the general path wherever
    both apply.
    """
    g = x.group
    check_bruhat(w, x, variant)
    if variant == Variant.OPPOSITE:
        cert = is_cominuscule_element(x)
        dim = g.n_positive - w.length()
    else:
        # Up_x feasibility is the mirror condition (w_0 x cominuscule)
        cert = certify(down_up_sets(x, frozenset()).up, g.rank)
        dim = w.length()
    if not cert.feasible:
        raise NotCominusculeError(cert)
    v = cert.covector
    assert v is not None and all(pair(r, v) == -1 for r in cert.slice_weights)

    mult_val = ev_chow(billey_restriction(w, x, None, variant), tuple(-c for c in v))
    if mult_val <= 0 or mult_val.denominator != 1:
        raise InternalConsistencyError(f"multiplicity evaluated to {mult_val}")

    knum, d = ev_k(gw_restriction(w, x, None, variant), v)
    series = _canonicalize_u(knum, d, dim, g.n_positive, [], terms)
    return int(mult_val), series
