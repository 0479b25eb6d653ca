"""Schubert-variety combinatorics at torus-fixed points.

Two families of Schubert varieties are handled through one code path:

* opposite variant -- closures of B^- orbits, fixed points x with x >= w;
* standard variant -- closures of B orbits, fixed points x with x <= w.

The certificate solver answers whether a fixed point is cominuscule: it
looks for a rational covector pairing to -1 with every tangent weight of
the transverse slice.  In type A the slice weights are exactly the T-curve
weights, so the verdict is exact; in other types the curve weights are only
a lower bound for the slice weights and a feasible certificate is reported
as a necessary condition.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

from .rootsys import Covector, Root, root_sign, zero_covector
from .weyl import WeylElement, bruhat_leq

__all__ = [
    "Variant",
    "BruhatPreconditionError",
    "NotCominusculeError",
    "CominCertificate",
    "DownUpSets",
    "max_parabolic",
    "down_up_sets",
    "curve_weights",
    "zariski_weights_typeA",
    "comin_certificate",
    "is_cominuscule_element",
    "avoids_321",
    "slice_dimension",
    "solve_unit_system",
    "certify",
]


class Variant(str, enum.Enum):
    """Which family of Schubert varieties a query concerns."""

    OPPOSITE = "opposite"  # X^w, B^- orbit closures, x >= w
    STANDARD = "standard"  # X_w, B orbit closures, x <= w

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.value


class BruhatPreconditionError(ValueError):
    """The Bruhat comparison required by an operation fails."""

    def __init__(self, comparison: str):
        super().__init__(f"Bruhat precondition violated: {comparison}")
        self.comparison = comparison


class NotCominusculeError(ValueError):
    """An operation that needs a cominuscule point got an infeasible one."""

    def __init__(self, certificate: "CominCertificate"):
        witness = ""
        if certificate.witness is not None:
            witness = f"; obstruction triple {certificate.witness}"
        super().__init__(f"point is not (certified) cominuscule{witness}")
        self.certificate = certificate


EXACT = "exact"
NECESSARY_ONLY = "necessary-only"


@dataclass(frozen=True)
class CominCertificate:
    """Outcome of the cominuscule feasibility test.

    `covector` is one canonical solution v of pair(beta, v) = -1 over
    `slice_weights` (free variables pinned to 0); any feasible point would
    do, and downstream invariants do not depend on the choice.  `witness`
    holds an obstruction triple (a, b, a + b) inside the constraint set
    when one exists for an infeasible system.
    """

    feasible: bool
    covector: Covector | None
    slice_weights: tuple[Root, ...]
    exactness: str
    witness: tuple[Root, Root, Root] | None = None


class DownUpSets(NamedTuple):
    down: tuple[Root, ...]
    down_p: tuple[Root, ...]
    down_l: tuple[Root, ...]
    up: tuple[Root, ...]
    up_p: tuple[Root, ...]
    up_l: tuple[Root, ...]


def _require(condition: bool, comparison: str) -> None:
    if not condition:
        raise BruhatPreconditionError(comparison)


def check_bruhat(w: WeylElement, x: WeylElement, variant: Variant) -> None:
    """Check x >= w (opposite) or x <= w (standard)."""
    if variant == Variant.OPPOSITE:
        _require(bruhat_leq(w, x), f"x >= w fails for x={_name(x)}, w={_name(w)}")
    else:
        _require(bruhat_leq(x, w), f"x <= w fails for x={_name(x)}, w={_name(w)}")


def _name(w: WeylElement) -> str:
    if w.group.is_type_a:
        return "(" + ",".join(map(str, w.one_line())) + ")"
    return str(w.word())


def max_parabolic(w: WeylElement, variant: Variant = Variant.OPPOSITE) -> frozenset[int]:
    """Simple-root indices of the standard maximal parabolic determined by w.

    Opposite: the simples kept positive by w; standard: those sent negative.
    w is automatically minimal (resp. maximal) in its left coset.
    """
    if variant == Variant.OPPOSITE:
        return frozenset(i for i in range(1, w.group.rank + 1) if w.acts_positively(i))
    return frozenset(i for i in range(1, w.group.rank + 1) if not w.acts_positively(i))


def levi_positive_roots(x: WeylElement, simples: Iterable[int]) -> tuple[Root, ...]:
    """Positive roots supported on the given simple indices (Phi_L^+)."""
    J = set(simples)
    out = []
    for beta in x.group.positive_roots:
        if all(i + 1 in J for i, c in enumerate(beta) if c):
            out.append(beta)
    return tuple(out)


def down_up_sets(x: WeylElement, simples: Iterable[int]) -> DownUpSets:
    """The six Down/Up root sets of x relative to the parabolic on `simples`.

    Down_x = Phi^+ cap x Phi^- and Up_x = Phi^- cap x Phi^-, each split
    according to whether the preimage root lies in the Levi or in the
    unipotent radical.
    """
    J = set(simples)
    for j in J:
        x.group._check_index(j)
    down, down_p, down_l = [], [], []
    up, up_p, up_l = [], [], []
    inv = x.inverse()
    for beta in x.group.positive_roots:
        gamma = inv.act(beta)  # beta = x(gamma)
        in_levi = all(i + 1 in J for i, c in enumerate(gamma) if c)
        if root_sign(gamma) < 0:
            down.append(beta)
            (down_l if in_levi else down_p).append(beta)
        neg = tuple(-c for c in beta)
        gamma = inv.act(neg)
        if root_sign(gamma) < 0:
            up.append(neg)
            (up_l if in_levi else up_p).append(neg)
    return DownUpSets(
        tuple(down), tuple(down_p), tuple(down_l), tuple(up), tuple(up_p), tuple(up_l)
    )


def curve_weights(
    w: WeylElement, x: WeylElement, variant: Variant = Variant.OPPOSITE
) -> tuple[Root, ...]:
    """T-curve weights of the slice, in positive-root form.

    Opposite: S^w_x = {beta in Phi(u_P) | x > x s_beta >= w}; the standard
    variant mirrors it as {beta in Phi(u_P) | x < x s_beta <= w}.  P is the
    maximal parabolic determined by w for the given variant.
    """
    check_bruhat(w, x, variant)
    g = x.group
    P = max_parabolic(w, variant)
    levi = set(levi_positive_roots(x, P))
    out = []
    for beta in g.positive_roots:
        if beta in levi:
            continue
        xbeta_neg = root_sign(x.act(beta)) < 0  # x s_beta < x
        if variant == Variant.OPPOSITE:
            if xbeta_neg and bruhat_leq(w, x * g.reflection(beta)):
                out.append(beta)
        else:
            if not xbeta_neg and bruhat_leq(x * g.reflection(beta), w):
                out.append(beta)
    return tuple(out)


def zariski_weights_typeA(
    w: WeylElement, x: WeylElement, variant: Variant = Variant.OPPOSITE
) -> tuple[Root, ...]:
    """Zariski tangent weights R^w_x of the Schubert variety at x (type A).

    R^w_x = {beta in Phi^+ | x s_beta >= w} for the opposite variant,
    mirrored for the standard one.  |R^w_x| is the tangent-space dimension;
    the point is singular iff it exceeds the variety dimension.
    """
    g = x.group
    if not g.is_type_a:
        raise NotImplementedError(
            "Zariski tangent weights are exact in type A only; "
            "use curve_weights for the necessary condition elsewhere"
        )
    check_bruhat(w, x, variant)
    out = []
    for beta in g.positive_roots:
        xs = x * g.reflection(beta)
        ok = bruhat_leq(w, xs) if variant == Variant.OPPOSITE else bruhat_leq(xs, w)
        if ok:
            out.append(beta)
    return tuple(out)


def solve_unit_system(
    constraints: Sequence[Root], rank: int
) -> tuple[Covector | None, tuple[Covector, ...]]:
    """Solve pair(beta, v) = -1 for all beta, exactly.

    Fraction-free Gaussian elimination over the integers, then rational
    back-substitution with free variables pinned to 0.  Returns the
    canonical solution (or None when inconsistent) and a basis of the
    homogeneous null space, useful for enumerating alternative solutions.
    """
    rows = [list(beta) + [-1] for beta in constraints]
    ncols = rank + 1
    pivots: list[int] = []
    r = 0
    for c in range(rank):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                # fraction-free combination: piv*row_i - lead*row_r
                piv, lead = rows[r][c], rows[i][c]
                rows[i] = [piv * a - lead * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    for i in range(r, len(rows)):
        if rows[i][rank] != 0:
            return None, _null_basis(rows[:r], pivots, rank)
    sol = [Fraction(0)] * rank
    for i, c in enumerate(pivots):
        acc = Fraction(rows[i][rank])
        for j in range(c + 1, rank):
            acc -= rows[i][j] * sol[j]
        sol[c] = acc / rows[i][c]
    return tuple(sol), _null_basis(rows[:r], pivots, rank)


def _null_basis(
    rows: list[list[int]], pivots: list[int], rank: int
) -> tuple[Covector, ...]:
    free = [c for c in range(rank) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * rank
        vec[f] = Fraction(1)
        for i in reversed(range(len(pivots))):
            c = pivots[i]
            acc = Fraction(0)
            for j in range(c + 1, rank):
                acc -= rows[i][j] * vec[j]
            vec[c] = acc / rows[i][c]
        basis.append(tuple(vec))
    return tuple(basis)


def _obstruction_triple(
    constraints: Sequence[Root],
) -> tuple[Root, Root, Root] | None:
    """A triple (a, b, a+b) inside the constraint set, if one exists.

    Such a triple certifies infeasibility: pairings -1, -1 force -2 on the
    sum.  General inconsistencies without a triple are still reported as
    infeasible, just without this witness.
    """
    index = {tuple(c): c for c in constraints}
    items = list(index)
    for i, a in enumerate(items):
        for b in items[i + 1 :]:
            s = tuple(p + q for p, q in zip(a, b))
            if s in index:
                return (a, b, s)
    return None


def certify(constraints: Sequence[Root], rank: int, exactness: str = EXACT) -> CominCertificate:
    """Feasibility of pair(beta, v) = -1 over an arbitrary constraint set."""
    if not constraints:
        return CominCertificate(True, zero_covector(rank), (), exactness)
    sol, _ = solve_unit_system(constraints, rank)
    if sol is None:
        return CominCertificate(
            False, None, tuple(constraints), exactness, _obstruction_triple(constraints)
        )
    return CominCertificate(True, sol, tuple(constraints), exactness)


def comin_certificate(
    w: WeylElement, x: WeylElement, variant: Variant = Variant.OPPOSITE
) -> CominCertificate:
    """Decide whether x is a cominuscule point of the Schubert variety of w.

    The linear system is posed on the positive-root form of the slice
    tangent weights (the curve weights), with the sign convention
    pair(beta, v) = -1 throughout.
    """
    S = curve_weights(w, x, variant)
    exactness = EXACT if x.group.is_type_a else NECESSARY_ONLY
    return certify(S, x.group.rank, exactness)


def is_cominuscule_element(x: WeylElement) -> CominCertificate:
    """Feasibility of pair(alpha, v) = -1 over Down_x.

    Cominuscule elements are the x for which this holds; in type A they
    are exactly the 321-avoiding permutations (cross-checked in tests).
    """
    down = x.inverse().inversion_set()  # Down_x = I(x^{-1})
    return certify(down, x.group.rank, EXACT)


def avoids_321(one_line: Sequence[int]) -> bool:
    """Direct scan for a decreasing subsequence of length three."""
    n = len(one_line)
    for j in range(1, n - 1):
        left_bigger = max(one_line[:j], default=0)
        if left_bigger > one_line[j] and any(v < one_line[j] for v in one_line[j + 1 :]):
            return False
    return True


def slice_dimension(
    w: WeylElement, x: WeylElement, variant: Variant = Variant.OPPOSITE
) -> int:
    """Dimension of the transverse slice at x.

    Opposite: l(x) - |x Phi_L^- cap Phi^+| - l(w); standard variant:
    l(w) - |x Phi_L^- cap Phi^-| - l(x).  The correction term vanishes
    exactly when x is minimal (resp. maximal) in its left coset.
    """
    check_bruhat(w, x, variant)
    P = max_parabolic(w, variant)
    sets = down_up_sets(x, P)
    if variant == Variant.OPPOSITE:
        dim = x.length() - len(sets.down_l) - w.length()
    else:
        dim = w.length() - len(sets.up_l) - x.length()
    if dim < 0:
        raise AssertionError(f"negative slice dimension {dim}; inputs violate theory")
    return dim
