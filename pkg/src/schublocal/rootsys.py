"""Finite crystallographic root systems in simple-root coordinates.

Every root is an integer vector over the simple-root basis; every weight-side
object (a "covector") is the tuple of its rational pairings with the simple
roots.  All arithmetic is exact: integers for roots, `fractions.Fraction`
for pairings.  The epsilon-coordinates of type A are a display convention
only and never enter computations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

__all__ = [
    "CartanMatrixError",
    "CartanDatum",
    "Root",
    "Covector",
    "build_root_system",
    "is_root",
    "root_sign",
    "root_height",
    "reflect",
    "coroot_pairing",
    "pair",
    "covector",
    "covector_from_diag",
    "format_root",
    "format_covector",
    "zero_covector",
]

# A root is an integer coefficient vector over the simple roots.
Root = tuple[int, ...]

# A covector is the tuple of pairings (alpha_i(v))_i, exact rationals.
Covector = tuple[Fraction, ...]


class CartanMatrixError(ValueError):
    """Raised when Cartan data fails one of the finite-type axioms."""


def _series_matrix(series: str, n: int) -> tuple[tuple[int, ...], ...]:
    """Standard Cartan matrix for the given series letter and rank.

    Convention: entry [i][j] equals <alpha_j, alpha_i^vee>, so row i lists
    the pairings against the i-th simple coroot.
    """
    rng = range(n)

    def chain(bonds: dict[tuple[int, int], int]) -> tuple[tuple[int, ...], ...]:
        m = [[2 if i == j else 0 for j in rng] for i in rng]
        for (i, j), v in bonds.items():
            m[i][j] = v
        return tuple(tuple(row) for row in m)

    bonds: dict[tuple[int, int], int] = {}
    if series == "A":
        if n < 1:
            raise CartanMatrixError("type A needs rank >= 1")
        for i in range(n - 1):
            bonds[(i, i + 1)] = bonds[(i + 1, i)] = -1
        return chain(bonds)
    if series in ("B", "C"):
        if n < 2:
            raise CartanMatrixError(f"type {series} needs rank >= 2")
        for i in range(n - 1):
            bonds[(i, i + 1)] = bonds[(i + 1, i)] = -1
        # B: alpha_n short, C: alpha_n long.
        if series == "B":
            bonds[(n - 1, n - 2)] = -2
        else:
            bonds[(n - 2, n - 1)] = -2
        return chain(bonds)
    if series == "D":
        if n < 3:
            raise CartanMatrixError("type D needs rank >= 3")
        for i in range(n - 2):
            bonds[(i, i + 1)] = bonds[(i + 1, i)] = -1
        bonds[(n - 3, n - 1)] = bonds[(n - 1, n - 3)] = -1
        return chain(bonds)
    if series == "E":
        if n not in (6, 7, 8):
            raise CartanMatrixError("type E needs rank 6, 7 or 8")
        # Bourbaki numbering: node 2 hangs off node 4 of the A-chain 1-3-4-5-...
        chain_nodes = [0, 2, 3, 4, 5, 6, 7][: n - 1]
        for a, b in zip(chain_nodes, chain_nodes[1:]):
            bonds[(a, b)] = bonds[(b, a)] = -1
        bonds[(1, 3)] = bonds[(3, 1)] = -1
        return chain(bonds)
    if series == "F":
        if n != 4:
            raise CartanMatrixError("type F needs rank 4")
        bonds = {(0, 1): -1, (1, 0): -1, (1, 2): -2, (2, 1): -1, (2, 3): -1, (3, 2): -1}
        return chain(bonds)
    if series == "G":
        if n != 2:
            raise CartanMatrixError("type G needs rank 2")
        bonds = {(0, 1): -1, (1, 0): -3}
        return chain(bonds)
    raise CartanMatrixError(f"unknown series letter {series!r}")


def _symmetrizer(cartan: tuple[tuple[int, ...], ...]) -> tuple[Fraction, ...]:
    """Positive rationals d with d_i * a_ij symmetric, or raise.

    Propagates d along the Dynkin graph; a cycle with inconsistent ratios
    (non-symmetrizable matrix) is rejected.
    """
    n = len(cartan)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i == j or cartan[i][j] == 0:
                    continue
                if cartan[j][i] == 0:
                    raise CartanMatrixError(
                        f"entries ({i + 1},{j + 1}) and ({j + 1},{i + 1}) must vanish together"
                    )
                want = d[i] * Fraction(cartan[i][j], cartan[j][i])
                if d[j] is None:
                    d[j] = want
                    stack.append(j)
                elif d[j] != want:
                    raise CartanMatrixError("matrix is not symmetrizable")
    clear = lcm(*(v.denominator for v in d))
    return tuple(v * clear for v in d)  # type: ignore[operator]


def _check_positive_definite(sym: list[list[Fraction]]) -> None:
    """Reject a symmetrized matrix that is not positive definite.

    Leading principal minors are computed by exact fraction-free style
    elimination on Fraction entries.
    """
    n = len(sym)
    m = [row[:] for row in sym]
    for k in range(n):
        if m[k][k] <= 0:
            raise CartanMatrixError(
                f"leading principal minor {k + 1} is not positive; matrix is not of finite type"
            )
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix together with its series label.

    `cartan[i][j]` is `<alpha_j, alpha_i^vee>`; construction validates the
    finite-type axioms (diagonal 2, non-positive off-diagonal entries,
    symmetrizable, positive definite).
    """

    label: str
    cartan: tuple[tuple[int, ...], ...]
    symmetrizer: tuple[Fraction, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.cartan)
        if n == 0 or any(len(row) != n for row in self.cartan):
            raise CartanMatrixError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if self.cartan[i][i] != 2:
                raise CartanMatrixError(f"diagonal entry ({i + 1},{i + 1}) must equal 2")
            for j in range(n):
                if i != j and self.cartan[i][j] > 0:
                    raise CartanMatrixError(
                        f"off-diagonal entry ({i + 1},{j + 1}) must be non-positive"
                    )
        d = _symmetrizer(self.cartan)
        sym = [[d[i] * self.cartan[i][j] for j in range(n)] for i in range(n)]
        _check_positive_definite(sym)
        object.__setattr__(self, "symmetrizer", d)

    @classmethod
    def from_label(cls, label: str) -> "CartanDatum":
        """Parse a type label such as "A5" or "G2"."""
        label = label.strip().upper()
        if len(label) < 2 or label[0] not in "ABCDEFG" or not label[1:].isdigit():
            raise CartanMatrixError(f"cannot parse type label {label!r}")
        series, n = label[0], int(label[1:])
        return cls(label=label, cartan=_series_matrix(series, n))

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @property
    def is_type_a(self) -> bool:
        return self.label.startswith("A") and self.cartan == _series_matrix("A", self.rank)

    def simple_root(self, i: int) -> Root:
        """The i-th simple root (1-based index)."""
        if not 1 <= i <= self.rank:
            raise IndexError(f"simple root index {i} out of range 1..{self.rank}")
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def inner(self, a: Root, b: Root) -> Fraction:
        """Symmetrized bilinear form (a, b)."""
        d, c = self.symmetrizer, self.cartan
        total = Fraction(0)
        for i, ai in enumerate(a):
            if not ai:
                continue
            for j, bj in enumerate(b):
                if bj:
                    total += ai * bj * d[i] * c[i][j]
        return total


def root_sign(root: Root) -> int:
    """+1 for a positive root vector, -1 for a negative one.

    Raises on the zero vector or on mixed signs, which cannot be roots.
    """
    has_pos = any(c > 0 for c in root)
    has_neg = any(c < 0 for c in root)
    if has_pos and has_neg:
        raise ValueError(f"mixed-sign vector {root} is not a root")
    if not has_pos and not has_neg:
        raise ValueError("zero vector is not a root")
    return 1 if has_pos else -1


def root_height(root: Root) -> int:
    return sum(root)


@lru_cache(maxsize=None)
def build_root_system(datum: CartanDatum) -> tuple[Root, ...]:
    """All positive roots, graded by height, earlier simple roots first.

    Closure of the simple roots under simple reflections, keeping vectors
    with all coordinates non-negative.  The full root set is this tuple
    together with its negation.
    """
    n = datum.rank
    simples = [datum.simple_root(i) for i in range(1, n + 1)]
    seen = set(simples)
    queue = list(simples)
    while queue:
        beta = queue.pop()
        for i in range(n):
            gamma = _simple_reflect(datum, i, beta)
            if all(c >= 0 for c in gamma) and gamma not in seen:
                seen.add(gamma)
                queue.append(gamma)
    return tuple(sorted(seen, key=lambda r: (root_height(r), tuple(-c for c in r))))


def _simple_reflect(datum: CartanDatum, i: int, beta: Root) -> Root:
    # s_i(beta) = beta - <beta, alpha_i^vee> alpha_i,  0-based i
    c = sum(m * datum.cartan[i][j] for j, m in enumerate(beta) if m)
    out = list(beta)
    out[i] -= c
    return tuple(out)


def is_root(datum: CartanDatum, vec: Sequence[int]) -> bool:
    v = tuple(vec)
    if len(v) != datum.rank:
        return False
    pos = build_root_system(datum)
    return v in pos or tuple(-c for c in v) in pos


def coroot_pairing(datum: CartanDatum, beta: Root, alpha: Root) -> int:
    """<beta, alpha^vee> = 2(beta, alpha)/(alpha, alpha); an integer for roots."""
    val = 2 * datum.inner(beta, alpha) / datum.inner(alpha, alpha)
    if val.denominator != 1:
        raise ValueError(f"non-integral coroot pairing for {beta} against {alpha}")
    return int(val)


def reflect(datum: CartanDatum, alpha: Root, beta: Root) -> Root:
    """The root s_alpha(beta) = beta - <beta, alpha^vee> alpha."""
    if not is_root(datum, alpha):
        raise ValueError(f"{alpha} is not a root of {datum.label}")
    if not is_root(datum, beta):
        raise ValueError(f"{beta} is not a root of {datum.label}")
    c = coroot_pairing(datum, beta, alpha)
    return tuple(b - c * a for a, b in zip(alpha, beta))


def pair(root: Sequence[int], cov: Covector) -> Fraction:
    """Pairing of a root-lattice vector with a covector, Sum m_i c_i."""
    if len(root) != len(cov):
        raise ValueError("dimension mismatch between root and covector")
    return sum((m * c for m, c in zip(root, cov)), Fraction(0))


def covector(values: Iterable) -> Covector:
    return tuple(Fraction(v) for v in values)


def zero_covector(rank: int) -> Covector:
    return tuple(Fraction(0) for _ in range(rank))


def covector_from_diag(values: Sequence) -> Covector:
    """Type A: pairings of v = diag(v_1..v_n) against alpha_i = e_i - e_{i+1}."""
    vals = [Fraction(v) for v in values]
    return tuple(vals[i] - vals[i + 1] for i in range(len(vals) - 1))


def typeA_epsilon(root: Root) -> tuple[int, int] | None:
    """Return (i, j) when the vector is e_i - e_j in type A, else None."""
    sgn = 1
    try:
        sgn = root_sign(root)
    except ValueError:
        return None
    coords = root if sgn > 0 else tuple(-c for c in root)
    support = [k for k, c in enumerate(coords) if c]
    if not support or any(coords[k] != 1 for k in support):
        return None
    if support != list(range(support[0], support[-1] + 1)):
        return None
    i, j = support[0] + 1, support[-1] + 2
    return (i, j) if sgn > 0 else (j, i)


def format_root(datum: CartanDatum, root: Root) -> str:
    """Simple-root coordinates, plus the e_i - e_j form in type A."""
    base = "[" + ",".join(str(c) for c in root) + "]"
    if datum.is_type_a:
        eps = typeA_epsilon(root)
        if eps is not None:
            return f"{base} (e{eps[0]}-e{eps[1]})"
    return base


def format_covector(cov: Covector) -> str:
    return "(" + ", ".join(str(c) for c in cov) + ")"
