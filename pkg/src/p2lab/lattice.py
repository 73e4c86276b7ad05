"""Rank-10 intersection lattice of the blown-up rational ruled surface.

Basis order is fixed as (S, f, E1, ..., E8): S the chosen section with
S.S = 2, f the fiber class, E1..E8 the exceptional classes of the eight
point blow-ups.  The pairing is diag-block [[2,1],[1,0]] on (S, f) and
-identity on the E's; it is unimodular of signature (1, 9).

The named curve classes live here as a registry keyed by parameter regime
("generic", "c=0", "c=-1"); the blow-up engine in ``blowup`` recomputes the
same classes from defining equations, and tests compare the two routes.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import intlinalg

BASIS = ("S", "f", "E1", "E2", "E3", "E4", "E5", "E6", "E7", "E8")
RANK = 10

GRAM = [
    [2, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, -1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, -1, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, -1, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, -1, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, -1, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, -1],
]

REGIMES = ("generic", "c=0", "c=-1")


class LatticeError(Exception):
    pass


class NotInLattice(LatticeError):
    """Target is not an integer combination of the proposed basis."""


class Degenerate(LatticeError):
    """The Gram matrix of the proposed basis is singular."""


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector in the (S, f, E1..E8) basis."""

    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != RANK or not all(isinstance(x, int) for x in self.coeffs):
            raise LatticeError("a divisor class needs 10 integer coefficients")

    @classmethod
    def of(cls, **components) -> "DivisorClass":
        v = [0] * RANK
        for name, value in components.items():
            try:
                v[BASIS.index(name)] = int(value)
            except ValueError:
                raise LatticeError(f"unknown basis element {name!r}") from None
        return cls(tuple(v))

    @classmethod
    def zero(cls) -> "DivisorClass":
        return cls((0,) * RANK)

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(tuple(-a for a in self.coeffs))

    def __rmul__(self, k: int) -> "DivisorClass":
        return DivisorClass(tuple(k * a for a in self.coeffs))

    def __str__(self) -> str:
        parts = []
        for name, a in zip(BASIS, self.coeffs):
            if a == 0:
                continue
            body = name if abs(a) == 1 else f"{abs(a)}*{name}"
            parts.append(("-" if a < 0 else "+", body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


def pair(a: DivisorClass, b: DivisorClass) -> int:
    total = 0
    for i, ai in enumerate(a.coeffs):
        if ai:
            row = GRAM[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b.coeffs) if bj)
    return total


def gram(classes: list[DivisorClass]) -> list[list[int]]:
    return [[pair(a, b) for b in classes] for a in classes]


def ortho_complement(generators: list[DivisorClass]) -> list[DivisorClass]:
    """Saturated basis of everything orthogonal to the given classes."""
    a = [[sum(GRAM[i][j] * g.coeffs[i] for i in range(RANK)) for j in range(RANK)]
         for g in generators]
    return [DivisorClass(tuple(v)) for v in intlinalg.kernel_basis(a)]


def sublattice_equal(gens_a: list[DivisorClass], gens_b: list[DivisorClass]) -> bool:
    """Do the two generating sets span the same sublattice over Z?"""

    def contained(gens, in_gens):
        if not in_gens:
            return all(all(x == 0 for x in g.coeffs) for g in gens)
        cols = [[g.coeffs[i] for g in in_gens] for i in range(RANK)]
        return all(
            intlinalg.solve_integer(cols, list(g.coeffs)) is not None for g in gens
        )

    return contained(gens_a, gens_b) and contained(gens_b, gens_a)


def express_in_basis(target: DivisorClass, basis: list[DivisorClass]) -> list[int]:
    """Integer coordinates of target in the proposed basis.

    Raises Degenerate if the basis Gram matrix is singular, NotInLattice if
    the target is not an integer combination.
    """
    g = gram(basis)
    if intlinalg.det(g) == 0:
        raise Degenerate("proposed basis has singular Gram matrix")
    cols = [[b.coeffs[i] for b in basis] for i in range(RANK)]
    x = intlinalg.solve_integer(cols, list(target.coeffs))
    if x is None:
        raise NotInLattice(f"{target} is not in the integer span")
    return x


@dataclass(frozen=True)
class EulerInvariants:
    K2: int
    c2: int
    chi_theta: int
    h1_theta: int
    h1_log: int
    h1_log_plus: int


def euler_invariants() -> EulerInvariants:
    """Numerical invariants of the open surface, derived from the lattice.

    c2 comes from Noether's formula with chi(O) = 1; the Euler
    characteristic of the tangent sheaf is K^2 - c2 + 2; h1 of the tangent
    sheaf equals minus that (h0 and h2 both vanish); removing the eight
    (-2)-components of the boundary kills an 8-dimensional piece, and
    adding the extra (-2)-curve of the c=0 regime one more.
    """
    k = canonical_class()
    k2 = pair(k, k)
    c2 = 12 * 1 - k2
    chi_theta = k2 - c2 + 2
    h1_theta = -chi_theta
    h1_log = h1_theta - 8
    h1_log_plus = h1_log - 1
    return EulerInvariants(k2, c2, chi_theta, h1_theta, h1_log, h1_log_plus)


def diagonalize_unimodular() -> list[list[int]]:
    """Unimodular U with U^T G U = diag(1, -1, ..., -1).

    The columns are the basis (S - E1, f - E1, S - f - E1, E2, ..., E8):
    contracting E1 and the two rulings through the first center exhibits the
    surface as a 9-point blow-up of the projective plane, whose hyperplane
    class is the first column.
    """
    h = DivisorClass.of(S=1, E1=-1)
    e1 = DivisorClass.of(f=1, E1=-1)
    e2 = DivisorClass.of(S=1, f=-1, E1=-1)
    rest = [DivisorClass.of(**{f"E{i}": 1}) for i in range(2, 9)]
    cols = [h, e1, e2] + rest
    u = [[col.coeffs[i] for col in cols] for i in range(RANK)]
    target = [[0] * RANK for _ in range(RANK)]
    target[0][0] = 1
    for i in range(1, RANK):
        target[i][i] = -1
    ut = intlinalg.transpose(u)
    assert intlinalg.matmul(intlinalg.matmul(ut, GRAM), u) == target
    assert abs(intlinalg.det(u)) == 1
    return u


# ---------------------------------------------------------------------------
# named classes


def _e_range(lo: int, hi: int) -> dict:
    return {f"E{i}": -1 for i in range(lo, hi + 1)}


def named_classes(regime: str = "generic") -> dict[str, DivisorClass]:
    """Classes of the boundary components and the named affine curves.

    The same vectors are valid in every regime; the regimes differ only in
    which primed (split-off) components exist as curves.
    """
    if regime not in REGIMES:
        raise LatticeError(f"unknown regime {regime!r}; choose from {REGIMES}")
    reg = {
        "S": DivisorClass.of(S=1),
        "f": DivisorClass.of(f=1),
        "D0": DivisorClass.of(S=1, E1=-1, E2=-1, E3=-1, E4=-1),
        "C1": DivisorClass.of(f=1, E1=-1),
        "C2": DivisorClass.of(S=1, f=-1, E1=-1),
        "C3": DivisorClass.of(E8=1),
        "C4": DivisorClass.of(S=1, f=2, **_e_range(1, 7)),
        "C5": DivisorClass.of(S=1, f=-1),
        "C6": DivisorClass.of(S=1, f=3, **_e_range(1, 8)),
        "F": DivisorClass.of(S=2, **_e_range(1, 8)),
        "K": DivisorClass.of(S=-2, **{f"E{i}": 1 for i in range(1, 9)}),
    }
    for i in range(1, 8):
        reg[f"D{i}"] = DivisorClass.of(**{f"E{i}": 1, f"E{i+1}": -1})
    if regime == "c=0":
        reg["C2prime"] = DivisorClass.of(S=1, f=-2)
    if regime == "c=-1":
        reg["C4prime"] = DivisorClass.of(S=1, f=2, **_e_range(1, 8))
    return reg


def registry_order(regime: str = "generic") -> tuple[str, ...]:
    names = ["S", "f"] + [f"D{i}" for i in range(8)]
    names += ["C1", "C2"]
    if regime == "c=0":
        names.append("C2prime")
    names += ["C3", "C4"]
    if regime == "c=-1":
        names.append("C4prime")
    names += ["C5", "C6", "F", "K"]
    return tuple(names)


def canonical_class() -> DivisorClass:
    return named_classes()["K"]


def anticanonical_class() -> DivisorClass:
    return named_classes()["F"]


def d_chain() -> list[DivisorClass]:
    reg = named_classes()
    return [reg[f"D{i}"] for i in range(8)]


def intersection_table_csv(regime: str = "generic") -> str:
    """Full pairwise intersection table of the named classes, as CSV."""
    reg = named_classes(regime)
    order = registry_order(regime)
    lines = ["class," + ",".join(order)]
    for a in order:
        row = [str(pair(reg[a], reg[b])) for b in order]
        lines.append(a + "," + ",".join(row))
    return "\n".join(lines) + "\n"
