"""Extended affine Weyl symmetries: parameter maps, lattice isometries,
and the infinite orbit of numerical -1-classes.

The two generators act on the parameter line as c -> -c and c -> -1-c.
Their induced actions on the rank-10 class lattice are defined on the
basis (C1, C3, D0..D7) and conjugated to integer matrices over the
standard basis (S, f, E1..E8), where the intersection form certifies
each as an isometry.  The composite (first the D-reversing map, then the
D-fixing one) is the translation; iterating it on C3 sweeps out the
orbit whose members all square to -1 and meet the anticanonical class
once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import intlinalg, lattice
from .lattice import DivisorClass


class WeylError(Exception):
    pass


class NotIsometry(WeylError):
    """Induced matrix fails to preserve the intersection form."""


# ---------------------------------------------------------------------------
# action on the parameter line


@dataclass(frozen=True)
class ParamMap:
    """Affine map c -> sign*c + shift with sign in {+1, -1}."""

    sign: int
    shift: Fraction

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise WeylError(f"sign must be +-1, got {self.sign}")
        object.__setattr__(self, "shift", Fraction(self.shift))

    @classmethod
    def identity(cls) -> "ParamMap":
        return cls(1, Fraction(0))

    def apply(self, c: Fraction) -> Fraction:
        return self.sign * Fraction(c) + self.shift

    def compose(self, other: "ParamMap") -> "ParamMap":
        """self after other."""
        return ParamMap(self.sign * other.sign,
                        self.sign * other.shift + self.shift)


PARAM_I = ParamMap(-1, Fraction(0))
PARAM_J = ParamMap(-1, Fraction(-1))
_LETTERS = {"i": PARAM_I, "j": PARAM_J}


def param_word(word) -> ParamMap:
    """Compose a word over {i, j}, rightmost letter acting first."""
    out = ParamMap.identity()
    for letter in word:
        try:
            out = out.compose(_LETTERS[letter])
        except KeyError:
            raise WeylError(f"unknown generator {letter!r}") from None
    return out


def param_apply(word, c) -> Fraction:
    return param_word(word).apply(Fraction(c))


# ---------------------------------------------------------------------------
# induced isometries of the class lattice


@dataclass(frozen=True)
class LatticeIsometry:
    """Integer matrix over (S, f, E1..E8) preserving the pairing."""

    matrix: tuple

    def __post_init__(self):
        m = [list(row) for row in self.matrix]
        g = lattice.GRAM
        if intlinalg.matmul(intlinalg.matmul(intlinalg.transpose(m), g), m) != g:
            raise NotIsometry("matrix does not preserve the intersection form")
        object.__setattr__(self, "matrix", tuple(tuple(row) for row in m))

    def apply(self, cls: DivisorClass) -> DivisorClass:
        v = intlinalg.matvec([list(r) for r in self.matrix], list(cls.coeffs))
        return DivisorClass(tuple(v))

    def compose(self, other: "LatticeIsometry") -> "LatticeIsometry":
        """self after other."""
        m = intlinalg.matmul([list(r) for r in self.matrix],
                             [list(r) for r in other.matrix])
        return LatticeIsometry(tuple(tuple(r) for r in m))

    def is_involution(self) -> bool:
        return self.compose(self).matrix == tuple(
            tuple(r) for r in intlinalg.identity(lattice.RANK))


_ACTION_BASIS = ("C1", "C3", "D0", "D1", "D2", "D3", "D4", "D5", "D6", "D7")


def action_basis_classes() -> list[DivisorClass]:
    reg = lattice.named_classes("generic")
    return [reg[n] for n in _ACTION_BASIS]


@lru_cache(maxsize=None)
def _basis_change():
    """Columns are the action-basis vectors; unimodular by construction."""
    cols = action_basis_classes()
    b = [[cols[j].coeffs[i] for j in range(10)] for i in range(10)]
    if abs(intlinalg.det(b)) != 1:
        raise WeylError("action basis is not a lattice basis")
    return b, intlinalg.invert_unimodular(b)


def _conjugate(action_cols: list[list[int]]) -> LatticeIsometry:
    """Action given by columns in the (C1, C3, D0..D7) basis, conjugated
    to the standard basis."""
    b, binv = _basis_change()
    a = [[action_cols[j][i] for j in range(10)] for i in range(10)]
    m = intlinalg.matmul(intlinalg.matmul(b, a), binv)
    return LatticeIsometry(tuple(tuple(r) for r in m))


def _unit(k: int) -> list[int]:
    v = [0] * 10
    v[k] = 1
    return v


@lru_cache(maxsize=None)
def jstar() -> LatticeIsometry:
    """Class action of c -> -1-c: swaps C1 and C3, reverses the D-chain."""
    cols = [
        _unit(1),                      # C1 -> C3
        _unit(0),                      # C3 -> C1
        _unit(2),                      # D0 -> D0
    ]
    for i in range(1, 8):
        cols.append(_unit(2 + (8 - i)))  # Di -> D(8-i)
    return _conjugate(cols)


@lru_cache(maxsize=None)
def istar() -> LatticeIsometry:
    """Class action of c -> -c: fixes C3 and every D, sends C1 to the
    class of C2 (expanded over the action basis, so the map is total even
    though the point map is only birational)."""
    reg = lattice.named_classes("generic")
    c2 = lattice.express_in_basis(reg["C2"], action_basis_classes())
    cols = [list(c2), _unit(1)] + [_unit(2 + i) for i in range(8)]
    return _conjugate(cols)


def tplus_star() -> LatticeIsometry:
    """Translation part: D-fixing map after D-reversing map."""
    return istar().compose(jstar())


def tplus_star_reversed() -> LatticeIsometry:
    """Opposite composition order, exposed for experiments only."""
    return jstar().compose(istar())


# ---------------------------------------------------------------------------
# the -1-class orbit


def gamma_full(n: int) -> DivisorClass:
    """n-th translate of C3: a numerical -1-class for every n >= 1."""
    if n < 1:
        raise WeylError("n must be >= 1")
    cls = lattice.named_classes("generic")["C3"]
    step = tplus_star()
    for _ in range(n):
        cls = step.apply(cls)
    return cls


_MOD_STEP = ((0, -1), (1, 2))


def gamma_mod(n: int) -> tuple[int, int]:
    """Coefficients of the n-th translate modulo the boundary span,
    written over (C1, C3).  Iterates the reduced 2x2 translation matrix
    from the seed (-1, 2)."""
    if n < 1:
        raise WeylError("n must be >= 1")
    a, b = -1, 2
    for _ in range(n - 1):
        a, b = _MOD_STEP[0][0] * a + _MOD_STEP[0][1] * b, \
               _MOD_STEP[1][0] * a + _MOD_STEP[1][1] * b
    return a, b


def gamma_mod_closed_form(n: int) -> tuple[int, int]:
    """Solved recurrence; independent route for cross-checking."""
    return (-n, n + 1)


def reduce_mod_boundary(cls: DivisorClass) -> tuple[int, int]:
    """(C1, C3)-coefficients of a class modulo span(D0..D7)."""
    coords = lattice.express_in_basis(cls, action_basis_classes())
    return coords[0], coords[1]


def distinctness(n_max: int) -> bool:
    """Pairwise distinctness of the first n_max orbit classes."""
    if n_max < 2:
        raise WeylError("n_max must be >= 2")
    seen = [gamma_full(n) for n in range(1, n_max + 1)]
    return len({cls.coeffs for cls in seen}) == n_max


def orbit_report(n_max: int):
    """(n, class, square, anticanonical pairing, mod-boundary pair) rows."""
    f_cls = lattice.anticanonical_class()
    rows = []
    cls = lattice.named_classes("generic")["C3"]
    step = tplus_star()
    for n in range(1, n_max + 1):
        cls = step.apply(cls)
        rows.append((n, cls, lattice.pair(cls, cls), lattice.pair(cls, f_cls),
                     reduce_mod_boundary(cls)))
    return rows


# Published coefficient list for n = 3..5 that conflicts with the
# recurrence those same sources establish; kept for the discrepancy
# report, never asserted.
STATED_GAMMA_MOD = {1: (-1, 2), 2: (-2, 3), 3: (-6, 10), 4: (-20, 34),
                    5: (-34, 116)}
GAMMA_ALLOWLIST = frozenset({3, 4, 5})
