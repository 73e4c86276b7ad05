"""Symmetry verification by differential algebra.

Everything here is a residual computation in an exact differential field:
a derivation is applied formally, the defining second-order rule replaces
second derivatives, and a map is a symmetry exactly when its residual
canonicalizes to zero.  No epsilon appears anywhere in this module.

Two fields are in play.  At the solution level the alphabet is
(t, y, yp, alpha) with D(y) = yp and D(yp) = 2y^3 + t*y + alpha.  At the
Hamiltonian phase level it is (t, q, p, c) with D(q) = q^2 + p + t/2 and
D(p) = -2qp + c.  The parameter change c = alpha - 1/2 together with
q = y, p = yp - y^2 - t/2 intertwines the two derivations, which is
itself one of the verified identities.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import (
    IdenticallyZeroDenominator, Polynomial, RationalFunction,
    rf, rfvar, rfvars,
)


class BacklundError(Exception):
    pass


class DenominatorVanishes(BacklundError):
    """A composed map's denominator collapses to zero identically."""


# ---------------------------------------------------------------------------
# derivations

_HALF = Fraction(1, 2)


@dataclass(frozen=True)
class Derivation:
    """D with prescribed images on the listed variables; all other
    variables are constants, and t always has image 1."""

    name: str
    images: tuple  # ((var, RationalFunction), ...)

    def of(self, expr) -> RationalFunction:
        expr = RationalFunction.coerce(expr)
        out = rf(0)
        for var, img in self.images:
            out = out + expr.partial(var) * img
        return out


def _pii_derivation() -> Derivation:
    t, y, yp, alpha = rfvars("t", "y", "yp", "alpha")
    return Derivation("solution-level", (
        ("t", rf(1)),
        ("y", yp),
        ("yp", 2 * y ** 3 + t * y + alpha),
    ))


def _phase_derivation() -> Derivation:
    t, q, p, c = rfvars("t", "q", "p", "c")
    return Derivation("phase-level", (
        ("t", rf(1)),
        ("q", q ** 2 + p + t * _HALF),
        ("p", -2 * q * p + c),
    ))


PII = _pii_derivation()
PHASE = _phase_derivation()


def derive(expr, field: Derivation = PII) -> RationalFunction:
    return field.of(expr)


# ---------------------------------------------------------------------------
# solution-level maps


@dataclass(frozen=True)
class PIIMap:
    """Solution image r(t, y, yp, alpha) and parameter image g(alpha)."""

    name: str
    r: RationalFunction
    g: RationalFunction

    def __post_init__(self):
        object.__setattr__(self, "r", RationalFunction.coerce(self.r))
        object.__setattr__(self, "g", RationalFunction.coerce(self.g))
        if self.r.den.is_zero():
            raise DenominatorVanishes(self.name)


def shift_up() -> PIIMap:
    """Parameter raised by one."""
    t, y, yp, alpha = rfvars("t", "y", "yp", "alpha")
    return PIIMap("shift-up", -y - (alpha + _HALF) / (yp + y ** 2 + t * _HALF),
                  alpha + 1)


def shift_down() -> PIIMap:
    """Parameter lowered by one."""
    t, y, yp, alpha = rfvars("t", "y", "yp", "alpha")
    return PIIMap("shift-down", -y + (alpha - _HALF) / (yp - y ** 2 - t * _HALF),
                  alpha - 1)


def negation() -> PIIMap:
    """Solution and parameter both negated."""
    y, alpha = rfvars("y", "alpha")
    return PIIMap("negation", -y, -alpha)


def identity_map() -> PIIMap:
    y, alpha = rfvars("y", "alpha")
    return PIIMap("identity", y, alpha)


def sign_flip_only() -> PIIMap:
    """Negated solution with unshifted parameter; not a symmetry."""
    y, alpha = rfvars("y", "alpha")
    return PIIMap("sign-flip-only", -y, alpha)


def pii_residual(m: PIIMap) -> RationalFunction:
    """D(D(r)) - 2r^3 - t*r - g: zero exactly when m sends solutions at
    parameter alpha to solutions at parameter g(alpha)."""
    t = rfvar("t")
    try:
        return PII.of(PII.of(m.r)) - 2 * m.r ** 3 - t * m.r - m.g
    except IdenticallyZeroDenominator as e:
        raise DenominatorVanishes(m.name) from e


# ---------------------------------------------------------------------------
# phase-level maps


@dataclass(frozen=True)
class PhaseMap:
    """(q, p) |-> (q_img, p_img) over the parameter change c |-> c_img."""

    name: str
    q_img: RationalFunction
    p_img: RationalFunction
    c_img: RationalFunction

    def __post_init__(self):
        for f in ("q_img", "p_img", "c_img"):
            object.__setattr__(self, f, RationalFunction.coerce(getattr(self, f)))

    def compose(self, other: "PhaseMap") -> "PhaseMap":
        """self after other (c-images composed the same way)."""
        binding = {"q": other.q_img, "p": other.p_img, "c": other.c_img}
        try:
            return PhaseMap(
                f"{self.name}*{other.name}",
                self.q_img.substitute(binding),
                self.p_img.substitute(binding),
                self.c_img.substitute({"c": other.c_img}),
            )
        except IdenticallyZeroDenominator as e:
            raise DenominatorVanishes(self.name) from e


def phase_reflection() -> PhaseMap:
    """Involution over c |-> -1-c."""
    t, q, p, c = rfvars("t", "q", "p", "c")
    return PhaseMap("phase-reflection", -q, -2 * q ** 2 - p - t, -1 - c)


def phase_negation(c0: Fraction | None = None) -> PhaseMap:
    """Involution over c |-> -c, regular off p = 0.

    At c = 0 the map degenerates to the identity; that specialization is
    returned directly so numeric use at p = 0 stays well defined.
    """
    t, q, p, c = rfvars("t", "q", "p", "c")
    if c0 is not None and Fraction(c0) == 0:
        return PhaseMap("phase-negation", q, p, rf(0))
    cc = c if c0 is None else rf(Fraction(c0))
    return PhaseMap("phase-negation", q - cc / p, p, -cc)


def phase_translation() -> PhaseMap:
    """c |-> c+1: the negation applied after the reflection."""
    return phase_negation().compose(phase_reflection())


def unshifted_reflection() -> PhaseMap:
    """Reflection formulas with the parameter left fixed; not a symmetry."""
    m = phase_reflection()
    return PhaseMap("unshifted-reflection", m.q_img, m.p_img, rfvar("c"))


def phase_residual(m: PhaseMap) -> tuple[RationalFunction, RationalFunction]:
    """Defects of the phase system at the image parameter along the two
    mapped variables; (0, 0) exactly when m is a symmetry."""
    t = rfvar("t")
    try:
        r1 = PHASE.of(m.q_img) - (m.q_img ** 2 + m.p_img + t * _HALF)
        r2 = PHASE.of(m.p_img) - (-2 * m.q_img * m.p_img + m.c_img)
    except IdenticallyZeroDenominator as e:
        raise DenominatorVanishes(m.name) from e
    return r1, r2


# ---------------------------------------------------------------------------
# the intertwining substitution


def phase_bindings(p_image: RationalFunction | None = None,
                   c_image: RationalFunction | None = None) -> dict:
    """Substitution expressing the phase variables through the solution
    alphabet: q = y, p = yp - y^2 - t/2, c = alpha - 1/2 (overridable for
    negative controls)."""
    t, y, yp, alpha = rfvars("t", "y", "yp", "alpha")
    return {
        "q": y,
        "p": yp - y ** 2 - t * _HALF if p_image is None else p_image,
        "c": alpha - _HALF if c_image is None else c_image,
    }


def phi_conjugation_residuals(p_image=None, c_image=None):
    """How far the substitution fails to intertwine the two derivations:
    for each phase variable v, D_solution(v-expression) minus the
    substituted phase image of v."""
    binding = phase_bindings(p_image, c_image)
    out = []
    for var, img in PHASE.images:
        if var == "t":
            continue
        expr = binding[var]
        out.append(PII.of(expr) - img.substitute(binding))
    return tuple(out)


def phi_conjugation_check(p_image=None, c_image=None) -> bool:
    return all(r.is_zero() for r in phi_conjugation_residuals(p_image, c_image))


def composition_coherence_residuals():
    """The phase translation, read through the substitution, against the
    solution-level shift-up: the q-components must agree as rational
    functions, and the translated p must be the substitution's p-image
    rebuilt from the shifted solution and its derivative."""
    up = shift_up()
    tr = phase_translation()
    binding = phase_bindings()
    t = rfvar("t")
    q_res = tr.q_img.substitute(binding) - up.r
    p_new = PII.of(up.r) - up.r ** 2 - t * _HALF
    p_res = tr.p_img.substitute(binding) - p_new
    c_res = tr.c_img.substitute(binding) - (up.g - _HALF)
    return q_res, p_res, c_res


def composition_coherence_check() -> bool:
    return all(r.is_zero() for r in composition_coherence_residuals())


# ---------------------------------------------------------------------------
# invariant curves of the phase flow


def invariant_curve_division(f: Polynomial, c0) -> tuple[bool, Polynomial | None]:
    """Exact division test: is D(f), specialized to c = c0, a polynomial
    multiple of f?  Returns the cofactor on success."""
    if f.is_zero():
        raise BacklundError("zero polynomial")
    spec = {"c": Polynomial.const(Fraction(c0))}
    f0 = f.subs_poly(spec)
    if f0.is_zero() or f0.is_constant():
        raise BacklundError("curve degenerates at this parameter")
    df = PHASE.of(f0)
    if not df.is_polynomial():
        raise BacklundError("derivation image not polynomial")
    df0 = df.as_polynomial().subs_poly(spec)
    ratio = rf(df0) / rf(f0)
    if ratio.is_polynomial():
        return True, ratio.as_polynomial()
    return False, None


def invariant_curve_test(f: Polynomial, c0) -> bool:
    """True iff the zero locus of f is invariant under the phase flow at
    parameter c0."""
    ok, _ = invariant_curve_division(f, c0)
    return ok


# ---------------------------------------------------------------------------
# the quadric identity


def quadric_quadruple(chart: str) -> tuple:
    """The two coordinate quadruples that land on one affine quadric."""
    y1, z1, y3, z3, c = rfvars("y1", "z1", "y3", "z3", "c")
    if chart == "W1":
        return (rf(1), y1 * (c - y1 * z1), 2 * y1 * z1 - c, z1)
    if chart == "W3":
        return (rf(1), z3, c - 2 * y3 * z3, y3 * (c - y3 * z3))
    raise BacklundError(f"no quadruple for chart {chart!r}")


def quadric_residual(chart: str = "W1", corrected: bool = True) -> RationalFunction:
    """Substitute a quadruple into 4*x1*x3 + x2^2 - c^2*x0^2 (corrected
    sign) or into 4*x1*x3 - x2^2 + c^2*x0^2 (the published sign, kept as
    a nonzero witness)."""
    x0, x1, x2, x3 = quadric_quadruple(chart)
    c = rfvar("c")
    if corrected:
        return 4 * x1 * x3 + x2 ** 2 - c ** 2 * x0 ** 2
    return 4 * x1 * x3 - x2 ** 2 + c ** 2 * x0 ** 2
