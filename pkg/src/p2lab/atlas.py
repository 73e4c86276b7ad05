"""Three-chart symplectic atlas of the regular locus.

Charts are named W1, W3, W12; each carries fiber coordinates (y, z) over
the (t, c) base.  Transitions, Hamiltonians, relative differential
forms, the deformation cocycle, the parameter involution, and the
vanishing-cycle periods are all handled exactly; every check either
returns a canonical zero or exhibits the nonzero defect.

Relative forms are taken over the c-line: t is a coordinate, c a
constant, matching the convention in which d kills dc but not dt.
Fixed-t statements drop the dt components.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import (
    NotPolynomial, Polynomial, RationalFunction, rf, rfvar, rfvars, var_index,
)

CHARTS = ("W1", "W3", "W12")
CHART_VARS = {"W1": ("y1", "z1"), "W3": ("y3", "z3"), "W12": ("y12", "z12")}

_HALF = Fraction(1, 2)


class AtlasError(Exception):
    pass


# ---------------------------------------------------------------------------
# transitions


@dataclass(frozen=True)
class Transition:
    """Target coordinates as rational functions of source coordinates
    (and t, c).  ``domain`` is a polynomial whose nonvanishing defines
    where the change is regular."""

    source: str
    target: str
    y_img: RationalFunction
    z_img: RationalFunction
    domain: Polynomial

    def bindings(self) -> dict:
        ty, tz = CHART_VARS[self.target]
        return {ty: self.y_img, tz: self.z_img}

    def compose(self, then: "Transition") -> "Transition":
        """First self, then ``then`` (whose source must be self.target).

        Domain bookkeeping keeps only the first factor's condition; the
        composed formulas' own denominators carry the rest.
        """
        if then.source != self.target:
            raise AtlasError("composition chart mismatch")
        b = self.bindings()
        return Transition(self.source, then.target,
                          then.y_img.substitute(b), then.z_img.substitute(b),
                          self.domain)

    def apply(self, y, z, t, c) -> tuple[Fraction, Fraction]:
        vals = {"t": Fraction(t), "c": Fraction(c)}
        sy, sz = CHART_VARS[self.source]
        vals[sy], vals[sz] = Fraction(y), Fraction(z)
        return self.y_img.eval_fractions(vals), self.z_img.eval_fractions(vals)


def _shear_tail(y: RationalFunction, c: RationalFunction, t: RationalFunction,
                quartic_coeff) -> RationalFunction:
    """(2c+1)/y + t/y^2 + k/y^4, the z-offset between W3 and W12."""
    return (2 * c + 1) / y + t / y ** 2 + rf(quartic_coeff) / y ** 4


@lru_cache(maxsize=None)
def transition(source: str, target: str) -> Transition:
    if source == target:
        raise AtlasError("transition requires distinct charts")
    t, c = rfvars("t", "c")
    y1, z1 = rfvars("y1", "z1")
    y3, z3 = rfvars("y3", "z3")
    y12, z12 = rfvars("y12", "z12")
    key = (source, target)
    if key == ("W1", "W3"):
        return Transition("W1", "W3", 1 / y1, c * y1 - y1 ** 2 * z1,
                          Polynomial.variable("y1"))
    if key == ("W3", "W1"):
        return Transition("W3", "W1", 1 / y3, y3 * (c - y3 * z3),
                          Polynomial.variable("y3"))
    if key == ("W3", "W12"):
        return Transition("W3", "W12", y3, z3 - _shear_tail(y3, c, t, 2),
                          Polynomial.variable("y3"))
    if key == ("W12", "W3"):
        return Transition("W12", "W3", y12, z12 + _shear_tail(y12, c, t, 2),
                          Polynomial.variable("y12"))
    if key == ("W1", "W12"):
        return Transition("W1", "W12", 1 / y1,
                          -(c + 1) * y1 - y1 ** 2 * (z1 + 2 * y1 ** 2 + t),
                          Polynomial.variable("y1"))
    if key == ("W12", "W1"):
        return Transition("W12", "W1", 1 / y12,
                          y12 * (-(c + 1) - y12 * z12) - 2 / y12 ** 2 - t,
                          Polynomial.variable("y12"))
    raise AtlasError(f"unknown chart pair {key}")


def round_trip_is_identity(i: str, j: str) -> bool:
    out = transition(i, j).compose(transition(j, i))
    sy, sz = CHART_VARS[i]
    return (out.y_img - rfvar(sy)).is_zero() and (out.z_img - rfvar(sz)).is_zero()


def consistency_check(quartic_coeff=2, reflect_c_on_direct: bool = False) -> bool:
    """The W1-to-W12 rule must agree with the composite through W3.

    The default arguments reproduce the atlas; changing the quartic tail
    coefficient or reflecting c on one side are negative controls.
    """
    t, c = rfvars("t", "c")
    y3 = rfvar("y3")
    step = Transition("W3", "W12", y3,
                      rfvar("z3") - _shear_tail(y3, c, t, quartic_coeff),
                      Polynomial.variable("y3"))
    composite = transition("W1", "W3").compose(step)
    direct = transition("W1", "W12")
    dy, dz = direct.y_img, direct.z_img
    if reflect_c_on_direct:
        dy = dy.substitute({"c": -1 - c})
        dz = dz.substitute({"c": -1 - c})
    return (composite.y_img - dy).is_zero() and (composite.z_img - dz).is_zero()


def jacobian_det(i: str, j: str) -> RationalFunction:
    """Fiberwise Jacobian determinant of the coordinate change at fixed
    (t, c); equals 1 on every pair, which is the symplectic statement."""
    tr = transition(i, j)
    sy, sz = CHART_VARS[i]
    return (tr.y_img.partial(sy) * tr.z_img.partial(sz)
            - tr.y_img.partial(sz) * tr.z_img.partial(sy))


# ---------------------------------------------------------------------------
# Hamiltonians


@dataclass(frozen=True)
class ChartHamiltonian:
    chart: str
    poly: Polynomial


@lru_cache(maxsize=None)
def hamiltonian(chart: str) -> ChartHamiltonian:
    """Polynomial Hamiltonian generating the flow in the given chart.

    The W1 one is the phase-space Hamiltonian; the others are obtained by
    transporting it through the transitions, with the W12 one corrected
    by -1/y12.  That these are polynomials is a nontrivial fact the
    as_polynomial call certifies (NotPolynomial would falsify it).
    """
    t, c = rfvars("t", "c")
    if chart == "W1":
        y, z = rfvars("y1", "z1")
        h = y ** 2 * z + _HALF * z ** 2 + _HALF * t * z - c * y
        return ChartHamiltonian("W1", h.as_polynomial())
    if chart == "W3":
        h1 = rf(hamiltonian("W1").poly)
        h3 = h1.substitute(transition("W3", "W1").bindings())
        return ChartHamiltonian("W3", h3.as_polynomial())
    if chart == "W12":
        h3 = rf(hamiltonian("W3").poly)
        h12 = h3.substitute(transition("W12", "W3").bindings()) - 1 / rfvar("y12")
        return ChartHamiltonian("W12", h12.as_polynomial())
    raise AtlasError(f"unknown chart {chart!r}")


def hamilton_field(chart: str) -> tuple[RationalFunction, RationalFunction]:
    """(dy/dt, dz/dt) = (dH/dz, -dH/dy): polynomial in every chart."""
    h = rf(hamiltonian(chart).poly)
    y, z = CHART_VARS[chart]
    return h.partial(z), -h.partial(y)


# ---------------------------------------------------------------------------
# relative forms over the c-line


@dataclass(frozen=True)
class RelTwoForm:
    """A*dy^dz + B*dy^dt + C*dz^dt in a fixed chart's coordinates."""

    dy_dz: RationalFunction
    dy_dt: RationalFunction
    dz_dt: RationalFunction

    def is_zero(self) -> bool:
        return (self.dy_dz.is_zero() and self.dy_dt.is_zero()
                and self.dz_dt.is_zero())

    def __sub__(self, other: "RelTwoForm") -> "RelTwoForm":
        return RelTwoForm(self.dy_dz - other.dy_dz,
                          self.dy_dt - other.dy_dt,
                          self.dz_dt - other.dz_dt)


@dataclass(frozen=True)
class RelOneForm:
    """A*dy + B*dz at fixed (t, c)."""

    dy: RationalFunction
    dz: RationalFunction

    def is_zero(self) -> bool:
        return self.dy.is_zero() and self.dz.is_zero()

    def __add__(self, other: "RelOneForm") -> "RelOneForm":
        return RelOneForm(self.dy + other.dy, self.dz + other.dz)

    def __sub__(self, other: "RelOneForm") -> "RelOneForm":
        return RelOneForm(self.dy - other.dy, self.dz - other.dz)


def symplectic_form(chart: str, h_poly: Polynomial | None = None) -> RelTwoForm:
    """dy^dz + dH^dt in the chart's own coordinates."""
    h = rf(h_poly if h_poly is not None else hamiltonian(chart).poly)
    y, z = CHART_VARS[chart]
    return RelTwoForm(rf(1), h.partial(y), h.partial(z))


def pullback_two_form(form: RelTwoForm, tr: Transition) -> RelTwoForm:
    """Express a form on tr.target in tr.source coordinates."""
    sy, sz = CHART_VARS[tr.source]
    b = tr.bindings()
    yy, yz, yt = tr.y_img.partial(sy), tr.y_img.partial(sz), tr.y_img.partial("t")
    zy, zz, zt = tr.z_img.partial(sy), tr.z_img.partial(sz), tr.z_img.partial("t")
    a = form.dy_dz.substitute(b)
    bb = form.dy_dt.substitute(b)
    cc = form.dz_dt.substitute(b)
    return RelTwoForm(
        a * (yy * zz - yz * zy),
        a * (yy * zt - yt * zy) + bb * yy + cc * zy,
        a * (yz * zt - yt * zz) + bb * yz + cc * zz,
    )


def pullback_one_form(form: RelOneForm, tr: Transition) -> RelOneForm:
    sy, sz = CHART_VARS[tr.source]
    b = tr.bindings()
    a = form.dy.substitute(b)
    bb = form.dz.substitute(b)
    return RelOneForm(a * tr.y_img.partial(sy) + bb * tr.z_img.partial(sy),
                      a * tr.y_img.partial(sz) + bb * tr.z_img.partial(sz))


def glue_residual(i: str, j: str,
                  h_override: dict | None = None) -> RelTwoForm:
    """Pull the target chart's symplectic form back and subtract the
    source chart's: identically zero exactly when the two forms glue.

    ``h_override`` replaces named charts' Hamiltonians, for probing the
    uniqueness direction (any non-constant fiber perturbation breaks at
    least one pair).
    """
    h_override = h_override or {}
    form_i = symplectic_form(i, h_override.get(i))
    form_j = symplectic_form(j, h_override.get(j))
    return pullback_two_form(form_j, transition(i, j)) - form_i


# ---------------------------------------------------------------------------
# deformation cocycle


def ks_cocycle(i: str, j: str) -> RelOneForm:
    """d(H_i(tau) - H_j) at fixed (t, c), expressed on chart j, where
    tau carries chart-j coordinates to chart-i ones.  Measures how the
    two Hamiltonians disagree as functions on the overlap."""
    tau = transition(j, i)
    hi = rf(hamiltonian(i).poly).substitute(tau.bindings())
    diff = hi - rf(hamiltonian(j).poly)
    y, z = CHART_VARS[j]
    return RelOneForm(diff.partial(y), diff.partial(z))


def ks_cocycle_additivity() -> bool:
    """value(1,3) transported to W12 plus value(3,12) equals value(1,12)."""
    v13 = pullback_one_form(ks_cocycle("W1", "W3"), transition("W12", "W3"))
    v312 = ks_cocycle("W3", "W12")
    v112 = ks_cocycle("W1", "W12")
    return (v13 + v312 - v112).is_zero()


# ---------------------------------------------------------------------------
# the parameter involution


def _involution_w1(c_img: RationalFunction) -> dict:
    """Substitution on W1 data: y1 -> -y1, z1 -> -(z1 + 2y1^2 + t)."""
    t = rfvar("t")
    y1, z1 = rfvars("y1", "z1")
    return {"y1": -y1, "z1": -(z1 + 2 * y1 ** 2 + t), "c": c_img}


def involution_check(c_img: RationalFunction | None = None) -> bool:
    """The sign involution intertwines the atlas at parameter c with the
    atlas at parameter -(c+1): the W1-to-W12 rule at the image parameter,
    composed with the substitution, is the plain W1-to-W3 rule followed
    by the sign flip of both W3 coordinates, and symmetrically with W3
    and W12 exchanged.  The default c-image is -(c+1); any other image
    (the negative control) breaks the identities."""
    c = rfvar("c")
    if c_img is None:
        c_img = -(c + 1)
    sigma = _involution_w1(c_img)

    checks = []
    # route A: (W1 --sigma--> W1[c']) then transition to W12 at c'
    tr112 = transition("W1", "W12")
    lhs_y = tr112.y_img.substitute(sigma)
    lhs_z = tr112.z_img.substitute(sigma)
    # against: transition to W3 at c, then flip both coordinates
    tr13 = transition("W1", "W3")
    checks.append((lhs_y + tr13.y_img).is_zero())
    checks.append((lhs_z + tr13.z_img).is_zero())

    # route B: same with the two target charts exchanged
    tr13b = transition("W1", "W3")
    lhs_y = tr13b.y_img.substitute(sigma)
    lhs_z = tr13b.z_img.substitute(sigma)
    tr112b = transition("W1", "W12")
    checks.append((lhs_y + tr112b.y_img).is_zero())
    checks.append((lhs_z + tr112b.z_img).is_zero())
    return all(checks)


def involution_squared_is_identity() -> bool:
    c = rfvar("c")
    sigma = _involution_w1(-(c + 1))
    twice = {k: v.substitute(sigma) for k, v in sigma.items()}
    return ((twice["y1"] - rfvar("y1")).is_zero()
            and (twice["z1"] - rfvar("z1")).is_zero()
            and (twice["c"] - c).is_zero())


# ---------------------------------------------------------------------------
# periods of the vanishing cycles


def period_c2_minus_c1(c0) -> Fraction:
    """Coefficient of 2*pi*i in the period of the fiber symplectic form
    over the cycle joining the two -1-sections across the first
    exceptional curve.

    The computation is the residue argument run exactly: the form equals
    -(1/z4^2) dy4^dz4 beyond the section, the first-blow-up substitution
    y4 = Y*z, z4 = z turns it into (1/z) dz^dY, and the tube integral
    around z = 0 leaves the residue dY integrated along the segment of
    the exceptional line between the two marked points, Y = 0 and Y = c.
    """
    c0 = Fraction(c0)
    t, c = rfvars("t", "c")
    y3, z3 = rfvars("y3", "z3")
    y4, z4 = rfvars("y4", "z4")
    Y, z = rfvars("Y", "z")

    # dy3^dz3 in W4 coordinates: y3 = y4, z3 = 1/z4
    j34 = ((y4).partial("y4") * (1 / z4).partial("z4")
           - (y4).partial("z4") * (1 / z4).partial("y4"))
    assert (j34 + 1 / z4 ** 2).is_zero()

    # substitute y4 = Y z, z4 = z; the Jacobian multiplies the coefficient
    sub = {"y4": Y * z, "z4": z}
    jblow = ((Y * z).partial("Y") * z.partial("z")
             - (Y * z).partial("z") * z.partial("Y"))
    coeff = j34.substitute(sub) * jblow
    assert (coeff * z + 1).is_zero(), "form must be -(1/z) dY^dz"

    # residue of (1/z) dz ^ dY along z = 0 is dY; integrate over the
    # segment between the marked points of the exceptional line.
    # Marked points: roots in Y of the two sections' strict transforms.
    c1_eq = rf(Polynomial.variable("y4")).substitute(sub)          # first section
    c2_eq = (Polynomial.variable("y4") - Polynomial.variable("c")
             * Polynomial.variable("z4"))
    c2_eq = rf(c2_eq).substitute(sub)                              # second section
    zi = var_index("z")
    ends = []
    for eq in (c1_eq, c2_eq):
        num = eq.num
        k = min(e[zi] for e in num.terms)  # exceptional factor off the strict transform
        stripped = Polynomial({e[:zi] + (e[zi] - k,) + e[zi + 1:]: q
                               for e, q in num.terms.items()})
        # linear in Y: root = -constant/lead
        lead = stripped.coeff_in("Y", 1)
        const = stripped - Polynomial.variable("Y") * lead
        root = rf(-const) / rf(lead)
        ends.append(root.eval_fractions({"c": c0}))
    return ends[1] - ends[0]


def period_c4_minus_c3(c0) -> Fraction:
    """The companion cycle's period, via the parameter reflection that
    exchanges the two degenerations: evaluate at -1-c."""
    return period_c2_minus_c1(Fraction(-1) - Fraction(c0))
