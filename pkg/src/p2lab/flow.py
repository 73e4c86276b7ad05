"""Adaptive integration of the Hamiltonian flow across the chart atlas.

Movable poles of solutions are ordinary points of the flow in another
chart, so the integrator carries a chart label with the state and hops
charts whenever coordinates grow past a threshold.  Transitions use the
exact rational formulas evaluated in double precision; only the Runge-
Kutta steps are approximate.

The per-chart vector fields are compiled from the symbolically derived
Hamiltonians, and their mutual consistency through the transition chain
rule is checked both symbolically (once) and at random sample points.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import atlas, backlund
from .exact import Polynomial, RationalFunction, var_index


class FlowError(Exception):
    pass


class NoChart(FlowError):
    """Point too close to the removed divisor: no chart keeps it finite."""


class StepFailure(FlowError):
    """Step size underflow or step budget exhausted."""


@dataclass(frozen=True)
class IntegratorConfig:
    rtol: float = 1e-10
    atol: float = 1e-12
    switch_threshold: float = 5.0
    h_init: float = 1e-3
    h_max: float = 0.25
    max_steps: int = 200_000
    no_chart_bound: float = 1e8

    def __post_init__(self):
        if self.rtol <= 0 or self.atol <= 0:
            raise FlowError("tolerances must be positive")
        if self.switch_threshold <= 1:
            raise FlowError("switch threshold must exceed 1")


@dataclass(frozen=True)
class FlowState:
    chart: str
    y: float
    z: float
    t: float
    c: float


@dataclass(frozen=True)
class SwitchEvent:
    t: float
    from_chart: str
    to_chart: str
    y_pre: float
    z_pre: float
    y_post: float
    z_post: float


@dataclass
class Trajectory:
    c: float
    states: list = field(default_factory=list)
    switches: list = field(default_factory=list)
    accepted: int = 0
    rejected: int = 0

    @property
    def final(self) -> FlowState:
        return self.states[-1]


# ---------------------------------------------------------------------------
# compiling exact expressions to float evaluators


def compile_rf(expr: RationalFunction | Polynomial, names: tuple[str, ...]):
    """Close an exact expression over an argument order; returns a plain
    float function of len(names) arguments."""
    expr = RationalFunction.coerce(expr)
    idx = {var_index(n): k for k, n in enumerate(names)}

    def build(poly: Polynomial):
        terms = []
        for e, q in poly.terms.items():
            spots = []
            for i, p in enumerate(e):
                if p:
                    if i not in idx:
                        raise FlowError(
                            f"expression uses unbound variable index {i}")
                    spots.append((idx[i], p))
            terms.append((float(q), tuple(spots)))
        return terms

    num_terms = build(expr.num)
    den_terms = build(expr.den)

    def ev(terms, args):
        total = 0.0
        for coeff, spots in terms:
            v = coeff
            for k, p in spots:
                v *= args[k] ** p
            total += v
        return total

    if expr.den.is_constant():
        d = float(expr.den.constant_value())

        def f(*args):
            return ev(num_terms, args) / d
        return f

    def g(*args):
        return ev(num_terms, args) / ev(den_terms, args)
    return g


@lru_cache(maxsize=None)
def chart_field(chart: str):
    """Compiled (dy/dt, dz/dt) for one chart, arguments (y, z, t, c)."""
    fy, fz = atlas.hamilton_field(chart)
    names = atlas.CHART_VARS[chart] + ("t", "c")
    return compile_rf(fy, names), compile_rf(fz, names)


@lru_cache(maxsize=None)
def _transition_fns(i: str, j: str):
    tr = atlas.transition(i, j)
    names = atlas.CHART_VARS[i] + ("t", "c")
    return compile_rf(tr.y_img, names), compile_rf(tr.z_img, names)


def transport(i: str, j: str, y: float, z: float, t: float, c: float):
    """Float evaluation of the exact chart change; (nan, nan) when the
    point sits outside the overlap."""
    if i == j:
        return y, z
    fy, fz = _transition_fns(i, j)
    try:
        return fy(y, z, t, c), fz(y, z, t, c)
    except ZeroDivisionError:
        return math.nan, math.nan


def vector_field(chart: str, y: float, z: float, t: float, c: float):
    fy, fz = chart_field(chart)
    return fy(y, z, t, c), fz(y, z, t, c)


# ---------------------------------------------------------------------------
# chain-rule consistency of the compiled fields


def field_consistency_symbolic(i: str, j: str) -> bool:
    """Pushing the source field through the transition's Jacobian (with
    the explicit t-derivative of the change) must give the target field
    on the overlap, as an exact identity."""
    tr = atlas.transition(i, j)
    sy, sz = atlas.CHART_VARS[i]
    fy_i, fz_i = atlas.hamilton_field(i)
    fy_j, fz_j = atlas.hamilton_field(j)
    b = tr.bindings()
    push_y = tr.y_img.partial(sy) * fy_i + tr.y_img.partial(sz) * fz_i \
        + tr.y_img.partial("t")
    push_z = tr.z_img.partial(sy) * fy_i + tr.z_img.partial(sz) * fz_i \
        + tr.z_img.partial("t")
    return ((push_y - fy_j.substitute(b)).is_zero()
            and (push_z - fz_j.substitute(b)).is_zero())


@lru_cache(maxsize=None)
def _jacobian_fns(i: str, j: str):
    tr = atlas.transition(i, j)
    sy, sz = atlas.CHART_VARS[i]
    names = (sy, sz, "t", "c")
    return tuple(compile_rf(expr, names) for expr in (
        tr.y_img.partial(sy), tr.y_img.partial(sz), tr.y_img.partial("t"),
        tr.z_img.partial(sy), tr.z_img.partial(sz), tr.z_img.partial("t")))


def field_consistency_numeric(i: str, j: str, n: int = 100, seed: int = 0) -> float:
    """Max relative defect of the chain rule at random overlap points,
    with the transition Jacobian evaluated exactly (in float)."""
    rng = random.Random(seed)
    worst = 0.0
    yy, yz, yt, zy, zz, zt = _jacobian_fns(i, j)
    for _ in range(n):
        y = rng.uniform(0.2, 2.0) * rng.choice((-1, 1))
        z = rng.uniform(0.2, 2.0) * rng.choice((-1, 1))
        t = rng.uniform(-1.0, 1.0)
        c = rng.uniform(-1.0, 1.0)
        yj, zj = transport(i, j, y, z, t, c)
        fy, fz = vector_field(i, y, z, t, c)
        gy, gz = vector_field(j, yj, zj, t, c)
        push_y = yy(y, z, t, c) * fy + yz(y, z, t, c) * fz + yt(y, z, t, c)
        push_z = zy(y, z, t, c) * fy + zz(y, z, t, c) * fz + zt(y, z, t, c)
        for got, ref in ((push_y, gy), (push_z, gz)):
            scale = max(1.0, abs(ref))
            worst = max(worst, abs(got - ref) / scale)
    return worst


# ---------------------------------------------------------------------------
# chart policy


def best_chart(chart: str, y: float, z: float, t: float, c: float,
               bound: float = 1e8) -> str:
    """Chart in which the point has the smallest max(|y|, |z|), ties
    broken in the fixed order of the atlas; NoChart when every chart
    blows up past ``bound`` (the point is numerically on the removed
    divisor)."""
    best = None
    best_size = math.inf
    for cand in atlas.CHARTS:
        yy, zz = transport(chart, cand, y, z, t, c)
        if math.isnan(yy) or math.isnan(zz) or math.isinf(yy) or math.isinf(zz):
            continue
        size = max(abs(yy), abs(zz))
        if size < best_size:
            best, best_size = cand, size
    if best is None or best_size > bound:
        raise NoChart(f"no finite chart at t={t} (smallest size {best_size})")
    return best


# ---------------------------------------------------------------------------
# embedded Runge-Kutta 5(4)


_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200,
       187 / 2100, 1 / 40)


def _rk_step(f, u, t, h):
    """One embedded step for f(u, t) -> du; returns (u5, err_vector)."""
    k = [f(u, t)]
    n = len(u)
    for s in range(1, 7):
        us = tuple(u[m] + h * sum(_A[s][r] * k[r][m] for r in range(s))
                   for m in range(n))
        k.append(f(us, t + _C[s] * h))
    u5 = tuple(u[m] + h * sum(_B5[r] * k[r][m] for r in range(7))
               for m in range(n))
    err = tuple(h * sum((_B5[r] - _B4[r]) * k[r][m] for r in range(7))
                for m in range(n))
    return u5, err


def _error_norm(u, u_new, err, rtol, atol):
    acc = 0.0
    for m in range(len(u)):
        sc = atol + rtol * max(abs(u[m]), abs(u_new[m]))
        acc += (err[m] / sc) ** 2
    return math.sqrt(acc / len(u))


def _adaptive(f, u0, t0, t1, config, on_accept=None, stats=None):
    """Drive f from t0 to t1 with PI step control; on_accept may replace
    the state (chart switching hooks in there); stats, when given, is a
    two-slot list receiving [accepted, rejected] counts."""
    if t1 == t0:
        return u0
    direction = 1.0 if t1 > t0 else -1.0
    u, t = u0, t0
    h = direction * min(config.h_init, config.h_max, abs(t1 - t0))
    err_prev = 1.0
    steps = 0
    while (t1 - t) * direction > 0:
        steps += 1
        if steps > config.max_steps:
            raise StepFailure("step budget exhausted")
        if abs(h) < 1e-14 * max(1.0, abs(t)):
            raise StepFailure("step size underflow")
        final_step = (t + h - t1) * direction >= 0
        if final_step:
            h = t1 - t
        if any(not math.isfinite(x) for x in u):
            raise StepFailure("state became non-finite")
        u_new, err = _rk_step(f, u, t, h)
        norm = _error_norm(u, u_new, err, config.rtol, config.atol)
        if not math.isfinite(norm):
            if stats is not None:
                stats[1] += 1
            h = direction * abs(h) * 0.2
            continue
        if norm <= 1.0 or abs(h) <= 1e-13 * max(1.0, abs(t)):
            t = t1 if final_step else t + h
            u = u_new
            if on_accept is not None:
                u = on_accept(u, t)
            if stats is not None:
                stats[0] += 1
            fac = 0.9 * (norm ** -0.14 if norm > 0 else 2.0) \
                * (err_prev ** 0.08)
            err_prev = max(norm, 1e-10)
        else:
            if stats is not None:
                stats[1] += 1
            fac = max(0.2, 0.9 * norm ** -0.2)
        h = direction * min(abs(h) * min(5.0, max(0.2, fac)), config.h_max)
    return u


def integrate(c: float, initial: FlowState, t1: float,
              config: IntegratorConfig = IntegratorConfig()) -> Trajectory:
    """Integrate from the initial state's time to t1, hopping charts as
    needed; every accepted step appends a sample."""
    traj = Trajectory(c=float(c))
    traj.states.append(initial)
    chart_box = [initial.chart]

    def f(u, t):
        fy, fz = chart_field(chart_box[0])
        return (fy(u[0], u[1], t, c), fz(u[0], u[1], t, c))

    def on_accept(u, t):
        y, z = u
        cur = chart_box[0]
        if max(abs(y), abs(z)) > config.switch_threshold:
            target = best_chart(cur, y, z, t, c, config.no_chart_bound)
            if target != cur:
                y2, z2 = transport(cur, target, y, z, t, c)
                traj.switches.append(SwitchEvent(t, cur, target, y, z, y2, z2))
                chart_box[0] = target
                u = (y2, z2)
        traj.states.append(FlowState(chart_box[0], u[0], u[1], t, float(c)))
        return u

    stats = [0, 0]
    _adaptive(f, (initial.y, initial.z), initial.t, t1, config, on_accept, stats)
    traj.accepted, traj.rejected = stats
    if traj.final.t != t1:
        # zero-length span: loop body never ran
        traj.states.append(FlowState(chart_box[0], initial.y, initial.z,
                                     t1, float(c)))
    return traj


def switch_continuity_ok(traj: Trajectory) -> bool:
    """Replay every recorded switch through the exact transition and
    demand bit-for-bit agreement with what the integrator stored."""
    for ev in traj.switches:
        y2, z2 = transport(ev.from_chart, ev.to_chart, ev.y_pre, ev.z_pre,
                           ev.t, traj.c)
        if (y2, z2) != (ev.y_post, ev.z_post):
            return False
    return True


def to_w1(state: FlowState) -> tuple[float, float]:
    """(q, p) equivalents of a state; infinities on the pole divisor."""
    if state.chart == "W1":
        return state.y, state.z
    y, z = transport(state.chart, "W1", state.y, state.z, state.t, state.c)
    return y, z


# ---------------------------------------------------------------------------
# derived checks


@lru_cache(maxsize=None)
def _phase_map_fns(kind: str):
    if kind == "translation":
        m = backlund.phase_translation()
    elif kind == "reflection":
        m = backlund.phase_reflection()
    elif kind == "negation":
        m = backlund.phase_negation()
    else:
        raise FlowError(f"unknown phase map {kind!r}")
    names = ("q", "p", "t", "c")
    return (compile_rf(m.q_img, names), compile_rf(m.p_img, names),
            compile_rf(m.c_img, ("c",)))


def apply_phase_map(kind: str, q: float, p: float, t: float, c: float):
    """(q', p', c') under one of the exact symmetries, in float."""
    if kind == "negation" and c == 0.0:
        return q, p, 0.0   # degenerates to the identity; avoids 0/0 at p=0
    fq, fp, fc = _phase_map_fns(kind)
    try:
        return fq(q, p, t, c), fp(q, p, t, c), fc(c)
    except ZeroDivisionError:
        raise FlowError(f"phase map {kind!r} undefined at this state") from None


def backlund_numeric_check(c: float, initial: FlowState, t1: float,
                           config: IntegratorConfig = IntegratorConfig(),
                           kind: str = "translation") -> float:
    """Transform-then-integrate against integrate-then-transform.

    Both routes land at parameter c' and time t1; returns the max abs
    discrepancy of (q, p) there.
    """
    traj = integrate(c, initial, t1, config)
    q0, p0 = to_w1(initial)
    q1, p1 = to_w1(traj.final)

    q0m, p0m, c_new = apply_phase_map(kind, q0, p0, initial.t, c)
    q1m, p1m, _ = apply_phase_map(kind, q1, p1, t1, c)

    traj2 = integrate(c_new, FlowState("W1", q0m, p0m, initial.t, c_new),
                      t1, config)
    q2, p2 = to_w1(traj2.final)
    return max(abs(q2 - q1m), abs(p2 - p1m))


def reversibility_error(c: float, initial: FlowState, t1: float,
                        config: IntegratorConfig = IntegratorConfig()) -> float:
    """Integrate out and back; distance to the start in its own chart."""
    out = integrate(c, initial, t1, config)
    back = integrate(c, out.final, initial.t, config)
    y, z = transport(back.final.chart, initial.chart, back.final.y,
                     back.final.z, initial.t, c)
    return max(abs(y - initial.y), abs(z - initial.z))


def riccati_compare(t0: float, t1: float, q0: float,
                    config: IntegratorConfig = IntegratorConfig(),
                    checkpoints: int = 8) -> tuple[float, float]:
    """At the parameter value where the zero-p locus is invariant, the
    q-component must follow the scalar first-order equation
    dq/dt = q^2 + t/2.  Returns (max |q difference| over checkpoints,
    max |p| drift)."""
    c = 0.0

    def scalar(u, t):
        return (u[0] ** 2 + 0.5 * t,)

    drift = 0.0
    worst = 0.0
    state = FlowState("W1", q0, 0.0, t0, c)
    u_scalar = (q0,)
    for k in range(1, checkpoints + 1):
        tk = t0 + (t1 - t0) * k / checkpoints
        traj = integrate(c, state, tk, config)
        state = traj.final
        drift = max(drift, max(abs(s.z) for s in traj.states
                               if s.chart in ("W1", "W3")))
        u_scalar = _adaptive(scalar, u_scalar, tk - (t1 - t0) / checkpoints, tk,
                             config)
        if state.chart != "W1":
            raise FlowError("trajectory left the base chart; "
                            "pick a pole-free window for this comparison")
        worst = max(worst, abs(state.y - u_scalar[0]))
    return worst, drift


def invariant_drift(traj: Trajectory, locus: str) -> float:
    """Max defect of an invariant locus along a trajectory.

    ``locus`` is "p" (the zero-p curve, invariant at c = 0; equals the
    z-coordinate in both W1 and W3) or "shifted" (p + 2q^2 + t, invariant
    at c = -1; equals -y12^2*z12 in the third chart).
    """
    worst = 0.0
    for s in traj.states:
        if locus == "p":
            if s.chart == "W12":
                raise FlowError("zero-p locus never routes through W12")
            worst = max(worst, abs(s.z))
        elif locus == "shifted":
            if s.chart == "W12":
                worst = max(worst, abs(s.y ** 2 * s.z))
            else:
                q, p = to_w1(s)
                worst = max(worst, abs(p + 2 * q ** 2 + s.t))
        else:
            raise FlowError(f"unknown locus {locus!r}")
    return worst
