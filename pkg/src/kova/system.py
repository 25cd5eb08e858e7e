"""Weighted polynomial ODE systems: parsing, assumption checks, builtins.

A system  dx_i/dz = f_i(x, z) + g_i(x, z)  carries a positive weight vector
(p_1..p_m, r, s).  The f/g split is derived from the declared weights: a
monomial of equation i with weighted degree exactly p_i + 1 goes to f_i,
strictly smaller goes to g_i, larger is a quasi-homogeneity violation.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .expr import ExprError, parse_expr, poly_to_str
from .poly import Poly


class SystemError(ValueError):
    pass


@dataclass(frozen=True)
class WeightVector:
    p: tuple  # positive integers, one per state variable
    r: int  # weighted degree of z (0 for autonomous systems)
    s: int  # r + 1, or 1 when r = 0

    def __post_init__(self):
        if any(w <= 0 for w in self.p):
            raise SystemError("weights p_i must be positive")
        if self.r < 0 or self.s <= 0:
            raise SystemError("r must be >= 0 and s positive")
        if self.r > 0 and self.s != self.r + 1:
            raise SystemError("s must equal r + 1 when r > 0")
        if self.r == 0 and self.s != 1:
            raise SystemError("autonomous systems use r = 0, s = 1")
        if math.gcd(*self.p, self.r if self.r else self.s, self.s) != 1:
            raise SystemError("gcd of the weight vector must be 1")


@dataclass
class WeightedSystem:
    name: str
    vars: tuple  # state variable names; "z" is implicit and reserved
    weight: WeightVector
    f: list  # quasi-homogeneous parts, Polys in vars + ("z",)
    g: list  # lower-order parts
    fA: list = field(init=False)  # autonomous truncation f_i(x, 0)
    fN: list = field(init=False)

    def __post_init__(self):
        zi = len(self.vars)
        self.fA = [
            fi.filter_terms(lambda e, c: e[zi] == 0) for fi in self.f
        ]
        self.fN = [fi - fa for fi, fa in zip(self.f, self.fA)]

    @property
    def m(self) -> int:
        return len(self.vars)

    @property
    def ring(self) -> tuple:
        return self.vars + ("z",)

    def rhs(self, i: int) -> Poly:
        return self.f[i] + self.g[i]

    def weight_map(self) -> dict:
        w = {v: p for v, p in zip(self.vars, self.weight.p)}
        w["z"] = self.weight.r
        return w

    def pretty(self) -> str:
        lines = [f"system {self.name}"]
        lines.append("vars " + " ".join(self.vars))
        w = self.weight
        lines.append("weights " + " ".join(str(x) for x in (*w.p, w.r, w.s)))
        for v, fi, gi in zip(self.vars, self.f, self.g):
            lines.append(f"eq {v} = {poly_to_str(fi + gi)}")
        return "\n".join(lines) + "\n"


@dataclass
class AssumptionReport:
    a1_ok: bool
    a2_ok: bool
    a3_ok: bool
    s_ok: bool
    violations: list  # (equation index, monomial string, expected, actual)

    @property
    def all_ok(self) -> bool:
        return self.a1_ok and self.a2_ok and self.a3_ok and self.s_ok


# ---------------------------------------------------------------------------
# parsing


def _weighted_degree_of_term(exps, weights) -> int:
    return sum(w * e for w, e in zip(weights, exps))


def parse_system(text: str, name_hint: str = "") -> WeightedSystem:
    """Parse the line-oriented input format into a WeightedSystem.

    The right-hand side of each equation is split into f/g by weighted
    degree; any monomial exceeding p_i + 1 raises an A1-violation error.
    """
    name = name_hint or "unnamed"
    vars: tuple | None = None
    weights: WeightVector | None = None
    eqs: dict = {}
    order: list = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "system":
            name = rest or name
        elif head == "vars":
            vars = tuple(rest.split())
            if not vars:
                raise SystemError(f"line {lineno}: empty vars declaration")
            if "z" in vars:
                raise SystemError(f"line {lineno}: 'z' is reserved for the independent variable")
            if len(set(vars)) != len(vars):
                raise SystemError(f"line {lineno}: duplicate variable name")
        elif head == "weights":
            if vars is None:
                raise SystemError(f"line {lineno}: weights before vars")
            nums = rest.split()
            if len(nums) != len(vars) + 2:
                raise SystemError(
                    f"line {lineno}: expected {len(vars) + 2} weights (p_1..p_m r s)"
                )
            try:
                nums = [int(x) for x in nums]
            except ValueError:
                raise SystemError(f"line {lineno}: weights must be integers") from None
            weights = WeightVector(tuple(nums[:-2]), nums[-2], nums[-1])
        elif head == "eq":
            if vars is None:
                raise SystemError(f"line {lineno}: eq before vars")
            lhs, sep, expr_text = rest.partition("=")
            lhs = lhs.strip()
            if not sep:
                raise SystemError(f"line {lineno}: missing '=' in equation")
            if lhs not in vars:
                raise SystemError(f"line {lineno}: unknown equation variable {lhs!r}")
            if lhs in eqs:
                raise SystemError(f"line {lineno}: duplicate equation for {lhs!r}")
            try:
                p = parse_expr(expr_text, vars + ("z",), line=lineno)
            except ExprError as exc:
                raise SystemError(f"syntax error: {exc}") from exc
            for exps in p.terms:
                if any(e < 0 for e in exps):
                    raise SystemError(f"line {lineno}: negative exponent in equation")
            eqs[lhs] = p
            order.append(lhs)
        else:
            raise SystemError(f"line {lineno}: unknown directive {head!r}")
    if vars is None or weights is None:
        raise SystemError("input needs vars and weights declarations")
    missing = [v for v in vars if v not in eqs]
    if missing:
        raise SystemError(f"missing equations for: {', '.join(missing)}")

    wlist = list(weights.p) + [weights.r]
    f: list = []
    g: list = []
    for i, v in enumerate(vars):
        rhs = eqs[v]
        fi = Poly(rhs.vars)
        gi = Poly(rhs.vars)
        target = weights.p[i] + 1
        for exps, c in rhs.terms.items():
            d = _weighted_degree_of_term(exps, wlist)
            mono = Poly.monomial(rhs.vars, exps, c)
            if d == target:
                fi = fi + mono
            elif d < target:
                gi = gi + mono
            else:
                raise SystemError(
                    f"(A1) violation in equation {v!r}: monomial {poly_to_str(mono)} "
                    f"has weighted degree {d} > {target}"
                )
        f.append(fi)
        g.append(gi)
    return WeightedSystem(name, vars, weights, f, g)


# ---------------------------------------------------------------------------
# assumption checks


def check_assumptions(sys: WeightedSystem) -> AssumptionReport:
    """Verify (A1), (A2), (A3) and the weight-vector constraint on s.

    (A3) is checked with a formal s-th root of unity: every monomial of
    f_i + g_i must have weighted degree congruent to p_i + 1 mod s.
    """
    w = list(sys.weight.p) + [sys.weight.r]
    s = sys.weight.s
    violations = []
    a1 = a2 = a3 = True
    for i in range(sys.m):
        target = sys.weight.p[i] + 1
        for exps in sys.f[i].terms:
            d = _weighted_degree_of_term(exps, w)
            if d != target:
                a1 = False
                violations.append((i, _mono_str(sys, exps), target, d))
        for exps in sys.g[i].terms:
            d = _weighted_degree_of_term(exps, w)
            if d >= target:
                a2 = False
                violations.append((i, _mono_str(sys, exps), target - 1, d))
            if (target - d) % s != 0:
                a3 = False
                violations.append((i, _mono_str(sys, exps), target % s, d % s))
    try:
        s_ok = True
        WeightVector(sys.weight.p, sys.weight.r, sys.weight.s)
    except SystemError:
        s_ok = False
    return AssumptionReport(a1, a2, a3, s_ok, violations)


def _mono_str(sys: WeightedSystem, exps) -> str:
    return poly_to_str(Poly.monomial(sys.ring, exps, 1))


def scaling_invariance_holds(sys: WeightedSystem) -> bool:
    """Symbolic check of the truncated system's scaling invariance:
    f_i^A picks up exactly lambda^(p_i + 1) under x_k -> lambda^(p_k) x_k."""
    lam_ring = sys.ring + ("lam",)
    values = {
        v: Poly.var(lam_ring, v) * Poly.monomial(lam_ring, (0,) * sys.m + (0, p), 1)
        for v, p in zip(sys.vars, sys.weight.p)
    }
    values["z"] = Poly.var(lam_ring, "z")
    for i in range(sys.m):
        scaled = sys.fA[i].subs(values)
        lam_pow = Poly.monomial(lam_ring, (0,) * sys.m + (0, sys.weight.p[i] + 1), 1)
        if scaled != sys.fA[i].embed(lam_ring) * lam_pow:
            return False
    return True


# ---------------------------------------------------------------------------
# condition (S)


@dataclass
class ConditionSResult:
    status: str  # "holds" | "violated" | "unverified"
    confidence: str  # "probe" | "asserted"
    witness: list | None = None


def check_condition_S(
    sys: WeightedSystem,
    mode: str = "numeric-probe",
    starts: int = 100,
    iters: int = 50,
    residual_tol: float = 1e-12,
    origin_tol: float = 1e-6,
    seed: int = 0,
) -> ConditionSResult:
    """Probe whether the truncated system's only fixed point is the origin.

    The probe runs multi-start Newton iteration on f^A = 0 from random
    complex points in the unit polydisc; any verified root away from the
    origin is a violation witness.  Absence of witnesses is evidence, not
    proof ("probe" confidence).
    """
    if mode == "assert":
        return ConditionSResult("holds", "asserted")
    if mode != "numeric-probe":
        raise ValueError("mode must be 'assert' or 'numeric-probe'")
    import numpy as np

    rng = random.Random(seed)
    m = sys.m
    jac = [[sys.fA[i].diff(v) for v in sys.vars] for i in range(m)]

    def f_of(x):
        vals = {v: x[k] for k, v in enumerate(sys.vars)}
        vals["z"] = 0j
        return np.array([sys.fA[i].eval_numeric(vals) for i in range(m)])

    def j_of(x):
        vals = {v: x[k] for k, v in enumerate(sys.vars)}
        vals["z"] = 0j
        return np.array([[jac[i][k].eval_numeric(vals) for k in range(m)] for i in range(m)])

    for _ in range(starts):
        x = np.array(
            [complex(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(m)]
        )
        for _ in range(iters):
            fv = f_of(x)
            if np.max(np.abs(fv)) < residual_tol:
                break
            try:
                step = np.linalg.solve(j_of(x), fv)
            except np.linalg.LinAlgError:
                break
            x = x - step
            if not np.all(np.isfinite(x)):
                break
        else:
            continue
        fv = f_of(x)
        if np.max(np.abs(fv)) < residual_tol and np.linalg.norm(x) > origin_tol:
            return ConditionSResult("violated", "probe", witness=[complex(v) for v in x])
    return ConditionSResult("holds", "probe")


# ---------------------------------------------------------------------------
# builtins

_BUILTIN_SOURCES = {
    "painleve1": """\
system painleve1
vars x y
weights 3 2 4 5
eq x = 6*y^2 + z
eq y = x
""",
    "painleve2": """\
system painleve2
vars x y
weights 2 1 2 3
eq x = 2*y^3 + y*z + 1
eq y = x
""",
    "painleve4": """\
system painleve4
vars x y
weights 1 1 1 2
eq x = -x^2 + 2*x*y + 2*x*z + 1
eq y = -y^2 + 2*x*y - 2*y*z + 1
""",
}


def builtin_system(name: str) -> WeightedSystem:
    """One of painleve1 | painleve2 | painleve4 | p1-hierarchy:m."""
    if name in _BUILTIN_SOURCES:
        return parse_system(_BUILTIN_SOURCES[name])
    if name.startswith("p1-hierarchy:"):
        from .hierarchy import generate

        m = int(name.split(":", 1)[1])
        return generate(m).system
    raise SystemError(
        f"unknown builtin {name!r}; available: "
        + ", ".join([*_BUILTIN_SOURCES, "p1-hierarchy:m"])
    )
