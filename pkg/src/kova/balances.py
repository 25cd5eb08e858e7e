"""Balances: roots c of -p_i c_i = f_i^A(c), the leading coefficients of
candidate pole-type solutions.

Discovery combines (a) closed forms for recognized first-Painleve-hierarchy
systems, (b) exact resultant elimination for one- and two-dimensional
systems, and (c) a seeded multi-start Newton probe with continued-fraction
rationalization, always followed by exact re-verification.  Numeric roots
that fail to rationalize are reported separately, never as exact balances.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Poly
from .system import WeightedSystem

DEN_CAP = 10**6


@dataclass
class Balance:
    c: tuple  # exact values, one per state variable
    chart_index: int  # first index with c_j != 0 (-1 for the zero balance)
    multiplicity_hint: str = "unknown"  # "isolated" | "non-isolated" | "unknown"
    label: str = ""

    def is_zero(self) -> bool:
        return all(not x for x in self.c)

    def nonzero_indices(self) -> list:
        return [i for i, x in enumerate(self.c) if x]


def _balance_equations(sys: WeightedSystem, ring) -> list:
    """E_i = f_i^A(c) + p_i c_i as polynomials over the balance ring."""
    values = {v: Poly.var(ring, ring[k]) for k, v in enumerate(sys.vars)}
    values["z"] = Poly.const(ring, 0)
    return [
        sys.fA[i].subs(values, ring=ring) + sys.weight.p[i] * Poly.var(ring, ring[i])
        for i in range(sys.m)
    ]


def verify_balance(sys: WeightedSystem, c) -> tuple:
    """Exact substitution check; returns (valid, residual vector).

    On success the pole ansatz x_i(z) = c_i (z - z0)^(-p_i) is additionally
    confirmed to solve the truncated system symbolically in the Laurent
    variable T = z - z0.
    """
    c = tuple(Fraction(x) if isinstance(x, int) else x for x in c)
    if len(c) != sys.m:
        raise ValueError("balance vector has wrong length")
    vals = {v: c[k] for k, v in enumerate(sys.vars)}
    vals["z"] = Fraction(0)
    residual = [sys.fA[i].eval(vals) + sys.weight.p[i] * c[i] for i in range(sys.m)]
    if any(residual):
        return False, residual

    tring = ("T",)
    tvals = {
        v: Poly.monomial(tring, (-sys.weight.p[k],), 1) * c[k]
        for k, v in enumerate(sys.vars)
    }
    tvals["z"] = Poly.const(tring, 0)
    for i in range(sys.m):
        rhs = sys.fA[i].subs(tvals, ring=tring)
        lhs = Poly.monomial(tring, (-sys.weight.p[i] - 1,), 1) * (-sys.weight.p[i] * c[i])
        if rhs != lhs:
            return False, [rhs - lhs]
    return True, residual


def _det_poly(rows: list) -> Poly:
    """Determinant of a small matrix of Polys by Laplace expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    ring = rows[0][0].vars
    out = Poly(ring)
    for j in range(n):
        piv = rows[0][j]
        if not piv:
            continue
        minor = [[rows[i][k] for k in range(n) if k != j] for i in range(1, n)]
        term = piv * _det_poly(minor)
        out = out + (term if j % 2 == 0 else -term)
    return out


def _poly_in_second(p: Poly) -> list:
    """Coefficients of a Poly in vars (a, b) as Polys in a, by powers of b."""
    ring = p.vars
    deg = max((e[1] for e in p.terms), default=0)
    out = [Poly((ring[0],)) for _ in range(deg + 1)]
    for (ea, eb), c in p.terms.items():
        out[eb] = out[eb] + Poly.monomial((ring[0],), (ea,), c)
    return out


def _resultant_second(p: Poly, q: Poly) -> Poly:
    """Resultant of p, q (ring (a, b)) with respect to b: a Poly in a."""
    pc = _poly_in_second(p)
    qc = _poly_in_second(q)
    dp, dq = len(pc) - 1, len(qc) - 1
    ring = (p.vars[0],)
    n = dp + dq
    rows = []
    for k in range(dq):
        row = [Poly(ring)] * n
        for i, c in enumerate(pc):
            row[k + dp - i] = c
        rows.append(row)
    for k in range(dp):
        row = [Poly(ring)] * n
        for i, c in enumerate(qc):
            row[k + dq - i] = c
        rows.append(row)
    return _det_poly(rows)


def _rational_roots(p: Poly) -> list:
    from .roots import extract_roots

    if p.degree() in (None, 0):
        return []
    return [r for r, _ in extract_roots(p).exact_roots]


def _find_exact_m1(sys: WeightedSystem) -> list:
    ring = ("c1",)
    eq = _balance_equations(sys, ring)[0]
    return [(r,) for r in _rational_roots(eq)]


def _find_exact_m2(sys: WeightedSystem):
    """Resultant elimination for two-dimensional systems.

    Returns (balances, complete) where complete=False means the elimination
    degenerated (a positive-dimensional balance set).
    """
    ring = ("c1", "c2")
    e1, e2 = _balance_equations(sys, ring)
    if not e1 or not e2:
        return [], False
    d1 = max((e[1] for e in e1.terms), default=0)
    d2 = max((e[1] for e in e2.terms), default=0)
    if d1 == 0 and d2 == 0:
        # neither equation constrains c2: positive-dimensional balance set
        return [], False
    res = _resultant_second(e1, e2) if d1 and d2 else None
    if res is not None and not res:
        return [], False
    if res is not None:
        c1_vals = _rational_roots(res)
    else:
        # one equation free of c2: its c1-roots feed the other equation
        free = e1 if d1 == 0 else e2
        c1_only = Poly(("c1",))
        for (ea, _eb), c in free.terms.items():
            c1_only = c1_only + Poly.monomial(("c1",), (ea,), c)
        c1_vals = _rational_roots(c1_only)
    c1_vals = sorted(set(c1_vals) | {Fraction(0)})
    out = []
    for a in c1_vals:
        sub = {"c1": a, "c2": Poly.var(("c2",), "c2")}
        cands: set = set()
        for eq in (e1, e2):
            u = eq.subs(sub, ring=("c2",))
            if u.degree() not in (None, 0):
                cands.update(_rational_roots(u) + [Fraction(0)])
            elif u:
                cands = set()
                break
        for b in sorted(cands):
            out.append((a, b))
    return out, True


def _newton_probe(sys: WeightedSystem, starts: int, iters: int, seed: int) -> list:
    import numpy as np

    rng = random.Random(seed)
    ring = tuple(f"c{i+1}" for i in range(sys.m))
    eqs = _balance_equations(sys, ring)
    jac = [[e.diff(v) for v in ring] for e in eqs]
    roots = []
    for _ in range(starts):
        x = np.array(
            [complex(rng.uniform(-2, 2), rng.uniform(-2, 2)) for _ in range(sys.m)]
        )
        ok = False
        for _ in range(iters):
            vals = {v: x[k] for k, v in enumerate(ring)}
            fv = np.array([e.eval_numeric(vals) for e in eqs])
            if np.max(np.abs(fv)) < 1e-12:
                ok = True
                break
            try:
                step = np.linalg.solve(
                    np.array([[jac[i][k].eval_numeric(vals) for k in range(sys.m)] for i in range(sys.m)]),
                    fv,
                )
            except np.linalg.LinAlgError:
                break
            x = x - step
            if not np.all(np.isfinite(x)):
                break
        if ok:
            roots.append(tuple(complex(v) for v in x))
    return roots


def _rationalize(z: complex, den_cap: int = DEN_CAP):
    if abs(z.imag) > 1e-9 * max(1.0, abs(z.real)):
        return None
    q = Fraction(z.real).limit_denominator(den_cap)
    if abs(float(q) - z.real) > 1e-9 * max(1.0, abs(z.real)):
        return None
    return q


def find_balances(
    sys: WeightedSystem,
    starts: int = 120,
    iters: int = 60,
    seed: int = 0,
) -> tuple:
    """All nonzero balances found exactly, plus unrationalizable numeric ones.

    Returns (balances, numeric_only) with deterministic ordering.
    """
    exact: list = []

    hier = _hierarchy_closed_form(sys)
    if hier is not None:
        exact.extend(hier)
    elif sys.m == 1:
        exact.extend(_find_exact_m1(sys))
    elif sys.m == 2:
        found, complete = _find_exact_m2(sys)
        exact.extend(found)
        if not complete:
            pass  # degenerate: fall through to the probe below

    numeric_only: list = []
    need_probe = hier is None and (sys.m > 2 or not exact)
    if need_probe:
        for root in _newton_probe(sys, starts, iters, seed):
            rat = tuple(_rationalize(z) for z in root)
            if any(q is None for q in rat):
                if max(abs(z) for z in root) > 1e-9:
                    numeric_only.append(root)
                continue
            exact.append(rat)

    seen = set()
    balances = []
    for c in exact:
        c = tuple(Fraction(x) for x in c)
        if all(x == 0 for x in c) or c in seen:
            continue
        ok, _ = verify_balance(sys, c)
        if not ok:
            continue
        seen.add(c)
        j = next(i for i, x in enumerate(c) if x)
        balances.append(Balance(c, j))
    balances.sort(key=lambda b: b.c)
    for n, b in enumerate(balances):
        b.label = f"balance-{n + 1}"
        b.multiplicity_hint = isolation_test(sys, b)
    dedup_numeric = []
    for root in numeric_only:
        key = tuple((round(z.real, 6), round(z.imag, 6)) for z in root)
        if key not in {tuple((round(z.real, 6), round(z.imag, 6)) for z in r) for r in dedup_numeric}:
            dedup_numeric.append(root)
    return balances, dedup_numeric


def isolation_test(sys: WeightedSystem, b: Balance) -> str:
    """A balance is non-isolated iff 0 is one of its Kovalevskaya exponents."""
    from .kovalevskaya import kov_matrix

    data = kov_matrix(sys, b)
    if any(r == 0 for r, _ in data.exponents.exact_roots):
        return "non-isolated"
    if any(abs(z) < 1e-9 for z, _ in data.exponents.numeric_roots):
        return "non-isolated"
    return "isolated"


def _hierarchy_closed_form(sys: WeightedSystem):
    """Closed-form balances when the system is a recognized (P_I)_m member."""
    from .hierarchy import generate, hierarchy_balances, M_CAP

    if sys.m % 2 != 0:
        return None
    m = sys.m // 2
    if not (1 <= m <= M_CAP):
        return None
    if tuple(sys.weight.p) != tuple(range(2, 2 * m + 2)):
        return None
    try:
        inst = generate(m)
    except Exception:
        return None
    ref = inst.system
    rename = dict(zip(sys.vars, ref.vars))
    for i in range(sys.m):
        fi = sys.f[i].rename({**rename, "z": "z"})
        gi = sys.g[i].rename({**rename, "z": "z"})
        if fi != ref.f[i] or gi != ref.g[i]:
            return None
    return [tuple(c) for c in hierarchy_balances(m)]
