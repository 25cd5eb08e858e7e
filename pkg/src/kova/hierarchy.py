"""The first Painleve hierarchy as a structured exact test corpus.

The 2m-th order member is generated from the operator recursion

    (d/dz) L_[j+1][x] = (d^3/dz^3 - 8 x d/dz - 4 x') L_j[x],   L_0[x] = 1,

computed in a differential-polynomial ring with symbols x^(0), x^(1), ...
and integrated term by term (antiderivative constants fixed to 0, verified
by differentiating back).  The member x'' = 6x^2 + z is L_2[x] = -4z and the
fourth-order member is L_3[x] = -4z, so the 2m-th order equation comes from
L_(m+1); the generator is indexed by m throughout.

Three independent routes to the Kovalevskaya exponents are provided: the
K-matrix spectrum, the closed-form integer lists, and the B_j rational
recursion derived from the expansion of L_(m+1) along the pole ansatz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .poly import Poly
from .system import WeightedSystem, WeightVector

M_CAP = 6


# ---------------------------------------------------------------------------
# differential-polynomial ring


def _dring(top: int) -> tuple:
    return tuple(f"d{i}" for i in range(top + 1))


def _derive(p: Poly) -> Poly:
    """Derivation d/dz: x^(i) -> x^(i+1)."""
    ring = p.vars
    out = Poly(ring)
    for exps, c in p.terms.items():
        for i, e in enumerate(exps):
            if not e:
                continue
            if i + 1 >= len(ring):
                raise ValueError("differential ring too small")
            ne = list(exps)
            ne[i] -= 1
            ne[i + 1] += 1
            out = out + Poly.monomial(ring, ne, c * e)
    return out


def _integrate(p: Poly) -> Poly:
    """Antiderivative of an exact derivative in the differential ring.

    Strips leading terms repeatedly: a term whose highest derivative x^(k)
    appears to the first power integrates to c/(e+1) * x^(k-1)^(e+1) * rest.
    Fails loudly on non-integrable input; the caller verifies by deriving.
    """
    ring = p.vars
    f = p.copy()
    g = Poly(ring)
    while f:
        k, exps, c = max(
            (max(i for i, e in enumerate(exps) if e), exps, c)
            for exps, c in f.terms.items()
        )
        if k == 0:
            raise ValueError("not an exact derivative: leading term has no x'")
        if exps[k] != 1:
            raise ValueError("not term-by-term integrable: repeated top derivative")
        ne = list(exps)
        ne[k] = 0
        ne[k - 1] += 1
        cand = Poly.monomial(ring, ne, c / ne[k - 1])
        g = g + cand
        f = f - _derive(cand)
    return g


@dataclass
class HierarchyInstance:
    m: int
    p_m: Poly  # P_m in the state variables x1..x(2m-1)
    system: WeightedSystem
    balances: list  # c(k) vectors for k = 1..m


def _lenard_chain(m: int) -> list:
    """L_0 .. L_(m+1) in the differential ring."""
    ring = _dring(2 * m + 1)
    x = Poly.var(ring, "d0")
    xp = Poly.var(ring, "d1")
    chain = [Poly.const(ring, 1)]
    for _ in range(m + 1):
        lj = chain[-1]
        dnext = _derive(_derive(_derive(lj))) - 8 * x * _derive(lj) - 4 * xp * lj
        nxt = _integrate(dnext)
        if _derive(nxt) != dnext:
            raise ArithmeticError("integration verification failed in operator recursion")
        chain.append(nxt)
    return chain


def generate(m: int) -> HierarchyInstance:
    """The 2m-dimensional first-order form of the 2m-th order member."""
    if not (1 <= m <= M_CAP):
        raise ValueError(f"hierarchy index must be in 1..{M_CAP}")
    chain = _lenard_chain(m)
    ring = chain[-1].vars
    # L_(m+1) = -4 (x^(2m) - P_m)
    p_m_diff = Poly.var(ring, f"d{2 * m}") + chain[-1] * Fraction(1, 4)
    for exps in p_m_diff.terms:
        top = max((i for i, e in enumerate(exps) if e), default=0)
        if top >= 2 * m - 1:
            raise ArithmeticError("P_m depends on a derivative it must not")
    state = tuple(f"x{i + 1}" for i in range(2 * m))
    sys_ring = state + ("z",)
    rename = {f"d{i}": f"x{i + 1}" for i in range(2 * m)}
    p_m = p_m_diff.rename(rename).embed(sys_ring)

    f = [Poly.var(sys_ring, state[i + 1]) for i in range(2 * m - 1)]
    f.append(p_m + Poly.var(sys_ring, "z"))
    g = [Poly(sys_ring) for _ in range(2 * m)]
    weight = WeightVector(tuple(range(2, 2 * m + 2)), 2 * m + 2, 2 * m + 3)
    system = WeightedSystem(f"p1-hierarchy:{m}", state, weight, f, g)
    return HierarchyInstance(m, p_m, system, hierarchy_balances(m))


def hierarchy_balances(m: int) -> list:
    """Closed-form leading coefficients c_j(k) = (-1)^(j+1) j! k(k+1)/2."""
    out = []
    for k in range(1, m + 1):
        b0 = Fraction(k * (k + 1), 2)
        out.append(
            tuple(
                Fraction((-1) ** (j + 1) * math.factorial(j)) * b0
                for j in range(1, 2 * m + 1)
            )
        )
    return out


# ---------------------------------------------------------------------------
# closed-form exponents


@dataclass
class ClosedFormExponents:
    m: int
    k: int
    lines: tuple  # the four arithmetic progressions

    @property
    def multiset(self) -> list:
        out = []
        for line in self.lines:
            out.extend(line)
        return sorted(out)


def closed_form_exponents(m: int, k: int) -> ClosedFormExponents:
    if not (1 <= k <= m):
        raise ValueError("need 1 <= k <= m")
    line1 = list(range(2, 2 * m - 2 * k + 1, 2))  # m - k entries
    line2 = list(range(2 * k + 3, 2 * m + 2, 2))  # m - k entries
    line3 = list(range(2 * m + 4, 2 * m + 2 * k + 3, 2))  # k entries
    line4 = [-(2 * i + 1) for i in range(k)]  # k entries
    assert len(line1) == len(line2) == m - k and len(line3) == len(line4) == k
    return ClosedFormExponents(m, k, (line1, line2, line3, line4))


# ---------------------------------------------------------------------------
# the B_j recursion route


class RatFun:
    """Rational function in one variable over Q, normalized by gcd."""

    def __init__(self, num: Poly, den: Poly | None = None):
        ring = num.vars
        if den is None:
            den = Poly.const(ring, 1)
        if not den:
            raise ZeroDivisionError("zero denominator")
        g = _poly_gcd(num, den)
        if g.degree() not in (None, 0):
            num = _poly_div(num, g)[0]
            den = _poly_div(den, g)[0]
        lead = den.terms.get((den.degree(),), None) if den else None
        if lead is not None:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num = num
        self.den = den

    def __add__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    def __mul__(self, other: "RatFun") -> "RatFun":
        return RatFun(self.num * other.num, self.den * other.den)

    def is_polynomial(self) -> bool:
        return self.den.degree() == 0

    def as_polynomial(self) -> Poly:
        if not self.is_polynomial():
            raise ValueError("denominator did not cancel")
        return self.num * (1 / self.den.constant_value())


def _poly_divmod(a: Poly, b: Poly):
    var = a.vars
    q = Poly(var)
    r = a
    db = b.degree()
    lead_b = b.terms[(db,)]
    while r and (r.degree() or 0) >= db and r.degree() is not None:
        dr = r.degree()
        if dr < db:
            break
        c = r.terms[(dr,)] / lead_b
        t = Poly.monomial(var, (dr - db,), c)
        q = q + t
        r = r - t * b
    return q, r


def _poly_div(a: Poly, b: Poly):
    return _poly_divmod(a, b)


def _poly_gcd(a: Poly, b: Poly) -> Poly:
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    if a:
        lead = a.terms[(a.degree(),)]
        a = a * (1 / lead)
    return a


def a_closed_form(j: int, k: int) -> Fraction:
    """A_j = (-1)^j 2^j (2j-1)!! (k+j)! / (j! (k-j)!) for j <= k, else 0."""
    if j == 0:
        return Fraction(1)
    if j > k:
        return Fraction(0)
    dfact = 1
    for t in range(1, 2 * j, 2):
        dfact *= t
    return Fraction(
        (-1) ** j * 2**j * dfact * math.factorial(k + j),
        math.factorial(j) * math.factorial(k - j),
    )


def a_by_recursion(k: int, top: int) -> list:
    """A_0..A_top from the product recursion, for cross-validation."""
    b0 = Fraction(k * (k + 1), 2)
    out = [Fraction(1)]
    for j in range(top):
        out.append(out[-1] * Fraction(4 * (2 * j + 1), j + 1) * (Fraction(j * (j + 1), 2) - b0))
    return out


def b_recursion(m: int, k: int) -> list:
    """B_1 .. B_(m+1) as rational functions of the exponent variable."""
    ring = ("lam",)
    lam = Poly.var(ring, "lam")
    b0 = Fraction(k * (k + 1), 2)

    def lin(c):
        return RatFun(lam - Poly.const(ring, c))

    bs = [RatFun(Poly.const(ring, -4 * b0))]  # B_1
    for j in range(1, m + 1):
        pj = lin(2 * j + 2 * k + 2) * lin(2 * j + 1) * lin(2 * j - 2 * k) * RatFun(
            Poly.const(ring, 1), lam - Poly.const(ring, 2 * j + 2)
        )
        qj = RatFun(
            (lam - Poly.const(ring, 4 * j + 2)) * Fraction(-4),
            lam - Poly.const(ring, 2 * j + 2),
        )
        aj = a_closed_form(j, k)
        bs.append(pj * bs[-1] + qj * RatFun(Poly.const(ring, b0 * aj)))
    return bs


@dataclass
class RecursionExponents:
    m: int
    k: int
    b_polynomial: Poly  # cleared B_(m+1)
    roots: list  # exact roots with multiplicity flattened


def recursion_exponents(m: int, k: int) -> RecursionExponents:
    from .roots import extract_roots

    if not (1 <= k <= m):
        raise ValueError("need 1 <= k <= m")
    top = a_by_recursion(k, m)
    for j in range(m + 1):
        if a_closed_form(j, k) != top[j]:
            raise ArithmeticError("A_j closed form disagrees with its recursion")
    bs = b_recursion(m, k)
    bm1 = bs[-1].as_polynomial()
    if bm1.degree() != 2 * m:
        raise ArithmeticError("B_(m+1) has unexpected degree")
    rs = extract_roots(bm1)
    if not rs.is_fully_rational():
        raise ArithmeticError("B_(m+1) has irrational roots")
    return RecursionExponents(m, k, bm1, rs.multiset())


def lemma_44_factor_holds(m: int, k: int) -> bool:
    """B_(k+1) is divisible by (lam - (2k+4)) ... (lam - (4k+2))."""
    bs = b_recursion(m, k)
    bk1 = bs[k] if k < len(bs) else None
    if bk1 is None or not bk1.is_polynomial():
        return False
    poly = bk1.as_polynomial()
    ring = poly.vars
    factor = Poly.const(ring, 1)
    for c in range(2 * k + 4, 4 * k + 3, 2):
        factor = factor * (Poly.var(ring, "lam") - Poly.const(ring, c))
    _, rem = _poly_divmod(poly, factor)
    return not rem


# ---------------------------------------------------------------------------
# cross validation


@dataclass
class CrossValidation:
    m: int
    per_k: list  # (k, multiset, routes_agree, reflection_ok)

    @property
    def all_ok(self) -> bool:
        return all(a and b for _, _, a, b in self.per_k)


def cross_validate(m: int) -> CrossValidation:
    """K-matrix, closed-form and recursion exponents must agree exactly."""
    from .kovalevskaya import kov_matrix
    from .balances import Balance

    inst = generate(m)
    rows = []
    for k in range(1, m + 1):
        c = inst.balances[k - 1]
        data = kov_matrix(inst.system, Balance(c, 0))
        if not data.exponents.is_fully_rational():
            raise ArithmeticError("hierarchy K-exponents must be rational")
        route_k = data.exponents.multiset()
        route_cf = [Fraction(x) for x in closed_form_exponents(m, k).multiset]
        route_rec = recursion_exponents(m, k).roots
        agree = route_k == route_cf == route_rec
        reflection = sorted(2 * m + 3 - x for x in route_k) == route_k
        rows.append((k, route_k, agree, reflection))
    return CrossValidation(m, rows)
