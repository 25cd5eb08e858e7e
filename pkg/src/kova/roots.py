"""Root extraction for univariate polynomials over Q.

Rational roots are found exactly (rational-root theorem after clearing
denominators, multiplicities by repeated exact division); the remaining
factor is handed to a Durand-Kerner simultaneous iteration.  Numeric roots
are certified against |p(root)| <= 1e-10 * max |coefficient| of the input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .poly import Poly

DK_MAX_ITER = 200
DK_STEP_TOL = 1e-14
CLUSTER_TOL = 1e-8
RESIDUAL_TOL = 1e-10


@dataclass
class RootSet:
    exact_roots: list  # [(Fraction, multiplicity)]
    residual: Poly  # univariate factor with no rational roots
    numeric_roots: list = field(default_factory=list)  # [(complex, multiplicity)]

    def all_numeric(self) -> list:
        out = [(complex(r), m) for r, m in self.exact_roots]
        out.extend(self.numeric_roots)
        return out

    def multiset(self) -> list:
        """Exact roots with multiplicity, flattened and sorted (rationals only)."""
        out = []
        for r, m in self.exact_roots:
            out.extend([r] * m)
        return sorted(out)

    def is_fully_rational(self) -> bool:
        return self.residual.degree() in (None, 0)

    def count(self) -> int:
        deg = self.residual.degree()
        return sum(m for _, m in self.exact_roots) + (deg or 0)


def _divisors(n: int) -> list:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _synth_div(coeffs: list, r: Fraction):
    """Divide by (x - r); returns (quotient coeffs, remainder)."""
    out = [coeffs[-1]]
    for c in reversed(coeffs[:-1]):
        out.append(c + out[-1] * r)
    out.reverse()
    return out[1:], out[0]


def durand_kerner(coeffs: list, max_iter: int = DK_MAX_ITER, tol: float = DK_STEP_TOL):
    """All complex roots of a polynomial given by float coefficient list
    [c0, c1, ..., cn] (cn != 0), by simultaneous iteration."""
    n = len(coeffs) - 1
    if n < 1:
        return []
    lead = coeffs[-1]
    monic = [complex(c) / lead for c in coeffs]

    def p(x):
        acc = 0j
        for c in reversed(monic):
            acc = acc * x + c
        return acc

    radius = 1.0 + max(abs(c) for c in monic[:-1])
    seed = complex(0.4, 0.9)
    roots = [0.9 * radius * seed**k / abs(seed**k) for k in range(1, n + 1)]
    for _ in range(max_iter):
        step = 0.0
        new = list(roots)
        for i in range(n):
            denom = 1.0 + 0j
            for j in range(n):
                if j != i:
                    denom *= roots[i] - roots[j]
            if denom == 0:
                roots[i] += 1e-6 * (1 + 1j)
                denom = 1e-12
            delta = p(roots[i]) / denom
            new[i] = roots[i] - delta
            step = max(step, abs(delta))
        roots = new
        if step < tol:
            break
    return roots


def _cluster(points: list, tol: float = CLUSTER_TOL):
    """Greedy clustering into (centroid, multiplicity) pairs."""
    clusters: list[list[complex]] = []
    for z in points:
        for cl in clusters:
            c = sum(cl) / len(cl)
            if abs(z - c) <= tol * max(1.0, abs(c)):
                cl.append(z)
                break
        else:
            clusters.append([z])
    out = [(sum(cl) / len(cl), len(cl)) for cl in clusters]
    out.sort(key=lambda rm: (round(rm[0].real, 9), round(rm[0].imag, 9)))
    return out


def extract_roots(p: Poly) -> RootSet:
    """Complete root data of a univariate polynomial over Q."""
    deg = p.degree()
    if deg is None:
        raise ValueError("zero polynomial has no roots")
    if deg < 1:
        raise ValueError("constant polynomial")
    for c in p.terms.values():
        if not isinstance(c, Fraction):
            raise TypeError("extract_roots needs rational coefficients")
    var = p.vars[0]
    coeffs = p.univariate_coeffs()
    maxabs = max(abs(float(c)) for c in coeffs)

    # clear denominators and content
    den = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * den) for c in coeffs]
    g = math.gcd(*(abs(c) for c in ints if c)) or 1
    ints = [c // g for c in ints]

    exact = []
    # root 0
    k = 0
    while ints[0] == 0 and len(ints) > 1:
        ints = ints[1:]
        k += 1
    if k:
        exact.append((Fraction(0), k))

    work = [Fraction(c) for c in ints]
    if len(work) > 1:
        cands = sorted(
            {
                Fraction(s * pn, qn)
                for pn in _divisors(ints[0])
                for qn in _divisors(ints[-1])
                for s in (1, -1)
            }
        )
        for r in cands:
            mult = 0
            while len(work) > 1:
                q, rem = _synth_div(work, r)
                if rem != 0:
                    break
                work = q
                mult += 1
            if mult:
                exact.append((r, mult))
    exact.sort(key=lambda rm: rm[0])

    residual = Poly((var,))
    for i, c in enumerate(work):
        if c:
            residual = residual + Poly.monomial((var,), (i,), c)
    if not residual:
        residual = Poly.const((var,), work[-1] if work else 1)

    numeric = []
    if (residual.degree() or 0) >= 1:
        raw = durand_kerner([float(c) for c in work])
        numeric = _cluster(raw)
        for z, _ in numeric:
            val = abs(p.eval_numeric({var: z}))
            if val > RESIDUAL_TOL * max(maxabs, 1.0):
                raise ArithmeticError(
                    f"numeric root {z} fails residual bound: |p| = {val:.3e}"
                )
    return RootSet(exact, residual, numeric)
