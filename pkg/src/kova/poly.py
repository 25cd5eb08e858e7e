"""Sparse multivariate polynomials with exact coefficients.

Terms map fixed-length exponent tuples to nonzero coefficients.  Coefficients
are Fractions or extension-field elements (kova.ext.Ext); the two mix freely.
Exponents are integers and may be negative (Laurent monomials), which the
blow-up and gluing machinery relies on.  Rings over different variable lists
are distinct: binary operations require identical variable tuples, and moving
between rings is an explicit embed/substitute.

Term order is graded lexicographic on the declared variable order; printing
and iteration are deterministic.
"""

from __future__ import annotations

from fractions import Fraction

from .ext import Ext


def _coerce_coeff(c):
    if isinstance(c, (Fraction, Ext)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _glex_key(exps):
    return (sum(exps), exps)


class Poly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: tuple, terms: dict | None = None):
        self.vars = tuple(vars)
        self.terms = {} if terms is None else terms

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(vars) -> "Poly":
        return Poly(vars)

    @staticmethod
    def const(vars, c) -> "Poly":
        c = _coerce_coeff(c)
        vars = tuple(vars)
        if not c:
            return Poly(vars)
        return Poly(vars, {(0,) * len(vars): c})

    @staticmethod
    def var(vars, name: str) -> "Poly":
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return Poly(vars, {tuple(e): Fraction(1)})

    @staticmethod
    def monomial(vars, exps, c=1) -> "Poly":
        c = _coerce_coeff(c)
        vars = tuple(vars)
        if not c:
            return Poly(vars)
        exps = tuple(int(e) for e in exps)
        if len(exps) != len(vars):
            raise ValueError("exponent vector length mismatch")
        return Poly(vars, {exps: c})

    # -- basic structure ----------------------------------------------------

    def _check(self, other: "Poly"):
        if self.vars != other.vars:
            raise ValueError(f"polynomial rings differ: {self.vars} vs {other.vars}")

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Ext)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        if self.vars != other.vars:
            return False
        return not (self - other)

    def __hash__(self):
        raise TypeError("Poly is unhashable")

    def copy(self) -> "Poly":
        return Poly(self.vars, dict(self.terms))

    def sorted_terms(self):
        """Terms in descending graded-lex order (deterministic)."""
        return sorted(self.terms.items(), key=lambda kv: _glex_key(kv[0]), reverse=True)

    def coeff_of(self, exps):
        return self.terms.get(tuple(exps), Fraction(0))

    def total_degree(self):
        if not self.terms:
            return None
        return max(sum(e) for e in self.terms)

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Ext)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e)
            s = c if s is None else s + c
            if s:
                terms[e] = s
            elif e in terms:
                del terms[e]
        return Poly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Ext)):
            other = Poly.const(self.vars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Ext)):
            c = _coerce_coeff(other)
            if not c:
                return Poly(self.vars)
            return Poly(self.vars, {e: v * c for e, v in self.terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                elif e in out:
                    del out[e]
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by an exact scalar or by a single-term (monomial) Poly."""
        if isinstance(other, (int, Fraction, Ext)):
            c = _coerce_coeff(other)
            return Poly(self.vars, {e: v / c for e, v in self.terms.items()})
        if isinstance(other, Poly):
            self._check(other)
            if len(other.terms) != 1:
                raise ValueError("Poly division only by monomials")
            (me, mc), = other.terms.items()
            return Poly(
                self.vars,
                {tuple(a - b for a, b in zip(e, me)): v / mc for e, v in self.terms.items()},
            )
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) == 1:
                return (Poly.const(self.vars, 1) / self) ** (-n)
            raise ValueError("negative power of a non-monomial")
        out = Poly.const(self.vars, 1)
        b = self
        while n:
            if n & 1:
                out = out * b
            b = b * b
            n >>= 1
        return out

    # -- calculus and evaluation --------------------------------------------

    def diff(self, name: str) -> "Poly":
        i = self.vars.index(name)
        out: dict = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = list(e)
            ne[i] = k - 1
            ne = tuple(ne)
            v = c * k
            s = out.get(ne)
            s = v if s is None else s + v
            if s:
                out[ne] = s
            elif ne in out:
                del out[ne]
        return Poly(self.vars, out)

    def subs(self, values: dict, ring=None) -> "Poly":
        """Substitute every variable; values are Polys over one target ring
        (or scalars).  Negative exponents require the value to be a monomial.
        """
        target = tuple(ring) if ring is not None else None
        if target is None:
            for v in values.values():
                if isinstance(v, Poly):
                    target = v.vars
                    break
        if target is None:
            raise ValueError("target ring unknown: pass ring= or a Poly value")
        vals = []
        for name in self.vars:
            if name not in values:
                raise KeyError(f"no substitution given for {name}")
            v = values[name]
            if not isinstance(v, Poly):
                v = Poly.const(target, v)
            elif v.vars != target:
                raise ValueError("substitution values live in different rings")
            vals.append(v)
        out = Poly(target)
        pow_cache: list[dict] = [dict() for _ in vals]

        def vpow(i, k):
            cache = pow_cache[i]
            if k not in cache:
                cache[k] = vals[i] ** k
            return cache[k]

        for e, c in self.terms.items():
            term = Poly.const(target, c)
            for i, k in enumerate(e):
                if k:
                    term = term * vpow(i, k)
            out = out + term
        return out

    def eval(self, values: dict):
        """Full evaluation with exact coefficient arithmetic."""
        out = None
        for e, c in self.terms.items():
            v = c
            for name, k in zip(self.vars, e):
                if k:
                    v = v * values[name] ** k
            out = v if out is None else out + v
        return Fraction(0) if out is None else out

    def eval_numeric(self, values: dict) -> complex:
        out = 0j
        for e, c in self.terms.items():
            v = c.numeric() if isinstance(c, Ext) else complex(c)
            for name, k in zip(self.vars, e):
                if k:
                    v = v * values[name] ** k
            out += v
        return out

    def map_coeffs(self, fn) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            v = fn(c)
            if v:
                out[e] = v
        return Poly(self.vars, out)

    # -- ring changes --------------------------------------------------------

    def embed(self, new_vars) -> "Poly":
        """Reinterpret in a ring whose variable list contains self.vars."""
        new_vars = tuple(new_vars)
        idx = [new_vars.index(v) for v in self.vars]
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(new_vars)
            for i, k in zip(idx, e):
                ne[i] = k
            out[tuple(ne)] = c
        return Poly(new_vars, out)

    def rename(self, mapping: dict) -> "Poly":
        return Poly(tuple(mapping.get(v, v) for v in self.vars), dict(self.terms))

    # -- degree bookkeeping ---------------------------------------------------

    def weighted_degrees(self, weights: dict):
        """Set of weighted degrees over all terms (weights keyed by name)."""
        w = [weights[v] for v in self.vars]
        return {sum(wi * ei for wi, ei in zip(w, e)) for e in self.terms}

    def weighted_degree(self, weights: dict):
        degs = self.weighted_degrees(weights)
        return max(degs) if degs else None

    def min_weighted_degree(self, weights: dict):
        degs = self.weighted_degrees(weights)
        return min(degs) if degs else None

    def filter_terms(self, pred) -> "Poly":
        return Poly(self.vars, {e: c for e, c in self.terms.items() if pred(e, c)})

    # -- univariate helpers ----------------------------------------------------

    def univariate_coeffs(self):
        """Dense coefficient list [c0, c1, ...] for a one-variable polynomial."""
        if len(self.vars) != 1:
            raise ValueError("not univariate")
        if any(e[0] < 0 for e in self.terms):
            raise ValueError("Laurent polynomial has no dense coefficient list")
        deg = max((e[0] for e in self.terms), default=0)
        out = [Fraction(0)] * (deg + 1)
        for e, c in self.terms.items():
            out[e[0]] = c
        return out

    def degree(self):
        if len(self.vars) != 1:
            raise ValueError("not univariate")
        return max((e[0] for e in self.terms), default=None)

    # -- display ---------------------------------------------------------------

    def __repr__(self):
        from .expr import poly_to_str

        return poly_to_str(self)
