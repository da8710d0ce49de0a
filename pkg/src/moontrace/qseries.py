"""Exact truncated q-series over the rationals.

Series live on an exponent lattice (1/D)*Z for a positive integer denominator
D, with Fraction coefficients and an explicit rational truncation order: terms
with exponent >= order are unknown, not zero.  All operations propagate a sound
order bound, so a result never claims coefficients it cannot know.

Two series types share the arithmetic core:

* RationalSeries -- plain Fraction coefficients.
* MarkerSeries   -- coefficients are polynomials in a bookkeeping marker x
  (used to grade traces by particle count); evaluation at x = +1/-1 returns a
  RationalSeries.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

__all__ = [
    "TruncationError",
    "MarkerPoly",
    "RationalSeries",
    "MarkerSeries",
]


class TruncationError(ValueError):
    """A computation needs coefficients beyond the known truncation order."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"expected a rational value, got {type(x).__name__}")


class MarkerPoly:
    """Polynomial in the marker variable x with Fraction coefficients.

    Immutable; `coeffs[d]` is the coefficient of x^d, trailing zeros stripped.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        cs = [_as_fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c) -> "MarkerPoly":
        return cls((c,))

    @classmethod
    def x_power(cls, d: int, c=1) -> "MarkerPoly":
        return cls((0,) * d + (_as_fraction(c),))

    @property
    def degree(self) -> int:
        # degree of the zero polynomial is -1 by convention
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, MarkerPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == MarkerPoly.const(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self) -> "MarkerPoly":
        return MarkerPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other) -> "MarkerPoly":
        if isinstance(other, (int, Fraction)):
            other = MarkerPoly.const(other)
        elif not isinstance(other, MarkerPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return MarkerPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> "MarkerPoly":
        return self + (-other if isinstance(other, MarkerPoly) else MarkerPoly.const(-_as_fraction(other)))

    def __mul__(self, other) -> "MarkerPoly":
        if isinstance(other, (int, Fraction)):
            return MarkerPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, MarkerPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return MarkerPoly(())
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return MarkerPoly(out)

    __rmul__ = __mul__

    def eval(self, x0) -> Fraction:
        x0 = _as_fraction(x0)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x0 + c
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "MarkerPoly(0)"
        parts = []
        for d, c in enumerate(self.coeffs):
            if not c:
                continue
            if d == 0:
                parts.append(str(c))
            elif d == 1:
                parts.append(f"{c}*x")
            else:
                parts.append(f"{c}*x^{d}")
        return "MarkerPoly(" + " + ".join(parts) + ")"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class _SeriesBase:
    """Shared arithmetic for truncated series; coefficient type set by subclass."""

    __slots__ = ("denom", "terms", "order")

    # subclass hooks -------------------------------------------------------
    @staticmethod
    def _wrap(c):
        raise NotImplementedError

    @staticmethod
    def _recip(c):
        raise NotImplementedError

    def __init__(self, denom, terms, order, _raw=False):
        # internal: terms is dict[int scaled exponent -> coeff]
        order = _as_fraction(order)
        if _raw:
            d, t = denom, terms
        else:
            d, t = self._normalize(denom, terms, order)
        self.denom = d
        self.terms = t
        self.order = order

    @classmethod
    def _normalize(cls, denom, terms, order):
        if denom <= 0:
            raise ValueError("denominator must be positive")
        t = {e: c for e, c in terms.items() if c and Fraction(e, denom) < order}
        if not t:
            return 1, {}
        g = denom
        for e in t:
            g = gcd(g, e)
            if g == 1:
                break
        if g > 1:
            t = {e // g: c for e, c in t.items()}
            denom //= g
        return denom, t

    @classmethod
    def _make(cls, denom, terms, order):
        d, t = cls._normalize(denom, terms, order)
        obj = cls.__new__(cls)
        obj.denom = d
        obj.terms = t
        obj.order = _as_fraction(order)
        return obj

    # constructors ---------------------------------------------------------
    @classmethod
    def from_terms(cls, terms, order):
        """Build from {exponent: coefficient}; exponents rational."""
        items = terms.items() if hasattr(terms, "items") else terms
        pairs = [(_as_fraction(e), cls._wrap(c)) for e, c in items]
        denom = 1
        for e, _ in pairs:
            denom = _lcm(denom, e.denominator)
        scaled = {}
        for e, c in pairs:
            k = int(e * denom)
            scaled[k] = scaled.get(k, cls._wrap(0)) + c
        return cls._make(denom, scaled, order)

    @classmethod
    def zero(cls, order):
        return cls._make(1, {}, order)

    @classmethod
    def one(cls, order):
        return cls.monomial(1, 0, order)

    @classmethod
    def monomial(cls, coeff, exponent, order):
        return cls.from_terms([(exponent, coeff)], order)

    # queries ----------------------------------------------------------------
    def valuation(self) -> Fraction:
        """Smallest exponent with a nonzero coefficient; `order` if none known."""
        if not self.terms:
            return self.order
        return Fraction(min(self.terms), self.denom)

    def coeff(self, exponent):
        """Coefficient at a rational exponent; TruncationError beyond order."""
        e = _as_fraction(exponent)
        if e >= self.order:
            raise TruncationError(f"coefficient at q^{e} is beyond order {self.order}")
        scaled = e * self.denom
        if scaled.denominator != 1:
            return self._wrap(0)
        return self.terms.get(int(scaled), self._wrap(0))

    def support(self):
        """Sorted list of exponents carrying nonzero coefficients."""
        return sorted(Fraction(e, self.denom) for e in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    # alignment --------------------------------------------------------------
    def _aligned(self, other):
        d = _lcm(self.denom, other.denom)
        fa, fb = d // self.denom, d // other.denom
        ta = self.terms if fa == 1 else {e * fa: c for e, c in self.terms.items()}
        tb = other.terms if fb == 1 else {e * fb: c for e, c in other.terms.items()}
        return d, ta, tb

    # arithmetic ---------------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.monomial(other, 0, self.order)
        if type(other) is not type(self):
            return NotImplemented
        d, ta, tb = self._aligned(other)
        out = dict(ta)
        for e, c in tb.items():
            out[e] = out.get(e, self._wrap(0)) + c
        return self._make(d, out, min(self.order, other.order))

    __radd__ = __add__

    def __neg__(self):
        return self._make(self.denom, {e: -c for e, c in self.terms.items()}, self.order)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.monomial(other, 0, self.order)
        if type(other) is not type(self):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def _cmul(self, c):
        """Scale every coefficient by c (a coefficient-type or rational value)."""
        if not c:
            return self._make(1, {}, self.order)
        return self._make(self.denom, {e: v * c for e, v in self.terms.items()}, self.order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._cmul(_as_fraction(other))
        if type(other) is not type(self):
            return NotImplemented
        # sound order: each factor's unknown tail enters at order + other's valuation
        bound = min(self.order + other.valuation(), other.order + self.valuation())
        d, ta, tb = self._aligned(other)
        scaled_bound = bound * d
        out = {}
        zero = self._wrap(0)
        for e1, c1 in ta.items():
            for e2, c2 in tb.items():
                e = e1 + e2
                if e < scaled_bound:
                    out[e] = out.get(e, zero) + c1 * c2
        return self._make(d, out, bound)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._cmul(Fraction(1, 1) / _as_fraction(other))
        if type(other) is type(self):
            return self * other.invert()
        return NotImplemented

    def pow_int(self, n: int):
        """Integer power by repeated squaring; negative n inverts first."""
        if n < 0:
            return self.invert().pow_int(-n)
        if n == 0:
            return self.one(self.order)
        base = self
        result = None
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __pow__(self, n: int):
        return self.pow_int(n)

    def _shift(self, e: Fraction):
        """Multiply by q^e exactly (pure reindexing; no knowledge change)."""
        e = _as_fraction(e)
        d = _lcm(self.denom, e.denominator)
        f = d // self.denom
        k = int(e * d)
        return self._make(d, {x * f + k: c for x, c in self.terms.items()}, self.order + e)

    def invert(self):
        """Multiplicative inverse.

        Requires a nonzero leading term with an invertible coefficient.  For a
        series of valuation v and order o the inverse is sound through o - 2v.
        """
        if not self.terms:
            raise TruncationError("cannot invert a series with no known nonzero term")
        v = self.valuation()
        lead = self.terms[int(v * self.denom)]
        recip = self._recip(lead)
        # b = 1 + u with val(u) > 0, known through order - v
        b = self._shift(-v)._cmul(recip)
        target = b.order
        zero_key_denom = b.terms.copy()
        zero_key_denom.pop(0, None)
        u = self._make(b.denom, zero_key_denom, target)
        acc = self.one(target)
        t = self.one(target)
        while True:
            t = (t * (-u)).truncate(target)
            if not t.terms:
                break
            acc = acc + t
        return acc._shift(-v)._cmul(recip)

    def exp_series(self):
        """exp of a series with positive valuation (order preserved)."""
        if self.terms and self.valuation() <= 0:
            raise ValueError("exp_series requires positive valuation")
        target = self.order
        if target <= 0:
            raise TruncationError("exp_series needs a positive truncation order")
        acc = self.one(target)
        t = self.one(target)
        k = 0
        while True:
            k += 1
            t = (t * self).truncate(target)._cmul(Fraction(1, k))
            if not t.terms:
                break
            acc = acc + t
        return acc

    def q_derive(self):
        """Apply q * d/dq (each term scales by its exponent)."""
        out = {e: c * Fraction(e, self.denom) for e, c in self.terms.items() if e}
        return self._make(self.denom, out, self.order)

    def rescale(self, r):
        """Substitute q -> q^r for rational r > 0 (a ring map; order scales)."""
        r = _as_fraction(r)
        if r <= 0:
            raise ValueError("rescale factor must be positive")
        d = self.denom * r.denominator
        out = {e * r.numerator: c for e, c in self.terms.items()}
        return self._make(d, out, self.order * r)

    def truncate(self, order):
        """Weaken the truncation order (never claims new knowledge)."""
        order = min(self.order, _as_fraction(order))
        return self._make(self.denom, self.terms, order)

    # comparison -----------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.monomial(other, 0, self.order)
        if type(other) is not type(self):
            return NotImplemented
        bound = min(self.order, other.order)
        d, ta, tb = self._aligned(other)
        sb = bound * d
        ka = {e: c for e, c in ta.items() if e < sb}
        kb = {e: c for e, c in tb.items() if e < sb}
        return ka == kb

    __hash__ = None

    def __repr__(self):
        name = type(self).__name__
        parts = []
        for e in sorted(self.terms)[:8]:
            parts.append(f"q^{Fraction(e, self.denom)}: {self.terms[e]}")
        more = ", ..." if len(self.terms) > 8 else ""
        return f"{name}({{{', '.join(parts)}{more}}}, order={self.order})"


class RationalSeries(_SeriesBase):
    """Truncated q-series with Fraction coefficients on a (1/D)Z exponent lattice."""

    __slots__ = ()

    @staticmethod
    def _wrap(c):
        return _as_fraction(c)

    @staticmethod
    def _recip(c):
        if not c:
            raise ZeroDivisionError("zero leading coefficient")
        return Fraction(1, 1) / c

    def __str__(self):
        if not self.terms:
            return f"0 + O(q^{self.order})"
        parts = []
        for e in sorted(self.terms):
            c = self.terms[e]
            exp = Fraction(e, self.denom)
            if exp == 0:
                parts.append(f"{c}")
            elif exp == 1:
                parts.append(f"{c}*q")
            else:
                parts.append(f"{c}*q^({exp})")
        return " + ".join(parts) + f" + O(q^{self.order})"

    # canonical JSON interchange -------------------------------------------
    def to_json_obj(self) -> dict:
        d = _lcm(self.denom, self.order.denominator)
        f = d // self.denom
        terms = [
            {"exp_num": e * f, "coeff": str(self.terms[e])}
            for e in sorted(self.terms)
        ]
        return {"denominator": d, "order_num": int(self.order * d), "terms": terms}

    @classmethod
    def from_json_obj(cls, obj) -> "RationalSeries":
        d = int(obj["denominator"])
        if d <= 0:
            raise ValueError("denominator must be positive")
        order = Fraction(int(obj["order_num"]), d)
        terms = {int(t["exp_num"]): Fraction(t["coeff"]) for t in obj["terms"]}
        return cls._make(d, terms, order)


class MarkerSeries(_SeriesBase):
    """Truncated q-series whose coefficients are MarkerPoly values in x."""

    __slots__ = ()

    @staticmethod
    def _wrap(c):
        if isinstance(c, MarkerPoly):
            return c
        return MarkerPoly.const(_as_fraction(c))

    @staticmethod
    def _recip(c):
        if c.degree == 0:
            return MarkerPoly.const(Fraction(1, 1) / c.coeffs[0])
        raise ValueError("cannot invert a marker-dependent leading coefficient")

    @classmethod
    def from_rational(cls, series: RationalSeries) -> "MarkerSeries":
        terms = {e: MarkerPoly.const(c) for e, c in series.terms.items()}
        return cls._make(series.denom, terms, series.order)

    def marker_bound(self) -> int:
        """Largest marker degree appearing in any known coefficient."""
        return max((c.degree for c in self.terms.values()), default=-1)

    def eval_marker(self, x0) -> RationalSeries:
        """Evaluate the marker at x0 in {+1, -1}, collapsing to a RationalSeries."""
        x0 = _as_fraction(x0)
        if x0 not in (1, -1):
            raise ValueError("marker evaluation is only supported at +1 and -1")
        out = {e: c.eval(x0) for e, c in self.terms.items()}
        return RationalSeries._make(self.denom, out, self.order)
