"""Exact polynomial arithmetic with precision-tracked complex evaluation.

Polynomials carry arbitrary-precision integer coefficients; the instances
this library targets reach coefficients near 10^27 and degree 93, far past
what doubles or 64-bit integers can hold exactly.  Rounding enters only
when a polynomial is evaluated at a :class:`ComplexPoint`, which records
the working precision (in bits) of its arithmetic.
"""

from __future__ import annotations

from math import comb

from mpmath import mp, mpc, mpf

MIN_PRECISION = 53


class ComplexPoint:
    """A complex value pinned to an explicit binary working precision.

    Arithmetic between two points runs at the larger of their precisions
    and the result keeps that precision.  Strings and wide integers are
    rounded to the requested precision on construction; floats and mpf
    values are exact already.
    """

    __slots__ = ("re", "im", "precision")

    def __init__(self, re=0, im=0, precision=MIN_PRECISION):
        precision = int(precision)
        if precision < MIN_PRECISION:
            raise ValueError("precision must be at least %d bits" % MIN_PRECISION)
        with mp.workprec(precision):
            self.re = mpf(re)
            self.im = mpf(im)
        self.precision = precision

    @classmethod
    def from_mpc(cls, z, precision):
        # conversion happens in __init__ under workprec(precision); converting
        # here would round through the ambient (possibly lower) precision
        return cls(z.real, z.imag, precision)

    def to_mpc(self):
        return mpc(self.re, self.im)

    @property
    def is_zero(self):
        return self.re == 0 and self.im == 0

    def conjugate(self):
        return ComplexPoint(self.re, -self.im, self.precision)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def _promote(self, other):
        other = as_complex_point(other, self.precision)
        return other, max(self.precision, other.precision)

    def __add__(self, other):
        other, prec = self._promote(other)
        with mp.workprec(prec):
            return ComplexPoint(self.re + other.re, self.im + other.im, prec)

    __radd__ = __add__

    def __neg__(self):
        return ComplexPoint(-self.re, -self.im, self.precision)

    def __sub__(self, other):
        other, prec = self._promote(other)
        with mp.workprec(prec):
            return ComplexPoint(self.re - other.re, self.im - other.im, prec)

    def __rsub__(self, other):
        other, prec = self._promote(other)
        with mp.workprec(prec):
            return ComplexPoint(other.re - self.re, other.im - self.im, prec)

    def __mul__(self, other):
        other, prec = self._promote(other)
        with mp.workprec(prec):
            z = self.to_mpc() * other.to_mpc()
        return ComplexPoint.from_mpc(z, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other, prec = self._promote(other)
        with mp.workprec(prec):
            z = self.to_mpc() / other.to_mpc()
        return ComplexPoint.from_mpc(z, prec)

    def __rtruediv__(self, other):
        other, prec = self._promote(other)
        with mp.workprec(prec):
            z = other.to_mpc() / self.to_mpc()
        return ComplexPoint.from_mpc(z, prec)

    def __pow__(self, exponent):
        if not isinstance(exponent, int) or exponent < 0:
            raise TypeError("only nonnegative integer powers are supported")
        with mp.workprec(self.precision):
            z = self.to_mpc() ** exponent
        return ComplexPoint.from_mpc(z, self.precision)

    def __abs__(self):
        with mp.workprec(self.precision):
            return abs(self.to_mpc())

    def __eq__(self, other):
        try:
            other = as_complex_point(other, self.precision)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return "ComplexPoint(%s, %s, precision=%d)" % (
            mp.nstr(self.re, 15), mp.nstr(self.im, 15), self.precision)


def as_complex_point(value, precision=MIN_PRECISION):
    """Coerce numbers, strings, mpf/mpc, or complex into a ComplexPoint."""
    if isinstance(value, ComplexPoint):
        return value
    if isinstance(value, (complex, mpc)):
        return ComplexPoint(value.real, value.imag, precision)
    if isinstance(value, (int, float, str, mpf)):
        return ComplexPoint(value, 0, precision)
    raise TypeError("cannot interpret %r as a complex point" % (value,))


class ExactUniPoly:
    """Univariate polynomial over the integers, stored densely.

    ``coeffs[k]`` is the coefficient of v^k.  The tuple is normalized: no
    stored leading zeros, so the zero polynomial has an empty tuple and
    degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = list(coeffs)
        for c in cs:
            if not isinstance(c, int):
                raise TypeError("coefficients must be exact integers, got %r" % (c,))
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def coefficient(self, k):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return 0

    def low_order_zeros(self):
        """Multiplicity of the root v = 0 (number of leading zero coefficients)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return k

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, ExactUniPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        if isinstance(other, int):
            other = ExactUniPoly([other])
        if not isinstance(other, ExactUniPoly):
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return ExactUniPoly([self.coefficient(k) + other.coefficient(k) for k in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return ExactUniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        if isinstance(other, int):
            other = ExactUniPoly([other])
        if not isinstance(other, ExactUniPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactUniPoly([c * other for c in self.coeffs])
        if not isinstance(other, ExactUniPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return ExactUniPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return ExactUniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise TypeError("only nonnegative integer powers are supported")
        result = ExactUniPoly([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shifted(self, k):
        """Multiply by v^k."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        if not self.coeffs:
            return self
        return ExactUniPoly((0,) * k + self.coeffs)

    def evaluate(self, z):
        """Horner evaluation at a ComplexPoint, at the point's precision."""
        z = as_complex_point(z)
        prec = z.precision
        with mp.workprec(prec):
            zc = z.to_mpc()
            acc = mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * zc + c
        return ComplexPoint.from_mpc(acc, prec)

    def to_json(self):
        return {"var": "v", "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls([int(c) for c in data["coeffs"]])

    def __repr__(self):
        if not self.coeffs:
            return "ExactUniPoly(0)"
        parts = ["%d*v^%d" % (c, k) for k, c in enumerate(self.coeffs) if c]
        return "ExactUniPoly(%s)" % " + ".join(parts)


class ExactBiPoly:
    """Sparse bivariate polynomial in (a, b) over the integers.

    Stored as a map (deg_a, deg_b) -> coefficient with no explicit zeros.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        data = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for key, c in items:
            da, db = key
            if not (isinstance(da, int) and isinstance(db, int) and da >= 0 and db >= 0):
                raise TypeError("term degrees must be nonnegative integers")
            if not isinstance(c, int):
                raise TypeError("coefficients must be exact integers")
            if c:
                data[(da, db)] = data.get((da, db), 0) + c
                if not data[(da, db)]:
                    del data[(da, db)]
        self.terms = data

    @property
    def degree_a(self):
        return max((da for da, _ in self.terms), default=-1)

    @property
    def degree_b(self):
        return max((db for _, db in self.terms), default=-1)

    def coefficient(self, da, db):
        return self.terms.get((da, db), 0)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, ExactBiPoly) and self.terms == other.terms

    def __add__(self, other):
        if not isinstance(other, ExactBiPoly):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, 0) + c
        return ExactBiPoly(out)

    def __neg__(self):
        return ExactBiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, ExactBiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return ExactBiPoly({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, ExactBiPoly):
            return NotImplemented
        out = {}
        for (da, db), c in self.terms.items():
            for (ea, eb), d in other.terms.items():
                key = (da + ea, db + eb)
                out[key] = out.get(key, 0) + c * d
        return ExactBiPoly(out)

    __rmul__ = __mul__

    def coefficients_in_a(self, b0):
        """Collapse b at the numeric point b0: coefficients of a^k, low to high.

        Positions with no stored term come back as exact zeros, so a caller
        can deflate symbolic zero roots of the collapsed polynomial.
        """
        b0 = as_complex_point(b0)
        prec = b0.precision
        na = self.degree_a
        if na < 0:
            return []
        rows = [{} for _ in range(na + 1)]
        for (da, db), c in self.terms.items():
            rows[da][db] = c
        out = []
        with mp.workprec(prec):
            bc = b0.to_mpc()
            for row in rows:
                if not row:
                    out.append(ComplexPoint(0, 0, prec))
                    continue
                acc = mpc(0)
                for db in range(max(row), -1, -1):
                    acc = acc * bc + row.get(db, 0)
                out.append(ComplexPoint.from_mpc(acc, prec))
        return out

    def coefficients_in_b(self, a0):
        """Collapse a at the numeric point a0: coefficients of b^k, low to high."""
        return self.transposed().coefficients_in_a(a0)

    def transposed(self):
        """Swap the roles of a and b."""
        return ExactBiPoly({(db, da): c for (da, db), c in self.terms.items()})

    def evaluate(self, a0, b0):
        a0 = as_complex_point(a0)
        b0 = as_complex_point(b0)
        prec = max(a0.precision, b0.precision)
        coeffs = self.coefficients_in_a(ComplexPoint(b0.re, b0.im, prec))
        with mp.workprec(prec):
            ac = a0.to_mpc()
            acc = mpc(0)
            for c in reversed(coeffs):
                acc = acc * ac + c.to_mpc()
        return ComplexPoint.from_mpc(acc, prec)

    def to_json(self):
        triples = sorted(self.terms.items())
        return {"vars": ["a", "b"], "terms": [[da, db, str(c)] for (da, db), c in triples]}

    @classmethod
    def from_json(cls, data):
        return cls({(int(da), int(db)): int(c) for da, db, c in data["terms"]})

    def __repr__(self):
        if not self.terms:
            return "ExactBiPoly(0)"
        parts = ["%d*a^%d*b^%d" % (c, da, db) for (da, db), c in sorted(self.terms.items())]
        return "ExactBiPoly(%s)" % " + ".join(parts)


def shifted_power(p):
    """The polynomial (1+v)^p - 1 with exact binomial coefficients."""
    if not isinstance(p, int) or p < 0:
        raise ValueError("exponent must be a nonnegative integer")
    if p == 0:
        return ExactUniPoly()
    return ExactUniPoly([0] + [comb(p, k) for k in range(1, p + 1)])


def poly_add(p, q):
    return p + q


def poly_mul(p, q):
    return p * q


def eval_complex(p, z, w=None):
    """Evaluate a polynomial at complex point(s) at the points' precision.

    Univariate polynomials take one point; bivariate take z for a and w
    for b.
    """
    if isinstance(p, ExactUniPoly):
        return p.evaluate(z)
    if isinstance(p, ExactBiPoly):
        if w is None:
            raise ValueError("bivariate evaluation needs both a and b values")
        return p.evaluate(z, w)
    raise TypeError("expected ExactUniPoly or ExactBiPoly")


def bipoly_as_poly_in_a(p, b0):
    """Coefficients c_k(b0) of a^k after fixing b = b0, low to high."""
    if not isinstance(p, ExactBiPoly):
        raise TypeError("expected ExactBiPoly")
    return p.coefficients_in_a(b0)
