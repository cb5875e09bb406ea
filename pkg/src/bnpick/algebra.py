"""Scalar, polynomial, rational-function and small Hermitian-matrix arithmetic.

Two numeric backends coexist.  The exact backend carries Gaussian rationals
(complex numbers whose real and imaginary parts are arbitrary-precision
``Fraction`` values); all arithmetic on it is closed, associative and free of
rounding, so golden results compare by exact equality.  The float backend
carries ordinary ``complex`` / ``float`` values and is used for boundary-limit
extrapolation, kernel sampling and any data that is not rational to begin
with.  Mixing the two promotes to float.

Infinity is never a scalar here: extended values live at the parameter and
limit-estimate level of the higher modules.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import PoleError, SingularMatrixError

_FLOAT_TYPES = (float, complex, np.floating, np.complexfloating)

# Tolerances of the float lane (the exact lane never uses any).
CANCEL_TOL = 1e-8        # root clustering distance for float gcd
POLE_TOL = 1e-13         # |den(z)| below this scale counts as a pole
HERMITIAN_TOL = 1e-12    # relative Hermitian-symmetry slack
RCOND_MIN = 1e-14        # reciprocal condition number cutoff for inversion
TRIM_TOL = 1e-12         # relative size under which float coefficients vanish


class GaussianRational:
    """Exact complex scalar with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("GaussianRational is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def coerce(value) -> "GaussianRational":
        """Coerce an exact-compatible value; floats are rejected."""
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, (int, Fraction)):
            return GaussianRational(value)
        if isinstance(value, str):
            return GaussianRational(Fraction(value))
        raise TypeError(f"not an exact scalar: {value!r}")

    # -- queries ------------------------------------------------------
    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __float__(self) -> float:
        if self.im != 0:
            raise ValueError(f"{self!r} has a nonzero imaginary part")
        return float(self.re)

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __abs__(self) -> float:
        return abs(complex(self))

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return self.re * self.re + self.im * self.im

    # -- arithmetic ---------------------------------------------------
    def _binary(self, other, exact_op, float_op):
        if isinstance(other, (GaussianRational, int, Fraction)):
            return exact_op(GaussianRational.coerce(other))
        if isinstance(other, _FLOAT_TYPES):
            return float_op(complex(other))
        return NotImplemented

    def __add__(self, other):
        return self._binary(
            other,
            lambda o: GaussianRational(self.re + o.re, self.im + o.im),
            lambda o: complex(self) + o,
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        return self._binary(
            other,
            lambda o: GaussianRational(self.re - o.re, self.im - o.im),
            lambda o: complex(self) - o,
        )

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        return self._binary(
            other,
            lambda o: GaussianRational(
                self.re * o.re - self.im * o.im,
                self.re * o.im + self.im * o.re,
            ),
            lambda o: complex(self) * o,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        def exact(o):
            d = o.abs2()
            if d == 0:
                raise ZeroDivisionError("division by zero GaussianRational")
            return self * GaussianRational(o.re / d, -o.im / d)

        return self._binary(other, exact, lambda o: complex(self) / o)

    def __rtruediv__(self, other):
        d = self.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        inv = GaussianRational(self.re / d, -self.im / d)
        return inv * other

    def __eq__(self, other):
        if isinstance(other, (GaussianRational, int, Fraction)):
            o = GaussianRational.coerce(other)
            return self.re == o.re and self.im == o.im
        if isinstance(other, _FLOAT_TYPES):
            return complex(self) == complex(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


EXACT_ZERO = GaussianRational(0)
EXACT_ONE = GaussianRational(1)
EXACT_I = GaussianRational(0, 1)


def is_exact(value) -> bool:
    """True when ``value`` belongs to the exact backend."""
    return isinstance(value, (GaussianRational, int, Fraction))


def as_complex(value) -> complex:
    return complex(value) if isinstance(value, GaussianRational) else complex(value)


def scalar_from_json(value):
    """Parse a JSON number: int / 'p/q' stay exact, floats go to the float lane."""
    if isinstance(value, bool):
        raise TypeError("boolean is not a scalar")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, float):
        return value
    raise TypeError(f"cannot parse scalar from {value!r}")


def scalar_to_json(value):
    """Serialize an exact or float scalar: ints as ints, fractions as 'p/q'."""
    if isinstance(value, GaussianRational):
        if not value.is_real:
            raise TypeError("complex exact scalars have no JSON form")
        value = value.re
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if abs(value.imag) > 1e-9 * max(1.0, abs(value)):
            raise TypeError("complex float scalars have no JSON form")
        return float(value.real)
    return float(value)


class Polynomial:
    """Dense univariate polynomial with ascending coefficients.

    The zero polynomial has an empty coefficient list and degree ``-1``.
    A polynomial is either fully exact (GaussianRational coefficients) or
    fully float (complex); mixing promotes everything to complex.
    """

    __slots__ = ("coeffs", "exact")

    def __init__(self, coeffs=()):
        canon = []
        exact = True
        for c in coeffs:
            if is_exact(c):
                canon.append(GaussianRational.coerce(c))
            elif isinstance(c, str):
                canon.append(GaussianRational(Fraction(c)))
            elif isinstance(c, _FLOAT_TYPES):
                canon.append(complex(c))
                exact = False
            else:
                raise TypeError(f"bad coefficient {c!r}")
        if not exact:
            canon = [as_complex(c) for c in canon]
            scale = max((abs(c) for c in canon), default=0.0)
            canon = [0.0 if abs(c) <= TRIM_TOL * scale else c for c in canon]
        while canon and not canon[-1]:
            canon.pop()
        object.__setattr__(self, "coeffs", tuple(canon))
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------
    @staticmethod
    def zero(exact=True) -> "Polynomial":
        return Polynomial(())

    @staticmethod
    def one() -> "Polynomial":
        return Polynomial((1,))

    @staticmethod
    def x() -> "Polynomial":
        return Polynomial((0, 1))

    @staticmethod
    def constant(c) -> "Polynomial":
        return Polynomial((c,))

    @staticmethod
    def from_real_roots(roots, lead=1) -> "Polynomial":
        p = Polynomial.constant(lead)
        for r in roots:
            p = p * Polynomial((-r, 1))
        return p

    # -- queries ------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self):
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_real(self) -> bool:
        if self.exact:
            return all(c.is_real for c in self.coeffs)
        scale = max((abs(c) for c in self.coeffs), default=0.0)
        return all(abs(c.imag) <= TRIM_TOL * max(1.0, scale) for c in self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if self.is_zero:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            negative = (c.re < 0 if isinstance(c, GaussianRational) and c.is_real
                        else isinstance(c, (int, float)) and c < 0
                        or isinstance(c, complex) and c.imag == 0 and c.real < 0)
            mag = -c if negative else c
            if isinstance(mag, complex) and mag.imag == 0:
                mag = mag.real
            if k == 0:
                body = f"{mag}"
            else:
                var = "z" if k == 1 else f"z^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            if not parts:
                parts.append(f"-{body}" if negative else body)
            else:
                parts.append(f"- {body}" if negative else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [EXACT_ZERO] * (n - len(self.coeffs))
        b = list(other.coeffs) + [EXACT_ZERO] * (n - len(other.coeffs))
        return Polynomial([x + y for x, y in zip(a, b)])

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(other)
        if self.is_zero or other.is_zero:
            return Polynomial(())
        out = [EXACT_ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, factor) -> "Polynomial":
        return Polynomial([c * factor for c in self.coeffs])

    def divmod(self, other: "Polynomial"):
        """Euclidean division; coefficients live in a field on both lanes."""
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        quo = [EXACT_ZERO] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.coeffs
        while len(rem) >= len(d) and any(bool(c) for c in rem):
            # strip a numerically dead leading term before dividing by it
            if not rem[-1]:
                rem.pop()
                continue
            k = len(rem) - len(d)
            q = rem[-1] / d[-1]
            quo[k] = q
            for i, c in enumerate(d):
                rem[k + i] = rem[k + i] - q * c
            rem.pop()
        return Polynomial(quo), Polynomial(rem)

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        inv = EXACT_ONE / self.lead if self.exact else 1.0 / self.lead
        return self.scale(inv)

    def derivative(self) -> "Polynomial":
        return Polynomial([c * k for k, c in enumerate(self.coeffs)][1:])

    def eval(self, z):
        """Horner evaluation; exact when both operands are exact."""
        acc = EXACT_ZERO if (self.exact and is_exact(z)) else 0j
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    __call__ = eval

    def compose_rational(self, num: "Polynomial", den: "Polynomial") -> "Polynomial":
        """Numerator of self(num/den) after clearing den**degree."""
        if self.is_zero:
            return Polynomial(())
        d = self.degree
        out = Polynomial(())
        for k, c in enumerate(self.coeffs):
            out = out + (num ** k) * (den ** (d - k)).scale(c)
        return out

    def to_complex_array(self) -> np.ndarray:
        return np.array([as_complex(c) for c in self.coeffs], dtype=complex)


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd on the exact lane via the Euclidean algorithm."""
    if not (a.exact and b.exact):
        raise TypeError("exact gcd requires exact polynomials")
    while not b.is_zero:
        a, b = b, a % b
    return a.monic() if not a.is_zero else a


def _float_cancel(num: Polynomial, den: Polynomial):
    """Cancel root pairs of num/den closer than CANCEL_TOL (conservative)."""
    if num.is_zero or den.degree < 1:
        return num, den
    nroots = list(np.roots(num.to_complex_array()[::-1])) if num.degree >= 1 else []
    droots = list(np.roots(den.to_complex_array()[::-1]))
    keep_n = nroots[:]
    keep_d = []
    for r in droots:
        hit = None
        for i, s in enumerate(keep_n):
            if abs(r - s) < CANCEL_TOL:
                hit = i
                break
        if hit is None:
            keep_d.append(r)
        else:
            keep_n.pop(hit)
    if len(keep_d) == len(droots):
        return num, den
    lead_n = as_complex(num.lead)
    lead_d = as_complex(den.lead)
    new_num = Polynomial(np.poly(keep_n)[::-1] * lead_n if keep_n else [lead_n])
    new_den = Polynomial(np.poly(keep_d)[::-1] * lead_d if keep_d else [lead_d])
    return new_num, new_den


class RationalFunction:
    """Quotient of two polynomials, normalized to a canonical form.

    Canonical means: numerator and denominator are coprime, and the
    denominator is scaled so that (a) real exact entries have coprime integer
    coefficients with a positive leading coefficient -- this reproduces
    textbook displays like (2z+1)/(2z-1) verbatim -- (b) complex exact or
    float entries have a monic denominator.
    """

    __slots__ = ("num", "den", "exact")

    def __init__(self, num, den=Polynomial((1,)), reduce=True):
        if not isinstance(num, Polynomial):
            num = Polynomial(num)
        if not isinstance(den, Polynomial):
            den = Polynomial(den)
        if den.is_zero:
            raise ZeroDivisionError("zero denominator polynomial")
        exact = num.exact and den.exact
        if not exact:
            num = Polynomial(num.to_complex_array())
            den = Polynomial(den.to_complex_array())
        if reduce:
            num, den = self._reduce(num, den, exact)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    @staticmethod
    def _reduce(num, den, exact):
        if exact:
            if num.is_zero:
                return num, Polynomial.one()
            g = polynomial_gcd(num, den)
            if g.degree >= 1:
                num = num.divmod(g)[0]
                den = den.divmod(g)[0]
            if num.is_real() and den.is_real():
                scale = _integer_primitive_scale(num, den)
                num, den = num.scale(scale), den.scale(scale)
                if den.lead.re < 0:
                    num, den = num.scale(-1), den.scale(-1)
            else:
                inv = EXACT_ONE / den.lead
                num, den = num.scale(inv), den.scale(inv)
            return num, den
        if num.is_zero:
            return num, Polynomial((1.0,))
        num, den = _float_cancel(num, den)
        inv = 1.0 / as_complex(den.lead)
        num, den = num.scale(inv), den.scale(inv)
        if num.is_real() and den.is_real():
            num = Polynomial([c.real for c in num.coeffs])
            den = Polynomial([c.real for c in den.coeffs])
        return num, den

    # -- constructors -------------------------------------------------
    @staticmethod
    def constant(c) -> "RationalFunction":
        return RationalFunction(Polynomial((c,)))

    @staticmethod
    def x() -> "RationalFunction":
        return RationalFunction(Polynomial.x())

    @staticmethod
    def from_json(obj) -> "RationalFunction":
        num = [scalar_from_json(c) for c in obj["num"]]
        den = [scalar_from_json(c) for c in obj["den"]]
        return RationalFunction(Polynomial(num), Polynomial(den))

    def to_json(self) -> dict:
        def dump(p):
            return [scalar_to_json(c) for c in p.coeffs]

        return {"num": dump(self.num), "den": dump(self.den)}

    # -- queries ------------------------------------------------------
    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    @property
    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant:
            raise ValueError("not a constant rational function")
        if self.is_zero:
            return EXACT_ZERO if self.exact else 0j
        return self.num.coeffs[0] / self.den.coeffs[0]

    def is_real(self) -> bool:
        return self.num.is_real() and self.den.is_real()

    def real_poles(self) -> list:
        """Real roots of the canonical denominator (float values)."""
        if self.den.degree < 1:
            return []
        roots = np.roots(self.den.to_complex_array()[::-1])
        return sorted(r.real for r in roots if abs(r.imag) < 1e-9)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den.degree == 0 and self.den.eval(0) == 1:
            return str(self.num) if self.num.degree < 1 else f"{self.num}"
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RationalFunction({self})"

    def isclose(self, other: "RationalFunction", tol=1e-9) -> bool:
        """Cross-multiplied coefficient comparison with relative tolerance."""
        lhs = (self.num * other.den).to_complex_array()
        rhs = (other.num * self.den).to_complex_array()
        n = max(len(lhs), len(rhs))
        lhs = np.pad(lhs, (0, n - len(lhs)))
        rhs = np.pad(rhs, (0, n - len(rhs)))
        scale = max(1.0, np.abs(lhs).max(initial=0.0), np.abs(rhs).max(initial=0.0))
        return bool(np.all(np.abs(lhs - rhs) <= tol * scale))

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other)
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, reduce=False)

    def __sub__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RationalFunction):
            other = RationalFunction.constant(other)
        if other.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        if self.is_zero:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction.constant(other) / self

    def eval(self, z):
        """Evaluate at z, raising ``PoleError`` on (near-)pole hits."""
        den_val = self.den.eval(z)
        num_val = self.num.eval(z)
        if is_exact(den_val) and isinstance(den_val, GaussianRational):
            if not den_val:
                raise PoleError(z)
            return num_val / den_val
        den_c, num_c = as_complex(den_val), as_complex(num_val)
        if abs(den_c) < POLE_TOL * max(1.0, abs(num_c)):
            raise PoleError(z)
        return num_c / den_c

    __call__ = eval

    def derivative(self) -> "RationalFunction":
        """Quotient-rule derivative in canonical form."""
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def compose(self, inner: "RationalFunction") -> "RationalFunction":
        """self(inner(z)) as a canonical rational function."""
        p, q = self.num, self.den
        n, d = inner.num, inner.den
        dp, dq = max(p.degree, 0), max(q.degree, 0)
        top = p.compose_rational(n, d)
        bot = q.compose_rational(n, d)
        if dp > dq:
            bot = bot * d ** (dp - dq)
        elif dq > dp:
            top = top * d ** (dq - dp)
        return RationalFunction(top, bot)


def _integer_primitive_scale(num: Polynomial, den: Polynomial) -> Fraction:
    """Scale factor turning real-rational num/den into coprime integers."""
    fracs = [c.re for c in num.coeffs] + [c.re for c in den.coeffs]
    lcm = 1
    for f in fracs:
        lcm = math.lcm(lcm, f.denominator)
    ints = [int(f * lcm) for f in fracs]
    g = 0
    for v in ints:
        g = math.gcd(g, abs(v))
    return Fraction(lcm, g if g else 1)


# ---------------------------------------------------------------------------
# Small dense matrices (lists of lists; exact lane) and Hermitian routines.
# ---------------------------------------------------------------------------


class Inertia:
    """Eigenvalue sign counts (negatives, zeros, positives)."""

    __slots__ = ("negatives", "zeros", "positives")

    def __init__(self, negatives, zeros, positives):
        object.__setattr__(self, "negatives", negatives)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "positives", positives)

    def __setattr__(self, name, value):
        raise AttributeError("Inertia is immutable")

    @property
    def order(self) -> int:
        return self.negatives + self.zeros + self.positives

    def astuple(self):
        return (self.negatives, self.zeros, self.positives)

    def __eq__(self, other):
        if isinstance(other, tuple):
            return self.astuple() == other
        if isinstance(other, Inertia):
            return self.astuple() == other.astuple()
        return NotImplemented

    def __hash__(self):
        return hash(self.astuple())

    def __repr__(self):
        return f"Inertia(neg={self.negatives}, zero={self.zeros}, pos={self.positives})"


def _entry_conj(x):
    return x.conjugate() if isinstance(x, (GaussianRational, complex)) else x


def _rows_are_exact(rows) -> bool:
    return all(is_exact(x) for row in rows for x in row)


class HermitianMatrix:
    """Square matrix with entry(i,j) == conj(entry(j,i)).

    Exact entries must satisfy the symmetry identically; float entries are
    allowed a relative slack of ``HERMITIAN_TOL``.
    """

    __slots__ = ("rows", "n", "exact")

    def __init__(self, rows):
        rows = tuple(tuple(row) for row in rows)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError("matrix is not square")
        exact = _rows_are_exact(rows)
        if exact:
            rows = tuple(
                tuple(GaussianRational.coerce(x) for x in row) for row in rows
            )
            for i in range(n):
                for j in range(i, n):
                    if rows[i][j] != rows[j][i].conjugate():
                        raise ValueError(f"not Hermitian at ({i},{j})")
        else:
            arr = np.array([[as_complex(x) for x in row] for row in rows])
            scale = max(1.0, float(np.abs(arr).max(initial=0.0)))
            if np.abs(arr - arr.conj().T).max(initial=0.0) > HERMITIAN_TOL * scale:
                raise ValueError("not Hermitian within float tolerance")
            rows = tuple(tuple(row) for row in arr.tolist())
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("HermitianMatrix is immutable")

    def entry(self, i, j):
        return self.rows[i][j]

    def to_numpy(self) -> np.ndarray:
        return np.array([[as_complex(x) for x in row] for row in self.rows])

    def to_lists(self):
        return [list(row) for row in self.rows]

    def submatrix(self, idx) -> "HermitianMatrix":
        return HermitianMatrix([[self.rows[i][j] for j in idx] for i in idx])

    def __eq__(self, other):
        if not isinstance(other, HermitianMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"HermitianMatrix({[list(r) for r in self.rows]})"


def hermitian_inertia(matrix, rank_tol: float = 1e-9) -> Inertia:
    """Eigenvalue sign counts of a Hermitian matrix.

    Exact entries go through symmetric (congruence) elimination with
    diagonal pivoting, falling back to an off-diagonal 2x2 block -- which
    contributes one eigenvalue of each sign -- when every remaining diagonal
    entry vanishes.  No tolerance is involved.  Float entries are counted
    from the spectrum, with |lambda| <= rank_tol * max(1, spectral radius)
    treated as zero.
    """
    if not isinstance(matrix, HermitianMatrix):
        matrix = HermitianMatrix(matrix)
    if matrix.n == 0:
        return Inertia(0, 0, 0)
    if matrix.exact:
        return _exact_inertia(matrix.to_lists())
    eigs = np.linalg.eigvalsh(matrix.to_numpy())
    scale = max(1.0, float(np.abs(eigs).max(initial=0.0)))
    tol = rank_tol * scale
    neg = int(np.sum(eigs < -tol))
    pos = int(np.sum(eigs > tol))
    return Inertia(neg, matrix.n - neg - pos, pos)


def _exact_inertia(rows) -> Inertia:
    n = len(rows)
    active = list(range(n))
    neg = pos = 0
    while active:
        pivot = next((p for p in active if bool(rows[p][p])), None)
        if pivot is not None:
            d = rows[pivot][pivot]
            if d.re > 0:
                pos += 1
            else:
                neg += 1
            rest = [i for i in active if i != pivot]
            col = {i: rows[i][pivot] for i in rest}
            for i in rest:
                for j in rest:
                    rows[i][j] = rows[i][j] - col[i] * _entry_conj(col[j]) / d
            active = rest
            continue
        off = next(
            (
                (i, j)
                for ai, i in enumerate(active)
                for j in active[ai + 1 :]
                if bool(rows[i][j])
            ),
            None,
        )
        if off is None:
            return Inertia(neg, len(active), pos)
        i, j = off
        # zero-diagonal 2x2 block [[0,a],[conj(a),0]] has inertia (1,0,1)
        a = rows[i][j]
        pos += 1
        neg += 1
        rest = [k for k in active if k not in (i, j)]
        ci = {k: rows[k][i] for k in rest}
        cj = {k: rows[k][j] for k in rest}
        inv_a = EXACT_ONE / a
        inv_ac = EXACT_ONE / _entry_conj(a)
        for k in rest:
            for l in rest:
                # Schur update with B^{-1} = [[0, 1/conj(a)], [1/a, 0]]
                rows[k][l] = rows[k][l] - (
                    cj[k] * inv_a * rows[i][l] + ci[k] * inv_ac * rows[j][l]
                )
        active = rest
    return Inertia(neg, 0, pos)


def matrix_inverse(rows):
    """Inverse of a square matrix given as lists (or HermitianMatrix).

    Exact entries use Gauss-Jordan elimination and raise
    ``SingularMatrixError`` on an exactly singular input.  Float entries use
    numpy, rejecting reciprocal condition numbers below ``RCOND_MIN``.
    """
    if isinstance(rows, HermitianMatrix):
        rows = rows.to_lists()
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if _rows_are_exact(rows):
        return _exact_inverse(
            [[GaussianRational.coerce(x) for x in row] for row in rows]
        )
    arr = np.array([[as_complex(x) for x in row] for row in rows])
    sv = np.linalg.svd(arr, compute_uv=False)
    if sv[0] == 0 or sv[-1] / sv[0] < RCOND_MIN:
        raise SingularMatrixError("reciprocal condition number below cutoff")
    return np.linalg.inv(arr).tolist()


def _exact_inverse(a):
    n = len(a)
    aug = [row[:] + [EXACT_ONE if i == j else EXACT_ZERO for j in range(n)]
           for i, row in enumerate(a)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if bool(aug[r][col])), None)
        if pivot is None:
            raise SingularMatrixError("exact zero pivot column")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = EXACT_ONE / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and bool(aug[r][col]):
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def exact_kernel_basis(rows):
    """Basis of the null space of an exact matrix, via reduced row echelon."""
    m = len(rows)
    if m == 0:
        return []
    n = len(rows[0])
    a = [[GaussianRational.coerce(x) for x in row] for row in rows]
    pivots = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if bool(a[i][c])), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = EXACT_ONE / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and bool(a[i][c]):
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        vec = [EXACT_ZERO] * n
        vec[fc] = EXACT_ONE
        for row_idx, pc in enumerate(pivots):
            vec[pc] = -a[row_idx][fc]
        basis.append(vec)
    return basis


# -- free-function aliases for the core operations --------------------------


def rational_simplify(r: RationalFunction) -> RationalFunction:
    """Canonical (reduced, normalized) form of a rational function."""
    return RationalFunction(r.num, r.den)


def rational_eval(r: RationalFunction, z):
    return r.eval(z)


def rational_derivative(r: RationalFunction) -> RationalFunction:
    return r.derivative()
