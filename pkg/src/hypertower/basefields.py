"""Exact valued fields used as tower bases, plus independent digit oracles.

Three fields are supported, all with value group Z:

* ``PadicRationals(p)`` -- the rationals with the p-adic valuation.
* ``RationalFunctions(p)`` -- rational functions over GF(p) with the
  order-of-vanishing valuation at t = 0.
* ``QuadraticExtension(p)`` -- Q(r) with r*r = 1 + p, valued through the
  embedding that sends r to the square root of 1 + p congruent to 1 mod p.

The oracles are deliberately low-tech so they can act as independent
referees: base-p expansion by modular long division, Laurent expansion by
power-series division, and square-root lifting modulo prime powers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .oag import INF

__all__ = [
    "Approximation",
    "CauchyWitness",
    "FpPoly",
    "RatFunc",
    "QuadElement",
    "ValuedField",
    "PadicRationals",
    "RationalFunctions",
    "QuadraticExtension",
    "f_arith",
    "oracle_expand",
    "hensel_sqrt",
    "is_cauchy",
    "make_field",
]


def _is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def int_valuation(n, p):
    """Exponent of p in a nonzero integer."""
    if n == 0:
        raise ValueError("0 has no finite valuation")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def padic_valuation(q, p):
    q = Fraction(q)
    if q == 0:
        return INF
    return int_valuation(q.numerator, p) - int_valuation(q.denominator, p)


def _digits_of(n, p, count):
    """Little-endian base-p digits of a nonnegative integer."""
    out = []
    for _ in range(count):
        n, r = divmod(n, p)
        out.append(r)
    return tuple(out)


@dataclass(frozen=True)
class Approximation:
    """A finite digit window: p^shift * sum(digits[i] * p^i).

    For function fields the digits are GF(p) Laurent coefficients and p is
    the characteristic; the encoding is shared.
    """

    shift: int
    digits: tuple
    p: int

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        if any(d < 0 or d >= self.p for d in self.digits):
            raise ValueError("digits must lie in 0..p-1")

    @property
    def precision(self):
        return len(self.digits)

    def is_zero(self):
        return all(d == 0 for d in self.digits)

    def to_json(self):
        return {"shift": self.shift, "digits": list(self.digits), "p": self.p}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["shift"]), tuple(obj["digits"]), int(obj["p"]))


@dataclass(frozen=True)
class CauchyWitness:
    """Index past which all pairwise differences exceed the target level."""

    nu0: int
    level: int


class FpPoly:
    """Dense polynomial over GF(p): little-endian coefficients, no trailing zeros."""

    __slots__ = ("p", "coeffs")

    def __init__(self, p, coeffs=()):
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.p = p
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, p, c):
        return cls(p, (c,))

    @classmethod
    def t_power(cls, p, k):
        if k < 0:
            raise ValueError("negative power")
        return cls(p, (0,) * k + (1,))

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def coeff(self, i):
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def order(self):
        """Index of the lowest nonzero coefficient; None for zero."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    def shift(self, k):
        """Multiply by t^k (k >= 0)."""
        if self.is_zero():
            return self
        return FpPoly(self.p, (0,) * k + self.coeffs)

    def unshift(self, k):
        """Divide exactly by t^k."""
        if any(self.coeff(i) for i in range(k)):
            raise ValueError("not divisible by t^%d" % k)
        return FpPoly(self.p, self.coeffs[k:])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        return FpPoly(self.p, [self.coeff(i) + other.coeff(i) for i in range(n)])

    def __neg__(self):
        return FpPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return FpPoly(self.p)
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return FpPoly(self.p, out)

    def __divmod__(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        q = [0] * max(0, len(rem) - len(other.coeffs) + 1)
        inv_lead = pow(other.coeffs[-1], -1, p)
        d = other.degree
        for i in range(len(rem) - 1, d - 1, -1):
            c = rem[i] % p
            if not c:
                continue
            f = c * inv_lead % p
            q[i - d] = f
            for j, oc in enumerate(other.coeffs):
                rem[i - d + j] = (rem[i - d + j] - f * oc) % p
        return FpPoly(p, q), FpPoly(p, rem)

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def monic(self):
        if self.is_zero():
            return self
        inv = pow(self.coeffs[-1], -1, self.p)
        return FpPoly(self.p, [c * inv for c in self.coeffs])

    @staticmethod
    def gcd(a, b):
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def __eq__(self, other):
        return (
            isinstance(other, FpPoly)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.p, self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("t" if c == 1 else f"{c}*t")
            else:
                terms.append(f"t^{i}" if c == 1 else f"{c}*t^{i}")
        return " + ".join(terms)


class RatFunc:
    """Reduced ratio of GF(p)[t] polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = FpPoly.constant(num.p, 1)
        if num.p != den.p:
            raise ValueError("mixed characteristics")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = FpPoly.gcd(num, den)
        if g.degree > 0:
            num, den = num // g, den // g
        inv = pow(den.coeffs[-1], -1, den.p)
        if inv != 1:
            scale = FpPoly.constant(den.p, inv)
            num, den = num * scale, den * scale
        self.num = num
        self.den = den

    @property
    def p(self):
        return self.den.p

    def is_zero(self):
        return self.num.is_zero()

    def t_order(self):
        if self.is_zero():
            return INF
        return self.num.order() - self.den.order()

    def __add__(self, other):
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        return RatFunc(self.num * other.num, self.den * other.den)

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other):
        return self * other.inverse()

    def __eq__(self, other):
        return (
            isinstance(other, RatFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        if self.den.degree == 0:
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


@dataclass(frozen=True)
class QuadElement:
    """a + b*r with r*r = 1 + p and exact rational components."""

    p: int
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def conj(self):
        return QuadElement(self.p, self.a, -self.b)

    def norm(self):
        return self.a * self.a - (1 + self.p) * self.b * self.b

    def _chk(self, other):
        if not isinstance(other, QuadElement) or other.p != self.p:
            raise ValueError("mixed quadratic extensions")

    def __add__(self, other):
        self._chk(other)
        return QuadElement(self.p, self.a + other.a, self.b + other.b)

    def __neg__(self):
        return QuadElement(self.p, -self.a, -self.b)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._chk(other)
        d = 1 + self.p
        return QuadElement(
            self.p,
            self.a * other.a + d * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElement(self.p, self.a / n, -self.b / n)

    def __repr__(self):
        return f"({self.a} + {self.b}*r)"


class ValuedField:
    """Shared plumbing for the supported exact valued fields."""

    kind = None

    def __init__(self, p):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def __eq__(self, other):
        return (
            isinstance(other, ValuedField)
            and self.kind == other.kind
            and self.p == other.p
        )

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return f"{type(self).__name__}({self.p})"

    def check(self, x):
        raise NotImplementedError

    def add(self, x, y):
        return self.check(x) + self.check(y)

    def sub(self, x, y):
        return self.check(x) - self.check(y)

    def neg(self, x):
        return -self.check(x)

    def mul(self, x, y):
        return self.check(x) * self.check(y)

    def descriptor(self):
        return {"kind": self.kind, "p": self.p}

    def sub_valuation(self, x, y):
        """v(x - y); the workhorse of every coset predicate."""
        return self.valuation(self.sub(x, y))


class PadicRationals(ValuedField):
    """The rationals with the p-adic valuation."""

    kind = "rational"

    def check(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise ValueError(f"not a rational element: {x!r}")

    def element(self, obj):
        if isinstance(obj, (Fraction, int)):
            return Fraction(obj)
        if isinstance(obj, str):
            return Fraction(obj)
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return Fraction(int(obj[0]), int(obj[1]))
        raise ValueError(f"cannot parse rational element from {obj!r}")

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def is_zero(self, x):
        return self.check(x) == 0

    def inv(self, x):
        x = self.check(x)
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / x

    def valuation(self, x):
        return padic_valuation(self.check(x), self.p)

    def uniformizer_pow(self, k):
        return Fraction(self.p) ** k

    def unit_digit(self, i):
        if self.p == 2:
            return Fraction(1)
        return Fraction(1 + i % (self.p - 1))

    def expand(self, x, n):
        """First n base-p digits of x, starting at its valuation.

        Exact contract: x minus the resummed window has valuation
        strictly greater than shift + n - 1.
        """
        if n < 1:
            raise ValueError("precision must be >= 1")
        x = self.check(x)
        if x == 0:
            return Approximation(0, (0,) * n, self.p)
        e = padic_valuation(x, self.p)
        u = x / Fraction(self.p) ** e
        m = self.p ** n
        val = u.numerator * pow(u.denominator, -1, m) % m
        return Approximation(e, _digits_of(val, self.p, n), self.p)

    def from_approximation(self, appr):
        if appr.p != self.p:
            raise ValueError("approximation base mismatch")
        total = Fraction(0)
        for i, d in enumerate(appr.digits):
            if d:
                total += d * Fraction(self.p) ** (appr.shift + i)
        return total

    def random_element(self, rng, height=50):
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def random_nonzero(self, rng, height=50):
        while True:
            x = self.random_element(rng, height)
            if x != 0:
                return x

    def random_unit(self, rng, height=50):
        while True:
            n = rng.randint(1, height)
            d = rng.randint(1, height)
            if n % self.p and d % self.p:
                return Fraction(rng.choice((-1, 1)) * n, d)

    def to_json(self, x):
        x = self.check(x)
        return str(x)


class RationalFunctions(ValuedField):
    """Rational functions over GF(p) valued by order of vanishing at t = 0."""

    kind = "function-field"

    def check(self, x):
        if isinstance(x, RatFunc) and x.p == self.p:
            return x
        if isinstance(x, int):
            return RatFunc(FpPoly.constant(self.p, x))
        raise ValueError(f"not a function-field element: {x!r}")

    def element(self, obj):
        if isinstance(obj, (RatFunc, int)):
            return self.check(obj)
        if isinstance(obj, dict):
            num = FpPoly(self.p, obj.get("num", ()))
            den = FpPoly(self.p, obj.get("den", (1,)))
            return RatFunc(num, den)
        if isinstance(obj, (list, tuple)):
            return RatFunc(FpPoly(self.p, obj))
        raise ValueError(f"cannot parse function-field element from {obj!r}")

    def poly(self, *coeffs):
        return RatFunc(FpPoly(self.p, coeffs))

    def zero(self):
        return RatFunc(FpPoly(self.p))

    def one(self):
        return RatFunc(FpPoly.constant(self.p, 1))

    def is_zero(self, x):
        return self.check(x).is_zero()

    def inv(self, x):
        return self.check(x).inverse()

    def valuation(self, x):
        return self.check(x).t_order()

    def uniformizer_pow(self, k):
        t = FpPoly.t_power(self.p, abs(k))
        one = FpPoly.constant(self.p, 1)
        return RatFunc(t, one) if k >= 0 else RatFunc(one, t)

    def unit_digit(self, i):
        if self.p == 2:
            return self.one()
        return RatFunc(FpPoly.constant(self.p, 1 + i % (self.p - 1)))

    def expand(self, x, n):
        """First n Laurent coefficients of x at t = 0."""
        if n < 1:
            raise ValueError("precision must be >= 1")
        x = self.check(x)
        if x.is_zero():
            return Approximation(0, (0,) * n, self.p)
        on, od = x.num.order(), x.den.order()
        nn, dd = x.num.unshift(on), x.den.unshift(od)
        inv0 = pow(dd.coeff(0), -1, self.p)
        coeffs = []
        for k in range(n):
            acc = nn.coeff(k)
            for j in range(1, min(k, dd.degree) + 1):
                acc -= dd.coeff(j) * coeffs[k - j]
            coeffs.append(acc * inv0 % self.p)
        return Approximation(on - od, tuple(coeffs), self.p)

    def from_approximation(self, appr):
        if appr.p != self.p:
            raise ValueError("approximation base mismatch")
        window = FpPoly(self.p, appr.digits)
        if window.is_zero():
            return self.zero()
        if appr.shift >= 0:
            return RatFunc(window.shift(appr.shift))
        return RatFunc(window, FpPoly.t_power(self.p, -appr.shift))

    def random_element(self, rng, height=50, degree=3):
        num = FpPoly(self.p, [rng.randrange(self.p) for _ in range(degree + 1)])
        while True:
            den = FpPoly(self.p, [rng.randrange(self.p) for _ in range(degree + 1)])
            if not den.is_zero():
                return RatFunc(num, den)

    def random_nonzero(self, rng, height=50, degree=3):
        while True:
            x = self.random_element(rng, height, degree)
            if not x.is_zero():
                return x

    def random_unit(self, rng, height=50, degree=3):
        while True:
            x = self.random_element(rng, height, degree)
            if not x.is_zero() and x.t_order() == 0:
                return x

    def to_json(self, x):
        x = self.check(x)
        return {"num": list(x.num.coeffs), "den": list(x.den.coeffs)}


class QuadraticExtension(ValuedField):
    """Q(r) with r*r = 1 + p, valued via the embedding r -> s, s = 1 mod p.

    Requires an odd prime other than 3: for p = 3 the defining square
    1 + p = 4 is a perfect square and the extension degenerates.
    """

    kind = "quadratic"

    def __init__(self, p):
        super().__init__(p)
        if p == 2:
            raise ValueError("p = 2 is not supported for the quadratic extension")
        if p == 3:
            raise ValueError("1 + p is a perfect square for p = 3; not a field")
        self._root = (1, 1)  # (precision k, value mod p^k); s = 1 mod p

    def check(self, x):
        if isinstance(x, QuadElement) and x.p == self.p:
            return x
        if isinstance(x, (Fraction, int)):
            return QuadElement(self.p, Fraction(x), Fraction(0))
        raise ValueError(f"not a quadratic-extension element: {x!r}")

    def element(self, obj):
        if isinstance(obj, (QuadElement, Fraction, int)):
            return self.check(obj)
        if isinstance(obj, dict):
            return QuadElement(self.p, Fraction(str(obj.get("a", 0))), Fraction(str(obj.get("b", 0))))
        if isinstance(obj, (list, tuple)) and len(obj) == 2:
            return QuadElement(self.p, Fraction(str(obj[0])), Fraction(str(obj[1])))
        if isinstance(obj, str):
            return QuadElement(self.p, Fraction(obj), Fraction(0))
        raise ValueError(f"cannot parse quadratic element from {obj!r}")

    def generator(self):
        return QuadElement(self.p, Fraction(0), Fraction(1))

    def zero(self):
        return QuadElement(self.p, Fraction(0), Fraction(0))

    def one(self):
        return QuadElement(self.p, Fraction(1), Fraction(0))

    def is_zero(self, x):
        return self.check(x).is_zero()

    def inv(self, x):
        return self.check(x).inverse()

    def root_mod(self, k):
        """The embedded square root of 1 + p modulo p^k (congruent to 1 mod p)."""
        if k < 1:
            raise ValueError("precision must be >= 1")
        have, x = self._root  # single-attribute cache: safe to share
        if k > have:
            while have < k:
                have = min(2 * have, k)
                m = self.p ** have
                c = (1 + self.p) % m
                x = (x + c * pow(x, -1, m)) * pow(2, -1, m) % m
            self._root = (have, x)
        return x % self.p ** k

    def _window(self, x, n):
        """(valuation, first n digits) of the embedded image of x.

        The norm a^2 - (1+p) b^2 bounds how deep the leading digit can
        hide, so the search window is finite and the result exact.
        """
        x = self.check(x)
        if x.is_zero():
            return INF, (0,) * n
        vals = []
        if x.a != 0:
            vals.append(padic_valuation(x.a, self.p))
        if x.b != 0:
            vals.append(padic_valuation(x.b, self.p))
        m = min(vals)
        bound = padic_valuation(x.norm(), self.p)  # = v(x) + v(conj x)
        span = (bound - 2 * m) + n + 1
        modulus = self.p ** span
        scale = Fraction(self.p) ** m

        def _residue(q):
            q = q / scale
            return q.numerator * pow(q.denominator, -1, modulus) % modulus

        u = (_residue(x.a) + _residue(x.b) * self.root_mod(span)) % modulus
        if u == 0:
            raise AssertionError("window exhausted before the leading digit")
        ord_u = int_valuation(u, self.p)
        digits = _digits_of(u // self.p ** ord_u % self.p ** n, self.p, n)
        return m + ord_u, digits

    def valuation(self, x):
        return self._window(x, 1)[0]

    def expand(self, x, n):
        if n < 1:
            raise ValueError("precision must be >= 1")
        v, digits = self._window(x, n)
        if v is INF:
            return Approximation(0, digits, self.p)
        return Approximation(v, digits, self.p)

    def representative(self, x, level):
        """A rational whose level-`level` class is the image of x.

        Truncates the embedded expansion one digit past the level, which
        keeps the error valuation above level + v(x).
        """
        if level < 0:
            raise ValueError("negative level")
        x = self.check(x)
        if x.is_zero():
            return Fraction(0)
        v, digits = self._window(x, level + 1)
        total = Fraction(0)
        for i, d in enumerate(digits):
            if d:
                total += d * Fraction(self.p) ** (v + i)
        return total

    def from_approximation(self, appr):
        if appr.p != self.p:
            raise ValueError("approximation base mismatch")
        total = Fraction(0)
        for i, d in enumerate(appr.digits):
            if d:
                total += d * Fraction(self.p) ** (appr.shift + i)
        return QuadElement(self.p, total, Fraction(0))

    def uniformizer_pow(self, k):
        return QuadElement(self.p, Fraction(self.p) ** k, Fraction(0))

    def unit_digit(self, i):
        return QuadElement(self.p, Fraction(1 + i % (self.p - 1)), Fraction(0))

    def random_element(self, rng, height=50):
        return QuadElement(
            self.p,
            Fraction(rng.randint(-height, height), rng.randint(1, height)),
            Fraction(rng.randint(-height, height), rng.randint(1, height)),
        )

    def random_nonzero(self, rng, height=50):
        while True:
            x = self.random_element(rng, height)
            if not x.is_zero():
                return x

    def random_unit(self, rng, height=50):
        while True:
            x = self.random_nonzero(rng, height)
            if self.valuation(x) == 0:
                return x

    def to_json(self, x):
        x = self.check(x)
        return {"a": str(x.a), "b": str(x.b)}


def make_field(kind, p):
    if kind in ("rational", "rational-p-adic"):
        return PadicRationals(p)
    if kind in ("function", "function-field"):
        return RationalFunctions(p)
    if kind == "quadratic":
        return QuadraticExtension(p)
    raise ValueError(f"unknown field kind: {kind!r}")


def f_arith(field, op, x, y=None):
    """Dispatch exact field arithmetic: add, neg, mul, inv."""
    if op == "add":
        return field.add(x, y)
    if op == "neg":
        return field.neg(x)
    if op == "mul":
        return field.mul(x, y)
    if op == "inv":
        return field.inv(x)
    raise ValueError(f"unknown operation: {op!r}")


def oracle_expand(field, x, n):
    """Digit/Laurent expansion of x to n places past its valuation."""
    return field.expand(x, n)


def hensel_sqrt(p, c, seed, n):
    """Digits of the square root of a p-adic unit square, lifted mod p^n.

    The seed must be a simple root of X^2 = c modulo p; the returned
    window is the unique lift congruent to the seed, verified by squaring.
    """
    if p == 2:
        raise ValueError("lifting a square root needs an odd prime")
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("precision must be >= 1")
    c = Fraction(c)
    if padic_valuation(c, p) != 0:
        raise ValueError("c must be a p-adic unit")
    modulus = p ** n
    cmod = c.numerator * pow(c.denominator, -1, modulus) % modulus
    seed = seed % p
    if (seed * seed - cmod) % p != 0:
        raise ValueError(f"{seed} is not a square root of c modulo {p}")
    if (2 * seed) % p == 0:
        raise ValueError("the seed is not a simple root")
    x, have = seed, 1
    while have < n:
        have = min(2 * have, n)
        m = p ** have
        x = (x + cmod * pow(x, -1, m)) * pow(2, -1, m) % m
    if (x * x - cmod) % modulus != 0:
        raise AssertionError("lift failed to verify")
    return Approximation(0, _digits_of(x, p, n), p)


def is_cauchy(field, xs, gamma):
    """Smallest index past which all pairwise differences beat the level.

    Returns None when no index certifies it; a witness must leave at
    least two entries in the tail, since a single trailing element
    certifies nothing about the sequence.
    """
    xs = [field.check(x) for x in xs]
    for nu0 in range(0, max(0, len(xs) - 1)):
        ok = True
        for i in range(nu0, len(xs)):
            for j in range(i + 1, len(xs)):
                if not field.sub_valuation(xs[i], xs[j]) > gamma:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return CauchyWitness(nu0, gamma)
    return None
