"""Exact arithmetic in GF(p^m) for small prime powers.

Elements are plain ints: the element c_0 + c_1 x + ... + c_{m-1} x^{m-1}
is stored as sum(c_i * p**i).  Integer order is therefore the canonical
element order, and the base-p digit string of an element (most significant
coefficient first) is its text form: in GF(8), ``011`` is x + 1.

Multiplication goes through exp/log tables built once per field.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from qmat.errors import (
    DivisionByZero,
    MixedFields,
    NonPrimeCharacteristic,
    ParseError,
    ReducibleModulus,
    SizeCapExceeded,
)

MAX_DEGREE = 16
MAX_ORDER = 1 << 20

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


def is_prime(n: int) -> bool:
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


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over GF(p), coefficient lists low degree first ------------

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, b, p):
    """Remainder of a by the nonzero polynomial b over GF(p)."""
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return a


def _monic_polys(deg, p):
    """All monic polynomials of the given degree, low degree first."""
    for k in range(p**deg):
        coeffs = []
        for _ in range(deg):
            coeffs.append(k % p)
            k //= p
        yield coeffs + [1]


def is_irreducible(coeffs_high_first, p: int) -> bool:
    """Exhaustive factor check: no monic factor of degree 1..m//2 divides."""
    f = list(reversed(coeffs_high_first))
    _poly_trim(f)
    m = len(f) - 1
    if m < 1:
        return False
    for d in range(1, m // 2 + 1):
        for g in _monic_polys(d, p):
            if not _poly_mod(f, g, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The field GF(p^m) modulo ``modulus`` (coefficients, highest degree first)."""

    p: int
    m: int
    modulus: tuple

    @property
    def q(self) -> int:
        return self.p**self.m

    @property
    def is_prime_field(self) -> bool:
        return self.m == 1

    def __repr__(self):
        if self.m == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.m})"

    def __len__(self):
        return self.q

    def __iter__(self):
        return iter(range(self.q))

    def __call__(self, value) -> "FieldElem":
        if isinstance(value, str):
            value = self.parse(value)
        if not 0 <= value < self.q:
            raise ValueError(f"{value} is not an element of {self!r}")
        return FieldElem(self, value)

    # -- slow polynomial multiply, used only to build the tables ----------

    def _digits(self, a):
        out = []
        for _ in range(self.m):
            out.append(a % self.p)
            a //= self.p
        return out

    def _from_digits(self, ds):
        v = 0
        for d in reversed(ds):
            v = v * self.p + d
        return v

    def _slow_mul(self, a, b):
        p, m = self.p, self.m
        if m == 1:
            return a * b % p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        rem = _poly_mod(prod, list(reversed(self.modulus)), p)
        return self._from_digits(rem + [0] * (m - len(rem)))

    def _slow_pow(self, a, e):
        r = 1
        while e:
            if e & 1:
                r = self._slow_mul(r, a)
            a = self._slow_mul(a, a)
            e >>= 1
        return r

    def _order_is_full(self, a, factors):
        n = self.q - 1
        if a == 0:
            return False
        if self._slow_pow(a, n) != 1:
            return False
        return all(self._slow_pow(a, n // r) != 1 for r in factors)

    @cached_property
    def _tables(self):
        n = self.q - 1
        factors = _prime_factors(n) if n > 1 else []
        g = next(a for a in range(1, self.q) if self._order_is_full(a, factors))
        exp = [0] * (2 * n)
        log = [0] * self.q
        x = 1
        for i in range(n):
            exp[i] = x
            log[x] = i
            x = self._slow_mul(x, g)
        for i in range(n, 2 * n):
            exp[i] = exp[i - n]
        return g, exp, log

    @cached_property
    def _add_table(self):
        if self.p == 2 or self.m == 1 or self.q > 256:
            return None
        return [[self._add_digits(a, b) for b in range(self.q)] for a in range(self.q)]

    def _add_digits(self, a, b):
        p = self.p
        r, place = 0, 1
        while a or b:
            r += ((a % p + b % p) % p) * place
            a //= p
            b //= p
            place *= p
        return r

    # -- integer-level arithmetic -------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        t = self._add_table
        return t[a][b] if t is not None else self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        p = self.p
        r, place = 0, 1
        while a:
            r += (-(a % p) % p) * place
            a //= p
            place *= p
        return r

    def sub(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        _, exp, log = self._tables
        return exp[log[a] + log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"0 has no inverse in {self!r}")
        if self.m == 1:
            return pow(a, self.p - 2, self.p)
        _, exp, log = self._tables
        return exp[(self.q - 1 - log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        """Square-and-multiply; negative exponents go through the inverse."""
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise DivisionByZero("0 has no multiplicative order")
        n = self.q - 1
        k = n
        for r in _prime_factors(n) if n > 1 else []:
            while k % r == 0 and self.pow(a, k // r) == 1:
                k //= r
        return k

    def primitive_element(self) -> "FieldElem":
        """Least element (canonical order) of multiplicative order q - 1."""
        return FieldElem(self, self._tables[0])

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.p)

    # -- text ---------------------------------------------------------------

    def format(self, a: int) -> str:
        """Base-p digits, most significant coefficient first, width m."""
        return "".join(_DIGITS[d] for d in reversed(self._digits(a)))

    def parse(self, s: str) -> int:
        s = s.strip().lower()
        if len(s) != self.m or any(ch not in _DIGITS[: self.p] for ch in s):
            raise ParseError(f"{s!r} is not an element literal of {self!r}")
        return self._from_digits([_DIGITS.index(ch) for ch in reversed(s)])

    # -- embeddings ---------------------------------------------------------

    def embedding_from(self, sub: "FieldSpec") -> list[int]:
        """Images of the elements of ``sub`` under a fixed embedding into self.

        The generator x of ``sub`` is sent to the least root of its modulus in
        self, which makes the map deterministic.
        """
        if sub.p != self.p or self.m % sub.m:
            raise MixedFields(f"{sub!r} is not a subfield of {self!r}")
        if sub.m == 1:
            return list(range(self.p))
        coeffs = list(reversed(sub.modulus))  # low degree first

        def value_at(z):
            acc = 0
            for c in reversed(coeffs):
                acc = self.add(self.mul(acc, z), c)
            return acc

        root = next(z for z in range(self.q) if value_at(z) == 0)
        powers = [1]
        for _ in range(sub.m - 1):
            powers.append(self.mul(powers[-1], root))
        images = []
        for a in range(sub.q):
            acc = 0
            for i, d in enumerate(sub._digits(a)):
                if d:
                    acc = self.add(acc, self.mul(d, powers[i]))
            images.append(acc)
        return images


@lru_cache(maxsize=None)
def default_modulus(p: int, m: int) -> tuple:
    """Lexicographically least monic irreducible polynomial whose root x is primitive.

    This is the Conway-style choice: x^3 + x + 1 for GF(8), x^2 + x + 1 for GF(4).
    """
    q = p**m
    factors = _prime_factors(q - 1) if q > 2 else []
    for low_first in _monic_polys(m, p):
        high_first = tuple(reversed(low_first))
        if m > 1 and not is_irreducible(high_first, p):
            continue
        trial = FieldSpec(p, m, high_first)
        x = p if m > 1 else (-low_first[0]) % p
        if trial._order_is_full(x, factors):
            return high_first
    raise ReducibleModulus(f"no primitive polynomial found for GF({p}^{m})")


@lru_cache(maxsize=None)
def field_make(p: int, m: int = 1, modulus: tuple | None = None) -> FieldSpec:
    """Build GF(p^m); the default modulus is chosen deterministically."""
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if not 1 <= m <= MAX_DEGREE or p**m > MAX_ORDER:
        raise SizeCapExceeded(f"GF({p}^{m}) exceeds the field size cap")
    if modulus is None:
        modulus = default_modulus(p, m)
    modulus = tuple(int(c) % p for c in modulus)
    if len(modulus) != m + 1 or modulus[0] != 1:
        raise ReducibleModulus(f"modulus must be monic of degree {m}")
    if not is_irreducible(modulus, p):
        raise ReducibleModulus(f"{modulus} is reducible over GF({p})")
    return FieldSpec(p, m, modulus)


GF = field_make


def field_of_order(q: int) -> FieldSpec:
    """GF(q) with the default modulus; q must be a prime power."""
    for p in range(2, q + 1):
        if q % p == 0:
            m = 0
            n = q
            while n % p == 0:
                n //= p
                m += 1
            if n != 1:
                raise NonPrimeCharacteristic(f"{q} is not a prime power")
            return field_make(p, m)
    raise NonPrimeCharacteristic(f"{q} is not a prime power")


def primitive_element(spec: FieldSpec) -> "FieldElem":
    return spec.primitive_element()


class FieldElem:
    """An element of a FieldSpec with the usual arithmetic operators."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value: int):
        self.spec = spec
        self.value = value

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise MixedFields(f"{self.spec!r} and {other.spec!r}")
            return other.value
        if isinstance(other, int):
            # integers act through the prime subfield
            return other % self.spec.p
        return NotImplemented

    def _wrap(self, v):
        return FieldElem(self.spec, v)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.spec.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.spec.neg(self.value))

    def __pow__(self, e: int):
        return self._wrap(self.spec.pow(self.value, e))

    def inverse(self):
        return self._wrap(self.spec.inv(self.value))

    def order(self) -> int:
        return self.spec.order(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.spec.p and self.value < self.spec.p
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __lt__(self, other):
        return self.value < self._coerce(other)

    def __repr__(self):
        return f"{self.spec!r}({self.spec.format(self.value)})"

    def __str__(self):
        return self.spec.format(self.value)
