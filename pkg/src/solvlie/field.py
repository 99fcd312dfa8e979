"""Exact scalar arithmetic over Q, prime fields F_p and extensions F_{p^m}.

Scalars are immutable ``FieldElement`` values tied to a ``FieldSpec``:

* characteristic 0 -- reduced ``Fraction`` values,
* prime fields     -- integers in ``0..p-1``,
* extension fields -- residues modulo a fixed monic irreducible polynomial,
  stored as little-endian coefficient tuples of length ``m``.

Textual formats: rationals ``n/d``, prime-field elements ``0..p-1``,
extension elements as comma-separated little-endian coefficient lists.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "FieldSpec",
    "FieldElement",
    "QQ",
    "GF",
    "field_from_text",
    "is_square",
    "sqrt_element",
    "exists_scaling",
    "artin_schreier_solvable",
    "t2_minus_t_has_root",
    "DEFAULT_MODULI",
]

# Fixed modulus per (p, m) so serialized elements are reproducible.
DEFAULT_MODULI = {
    (2, 2): (1, 1, 1),        # t^2 + t + 1
    (2, 3): (1, 1, 0, 1),     # t^3 + t + 1
    (2, 4): (1, 1, 0, 0, 1),  # t^4 + t + 1
    (3, 2): (1, 0, 1),        # t^2 + 1
    (3, 3): (1, 2, 0, 1),     # t^3 + 2t + 1
    (3, 4): (2, 1, 0, 0, 1),  # t^4 + t + 2
    (5, 2): (2, 0, 1),        # t^2 + 2
    (7, 2): (1, 0, 1),        # t^2 + 1
}


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


# ---------------------------------------------------------------------------
# dense little-endian polynomial helpers over F_p (plain int lists)
# ---------------------------------------------------------------------------

def _poly_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], -1, p)
    while len(a) - 1 >= dm and a:
        _poly_trim(a)
        if len(a) - 1 < dm or not a:
            break
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * mi) % p
        _poly_trim(a)
    return a


def _poly_divmod(a, b, p):
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    inv_lead = pow(b[-1], -1, p)
    while a and len(a) >= len(b):
        coef = (a[-1] * inv_lead) % p
        shift = len(a) - len(b)
        q[shift] = coef
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * bi) % p
        _poly_trim(a)
    return _poly_trim(q), a


def _poly_inverse_mod(a, m, p):
    # extended Euclid in F_p[t]
    r0, r1 = list(m), _poly_trim(list(a))
    if not r1:
        raise ZeroDivisionError("inverse of zero residue")
    s0, s1 = [], [1]
    while r1:
        q, r = _poly_divmod(r0, r1, p)
        r0, r1 = r1, r
        qs = _poly_mul(q, s1, p)
        s = [(x - y) % p for x, y in itertools.zip_longest(s0, qs, fillvalue=0)]
        s0, s1 = s1, _poly_trim(s)
    # r0 = gcd, a unit since m is irreducible and a != 0
    if len(r0) != 1:
        raise ZeroDivisionError("residue not invertible")
    c = pow(r0[0], -1, p)
    return _poly_trim([(c * x) % p for x in s0])


def poly_is_irreducible(coeffs, p: int) -> bool:
    """No root in F_p and no monic factor of degree <= deg/2, by trial division."""
    c = _poly_trim(list(coeffs))
    deg = len(c) - 1
    if deg < 1:
        return False
    if deg == 1:
        return True
    for x in range(p):
        acc = 0
        for ci in reversed(c):
            acc = (acc * x + ci) % p
        if acc == 0:
            return False
    for d in range(2, deg // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            f = list(tail) + [1]
            _, r = _poly_divmod(list(c), f, p)
            if not r:
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Ground field description: characteristic 0 means Q."""

    characteristic: int
    degree: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        p, m = self.characteristic, self.degree
        if p == 0:
            if m != 1 or self.modulus is not None:
                raise FieldError("rational field takes degree 1 and no modulus")
            return
        if not _is_prime(p):
            raise FieldError(f"characteristic {p} is not 0 or prime")
        if m < 1:
            raise FieldError("degree must be positive")
        if m == 1:
            if self.modulus is not None:
                raise FieldError("prime field takes no modulus")
            return
        mod = self.modulus
        if mod is None:
            mod = DEFAULT_MODULI.get((p, m))
            if mod is None:
                raise FieldError(f"no default modulus for GF({p}^{m}); pass one")
            object.__setattr__(self, "modulus", mod)
            return
        mod = tuple(c % p for c in mod)
        if len(mod) != m + 1 or mod[-1] != 1:
            raise FieldError("modulus must be monic of degree equal to the field degree")
        if not poly_is_irreducible(mod, p):
            raise FieldError("modulus is reducible")
        object.__setattr__(self, "modulus", mod)

    # -- basic structure ----------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.characteristic == 0

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def q(self) -> int:
        if self.is_rational:
            raise FieldError("rational field has no size")
        return self.characteristic ** self.degree

    def __str__(self):
        if self.is_rational:
            return "Q"
        if self.degree == 1:
            return f"F{self.characteristic}"
        mono = _poly_text(self.modulus)
        return f"F{self.q}:{mono}"

    # -- element construction ----------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldError("element belongs to a different field")
            return value
        p, m = self.characteristic, self.degree
        if p == 0:
            return FieldElement(self, Fraction(value))
        if isinstance(value, Fraction):
            if value.denominator % p == 0:
                raise FieldError(f"denominator not invertible mod {p}")
            value = value.numerator * pow(value.denominator, -1, p)
        if isinstance(value, int):
            if m == 1:
                return FieldElement(self, value % p)
            return FieldElement(self, (value % p,) + (0,) * (m - 1))
        if isinstance(value, (tuple, list)):
            if m == 1:
                raise FieldError("prime-field elements are integers")
            coeffs = [c % p for c in value]
            if len(coeffs) > m:
                coeffs = _poly_mod(coeffs, list(self.modulus), p)
            coeffs = (coeffs + [0] * m)[:m]
            return FieldElement(self, tuple(coeffs))
        raise FieldError(f"cannot coerce {value!r} into {self}")

    @property
    def zero(self) -> "FieldElement":
        return self.element(0)

    @property
    def one(self) -> "FieldElement":
        return self.element(1)

    def parse(self, text: str) -> "FieldElement":
        """Parse the textual scalar format of this field."""
        text = text.strip()
        if self.is_rational:
            return FieldElement(self, Fraction(text))
        if self.degree == 1:
            return self.element(int(text))
        return self.element([int(t) for t in text.split(",")])

    def elements(self):
        """All field elements in coefficient-value order (finite fields only)."""
        p, m = self.characteristic, self.degree
        if p == 0:
            raise FieldError("rational field is infinite")
        if m == 1:
            for v in range(p):
                yield FieldElement(self, v)
        else:
            for digits in itertools.product(range(p), repeat=m):
                # digits run most-significant first so values come out ordered
                yield FieldElement(self, tuple(reversed(digits)))

    def from_index(self, n: int) -> "FieldElement":
        """Element whose coefficient-value index is ``n`` (finite fields only)."""
        p, m = self.characteristic, self.degree
        if p == 0:
            raise FieldError("rational field is not indexed")
        if not 0 <= n < self.q:
            raise FieldError("index out of range")
        if m == 1:
            return FieldElement(self, n)
        coeffs = []
        for _ in range(m):
            n, c = divmod(n, p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))


def _poly_text(coeffs) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        if i == 0:
            parts.append(str(c))
        else:
            t = "t" if i == 1 else f"t^{i}"
            parts.append(t if c == 1 else f"{c}*{t}")
    return "+".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def QQ() -> FieldSpec:
    return FieldSpec(0)


@lru_cache(maxsize=None)
def GF(q: int, modulus: tuple[int, ...] | None = None) -> FieldSpec:
    """Finite field with q = p^m elements, using the default modulus unless given."""
    if q < 2:
        raise FieldError("field size must be at least 2")
    p = None
    for f in range(2, q + 1):
        if q % f == 0:
            p = f
            break
    m = 0
    n = q
    while n % p == 0:
        n //= p
        m += 1
    if n != 1:
        raise FieldError(f"{q} is not a prime power")
    if m == 1:
        return FieldSpec(p)
    return FieldSpec(p, m, modulus)


def field_from_text(text: str) -> FieldSpec:
    """Parse field syntax: ``Q``, ``F5``, ``F4``, ``F4:t^2+t+1``."""
    text = text.strip()
    if text in ("Q", "QQ", "q"):
        return QQ()
    if not text.startswith(("F", "f")):
        raise FieldError(f"cannot parse field {text!r}")
    body = text[1:]
    if ":" in body:
        qs, mono = body.split(":", 1)
        q = int(qs)
        spec = GF(q)  # determines p, m
        coeffs = _parse_modulus_text(mono, spec.characteristic, spec.degree)
        return GF(q, coeffs) if spec.degree > 1 else spec
    return GF(int(body))


def _parse_modulus_text(text: str, p: int, m: int) -> tuple[int, ...]:
    coeffs = [0] * (m + 1)
    for raw in text.replace("-", "+-").split("+"):
        term = raw.strip()
        if not term:
            continue
        if "t" in term:
            head, _, exp = term.partition("t")
            head = head.rstrip("*").strip()
            c = int(head) if head not in ("", "-") else (-1 if head == "-" else 1)
            e = int(exp[1:]) if exp.startswith("^") else 1
        else:
            c, e = int(term), 0
        if e > m:
            raise FieldError("modulus degree too large")
        coeffs[e] = (coeffs[e] + c) % p
    return tuple(coeffs)


class FieldElement:
    """Immutable exact scalar; arithmetic via the usual operators."""

    __slots__ = ("spec", "value")

    def __init__(self, spec: FieldSpec, value):
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *args):
        raise AttributeError("FieldElement is immutable")

    # -- coercion -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldError("field mismatch")
            return other
        if isinstance(other, int):
            return self.spec.element(other)
        return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        spec = self.spec
        p = spec.characteristic
        if p == 0:
            return FieldElement(spec, self.value + other.value)
        if spec.degree == 1:
            return FieldElement(spec, (self.value + other.value) % p)
        return FieldElement(
            spec, tuple((a + b) % p for a, b in zip(self.value, other.value))
        )

    __radd__ = __add__

    def __neg__(self):
        spec = self.spec
        p = spec.characteristic
        if p == 0:
            return FieldElement(spec, -self.value)
        if spec.degree == 1:
            return FieldElement(spec, (-self.value) % p)
        return FieldElement(spec, tuple((-a) % p for a in self.value))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        spec = self.spec
        p = spec.characteristic
        if p == 0:
            return FieldElement(spec, self.value * other.value)
        if spec.degree == 1:
            return FieldElement(spec, (self.value * other.value) % p)
        prod = _poly_mul(list(self.value), list(other.value), p)
        prod = _poly_mod(prod, list(spec.modulus), p)
        return FieldElement(spec, tuple((prod + [0] * spec.degree)[: spec.degree]))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        spec = self.spec
        p = spec.characteristic
        if self.is_zero():
            raise ZeroDivisionError("field inverse of zero")
        if p == 0:
            return FieldElement(spec, 1 / self.value)
        if spec.degree == 1:
            return FieldElement(spec, pow(self.value, -1, p))
        inv = _poly_inverse_mod(list(self.value), list(spec.modulus), p)
        return FieldElement(spec, tuple((inv + [0] * spec.degree)[: spec.degree]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- predicates and structure -------------------------------------------

    def is_zero(self) -> bool:
        if self.spec.characteristic == 0:
            return self.value == 0
        if self.spec.degree == 1:
            return self.value == 0
        return all(c == 0 for c in self.value)

    def is_one(self) -> bool:
        return self == self.spec.one

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.spec.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.value == other.value

    def __hash__(self):
        return hash((self.spec, self.value))

    def index(self) -> int:
        """Coefficient-value index of a finite-field element."""
        spec = self.spec
        if spec.is_rational:
            raise FieldError("rational elements are not indexed")
        if spec.degree == 1:
            return self.value
        return sum(c * spec.characteristic**i for i, c in enumerate(self.value))

    # -- text ---------------------------------------------------------------

    def __str__(self):
        if self.spec.characteristic == 0:
            return str(self.value)
        if self.spec.degree == 1:
            return str(self.value)
        return ",".join(str(c) for c in self.value)

    def __repr__(self):
        return f"<{self} in {self.spec}>"


# ---------------------------------------------------------------------------
# scalar predicates
# ---------------------------------------------------------------------------

def _int_nth_root(n: int, e: int):
    """Exact integer e-th root of n >= 0, or None."""
    if n < 0:
        raise ValueError("negative radicand")
    if n in (0, 1):
        return n
    if e == 2:
        r = math.isqrt(n)
        return r if r * r == n else None
    r = round(n ** (1.0 / e))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**e == n:
            return cand
    return None


def is_square(x: FieldElement) -> bool:
    """True iff some y in the same field satisfies y*y = x."""
    spec = x.spec
    if spec.is_rational:
        v = x.value
        if v < 0:
            return False
        return (
            _int_nth_root(v.numerator, 2) is not None
            and _int_nth_root(v.denominator, 2) is not None
        )
    if spec.characteristic == 2:
        return True  # Frobenius is onto in a finite field
    if x.is_zero():
        return True
    return (x ** ((spec.q - 1) // 2)).is_one()


def sqrt_element(x: FieldElement):
    """Some y with y*y = x, or None.  Search over finite fields, exact over Q."""
    spec = x.spec
    if spec.is_rational:
        v = x.value
        if v < 0:
            return None
        a = _int_nth_root(v.numerator, 2)
        b = _int_nth_root(v.denominator, 2)
        if a is None or b is None:
            return None
        return spec.element(Fraction(a, b))
    for y in spec.elements():
        if y * y == x:
            return y
    return None


def exists_scaling(a: FieldElement, c: FieldElement, e: int) -> bool:
    """True iff a = alpha^e * c for some nonzero alpha."""
    if a.spec != c.spec:
        raise FieldError("field mismatch")
    if e < 1:
        raise ValueError("exponent must be positive")
    if c.is_zero():
        return a.is_zero()
    if a.is_zero():
        return False
    r = a / c
    spec = a.spec
    if spec.is_finite:
        # r must lie in the subgroup of e-th powers, of index gcd(e, q-1)
        g = math.gcd(e, spec.q - 1)
        return (r ** ((spec.q - 1) // g)).is_one()
    v = r.value
    num, den = v.numerator, v.denominator
    if e % 2 == 0 and v < 0:
        return False
    sign = -1 if num < 0 else 1
    return (
        _int_nth_root(abs(num), e) is not None
        and _int_nth_root(den, e) is not None
        and (sign == 1 or e % 2 == 1)
    )


def artin_schreier_solvable(u: FieldElement) -> bool:
    """Whether X^2 + X + u has a root over F_{2^m}: absolute trace of u is 0."""
    spec = u.spec
    if spec.characteristic != 2:
        raise FieldError("Artin-Schreier test requires characteristic 2")
    tr = spec.zero
    acc = u
    for _ in range(spec.degree):
        tr = tr + acc
        acc = acc * acc
    return tr.is_zero()


def t2_minus_t_has_root(v: FieldElement) -> bool:
    """Whether T^2 - T - v has a root in the base field."""
    spec = v.spec
    if spec.characteristic == 2:
        return artin_schreier_solvable(v)
    disc = spec.one + 4 * v
    return is_square(disc)


# ---------------------------------------------------------------------------
# square/cube class canonical representatives (used for canonical labels)
# ---------------------------------------------------------------------------

def _factor_int(n: int):
    n = abs(n)
    out = {}
    f = 2
    while f * f <= n:
        while n % f == 0:
            out[f] = out.get(f, 0) + 1
            n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out

def power_free_part(x: FieldElement, e: int) -> FieldElement:
    """Canonical representative of x modulo nonzero e-th power scalings.

    Over Q: the e-th-power-free integer in the class (sign kept only when
    -1 is not an e-th power).  Over a finite field: the element of minimal
    coefficient-value index in the class.
    """
    spec = x.spec
    if x.is_zero():
        return x
    if spec.is_finite:
        best = x
        for alpha in spec.elements():
            if alpha.is_zero():
                continue
            y = alpha**e * x
            if y.index() < best.index():
                best = y
        return best
    v = x.value
    n = v.numerator * v.denominator ** (e - 1)  # x * d^e = n * d^(e-1)
    if e % 2 == 0:
        sign = -1 if n < 0 else 1
    else:
        sign = 1  # -1 is an odd power of -1
    core = 1
    for prime, mult in _factor_int(n).items():
        core *= prime ** (mult % e)
    return spec.element(sign * core)
