"""Multivariate polynomials with pure lexicographic order and Buchberger's
algorithm with reduced output.

The variable order is the declared order of the ring: earlier names are
larger.  Callers put auxiliary inverse markers (D's) highest, map unknowns
in the middle and structure parameters lowest, so elimination exposes
conditions on the parameters.

Coordinate tracking keeps, for every basis element, polynomials p_i with
``sum p_i * gens_i = basis element``; over Q the tracked computation is kept
fraction-free (joint content removal) so the certificates stay integral
whenever possible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from solvlie.field import FieldElement, FieldError, FieldSpec, GF

__all__ = [
    "PolyRing",
    "MultiPoly",
    "GroebnerBasis",
    "buchberger",
    "reduce_poly",
    "coordinates",
    "bad_characteristics",
    "NotInIdealError",
]


class NotInIdealError(ValueError):
    pass


@dataclass(frozen=True)
class PolyRing:
    variables: tuple[str, ...]
    field: FieldSpec

    def __post_init__(self):
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate ring variables")

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise ValueError(f"unknown variable {name!r}") from None

    def zero(self) -> "MultiPoly":
        return MultiPoly(self, {})

    def constant(self, c) -> "MultiPoly":
        c = self.field.element(c)
        if c.is_zero():
            return self.zero()
        return MultiPoly(self, {(0,) * len(self.variables): c})

    def one(self) -> "MultiPoly":
        return self.constant(1)

    def variable(self, name: str) -> "MultiPoly":
        exp = [0] * len(self.variables)
        exp[self.index(name)] = 1
        return MultiPoly(self, {tuple(exp): self.field.one})

    def parse(self, text: str) -> "MultiPoly":
        return _parse_poly(self, text)


class MultiPoly:
    """Exact multivariate polynomial; terms map exponent tuples to nonzero
    coefficients, ordered by pure lex on the ring's variable order."""

    __slots__ = ("ring", "terms", "_lead")

    def __init__(self, ring: PolyRing, terms):
        clean = {e: c for e, c in terms.items() if c}
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_lead", max(clean) if clean else None)

    def __setattr__(self, *a):
        raise AttributeError("MultiPoly is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return self._lead is None or not any(self._lead)

    def lead_monomial(self):
        if self._lead is None:
            raise ValueError("zero polynomial has no leading term")
        return self._lead

    def lead_coeff(self) -> FieldElement:
        return self.terms[self.lead_monomial()]

    def _same_ring(self, other):
        if self.ring != other.ring:
            raise FieldError("polynomial ring mismatch")

    def __eq__(self, other):
        return (
            isinstance(other, MultiPoly)
            and self.ring == other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ring, tuple(sorted(self.terms.items()))))

    def __add__(self, other):
        self._same_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e)
            s = c if s is None else s + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly(self.ring, out)

    def __neg__(self):
        return MultiPoly(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, FieldElement, Fraction)):
            return self.scale(other)
        self._same_ring(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                s = out.get(e)
                s = c if s is None else s + c
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = self.ring.field.element(c)
        if not c:
            return self.ring.zero()
        return MultiPoly(self.ring, {e: c * v for e, v in self.terms.items()})

    def term_mul(self, coeff: FieldElement, exp) -> "MultiPoly":
        if not coeff:
            return self.ring.zero()
        return MultiPoly(
            self.ring,
            {
                tuple(a + b for a, b in zip(e, exp)): coeff * c
                for e, c in self.terms.items()
            },
        )

    def substitute(self, assignment: dict) -> "MultiPoly":
        """Specialize variables to field elements (staying in the same ring)."""
        idx = {self.ring.index(k): self.ring.field.element(v) for k, v in assignment.items()}
        out = self.ring.zero()
        for e, c in self.terms.items():
            coeff = c
            new_e = list(e)
            for i, val in idx.items():
                if e[i]:
                    coeff = coeff * val ** e[i]
                    new_e[i] = 0
            out = out + MultiPoly(self.ring, {tuple(new_e): coeff})
        return out

    def variables_present(self):
        present = set()
        for e in self.terms:
            for i, d in enumerate(e):
                if d:
                    present.add(i)
        return present

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def map_to_ring(self, ring: PolyRing) -> "MultiPoly":
        """Reinterpret over another ring with the same variable names."""
        if ring.variables != self.ring.variables:
            raise ValueError("variable mismatch")
        src = self.ring.field
        out = {}
        for e, c in self.terms.items():
            if src.is_rational and ring.field.is_finite:
                val = ring.field.element(c.value)  # Fraction, reduced mod p
            else:
                val = ring.field.element(c.value)
            if val:
                out[e] = val
        return MultiPoly(ring, out)

    def __str__(self):
        return _poly_text(self)

    def __repr__(self):
        return f"MultiPoly({self})"


# ---------------------------------------------------------------------------
# monomial helpers
# ---------------------------------------------------------------------------

def _mono_divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# content normalization over Q (fraction-free tracking)
# ---------------------------------------------------------------------------

def _poly_content(p: MultiPoly) -> Fraction:
    """Positive rational c with p/c integral and primitive; 0 for p = 0."""
    num = 0
    den = 1
    for c in p.terms.values():
        v = c.value
        num = gcd(num, abs(v.numerator))
        den = lcm(den, v.denominator)
    if num == 0:
        return Fraction(0)
    return Fraction(num, den)


def _joint_normalize(poly: MultiPoly, coords):
    """Scale (poly, coords) by a unit: positive leading coefficient and the
    largest content divisible out of all components simultaneously."""
    if poly.is_zero():
        return poly, coords
    field = poly.ring.field
    if field.is_finite:
        inv = poly.lead_coeff().inverse()
        poly = poly.scale(inv)
        if coords is not None:
            coords = [c.scale(inv) for c in coords]
        return poly, coords
    content = _poly_content(poly)
    if coords is not None:
        for c in coords:
            if not c.is_zero():
                content = _gcd_fraction(content, _poly_content(c))
    if poly.lead_coeff().value < 0:
        content = -content
    if content not in (0, 1):
        inv = Fraction(1) / content
        poly = poly.scale(inv)
        if coords is not None:
            coords = [c.scale(inv) for c in coords]
    return poly, coords


def _gcd_fraction(a: Fraction, b: Fraction) -> Fraction:
    if a == 0:
        return abs(b)
    if b == 0:
        return abs(a)
    return Fraction(
        gcd(a.numerator, b.numerator), lcm(a.denominator, b.denominator)
    )


# ---------------------------------------------------------------------------
# reduction
# ---------------------------------------------------------------------------

def _normal_form(f: MultiPoly, reducers, want_quotients=False):
    """Full normal form of f against an ordered reducer list, by exact
    division.  Optionally returns the quotients q with f = sum q_k g_k + r."""
    ring = f.ring
    quotients = [ring.zero() for _ in reducers] if want_quotients else None
    h = f
    lead_data = [(g.lead_monomial(), g.lead_coeff()) for g in reducers]
    while not h.is_zero():
        reduced = False
        for mono in sorted(h.terms, reverse=True):
            coeff = h.terms[mono]
            for k, (lm, lc) in enumerate(lead_data):
                if _mono_divides(lm, mono):
                    mult = coeff / lc
                    shift = _mono_sub(mono, lm)
                    h = h - reducers[k].term_mul(mult, shift)
                    if want_quotients:
                        quotients[k] = quotients[k] + MultiPoly(
                            ring, {shift: mult}
                        )
                    reduced = True
                    break
            if reduced:
                break
        if not reduced:
            break
    return (h, quotients) if want_quotients else h


def _ff_reduce(h: MultiPoly, hcoords, reducers):
    """Fraction-free full reduction for tracked computations over Q.

    reducers: list of (poly, coords).  Multiplies h through by reducer
    leading coefficients instead of dividing, so integrality is preserved;
    the result is a unit multiple of the true normal form.
    """
    while not h.is_zero():
        reduced = False
        for mono in sorted(h.terms, reverse=True):
            coeff = h.terms[mono]
            for g, gcoords in reducers:
                lm = g.lead_monomial()
                if _mono_divides(lm, mono):
                    lc = g.lead_coeff()
                    shift = _mono_sub(mono, lm)
                    h = h.scale(lc) - g.term_mul(coeff, shift)
                    if hcoords is not None:
                        hcoords = [
                            a.scale(lc) - b.term_mul(coeff, shift)
                            for a, b in zip(hcoords, gcoords)
                        ]
                    h, hcoords = _joint_normalize(h, hcoords)
                    reduced = True
                    break
            if reduced:
                break
        if not reduced:
            break
    return h, hcoords


# ---------------------------------------------------------------------------
# Buchberger
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroebnerBasis:
    generators: tuple
    basis: tuple
    coordinates: tuple | None = None  # coordinates[k][i]: basis_k = sum_i p_i gens_i

    @property
    def ring(self) -> PolyRing:
        if self.generators:
            return self.generators[0].ring
        return self.basis[0].ring

    def is_trivial(self) -> bool:
        """Whether the basis is {1}."""
        return len(self.basis) == 1 and self.basis[0].is_constant() and not self.basis[0].is_zero()


def buchberger(gens, track: bool = False) -> GroebnerBasis:
    """Reduced lexicographic Groebner basis, deterministically.

    Pair selection is the normal strategy (smallest lcm in lex order);
    pairs are discarded by the coprimality and chain criteria.
    """
    gens = list(gens)
    if not gens:
        return GroebnerBasis((), (), () if track else None)
    ring = gens[0].ring
    for g in gens:
        if g.ring != ring:
            raise FieldError("generators live in different rings")
    rational = ring.field.is_rational

    items = []  # (poly, coords or None)
    for i, g in enumerate(gens):
        if g.is_zero():
            continue
        coords = None
        if track:
            coords = [ring.zero()] * len(gens)
            coords[i] = ring.one()
        items.append(_joint_normalize(g, coords))

    pending = set()
    for i in range(len(items)):
        for j in range(i):
            pending.add((j, i))

    def lcm_of(i, j):
        return _mono_lcm(items[i][0].lead_monomial(), items[j][0].lead_monomial())

    while pending:
        i, j = min(pending, key=lambda p: (lcm_of(*p), p))
        pending.discard((i, j))
        fi, ci = items[i]
        fj, cj = items[j]
        lmi, lmj = fi.lead_monomial(), fj.lead_monomial()
        lcm_m = _mono_lcm(lmi, lmj)
        # coprimality criterion
        if lcm_m == tuple(a + b for a, b in zip(lmi, lmj)):
            continue
        # chain criterion
        skip = False
        for k in range(len(items)):
            if k in (i, j):
                continue
            if _mono_divides(items[k][0].lead_monomial(), lcm_m):
                a = (min(i, k), max(i, k))
                b = (min(j, k), max(j, k))
                if a not in pending and b not in pending:
                    skip = True
                    break
        if skip:
            continue
        # cross-multiplied S-polynomial (fraction-free over Q)
        mi = _mono_sub(lcm_m, lmi)
        mj = _mono_sub(lcm_m, lmj)
        s = fi.term_mul(fj.lead_coeff(), mi) - fj.term_mul(fi.lead_coeff(), mj)
        scoords = None
        if track:
            scoords = [
                a.term_mul(fj.lead_coeff(), mi) - b.term_mul(fi.lead_coeff(), mj)
                for a, b in zip(ci, cj)
            ]
        if rational:
            s, scoords = _joint_normalize(s, scoords)
            s, scoords = _ff_reduce(s, scoords, items)
        else:
            h, q = _normal_form(s, [it[0] for it in items], want_quotients=True)
            if track:
                for k, qk in enumerate(q):
                    if not qk.is_zero():
                        scoords = [
                            a - qk * b for a, b in zip(scoords, items[k][1])
                        ]
            s = h
            s, scoords = _joint_normalize(s, scoords)
        if s.is_zero():
            continue
        items.append(_joint_normalize(s, scoords))
        new = len(items) - 1
        for k in range(new):
            pending.add((k, new))

    # minimal basis: drop elements whose lead is divisible by another lead
    order = sorted(range(len(items)), key=lambda k: items[k][0].lead_monomial())
    kept = []
    for k in order:
        lm = items[k][0].lead_monomial()
        if any(_mono_divides(items[t][0].lead_monomial(), lm) for t in kept):
            continue
        kept.append(k)

    # interreduce tails, then make monic
    reduced = []
    for pos, k in enumerate(kept):
        others = [items[t] for t in kept if t != k]
        poly, coords = items[k]
        if rational and track:
            poly, coords = _ff_reduce(poly, coords, others)
        else:
            h, q = _normal_form(poly, [o[0] for o in others], want_quotients=True)
            if track:
                for t, qt in enumerate(q):
                    if not qt.is_zero():
                        coords = [a - qt * b for a, b in zip(coords, others[t][1])]
            poly = h
        if poly.is_zero():
            raise AssertionError("minimal basis element reduced to zero")
        lc = poly.lead_coeff()
        if not lc.is_one():
            inv = lc.inverse()
            poly = poly.scale(inv)
            if track:
                coords = [c.scale(inv) for c in coords]
        reduced.append((poly, coords))

    reduced.sort(key=lambda it: it[0].lead_monomial(), reverse=True)
    basis = tuple(p for p, _ in reduced)
    coords_out = None
    if track:
        coords_out = tuple(tuple(c) for _, c in reduced)
        for poly, coords in reduced:
            acc = ring.zero()
            for p_i, g_i in zip(coords, gens):
                acc = acc + p_i * g_i
            if acc != poly:
                raise AssertionError("coordinate identity failed")
    return GroebnerBasis(tuple(gens), basis, coords_out)


def reduce_poly(f: MultiPoly, gb: GroebnerBasis) -> MultiPoly:
    """Normal form of f modulo the reduced basis; zero iff f is in the ideal."""
    if gb.basis and f.ring != gb.basis[0].ring:
        raise FieldError("polynomial ring mismatch")
    if not gb.basis:
        return f
    return _normal_form(f, list(gb.basis))


def coordinates(gb: GroebnerBasis, f: MultiPoly):
    """Certificate p with sum p_i * generators_i = f, verified by expansion.

    Requires tracking; raises NotInIdealError when f is not in the ideal.
    Prefers a denominator-free certificate when one was found.
    """
    if gb.coordinates is None:
        raise ValueError("Groebner basis was computed without tracking")
    ring = f.ring
    candidates = []
    for i, g in enumerate(gb.generators):
        if g == f:
            unit = [ring.zero()] * len(gb.generators)
            unit[i] = ring.one()
            candidates.append(unit)
            break
    for k, b in enumerate(gb.basis):
        if b == f:
            candidates.append(list(gb.coordinates[k]))
            break
    r, q = _normal_form(f, list(gb.basis), want_quotients=True)
    if not r.is_zero():
        raise NotInIdealError("polynomial does not reduce to zero")
    combo = [ring.zero()] * len(gb.generators)
    for k, qk in enumerate(q):
        if qk.is_zero():
            continue
        for i, c in enumerate(gb.coordinates[k]):
            if not c.is_zero():
                combo[i] = combo[i] + qk * c
    candidates.append(combo)
    chosen = None
    if ring.field.is_rational:
        for cand in candidates:
            if not bad_characteristics(cand):
                chosen = cand
                break
    if chosen is None:
        chosen = candidates[0]
    acc = ring.zero()
    for p_i, g_i in zip(chosen, gb.generators):
        acc = acc + p_i * g_i
    if acc != f:
        raise AssertionError("coordinate certificate failed to verify")
    return list(chosen)


def bad_characteristics(polys) -> set[int]:
    """Primes dividing any coefficient denominator of the given polynomials."""
    primes = set()
    for p in polys:
        if not p.ring.field.is_rational:
            raise FieldError("bad characteristics are defined over Q")
        for c in p.terms.values():
            d = c.value.denominator
            f = 2
            while f * f <= d:
                while d % f == 0:
                    primes.add(f)
                    d //= f
                f += 1 if f == 2 else 2
            if d > 1:
                primes.add(d)
    return primes


# ---------------------------------------------------------------------------
# text format: conventional infix with explicit '*' and '^' powers
# ---------------------------------------------------------------------------

def _coeff_text(c: FieldElement) -> str:
    spec = c.spec
    if spec.is_rational or spec.degree == 1:
        return str(c)
    return "(" + str(c) + ")"


def _poly_text(p: MultiPoly) -> str:
    if p.is_zero():
        return "0"
    ring = p.ring
    chunks = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        monos = []
        for i, d in enumerate(e):
            if d == 1:
                monos.append(ring.variables[i])
            elif d > 1:
                monos.append(f"{ring.variables[i]}^{d}")
        body = "*".join(monos)
        negative = False
        coeff = c
        if ring.field.is_rational and c.value < 0:
            negative = True
            coeff = -c
        if not body:
            text = _coeff_text(coeff)
        elif coeff.is_one():
            text = body
        else:
            text = f"{_coeff_text(coeff)}*{body}"
        if not chunks:
            chunks.append(f"-{text}" if negative else text)
        else:
            chunks.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(chunks)


def _tokenize(text: str):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        if ch in "+-*/^(),":
            tokens.append((ch, ch))
            i += 1
            continue
        raise ValueError(f"unexpected character {ch!r} at position {i}")
    return tokens


def _parse_poly(ring: PolyRing, text: str) -> MultiPoly:
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos][0] if pos < len(tokens) else None

    def take(kind=None):
        nonlocal pos
        if pos >= len(tokens):
            raise ValueError("unexpected end of polynomial")
        k, v = tokens[pos]
        if kind is not None and k != kind:
            raise ValueError(f"expected {kind}, found {v!r}")
        pos += 1
        return v

    def parse_coefficient():
        if peek() == "(":
            take("(")
            coords = [int(take("int"))]
            while peek() == ",":
                take(",")
                coords.append(int(take("int")))
            take(")")
            return ring.field.element(coords)
        num = int(take("int"))
        if peek() == "/":
            take("/")
            den = int(take("int"))
            return ring.field.element(Fraction(num, den))
        return ring.field.element(num)

    def parse_factor():
        if peek() in ("int", "("):
            return ring.constant(parse_coefficient())
        name = take("name")
        p = ring.variable(name)
        if peek() == "^":
            take("^")
            e = int(take("int"))
            out = ring.one()
            for _ in range(e):
                out = out * p
            return out
        return p

    def parse_term():
        out = parse_factor()
        while peek() == "*":
            take("*")
            out = out * parse_factor()
        return out

    result = ring.zero()
    sign = 1
    if peek() == "-":
        take("-")
        sign = -1
    elif peek() == "+":
        take("+")
    while True:
        term = parse_term()
        result = result + (term if sign > 0 else -term)
        nxt = peek()
        if nxt is None:
            break
        if nxt == "+":
            take("+")
            sign = 1
        elif nxt == "-":
            take("-")
            sign = -1
        else:
            raise ValueError(f"unexpected token {tokens[pos][1]!r}")
    return result
