"""Exact sparse multivariate polynomial arithmetic over the rationals.

Polynomials in two or three variables (three is also what elimination into
target coordinates needs) with Fraction coefficients, stored sparsely as a
map from exponent tuples to nonzero coefficients.  This is the arithmetic
substrate for the whole package; every operation is exact and nothing here
ever touches floating point.

The canonical term order is graded lexicographic with respect to the declared
variable order.  Normalisation conventions used throughout:

* ``gcd_poly`` and ``squarefree_part`` return monic results (leading
  coefficient 1 in the canonical order);
* ``resultant``, ``primitive_part`` and friends return primitive
  integer-coefficient results with positive leading coefficient.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Mapping, Sequence

Rat = Fraction
Exponent = tuple[int, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


class PolyParseError(ValueError):
    """Syntax or lookup error while parsing a polynomial expression.

    Carries ``position``, the 0-based offset into the source text.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class NotDivisibleError(ArithmeticError):
    """Raised by exact division when the divisor does not divide exactly."""


def grlex_key(exp: Exponent) -> tuple:
    """Sort key realising graded lexicographic order (larger key = larger term)."""
    return (sum(exp), exp)


class MPoly:
    """Immutable sparse polynomial with rational coefficients.

    ``vars`` is the ordered tuple of variable names, ``terms`` maps exponent
    tuples (one entry per variable) to nonzero Fractions.  Instances are
    treated as immutable: all arithmetic returns new objects.
    """

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exponent, Rat] | None = None):
        vs = tuple(vars)
        if len(set(vs)) != len(vs):
            raise ValueError(f"duplicate variable names in {vs!r}")
        clean: dict[Exponent, Rat] = {}
        if terms:
            n = len(vs)
            for exp, c in terms.items():
                coeff = Fraction(c)
                if coeff == 0:
                    continue
                e = tuple(exp)
                if len(e) != n or any(k < 0 for k in e):
                    raise ValueError(f"bad exponent {e!r} for variables {vs!r}")
                clean[e] = coeff
        object.__setattr__(self, "vars", vs)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):  # pragma: no cover - guard only
        raise AttributeError("MPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, vars: Sequence[str]) -> MPoly:
        return cls(vars, {})

    @classmethod
    def const(cls, vars: Sequence[str], value) -> MPoly:
        c = Fraction(value)
        if c == 0:
            return cls.zero(vars)
        return cls(vars, {(0,) * len(tuple(vars)): c})

    @classmethod
    def var(cls, vars: Sequence[str], name: str) -> MPoly:
        vs = tuple(vars)
        idx = vs.index(name)
        exp = [0] * len(vs)
        exp[idx] = 1
        return cls(vs, {tuple(exp): _ONE})

    @classmethod
    def monomial(cls, vars: Sequence[str], exp: Exponent, coeff=1) -> MPoly:
        return cls(vars, {tuple(exp): Fraction(coeff)})

    # -- basic queries ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def arity(self) -> int:
        return len(self.vars)

    def total_degree(self) -> int:
        if not self.terms:
            raise ValueError("degree of the zero polynomial is undefined")
        return max(sum(e) for e in self.terms)

    def order_at_origin(self) -> int:
        if not self.terms:
            raise ValueError("order of the zero polynomial is undefined")
        return min(sum(e) for e in self.terms)

    def deg_in(self, name: str) -> int:
        """Degree in one variable; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def lead_exponent(self) -> Exponent:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        return max(self.terms, key=grlex_key)

    def lead_coeff(self) -> Rat:
        return self.terms[self.lead_exponent()]

    def constant_term(self) -> Rat:
        return self.terms.get((0,) * self.arity, _ZERO)

    def coeff(self, exp: Exponent) -> Rat:
        return self.terms.get(tuple(exp), _ZERO)

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.vars, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    # -- arithmetic ---------------------------------------------------------

    def _check_same_ring(self, other: MPoly) -> None:
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch: {self.vars!r} vs {other.vars!r}")

    def __neg__(self) -> MPoly:
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __add__(self, other: MPoly) -> MPoly:
        self._check_same_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.vars, out)

    def __sub__(self, other: MPoly) -> MPoly:
        self._check_same_ring(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, _ZERO) - c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MPoly(self.vars, out)

    def __mul__(self, other) -> MPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._check_same_ring(other)
        if not self.terms or not other.terms:
            return MPoly.zero(self.vars)
        out: dict[Exponent, Rat] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, _ZERO) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def scale(self, c) -> MPoly:
        coeff = Fraction(c)
        if coeff == 0:
            return MPoly.zero(self.vars)
        return MPoly(self.vars, {e: coeff * v for e, v in self.terms.items()})

    def __pow__(self, n: int) -> MPoly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def shift(self, exp: Exponent, coeff=1) -> MPoly:
        """Multiply by coeff * x^exp (cheap monomial multiplication)."""
        c = Fraction(coeff)
        return MPoly(self.vars, {tuple(a + b for a, b in zip(e, exp)): c * v
                                 for e, v in self.terms.items()})

    def derivative(self, name: str) -> MPoly:
        i = self.vars.index(name)
        out: dict[Exponent, Rat] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            lowered = list(e)
            lowered[i] -= 1
            out[tuple(lowered)] = c * e[i]
        return MPoly(self.vars, out)

    def truncate(self, order: int) -> MPoly:
        """Drop all terms of total degree >= order."""
        return MPoly(self.vars, {e: c for e, c in self.terms.items() if sum(e) < order})

    # -- substitution and variable plumbing ----------------------------------

    def subs(self, name: str, value) -> MPoly:
        """Substitute a variable by a rational constant or by a polynomial.

        A polynomial value must live in the same variable tuple; the result
        keeps that tuple (use ``project_out`` to drop an unused variable).
        """
        i = self.vars.index(name)
        if isinstance(value, MPoly):
            self._check_same_ring(value)
            out = MPoly.zero(self.vars)
            for e, c in self.terms.items():
                rest = list(e)
                k = rest[i]
                rest[i] = 0
                term = MPoly(self.vars, {tuple(rest): c})
                out = out + term * (value ** k)
            return out
        val = Fraction(value)
        out_terms: dict[Exponent, Rat] = {}
        for e, c in self.terms.items():
            rest = list(e)
            k = rest[i]
            rest[i] = 0
            coeff = c * val ** k
            key = tuple(rest)
            s = out_terms.get(key, _ZERO) + coeff
            if s:
                out_terms[key] = s
            else:
                out_terms.pop(key, None)
        return MPoly(self.vars, out_terms)

    def project_out(self, name: str) -> MPoly:
        """Remove a variable that no longer occurs (exponent 0 everywhere)."""
        i = self.vars.index(name)
        if any(e[i] != 0 for e in self.terms):
            raise ValueError(f"variable {name!r} still occurs")
        new_vars = self.vars[:i] + self.vars[i + 1:]
        return MPoly(new_vars, {e[:i] + e[i + 1:]: c for e, c in self.terms.items()})

    def with_vars(self, new_vars: Sequence[str]) -> MPoly:
        """Re-express the polynomial in a superset/reordering of its variables."""
        nv = tuple(new_vars)
        pos = []
        for v in self.vars:
            if v not in nv:
                raise ValueError(f"variable {v!r} missing from {nv!r}")
            pos.append(nv.index(v))
        out: dict[Exponent, Rat] = {}
        for e, c in self.terms.items():
            exp = [0] * len(nv)
            for p, k in zip(pos, e):
                exp[p] = k
            out[tuple(exp)] = c
        return MPoly(nv, out)

    def rename_vars(self, mapping: Mapping[str, str]) -> MPoly:
        new_vars = tuple(mapping.get(v, v) for v in self.vars)
        return MPoly(new_vars, dict(self.terms))

    def evaluate(self, values: Mapping[str, Rat]) -> Rat:
        total = _ZERO
        idx = [self.vars.index(v) for v in self.vars]
        for e, c in self.terms.items():
            term = c
            for i in idx:
                k = e[i]
                if k:
                    term *= Fraction(values[self.vars[i]]) ** k
            total += term
        return total

    # -- printing -----------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponent, Rat]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}"
                for v, k in zip(self.vars, e) if k
            )
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MPoly({self.vars!r}, {str(self)})"


# -- expression parsing ------------------------------------------------------


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        pos = self.pos
        text = self.text
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            return ("end", "", pos)
        ch = text[pos]
        if ch.isdigit():
            j = pos
            while j < len(text) and text[j].isdigit():
                j += 1
            return ("int", text[pos:j], pos)
        if ch.isalpha() or ch == "_":
            j = pos
            while j < len(text) and (text[j].isalnum() or text[j] in "_'"):
                j += 1
            return ("name", text[pos:j], pos)
        if text.startswith("**", pos):
            return ("op", "^", pos)
        if ch in "+-*/^()":
            return ("op", ch, pos)
        raise PolyParseError(f"unexpected character {ch!r}", pos)

    def next(self) -> tuple[str, str, int]:
        kind, value, pos = self.peek()
        if kind == "end":
            self.pos = pos
        else:
            self.pos = pos + (2 if value == "^" and self.text.startswith("**", pos) else len(value))
        return (kind, value, pos)


def parse_poly(text: str, vars: Sequence[str]) -> MPoly:
    """Parse an expression in the declared variables into an MPoly.

    Grammar: ``+ - * ^`` (with ``**`` accepted for ``^``), parentheses,
    implicit multiplication by juxtaposition, integer and rational
    (``p/q``) literals.  Whitespace is insignificant.  Errors carry the
    offending position.
    """
    vs = tuple(vars)
    if len(vs) not in (2, 3) or len(set(vs)) != len(vs):
        raise ValueError(f"need 2 or 3 distinct variables, got {vs!r}")
    tk = _Tokenizer(text)

    def parse_expr() -> MPoly:
        kind, value, _ = tk.peek()
        if kind == "op" and value in "+-":
            tk.next()
            node = parse_term()
            if value == "-":
                node = -node
        else:
            node = parse_term()
        while True:
            kind, value, _ = tk.peek()
            if kind == "op" and value in "+-":
                tk.next()
                rhs = parse_term()
                node = node + rhs if value == "+" else node - rhs
            else:
                return node

    def parse_term() -> MPoly:
        node = parse_factor()
        while True:
            kind, value, pos = tk.peek()
            if kind == "op" and value == "*":
                tk.next()
                node = node * parse_factor()
            elif kind in ("name", "int") or (kind == "op" and value == "("):
                node = node * parse_factor()
            elif kind == "op" and value == "/":
                raise PolyParseError("'/' is only allowed inside rational literals", pos)
            else:
                return node

    def parse_factor() -> MPoly:
        node = parse_atom()
        kind, value, pos = tk.peek()
        if kind == "op" and value == "^":
            tk.next()
            kind2, value2, pos2 = tk.peek()
            negative = False
            if kind2 == "op" and value2 == "-":
                tk.next()
                negative = True
                kind2, value2, pos2 = tk.peek()
            if kind2 != "int":
                raise PolyParseError("exponent must be an integer literal", pos2)
            tk.next()
            if negative:
                raise PolyParseError("negative exponents are not allowed", pos2 - 1)
            return node ** int(value2)
        return node

    def parse_atom() -> MPoly:
        kind, value, pos = tk.next()
        if kind == "int":
            num = int(value)
            kind2, value2, _ = tk.peek()
            if kind2 == "op" and value2 == "/":
                tk.next()
                kind3, value3, pos3 = tk.next()
                if kind3 != "int":
                    raise PolyParseError("rational literal needs an integer denominator", pos3)
                den = int(value3)
                if den == 0:
                    raise PolyParseError("zero denominator", pos3)
                return MPoly.const(vs, Fraction(num, den))
            return MPoly.const(vs, num)
        if kind == "name":
            if value not in vs:
                raise PolyParseError(f"unknown variable {value!r}", pos)
            return MPoly.var(vs, value)
        if kind == "op" and value == "(":
            node = parse_expr()
            kind2, value2, pos2 = tk.next()
            if not (kind2 == "op" and value2 == ")"):
                raise PolyParseError("expected ')'", pos2)
            return node
        if kind == "op" and value == "-":
            return -parse_atom()
        raise PolyParseError(f"unexpected token {value!r}" if value else "unexpected end of input", pos)

    node = parse_expr()
    kind, value, pos = tk.peek()
    if kind != "end":
        raise PolyParseError(f"trailing input {value!r}", pos)
    return node


# -- division ----------------------------------------------------------------


def _exp_divides(a: Exponent, b: Exponent) -> bool:
    return all(x <= y for x, y in zip(a, b))


def divexact(p: MPoly, q: MPoly) -> MPoly:
    """Exact division: return p / q, raising NotDivisibleError otherwise."""
    p._check_same_ring(q)
    if q.is_zero:
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero:
        return MPoly.zero(p.vars)
    quot = MPoly.zero(p.vars)
    rem = p
    q_lead = q.lead_exponent()
    q_lc = q.terms[q_lead]
    while not rem.is_zero:
        lead = rem.lead_exponent()
        if not _exp_divides(q_lead, lead):
            raise NotDivisibleError(f"{q} does not divide {p}")
        mono_exp = tuple(a - b for a, b in zip(lead, q_lead))
        mono_coeff = rem.terms[lead] / q_lc
        quot = quot + MPoly.monomial(p.vars, mono_exp, mono_coeff)
        rem = rem - q.shift(mono_exp, mono_coeff)
    return quot


def poly_arith(op: str, p: MPoly, q: MPoly) -> MPoly:
    """Dispatch add/sub/mul/divexact by name (mirrors the operation table)."""
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    if op == "divexact":
        return divexact(p, q)
    raise ValueError(f"unknown operation {op!r}")


def divides(q: MPoly, p: MPoly) -> bool:
    try:
        divexact(p, q)
        return True
    except NotDivisibleError:
        return False


def is_associate(p: MPoly, q: MPoly) -> bool:
    """True when p and q differ by a nonzero rational factor."""
    if p.is_zero or q.is_zero:
        return p.is_zero and q.is_zero
    if set(p.terms) != set(q.terms):
        return False
    e0 = next(iter(p.terms))
    ratio = q.terms[e0] / p.terms[e0]
    return all(q.terms[e] == ratio * c for e, c in p.terms.items())


# -- normalisation -----------------------------------------------------------


def rational_content(p: MPoly) -> Rat:
    """Positive rational c with p/c primitive over the integers (0 for p=0)."""
    if p.is_zero:
        return _ZERO
    num = 0
    den = 1
    for c in p.terms.values():
        num = int_gcd(num, c.numerator)
        den = den * c.denominator // int_gcd(den, c.denominator)
    return Fraction(num, den)


def primitive_part(p: MPoly) -> MPoly:
    """Integer-primitive associate with positive leading coefficient."""
    if p.is_zero:
        return p
    c = rational_content(p)
    if p.lead_coeff() < 0:
        c = -c
    return p.scale(1 / c)


def monic(p: MPoly) -> MPoly:
    """Associate with leading coefficient 1 (zero stays zero)."""
    if p.is_zero:
        return p
    return p.scale(1 / p.lead_coeff())


# -- gcd, squarefree part ------------------------------------------------------


def _occurring_vars(p: MPoly) -> set[str]:
    out: set[str] = set()
    for e in p.terms:
        for v, k in zip(p.vars, e):
            if k:
                out.add(v)
    return out


def _as_univariate(p: MPoly, name: str) -> list[MPoly]:
    """Coefficient list [c_0, ..., c_d] of p as a polynomial in one variable.

    Coefficients keep the full variable tuple with exponent 0 in ``name``.
    """
    i = p.vars.index(name)
    d = p.deg_in(name)
    coeffs: list[dict[Exponent, Rat]] = [dict() for _ in range(d + 1)]
    for e, c in p.terms.items():
        rest = list(e)
        k = rest[i]
        rest[i] = 0
        coeffs[k][tuple(rest)] = c
    return [MPoly(p.vars, t) for t in coeffs]


def _from_univariate(coeffs: Sequence[MPoly], name: str, vars: Sequence[str]) -> MPoly:
    i = tuple(vars).index(name)
    out = MPoly.zero(vars)
    for k, c in enumerate(coeffs):
        if c.is_zero:
            continue
        exp = [0] * len(vars)
        exp[i] = k
        out = out + c.shift(tuple(exp))
    return out


def _uni_degree(coeffs: Sequence[MPoly]) -> int:
    for k in range(len(coeffs) - 1, -1, -1):
        if not coeffs[k].is_zero:
            return k
    return -1


def _uni_trim(coeffs: list[MPoly]) -> list[MPoly]:
    while coeffs and coeffs[-1].is_zero:
        coeffs.pop()
    return coeffs


def _uni_scale(coeffs: Sequence[MPoly], c: MPoly) -> list[MPoly]:
    return [a * c for a in coeffs]


def _uni_sub(a: Sequence[MPoly], b: Sequence[MPoly]) -> list[MPoly]:
    zero = MPoly.zero(a[0].vars if a else b[0].vars)
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        x = a[k] if k < len(a) else zero
        y = b[k] if k < len(b) else zero
        out.append(x - y)
    return _uni_trim(out)


def _uni_shift(coeffs: Sequence[MPoly], k: int) -> list[MPoly]:
    if not coeffs:
        return []
    zero = MPoly.zero(coeffs[0].vars)
    return [zero] * k + list(coeffs)


def _prem_classical(a: list[MPoly], b: list[MPoly]) -> list[MPoly]:
    """Classical pseudo-remainder lc(b)^(da-db+1) a = q b + r with deg r < deg b."""
    da, db = _uni_degree(a), _uni_degree(b)
    lb = b[db]
    r = _uni_trim(list(a))
    e = da - db + 1
    while True:
        dr = _uni_degree(r)
        if dr < db:
            break
        lead = r[dr]
        r = _uni_sub(_uni_scale(r, lb), _uni_shift(_uni_scale(b, lead), dr - db))
        e -= 1
    if e > 0:
        factor = lb ** e if e > 1 else lb
        r = _uni_scale(r, factor)
    return _uni_trim(r)


def _coeff_gcd(coeffs: Iterable[MPoly]) -> MPoly:
    g: MPoly | None = None
    for c in coeffs:
        if c.is_zero:
            continue
        g = c if g is None else gcd_poly(g, c)
        if g.is_constant():
            break
    if g is None:
        raise ValueError("all coefficients zero")
    return g


def gcd_poly(p: MPoly, q: MPoly) -> MPoly:
    """Greatest common divisor, monic in the canonical order.

    Recursive primitive PRS: pick a variable occurring in both, split off
    contents (gcds of the coefficient polynomials, strictly fewer occurring
    variables), run a pseudo-remainder sequence on the primitive parts.
    """
    p._check_same_ring(q)
    if p.is_zero:
        return monic(q)
    if q.is_zero:
        return monic(p)
    common = _occurring_vars(p) & _occurring_vars(q)
    if not common:
        return MPoly.const(p.vars, 1)
    name = next(v for v in p.vars if v in common)

    pu = _as_univariate(p, name)
    qu = _as_univariate(q, name)
    cont_p = _coeff_gcd(pu)
    cont_q = _coeff_gcd(qu)
    cont = gcd_poly(cont_p, cont_q)
    a = [divexact(c, cont_p) for c in pu]
    b = [divexact(c, cont_q) for c in qu]
    if _uni_degree(a) < _uni_degree(b):
        a, b = b, a
    while _uni_degree(b) >= 0:
        r = _prem_classical(a, b)
        if _uni_degree(r) >= 0:
            rc = _coeff_gcd(r)
            r = [divexact(c, rc) for c in r]
        a, b = b, r
    if _uni_degree(a) == 0:
        g = cont
    else:
        g = cont * _from_univariate(a, name, p.vars)
    return monic(g)


def squarefree_part(p: MPoly) -> MPoly:
    """Product of the distinct irreducible factors of p, monic.

    Characteristic-zero standard route: divide by the gcd of p with all of
    its first partial derivatives.
    """
    if p.is_zero:
        raise ValueError("squarefree part of the zero polynomial is undefined")
    g = p
    for v in p.vars:
        d = p.derivative(v)
        if not d.is_zero:
            g = gcd_poly(g, d)
        if g.is_constant():
            break
    if g.is_constant():
        return monic(p)
    return monic(divexact(p, g))


def is_squarefree(p: MPoly) -> bool:
    return squarefree_part(p).total_degree() == p.total_degree()


def certify_squarefree(p: MPoly, trials: int = 8) -> bool:
    """Exact one-sided squarefreeness certificate (True is a proof,
    False only means undecided).

    Pick a variable w in which some coefficient of p is a nonzero constant
    (so the content in w is trivial and every repeated factor would have
    positive w-degree).  A specialisation of the other variables that
    preserves the w-degree and has nonzero discriminant then rules out
    repeated factors altogether: a square G^2 | p with deg_w G >= 1 keeps
    its degree wherever the leading coefficient survives, forcing a
    repeated root.  Useful on polynomials too large for the gcd route.
    """
    import random
    if p.is_zero:
        return False
    rng = random.Random(0x5F5F)
    for wi, w in enumerate(p.vars):
        d = p.deg_in(w)
        if d < 1:
            continue
        levels: dict[int, list[Exponent]] = {}
        for e in p.terms:
            levels.setdefault(e[wi], []).append(e)
        has_constant_coeff = any(
            len(exps) == 1 and all(exps[0][k] == 0 for k in range(p.arity) if k != wi)
            for exps in levels.values()
        )
        if not has_constant_coeff:
            continue
        others = [k for k in range(p.arity) if k != wi]
        for _ in range(trials):
            point = {k: Fraction(rng.randint(-19, 19), rng.randint(1, 3)) for k in others}
            coeffs = [_ZERO] * (d + 1)
            ok = True
            for e, c in p.terms.items():
                val = c
                for k in others:
                    if e[k]:
                        val *= point[k] ** e[k]
                coeffs[e[wi]] += val
            if coeffs[d] == 0:
                continue  # leading coefficient vanished: degree dropped
            deriv = [coeffs[k] * k for k in range(1, d + 1)]
            if numeric_resultant(coeffs, deriv) != 0:
                return True
    return False


# -- resultants --------------------------------------------------------------


def resultant_univar(a: list[MPoly], b: list[MPoly]) -> MPoly:
    """Resultant of two univariate polynomials given by coefficient lists.

    Coefficients live in a common MPoly ring.  Subresultant polynomial
    remainder sequence (Collins/Brown) to keep intermediate growth down;
    exact divisions only.
    """
    a = _uni_trim(list(a))
    b = _uni_trim(list(b))
    da, db = _uni_degree(a), _uni_degree(b)
    if da < 0 or db < 0:
        raise ValueError("resultant of the zero polynomial")
    ring_vars = a[0].vars
    one = MPoly.const(ring_vars, 1)
    sign = 1
    if da < db:
        a, b, da, db = b, a, db, da
        if (da & 1) and (db & 1):
            sign = -sign
    if db == 0:
        return (b[0] ** da) * sign if da > 0 else one * sign
    g = one
    h = one
    while True:
        d = da - db
        if (da & 1) and (db & 1):
            sign = -sign
        r = _prem_classical(a, b)
        dr = _uni_degree(r)
        a, da = b, db
        denom = g * (h ** d)
        b = [divexact(c, denom) for c in r] if dr >= 0 else []
        db = dr
        g = a[da]
        if d > 1:
            h = divexact(g ** d, h ** (d - 1))
        elif d == 1:
            h = g
        # d == 0 cannot happen: deg strictly drops in a PRS step
        if db <= 0:
            break
    if db < 0:
        return MPoly.zero(ring_vars)
    # deg b == 0: finish with the standard subresultant tail
    d = da
    lead = b[0]
    if d > 1:
        res = divexact(lead ** d, h ** (d - 1))
    elif d == 1:
        res = lead
    else:  # pragma: no cover - da >= 1 is guaranteed above
        res = one
    return res * sign


def sylvester_resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Resultant as the Bareiss determinant of the Sylvester matrix.

    Slow reference path used to cross-check the PRS implementation.
    """
    a = _as_univariate(p, var)
    b = _as_univariate(q, var)
    da, db = _uni_degree(a), _uni_degree(b)
    if da < 0 or db < 0:
        raise ValueError("resultant of the zero polynomial")
    n = da + db
    vars0 = p.vars
    zero = MPoly.zero(vars0)
    if n == 0:
        return MPoly.const(vars0, 1)
    rows: list[list[MPoly]] = []
    for i in range(db):
        row = [zero] * n
        for k in range(da + 1):
            row[i + k] = a[da - k]
        rows.append(row)
    for i in range(da):
        row = [zero] * n
        for k in range(db + 1):
            row[i + k] = b[db - k]
        rows.append(row)
    return det_bareiss(rows).project_out(var)


def det_bareiss(matrix: list[list[MPoly]]) -> MPoly:
    """Exact determinant of a square MPoly matrix (fraction-free Bareiss)."""
    n = len(matrix)
    if n == 0:
        raise ValueError("empty matrix")
    vars0 = matrix[0][0].vars
    m = [row[:] for row in matrix]
    sign = 1
    prev = MPoly.const(vars0, 1)
    for k in range(n - 1):
        if m[k][k].is_zero:
            pivot_row = next((i for i in range(k + 1, n) if not m[i][k].is_zero), None)
            if pivot_row is None:
                return MPoly.zero(vars0)
            m[k], m[pivot_row] = m[pivot_row], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = divexact(m[i][j] * pivot - m[i][k] * m[k][j], prev)
            m[i][k] = MPoly.zero(vars0)
        prev = pivot
    return m[n - 1][n - 1] * sign


def resultant(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Sylvester resultant with respect to ``var``, exact.

    Returned in the remaining variables, normalised to a primitive
    integer-coefficient polynomial with positive leading coefficient
    (the zero polynomial when p and q share a factor involving ``var``).
    """
    if p.is_zero or q.is_zero:
        raise ValueError("resultant of the zero polynomial")
    if var not in p.vars:
        raise ValueError(f"unknown variable {var!r}")
    p._check_same_ring(q)
    a = _as_univariate(p, var)
    b = _as_univariate(q, var)
    res = resultant_univar(a, b)
    return primitive_part(res.project_out(var))


def resultant_raw(p: MPoly, q: MPoly, var: str) -> MPoly:
    """Resultant without normalisation (exact Sylvester value, sign included)."""
    a = _as_univariate(p, var)
    b = _as_univariate(q, var)
    return resultant_univar(a, b).project_out(var)


def numeric_resultant(a: Sequence[Rat], b: Sequence[Rat]) -> Rat:
    """Resultant of two univariate polynomials over Q given by coefficient
    lists (constant term first), by Euclidean remainders."""
    a = [Fraction(c) for c in a]
    b = [Fraction(c) for c in b]
    while a and a[-1] == 0:
        a.pop()
    while b and b[-1] == 0:
        b.pop()
    if not a or not b:
        raise ValueError("resultant of the zero polynomial")
    res = _ONE
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return res * b[0] ** da
        r = list(a)
        lb = b[db]
        while len(r) - 1 >= db:
            dr = len(r) - 1
            if r[dr] != 0:
                fac = r[dr] / lb
                for k in range(db + 1):
                    r[dr - db + k] -= fac * b[k]
            r.pop()
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return _ZERO
        dr = len(r) - 1
        if (da % 2) and (db % 2):
            res = -res
        res *= lb ** (da - dr)
        a, b = b, r


# -- divided differences -------------------------------------------------------


def divided_difference(p: MPoly, yname: str, yprime: str) -> MPoly:
    """Exact quotient (p(x,y) - p(x,y')) / (y - y') in the extended ring.

    The input lives in two variables; the result lives in three, with the
    fresh variable appended last.  Monomial-by-monomial:
    (y^j - y'^j)/(y - y') = sum_{k<j} y^k y'^(j-1-k).
    """
    if p.arity != 2:
        raise ValueError("divided difference expects a polynomial in two variables")
    if yname not in p.vars:
        raise ValueError(f"unknown variable {yname!r}")
    if yprime in p.vars:
        raise ValueError(f"fresh variable {yprime!r} already in use")
    xi = 1 - p.vars.index(yname)
    new_vars = p.vars + (yprime,)
    out: dict[Exponent, Rat] = {}
    yi = p.vars.index(yname)
    for e, c in p.terms.items():
        j = e[yi]
        i = e[xi]
        for k in range(j):
            exp = [0, 0, 0]
            exp[xi] = i
            exp[yi] = k
            exp[2] = j - 1 - k
            key = tuple(exp)
            s = out.get(key, _ZERO) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
    return MPoly(new_vars, out)


# -- quasihomogeneity ----------------------------------------------------------


def weighted_degree(exp: Exponent, weights: Sequence[int]) -> int:
    return sum(e * w for e, w in zip(exp, weights))


def qh_check(p: MPoly, weights: Sequence[int]) -> int | None:
    """Weighted degree of p if it is quasihomogeneous for ``weights``.

    Returns the common weighted degree, or None when the terms disagree.
    The zero polynomial has no degree and is rejected.
    """
    if p.is_zero:
        raise ValueError("the zero polynomial has no weighted degree")
    if len(weights) != p.arity or any(w < 1 for w in weights):
        raise ValueError(f"bad weights {tuple(weights)!r}")
    it = iter(p.terms)
    d = weighted_degree(next(it), weights)
    for e in it:
        if weighted_degree(e, weights) != d:
            return None
    return d


def order_at_origin(p: MPoly) -> int:
    """Minimum total degree over the terms (the multiplicity at the origin)."""
    return p.order_at_origin()


def initial_form(p: MPoly) -> MPoly:
    """Lowest-degree homogeneous part (the tangent cone equation)."""
    o = p.order_at_origin()
    return MPoly(p.vars, {e: c for e, c in p.terms.items() if sum(e) == o})
