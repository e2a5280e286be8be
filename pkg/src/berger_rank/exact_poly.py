"""Exact univariate polynomial arithmetic over the rationals.

Representation
--------------
A polynomial is a ``UniPoly``: a variable symbol plus a tuple of
``fractions.Fraction`` coefficients in ascending power order with no trailing
zeros.  The zero polynomial has an empty coefficient tuple and ``degree``
``None`` (the "no degree" marker); every formula in this package guards on
it explicitly instead of inventing a numeric degree for zero.

The exact scalar types are the stdlib ones and are re-exported under the
names the rest of the package uses:

* ``ExactInt`` is ``int`` (arbitrary precision, sign included).
* ``ExactRat`` is ``fractions.Fraction`` (always reduced, denominator > 0).

Polynomials are immutable and hashable.  Constants compare equal regardless
of their variable symbol, so ``parse_poly("3")`` interoperates with both
``x`` and ``y`` polynomials.

Algorithms
----------
GCD and resultants go through the subresultant PRS over the integers after
clearing denominators, which keeps intermediate coefficients polynomially
bounded.  ``resultant`` follows the convention

    Res(a, b) = lc(a)^deg(b) * prod b(alpha)  over the roots alpha of a,

so Res(x - 2, x - 3) = -1 and Res(a, b) = (-1)^(deg a * deg b) Res(b, a).

Integer utilities (perfect squares, primality, squarefree parts) live here
too; ``int_squarefree_part`` factors by trial division up to 10^6 and then
Pollard rho with a deterministic iteration budget, raising
``FactorizationIncomplete`` instead of ever guessing.

Text grammar
------------
``parse_poly`` accepts one variable, integer or rational or decimal
coefficients, the operators ``+ - * / ^``, parentheses, and juxtaposition
as multiplication ("2x", "3(x+1)"):

    expr     ::= term { ("+" | "-") term }
    term     ::= unary { ("*" | "/") unary | unary }
    unary    ::= { "+" | "-" } power
    power    ::= atom [ "^" exponent ]
    atom     ::= INTEGER | DECIMAL | VARIABLE | "(" expr ")"
    exponent ::= [ "+" ] INTEGER | "(" exponent ")"

Division is only by a nonzero constant subexpression; anything else raises
``NonRationalCoefficient``.  ``render`` (also ``str()``) emits descending
powers with explicit signs and ``^``, and ``parse_poly(render(p)) == p``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import (
    ConstantPolynomialError,
    DivisionByZeroPoly,
    FactorizationIncomplete,
    MultiVariableError,
    NonRationalCoefficient,
    PolySyntaxError,
    ZeroInput,
    ZeroPolynomialError,
)

ExactInt = int
ExactRat = Fraction

__all__ = [
    "ExactInt",
    "ExactRat",
    "UniPoly",
    "parse_poly",
    "poly_divmod",
    "poly_gcd",
    "derivative",
    "resultant",
    "discriminant",
    "integer_model",
    "int_squarefree_part",
    "is_perfect_square",
    "rational_is_square",
    "is_prime",
    "primes_up_to",
]


class UniPoly:
    """Immutable dense univariate polynomial with Fraction coefficients."""

    __slots__ = ("var", "coeffs")

    def __init__(self, coeffs: Iterable = (), var: str = "x"):
        cs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def constant(cls, c, var: str = "x") -> "UniPoly":
        return cls((Fraction(c),), var)

    @classmethod
    def variable(cls, name: str) -> "UniPoly":
        return cls((Fraction(0), Fraction(1)), name)

    @property
    def degree(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coefficient(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def monic(self) -> "UniPoly":
        if self.is_zero or self.leading_coefficient == 1:
            return self
        lc = self.leading_coefficient
        return UniPoly((c / lc for c in self.coeffs), self.var)

    # -- ring structure -----------------------------------------------------

    def _coerce(self, other) -> "UniPoly | None":
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return UniPoly((Fraction(other),), self.var)
        return None

    def _join_var(self, other: "UniPoly") -> str:
        if self.is_constant:
            return other.var if not other.is_constant else self.var
        if other.is_constant:
            return self.var
        if self.var != other.var:
            raise MultiVariableError(
                f"cannot combine polynomials in {self.var!r} and {other.var!r}"
            )
        return self.var

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        var = self._join_var(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPoly(
            (self.coefficient(k) + other.coefficient(k) for k in range(n)), var
        )

    __radd__ = __add__

    def __neg__(self):
        return UniPoly((-c for c in self.coeffs), self.var)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        var = self._join_var(other)
        if self.is_zero or other.is_zero:
            return UniPoly((), var)
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out, var)

    __rmul__ = __mul__

    def __pow__(self, exp: int):
        if not isinstance(exp, int) or exp < 0:
            raise ValueError("polynomial exponent must be a nonnegative int")
        result = UniPoly.constant(1, self.var)
        base = self
        while exp:
            if exp & 1:
                result = result * base
            base = base * base
            exp >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return poly_divmod(self, other)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, point) -> Fraction:
        """Evaluate by Horner's rule."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * Fraction(point) + c
        return acc

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.coeffs != other.coeffs:
            return False
        # constants are variable-agnostic
        return self.is_constant or self.var == other.var

    def __hash__(self):
        key = None if self.is_constant else self.var
        return hash((key, self.coeffs))

    # -- rendering ----------------------------------------------------------

    def render(self) -> str:
        """Canonical text form: descending powers, explicit signs, '^'."""
        if self.is_zero:
            return "0"
        parts: list[tuple[str, str]] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if k == 0:
                body = str(mag)
            else:
                vpart = self.var if k == 1 else f"{self.var}^{k}"
                body = vpart if mag == 1 else f"{mag}*{vpart}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        text = ("-" + head) if head_sign == "-" else head
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"UniPoly({self.render()!r})"


# -- parsing ------------------------------------------------------------------

_OPS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _OPS:
            tokens.append((ch, ch))
            i += 1
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            j = i
            seen_dot = False
            while j < n and (text[j].isdigit() or (text[j] == "." and not seen_dot)):
                if text[j] == ".":
                    seen_dot = True
                j += 1
            tokens.append(("num", text[i:j]))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(("name", text[i:j]))
            i = j
            continue
        raise PolySyntaxError(f"unexpected character {ch!r} at position {i}")
    return tokens


class _ParseState:
    def __init__(self, tokens: list[tuple[str, str]]):
        self.tokens = tokens
        self.pos = 0
        self.var: str | None = None

    def peek(self) -> str | None:
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def next(self) -> tuple[str, str]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self) -> UniPoly:
        acc = self.term()
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> UniPoly:
        acc = self.unary()
        while True:
            nxt = self.peek()
            if nxt in ("*", "/"):
                op, _ = self.next()
                rhs = self.unary()
                if op == "*":
                    acc = acc * rhs
                else:
                    if rhs.is_zero:
                        raise NonRationalCoefficient("division by zero constant")
                    if not rhs.is_constant:
                        raise NonRationalCoefficient(
                            "division only by a nonzero constant"
                        )
                    acc = acc * UniPoly.constant(
                        Fraction(1) / rhs.coefficient(0), acc.var
                    )
            elif nxt in ("name", "("):
                acc = acc * self.unary()  # juxtaposition, e.g. "2x"
            else:
                return acc

    def unary(self) -> UniPoly:
        sign = 1
        while self.peek() in ("+", "-"):
            op, _ = self.next()
            if op == "-":
                sign = -sign
        p = self.power()
        return p if sign > 0 else -p

    def power(self) -> UniPoly:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            return base ** self.exponent()
        return base

    def exponent(self) -> int:
        nxt = self.peek()
        if nxt == "(":
            self.next()
            e = self.exponent()
            if self.peek() != ")":
                raise PolySyntaxError("expected ')' after exponent")
            self.next()
            return e
        if nxt == "+":
            self.next()
            nxt = self.peek()
        if nxt == "-":
            raise PolySyntaxError("negative exponents are not polynomial")
        if nxt != "num":
            raise PolySyntaxError("expected an integer after '^'")
        _, text = self.next()
        if "." in text:
            raise PolySyntaxError("exponent must be an integer")
        return int(text)

    def atom(self) -> UniPoly:
        nxt = self.peek()
        if nxt == "num":
            _, text = self.next()
            try:
                value = Fraction(text)
            except ValueError as exc:
                raise NonRationalCoefficient(f"bad numeric literal {text!r}") from exc
            return UniPoly.constant(value, self.var or "x")
        if nxt == "name":
            _, name = self.next()
            if self.var is None:
                self.var = name
            elif name != self.var:
                raise MultiVariableError(
                    f"second variable {name!r} after {self.var!r}"
                )
            return UniPoly.variable(name)
        if nxt == "(":
            self.next()
            inner = self.expr()
            if self.peek() != ")":
                raise PolySyntaxError("missing ')'")
            self.next()
            return inner
        raise PolySyntaxError(
            "unexpected end of input" if nxt is None else f"unexpected token {nxt!r}"
        )


def parse_poly(text: str) -> UniPoly:
    """Parse one-variable polynomial text into a canonical UniPoly."""
    tokens = _tokenize(text)
    if not tokens:
        raise PolySyntaxError("empty polynomial text")
    state = _ParseState(tokens)
    poly = state.expr()
    if state.pos != len(tokens):
        kind, text_ = state.tokens[state.pos]
        raise PolySyntaxError(f"trailing input starting at {text_!r}")
    if poly.is_constant and state.var is not None:
        return UniPoly(poly.coeffs, state.var)
    return poly


# -- division, gcd, resultant --------------------------------------------------


def poly_divmod(a: UniPoly, b: UniPoly) -> tuple[UniPoly, UniPoly]:
    """Quotient and remainder over Q with deg r < deg b."""
    if b.is_zero:
        raise DivisionByZeroPoly("polynomial division by zero")
    var = a._join_var(b)
    if a.is_zero or (a.degree or 0) < (b.degree or 0):
        if b.is_constant:
            inv = Fraction(1) / b.coefficient(0)
            return UniPoly((c * inv for c in a.coeffs), var), UniPoly((), var)
        return UniPoly((), var), a
    rem = list(a.coeffs)
    db = len(b.coeffs) - 1
    lb = b.coeffs[-1]
    quot = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        q = c / lb
        quot[k - db] = q
        for j, bc in enumerate(b.coeffs):
            rem[k - db + j] -= q * bc
    return UniPoly(quot, var), UniPoly(rem[:db], var)


def derivative(a: UniPoly) -> UniPoly:
    return UniPoly((k * a.coeffs[k] for k in range(1, len(a.coeffs))), a.var)


def _rational_split(a: UniPoly) -> tuple[Fraction, list[int]]:
    """Write a = scale * A with scale > 0 rational and A primitive integers."""
    den_lcm = 1
    for c in a.coeffs:
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in a.coeffs]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g == 0:
        return Fraction(0), []
    return Fraction(g, den_lcm), [c // g for c in ints]


def integer_model(a: UniPoly) -> UniPoly:
    """The primitive integer polynomial with the same roots and sign as a."""
    _, ints = _rational_split(a)
    return UniPoly(ints, a.var)


def _int_deg(A: Sequence[int]) -> int:
    return len(A) - 1


def _int_trim(A: list[int]) -> list[int]:
    while A and A[-1] == 0:
        A.pop()
    return A


def _int_prem(A: Sequence[int], B: Sequence[int]) -> list[int]:
    """Pseudo-remainder: lc(B)^(deg A - deg B + 1) * A mod B, deg A >= deg B."""
    dB = _int_deg(B)
    lb = B[-1]
    R = list(A)
    e = _int_deg(A) - dB + 1
    while R and _int_deg(R) >= dB:
        lr = R[-1]
        shift = _int_deg(R) - dB
        R = [lb * c for c in R]
        for i, bc in enumerate(B):
            R[shift + i] -= lr * bc
        _int_trim(R)
        e -= 1
    if e > 0:
        scale = lb ** e
        R = [scale * c for c in R]
    return R


def _int_content(A: Sequence[int]) -> int:
    g = 0
    for c in A:
        g = math.gcd(g, c)
    return g


def _subresultant_gcd(A: list[int], B: list[int]) -> list[int]:
    """Primitive gcd of two nonzero primitive integer polynomials."""
    if _int_deg(A) < _int_deg(B):
        A, B = B, A
    g = h = 1
    while True:
        if not B:
            break
        if _int_deg(B) == 0:
            return [1]
        delta = _int_deg(A) - _int_deg(B)
        R = _int_prem(A, B)
        if not R:
            A = B
            break
        divisor = g * h ** delta
        A, B = B, [c // divisor for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g ** delta // h ** (delta - 1)
    content = _int_content(A)
    out = [c // content for c in A]
    if out[-1] < 0:
        out = [-c for c in out]
    return out


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q, via the subresultant PRS on integer models."""
    var = a._join_var(b)
    if a.is_zero and b.is_zero:
        raise ZeroPolynomialError("gcd(0, 0) is undefined")
    if a.is_zero:
        return b.monic()
    if b.is_zero:
        return a.monic()
    if a.is_constant or b.is_constant:
        return UniPoly.constant(1, var)
    _, A = _rational_split(a)
    _, B = _rational_split(b)
    return UniPoly(_subresultant_gcd(A, B), var).monic()


def _subresultant_resultant(A: list[int], B: list[int]) -> int:
    """Res(A, B) for nonzero integer polynomials, subresultant PRS."""
    s = 1
    if _int_deg(A) < _int_deg(B):
        if _int_deg(A) % 2 == 1 and _int_deg(B) % 2 == 1:
            s = -s
        A, B = B, A
    ca, cb = _int_content(A), _int_content(B)
    A = [c // ca for c in A]
    B = [c // cb for c in B]
    t = ca ** _int_deg(B) * cb ** _int_deg(A)
    g = h = 1
    while _int_deg(B) > 0:
        delta = _int_deg(A) - _int_deg(B)
        if _int_deg(A) % 2 == 1 and _int_deg(B) % 2 == 1:
            s = -s
        R = _int_prem(A, B)
        A = B
        if not R:
            return 0
        divisor = g * h ** delta
        B = [c // divisor for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = g ** delta // h ** (delta - 1)
    if _int_deg(A) == 0:
        return s * t  # two constants
    dA = _int_deg(A)
    res = B[0] ** dA if h == 1 else B[0] ** dA // h ** (dA - 1)
    return s * t * res


def resultant(a: UniPoly, b: UniPoly) -> Fraction:
    """Res(a, b) = lc(a)^deg(b) * prod of b over the roots of a."""
    a._join_var(b)
    if a.is_zero or b.is_zero:
        raise ZeroPolynomialError("resultant with a zero polynomial")
    ca, A = _rational_split(a)
    cb, B = _rational_split(b)
    return (
        ca ** _int_deg(B)
        * cb ** _int_deg(A)
        * Fraction(_subresultant_resultant(A, B))
    )


def discriminant(a: UniPoly) -> Fraction:
    """disc(a) = (-1)^(m(m-1)/2) Res(a, a') / lc(a), m = deg a >= 1."""
    if a.degree is None or a.degree < 1:
        raise ConstantPolynomialError("discriminant needs degree >= 1")
    m = a.degree
    if m == 1:
        return Fraction(1)
    r = resultant(a, derivative(a))
    sign = -1 if (m * (m - 1) // 2) % 2 else 1
    return sign * r / a.leading_coefficient


# -- integer utilities ---------------------------------------------------------


def is_perfect_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def rational_is_square(q: Fraction) -> bool:
    """True iff q is the square of a rational."""
    return q >= 0 and is_perfect_square(q.numerator) and is_perfect_square(q.denominator)


# Deterministic Miller-Rabin: this base set decides primality exactly for
# n < 3.317e24 (Sorenson-Webster).  Above that we add more fixed bases; no
# input in this package's working range gets near the certified bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_EXTRA = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
_MR_CERTIFIED = 3317044064679887385961981


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < _MR_CERTIFIED else _MR_BASES + _MR_EXTRA
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n, ascending."""
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytearray(len(sieve[p * p :: p]))
    return [i for i in range(2, n + 1) if sieve[i]]


def _int_nth_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 2 or k == 1:
        return n
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid ** k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _brent_rho(n: int, c: int, max_iter: int) -> int | None:
    """One deterministic Brent-rho round; a proper factor of n or None."""
    y, r, q = 2, 1, 1
    g = 1
    x = ys = y
    count = 0
    while g == 1 and count < max_iter:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(128, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
                count += 1
            g = math.gcd(q, n)
            k += 128
        r *= 2
    if g == n:
        # gcd batching overshot; replay one step at a time
        g = 1
        while g == 1:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
    if 1 < g < n:
        return g
    return None


_TRIAL_BOUND = 10 ** 6
_RHO_TRIES = 24
_RHO_ITER_CAP = 1 << 18


def _factor_int(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1; FactorizationIncomplete on budget."""
    factors: dict[int, int] = {}

    def record(p: int, e: int = 1) -> None:
        factors[p] = factors.get(p, 0) + e

    for p in (2, 3, 5):
        while n % p == 0:
            record(p)
            n //= p
    d = 7
    while d <= _TRIAL_BOUND and d * d <= n:
        while n % d == 0:
            record(d)
            n //= d
        d += 2
    if n == 1:
        return factors
    if d * d > n:  # trial division ran to the square root, cofactor is prime
        record(n)
        return factors
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            record(m)
            continue
        for k in range(2, m.bit_length() + 1):
            root = _int_nth_root(m, k)
            if root > 1 and root ** k == m:
                stack.extend([root] * k)
                break
        else:
            for c in range(1, _RHO_TRIES + 1):
                f = _brent_rho(m, c, _RHO_ITER_CAP)
                if f is not None:
                    stack.append(f)
                    stack.append(m // f)
                    break
            else:
                raise FactorizationIncomplete(
                    f"could not factor {m} within the deterministic budget"
                )
    return factors


def int_squarefree_part(n: int) -> int:
    """The squarefree integer d with n = d * (square), sign preserved."""
    if n == 0:
        raise ZeroInput("squarefree part of 0 is undefined")
    sign = -1 if n < 0 else 1
    out = sign
    for p, e in _factor_int(abs(n)).items():
        if e % 2:
            out *= p
    return out


def factor_int(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; n must be nonzero."""
    if n == 0:
        raise ZeroInput("factorization of 0 is undefined")
    return _factor_int(abs(n))
