"""Squarefree factor-degree patterns over prime fields.

A ``PrimePoly`` is a polynomial over F_p: the prime p plus ascending residue
coefficients with no trailing zeros, mirroring the UniPoly layout.  p must be
an actual prime that fits in a machine word; constructing with anything else
raises ValueError up front, because every algorithm below silently assumes
field arithmetic.

``degree_pattern`` returns the multiset of irreducible factor degrees of a
squarefree input, the data Dedekind's criterion turns into Frobenius cycle
types.  It is computed by distinct-degree factorization: gcd of the input
with x^(p^i) - x separates the degree-i part, and the factor count of each
part is its degree divided by i.  Repeated factors are a caller error, not a
fallback: p dividing disc(f) must be excluded upstream, so a non-squarefree
input raises ``NotSquarefree``.

``factor_squarefree`` goes on to split every distinct-degree component into
the actual irreducible factors (Cantor-Zassenhaus for odd p, the trace-map
variant for p = 2).  The splitting randomness comes from a ``random.Random``
seeded with the input polynomial, so runs are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import DenominatorDivisibleByP, NotSquarefree
from .exact_poly import UniPoly, is_prime

__all__ = [
    "PrimePoly",
    "DegreePattern",
    "reduce_mod_p",
    "degree_pattern",
    "distinct_degree_components",
    "factor_squarefree",
    "is_irreducible_mod_p",
]

DegreePattern = tuple[int, ...]  # sorted ascending, sums to the degree

_MACHINE_WORD = 1 << 63


@dataclass(frozen=True)
class PrimePoly:
    """Dense polynomial over F_p; coeffs ascending, trailing zeros stripped."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if not (2 <= self.p < _MACHINE_WORD) or not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not a machine-word prime")
        cs = tuple(c % self.p for c in self.coeffs)
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{k}" if c == 1 else f"{c}*x^{k}")
        return " + ".join(terms) + f"  (mod {self.p})"


def reduce_mod_p(a: UniPoly, p: int) -> PrimePoly:
    """Reduce rational coefficients mod p; denominators must be units."""
    out = []
    for c in a.coeffs:
        if c.denominator % p == 0:
            raise DenominatorDivisibleByP(
                f"coefficient {c} has denominator divisible by {p}"
            )
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return PrimePoly(p, tuple(out))


# -- raw tuple arithmetic over F_p ----------------------------------------------
# Internal helpers work on plain tuples to skip dataclass overhead in loops.


def _trim(cs: list[int]) -> tuple[int, ...]:
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _add(a: tuple, b: tuple, p: int) -> tuple:
    n = max(len(a), len(b))
    return _trim(
        [((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)]
    )


def _sub(a: tuple, b: tuple, p: int) -> tuple:
    n = max(len(a), len(b))
    return _trim(
        [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    )


def _mul(a: tuple, b: tuple, p: int) -> tuple:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(out)


def _divmod(a: tuple, b: tuple, p: int) -> tuple[tuple, tuple]:
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    rem = list(a)
    if len(rem) - 1 < db:
        return (), _trim(rem)
    quot = [0] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c == 0:
            continue
        q = c * inv % p
        quot[k - db] = q
        for j in range(db + 1):
            rem[k - db + j] = (rem[k - db + j] - q * b[j]) % p
    return _trim(quot), _trim(rem[:db])


def _mod(a: tuple, b: tuple, p: int) -> tuple:
    return _divmod(a, b, p)[1]


def _monic(a: tuple, p: int) -> tuple:
    if not a or a[-1] == 1:
        return a
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def _gcd(a: tuple, b: tuple, p: int) -> tuple:
    while b:
        a, b = b, _mod(a, b, p)
    return _monic(a, p)


def _powmod(base: tuple, exp: int, mod: tuple, p: int) -> tuple:
    result = (1,)
    base = _mod(base, mod, p)
    while exp:
        if exp & 1:
            result = _mod(_mul(result, base, p), mod, p)
        base = _mod(_mul(base, base, p), mod, p)
        exp >>= 1
    return result


def _derivative(a: tuple, p: int) -> tuple:
    return _trim([k * a[k] % p for k in range(1, len(a))])


def _check_squarefree(a: PrimePoly) -> tuple:
    """Return the monic coefficient tuple, raising NotSquarefree if needed."""
    if a.degree is None or a.degree < 1:
        raise ValueError("degree pattern needs degree >= 1")
    cs = _monic(a.coeffs, a.p)
    d = _derivative(cs, a.p)
    if not d:
        raise NotSquarefree(f"{a} has zero derivative, hence a repeated factor")
    if len(_gcd(cs, d, a.p)) > 1:
        raise NotSquarefree(f"{a} has a repeated factor mod {a.p}")
    return cs


def distinct_degree_components(a: PrimePoly) -> list[tuple[int, PrimePoly]]:
    """[(d, product of all irreducible factors of degree d)], d ascending."""
    p = a.p
    rest = _check_squarefree(a)
    x = (0, 1)
    h = _mod(x, rest, p)
    out = []
    d = 0
    while len(rest) - 1 >= 2 * (d + 1):
        d += 1
        h = _powmod(h, p, rest, p)
        g = _gcd(_sub(h, x, p), rest, p)
        if len(g) > 1:
            out.append((d, PrimePoly(p, g)))
            rest, r = _divmod(rest, g, p)
            assert not r
            h = _mod(h, rest, p)
    if len(rest) > 1:
        out.append((len(rest) - 1, PrimePoly(p, rest)))
    return out


def degree_pattern(a: PrimePoly) -> DegreePattern:
    """Sorted multiset of irreducible factor degrees of squarefree a."""
    pattern: list[int] = []
    for d, comp in distinct_degree_components(a):
        deg = comp.degree or 0
        assert deg % d == 0
        pattern.extend([d] * (deg // d))
    return tuple(sorted(pattern))


def _split_component(u: tuple, d: int, p: int, rng: random.Random) -> list[tuple]:
    """Split a monic product of degree-d irreducibles into its factors."""
    if len(u) - 1 == d:
        return [u]
    while True:
        r = _trim([rng.randrange(p) for _ in range(len(u) - 1)])
        if len(r) < 2:  # constants never split anything
            continue
        if p == 2:
            # trace map r + r^2 + ... + r^(2^(d-1)) mod u
            acc, total = r, r
            for _ in range(d - 1):
                acc = _mod(_mul(acc, acc, p), u, p)
                total = _add(total, acc, p)
            g = _gcd(total, u, p)
        else:
            w = _powmod(r, (p ** d - 1) // 2, u, p)
            g = _gcd(_sub(w, (1,), p), u, p)
        if 0 < len(g) - 1 < len(u) - 1:
            quotient, rem = _divmod(u, g, p)
            assert not rem
            return _split_component(g, d, p, rng) + _split_component(
                quotient, d, p, rng
            )


def factor_squarefree(a: PrimePoly) -> list[PrimePoly]:
    """Monic irreducible factors of squarefree a, deterministic order."""
    p = a.p
    factors: list[tuple] = []
    rng = random.Random(f"{p}:{a.coeffs}")
    for d, comp in distinct_degree_components(a):
        factors.extend(_split_component(comp.coeffs, d, p, rng))
    factors.sort(key=lambda f: (len(f), f))
    return [PrimePoly(p, f) for f in factors]


def is_irreducible_mod_p(a: PrimePoly) -> bool:
    """True iff a is irreducible over F_p (degree >= 1 required)."""
    if a.degree is None or a.degree < 1:
        raise ValueError("irreducibility needs degree >= 1")
    if a.degree == 1:
        return True
    cs = _monic(a.coeffs, a.p)
    d = _derivative(cs, a.p)
    # repeated factor means reducible at degree >= 2
    if not d or len(_gcd(cs, d, a.p)) > 1:
        return False
    return degree_pattern(a) == (a.degree,)
