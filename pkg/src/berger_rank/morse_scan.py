"""Morse tests and symmetric-specialization scans.

A polynomial h of degree m >= 2 over Q is Morse when its critical points
are simple (h' squarefree) and its critical values are pairwise distinct.
Both halves reduce to exact squarefreeness checks:

* h' squarefree  iff  gcd(h', h'') is constant;
* the critical values are the roots of D(t) = Res_x(h(x) - t, h'(x)), a
  polynomial of degree m - 1 in t, and they are pairwise distinct (given
  simple critical points) iff D is squarefree, i.e. disc(D) != 0.

D is computed by a subresultant PRS whose coefficients are exact
polynomials in t (only the constant x-coefficient of h(x) - t involves t),
so no general multivariate stack is needed.

``scan_A_h`` walks an integer range of constants c and reports, for each,
whether Gal(h - c) is provably the full symmetric group.  True only ever
means a ``ProvenSymmetric`` certificate.  False comes in flavors recorded
in ``reason``: a proved non-membership (rational root, hence reducible, or
a certified alternating group), a repeated root, or plain "unproven".

``disjointness_filter`` keeps the pairs (c, d) whose quadratic resolvent
fields Q(sqrt(disc(h - c))) differ, which is exactly a comparison of the
squarefree parts stored as ``quad_tag``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import product as _iter_product

from .errors import FactorizationIncomplete, InvalidInput
from .exact_poly import (
    UniPoly,
    derivative,
    discriminant,
    int_squarefree_part,
    integer_model,
    factor_int,
    poly_divmod,
    poly_gcd,
)
from .galois_cert import (
    DEFAULT_PRIME_BOUND,
    GaloisCertificate,
    GaloisVerdict,
    certify_galois,
)

__all__ = [
    "MorseReport",
    "ScanResult",
    "UnknownTagWarning",
    "is_morse",
    "critical_value_resultant",
    "scan_A_h",
    "disjointness_filter",
]


class UnknownTagWarning(UserWarning):
    """A scan row without a computable quadratic tag was skipped."""


@dataclass(frozen=True)
class MorseReport:
    h: UniPoly
    derivative_squarefree: bool
    critical_value_disc_squarefree: bool
    critical_values_poly: UniPoly  # D(t), the evidence for the second flag
    is_morse: bool


@dataclass(frozen=True)
class ScanResult:
    c: int
    in_A_h: bool
    certificate: GaloisCertificate | None
    quad_tag: int | None  # squarefree part of disc(h - c); None = unknown
    reason: str


# -- bivariate resultant with UniPoly coefficients ------------------------------


def _bi_trim(A: list[UniPoly]) -> list[UniPoly]:
    while A and A[-1].is_zero:
        A.pop()
    return A


def _bi_exact_div(c: UniPoly, d: UniPoly) -> UniPoly:
    q, r = poly_divmod(c, d)
    assert r.is_zero, "subresultant division was not exact"
    return q


def _bi_prem(A: list[UniPoly], B: list[UniPoly]) -> list[UniPoly]:
    """Pseudo-remainder over Q[t][x]: lc(B)^(dA-dB+1) A mod B."""
    dB = len(B) - 1
    lb = B[-1]
    R = list(A)
    e = len(A) - 1 - dB + 1
    while R and len(R) - 1 >= dB:
        lr = R[-1]
        shift = len(R) - 1 - dB
        R = [lb * c for c in R]
        for i, bc in enumerate(B):
            R[shift + i] = R[shift + i] - lr * bc
        _bi_trim(R)
        e -= 1
    if e > 0:
        scale = lb ** e
        R = [scale * c for c in R]
    return R


def _bi_resultant(A: list[UniPoly], B: list[UniPoly]) -> UniPoly:
    """Res_x of two nonzero polynomials in x with Q[t] coefficients."""
    one = UniPoly.constant(1, A[0].var if A else "t")
    s = 1
    if len(A) < len(B):
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
        A, B = B, A
    g = h = one
    while len(B) - 1 > 0:
        delta = (len(A) - 1) - (len(B) - 1)
        if (len(A) - 1) % 2 == 1 and (len(B) - 1) % 2 == 1:
            s = -s
        R = _bi_prem(A, B)
        A = B
        if not R:
            return UniPoly((), one.var)
        divisor = g * h ** delta
        B = [_bi_exact_div(c, divisor) for c in R]
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = _bi_exact_div(g ** delta, h ** (delta - 1))
    if len(A) - 1 == 0:
        return one if s > 0 else -one
    dA = len(A) - 1
    res = _bi_exact_div(B[0] ** dA, h ** (dA - 1))
    return res if s > 0 else -res


def critical_value_resultant(h: UniPoly) -> UniPoly:
    """D(t) = Res_x(h(x) - t, h'(x)), whose roots are the critical values."""
    if h.degree is None or h.degree < 2:
        raise InvalidInput("critical values need degree >= 2")
    tvar = "t" if h.var != "t" else "u"
    A = [UniPoly((c,), tvar) for c in h.coeffs]
    A[0] = UniPoly((h.coeffs[0], -1), tvar)  # constant coefficient h0 - t
    B = [UniPoly((c,), tvar) for c in derivative(h).coeffs]
    D = _bi_resultant(A, B)
    # one linear-in-t factor per critical point, counted with multiplicity
    assert D.degree == h.degree - 1, "critical-value polynomial has wrong degree"
    return D


def is_morse(h: UniPoly) -> MorseReport:
    """Simple critical points and pairwise distinct critical values."""
    if h.degree is None or h.degree < 2:
        raise InvalidInput("Morse test needs degree >= 2")
    hp = derivative(h)
    deriv_squarefree = poly_gcd(hp, derivative(hp)).degree == 0
    D = critical_value_resultant(h)
    cv_squarefree = discriminant(D) != 0
    return MorseReport(
        h=h,
        derivative_squarefree=deriv_squarefree,
        critical_value_disc_squarefree=cv_squarefree,
        critical_values_poly=D,
        is_morse=deriv_squarefree and cv_squarefree,
    )


# -- integer-range scan ----------------------------------------------------------


def _divisors_from_factorization(factors: dict[int, int]) -> list[int]:
    divisors = [1]
    for p, e in factors.items():
        divisors = [d * p ** k for d in divisors for k in range(e + 1)]
    return sorted(divisors)


def _rational_root(f: UniPoly):
    """Some rational root of f, or None if none exists (or none provable)."""
    model = integer_model(f)
    coeffs = [int(c) for c in model.coeffs]
    if not coeffs:
        return None
    if coeffs[0] == 0:
        return 0
    try:
        nums = _divisors_from_factorization(factor_int(coeffs[0]))
        dens = _divisors_from_factorization(factor_int(coeffs[-1]))
    except FactorizationIncomplete:
        return None  # cannot enumerate candidates, let the certifier decide
    from fractions import Fraction

    for num, den in _iter_product(nums, dens):
        for cand in (Fraction(num, den), Fraction(-num, den)):
            if model(cand) == 0:
                return cand
    return None


def _quad_tag(disc) -> int | None:
    """Squarefree part of a nonzero rational, as the integer tagging Q(sqrt(disc))."""
    try:
        return int_squarefree_part(disc.numerator * disc.denominator)
    except FactorizationIncomplete:
        return None


def _scan_one(h: UniPoly, c: int, prime_bound: int) -> ScanResult:
    fc = h - c
    disc = discriminant(fc)
    if disc == 0:
        return ScanResult(c, False, None, None, "not squarefree")
    tag = _quad_tag(disc)
    root = _rational_root(fc)
    if root is not None:
        return ScanResult(
            c, False, None, tag, f"reducible: rational root {root}"
        )
    cert = certify_galois(fc, prime_bound)
    if cert.verdict is GaloisVerdict.PROVEN_SYMMETRIC:
        return ScanResult(c, True, cert, tag, "certified")
    if cert.verdict is GaloisVerdict.PROVEN_ALTERNATING:
        return ScanResult(c, False, cert, tag, "alternating, hence not symmetric")
    return ScanResult(c, False, cert, tag, "unproven")


def scan_A_h(
    h: UniPoly,
    c_min: int,
    c_max: int,
    prime_bound: int = DEFAULT_PRIME_BOUND,
    jobs: int = 1,
) -> list[ScanResult]:
    """Certify Gal(h - c) = Sym(deg h) for each integer c in [c_min, c_max]."""
    if h.degree is None or h.degree < 2:
        raise InvalidInput("scan needs degree >= 2")
    if c_min > c_max:
        raise InvalidInput(f"empty range {c_min}..{c_max}")
    cs = range(c_min, c_max + 1)
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(lambda c: _scan_one(h, c, prime_bound), cs))
    return [_scan_one(h, c, prime_bound) for c in cs]


def disjointness_filter(results: list[ScanResult]) -> list[tuple[int, int]]:
    """Pairs (c, d) from certified rows whose quadratic tags differ.

    Rows with an unknown tag are skipped with an UnknownTagWarning; rows
    with in_A_h false are a caller error.
    """
    for row in results:
        if not row.in_A_h:
            raise InvalidInput(
                f"disjointness_filter needs certified rows, c = {row.c} is not"
            )
    usable = []
    for row in results:
        if row.quad_tag is None:
            warnings.warn(
                f"c = {row.c} skipped: quadratic tag unknown", UnknownTagWarning
            )
        else:
            usable.append(row)
    return [
        (a.c, b.c)
        for i, a in enumerate(usable)
        for b in usable[i + 1 :]
        if a.quad_tag != b.quad_tag
    ]
