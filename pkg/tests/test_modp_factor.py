"""Finite-field factorization checked against an independent brute-force oracle.

The oracle below implements schoolbook F_p[x] arithmetic on plain tuples and
factors by trial division over an enumerated irreducible table, sharing no
code with the module under test.
"""

from itertools import product

import pytest

from berger_rank import (
    DenominatorDivisibleByP,
    NotSquarefree,
    PrimePoly,
    degree_pattern,
    distinct_degree_components,
    factor_squarefree,
    is_irreducible_mod_p,
    parse_poly,
    reduce_mod_p,
)

# -- independent oracle ----------------------------------------------------------


def _trim(t):
    while t and t[-1] == 0:
        t = t[:-1]
    return t


def _omul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] = (out[i + j] + ai * bj) % p
    return _trim(tuple(out))


def _odivmod(a, b, p):
    assert b
    inv = pow(b[-1], p - 2, p)
    rem = list(a)
    quo = [0] * max(0, len(a) - len(b) + 1)
    while len(rem) >= len(b) and _trim(tuple(rem)):
        rem = list(_trim(tuple(rem)))
        if len(rem) < len(b):
            break
        shift = len(rem) - len(b)
        factor = rem[-1] * inv % p
        quo[shift] = factor
        for i, bi in enumerate(b):
            rem[shift + i] = (rem[shift + i] - factor * bi) % p
    return _trim(tuple(quo)), _trim(tuple(rem))


def _monics(p, d):
    for low in product(range(p), repeat=d):
        yield low + (1,)


def _irreducibles(p, max_d):
    """All monic irreducibles of degree 1..max_d, by sieving."""
    table = {1: list(_monics(p, 1))}
    for d in range(2, max_d + 1):
        table[d] = []
        for cand in _monics(p, d):
            divisible = False
            for e in range(1, d // 2 + 1):
                for irr in table[e]:
                    _, rem = _odivmod(cand, irr, p)
                    if not rem:
                        divisible = True
                        break
                if divisible:
                    break
            if not divisible:
                table[d].append(cand)
    return table


def _oracle_factor(a, p, irr_table):
    """[(irreducible, multiplicity)] by trial division, ascending degree."""
    out = []
    rest = a
    for d in sorted(irr_table):
        for irr in irr_table[d]:
            mult = 0
            while True:
                q, rem = _odivmod(rest, irr, p)
                if rem:
                    break
                rest = q
                mult += 1
            if mult:
                out.append((irr, mult))
            if len(rest) == 1:
                return out
    assert len(rest) == 1, "oracle left a nontrivial cofactor"
    return out


def _oderiv(a, p):
    return _trim(tuple((k * a[k]) % p for k in range(1, len(a))))


def _ogcd(a, b, p):
    while b:
        _, r = _odivmod(a, b, p)
        a, b = b, r
    return a


def _osquarefree(a, p):
    d = _oderiv(a, p)
    if not d:
        return False
    return len(_ogcd(a, d, p)) == 1


# -- tests -----------------------------------------------------------------------


class TestReduce:
    def test_basic(self):
        f = parse_poly("x^4 - x - 1")
        a = reduce_mod_p(f, 5)
        assert a == PrimePoly(5, (4, 4, 0, 0, 1))

    def test_rational_coefficients(self):
        f = parse_poly("x^2 + x/3 - 1")
        a = reduce_mod_p(f, 5)
        # 1/3 = 2 mod 5
        assert a == PrimePoly(5, (4, 2, 1))
        with pytest.raises(DenominatorDivisibleByP):
            reduce_mod_p(f, 3)


class TestPatterns:
    def test_known_patterns(self):
        f = parse_poly("x^4 - x + 2")
        assert degree_pattern(reduce_mod_p(f, 2)) == (1, 1, 2)
        assert degree_pattern(reduce_mod_p(f, 3)) == (4,)
        assert degree_pattern(reduce_mod_p(f, 5)) == (1, 3)
        g = parse_poly("x^5 - x - 1")
        assert degree_pattern(reduce_mod_p(g, 2)) == (2, 3)
        # x^4 - x - 1 happens to be irreducible at the first three good primes
        h = parse_poly("x^4 - x - 1")
        for p in (2, 3, 5):
            assert degree_pattern(reduce_mod_p(h, p)) == (4,)

    def test_not_squarefree_is_an_error(self):
        a = PrimePoly(3, (0, 0, 1))  # x^2
        with pytest.raises(NotSquarefree):
            degree_pattern(a)
        # derivative zero mod p: x^3 + 1 = (x + 1)^3 mod 3
        b = PrimePoly(3, (1, 0, 0, 1))
        with pytest.raises(NotSquarefree):
            degree_pattern(b)

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_exhaustive_oracle_degree_le_4(self, p):
        irr_table = _irreducibles(p, 4)
        for d in range(1, 5):
            for coeffs in _monics(p, d):
                if not _osquarefree(coeffs, p):
                    continue
                a = PrimePoly(p, coeffs)
                expected = tuple(
                    sorted(len(irr) - 1 for irr, _ in _oracle_factor(coeffs, p, irr_table))
                )
                assert degree_pattern(a) == expected, (p, coeffs)


class TestFactorSquarefree:
    @pytest.mark.parametrize("p", [2, 3, 5, 7])
    def test_factors_multiply_back(self, p):
        f = parse_poly("x^6 + x + 1")
        a = reduce_mod_p(f, p)
        d = _oderiv(a.coeffs, p)
        if not d or len(_ogcd(a.coeffs, d, p)) != 1:
            pytest.skip(f"x^6 + x + 1 is not squarefree mod {p}")
        factors = factor_squarefree(a)
        prod = (a.coeffs[-1] % p,)
        for fac in factors:
            assert fac.coeffs[-1] == 1  # monic
            assert is_irreducible_mod_p(fac)
            prod = _omul(prod, fac.coeffs, p)
        assert prod == a.coeffs

    def test_deterministic(self):
        a = reduce_mod_p(parse_poly("x^6 + x + 1"), 5)
        assert factor_squarefree(a) == factor_squarefree(a)

    def test_splitting_p2(self):
        # trace-map splitting branch: needs equal-degree splitting at p = 2
        a = reduce_mod_p(parse_poly("x^4 + x^3 + x^2 + x + 1"), 2)
        # irreducible mod 2 (5th cyclotomic; 2 has order 4 mod 5)
        assert is_irreducible_mod_p(a)
        b = reduce_mod_p(parse_poly("x^6 + x^5 + x^3 + x^2 + 1"), 2)
        pattern = degree_pattern(b)
        assert sum(pattern) == 6
        for fac in factor_squarefree(b):
            assert is_irreducible_mod_p(fac)


class TestDistinctDegree:
    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_component_product(self, p):
        f = parse_poly("x^5 - x - 1")
        a = reduce_mod_p(f, p)
        if discriminant_is_zero_mod(a, p):
            pytest.skip("not squarefree at this prime")
        comps = distinct_degree_components(a)
        prod = (1,)
        for d, comp in comps:
            assert comp.coeffs[-1] == 1
            assert (len(comp.coeffs) - 1) % d == 0
            prod = _omul(prod, comp.coeffs, p)
        # product of monic components equals monic normalization of a
        inv = pow(a.coeffs[-1], p - 2, p)
        monic = tuple(c * inv % p for c in a.coeffs)
        assert prod == monic


def discriminant_is_zero_mod(a, p):
    d = _oderiv(a.coeffs, p)
    if not d:
        return True
    return len(_ogcd(a.coeffs, d, p)) != 1


class TestIrreducible:
    def test_known(self):
        assert is_irreducible_mod_p(reduce_mod_p(parse_poly("x^4 - x + 2"), 3))
        assert not is_irreducible_mod_p(reduce_mod_p(parse_poly("x^4 + x"), 2))
        assert not is_irreducible_mod_p(reduce_mod_p(parse_poly("x^2 + 1"), 5))
        assert is_irreducible_mod_p(PrimePoly(7, (3, 1)))  # degree 1

    @pytest.mark.parametrize("p", [2, 3])
    def test_exhaustive_against_trial_division(self, p):
        irr_table = _irreducibles(p, 4)
        for d in range(2, 5):
            members = set(irr_table[d])
            for coeffs in _monics(p, d):
                a = PrimePoly(p, coeffs)
                assert is_irreducible_mod_p(a) == (coeffs in members), (p, coeffs)
