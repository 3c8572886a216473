import random
from fractions import Fraction

import pytest

from metalg.fields import GF, QQ, GFElement, is_prime, parse_field


def test_parse_field():
    assert parse_field("q") is QQ
    assert parse_field("gf:7").p == 7
    with pytest.raises(ValueError):
        parse_field("gf:4")
    with pytest.raises(ValueError):
        parse_field("gf:x")
    with pytest.raises(ValueError):
        parse_field("reals")


def test_is_prime_small():
    primes = [p for p in range(50) if is_prime(p)]
    assert primes == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]


def test_gf_field_axioms_exhaustive():
    for p in (2, 3, 5):
        f = GF(p)
        els = [f.el(v) for v in range(p)]
        for a in els:
            assert a + f.zero == a and a * f.one == a
            assert a + (-a) == f.zero
            for b in els:
                assert a + b == b + a and a * b == b * a
                if b != f.zero:
                    assert (a / b) * b == a
                for c in els:
                    assert (a + b) + c == a + (b + c)
                    assert a * (b + c) == a * b + a * c


def test_gf_division_by_zero():
    f = GF(5)
    with pytest.raises(ZeroDivisionError):
        f.one / f.zero


def test_gf_fraction_coercion():
    f = GF(7)
    assert f.el(Fraction(1, 2)) == f.el(4)  # 2 * 4 = 8 = 1 mod 7
    with pytest.raises(ZeroDivisionError):
        f.el(Fraction(1, 7))


def test_parse_fmt_roundtrip():
    rnd = random.Random(0)
    for _ in range(50):
        x = Fraction(rnd.randint(-99, 99), rnd.randint(1, 99))
        assert QQ.parse(QQ.fmt(x)) == x
    f = GF(11)
    for v in range(11):
        assert f.parse(f.fmt(f.el(v))) == f.el(v)


def test_gf_element_hash_eq():
    assert GFElement(3, 5) == GFElement(3, 2)
    assert hash(GFElement(3, 5)) == hash(GFElement(3, 2))
    assert GFElement(3, 1) != GFElement(5, 1)
    assert bool(GFElement(3, 0)) is False and bool(GFElement(3, 2)) is True
