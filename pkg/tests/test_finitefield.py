import random

import pytest

from diffcoh.finitefield import (
    FieldEndo,
    FieldExtension,
    FiniteField,
    factorize,
    finite_field,
    is_prime,
    lex_least_irreducible,
)


def test_primes_and_factorization():
    assert is_prime(2) and is_prime(13) and is_prime(641)
    assert not is_prime(1) and not is_prime(625) and not is_prime(627)
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    n = 5**8 - 1
    prod = 1
    for q, e in factorize(n).items():
        assert is_prime(q)
        prod *= q**e
    assert prod == n


def test_lex_least_irreducible_known():
    # x^2 + 1 is the least irreducible over F_3 (x^2, x^2+1: -1 not a square mod 3)
    assert lex_least_irreducible(3, 2) == (1, 0, 1)
    # over F_2: x^2 + x + 1
    assert lex_least_irreducible(2, 2) == (1, 1, 1)


def field_axioms(k, rng, trials=50):
    for _ in range(trials):
        a = rng.randrange(k.q)
        b = rng.randrange(k.q)
        c = rng.randrange(k.q)
        assert k.mul(a, k.add(b, c)) == k.add(k.mul(a, b), k.mul(a, c))
        assert k.mul(a, b) == k.mul(b, a)
        assert k.add(a, k.neg(a)) == 0
        if a:
            assert k.mul(a, k.inv(a)) == 1


def test_field_axioms_various():
    rng = random.Random(1)
    for p, m in [(2, 1), (2, 2), (3, 2), (5, 1), (5, 2), (7, 1), (2, 4), (3, 4)]:
        field_axioms(finite_field(p, m), rng)


def test_generator_and_dlog():
    for p, m in [(3, 2), (5, 2), (2, 6), (13, 1)]:
        k = finite_field(p, m)
        assert k.order_of(k.generator) == k.q - 1
        rng = random.Random(7)
        for _ in range(20):
            a = rng.randrange(1, k.q)
            assert k.pow(k.generator, k.dlog(a)) == a


def test_frobenius_is_field_endo():
    k = finite_field(3, 3)
    s = FieldEndo(k, 1)
    rng = random.Random(3)
    for _ in range(30):
        a, b = rng.randrange(k.q), rng.randrange(k.q)
        assert s(k.add(a, b)) == k.add(s(a), s(b))
        assert s(k.mul(a, b)) == k.mul(s(a), s(b))
    assert FieldEndo(k, 3).is_identity()
    assert FieldEndo(k, 4).r == 1


def test_extension_tower_arithmetic():
    k = finite_field(3, 2)
    ext = FieldExtension(k, 2)
    assert ext.q == 81
    rng = random.Random(11)
    for _ in range(25):
        a = tuple(rng.randrange(k.q) for _ in range(2))
        b = tuple(rng.randrange(k.q) for _ in range(2))
        assert ext.mul(a, b) == ext.mul(b, a)
        if not ext.is_zero(a):
            assert ext.mul(a, ext.inv(a)) == ext.one()
    # embedding is a ring hom
    for _ in range(20):
        a, b = rng.randrange(k.q), rng.randrange(k.q)
        assert ext.mul(ext.embed(a), ext.embed(b)) == ext.embed(k.mul(a, b))
        assert ext.add(ext.embed(a), ext.embed(b)) == ext.embed(k.add(a, b))


def test_square_roots_and_nth_roots():
    k = finite_field(5, 1)
    ext = FieldExtension(k, 2)  # F_25
    rng = random.Random(5)
    squares = set()
    for a_int in range(1, 25):
        a = ext._pack([a_int % 5, a_int // 5])
        sq = ext.mul(a, a)
        squares.add(sq)
        x = ext.prime_root(sq, 2)
        assert ext.mul(x, x) == sq
    # non-squares must raise
    non_sq = next(
        ext._pack([i % 5, i // 5])
        for i in range(1, 25)
        if ext._pack([i % 5, i // 5]) not in squares
    )
    with pytest.raises(ValueError):
        ext.prime_root(non_sq, 2)


def test_fourth_root_in_big_tower():
    # the case that matters for the linearly-closed witness: F_{5^2} inside F_{5^8}
    k = finite_field(5, 2)
    ext = FieldExtension(k, 4)
    g = k.generator
    target = ext.embed(g)
    # g has order 24; solvable iff ord | (5^8-1)/gcd(4, 5^8-1)
    n = ext.q - 1
    assert (n // 4) % 24 == 0
    x = ext.nth_root(target, 4)
    assert ext.pow(x, 4) == target
