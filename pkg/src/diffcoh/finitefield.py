"""Finite fields F_{p^m} with discrete logs, extensions, and n-th roots.

Elements of F_{p^m} are integers 0 <= x < p^m encoding polynomial
coefficients base p (lowest degree in the least significant digit).  The
modulus is the lexicographically least irreducible monic polynomial of the
requested degree unless supplied.  Extension towers F_{q^e} are built as
polynomial quotients directly over the base field, so base elements embed
as constants and no root-finding is needed for the embedding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

DLOG_TABLE_LIMIT = 1 << 16


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (inputs up to ~1e12 here)."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


# -- polynomial helpers over F_p (dense coefficient lists, low degree first)


def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, f, p):
    a = list(a)
    df = len(f) - 1
    inv_lead = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        coef = a[-1] * inv_lead % p
        shift = len(a) - 1 - df
        if coef:
            for i in range(len(f)):
                a[shift + i] = (a[shift + i] - coef * f[i]) % p
        a.pop()
        _poly_trim(a)
        if not a:
            break
    return a


def _poly_powmod(base, e, f, p):
    result = [1]
    base = _poly_mod(list(base), f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _poly_trim(out)


def _poly_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _is_irreducible(f: list[int], p: int) -> bool:
    """Rabin test: x^{p^m} = x mod f and gcd(x^{p^{m/l}} - x, f) = 1."""
    m = len(f) - 1
    if m < 1:
        return False
    x = [0, 1]
    xq = _poly_powmod(x, p**m, f, p)
    if _poly_sub(xq, x, p):
        return False
    for ell in factorize(m):
        xe = _poly_powmod(x, p ** (m // ell), f, p)
        diff = _poly_sub(xe, x, p)
        if not diff:
            return False
        if len(_poly_gcd(list(f), diff, p)) - 1 > 0:
            return False
    return True


def lex_least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Coefficients (c_0, ..., c_{m-1}, 1) of the least monic irreducible."""
    if m == 1:
        return (0, 1)
    for low in range(p**m):
        coeffs = []
        x = low
        for _ in range(m):
            coeffs.append(x % p)
            x //= p
        f = coeffs + [1]
        if _is_irreducible(f, p):
            return tuple(f)
    raise ValueError("no irreducible polynomial found")


class FiniteField:
    """F_{p^m}; elements are ints 0..p^m-1 (base-p coefficient encoding)."""

    def __init__(self, p: int, m: int, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        if m < 1:
            raise ValueError("extension degree must be >= 1")
        self.p = p
        self.m = m
        self.q = p**m
        if modulus is None:
            modulus = lex_least_irreducible(p, m)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != m + 1 or modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree m")
        if m > 1 and not _is_irreducible(list(modulus), p):
            raise ValueError("modulus is not irreducible")
        self.modulus = modulus
        self._mul_cache: dict[tuple[int, int], int] = {}
        self.generator = self._find_generator()
        if self.q <= DLOG_TABLE_LIMIT:
            exp = [1]
            x = 1
            for _ in range(self.q - 2):
                x = self.mul(x, self.generator)
                exp.append(x)
            self.exp_table = exp
            dlog = [0] * self.q
            for i, v in enumerate(exp):
                dlog[v] = i
            self.dlog_table = dlog
        else:
            self.exp_table = None
            self.dlog_table = None

    # -- encoding

    def to_poly(self, x: int) -> list[int]:
        out = []
        while x:
            out.append(x % self.p)
            x //= self.p
        return out

    def from_poly(self, coeffs: Sequence[int]) -> int:
        out = 0
        for c in reversed(list(coeffs)):
            out = out * self.p + (c % self.p)
        return out

    def elements(self):
        return range(self.q)

    def units(self):
        return range(1, self.q)

    # -- arithmetic

    def add(self, a: int, b: int) -> int:
        p = self.p
        out = 0
        mult = 1
        while a or b:
            out += ((a + b) % p) * mult
            a //= p
            b //= p
            mult *= p
        return out

    def neg(self, a: int) -> int:
        p = self.p
        out = 0
        mult = 1
        while a:
            out += (-a % p) * mult
            a //= p
            mult *= p
        return out

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        key = (a, b) if a <= b else (b, a)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        prod = _poly_mod(_poly_mul(self.to_poly(a), self.to_poly(b), self.p), list(self.modulus), self.p)
        out = self.from_poly(prod)
        if len(self._mul_cache) < 1 << 20:
            self._mul_cache[key] = out
        return out

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(a, self.q - 2)

    def frobenius(self, a: int, r: int = 1) -> int:
        return self.pow(a, self.p**r)

    def dlog(self, a: int) -> int:
        """Discrete log base the stored generator."""
        if a == 0:
            raise ValueError("dlog of zero")
        if self.dlog_table is not None:
            return self.dlog_table[a]
        # baby-step giant-step
        import math

        n = self.q - 1
        s = int(math.isqrt(n)) + 1
        baby = {}
        x = 1
        for j in range(s):
            baby.setdefault(x, j)
            x = self.mul(x, self.generator)
        factor = self.inv(self.pow(self.generator, s))
        gamma = a
        for i in range(s + 1):
            if gamma in baby:
                return (i * s + baby[gamma]) % n
            gamma = self.mul(gamma, factor)
        raise ValueError("dlog failure")

    def order_of(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        n = self.q - 1
        order = n
        for ell in factorize(n):
            while order % ell == 0 and self.pow(a, order // ell) == 1:
                order //= ell
        return order

    def _find_generator(self) -> int:
        if self.q == 2:
            return 1
        n = self.q - 1
        primes = list(factorize(n))
        for g in range(2, self.q):
            if all(self.pow(g, n // ell) != 1 for ell in primes):
                return g
        raise ValueError("no generator found")


@lru_cache(maxsize=None)
def finite_field(p: int, m: int, modulus: tuple[int, ...] | None = None) -> FiniteField:
    return FiniteField(p, m, modulus)


@dataclass(frozen=True)
class FieldEndo:
    """x -> x^{p^r}; r is reduced mod m (r = 0 is the identity)."""

    field: FiniteField
    r: int

    def __post_init__(self):
        object.__setattr__(self, "r", self.r % self.field.m)

    def __call__(self, a: int) -> int:
        if self.r == 0:
            return a
        return self.field.frobenius(a, self.r)

    def is_identity(self) -> bool:
        return self.r == 0


class FieldExtension:
    """F_{q^e} as k[w]/(f) over a base FiniteField k; elements are tuples."""

    def __init__(self, base: FiniteField, e: int):
        self.base = base
        self.e = e
        self.q = base.q**e
        self.modulus = self._lex_least_irreducible()

    def _irreducible_test(self, f: list[int]) -> bool:
        k = self.base
        e = len(f) - 1
        x = [0, 1]
        xq = self._powmod(x, k.q**e, f)
        if self._trim(self._sub_poly(xq, x)):
            return False
        for ell in factorize(e):
            xe = self._powmod(x, k.q ** (e // ell), f)
            diff = self._trim(self._sub_poly(xe, x))
            if not diff:
                return False
            if len(self._gcd(list(f), diff)) - 1 > 0:
                return False
        return True

    def _lex_least_irreducible(self) -> tuple[int, ...]:
        k = self.base
        if self.e == 1:
            return (0, 1)
        for low in range(k.q**self.e):
            coeffs = []
            x = low
            for _ in range(self.e):
                coeffs.append(x % k.q)
                x //= k.q
            f = coeffs + [1]
            if self._irreducible_test(f):
                return tuple(f)
        raise ValueError("no irreducible polynomial over the base field")

    # -- polynomial arithmetic with coefficients in the base field

    def _trim(self, a):
        a = list(a)
        while a and a[-1] == 0:
            a.pop()
        return a

    def _sub_poly(self, a, b):
        n = max(len(a), len(b))
        k = self.base
        return [k.sub(a[i] if i < len(a) else 0, b[i] if i < len(b) else 0) for i in range(n)]

    def _mul_poly(self, a, b):
        k = self.base
        if not a or not b:
            return []
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = k.add(out[i + j], k.mul(x, y))
        return self._trim(out)

    def _mod_poly(self, a, f):
        k = self.base
        a = list(a)
        df = len(f) - 1
        inv_lead = k.inv(f[-1])
        while a and len(a) - 1 >= df:
            coef = k.mul(a[-1], inv_lead)
            shift = len(a) - 1 - df
            if coef:
                for i in range(len(f)):
                    a[shift + i] = k.sub(a[shift + i], k.mul(coef, f[i]))
            a = self._trim(a)
            if len(a) - 1 < df:
                break
        return a

    def _powmod(self, base, exp, f):
        result = [1]
        base = self._mod_poly(list(base), f)
        while exp:
            if exp & 1:
                result = self._mod_poly(self._mul_poly(result, base), f)
            base = self._mod_poly(self._mul_poly(base, base), f)
            exp >>= 1
        return result

    def _gcd(self, a, b):
        while b:
            r = self._mod_poly(a, b)
            a, b = b, r
        return a

    # -- element interface (tuples of base-field elements, padded to len e)

    def embed(self, a: int) -> tuple:
        return self._pack([a])

    def _pack(self, coeffs) -> tuple:
        coeffs = list(coeffs)[: self.e]
        coeffs += [0] * (self.e - len(coeffs))
        return tuple(coeffs)

    def zero(self) -> tuple:
        return self._pack([])

    def one(self) -> tuple:
        return self._pack([1])

    def add(self, a, b):
        k = self.base
        return tuple(k.add(x, y) for x, y in zip(a, b))

    def mul(self, a, b):
        prod = self._mod_poly(self._mul_poly(self._trim(a), self._trim(b)), list(self.modulus))
        return self._pack(prod)

    def pow(self, a, e: int):
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = self.one()
        base = a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def inv(self, a):
        if not self._trim(a):
            raise ZeroDivisionError
        return self.pow(a, self.q - 2)

    def is_zero(self, a) -> bool:
        return not self._trim(a)

    def nonresidue(self, ell: int):
        """Element that is not an ell-th power (ell prime dividing q - 1)."""
        n = self.q - 1
        if n % ell:
            raise ValueError("ell does not divide the group order")
        # scan small elements deterministically: constants then w-linear ones
        for idx in range(1, min(self.q, 10**6)):
            coeffs = []
            x = idx
            for _ in range(self.e):
                coeffs.append(x % self.base.q)
                x //= self.base.q
            cand = self._pack(coeffs)
            if self.is_zero(cand):
                continue
            if self.pow(cand, n // ell) != self.one():
                return cand
        raise ValueError("no nonresidue found")

    def prime_root(self, a, ell: int):
        """x with x^ell = a (ell prime), assuming such x exists; exact check."""
        if self.is_zero(a):
            return self.zero()
        n = self.q - 1
        if n % ell:
            x = self.pow(a, pow(ell, -1, n))
            if self.pow(x, ell) != a:
                raise ValueError("element is not an ell-th power")
            return x
        s, t = 0, n
        while t % ell == 0:
            t //= ell
            s += 1
        rho = self.nonresidue(ell)
        b = self.pow(rho, t)  # generates the Sylow-ell subgroup, order ell^s
        alpha = pow(ell, -1, t)
        y = self.pow(a, alpha)
        k = (ell * alpha - 1) // t
        # (y w)^ell = a requires w^ell = (a^t)^{-k}, solved inside the Sylow
        target = self.pow(self.pow(a, t), -k)
        # brute-force dlog in the Sylow subgroup (order ell^s, small here)
        d = None
        cur = self.one()
        for i in range(ell**s):
            if cur == target:
                d = i
                break
            cur = self.mul(cur, b)
        if d is None or d % ell:
            raise ValueError("element is not an ell-th power")
        w = self.pow(b, d // ell)
        x = self.mul(y, w)
        if self.pow(x, ell) != a:
            raise ValueError("root extraction failed")
        return x

    def nth_root(self, a, n: int):
        """Some x with x^n = a, by successive prime-root extraction."""
        x = a
        for ell, mult in factorize(n).items():
            for _ in range(mult):
                x = self.prime_root(x, ell)
        return x
