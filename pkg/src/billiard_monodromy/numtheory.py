"""Small exact number-theory helpers used across the library."""

from math import gcd

# Deterministic Miller-Rabin witnesses, valid for all n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in _MR_WITNESSES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
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


def prime_factorization(n: int) -> dict:
    """Map prime -> exponent for n >= 1."""
    if n < 1:
        raise ValueError("n must be positive")
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list:
    """All positive divisors of n, ascending."""
    divs = [1]
    for p, e in prime_factorization(n).items():
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def units(n: int):
    """The units of Z/nZ, ascending."""
    return (c for c in range(1, n) if gcd(c, n) == 1)


def crt_pair(a: int, n1: int, b: int, n2: int) -> int:
    """Least nonnegative x with x = a (mod n1) and x = b (mod n2); coprime moduli."""
    m = pow(n1, -1, n2)
    return (a + n1 * ((b - a) * m % n2)) % (n1 * n2)


def smallest_primitive_root(p: int) -> int:
    """Smallest generator of the multiplicative group mod a prime p."""
    if p == 2:
        return 1
    order_factors = prime_factorization(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in order_factors):
            return g
    raise ArithmeticError(f"no primitive root found mod {p}")
