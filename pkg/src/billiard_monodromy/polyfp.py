"""Polynomial arithmetic over F_p.

Polynomials are dense coefficient tuples, index = degree, no trailing zeros
(the empty tuple is the zero polynomial).  This carries the associated
polynomial f(x) = a_0 + a_1 x + ... + a_{k-1} x^{k-1} of a tuple, the gcd
machinery against x^k - 1, the full factorization of x^k - 1, and the
zero-gap toolkit used by the witness constructions.
"""

from dataclasses import dataclass
from functools import cache
from itertools import product

from .errors import (
    BothZero,
    DegreeTooLarge,
    ModulusNotPrime,
    NotEnoughAlphas,
    PDividesK,
    PreconditionFailed,
    ZeroPolynomial,
)
from .numtheory import is_prime
from .polygon import PolygonTuple


@dataclass(frozen=True)
class FpPoly:
    """A polynomial over F_p: ``coeffs[i]`` is the coefficient of x^i."""

    p: int
    coeffs: tuple

    @classmethod
    def make(cls, p: int, coeffs) -> "FpPoly":
        return cls(p, _trim(tuple(int(c) % p for c in coeffs)))

    @property
    def degree(self) -> int:
        """Degree, with the convention deg(0) = -1."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self):
        if self.is_zero:
            return f"0 (mod {self.p})"
        terms = []
        for e in range(self.degree, -1, -1):
            c = self.coeffs[e]
            if not c:
                continue
            if e == 0:
                terms.append(str(c))
            elif e == 1:
                terms.append("x" if c == 1 else f"{c}*x")
            else:
                terms.append(f"x^{e}" if c == 1 else f"{c}*x^{e}")
        return "+".join(terms) + f" (mod {self.p})"


def _trim(coeffs: tuple) -> tuple:
    end = len(coeffs)
    while end and coeffs[end - 1] == 0:
        end -= 1
    return coeffs[:end]


def _add(p, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = (out[i] + c) % p
    return _trim(tuple(out))


def _neg(p, a):
    return tuple(-c % p for c in a)


def _sub(p, a, b):
    return _add(p, a, _neg(p, b))


def _mul(p, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] = (out[i + j] + ca * cb) % p
    return _trim(tuple(out))


def _divmod(p, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        if c:
            q[i] = c
            for j, cb in enumerate(b):
                a[i + j] = (a[i + j] - c * cb) % p
    return _trim(tuple(q)), _trim(tuple(a))


def _gcd_coeffs(p, a, b):
    while b:
        a, b = b, _divmod(p, a, b)[1]
    inv = pow(a[-1], -1, p)
    return tuple(c * inv % p for c in a)


def _pow_mod(p, base, e, mod):
    result = (1,)
    base = _divmod(p, base, mod)[1]
    while e:
        if e & 1:
            result = _divmod(p, _mul(p, result, base), mod)[1]
        base = _divmod(p, _mul(p, base, base), mod)[1]
        e >>= 1
    return result


def mul(f: FpPoly, g: FpPoly) -> FpPoly:
    if f.p != g.p:
        raise PreconditionFailed("mixed moduli")
    return FpPoly(f.p, _mul(f.p, f.coeffs, g.coeffs))


def divide_exact(f: FpPoly, g: FpPoly) -> FpPoly:
    """f / g when g divides f; raises otherwise."""
    if f.p != g.p:
        raise PreconditionFailed("mixed moduli")
    q, r = _divmod(f.p, f.coeffs, g.coeffs)
    if r:
        raise PreconditionFailed(f"{g} does not divide {f}")
    return FpPoly(f.p, q)


def xk_minus_1(k: int, p: int) -> FpPoly:
    coeffs = [0] * (k + 1)
    coeffs[0] = p - 1
    coeffs[k] = 1
    return FpPoly(p, _trim(tuple(coeffs)))


def from_tuple(t: PolygonTuple, p: int) -> FpPoly:
    """The associated polynomial of a tuple modulo the prime p: coefficient
    of x^i is a_i mod p."""
    if t.modulus != p or not is_prime(p):
        raise ModulusNotPrime(f"tuple modulus {t.modulus} must be the prime p={p}")
    return FpPoly.make(p, t.entries)


def gcd_poly(f: FpPoly, g: FpPoly) -> FpPoly:
    """Monic gcd by the Euclidean algorithm."""
    if f.p != g.p:
        raise PreconditionFailed("mixed moduli")
    if f.is_zero and g.is_zero:
        raise BothZero("gcd(0, 0) is undefined")
    if f.is_zero:
        f, g = g, f
    if g.is_zero:
        inv = pow(f.coeffs[-1], -1, f.p)
        return FpPoly(f.p, tuple(c * inv % f.p for c in f.coeffs))
    return FpPoly(f.p, _gcd_coeffs(f.p, f.coeffs, g.coeffs))


def w_function(f: FpPoly) -> int:
    """Longest run of consecutive zero coefficients below the leading one."""
    if f.is_zero:
        raise ZeroPolynomial("w is undefined for the zero polynomial")
    best = run = 0
    for c in f.coeffs[:-1]:
        run = run + 1 if c == 0 else 0
        best = max(best, run)
    return best


def rotate(f: FpPoly, k: int) -> FpPoly:
    """x*f minus its overflow multiple of x^k - 1; preserves gcd with x^k - 1."""
    if f.degree > k - 1:
        raise DegreeTooLarge(f"deg f = {f.degree} exceeds k-1 = {k - 1}")
    p = f.p
    lead = f.coeffs[k - 1] if len(f.coeffs) >= k else 0
    shifted = (0,) + f.coeffs
    if lead:
        shifted = _sub(p, shifted, _mul(p, (lead,), xk_minus_1(k, p).coeffs))
    return FpPoly(p, _trim(shifted))


def roots(f: FpPoly) -> list:
    """All roots of f in F_p, ascending."""
    if f.is_zero:
        raise ZeroPolynomial("every element is a root of 0")
    return [x for x in range(f.p) if f(x) == 0]


def _equal_degree_split(p, g, d, m):
    # g divides x^m - 1, squarefree, every irreducible factor of degree d
    if len(g) - 1 == d:
        return [g]
    if d == 1:
        return [(-r % p, 1) for r in range(p) if _eval(p, g, r) == 0]
    # the constant term of a degree-d factor is (-1)^d times the norm of a
    # root, hence (-1)^d times an m-th root of unity in F_p
    sign = (-1) ** d % p
    constants = [c0 for c0 in range(1, p) if pow(sign * c0 % p, m, p) == 1]
    out = []
    rem = g
    for tail in product(range(p), repeat=d - 1):
        for c0 in constants:
            cand = (c0,) + tail + (1,)
            q, r = _divmod(p, rem, cand)
            if not r:
                out.append(cand)
                rem = q
                if len(rem) - 1 == d:
                    out.append(rem)
                    return out
                if len(rem) == 1:
                    return out
    raise AssertionError("equal-degree splitting exhausted its candidates")


def _eval(p, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % p
    return acc


def _factor_squarefree_xm1(m, p):
    # x^m - 1 with p not dividing m: distinct-degree splitting, then
    # deterministic equal-degree splitting by low-degree trial division
    f = xk_minus_1(m, p).coeffs
    found = []
    h = _divmod(p, (0, 1), f)[1]
    d = 0
    while len(f) - 1 > 0:
        d += 1
        if 2 * d > len(f) - 1:
            found.append(f)
            break
        h = _pow_mod(p, h, p, f)
        g = _gcd_coeffs(p, _sub(p, h, (0, 1)), f)
        if len(g) > 1:
            found.extend(_equal_degree_split(p, g, d, m))
            f = _divmod(p, f, g)[0]
            h = _divmod(p, h, f)[1]
    return found


@cache
def _factor_xk_minus_1_cached(k, p):
    e = 0
    m = k
    while m % p == 0:
        m //= p
        e += 1
    base = _factor_squarefree_xm1(m, p)
    mult = p**e
    return tuple((FpPoly(p, c), mult)
                 for c in sorted(base, key=lambda c: (len(c), c)))


def factor_xk_minus_1(k: int, p: int) -> list:
    """Complete factorization of x^k - 1 over F_p as (monic irreducible,
    multiplicity) pairs, sorted by degree then coefficients.

    When p divides k, x^k - 1 = (x^m - 1)^(p^e) with k = m * p^e, so the
    squarefree part is factored and every multiplicity is p^e.
    """
    if k < 1:
        raise PreconditionFailed(f"k must be positive, got {k}")
    if not is_prime(p):
        raise ModulusNotPrime(f"{p} is not prime")
    return list(_factor_xk_minus_1_cached(k, p))


def coset_degrees(k: int, p: int) -> tuple:
    """Orbit sizes of j -> p*j on Z/kZ, sorted; these are the degrees of the
    irreducible factors of x^k - 1 when p does not divide k."""
    if k % p == 0:
        raise PDividesK(f"p={p} divides k={k}")
    seen = set()
    sizes = []
    for j in range(k):
        if j in seen:
            continue
        orbit = set()
        x = j
        while x not in orbit:
            orbit.add(x)
            x = x * p % k
        seen |= orbit
        sizes.append(len(orbit))
    return tuple(sorted(sizes))


def close_zero_gap(f: FpPoly, forbidden=frozenset()):
    """Multiply by (x - alpha) so the longest zero run shrinks by one.

    alpha is the smallest nonzero element outside ``forbidden`` that differs
    from every ratio a_{j-1}/a_j of consecutive coefficients; for such alpha
    the product satisfies w(f*(x - alpha)) = max(w(f) - 1, 0).
    """
    if f.is_zero:
        raise ZeroPolynomial("cannot close gaps of the zero polynomial")
    if f.coeffs[0] == 0:
        raise PreconditionFailed("constant term must be nonzero")
    p = f.p
    bad = set()
    for j in range(1, len(f.coeffs)):
        if f.coeffs[j]:
            bad.add(f.coeffs[j - 1] * pow(f.coeffs[j], -1, p) % p)
    target = max(w_function(f) - 1, 0)
    for alpha in range(1, p):
        if alpha in forbidden or alpha in bad:
            continue
        out = FpPoly(p, _mul(p, f.coeffs, (-alpha % p, 1)))
        if w_function(out) != target:
            raise AssertionError("zero-gap reduction identity violated")
        return alpha, out
    raise NotEnoughAlphas(
        f"no eligible alpha in F_{p} outside {len(forbidden)} forbidden values")
