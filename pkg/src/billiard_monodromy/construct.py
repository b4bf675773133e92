"""Classification and witness construction.

Calculus operations (CRT combination, projection, lifting) move tuples
between moduli and gon counts while tracking their groups exactly.  On top
of those sit the prime-modulus classification with explicit witnesses, the
complete triangle classification for every modulus, and the prime-power
covering decision procedure for composite moduli.
"""

from dataclasses import dataclass
from functools import reduce
from itertools import combinations
from math import gcd
from typing import Optional

from .errors import (
    BadFactorization,
    CapExceeded,
    DNotAchievable,
    InternalVerificationFailed,
    LengthMismatch,
    ModuliNotCoprime,
    ModulusNotPrime,
    NotMultiple,
    NTooSmall,
    PDividesK,
    PreconditionFailed,
)
from .monodromy import GroupDescriptor, deltas_of
from .numtheory import crt_pair, divisors, is_prime, prime_factorization, smallest_primitive_root
from .polygon import (
    PolygonTuple,
    enumerate_algebraic,
    find_geometric_associate,
    pad_to_geometric,
    validate,
)
from . import polyfp
from .polyfp import FpPoly, close_zero_gap, factor_xk_minus_1, w_function, xk_minus_1

DEFAULT_PRIME_POWER_CAP = 1_000_000


# ---- calculus of algebraic tuples ----

def combine_crt(t1: PolygonTuple, t2: PolygonTuple) -> PolygonTuple:
    """Entrywise CRT lift of two same-length tuples with coprime moduli;
    the result's group is the direct product of the inputs' N parts."""
    if t1.k != t2.k:
        raise LengthMismatch(f"k mismatch: {t1.k} vs {t2.k}")
    n1, n2 = t1.modulus, t2.modulus
    if n1 < 2 or n2 < 2:
        raise PreconditionFailed("moduli must be at least 2")
    if gcd(n1, n2) != 1:
        raise ModuliNotCoprime(f"gcd({n1}, {n2}) != 1")
    entries = [crt_pair(a, n1, b, n2)
               for a, b in zip(t1.residues(), t2.residues())]
    return validate(entries, n1 * n2, "algebraic")


def project(t: PolygonTuple, n1: int) -> PolygonTuple:
    """Entrywise reduction mod a proper factor n1 of the modulus."""
    n = t.modulus
    if n1 <= 1 or n % n1 != 0 or n // n1 <= 1:
        raise BadFactorization(f"{n1} is not a proper factor of {n}")
    return validate([a % n1 for a in t.entries], n1, "algebraic")


def lift(t: PolygonTuple, ell: int) -> PolygonTuple:
    """Repeat the entry pattern ell/k times: same N, rotation order ell."""
    if ell % t.k != 0:
        raise NotMultiple(f"{ell} is not a multiple of k={t.k}")
    return validate(t.residues() * (ell // t.k), t.modulus, "algebraic")


def combine_coprime_k(t1: PolygonTuple, t2: PolygonTuple) -> PolygonTuple:
    """Lift both tuples to k*ell entries and CRT them; for coprime k, ell
    the result's group is the direct product of the two groups."""
    if gcd(t1.k, t2.k) != 1:
        raise PreconditionFailed(f"gcd(k, ell) must be 1, got {t1.k}, {t2.k}")
    m = t1.k * t2.k
    return combine_crt(lift(t1, m), lift(t2, m))


# ---- prime-modulus classification ----

def achievable_d_set(k: int, p: int) -> set:
    """All gcd degrees d realizable by algebraic k-tuples mod p: sums of
    degrees over proper subsets of the irreducible factors of x^k - 1 that
    contain x - 1.  The full set is excluded since it would force the zero
    tuple."""
    if not is_prime(p):
        raise ModulusNotPrime(f"{p} is not prime")
    if k % p == 0:
        raise PDividesK(f"p={p} divides k={k}")
    degs = [f.degree for f, _ in factor_xk_minus_1(k, p)
            if f.coeffs != (p - 1, 1)]
    out = set()
    for r in range(len(degs)):
        for comb in combinations(range(len(degs)), r):
            out.add(1 + sum(degs[i] for i in comb))
    return out


def _poly_product(polys, p):
    out = FpPoly(p, (1,))
    for g in polys:
        out = polyfp.mul(out, g)
    return out


def _subset_with_degree(rest, target):
    # lexicographically first index subset (by size, then order) hitting target
    for r in range(len(rest) + 1):
        for comb in combinations(range(len(rest)), r):
            if sum(rest[i].degree for i in comb) == target:
                return [rest[i] for i in comb]
    return None


def _witness_poly_generic(k: int, p: int, d: int) -> FpPoly:
    # p > k+1: pick a degree-d divisor g containing x-1, then close the
    # zero gaps of g with linear factors whose roots avoid (x^k-1)/g
    factors = [f for f, _ in factor_xk_minus_1(k, p)]
    one = FpPoly(p, (p - 1, 1))
    rest = [f for f in factors if f != one]
    chosen = _subset_with_degree(rest, d - 1)
    if chosen is None:
        raise AssertionError("achievable d with no matching factor subset")
    g = _poly_product([one] + chosen, p)
    others = polyfp.divide_exact(xk_minus_1(k, p), g)
    forbidden = frozenset(polyfp.roots(others))
    f = g
    for _ in range(k - 1 - d):
        _, f = close_zero_gap(f, forbidden)
    return f


def _witness_poly_divisor_case(k: int, p: int, d: int) -> FpPoly:
    # d | k, d < k, p > k: (x^d - 1)^(k/d - 1) * (x^{d-1} + ... + 1) has
    # degree k-1, every coefficient nonzero, and gcd x^d - 1
    base = xk_minus_1(d, p)
    f = FpPoly(p, (1,))
    for _ in range(k // d - 1):
        f = polyfp.mul(f, base)
    return polyfp.mul(f, FpPoly(p, (1,) * d))


def _witness_poly_small_d(k: int, p: int, d: int) -> FpPoly:
    # p = k+1, d < k/2: grow (x-1)^(k/2-d) by d-1 distinct linear factors
    # keeping every coefficient nonzero, then multiply by the rootless
    # binomial x^{k/2} - a with a a generator of the unit group
    a = smallest_primitive_root(p)
    g = FpPoly(p, (1,))
    minus_one = FpPoly(p, (p - 1, 1))
    for _ in range(k // 2 - d):
        g = polyfp.mul(g, minus_one)
    used = {1}
    for _ in range(d - 1):
        alpha, g = close_zero_gap(g, frozenset(used))
        used.add(alpha)
    half = [0] * (k // 2 + 1)
    half[0] = -a % p
    half[k // 2] = 1
    return polyfp.mul(g, FpPoly(p, tuple(half)))


def _witness_poly_large_d(k: int, p: int, d: int) -> FpPoly:
    # p = k+1, d > k/2: start from d - k/2 distinct roots of x^{k/2} - 1
    # (including 1), close gaps with roots drawn from S union T, then
    # multiply by x^{k/2} + 1 whose root set S completes the degree-d gcd
    half = k // 2
    S = {x for x in range(1, p) if pow(x, half, p) == p - 1}
    T = [1]
    for x in range(2, p):
        if len(T) == d - half:
            break
        if x not in S:
            T.append(x)
    g = FpPoly(p, (1,))
    for alpha in T:
        g = polyfp.mul(g, FpPoly(p, (-alpha % p, 1)))
    forbidden = frozenset(set(range(1, p)) - S - set(T))
    for _ in range(k - d - 1):
        _, g = close_zero_gap(g, forbidden)
    plus = [0] * (half + 1)
    plus[0] = 1
    plus[half] = 1
    return polyfp.mul(g, FpPoly(p, tuple(plus)))


def construct_prime_case(k: int, p: int, d: int) -> PolygonTuple:
    """A geometric k-tuple mod p whose group is C_p^{k-d} : C_k.

    For p > k+1 the zero-gap procedure works for every achievable d; at
    p = k+1 the divisor, small-d and large-d constructions cover the line.
    The output is re-verified through the general SNF route before being
    returned.
    """
    if not is_prime(p) or not p > k or k < 3:
        raise PreconditionFailed(f"need prime p > k >= 3, got k={k}, p={p}")
    if d not in achievable_d_set(k, p):
        raise DNotAchievable(f"d={d} is not an achievable gcd degree for k={k}, p={p}")
    if p > k + 1:
        f = _witness_poly_generic(k, p, d)
    elif k % d == 0 and d < k:
        f = _witness_poly_divisor_case(k, p, d)
    elif d < k / 2:
        f = _witness_poly_small_d(k, p, d)
    else:
        f = _witness_poly_large_d(k, p, d)
    if f.degree != k - 1 or w_function(f) != 0:
        raise InternalVerificationFailed(f"witness polynomial malformed: {f}")
    raw = validate(f.coeffs, p, "algebraic")
    witness = pad_to_geometric(raw) or find_geometric_associate(raw)
    if witness is None or deltas_of(witness) != (p,) * (k - d):
        raise InternalVerificationFailed(
            f"witness for (k={k}, p={p}, d={d}) failed re-verification")
    return witness


@dataclass(frozen=True)
class ClassificationReport:
    """Achievable groups with verified witnesses, plus the exclusions and
    the rule that rules each one out."""

    parameters: dict
    achievable: list
    witnesses: dict
    excluded: list

    def to_json_dict(self) -> dict:
        return {
            "parameters": dict(self.parameters),
            "achievable": [
                {"group": g.to_json_dict(),
                 "witness": self.witnesses[g].to_json_dict()}
                for g in self.achievable
            ],
            "excluded": [
                {"group": g.to_json_dict(), "rule": rule}
                for g, rule in self.excluded
            ],
        }


def classify_prime(k: int, p: int) -> ClassificationReport:
    """Every monodromy group of geometric k-tuples mod a prime p > k,
    each with a constructed witness; excluded d values cite the
    factor-degree subset-sum rule."""
    if not is_prime(p) or not p > k or k < 3:
        raise PreconditionFailed(f"need prime p > k >= 3, got k={k}, p={p}")
    ach = achievable_d_set(k, p)
    achievable = []
    witnesses = {}
    excluded = []
    for d in range(1, k):
        desc = GroupDescriptor(p, k, (p,) * (k - d))
        if d in ach:
            achievable.append(desc)
            witnesses[desc] = construct_prime_case(k, p, d)
        else:
            excluded.append((desc, "factor-degree-subset-sum"))
    return ClassificationReport(
        parameters={"k": k, "p": p}, achievable=achievable,
        witnesses=witnesses, excluded=excluded)


def _alpha_admissible(alpha: int) -> bool:
    # alpha = 3^i * product of primes = 1 mod 3, with i at most 1
    for q, e in prime_factorization(alpha).items():
        if q == 3:
            if e > 1:
                return False
        elif q % 3 != 1:
            return False
    return True


def classify_triangles(n: int) -> ClassificationReport:
    """All triangle groups (C_n x C_{n/alpha}) : C_3 for a modulus n.

    Admissible alpha are the divisors of n of the form 3^i * (primes that
    are 1 mod 3), i <= 1; every geometric triangle mod n is scanned in
    lexicographic order, the first hit per alpha becomes its witness, and
    any disagreement with the prediction raises loudly.
    """
    if n < 3:
        raise NTooSmall(f"need n >= 3, got {n}")
    if n == 3:
        only = GroupDescriptor(3, 3, (3,))
        return ClassificationReport(
            parameters={"n": 3},
            achievable=[only],
            witnesses={only: validate([1, 1, 1], 3, "geometric")},
            excluded=[(GroupDescriptor(3, 3, (3, 3)), "single-triangle-modulus")])
    admissible = {a for a in divisors(n) if _alpha_admissible(a)}
    found = {}
    for a0 in range(1, n - 1):
        for a1 in range(1, n - a0):
            a2 = n - a0 - a1
            if gcd(a0, a1, a2, n) != 1:
                continue
            alpha = gcd(n, a0 * a2 - a1 * a1)
            if alpha not in found:
                found[alpha] = (a0, a1, a2)
    if set(found) != admissible:
        raise InternalVerificationFailed(
            f"triangle classification mismatch at n={n}: "
            f"search found alpha in {sorted(found)}, predicted {sorted(admissible)}")
    achievable = []
    witnesses = {}
    for alpha in sorted(admissible):
        desc = GroupDescriptor(n, 3, tuple(d for d in (n, n // alpha) if d > 1))
        achievable.append(desc)
        witnesses[desc] = validate(found[alpha], n, "geometric")
    excluded = [
        (GroupDescriptor(n, 3, tuple(d for d in (n, n // alpha) if d > 1)),
         "norm-form-admissibility")
        for alpha in divisors(n) if alpha not in admissible
    ]
    return ClassificationReport(
        parameters={"n": n}, achievable=achievable,
        witnesses=witnesses, excluded=excluded)


# ---- composite moduli ----

@dataclass(frozen=True)
class FeasibilityResult:
    """Outcome of the prime-power covering decision."""

    feasible: bool
    witness: Optional[PolygonTuple] = None
    failing_modulus: Optional[int] = None
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "feasible": self.feasible,
            "witness": self.witness.to_json_dict() if self.witness else None,
            "failing_modulus": self.failing_modulus,
            "detail": self.detail,
        }


def composite_feasible(k: int, n: int, deltas,
                       per_prime_cap: int = DEFAULT_PRIME_POWER_CAP) -> FeasibilityResult:
    """Decide whether some geometric k-tuple mod n has N with the given
    invariant factors.

    Per prime power q dividing n, all algebraic k-tuples mod q achieving
    N/qN are enumerated along with their zero-coordinate patterns; the
    target is feasible exactly when one tuple per prime power can be chosen
    so every coordinate is nonzero somewhere, in which case the CRT
    combination has a geometric associate that is returned as a verified
    witness.
    """
    deltas = tuple(int(d) for d in deltas if int(d) > 1)
    if k < 3:
        raise PreconditionFailed(f"need k >= 3, got {k}")
    if not deltas:
        raise PreconditionFailed("target invariant factors must be nontrivial")
    for d in deltas:
        if n % d != 0:
            raise PreconditionFailed(f"target factor {d} does not divide n={n}")
    for a, b in zip(deltas, deltas[1:]):
        if a % b != 0:
            raise PreconditionFailed(f"targets {deltas} are not a divisibility chain")

    patterns_by_q = {}
    for p, e in sorted(prime_factorization(n).items()):
        q = p**e
        if q**k > per_prime_cap:
            raise CapExceeded(
                f"prime power {q} needs {q**k} candidate tuples, cap is {per_prime_cap}")
        target = tuple(x for x in (gcd(d, q) for d in deltas) if x > 1)
        found = {}
        for cand in enumerate_algebraic(k, q):
            if deltas_of(cand) == target:
                pattern = frozenset(
                    i for i, a in enumerate(cand.entries) if a == 0)
                found.setdefault(pattern, cand)
        if not found:
            return FeasibilityResult(
                feasible=False, failing_modulus=q,
                detail=f"no algebraic {k}-tuple mod {q} achieves N/{q}N "
                       f"= {target or '(trivial)'}")
        patterns_by_q[q] = found

    qs = sorted(patterns_by_q)
    memo = {}

    def search(idx, uncovered):
        if idx == len(qs):
            return [] if not uncovered else None
        key = (idx, uncovered)
        if key in memo:
            return memo[key]
        result = None
        for pattern in sorted(patterns_by_q[qs[idx]], key=sorted):
            rest = search(idx + 1, uncovered & pattern)
            if rest is not None:
                result = [pattern] + rest
                break
        memo[key] = result
        return result

    choice = search(0, frozenset(range(k)))
    if choice is None:
        return FeasibilityResult(
            feasible=False,
            detail="every combination of achieving tuples leaves some "
                   "coordinate zero at all prime powers")
    parts = [patterns_by_q[q][pat] for q, pat in zip(qs, choice)]
    combined = reduce(combine_crt, parts) if len(parts) > 1 else parts[0]
    witness = pad_to_geometric(combined) or find_geometric_associate(combined)
    if witness is None or deltas_of(witness) != deltas:
        raise InternalVerificationFailed(
            f"covering witness for (k={k}, n={n}, {deltas}) failed re-verification")
    return FeasibilityResult(feasible=True, witness=witness,
                             detail="witness verified by the SNF route")
