"""Exact integer linear algebra: circulants, Smith normal form, minor gcds,
and ranks over prime fields.

Matrices are plain lists of rows of Python ints, so every pivot stays exact
no matter how fast the entries grow during the reduction.
"""

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .errors import JOutOfRange, PNotPrime
from .numtheory import is_prime, prime_factorization
from .polygon import PolygonTuple


def identity(n: int) -> list:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(A: list, B: list) -> list:
    rows, inner, cols = len(A), len(B), len(B[0])
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        Ai = A[i]
        Oi = out[i]
        for t in range(inner):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(cols):
                    Oi[j] += a * Bt[j]
    return out


def det(M: list) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    M = [row[:] for row in M]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if M[i][i] == 0:
            for r in range(i + 1, n):
                if M[r][i]:
                    M[i], M[r] = M[r], M[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                M[r][c] = (M[r][c] * M[i][i] - M[r][i] * M[i][c]) // prev
            M[r][i] = 0
        prev = M[i][i]
    return sign * M[-1][-1]


def circulant(t: PolygonTuple) -> list:
    """The k x k matrix with entry (i, j) = a_{(i-j) mod k}; column j is the
    j-step downward cyclic shift of (a_0, ..., a_{k-1})."""
    a = t.entries
    k = len(a)
    return [[a[(i - j) % k] for j in range(k)] for i in range(k)]


@dataclass(frozen=True)
class SnfResult:
    """Diagonalization A = U * D * V with unimodular U, V.

    ``divisors`` lists the diagonal of D: nonnegative, each dividing the
    next (every integer divides 0, so trailing zeros are fine).
    """

    U: list
    D: list
    V: list
    divisors: tuple


def smith_normal_form(A: list) -> SnfResult:
    """Smith normal form over the integers with both transforms.

    Repeated gcd pivoting: the absolutely smallest nonzero entry of the
    trailing block is moved to the pivot, its row and column are reduced
    with floor-division quotients (swapping whenever a remainder survives,
    which shrinks the pivot), and a row addition repairs any entry the
    pivot fails to divide.  U and V accumulate the inverse elementary
    operations so that U*D*V equals the input exactly at every step.
    """
    rows = len(A)
    cols = len(A[0])
    D = [[int(x) for x in row] for row in A]
    U = identity(rows)
    V = identity(cols)

    def row_add(i, j, c):
        # D: row_i += c*row_j;  U: col_j -= c*col_i
        Di, Dj = D[i], D[j]
        for x in range(cols):
            Di[x] += c * Dj[x]
        for r in U:
            r[j] -= c * r[i]

    def row_swap(i, j):
        D[i], D[j] = D[j], D[i]
        for r in U:
            r[i], r[j] = r[j], r[i]

    def row_negate(i):
        D[i] = [-x for x in D[i]]
        for r in U:
            r[i] = -r[i]

    def col_add(i, j, c):
        # D: col_j += c*col_i;  V: row_i -= c*row_j
        for r in D:
            r[j] += c * r[i]
        Vi, Vj = V[i], V[j]
        for x in range(cols):
            Vi[x] -= c * Vj[x]

    def col_swap(i, j):
        for r in D:
            r[i], r[j] = r[j], r[i]
        V[i], V[j] = V[j], V[i]

    limit = min(rows, cols)
    for t in range(limit):
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(D[i][j])
                if v and (best is None or v < best):
                    piv, best = (i, j), v
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    if q:
                        row_add(i, t, -q)
                    if D[i][t]:
                        row_swap(i, t)
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, cols):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    if q:
                        col_add(t, j, -q)
                    if D[t][j]:
                        col_swap(j, t)
                        dirty = True
            if dirty:
                continue
            culprit = next(
                (i for i in range(t + 1, rows)
                 if any(D[i][j] % D[t][t] for j in range(t + 1, cols))),
                None)
            if culprit is None:
                break
            row_add(t, culprit, 1)
        if D[t][t] < 0:
            row_negate(t)
    return SnfResult(U, D, V, tuple(D[i][i] for i in range(limit)))


def snf_divisors(A: list) -> tuple:
    """Elementary divisors only; same pivoting without transform updates."""
    rows = len(A)
    cols = len(A[0])
    D = [[int(x) for x in row] for row in A]
    limit = min(rows, cols)
    out = []
    for t in range(limit):
        piv = None
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(D[i][j])
                if v and (best is None or v < best):
                    piv, best = (i, j), v
        if piv is None:
            out.extend([0] * (limit - t))
            break
        D[t], D[piv[0]] = D[piv[0]], D[t]
        if piv[1] != t:
            for r in D:
                r[t], r[piv[1]] = r[piv[1]], r[t]
        while True:
            dirty = False
            for i in range(t + 1, rows):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    if q:
                        Di, Dt = D[i], D[t]
                        for x in range(t, cols):
                            Di[x] -= q * Dt[x]
                    if D[i][t]:
                        D[i], D[t] = D[t], D[i]
                        dirty = True
            if dirty:
                continue
            for j in range(t + 1, cols):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    if q:
                        for r in D:
                            r[j] -= q * r[t]
                    if D[t][j]:
                        for r in D:
                            r[j], r[t] = r[t], r[j]
                        dirty = True
            if dirty:
                continue
            culprit = next(
                (i for i in range(t + 1, rows)
                 if any(D[i][j] % D[t][t] for j in range(t + 1, cols))),
                None)
            if culprit is None:
                break
            Dt, Dc = D[t], D[culprit]
            for x in range(t, cols):
                Dt[x] += Dc[x]
        out.append(abs(D[t][t]))
    return tuple(out)


def _local_divisors(A: list, p: int, e: int) -> list:
    """Invariant factors of A over Z/p^eZ: powers p^v, ascending valuation.

    The pivot of minimal p-adic valuation divides the whole trailing block,
    so each stage clears its row and column in one pass and every entry
    stays reduced mod p^e; this equals gcd(d_i, p^e) for the integer SNF
    divisors d_i without their coefficient growth.
    """
    q = p**e
    M = [[x % q for x in row] for row in A]
    rows, cols = len(M), len(M[0])
    limit = min(rows, cols)

    def val(x):
        if x == 0:
            return e
        v = 0
        while x % p == 0:
            x //= p
            v += 1
        return v

    out = []
    for t in range(limit):
        piv, vmin = None, e
        for i in range(t, rows):
            for j in range(t, cols):
                v = val(M[i][j])
                if v < vmin:
                    piv, vmin = (i, j), v
                    if v == 0:
                        break
            if vmin == 0:
                break
        if piv is None:
            out.extend([q] * (limit - t))
            break
        M[t], M[piv[0]] = M[piv[0]], M[t]
        if piv[1] != t:
            for r in M:
                r[t], r[piv[1]] = r[piv[1]], r[t]
        unit = M[t][t] // p**vmin
        inv = pow(unit, -1, q)
        M[t] = [x * inv % q for x in M[t]]
        pv = p**vmin
        for i in range(t + 1, rows):
            if M[i][t]:
                f = M[i][t] // pv
                Mi, Mt = M[i], M[t]
                for x in range(t, cols):
                    Mi[x] = (Mi[x] - f * Mt[x]) % q
        for j in range(t + 1, cols):
            M[t][j] = 0
        out.append(pv)
    return out


def invariant_factors_mod(A: list, n: int) -> tuple:
    """gcd(d_i, n) for the integer SNF divisors d_i of A, computed one
    prime power of n at a time so entries never leave [0, n)."""
    limit = min(len(A), len(A[0]))
    out = [1] * limit
    for p, e in prime_factorization(n).items():
        for i, local in enumerate(_local_divisors(A, p, e)):
            out[i] *= local
    return tuple(out)


def minor_gcd(A: list, j: int) -> int:
    """gcd (>= 0) of the determinants of all j x j minors; 0 if all vanish."""
    rows, cols = len(A), len(A[0])
    if not 1 <= j <= min(rows, cols):
        raise JOutOfRange(f"j={j} outside 1..{min(rows, cols)}")
    g = 0
    for rsub in combinations(range(rows), j):
        for csub in combinations(range(cols), j):
            g = gcd(g, det([[A[r][c] for c in csub] for r in rsub]))
            if g == 1:
                return 1
    return g


def rank_mod_p(A: list, p: int) -> int:
    """Rank of A over F_p by Gaussian elimination."""
    if not is_prime(p):
        raise PNotPrime(f"{p} is not prime")
    M = [[x % p for x in row] for row in A]
    rows, cols = len(M), len(M[0])
    rank = 0
    for c in range(cols):
        piv = next((r for r in range(rank, rows) if M[r][c]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][c], -1, p)
        M[rank] = [x * inv % p for x in M[rank]]
        for r in range(rows):
            if r != rank and M[r][c]:
                f = M[r][c]
                M[r] = [(x - f * y) % p for x, y in zip(M[r], M[rank])]
        rank += 1
        if rank == rows:
            break
    return rank
