"""Group descriptors: the SNF route and the closed forms.

The monodromy group of a tuple is N semidirect C_k where N is the column
span of the circulant over Z/nZ.  Running the integer Smith normal form on
the circulant and setting delta_i = n / gcd(d_i, n) gives N as the direct
sum of C_{delta_i}; dropped trivial factors leave the canonical descending
divisibility chain that descriptors compare by.
"""

from dataclasses import dataclass, field
from math import gcd, prod
from typing import Optional

from . import oracle
from .errors import PreconditionFailed
from .exactla import circulant, invariant_factors_mod
from .numtheory import prime_factorization
from .polygon import PolygonTuple, validate

DEFAULT_ACTION_CAP = 10_000


@dataclass(frozen=True)
class GroupDescriptor:
    """Isomorphism data (n, k, deltas) of a group N semidirect C_k.

    deltas are the invariant factors of N, each > 1, each dividing the
    previous.  ``trivial_action`` is True/False only when certified by the
    oracle's shift check; descriptors compare and hash on (n, k, deltas).
    """

    n: int
    k: int
    deltas: tuple
    trivial_action: Optional[bool] = field(default=None, compare=False)

    @property
    def order(self) -> int:
        return self.k * prod(self.deltas)

    def pretty(self) -> str:
        inner = " x ".join(f"C{d}" for d in self.deltas) or "C1"
        return f"({inner}) : C{self.k}"

    def to_json_dict(self) -> dict:
        return {"n": self.n, "k": self.k,
                "deltas": list(self.deltas), "order": self.order}


def _canonical_deltas(raw) -> tuple:
    out = tuple(d for d in raw if d > 1)
    for a, b in zip(out, out[1:]):
        if a % b:
            raise AssertionError(f"delta chain broken: {out}")
    return out


def descriptor_from_divisors(n: int, k: int, divisors,
                             trivial_action=None) -> GroupDescriptor:
    """delta_i = n / gcd(d_i, n), with gcd(0, n) = n; trailing 1s dropped."""
    deltas = _canonical_deltas(n // gcd(d, n) for d in divisors)
    return GroupDescriptor(n, k, deltas, trivial_action)


def deltas_of(t: PolygonTuple) -> tuple:
    """Invariant factors of the tuple's N.

    delta_i = n / gcd(d_i, n) where d_i are the integer SNF divisors of the
    circulant; the gcds are computed by the local prime-power reduction,
    which agrees with the full integer SNF but cannot blow up.
    """
    n = t.modulus
    return _canonical_deltas(
        n // d for d in invariant_factors_mod(circulant(t), n))


def group_of(t: PolygonTuple, action_cap: int = DEFAULT_ACTION_CAP) -> GroupDescriptor:
    """Descriptor of the tuple's monodromy group.

    The conjugation action is certified by enumerating the span and checking
    the cyclic shift, but only when the span is at most ``action_cap``
    elements; above that the flag stays None.
    """
    deltas = deltas_of(t)
    trivial = None
    if prod(deltas) <= action_cap:
        trivial = oracle.span_shift_is_trivial(t, cap=action_cap + 1)
    return GroupDescriptor(t.modulus, t.k, deltas, trivial)


def triangle_closed_form(a0: int, a1: int, a2: int, n: int) -> GroupDescriptor:
    """(C_n x C_{n/alpha}) : C_3 with alpha = gcd(n, a0*a2 - a1^2).

    The equivalent form gcd(n, a0*a1 - a2^2) agrees whenever the entries sum
    to 0 mod n; the minor-based variant is the one implemented.
    """
    validate([a0, a1, a2], n, "algebraic")
    alpha = gcd(n, a0 * a2 - a1 * a1)
    return GroupDescriptor(n, 3, _canonical_deltas((n, n // alpha)))


def quadrilateral_closed_form(a0: int, a1: int, a2: int, a3: int,
                              n: int) -> GroupDescriptor:
    """(C_n x C_{n/d2} x C_{n/d3}) : C_4 from the 2x2 minors of the folded
    circulant.

    With a3~ = -a0-a1-a2, d2 is the gcd of the six distinct 2x2 minors and
    n.  The 3x3 block determinant equals -(a0+a2)((a0+a1)^2+(a1+a2)^2) and
    is exactly divisible by the integer minor gcd, giving d3; when d2 = n,
    d3 = n too.
    """
    validate([a0, a1, a2, a3], n, "algebraic")
    b3 = -a0 - a1 - a2
    minors = (a0 * a2 - b3 * b3, a0 * a1 - a2 * b3, a0 * a0 - a2 * a2,
              a1 * b3 - a2 * a2, a0 * b3 - a1 * a2, a0 * a2 - a1 * a1)
    g2 = 0
    for m in minors:
        g2 = gcd(g2, m)
    d2 = gcd(g2, n)
    if d2 == n:
        d3 = n
    else:
        det3 = -(a0 + a2) * ((a0 + a1) ** 2 + (a1 + a2) ** 2)
        d3 = gcd(det3 // g2, n)
    return GroupDescriptor(n, 4, _canonical_deltas((n, n // d2, n // d3)))


def regular_kgon(k: int) -> GroupDescriptor:
    """Descriptor of the regular k-gon: C_{k/gcd(k,2)} x C_k, action trivial.

    Odd k: all entries k-2, modulus k.  Even k: all entries (k-2)/2,
    modulus k/2.  Both facts are asserted against the general route.
    """
    if k < 3:
        raise PreconditionFailed(f"need k >= 3, got {k}")
    if k % 2:
        t = validate([k - 2] * k, k, "geometric")
    else:
        t = validate([(k - 2) // 2] * k, k // 2, "geometric")
    desc = group_of(t)
    expected = k // gcd(k, 2)
    if desc.deltas != (expected,) or desc.trivial_action is not True:
        raise AssertionError(f"regular {k}-gon route disagreement: {desc}")
    return desc


def merge_invariant_factors(*chains) -> tuple:
    """Invariant factors of the direct sum of cyclic groups of the given
    orders: per prime, exponents re-sort descending and re-zip by rank."""
    exps = {}
    for chain in chains:
        for d in chain:
            for p, e in prime_factorization(d).items():
                exps.setdefault(p, []).append(e)
    for p in exps:
        exps[p].sort(reverse=True)
    width = max((len(v) for v in exps.values()), default=0)
    out = []
    for rank in range(width):
        f = 1
        for p, es in exps.items():
            if rank < len(es):
                f *= p ** es[rank]
        if f > 1:
            out.append(f)
    return tuple(out)
