"""Shared draw helpers for the randomized suites; everything is seeded by
the caller so runs are reproducible."""

from math import gcd

from billiard_monodromy import validate


def random_algebraic(rng, k_lo=2, k_hi=6, n_lo=2, n_hi=30):
    """A random valid algebraic tuple, by rejection."""
    while True:
        k = rng.randint(k_lo, k_hi)
        n = rng.randint(n_lo, n_hi)
        entries = [rng.randrange(n) for _ in range(k - 1)]
        entries.append(-sum(entries) % n)
        if not any(entries):
            continue
        if gcd(*entries, n) != 1:
            continue
        return validate(entries, n, "algebraic")


def random_geometric(rng, k_lo=3, k_hi=6, n_lo=3, n_hi=20):
    """A random valid geometric tuple, by rejection."""
    while True:
        k = rng.randint(k_lo, k_hi)
        n = rng.randint(n_lo, n_hi)
        target = (k - 2) * n
        entries = []
        ok = True
        for slot in range(k - 1):
            remaining = target - sum(entries) - (k - 1 - slot)
            hi = min(2 * n - 1, remaining)
            if hi < 1:
                ok = False
                break
            a = rng.randint(1, hi)
            entries.append(a)
        if not ok:
            continue
        entries.append(target - sum(entries))
        if any(a <= 0 or a >= 2 * n or a == n for a in entries):
            continue
        if gcd(*entries, n) != 1:
            continue
        return validate(entries, n, "geometric")
