"""Partitions, bipartitions, and the pair correspondence.

Partitions are plain tuples of weakly decreasing positive ints, () for
empty.  A bipartition is a pair of partitions.  Everything downstream
(counting, tables, traces) keys off the statistics and orders defined
here, so this module has no dependencies beyond the error types.
"""

from __future__ import annotations

from functools import lru_cache
from math import factorial
from typing import Iterator

from .errors import Ambiguous, NotInImage, RankTooSmall

Partition = tuple[int, ...]
Bipartition = tuple[Partition, Partition]


def is_partition(seq) -> bool:
    return all(isinstance(x, int) and x > 0 for x in seq) and all(
        seq[i] >= seq[i + 1] for i in range(len(seq) - 1)
    )


def trim(seq) -> Partition:
    """Drop trailing zeros and validate.

    >>> trim((3, 1, 0, 0))
    (3, 1)
    """
    out = tuple(int(x) for x in seq)
    while out and out[-1] == 0:
        out = out[:-1]
    if not is_partition(out):
        raise ValueError(f"not weakly decreasing positive: {seq}")
    return out


def size(lam: Partition) -> int:
    return sum(lam)


def conjugate(lam: Partition) -> Partition:
    """Transpose of the Young diagram.

    >>> conjugate((3, 1))
    (2, 1, 1)
    """
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= k) for k in range(1, lam[0] + 1))


def n_stat(lam: Partition) -> int:
    """sum (i-1) * lam_i, the staircase weight."""
    return sum(i * x for i, x in enumerate(lam))


def pad(lam: Partition, length: int) -> tuple[int, ...]:
    if len(lam) > length:
        raise ValueError(f"{lam} has more than {length} parts")
    return tuple(lam) + (0,) * (length - len(lam))


def add_parts(lam: Partition, mu: Partition) -> Partition:
    """Componentwise sum, e.g. the type of a direct sum refinement."""
    k = max(len(lam), len(mu))
    return trim(tuple(pad(lam, k)[i] + pad(mu, k)[i] for i in range(k)))


def contains_diagram(inner: Partition, outer: Partition) -> bool:
    """Row containment of Young diagrams: inner_i <= outer_i for all i."""
    return len(inner) <= len(outer) and all(
        inner[i] <= outer[i] for i in range(len(inner))
    )


def dominance_leq(a: Partition, b: Partition) -> bool:
    """Dominance: every prefix sum of a is <= the one of b (same size)."""
    if sum(a) != sum(b):
        return False
    ta = tb = 0
    for i in range(max(len(a), len(b))):
        ta += a[i] if i < len(a) else 0
        tb += b[i] if i < len(b) else 0
        if ta > tb:
            return False
    return True


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n, largest part first, lex descending.

    >>> list(partitions_of(3))
    [(3,), (2, 1), (1, 1, 1)]
    """
    if n < 0:
        return
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(max_part, n)
    for first in range(top, 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first,) + rest


def n_standard_tableaux(lam: Partition) -> int:
    """Number of standard Young tableaux of shape lam (hook lengths)."""
    n = sum(lam)
    if n == 0:
        return 1
    conj = conjugate(lam)
    hooks = 1
    for i, row in enumerate(lam):
        for j in range(row):
            hooks *= row - j + conj[j] - i - 1
    d, r = divmod(factorial(n), hooks)
    assert r == 0
    return d


# --- statistics on bipartitions -----------------------------------------


def orbit_dim(nu: Partition, rank: int) -> int:
    """|nu|*(rank-1) - 2*n(nu).

    For |nu| = rank this is the dimension of the conjugacy class of a
    nilpotent matrix with Jordan type nu.
    """
    if len(nu) > rank:
        raise RankTooSmall(f"{nu} has more than {rank} parts")
    return sum(nu) * (rank - 1) - 2 * n_stat(nu)


def pair_orbit_dim(bp: Bipartition, rank: int) -> int:
    """Dimension statistic of the (operator, vector) orbit: orbit_dim + |lam|."""
    lam, mu = bp
    return orbit_dim(add_parts(lam, mu), rank) + sum(lam)


def pair_codim(bp: Bipartition) -> int:
    """2 n(lam) + 2 n(mu) + |mu|; satisfies pair_orbit_dim + pair_codim = n*rank."""
    lam, mu = bp
    return 2 * n_stat(lam) + 2 * n_stat(mu) + sum(mu)


# --- orders and enumeration ----------------------------------------------


def interleaved_key(bp: Bipartition, length: int) -> tuple[int, ...]:
    """(lam_1, mu_1, lam_2, mu_2, ...) padded with zeros to 2*length."""
    lam, mu = bp
    la, mu_ = pad(lam, length), pad(mu, length)
    out = []
    for i in range(length):
        out.append(la[i])
        out.append(mu_[i])
    return tuple(out)


def bipartitions_of(n: int) -> list[Bipartition]:
    """All bipartitions of n in descending interleaved-lex order.

    The order is a linear extension of the alternating-sum order
    (largest element first), so triangular systems indexed by it can be
    solved by forward substitution.

    >>> bipartitions_of(2)
    [((2,), ()), ((1,), (1,)), ((1, 1), ()), ((), (2,)), ((), (1, 1))]
    """
    out: list[Bipartition] = []
    for k in range(n, -1, -1):
        for lam in partitions_of(k):
            for mu in partitions_of(n - k):
                out.append((lam, mu))
    out.sort(key=lambda bp: interleaved_key(bp, n), reverse=True)
    return out


def ah_leq(a: Bipartition, b: Bipartition) -> bool:
    """Alternating-sum order on bipartitions of equal size.

    a <= b iff every truncated alternating sum
    (lam_1, lam_1+mu_1, lam_1+mu_1+lam_2, ...) of a is <= that of b.
    """
    if sum(a[0]) + sum(a[1]) != sum(b[0]) + sum(b[1]):
        return False
    length = max(len(a[0]), len(a[1]), len(b[0]), len(b[1])) + 1
    ka = interleaved_key(a, length)
    kb = interleaved_key(b, length)
    ta = tb = 0
    for x, y in zip(ka, kb):
        ta += x
        tb += y
        if ta > tb:
            return False
    return True


# --- the pair correspondence ---------------------------------------------


@lru_cache(maxsize=None)
def upsilon(bp: Bipartition) -> tuple[Partition, Partition]:
    """Send (lam, mu) to (nu, theta): the types of the full space and of
    the quotient by the cyclic subspace generated by the marked vector.

    Model: nu = lam + mu componentwise; on a direct sum of cyclic
    u-modules of sizes nu_i with generators w_i, the vector is
    v = sum_i u^{mu_i} w_i, and theta is the Jordan type of u on the
    quotient by k[u]v.  The quotient type comes out of a height profile:
    u^a v first enters u^m D at m(a) = min over rows i with lam_i > a of
    a + mu_i, and column k of theta loses a box iff m hits k-1.

    >>> upsilon(((1,), (1,)))
    ((2,), (1,))
    >>> upsilon(((1, 1), (1,)))
    ((2, 1), (2,))
    """
    lam, mu = bp
    nu = add_parts(lam, mu)
    lam1 = lam[0] if lam else 0
    marks = set()
    for a in range(lam1):
        heights = [
            a + (mu[i] if i < len(mu) else 0)
            for i in range(len(lam))
            if lam[i] > a
        ]
        marks.add(min(heights))
    nut = conjugate(nu)
    theta_t = tuple(
        nut[k] - (1 if k in marks else 0) for k in range(len(nut))
    )
    assert all(
        theta_t[i] >= theta_t[i + 1] for i in range(len(theta_t) - 1)
    ), f"profile not monotone for {bp}"
    return nu, conjugate(trim(theta_t))


def xi(nu: Partition, theta: Partition) -> Bipartition:
    """Inverse of upsilon.  Raises NotInImage / Ambiguous.

    >>> xi((2,), (1,))
    ((1,), (1,))
    """
    found: set[Bipartition] = set()
    nu = trim(nu)
    theta = trim(theta)

    def descend(i: int, lam: list[int], mu: list[int]) -> None:
        if i == len(nu):
            bp = (trim(tuple(lam)), trim(tuple(mu)))
            if upsilon(bp) == (nu, theta):
                found.add(bp)
            return
        hi = min(nu[i], lam[i - 1] if i else nu[i])
        for li in range(hi, -1, -1):
            mi = nu[i] - li
            if i and mi > mu[i - 1]:
                continue
            lam.append(li)
            mu.append(mi)
            descend(i + 1, lam, mu)
            lam.pop()
            mu.pop()

    descend(0, [], [])
    if not found:
        raise NotInImage(f"no bipartition maps to ({nu}, {theta})")
    if len(found) > 1:
        raise Ambiguous(f"{sorted(found)} all map to ({nu}, {theta})")
    return found.pop()


# --- signatures (weakly decreasing integer vectors) -----------------------


def star(lam: Partition, rank: int) -> tuple[int, ...]:
    """Negate-and-reverse on length-`rank` signatures."""
    p = pad(lam, rank)
    return tuple(-x for x in reversed(p))


def shifted(sig: tuple[int, ...], c: int) -> tuple[int, ...]:
    """Add c to every entry."""
    return tuple(x + c for x in sig)


def signature_to_partition(sig: tuple[int, ...]) -> Partition:
    """Strip trailing zeros; entries must be weakly decreasing and >= 0."""
    if any(x < 0 for x in sig):
        raise ValueError(f"negative entry in {sig}")
    return trim(sig)
