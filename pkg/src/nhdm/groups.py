"""Canonical signatures of abstract abelian groups.

A signature is the invariant-factor form of a finitely generated abelian
group: finite cyclic factors with each order dividing the next, a torus rank
counting U(1) factors, and optionally a starred factor whose generator is an
antiunitary transformation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .exactmath import IntMatrix, inverse_unimodular, snf


def _prime_factorization(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@dataclass(frozen=True, order=True)
class GroupSignature:
    """Abelian group in canonical form.

    ``finite`` lists invariant factors >= 2 in the divisibility chain,
    ``torus_rank`` counts U(1) factors, and ``star`` (if set) is the order of
    the cyclic factor generated by an antiunitary transformation.
    """

    finite: tuple[int, ...] = ()
    torus_rank: int = 0
    star: int | None = None

    def __post_init__(self):
        factors = tuple(int(f) for f in self.finite)
        if any(f < 2 for f in factors):
            raise ValueError("invariant factors must be at least 2")
        if any(factors[i + 1] % factors[i] for i in range(len(factors) - 1)):
            raise ValueError(f"not a divisibility chain: {factors}")
        object.__setattr__(self, "finite", factors)

    @property
    def is_trivial(self) -> bool:
        return not self.finite and self.torus_rank == 0 and self.star is None

    @property
    def is_finite(self) -> bool:
        return self.torus_rank == 0

    def order(self) -> int | float:
        if self.torus_rank > 0:
            return math.inf
        return math.prod(self.finite) * (self.star or 1)

    def name(self) -> str:
        parts = ["U(1)"] * self.torus_rank
        parts += [f"Z{f}" for f in self.finite]
        if self.star is not None:
            parts.append(f"Z{self.star}*")
        return "x".join(parts) if parts else "trivial"

    def sort_key(self):
        order = self.order()
        return (self.torus_rank, order if order != math.inf else 0,
                len(self.finite), self.finite, self.star or 0)

    def to_json(self) -> dict:
        return {"finite": list(self.finite), "torus_rank": self.torus_rank,
                "star": self.star, "name": self.name(),
                "order": None if self.torus_rank else self.order()}

    def __str__(self) -> str:
        return self.name()


TRIVIAL = GroupSignature()


def canonicalize(factors: Iterable[int], torus_rank: int = 0) -> GroupSignature:
    """Invariant-factor form of a product of cyclic groups.

    Repeatedly merges coprime parts, e.g. Z2 x Z3 becomes Z6 while Z2 x Z4
    stays as it is.
    """
    primes: dict[int, list[int]] = {}
    for f in factors:
        f = int(f)
        if f < 1:
            raise ValueError("cyclic factors must be positive")
        for p, e in _prime_factorization(f).items():
            primes.setdefault(p, []).append(e)
    width = max((len(v) for v in primes.values()), default=0)
    chain = []
    for i in range(width):
        d = 1
        for p, exps in primes.items():
            exps_sorted = sorted(exps, reverse=True)
            if i < len(exps_sorted):
                d *= p ** exps_sorted[i]
        chain.append(d)
    return GroupSignature(tuple(sorted(d for d in chain if d > 1)), torus_rank)


def group_from_snf(d: Sequence[int], n: int) -> GroupSignature:
    """Group read off a charge-matrix Smith diagonal with n torus angles.

    Nonzero diagonal entries above one contribute cyclic factors; the rank
    deficit contributes U(1) factors.
    """
    rank = sum(1 for x in d if x != 0)
    if rank > n:
        raise ValueError("rank exceeds the number of angles")
    return canonicalize((x for x in d if x > 1), torus_rank=n - rank)


def order(g: GroupSignature) -> int | float:
    return g.order()


def abelian_groups_of_order(m: int) -> list[GroupSignature]:
    """All abelian groups of order m, in canonical invariant-factor form."""
    if m < 1:
        raise ValueError("order must be positive")

    def partitions(k: int, cap: int | None = None):
        if k == 0:
            yield ()
            return
        cap = k if cap is None else min(cap, k)
        for first in range(cap, 0, -1):
            for rest in partitions(k - first, first):
                yield (first,) + rest

    per_prime = []
    for p, e in sorted(_prime_factorization(m).items()):
        per_prime.append([(p, part) for part in partitions(e)])
    out = []
    from itertools import product as iproduct

    for combo in iproduct(*per_prime) if per_prime else [()]:
        factors = []
        for p, part in combo:
            factors.extend(p ** e for e in part)
        out.append(canonicalize(factors))
    return sorted(set(out), key=GroupSignature.sort_key)


def all_abelian_groups_up_to(order_bound: int) -> list[GroupSignature]:
    """All nontrivial abelian groups of order 2..order_bound."""
    out: list[GroupSignature] = []
    for m in range(2, order_bound + 1):
        out.extend(abelian_groups_of_order(m))
    return sorted(out, key=GroupSignature.sort_key)


def extend_by_antiunitary(unitary: GroupSignature,
                          square_exponents: Sequence[int]) -> GroupSignature:
    """Signature of an abelian group extended by a commuting antiunitary j.

    ``unitary`` is the finite unitary part (any torus factors pass through
    unchanged), and ``square_exponents`` expresses j^2 over its invariant-
    factor generators.  The result is the invariant-factor form of the full
    group with the star on the factor whose generator is antiunitary.
    """
    gens = unitary.finite
    r = len(gens)
    if len(square_exponents) != r:
        raise ValueError("square_exponents must match the invariant factors")
    # Relation matrix over generators (g_1..g_r, j): the cyclic orders and
    # j^2 = sum c_i g_i.
    rows = [[gens[i] if k == i else 0 for k in range(r + 1)] for i in range(r)]
    rows.append([-int(c) for c in square_exponents] + [2])
    res = snf(IntMatrix.from_rows(rows))
    # Row i of v^-1 expresses the i-th canonical generator over (g_1..g_r, j);
    # an odd j-coefficient marks it antiunitary.
    v_inv = inverse_unimodular(res.v)
    factors = []
    flags = []
    for i, d in enumerate(res.d):
        if d == 1:
            continue
        factors.append(d)
        flags.append(v_inv[(i, r)] % 2 == 1)
    # Concentrate antiunitarity on the earliest flagged factor: for i < k a
    # transvection h_k -> h_k - h_i is an automorphism because d_i | d_k.
    first = next(i for i, f in enumerate(flags) if f)
    star = factors[first]
    finite = tuple(f for i, f in enumerate(factors) if i != first)
    return GroupSignature(finite, unitary.torus_rank, star=star)
