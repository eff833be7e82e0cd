"""Finite-abelian bookkeeping for fixed points of equivariant TMF.

Enumerates subgroups K of a finite abelian G, keeps the quotients G/K that
embed in (Z/|G|)^2 (i.e. need at most two generators), and labels the
resulting moduli components.  For cyclic G the per-divisor splitting into
shift polynomials is assembled from the splitting module.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd, prod

from .cohomology import S1Table
from .levels import divisors, dsum_f, factorize
from .splitting import base_for_prime, shift_polynomial

MAX_ORDER = 10**4


@dataclass(frozen=True)
class FiniteAbelian:
    """Invariant-factor form [n_1, ..., n_r] with n_{i+1} | n_i."""

    factors: tuple[int, ...]

    def __post_init__(self):
        for f in self.factors:
            if f < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(self.factors, self.factors[1:]):
            if a % b != 0:
                raise ValueError("invariant factors must form a divisibility chain")

    @classmethod
    def from_orders(cls, orders) -> "FiniteAbelian":
        """Normalize an arbitrary list of cyclic orders to invariant factors."""
        primary: dict[int, list[int]] = {}
        for o in orders:
            if o < 1:
                raise ValueError("cyclic orders must be >= 1")
            for p, e in factorize(o):
                primary.setdefault(p, []).append(e)
        for exps in primary.values():
            exps.sort(reverse=True)
        rank = max((len(v) for v in primary.values()), default=0)
        factors = []
        for i in range(rank):
            factors.append(prod(p ** exps[i] for p, exps in primary.items() if i < len(exps)))
        return cls(tuple(factors))

    @property
    def order(self) -> int:
        return prod(self.factors) if self.factors else 1

    @property
    def rank(self) -> int:
        return len(self.factors)

    def elements(self) -> list[tuple[int, ...]]:
        return list(product(*(range(f) for f in self.factors)))

    def add(self, x, y) -> tuple[int, ...]:
        return tuple((a + b) % f for a, b, f in zip(x, y, self.factors))

    @property
    def zero(self) -> tuple[int, ...]:
        return tuple(0 for _ in self.factors)


def subgroups(G: FiniteAbelian) -> list[frozenset]:
    """All subgroups as element sets, deterministic order, complete and
    duplicate-free.  Bounded at |G| <= 10^4."""
    if G.order > MAX_ORDER:
        raise ValueError(f"group order {G.order} exceeds the bound {MAX_ORDER}")
    if G.rank <= 1:
        # cyclic fast path: exactly one subgroup per divisor
        n = G.order
        if n == 1:
            return [frozenset({G.zero})]
        return sorted(
            (frozenset((i,) for i in range(0, n, n // d)) for d in divisors(n)),
            key=lambda s: (len(s), sorted(s)),
        )

    elements = G.elements()
    trivial = frozenset({G.zero})
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        nxt = []
        for H in frontier:
            for g in elements:
                if g in H:
                    continue
                closure = set(H)
                queue = [g]
                while queue:
                    x = queue.pop()
                    if x in closure:
                        continue
                    closure.add(x)
                    queue.extend(G.add(x, h) for h in list(closure))
                Hg = frozenset(closure)
                if Hg not in seen:
                    seen.add(Hg)
                    nxt.append(Hg)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def quotient_invariant_factors(G: FiniteAbelian, K: frozenset) -> tuple[int, ...]:
    """Invariant factors of G/K, read off from element-order counts."""
    reps: dict[frozenset, tuple[int, ...]] = {}
    coset_of: dict[tuple[int, ...], frozenset] = {}
    for x in G.elements():
        coset = frozenset(G.add(x, k) for k in K)
        coset_of[x] = coset
        reps.setdefault(coset, x)
    if len(reps) == 1:
        return ()
    zero_coset = coset_of[G.zero]

    def order_of(coset) -> int:
        x = reps[coset]
        y, o = x, 1
        while coset_of[y] != zero_coset:
            y = G.add(y, x)
            o += 1
        return o

    orders = [order_of(c) for c in reps]
    exponent = 1
    for o in orders:
        exponent = exponent * o // gcd(exponent, o)
    # per prime p: #(cosets killed by p^k) = p^{sum_i min(k, e_i)}, which pins
    # the exponent multiset {e_i} of the p-primary part
    per_prime: dict[int, list[int]] = {}
    for p, emax in factorize(exponent):
        counts = [sum(1 for o in orders if p**k % o == 0) for k in range(emax + 1)]
        heights = []
        for k in range(1, emax + 1):
            ratio, log_jump = counts[k] // counts[k - 1], 0
            while ratio > 1:
                ratio //= p
                log_jump += 1
            heights.append(log_jump)  # number of factors with e_i >= k
        per_prime[p] = [sum(1 for h in heights if h > i) for i in range(heights[0])]
    rank = max(len(v) for v in per_prime.values())
    return tuple(
        prod(p ** exps[i] for p, exps in per_prime.items() if i < len(exps))
        for i in range(rank)
    )


@dataclass(frozen=True)
class Component:
    quotient: tuple[int, ...]
    label: str
    multiplicity: int


def _label(quotient: tuple[int, ...]) -> str:
    if not quotient:
        return "M_ell"
    if len(quotient) == 1:
        return f"M1({quotient[0]})"
    return f"M^({quotient[0]},{quotient[1]})"


def components(G: FiniteAbelian) -> list[Component]:
    """Moduli components of Hom(G, E): one per subgroup K with G/K 2-generated,
    aggregated by quotient type."""
    counts: dict[tuple[int, ...], int] = {}
    for K in subgroups(G):
        q = quotient_invariant_factors(G, K)
        if len(q) > 2:
            continue
        counts[q] = counts.get(q, 0) + 1
    return [Component(q, _label(q), c) for q, c in sorted(counts.items())]


@dataclass(frozen=True)
class DivisorSplit:
    divisor: int
    poly: object  # ShiftPolynomial, NoSplitting, or UNKNOWN
    expected_rank: int  # d_k * e1 * e2 / 24, independent of s1 data


def cyclic_full_split(n: int, l: int, table: S1Table | None = None):
    """Per-divisor shift polynomials for the fixed points of Z/n-equivariant
    TMF at a prime l not dividing n, plus one unit copy."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if l != 0 and n % l == 0:
        raise ValueError(f"prime l={l} must not divide n={n}")
    base = base_for_prime(l)
    e1, e2 = base.exponents
    parts = []
    for k in divisors(n):
        if k == 1:
            continue
        expected, frac = divmod(dsum_f(k) * e1 * e2, 24)
        if frac:
            raise ArithmeticError(f"fractional rank bookkeeping at divisor {k}")
        parts.append(DivisorSplit(k, shift_polynomial(k, base, table), expected))
    return {"unit": 1, "divisors": parts}
