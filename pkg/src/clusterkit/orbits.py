"""Seed orbits: rescaling action and orbit equivalence.

A SeedLike is a non-normalized seed: a principal exchange matrix, cluster
variables as Laurent polynomials, and explicit coefficient pairs (p+, p-)
stored as frozen monomials.  Monomials of the coefficient group appear
everywhere as plain exponent tuples over the ambient variables, with
coefficient +1 implied; ambient positions below the rank are mutable and the
rest are frozen, matching the seed module's convention.

Two seeds lie in one orbit when they differ by the rescaling action: c
divides the cluster entrywise while d and c together transform the
coefficient pairs.  `seeds_equivalent` decides this and returns the witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from . import laurent as lp
from . import seeds as sd
from .laurent import Exponent, Poly

Pair = Tuple[Exponent, Exponent]


@dataclass(frozen=True)
class Rescaling:
    """Group element (c, d) acting on seeds; entries are frozen monomials."""

    c: Tuple[Exponent, ...]
    d: Tuple[Exponent, ...]

    def __post_init__(self):
        assert len(self.c) == len(self.d), "c and d must have equal rank"


class SeedLike:
    """Non-normalized seed with explicit coefficient pairs; immutable."""

    __slots__ = ("n", "b", "cluster", "pairs", "var_names")

    def __init__(
        self,
        b: Sequence[Sequence[int]],
        cluster: Sequence[Poly],
        pairs: Sequence[Pair],
        var_names: Sequence[str],
    ):
        self.n = len(b)
        self.b = [list(row) for row in b]
        self.cluster = [dict(x) for x in cluster]
        self.pairs = [(tuple(p), tuple(q)) for p, q in pairs]
        self.var_names = list(var_names)
        assert len(self.cluster) == self.n and len(self.pairs) == self.n
        for x in self.cluster:
            assert x, "zero cluster variable"

    def __repr__(self) -> str:
        xs = ", ".join(lp.to_str(x, self.var_names) for x in self.cluster)
        return f"SeedLike(n={self.n}, cluster=[{xs}])"


def seedlike_equal(a: SeedLike, b: SeedLike) -> bool:
    return (
        a.b == b.b
        and a.cluster == b.cluster
        and a.pairs == b.pairs
        and a.var_names == b.var_names
    )


def seedlike_from_seed(seed: sd.Seed) -> SeedLike:
    """Embed a normalized geometric seed: pairs read off the frozen rows."""
    pairs = []
    for k in range(seed.n):
        plus, minus = sd.coefficient_pair(seed, k)
        pairs.append((next(iter(plus)), next(iter(minus))))
    return SeedLike(seed.principal, seed.cluster, pairs, seed.var_names)


def seedlike_hatted(sl: SeedLike, j: int) -> sd.RationalPair:
    """Hatted variable (p+_j / p-_j) * prod_i x_i^b_ij as a polynomial pair."""
    num: Poly = lp.monomial(sl.pairs[j][0])
    den: Poly = lp.monomial(sl.pairs[j][1])
    for i in range(sl.n):
        e = sl.b[i][j]
        if e > 0:
            num = lp.mul(num, lp.power(sl.cluster[i], e))
        elif e < 0:
            den = lp.mul(den, lp.power(sl.cluster[i], -e))
    return num, den


def _scaled(e: Exponent, s: int) -> Exponent:
    return tuple(x * s for x in e)


def identity_rescaling(n: int, arity: int) -> Rescaling:
    zero = (0,) * arity
    return Rescaling((zero,) * n, (zero,) * n)


def invert_rescaling(r: Rescaling) -> Rescaling:
    return Rescaling(
        tuple(lp.exp_neg(e) for e in r.c), tuple(lp.exp_neg(e) for e in r.d)
    )


def compose_rescalings(r1: Rescaling, r2: Rescaling) -> Rescaling:
    """The rescaling acting as r1 followed by r2 (the action is abelian)."""
    return Rescaling(
        tuple(lp.exp_add(a, b) for a, b in zip(r1.c, r2.c)),
        tuple(lp.exp_add(a, b) for a, b in zip(r1.d, r2.d)),
    )


def apply_rescaling(sl: SeedLike, r: Rescaling) -> SeedLike:
    """x_j divided by c_j; pairs divided by d_j and corrected by c powers."""
    n = sl.n
    assert len(r.c) == n, "rescaling rank mismatch"
    cluster = [lp.shift(x, lp.exp_neg(c)) for x, c in zip(sl.cluster, r.c)]
    pairs = []
    for j in range(n):
        plus = lp.exp_sub(sl.pairs[j][0], r.d[j])
        minus = lp.exp_sub(sl.pairs[j][1], r.d[j])
        for i in range(n):
            bij = sl.b[i][j]
            if bij > 0:
                plus = lp.exp_add(plus, _scaled(r.c[i], bij))
            elif bij < 0:
                minus = lp.exp_add(minus, _scaled(r.c[i], -bij))
        pairs.append((plus, minus))
    return SeedLike(sl.b, cluster, pairs, sl.var_names)


def mutate_seedlike(sl: SeedLike, k: int) -> SeedLike:
    """Non-normalized mutation, with one fixed coefficient representative.

    The pair at k swaps; for j away from k the ratio rule leaves a common
    rescaling free, and the representative chosen here multiplies only the
    positive side (when b_kj > 0) or only the negative side (when b_kj < 0).
    Any other representative differs by a rescaling, which seeds_equivalent
    absorbs.
    """
    n = sl.n
    assert 0 <= k < n
    plus: Poly = lp.monomial(sl.pairs[k][0])
    minus: Poly = lp.monomial(sl.pairs[k][1])
    for j in range(n):
        e = sl.b[j][k]
        if e > 0:
            plus = lp.mul(plus, lp.power(sl.cluster[j], e))
        elif e < 0:
            minus = lp.mul(minus, lp.power(sl.cluster[j], -e))
    cluster = list(sl.cluster)
    cluster[k] = lp.exact_div(lp.add(plus, minus), sl.cluster[k])
    pairs: List[Pair] = []
    for j in range(n):
        if j == k:
            pairs.append((sl.pairs[k][1], sl.pairs[k][0]))
            continue
        bkj = sl.b[k][j]
        pj_plus, pj_minus = sl.pairs[j]
        if bkj >= 0:
            pairs.append((lp.exp_add(pj_plus, _scaled(sl.pairs[k][0], bkj)), pj_minus))
        else:
            pairs.append((pj_plus, lp.exp_add(pj_minus, _scaled(sl.pairs[k][1], -bkj))))
    return SeedLike(sd.mutate_matrix(sl.b, k), cluster, pairs, sl.var_names)


def frozen_content(x: Poly, num_mutable: int) -> Exponent:
    """Largest frozen monomial dividing x: componentwise minimum exponent
    over the terms, with mutable positions zeroed."""
    assert x, "zero polynomial has no frozen content"
    m = lp.min_exponent(x)
    return (0,) * num_mutable + m[num_mutable:]


def seeds_equivalent(a: SeedLike, b: SeedLike) -> Optional[Rescaling]:
    """The rescaling carrying a to b, or None when the seeds are not in one
    orbit.

    Checks the orbit characterization: equal exchange matrices, cluster
    ratios that are frozen monomials, and a single d_j making both halves of
    each coefficient pair match.  The witness is verified by applying it
    before being returned, so a non-None result is always a true witness.
    """
    if a.n != b.n or a.b != b.b or a.var_names != b.var_names:
        return None
    n = a.n
    cs: List[Exponent] = []
    for j in range(n):
        ratio = lp.monomial_ratio(a.cluster[j], b.cluster[j])
        if ratio is None or any(ratio[:n]):
            return None
        cs.append(ratio)
    ds: List[Exponent] = []
    for j in range(n):
        d_plus = lp.exp_sub(a.pairs[j][0], b.pairs[j][0])
        d_minus = lp.exp_sub(a.pairs[j][1], b.pairs[j][1])
        for i in range(n):
            bij = a.b[i][j]
            if bij > 0:
                d_plus = lp.exp_add(d_plus, _scaled(cs[i], bij))
            elif bij < 0:
                d_minus = lp.exp_add(d_minus, _scaled(cs[i], -bij))
        if d_plus != d_minus or any(d_plus[:n]):
            return None
        ds.append(d_plus)
    witness = Rescaling(tuple(cs), tuple(ds))
    if not seedlike_equal(apply_rescaling(a, witness), b):
        return None
    return witness
