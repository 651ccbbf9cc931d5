"""Quasi-homomorphisms between geometric-type patterns.

A monomial map sends each source generator to a monomial in the target
generators; its matrix of exponents acts on exponent vectors.  Such a map is
a quasi-homomorphism when it carries the source extended matrix onto the
target one and each cluster variable to a frozen-monomial multiple of its
counterpart, which this module verifies at a seed, constructs from a pair of
extended matrices by integer row reduction, and compares up to
proportionality through grading matrices.  Quasi-inverses are certified on
the star neighborhood of a seed, and nerve-based verification classifies a
candidate map as landing in the target pattern or its opposite.

Everything is exact integer arithmetic; failures are reported, not
approximated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import lattice as la
from . import laurent as lp
from . import orbits as ob
from . import seeds as sd
from .laurent import Exponent, Poly

NerveEdge = Tuple[Tuple[int, ...], int]


class InvalidMap(Exception):
    """Monomial map data violates shape or coefficient preservation."""


class PrincipalMismatch(Exception):
    """Extended matrices disagree on their principal parts."""


class DecomposableTarget(Exception):
    """Nerve verification needs an indecomposable target exchange matrix."""


class InvalidNerve(Exception):
    """Edge set is not a connected subtree covering every mutation label."""


class MonomialMap:
    """Exponent matrix of a coefficient-preserving monomial map.

    Rows index target generators, columns source generators; column k is the
    image of the k-th source variable.  Frozen source columns must have zero
    entries in mutable target rows, so frozen monomials stay frozen.
    """

    __slots__ = ("matrix", "src_vars", "dst_vars", "src_mutable", "dst_mutable")

    def __init__(
        self,
        matrix: Sequence[Sequence[int]],
        src_vars: Sequence[str],
        dst_vars: Sequence[str],
        src_mutable: int,
        dst_mutable: int,
    ):
        self.matrix = [list(row) for row in matrix]
        self.src_vars = list(src_vars)
        self.dst_vars = list(dst_vars)
        self.src_mutable = src_mutable
        self.dst_mutable = dst_mutable
        rows = len(self.matrix)
        if rows != len(self.dst_vars) or rows == 0:
            raise InvalidMap("row count must match target variables")
        cols = len(self.matrix[0])
        if any(len(row) != cols for row in self.matrix):
            raise InvalidMap("ragged matrix")
        if cols != len(self.src_vars):
            raise InvalidMap("column count must match source variables")
        if not 0 <= src_mutable <= cols or not 0 <= dst_mutable <= rows:
            raise InvalidMap("mutable counts out of range")
        for k in range(src_mutable, cols):
            for i in range(dst_mutable):
                if self.matrix[i][k]:
                    raise InvalidMap(
                        f"frozen source column {k} hits mutable target row {i}"
                    )

    def __repr__(self) -> str:
        return (
            f"MonomialMap({len(self.dst_vars)}x{len(self.src_vars)}, "
            f"{self.src_mutable}+{len(self.src_vars) - self.src_mutable} -> "
            f"{self.dst_mutable}+{len(self.dst_vars) - self.dst_mutable})"
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MonomialMap):
            return NotImplemented
        return (
            self.matrix == other.matrix
            and self.src_vars == other.src_vars
            and self.dst_vars == other.dst_vars
            and self.src_mutable == other.src_mutable
            and self.dst_mutable == other.dst_mutable
        )


def identity_map(seed: sd.Seed) -> MonomialMap:
    arity = seed.n + seed.m
    return MonomialMap(
        la.identity(arity), seed.var_names, seed.var_names, seed.n, seed.n
    )


def map_to_json(m: MonomialMap) -> dict:
    return {
        "matrix": [list(row) for row in m.matrix],
        "src_vars": list(m.src_vars),
        "dst_vars": list(m.dst_vars),
    }


def map_from_json(obj: dict, src_mutable: int, dst_mutable: int) -> MonomialMap:
    """Mutable counts are not part of the wire format; the caller supplies
    them from the seed context the map travels with."""
    return MonomialMap(
        obj["matrix"], obj["src_vars"], obj["dst_vars"], src_mutable, dst_mutable
    )


def apply_map(m: MonomialMap, f: Poly) -> Poly:
    """Term-by-term monomial substitution; exponents go through the matrix."""
    out: Poly = {}
    cols = len(m.src_vars)
    for e, c in f.items():
        if len(e) != cols:
            raise ValueError(f"arity {len(e)} does not match {cols} source variables")
        image = tuple(la.mat_vec(m.matrix, list(e)))
        got = out.get(image, 0) + c
        if got:
            out[image] = got
        else:
            del out[image]
    return out


def compose_maps(outer: MonomialMap, inner: MonomialMap) -> MonomialMap:
    if inner.dst_vars != outer.src_vars or inner.dst_mutable != outer.src_mutable:
        raise InvalidMap("maps do not chain")
    return MonomialMap(
        la.matmul(outer.matrix, inner.matrix),
        inner.src_vars,
        outer.dst_vars,
        inner.src_mutable,
        outer.dst_mutable,
    )


def map_exponent(m: MonomialMap, e: Exponent) -> Exponent:
    return tuple(la.mat_vec(m.matrix, list(e)))


def map_seed(m: MonomialMap, seed: sd.Seed) -> ob.SeedLike:
    """Image of a seed: a non-normalized seed in the target ambient, with
    coefficient pairs pushed through the map."""
    pairs = []
    for k in range(seed.n):
        plus, minus = sd.coefficient_pair(seed, k)
        pairs.append(
            (map_exponent(m, next(iter(plus))), map_exponent(m, next(iter(minus))))
        )
    cluster = [apply_map(m, x) for x in seed.cluster]
    return ob.SeedLike(seed.principal, cluster, pairs, m.dst_vars)


def _frozen_ratio(f: Poly, g: Poly, num_mutable: int) -> Optional[Exponent]:
    ratio = lp.monomial_ratio(f, g)
    if ratio is None or any(ratio[:num_mutable]):
        return None
    return ratio


def verify_qh(
    m: MonomialMap, src: sd.Seed, dst: sd.Seed, allow_opposite: bool = False
) -> bool:
    """Quasi-homomorphism test at one seed pair.

    True iff the principal parts agree, the matrix carries the source
    extended matrix to the target one, and every source cluster variable
    maps to a frozen-monomial multiple of its target counterpart.  With
    allow_opposite, the same conditions against the opposite target seed
    also count.
    """
    assert src.n == dst.n, "principal ranks must agree"
    if _verify_qh_direct(m, src, dst):
        return True
    return allow_opposite and _verify_qh_direct(m, src, sd.opposite_seed(dst))


def _verify_qh_direct(m: MonomialMap, src: sd.Seed, dst: sd.Seed) -> bool:
    if len(m.src_vars) != src.n + src.m or len(m.dst_vars) != dst.n + dst.m:
        return False
    if m.src_mutable != src.n or m.dst_mutable != dst.n:
        return False
    if src.principal != dst.principal:
        return False
    if la.matmul(m.matrix, src.btilde) != dst.btilde:
        return False
    for i in range(src.n):
        if _frozen_ratio(apply_map(m, src.cluster[i]), dst.cluster[i], dst.n) is None:
            return False
    return True


def construct_qh(
    src_btilde: Sequence[Sequence[int]],
    dst_btilde: Sequence[Sequence[int]],
    src_vars: Sequence[str],
    dst_vars: Sequence[str],
) -> Optional[MonomialMap]:
    """Canonical monomial map between extended matrices, if one exists.

    The top block is fixed to (identity | 0), so all freedom sits in the
    frozen rows; each target coefficient row must be an integer combination
    of source rows, found through the Hermite transform.  Absent when some
    row is not in the integer row span.
    """
    report = construct_qh_diagnostics(src_btilde, dst_btilde, src_vars, dst_vars)
    if report["map"] is None:
        return None
    return MonomialMap(
        report["map"], src_vars, dst_vars, len(src_btilde[0]), len(dst_btilde[0])
    )


def construct_qh_diagnostics(
    src_btilde: Sequence[Sequence[int]],
    dst_btilde: Sequence[Sequence[int]],
    src_vars: Sequence[str],
    dst_vars: Sequence[str],
) -> dict:
    """Same search as construct_qh, reporting per-row solvability.

    Each failed coefficient row records whether a rational combination
    exists, separating lattice obstructions from genuine span mismatches.
    """
    n = len(src_btilde[0])
    src_top = [list(r) for r in src_btilde[:n]]
    dst_top = [list(r) for r in dst_btilde[:n]]
    if len(dst_btilde[0]) != n or src_top != dst_top:
        raise PrincipalMismatch("extended matrices have different principal parts")
    src_arity = len(src_btilde)
    rows: List[dict] = []
    matrix: Optional[List[List[int]]] = [
        [1 if i == j else 0 for j in range(src_arity)] for i in range(n)
    ]
    for i in range(n, len(dst_btilde)):
        target = list(dst_btilde[i])
        z = la.solve_left(src_btilde, target)
        entry = {"row": i, "integer": z is not None}
        if z is None:
            entry["rational"] = la.solve_left_rational(src_btilde, target) is not None
            matrix = None
        elif matrix is not None:
            matrix.append(z)
        rows.append(entry)
    return {
        "principal_equal": True,
        "rows": rows,
        "map": matrix,
        "src_vars": list(src_vars),
        "dst_vars": list(dst_vars),
    }


def normalization_map(m: MonomialMap) -> Callable[[Poly], Exponent]:
    """The semifield map onto frozen monomials: apply then tropicalize.

    Its value divides the image of a cluster variable down to the separated
    target variable.
    """

    def c(f: Poly) -> Exponent:
        return lp.tropicalize(apply_map(m, f), m.dst_mutable)

    return c


def transported_y(m: MonomialMap, seed: sd.Seed) -> List[Exponent]:
    """Normalized coefficient tuple of the image seed: the map's
    normalization applied to each hatted variable, as a frozen exponent."""
    c = normalization_map(m)
    out = []
    for j in range(seed.n):
        num, den = sd.hatted(seed, j)
        out.append(lp.exp_sub(c(num), c(den)))
    return out


@dataclass(frozen=True)
class Grading:
    """Integer grading rows annihilating an extended matrix on the left."""

    rows: Tuple[Tuple[int, ...], ...]


def proportional(
    m1: MonomialMap, m2: MonomialMap, src_btilde: Sequence[Sequence[int]]
) -> Optional[Grading]:
    """Grading carrying one map to the other, absent when they differ in
    mutable rows or the difference fails to annihilate the source matrix."""
    assert m1.src_vars == m2.src_vars and m1.dst_vars == m2.dst_vars
    assert m1.src_mutable == m2.src_mutable and m1.dst_mutable == m2.dst_mutable
    diff = [
        [a - b for a, b in zip(r1, r2)] for r1, r2 in zip(m1.matrix, m2.matrix)
    ]
    if any(any(row) for row in diff[: m1.dst_mutable]):
        return None
    bottom = diff[m1.dst_mutable :]
    if bottom and any(any(v) for v in la.matmul(bottom, src_btilde)):
        return None
    return Grading(tuple(tuple(row) for row in bottom))


def grading_space(btilde: Sequence[Sequence[int]]) -> List[List[int]]:
    """Basis of the integer left kernel: all gradings of the pattern."""
    return la.left_kernel_basis(btilde)


def quasi_inverse_check(m: MonomialMap, w: MonomialMap, src: sd.Seed) -> bool:
    """True when the composite fixes, up to frozen monomials, every cluster
    variable of the seed and of each of its mutation neighbors.  Checking
    this star certifies the pair as quasi-inverse."""
    composite = compose_maps(w, m)
    if composite.src_vars != composite.dst_vars:
        return False
    neighborhood = [src] + [sd.mutate_seed(src, k) for k in range(src.n)]
    for seed in neighborhood:
        for x in seed.cluster:
            if _frozen_ratio(apply_map(composite, x), x, src.n) is None:
                return False
    return True


def reduce_word(word: Sequence[int]) -> Tuple[int, ...]:
    """Cancel immediate repeats; mutation in one direction is an involution,
    so reduced words are the canonical vertex names of the labeled tree."""
    out: List[int] = []
    for k in word:
        if out and out[-1] == k:
            out.pop()
        else:
            out.append(k)
    return tuple(out)


def nerve_vertices(nerve: Iterable[NerveEdge], n: int) -> List[Tuple[int, ...]]:
    """Sorted vertex words of a valid nerve.

    Raises InvalidNerve unless the edges are connected and every mutation
    label occurs on at least one of them.
    """
    edges = list(nerve)
    if not edges:
        raise InvalidNerve("empty edge set")
    seen_labels = set()
    adjacency: Dict[Tuple[int, ...], List[Tuple[int, ...]]] = {}
    for word, label in edges:
        if not 0 <= label < n or any(not 0 <= k < n for k in word):
            raise InvalidNerve(f"label out of range in edge {(word, label)}")
        a = reduce_word(word)
        b = reduce_word(list(word) + [label])
        seen_labels.add(label)
        adjacency.setdefault(a, []).append(b)
        adjacency.setdefault(b, []).append(a)
    if seen_labels != set(range(n)):
        raise InvalidNerve(f"labels {sorted(set(range(n)) - seen_labels)} missing")
    start = next(iter(adjacency))
    reached = {start}
    stack = [start]
    while stack:
        for nxt in adjacency[stack.pop()]:
            if nxt not in reached:
                reached.add(nxt)
                stack.append(nxt)
    if reached != set(adjacency):
        raise InvalidNerve("edge set is not connected")
    return sorted(adjacency)


def _exchange_terms(seed: sd.Seed, k: int) -> Tuple[Poly, Poly]:
    plus, minus = sd.coefficient_pair(seed, k)
    for j in range(seed.n):
        e = seed.btilde[j][k]
        if e > 0:
            plus = lp.mul(plus, lp.power(seed.cluster[j], e))
        elif e < 0:
            minus = lp.mul(minus, lp.power(seed.cluster[j], -e))
    return plus, minus


def check_on_nerve(
    m: MonomialMap,
    nerve: Iterable[NerveEdge],
    src_seed: sd.Seed,
    dst_seed: sd.Seed,
) -> str:
    """Classify a map by its behavior on a nerve: "direct", "opposite", or
    "fail".

    Nerve edges are (vertex word, label) pairs in the mutation tree.  At
    each edge the images of the exchanged variables must be frozen-monomial
    multiples of their counterparts, and the two terms of the image exchange
    relation must match the target's pair with one common ratio, either in
    order (target pattern) or crossed (its opposite).  Targets whose
    exchange matrix decomposes are rejected, since the two cases would not
    be mutually exclusive.
    """
    edges = list(nerve)
    vertices = nerve_vertices(edges, src_seed.n)
    src_at: Dict[Tuple[int, ...], sd.Seed] = {}
    dst_at: Dict[Tuple[int, ...], sd.Seed] = {}
    for v in vertices:
        src_at[v] = sd.mutate_word(src_seed, v)
        dst_at[v] = sd.mutate_word(dst_seed, v)
        if not sd.is_indecomposable(dst_at[v].principal):
            raise DecomposableTarget(f"target at vertex {v} decomposes")
    direct_all = opposite_all = True
    for word, label in edges:
        a = reduce_word(word)
        b = reduce_word(list(word) + [label])
        for v in (a, b):
            image = apply_map(m, src_at[v].cluster[label])
            if _frozen_ratio(image, dst_at[v].cluster[label], dst_seed.n) is None:
                return "fail"
        src_plus, src_minus = _exchange_terms(src_at[a], label)
        dst_plus, dst_minus = _exchange_terms(dst_at[a], label)
        ip, im = apply_map(m, src_plus), apply_map(m, src_minus)
        r_pp = _frozen_ratio(ip, dst_plus, dst_seed.n)
        r_mm = _frozen_ratio(im, dst_minus, dst_seed.n)
        r_pm = _frozen_ratio(ip, dst_minus, dst_seed.n)
        r_mp = _frozen_ratio(im, dst_plus, dst_seed.n)
        if not (r_pp is not None and r_pp == r_mm):
            direct_all = False
        if not (r_pm is not None and r_pm == r_mp):
            opposite_all = False
        if not direct_all and not opposite_all:
            return "fail"
    return "direct" if direct_all else "opposite"
