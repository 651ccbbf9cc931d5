"""Exchange-graph exploration and quasi-automorphism search.

Exploration walks the mutation tree breadth-first and merges vertices whose
seeds agree up to a simultaneous permutation of the mutable indices, which
is exactly the unlabeled exchange graph.  Identity is decided by a
canonical form: the lexicographically least serialization over all index
permutations, guarded to small ranks where the full orbit is affordable; a
permutation-invariant bucket key keeps the factorial work off the common
path.

The quasi-automorphism search then relabels each explored seed every
possible way, keeps the relabelings whose principal part matches the base
(or its negative, for maps into the opposite pattern), and asks the
integer row-span solver for a monomial map; distinct solutions to one
target are deduplicated up to proportionality.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import laurent as lp
from . import orbits as ob
from . import quasihom as qh
from . import seeds as sd
from .laurent import Poly
from .quasihom import NerveEdge

MAX_CANONICAL_RANK = 8


class IncompleteNode(Exception):
    """Requested data needs neighbors the exploration did not reach."""


def permute_btilde(
    btilde: Sequence[Sequence[int]], n: int, perm: Sequence[int]
) -> List[List[int]]:
    """Relabel mutable indices: principal rows and all columns move, frozen
    rows stay put."""
    out = []
    for i in range(len(btilde)):
        src_row = btilde[perm[i]] if i < n else btilde[i]
        out.append([src_row[perm[j]] for j in range(n)])
    return out


def _serialize(btilde: Sequence[Sequence[int]], cluster: Sequence[Poly]):
    return (
        tuple(tuple(row) for row in btilde),
        tuple(tuple(sorted(x.items())) for x in cluster),
    )


def canonical_key(seed: sd.Seed):
    """Least serialization over all relabelings of the mutable indices."""
    assert seed.n <= MAX_CANONICAL_RANK, "full permutation orbit too large"
    best = None
    for perm in permutations(range(seed.n)):
        candidate = _serialize(
            permute_btilde(seed.btilde, seed.n, perm),
            [seed.cluster[perm[i]] for i in range(seed.n)],
        )
        if best is None or candidate < best:
            best = candidate
    return best


def _bucket_key(seed: sd.Seed):
    return tuple(sorted(tuple(sorted(x.items())) for x in seed.cluster))


@dataclass
class PatternNode:
    """One unlabeled seed: the first representative reached, its mutation
    word, and the cluster with frozen content divided out for comparisons
    across coefficient choices."""

    seed: sd.Seed
    word: Tuple[int, ...]
    normalized_cluster: List[Poly]
    _canonical: Optional[tuple] = field(default=None, repr=False)

    def canonical(self):
        if self._canonical is None:
            self._canonical = canonical_key(self.seed)
        return self._canonical


@dataclass
class ExplorationGraph:
    nodes: List[PatternNode]
    adjacency: List[Dict[int, int]]
    hit_depth: bool
    hit_nodes: bool

    @property
    def complete(self) -> bool:
        return not (self.hit_depth or self.hit_nodes)


def _normalize_cluster(seed: sd.Seed) -> List[Poly]:
    return [
        lp.shift(x, lp.exp_neg(ob.frozen_content(x, seed.n))) for x in seed.cluster
    ]


def explore(
    initial: sd.Seed, max_depth: int = 16, max_nodes: int = 500
) -> ExplorationGraph:
    """Breadth-first mutation closure up to relabeling.

    Nodes are deduplicated through the canonical form; hitting either limit
    flags the graph as truncated instead of failing, since infinite-type
    patterns never close.
    """
    assert max_depth >= 0 and max_nodes >= 1
    nodes = [PatternNode(initial, (), _normalize_cluster(initial))]
    adjacency: List[Dict[int, int]] = [{}]
    buckets: Dict[tuple, List[int]] = {_bucket_key(initial): [0]}
    hit_depth = hit_nodes = False
    queue = deque([0])
    while queue:
        idx = queue.popleft()
        node = nodes[idx]
        if len(node.word) >= max_depth:
            hit_depth = True
            continue
        for k in range(initial.n):
            neighbor = sd.mutate_seed(node.seed, k)
            bucket = buckets.setdefault(_bucket_key(neighbor), [])
            found = None
            if bucket:
                key = canonical_key(neighbor)
                for j in bucket:
                    if nodes[j].canonical() == key:
                        found = j
                        break
            if found is None:
                if len(nodes) >= max_nodes:
                    hit_nodes = True
                    continue
                found = len(nodes)
                nodes.append(
                    PatternNode(
                        neighbor, node.word + (k,), _normalize_cluster(neighbor)
                    )
                )
                adjacency.append({})
                bucket.append(found)
                queue.append(found)
            adjacency[idx][k] = found
    return ExplorationGraph(nodes, adjacency, hit_depth, hit_nodes)


def validate_nerve(nerve: Iterable[NerveEdge], n: int) -> bool:
    try:
        qh.nerve_vertices(nerve, n)
    except qh.InvalidNerve:
        return False
    return True


def star_neighborhood(graph: ExplorationGraph, node: int) -> List[NerveEdge]:
    """The n tree edges at one vertex, as a nerve anchored at its word."""
    word = graph.nodes[node].word
    missing = [k for k in range(graph.nodes[node].seed.n) if k not in graph.adjacency[node]]
    if missing:
        raise IncompleteNode(f"node {node} lacks neighbors at labels {missing}")
    return [(word, k) for k in sorted(graph.adjacency[node])]


@dataclass
class QuasiAutomorphism:
    """A relabeled explored seed the base pattern maps onto, with the
    witnessing monomial map in the rerooted coordinates."""

    node: int
    permutation: Tuple[int, ...]
    matrix_map: qh.MonomialMap
    direction: str


def find_quasi_automorphisms(
    graph: ExplorationGraph, base: sd.Seed, include_opposite: bool = True
) -> List[QuasiAutomorphism]:
    """All ways the pattern maps onto a relabeling of an explored seed.

    For every node and permutation whose principal part reproduces the
    base's (or its negative), the row-span solver is asked for a map; per
    target and orientation, solutions are kept one per proportionality
    class.  On a truncated graph the list is a lower bound, nothing more.
    """
    out: List[QuasiAutomorphism] = []
    kept: Dict[Tuple[int, str], List[qh.MonomialMap]] = {}
    negated = [[-v for v in row] for row in base.principal]
    for idx, node in enumerate(graph.nodes):
        for perm in permutations(range(base.n)):
            permuted = permute_btilde(node.seed.btilde, base.n, perm)
            candidates = []
            if permuted[: base.n] == base.principal:
                candidates.append(("direct", permuted))
            if include_opposite and permuted[: base.n] == negated:
                candidates.append(
                    ("opposite", [[-v for v in row] for row in permuted])
                )
            for direction, target in candidates:
                m = qh.construct_qh(
                    base.btilde, target, base.var_names, base.var_names
                )
                if m is None:
                    continue
                bucket = kept.setdefault((idx, direction), [])
                if any(
                    qh.proportional(m, seen, base.btilde) is not None
                    for seen in bucket
                ):
                    continue
                bucket.append(m)
                out.append(QuasiAutomorphism(idx, tuple(perm), m, direction))
    return out


def graph_to_json(graph: ExplorationGraph) -> dict:
    names = graph.nodes[0].seed.var_names
    nodes = [
        {
            "id": i,
            "word": list(node.word),
            "cluster": [lp.to_str(x, names) for x in node.seed.cluster],
        }
        for i, node in enumerate(graph.nodes)
    ]
    edges = [
        {"from": i, "label": k, "to": j}
        for i, nbrs in enumerate(graph.adjacency)
        for k, j in sorted(nbrs.items())
    ]
    return {
        "nodes": nodes,
        "edges": edges,
        "complete": graph.complete,
        "hit_depth": graph.hit_depth,
        "hit_nodes": graph.hit_nodes,
    }


def graph_to_dot(graph: ExplorationGraph) -> str:
    names = graph.nodes[0].seed.var_names
    lines = ["graph exchange {"]
    for i, node in enumerate(graph.nodes):
        label = "\\n".join(lp.to_str(x, names) for x in node.seed.cluster)
        lines.append(f'  n{i} [label="{label}"];')
    # endpoints may label one exchange differently; emit each edge once
    undirected: Dict[Tuple[int, int], int] = {}
    for i, nbrs in enumerate(graph.adjacency):
        for k, j in sorted(nbrs.items()):
            undirected.setdefault((min(i, j), max(i, j)), k)
    for (i, j), k in sorted(undirected.items()):
        lines.append(f'  n{i} -- n{j} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines)
