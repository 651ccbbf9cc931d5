"""Grassmannian and band-matrix fixtures over exact determinant arithmetic.

Maximal minors of a generic matrix of independent indeterminates stand in
for Plücker coordinates, so Plücker relations are polynomial identities by
construction.  The band side lives in a second polynomial ring whose
matrix vanishes outside a diagonal band.  Between the two sides sits a
distinguished substitution turning a maximal minor into a maximal band
minor; it factors as frozen content times one irreducible row-solid
minor, the content exponents satisfy a tropical form of the short Plücker
relations, and a reverse substitution assembled from cyclic-interval
minors composes with it to a frozen multiple of the identity.  Cluster
presentations of both sides are emitted as seeds over formal generator
names, wired back to the determinants through the value tables.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice as la
from . import laurent as lp
from . import quasihom as qh
from . import seeds as sd
from .laurent import Poly

IndexSet = Tuple[int, ...]


class InvalidIndex(Exception):
    """Index data outside the context's valid range or shape."""


class NoFactorization(Exception):
    """A band image did not split as frozen content times a catalog minor."""


class UnsupportedContext(Exception):
    """No pinned fixture exists for the requested dimensions."""


@dataclass(frozen=True)
class GenericMatrixContext:
    """Dimensions k < n; the generic matrix has n−k rows and n columns, the
    band matrix the same rows with support i <= j <= i+k."""

    k: int
    n: int

    @property
    def rows(self) -> int:
        return self.n - self.k


def make_context(k: int, n: int) -> GenericMatrixContext:
    if not 1 <= k < n:
        raise InvalidIndex(f"need 1 <= k < n, got k={k}, n={n}")
    return GenericMatrixContext(k, n)


def x_arity(ctx: GenericMatrixContext) -> int:
    return ctx.rows * ctx.n


def y_arity(ctx: GenericMatrixContext) -> int:
    return ctx.rows * (ctx.k + 1)


def generic_matrix(ctx: GenericMatrixContext) -> List[List[Poly]]:
    """The full matrix of independent indeterminates, row-major."""
    arity = x_arity(ctx)
    return [
        [lp.variable(r * ctx.n + c, arity) for c in range(ctx.n)]
        for r in range(ctx.rows)
    ]


def band_matrix(ctx: GenericMatrixContext) -> List[List[Poly]]:
    """The band-supported matrix: row i holds y_{i,j} for i <= j <= i+k."""
    arity = y_arity(ctx)
    out = []
    for i in range(1, ctx.rows + 1):
        row = []
        for j in range(1, ctx.n + 1):
            if i <= j <= i + ctx.k:
                row.append(lp.variable((i - 1) * (ctx.k + 1) + (j - i), arity))
            else:
                row.append({})
        out.append(row)
    return out


def reduce_plucker_index(
    ctx: GenericMatrixContext, raw: Sequence[int]
) -> Tuple[int, IndexSet]:
    """Sort-parity sign and sorted least positive residues; sign 0 marks a
    repeated residue (the zero coordinate)."""
    if len(raw) != ctx.rows:
        raise InvalidIndex(
            f"index needs {ctx.rows} entries for n={ctx.n}, k={ctx.k}"
        )
    residues = [(s - 1) % ctx.n + 1 for s in raw]
    if len(set(residues)) != len(residues):
        return 0, ()
    inversions = sum(
        1
        for a in range(len(residues))
        for b in range(a + 1, len(residues))
        if residues[a] > residues[b]
    )
    return (-1 if inversions % 2 else 1), tuple(sorted(residues))


# Exponent vectors are packed into one integer, 16 bits per variable, so a
# monomial product is a single addition.  Determinant work never leaves
# nonnegative exponents and stays far below the lane bound.
_LANE = 16
_LANE_MASK = (1 << _LANE) - 1

FastPoly = Dict[int, int]


def _pack_exp(exp: Sequence[int]) -> int:
    key = 0
    for idx, e in enumerate(exp):
        if not 0 <= e <= _LANE_MASK:
            raise InvalidIndex("exponent outside the packed-lane range")
        key |= e << (_LANE * idx)
    return key


def _unpack_exp(key: int, arity: int) -> Tuple[int, ...]:
    return tuple((key >> (_LANE * idx)) & _LANE_MASK for idx in range(arity))


def _to_fast(f: Poly) -> FastPoly:
    return {_pack_exp(exp): coef for exp, coef in f.items()}


def _from_fast(fp: FastPoly, arity: int) -> Poly:
    return {_unpack_exp(key, arity): coef for key, coef in fp.items()}


def _fast_mul(f: FastPoly, g: FastPoly) -> FastPoly:
    if len(f) < len(g):
        f, g = g, f
    out: FastPoly = {}
    for kg, cg in g.items():
        for kf, cf in f.items():
            key = kf + kg
            c = out.get(key, 0) + cf * cg
            if c:
                out[key] = c
            elif key in out:
                del out[key]
    return out


def _fast_det(entries: Sequence[Sequence[FastPoly]]) -> FastPoly:
    """Cofactor expansion row by row, sharing minors across column subsets."""
    size = len(entries)
    level: Dict[int, FastPoly] = {0: {0: 1}}
    for t in range(size):
        nxt: Dict[int, FastPoly] = {}
        row = entries[t]
        for mask, minor in level.items():
            if not minor:
                continue
            for j in range(size):
                bit = 1 << j
                if mask & bit or not row[j]:
                    continue
                below = bin(mask & (bit - 1)).count("1")
                sign = -1 if (t + below) % 2 else 1
                acc = nxt.setdefault(mask | bit, {})
                for key, coef in _fast_mul(minor, row[j]).items():
                    c = acc.get(key, 0) + sign * coef
                    if c:
                        acc[key] = c
                    elif key in acc:
                        del acc[key]
        level = nxt
    return level.get((1 << size) - 1, {}) if size else {0: 1}


def poly_det(entries: Sequence[Sequence[Poly]], arity: int) -> Poly:
    """Determinant of a square matrix of polynomials with nonnegative
    exponents."""
    if not entries:
        return lp.constant(1, arity)
    return _from_fast(_fast_det([[_to_fast(e) for e in row] for row in entries]), arity)


@lru_cache(maxsize=None)
def _sorted_plucker_fast(ctx: GenericMatrixContext, cols: IndexSet) -> FastPoly:
    entries = [
        [{1 << (_LANE * (r * ctx.n + c - 1)): 1} for c in cols]
        for r in range(ctx.rows)
    ]
    return _fast_det(entries)


def _plucker_fast(ctx: GenericMatrixContext, raw: Sequence[int]) -> FastPoly:
    sign, cols = reduce_plucker_index(ctx, raw)
    if sign == 0:
        return {}
    det = _sorted_plucker_fast(ctx, cols)
    return dict(det) if sign > 0 else {k: -c for k, c in det.items()}


def plucker(ctx: GenericMatrixContext, raw: Sequence[int]) -> Poly:
    """Signed maximal minor of the generic matrix on the given columns."""
    return _from_fast(_plucker_fast(ctx, raw), x_arity(ctx))


def band_minor(
    ctx: GenericMatrixContext, rows_i: Sequence[int], cols_j: Sequence[int]
) -> Poly:
    """Minor of the band matrix on the given row and column sets."""
    i_set = tuple(sorted(rows_i))
    j_set = tuple(sorted(cols_j))
    if len(i_set) != len(j_set):
        raise InvalidIndex("row and column sets differ in size")
    if len(set(i_set)) != len(i_set) or len(set(j_set)) != len(j_set):
        raise InvalidIndex("repeated row or column index")
    if i_set and not (1 <= i_set[0] and i_set[-1] <= ctx.rows):
        raise InvalidIndex(f"rows outside [1, {ctx.rows}]")
    if j_set and not (1 <= j_set[0] and j_set[-1] <= ctx.n):
        raise InvalidIndex(f"columns outside [1, {ctx.n}]")
    b = band_matrix(ctx)
    return poly_det([[b[i - 1][j - 1] for j in j_set] for i in i_set], y_arity(ctx))


def f_star(ctx: GenericMatrixContext, raw: Sequence[int]) -> Poly:
    """Image of a Plücker coordinate: the maximal band minor on its columns."""
    sign, cols = reduce_plucker_index(ctx, raw)
    if sign == 0:
        return {}
    full = range(1, ctx.rows + 1)
    return lp.scale(band_minor(ctx, full, cols), sign)


@lru_cache(maxsize=None)
def _g_entry_fast(ctx: GenericMatrixContext, i: int, j: int) -> FastPoly:
    run = tuple(range(i + ctx.k + 1, ctx.n + i)) + (j,)
    return _plucker_fast(ctx, run)


def g_star(ctx: GenericMatrixContext, i: int, j: int) -> Poly:
    """Image of one band entry: the Plücker coordinate on the cyclic run of
    columns after i, completed by column j."""
    if not (1 <= i <= ctx.rows and i <= j <= i + ctx.k):
        raise InvalidIndex(f"entry ({i}, {j}) outside the band")
    return _from_fast(_g_entry_fast(ctx, i, j), x_arity(ctx))


def _g_minor_fast(
    ctx: GenericMatrixContext, i_set: IndexSet, j_set: IndexSet
) -> FastPoly:
    entries = [
        [
            _g_entry_fast(ctx, i, j) if i <= j <= i + ctx.k else {}
            for j in j_set
        ]
        for i in i_set
    ]
    return _fast_det(entries)


def g_star_minor(
    ctx: GenericMatrixContext, rows_i: Sequence[int], cols_j: Sequence[int]
) -> Poly:
    """Minor of the matrix of g_star entries, zero outside the band."""
    i_set = tuple(sorted(rows_i))
    j_set = tuple(sorted(cols_j))
    if len(i_set) != len(j_set):
        raise InvalidIndex("row and column sets differ in size")
    return _from_fast(_g_minor_fast(ctx, i_set, j_set), x_arity(ctx))


def _interval(lo: int, hi: int) -> List[int]:
    return list(range(lo, hi + 1))


@lru_cache(maxsize=None)
def _run_product_fast(ctx: GenericMatrixContext, a: int, s: int) -> FastPoly:
    out: FastPoly = {0: 1}
    for i in range(a, a + s - 1):
        out = _fast_mul(out, _plucker_fast(ctx, tuple(_interval(i + ctx.k + 1, ctx.n + i))))
    return out


def flattoband_check(
    ctx: GenericMatrixContext, a: int, s: int, cols_j: Sequence[int]
) -> bool:
    """Exact identity between a row-solid minor of the g_star matrix and a
    product of cyclic-interval Plücker coordinates.

    Rows are the interval [a, a+s−1]; the columns must come from the band
    window [a, a+s−1+k], where sorted distinct columns always meet the
    row-solid support condition.  Out-of-window data is an error.
    """
    j_set = tuple(sorted(cols_j))
    if not (1 <= a and a + s - 1 <= ctx.rows and len(j_set) == s):
        raise InvalidIndex("row interval outside the matrix or wrong column count")
    if len(set(j_set)) != s:
        raise InvalidIndex("repeated column index")
    if s and not (a <= j_set[0] and j_set[-1] <= a + s - 1 + ctx.k):
        raise InvalidIndex("columns outside the band window")
    lhs = _g_minor_fast(ctx, tuple(_interval(a, a + s - 1)), j_set)
    rhs = _run_product_fast(ctx, a, s)
    completed = _plucker_fast(
        ctx, tuple(_interval(a + ctx.k + s, ctx.n + a - 1)) + j_set
    )
    return lhs == _fast_mul(rhs, completed)


def flattoband_cases(ctx: GenericMatrixContext) -> List[Tuple[int, int, IndexSet]]:
    """Every admissible (a, s, J), smallest rows first."""
    out = []
    for s in range(1, ctx.rows + 1):
        for a in range(1, ctx.rows - s + 2):
            for j_set in combinations(range(a, a + s + ctx.k), s):
                out.append((a, s, j_set))
    return out


def plucker_name(cols: Sequence[int]) -> str:
    return "D" + "".join(str(c) for c in sorted(cols))


def band_name(rows_i: Sequence[int], cols_j: Sequence[int]) -> str:
    return "Y" + "".join(str(i) for i in rows_i) + "".join(str(j) for j in cols_j)


def plucker_frozen_sets(ctx: GenericMatrixContext) -> List[IndexSet]:
    """The n cyclic column intervals, starting from [1, n−k]."""
    return [
        tuple(sorted((i + j) % ctx.n + 1 for j in range(ctx.rows)))
        for i in range(ctx.n)
    ]


def is_frozen_plucker(ctx: GenericMatrixContext, cols: Sequence[int]) -> bool:
    return tuple(sorted(cols)) in plucker_frozen_sets(ctx)


def band_frozen_specs(
    ctx: GenericMatrixContext,
) -> List[Tuple[str, IndexSet, IndexSet]]:
    """Frozen band generators: the two diagonals of the band, then the
    maximal row-solid minors on windows of consecutive columns."""
    specs: List[Tuple[str, IndexSet, IndexSet]] = []
    for i in range(1, ctx.rows + 1):
        specs.append((band_name((i,), (i,)), (i,), (i,)))
    for i in range(1, ctx.rows + 1):
        specs.append((band_name((i,), (i + ctx.k,)), (i,), (i + ctx.k,)))
    full = tuple(range(1, ctx.rows + 1))
    for t in range(1, ctx.k):
        window = tuple(range(t + 1, ctx.rows + t + 1))
        specs.append((band_name(full, window), full, window))
    return specs


def row_solid_nonzero(ctx: GenericMatrixContext, p: int, cols_j: Sequence[int]) -> bool:
    """Whether the row-solid band minor on rows [p, p+s−1] is nonzero: each
    sorted column must sit in its own row's band."""
    j_set = sorted(cols_j)
    s = len(j_set)
    if not (1 <= p and p + s - 1 <= ctx.rows and len(set(j_set)) == s):
        raise InvalidIndex("invalid row-solid shape")
    return all(p + t <= j_set[t] <= p + t + ctx.k for t in range(s))


def row_solid_irreducible(
    ctx: GenericMatrixContext, p: int, cols_j: Sequence[int]
) -> bool:
    """Nonzero and with no block split: a column at or below its row start,
    or past the previous row's band end, would factor the determinant."""
    j_set = sorted(cols_j)
    s = len(j_set)
    if not row_solid_nonzero(ctx, p, j_set):
        return False
    if any(j_set[t] < p + t + 1 for t in range(s - 1)):
        return False
    if any(j_set[t] > p + t - 1 + ctx.k for t in range(1, s)):
        return False
    return True


def irreducible_minors(ctx: GenericMatrixContext) -> List[Tuple[IndexSet, IndexSet]]:
    """All irreducible row-solid minors, frozen ones included."""
    out = []
    for s in range(1, ctx.rows + 1):
        for p in range(1, ctx.rows - s + 2):
            for j_set in combinations(range(p, p + s + ctx.k), s):
                if row_solid_irreducible(ctx, p, j_set):
                    out.append((tuple(range(p, p + s)), j_set))
    return out


def non_frozen_irreducible_minors(
    ctx: GenericMatrixContext,
) -> List[Tuple[IndexSet, IndexSet]]:
    frozen = {(i, j) for _, i, j in band_frozen_specs(ctx)}
    return [pair for pair in irreducible_minors(ctx) if pair not in frozen]


def _frozen_generators(ctx: GenericMatrixContext) -> List[Tuple[str, Poly]]:
    return [
        (name, band_minor(ctx, i, j)) for name, i, j in band_frozen_specs(ctx)
    ]


def _polynomial_quotient(f: Poly, gen: Poly) -> Optional[Poly]:
    """f / gen when gen divides f in the ordinary polynomial sense; the
    ambient ring is Laurent, where monomials are units, so the quotient
    must be checked for negative exponents."""
    try:
        quot = lp.exact_div(f, gen)
    except lp.NotDivisible:
        return None
    if any(e < 0 for exp in quot for e in exp):
        return None
    return quot


def factor_fstar(
    ctx: GenericMatrixContext, raw: Sequence[int]
) -> Tuple[Dict[str, int], IndexSet, IndexSet]:
    """Split the band image of a non-frozen Plücker coordinate as frozen
    content times one irreducible row-solid minor.

    The content is divided out greedily; uniqueness comes from unique
    factorization in the band polynomial ring.
    """
    sign, cols = reduce_plucker_index(ctx, raw)
    if sign == 0:
        raise InvalidIndex("zero coordinate has no factorization")
    if is_frozen_plucker(ctx, cols):
        raise NoFactorization(f"{plucker_name(cols)} is frozen")
    remainder = f_star(ctx, cols)
    content: Dict[str, int] = {}
    for name, gen in _frozen_generators(ctx):
        quot = _polynomial_quotient(remainder, gen)
        while quot is not None:
            remainder = quot
            content[name] = content.get(name, 0) + 1
            quot = _polynomial_quotient(remainder, gen)
    for i_set, j_set in non_frozen_irreducible_minors(ctx):
        if lp.equal(remainder, band_minor(ctx, i_set, j_set)):
            return content, i_set, j_set
    raise NoFactorization(
        f"image of {plucker_name(cols)} left a non-catalog remainder"
    )


def content_exponents(ctx: GenericMatrixContext, raw: Sequence[int]) -> Dict[str, int]:
    """Frozen-generator exponents of the band image's frozen part; for a
    frozen coordinate the image is required to be a full frozen monomial."""
    sign, cols = reduce_plucker_index(ctx, raw)
    if sign == 0:
        raise InvalidIndex("zero coordinate has no content")
    if not is_frozen_plucker(ctx, cols):
        return factor_fstar(ctx, cols)[0]
    remainder = f_star(ctx, cols)
    content: Dict[str, int] = {}
    for name, gen in _frozen_generators(ctx):
        quot = _polynomial_quotient(remainder, gen)
        while quot is not None:
            remainder = quot
            content[name] = content.get(name, 0) + 1
            quot = _polynomial_quotient(remainder, gen)
    if not lp.equal(remainder, lp.constant(1, y_arity(ctx))):
        raise NoFactorization(
            f"image of frozen {plucker_name(cols)} is not a frozen monomial"
        )
    return content


def tropical_c_check(
    ctx: GenericMatrixContext, base: Sequence[int], i: int, j: int, k2: int, l: int
) -> bool:
    """Tropical short Plücker relation on the content exponents.

    The products pairing (i,k2) with (j,l) must equal the componentwise
    minimum of the (i,j)(k2,l) and (j,k2)(i,l) pairings, exponent vector by
    exponent vector over the frozen band generators.
    """
    if not i < j < k2 < l:
        raise InvalidIndex("need strictly increasing i < j < k < l")
    touched = list(base) + [i, j, k2, l]
    residues = [(c - 1) % ctx.n + 1 for c in touched]
    if len(set(residues)) != ctx.rows + 2:
        raise InvalidIndex("overlapping indices in the relation")
    names = [name for name, _, _ in band_frozen_specs(ctx)]

    def vec(pair: Tuple[int, int]) -> List[int]:
        exps = content_exponents(ctx, list(base) + list(pair))
        return [exps.get(name, 0) for name in names]

    def tot(p1: Tuple[int, int], p2: Tuple[int, int]) -> List[int]:
        return [x + y for x, y in zip(vec(p1), vec(p2))]

    lhs = tot((i, k2), (j, l))
    rhs = [min(x, y) for x, y in zip(tot((i, j), (k2, l)), tot((j, k2), (i, l)))]
    return lhs == rhs


def tropical_cases(
    ctx: GenericMatrixContext,
) -> List[Tuple[IndexSet, Tuple[int, int, int, int]]]:
    """Every short Plücker instance: a 4-subset plus a disjoint base."""
    out = []
    for quad in combinations(range(1, ctx.n + 1), 4):
        rest = [c for c in range(1, ctx.n + 1) if c not in quad]
        for base in combinations(rest, ctx.rows - 2):
            out.append((base, quad))
    return out


def substitute(f: Poly, images: Sequence[Poly], arity: int) -> Poly:
    """Composition f(images); exponents must be nonnegative."""
    out: Poly = {}
    for exp, coef in f.items():
        term = lp.constant(coef, arity)
        for idx, e in enumerate(exp):
            if e < 0:
                raise InvalidIndex("substitution needs nonnegative exponents")
            if e:
                term = lp.mul(term, lp.power(images[idx], e))
        out = lp.add(out, term)
    return out


def _rectangle_index(ctx: GenericMatrixContext, a: int, b: int) -> IndexSet:
    m = ctx.rows
    return tuple(_interval(1, m - a) + _interval(m - a + b + 1, m + b))


def rectangle_seed(ctx: GenericMatrixContext) -> sd.Seed:
    """Initial cluster of rectangle coordinates on the (rows−1) x (k−1)
    grid, with all cyclic-interval coordinates frozen.

    The quiver is the grid with one diagonal per face: at position (a, b)
    arrows arrive from (a−1,b), (a,b−1), (a+1,b+1) and leave to (a+1,b),
    (a,b+1), (a−1,b−1).  Positions off the grid resolve through the same
    rectangle formula to frozen intervals, and repeated hits on one
    coordinate accumulate, so a corner coordinate shared by both sides of
    an exchange cancels out.
    """
    m, k = ctx.rows, ctx.k
    if m < 2 or k < 2 or ctx.n > 9:
        raise UnsupportedContext(
            f"rectangle cluster needs rows >= 2, k >= 2, n <= 9; "
            f"got k={ctx.k}, n={ctx.n}"
        )
    grid = [(a, b) for a in range(1, m) for b in range(1, k)]
    mutable_sets = [_rectangle_index(ctx, a, b) for a, b in grid]
    frozen_sets = plucker_frozen_sets(ctx)
    order = {cols: row for row, cols in enumerate(mutable_sets + frozen_sets)}
    btilde = la.zeros(len(order), len(grid))
    for col, (a, b) in enumerate(grid):
        for pa, pb in ((a - 1, b), (a, b - 1), (a + 1, b + 1)):
            btilde[order[_rectangle_index(ctx, pa, pb)]][col] += 1
        for pa, pb in ((a + 1, b), (a, b + 1), (a - 1, b - 1)):
            btilde[order[_rectangle_index(ctx, pa, pb)]][col] -= 1
    names = [plucker_name(cols) for cols in mutable_sets + frozen_sets]
    return sd.initial_seed(btilde, names)


# Base cluster {D235, D245} with the frozen cyclic intervals in the fixed
# order; the five-vertex exchange pattern of triple indices on five columns.
GR25_BTILDE = [
    [0, 1],
    [-1, 0],
    [-1, 0],
    [1, 0],
    [0, -1],
    [0, 1],
    [1, -1],
]
GR25_MUTABLE_SETS = ((2, 3, 5), (2, 4, 5))

# Reverse substitution on the band generators of the same fixture, one
# column per band generator, rows over the nine cluster-side generators.
GSTAR25_MATRIX = [
    [1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 1, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 1, 0, 0, 0, 1, 1],
]

# Pinned three-term relations of the five-column case.  A minor row packs
# one identity l1*l2 == a1*a2 + b1*b2 over column sets; the band rows group
# (rows, cols) generator pairs as (left, first summand, second summand);
# the cofactor rows list the frozen generators multiplying the band bracket
# inside the image of the matching minor identity.
QUINTIC_MINOR_RELATIONS = (
    ((2, 4, 5), (1, 3, 5), (1, 4, 5), (2, 3, 5), (1, 2, 5), (3, 4, 5)),
    ((2, 3, 5), (1, 3, 4), (2, 3, 4), (1, 3, 5), (1, 2, 3), (3, 4, 5)),
    ((1, 3, 5), (1, 2, 4), (1, 2, 5), (1, 3, 4), (1, 2, 3), (1, 4, 5)),
    ((1, 3, 4), (2, 4, 5), (1, 2, 4), (3, 4, 5), (1, 4, 5), (2, 3, 4)),
    ((1, 2, 4), (2, 3, 5), (1, 2, 3), (2, 4, 5), (1, 2, 5), (2, 3, 4)),
)

_Y12 = ((1,), (2,))
_Y23 = ((2,), (3,))
_Y34 = ((3,), (4,))
_Y11 = ((1,), (1,))
_Y22 = ((2,), (2,))
_Y33 = ((3,), (3,))
_Y13 = ((1,), (3,))
_Y24 = ((2,), (4,))
_Y35 = ((3,), (5,))
_Y1223 = ((1, 2), (2, 3))
_Y2334 = ((2, 3), (3, 4))
_Y123234 = ((1, 2, 3), (2, 3, 4))

QUINTIC_BAND_RELATIONS = (
    ((_Y12, _Y23), (_Y1223,), (_Y22, _Y13)),
    ((_Y1223, _Y2334), (_Y123234, _Y23), (_Y22, _Y33, _Y13, _Y24)),
    ((_Y23, _Y34), (_Y2334,), (_Y33, _Y24)),
    ((_Y2334, _Y12), (_Y22, _Y13, _Y34), (_Y123234,)),
    ((_Y34, _Y1223), (_Y33, _Y24, _Y12), (_Y123234,)),
)

QUINTIC_IMAGE_COFACTORS = (
    (_Y11, _Y35, _Y35, _Y24),
    (_Y11, _Y35),
    (_Y11, _Y11, _Y22, _Y35),
    (_Y11, _Y24, _Y35),
    (_Y11, _Y22, _Y35),
)


def quintic_relation_checks(ctx: GenericMatrixContext) -> List[Dict[str, object]]:
    """The pinned relation tables evaluated as exact identities.

    Fifteen records in fixed order: the five minor relations, their band
    counterparts, and the image identities obtained by applying the band
    substitution to a minor relation, which multiplies the band bracket by
    a frozen cofactor.
    """
    if (ctx.k, ctx.n) != (2, 5):
        raise UnsupportedContext("relation tables are pinned for k=2, n=5 only")

    def minors(sets: Sequence[IndexSet]) -> Poly:
        out = lp.constant(1, x_arity(ctx))
        for cols in sets:
            out = lp.mul(out, plucker(ctx, cols))
        return out

    def bands(specs: Sequence[Tuple[IndexSet, IndexSet]]) -> Poly:
        out = lp.constant(1, y_arity(ctx))
        for rows_i, cols_j in specs:
            out = lp.mul(out, band_minor(ctx, rows_i, cols_j))
        return out

    records: List[Dict[str, object]] = []
    for idx, (l1, l2, a1, a2, b1, b2) in enumerate(QUINTIC_MINOR_RELATIONS):
        holds = lp.equal(
            minors((l1, l2)), lp.add(minors((a1, a2)), minors((b1, b2)))
        )
        records.append(
            {
                "kind": "minor",
                "index": idx,
                "left": [plucker_name(l1), plucker_name(l2)],
                "summands": [
                    [plucker_name(a1), plucker_name(a2)],
                    [plucker_name(b1), plucker_name(b2)],
                ],
                "holds": holds,
            }
        )
    for idx, (left, first, second) in enumerate(QUINTIC_BAND_RELATIONS):
        holds = lp.equal(bands(left), lp.add(bands(first), bands(second)))
        records.append(
            {
                "kind": "band",
                "index": idx,
                "left": [band_name(i, j) for i, j in left],
                "summands": [
                    [band_name(i, j) for i, j in first],
                    [band_name(i, j) for i, j in second],
                ],
                "holds": holds,
            }
        )
    for idx, cofactor in enumerate(QUINTIC_IMAGE_COFACTORS):
        l1, l2 = QUINTIC_MINOR_RELATIONS[idx][:2]
        _, first, second = QUINTIC_BAND_RELATIONS[idx]
        left = lp.mul(f_star(ctx, l1), f_star(ctx, l2))
        bracket = lp.add(bands(first), bands(second))
        holds = lp.equal(left, lp.mul(bands(cofactor), bracket))
        records.append(
            {
                "kind": "image",
                "index": idx,
                "left": [plucker_name(l1), plucker_name(l2)],
                "cofactor": [band_name(i, j) for i, j in cofactor],
                "summands": [
                    [band_name(i, j) for i, j in first],
                    [band_name(i, j) for i, j in second],
                ],
                "holds": holds,
            }
        )
    return records


@dataclass
class GrassmannFixture:
    """Matched cluster presentations of the two sides, with the monomial
    map between them and the determinant value of every generator."""

    ctx: GenericMatrixContext
    gr_seed: sd.Seed
    band_seed: sd.Seed
    fstar_map: qh.MonomialMap
    gstar_map: Optional[qh.MonomialMap]
    gr_sets: List[IndexSet]
    band_specs: List[Tuple[str, IndexSet, IndexSet]]
    gr_values: Dict[str, Poly]
    band_values: Dict[str, Poly]


def _assemble_fixture(
    ctx: GenericMatrixContext,
    gr_btilde: Sequence[Sequence[int]],
    mutable_sets: Sequence[IndexSet],
    gstar_matrix: Optional[Sequence[Sequence[int]]],
) -> GrassmannFixture:
    frozen_sets = plucker_frozen_sets(ctx)
    all_sets = list(mutable_sets) + frozen_sets
    gr_names = [plucker_name(cols) for cols in all_sets]
    gr_seed = sd.initial_seed(gr_btilde, gr_names)
    factored = [factor_fstar(ctx, cols) for cols in mutable_sets]
    band_specs = [
        (band_name(i_set, j_set), i_set, j_set) for _, i_set, j_set in factored
    ] + band_frozen_specs(ctx)
    band_names = [name for name, _, _ in band_specs]
    if len(set(band_names)) != len(band_names):
        raise NoFactorization("band generator names collide")
    row_of = {name: row for row, name in enumerate(band_names)}
    matrix = la.zeros(len(band_specs), len(all_sets))
    for col, (content, i_set, j_set) in enumerate(factored):
        matrix[row_of[band_name(i_set, j_set)]][col] = 1
        for name, e in content.items():
            matrix[row_of[name]][col] += e
    for offset, cols in enumerate(frozen_sets):
        for name, e in content_exponents(ctx, cols).items():
            matrix[row_of[name]][len(mutable_sets) + offset] += e
    band_btilde = la.matmul(matrix, [list(row) for row in gr_btilde])
    num = len(mutable_sets)
    fixture = GrassmannFixture(
        ctx=ctx,
        gr_seed=gr_seed,
        band_seed=sd.initial_seed(band_btilde, band_names),
        fstar_map=qh.MonomialMap(matrix, gr_names, band_names, num, num),
        gstar_map=(
            qh.MonomialMap(
                [list(row) for row in gstar_matrix], band_names, gr_names, num, num
            )
            if gstar_matrix is not None
            else None
        ),
        gr_sets=all_sets,
        band_specs=band_specs,
        gr_values={
            name: plucker(ctx, cols) for name, cols in zip(gr_names, all_sets)
        },
        band_values={
            name: band_minor(ctx, i_set, j_set) for name, i_set, j_set in band_specs
        },
    )
    return fixture


def build_fixture(ctx: GenericMatrixContext) -> GrassmannFixture:
    """Pinned fixtures for the supported dimensions.

    The five-column case carries the pinned base cluster and the reverse
    substitution; the larger cases start from the rectangle cluster and
    carry the forward map only.
    """
    key = (ctx.k, ctx.n)
    if key == (2, 5):
        return _assemble_fixture(ctx, GR25_BTILDE, GR25_MUTABLE_SETS, GSTAR25_MATRIX)
    if key in ((2, 6), (3, 6)):
        seed = rectangle_seed(ctx)
        mutable_sets = [
            tuple(int(d) for d in name[1:]) for name in seed.var_names[: seed.n]
        ]
        return _assemble_fixture(ctx, seed.btilde, mutable_sets, None)
    raise UnsupportedContext(
        f"no fixture for k={ctx.k}, n={ctx.n}; supported: (2,5), (2,6), (3,6)"
    )