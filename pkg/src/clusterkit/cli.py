"""Command line drivers tying the workbench modules together.

Every subcommand reads and writes JSON; the exchange graph can also be
rendered as DOT, and --format text switches any report to a terse
human-readable summary.  Exit status is 0 when every requested check
passes, 1 when some check fails (the failure payload still goes to
stdout), and 2 for unreadable or malformed input.  Check suites run on a
thread pool sized by the CLUSTERKIT_THREADS environment variable, with
results assembled in a fixed order so reports are diffable.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations, permutations, product
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import click

from . import grassmann as gx
from . import lattice as la
from . import laurent as lp
from . import orbits as ob
from . import patterns as pt
from . import quasihom as qh
from . import seeds as sd
from . import surfaces as sf

Payload = Dict[str, object]


class InputFault(click.ClickException):
    """Unreadable or malformed input; rendered as JSON on stderr."""

    exit_code = 2

    def __init__(self, payload: Payload):
        super().__init__(json.dumps(payload))
        self.payload = payload

    def format_message(self) -> str:
        return json.dumps(self.payload, indent=2)


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputFault({"error": "unreadable file", "path": path, "reason": str(exc)})
    except json.JSONDecodeError as exc:
        raise InputFault({"error": "invalid JSON", "path": path, "reason": str(exc)})


def _load_seed(path: str) -> sd.Seed:
    obj = _load_json(path)
    try:
        return sd.seed_from_json(obj)
    except (sd.InvalidSeed, KeyError, TypeError, ValueError) as exc:
        raise InputFault({"error": "invalid seed", "path": path, "reason": str(exc)})


def _load_map(path: str, src_mutable: int, dst_mutable: int) -> qh.MonomialMap:
    obj = _load_json(path)
    try:
        return qh.map_from_json(obj, src_mutable, dst_mutable)
    except (qh.InvalidMap, KeyError, TypeError, ValueError) as exc:
        raise InputFault({"error": "invalid map", "path": path, "reason": str(exc)})


def _write_json(path: str, obj: dict) -> None:
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(obj, handle, indent=2)
            handle.write("\n")
    except OSError as exc:
        raise InputFault({"error": "unwritable file", "path": path, "reason": str(exc)})


def _emit(payload: Payload, fmt: str, lines: Callable[[Payload], List[str]]) -> None:
    if fmt == "text":
        click.echo("\n".join(lines(payload)))
    else:
        click.echo(json.dumps(payload, indent=2))


def _finish(ok: bool) -> None:
    raise SystemExit(0 if ok else 1)


def _thread_count() -> int:
    raw = os.environ.get("CLUSTERKIT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputFault({"error": "invalid CLUSTERKIT_THREADS", "value": raw})


def _run_suites(suites: Sequence[Tuple[str, Callable[[], Payload]]]) -> List[Payload]:
    workers = _thread_count()
    if workers == 1:
        return [check() for _, check in suites]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        futures = [pool.submit(check) for _, check in suites]
        return [future.result() for future in futures]


def _suite(name: str, cases: int, failures: List[str]) -> Payload:
    return {"name": name, "cases": cases, "failures": failures, "ok": not failures}


@click.group()
def main() -> None:
    """Exact-arithmetic workbench for cluster patterns of geometric type."""


# ---------------------------------------------------------------------------
# seed plumbing


def _parse_word(word: str, n: int) -> List[int]:
    if not word.strip():
        return []
    labels = []
    for piece in word.split(","):
        try:
            k = int(piece.strip())
        except ValueError:
            raise InputFault({"error": "invalid word", "piece": piece.strip()})
        if not 0 <= k < n:
            raise InputFault({"error": "label out of range", "label": k, "n": n})
        labels.append(k)
    return labels


def _mutate_lines(payload: Payload) -> List[str]:
    out = []
    for step in payload["steps"]:
        out.append(
            f"step {step['step']}: mu_{step['label']} exchanged "
            f"{step['removed']} for {step['introduced']}"
        )
    if not out:
        out.append("empty word: seed unchanged")
    if "written" in payload:
        out.append(f"seed written to {payload['written']}")
    return out


@main.command()
@click.argument("seed_file")
@click.option("--word", default="", help="Comma-separated mutation labels, left to right.")
@click.option("--out", default=None, help="Write the resulting seed here instead of embedding it.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
def mutate(seed_file: str, word: str, out: Optional[str], fmt: str) -> None:
    """Apply a mutation word to a seed and report each exchange."""
    seed = _load_seed(seed_file)
    steps: List[Payload] = []
    current = seed
    for pos, k in enumerate(_parse_word(word, seed.n)):
        removed = lp.to_str(current.cluster[k], current.var_names)
        try:
            current = sd.mutate_seed(current, k)
        except lp.NotDivisible as exc:
            raise InputFault(
                {"error": "mutation failed", "step": pos, "label": k, "reason": str(exc)}
            )
        steps.append(
            {
                "step": pos,
                "label": k,
                "removed": removed,
                "introduced": lp.to_str(current.cluster[k], current.var_names),
            }
        )
    payload: Payload = {"word": [s["label"] for s in steps], "steps": steps}
    if out is None:
        payload["seed"] = sd.seed_to_json(current)
    else:
        _write_json(out, sd.seed_to_json(current))
        payload["written"] = out
    _emit(payload, fmt, _mutate_lines)


def _explore_lines(payload: Payload) -> List[str]:
    return [
        f"nodes: {len(payload['nodes'])}",
        f"edges: {len(payload['edges'])}",
        f"complete: {payload['complete']}",
    ]


@main.command()
@click.argument("seed_file")
@click.option("--max-depth", type=click.IntRange(min=1), default=16, show_default=True)
@click.option("--max-nodes", type=click.IntRange(min=1), default=500, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "dot", "text"]), default="json")
def explore(seed_file: str, max_depth: int, max_nodes: int, fmt: str) -> None:
    """Breadth-first exchange-graph closure up to relabeling."""
    seed = _load_seed(seed_file)
    graph = pt.explore(seed, max_depth=max_depth, max_nodes=max_nodes)
    if fmt == "dot":
        click.echo(pt.graph_to_dot(graph))
        return
    _emit(pt.graph_to_json(graph), fmt, _explore_lines)


# ---------------------------------------------------------------------------
# monomial map plumbing


def _verify_lines(payload: Payload) -> List[str]:
    out = [
        f"principal parts equal: {payload['principal_equal']}",
        f"matrix carries the extended matrix: {payload['matrix_identity']}",
    ]
    for entry in payload["variables"]:
        out.append(f"variable {entry['name']}: ok={entry['ok']}")
    if "quasi_inverse" in payload:
        out.append(f"quasi-inverse star check: {payload['quasi_inverse']}")
    out.append(f"verdict: {'PASS' if payload['verdict'] else 'FAIL'}")
    return out


@main.command("verify-qh")
@click.argument("map_file")
@click.argument("src_file")
@click.argument("dst_file")
@click.option("--inverse", "inverse_file", default=None,
              help="Reverse map; adds the quasi-inverse star check.")
@click.option("--opposite/--no-opposite", default=False,
              help="Accept the opposite target pattern as well.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
def verify_qh(map_file: str, src_file: str, dst_file: str,
              inverse_file: Optional[str], opposite: bool, fmt: str) -> None:
    """Check a monomial map between two seed files, with witnesses."""
    src = _load_seed(src_file)
    dst = _load_seed(dst_file)
    m = _load_map(map_file, src.n, dst.n)
    variables = []
    for i in range(src.n):
        try:
            image = qh.apply_map(m, src.cluster[i])
        except ValueError as exc:
            raise InputFault({"error": "map does not fit the source seed", "reason": str(exc)})
        ratio = lp.monomial_ratio(image, dst.cluster[i])
        ok = ratio is not None and not any(ratio[: dst.n])
        variables.append(
            {
                "name": src.var_names[i],
                "frozen_ratio": list(ratio) if ok and ratio is not None else None,
                "ok": ok,
            }
        )
    payload: Payload = {
        "principal_equal": src.principal == dst.principal,
        "matrix_identity": la.matmul(m.matrix, src.btilde) == dst.btilde,
        "variables": variables,
        "verdict": qh.verify_qh(m, src, dst, allow_opposite=opposite),
    }
    if inverse_file is not None:
        w = _load_map(inverse_file, dst.n, src.n)
        try:
            payload["quasi_inverse"] = qh.quasi_inverse_check(m, w, src)
        except qh.InvalidMap as exc:
            raise InputFault({"error": "maps do not chain", "reason": str(exc)})
        payload["verdict"] = bool(payload["verdict"]) and bool(payload["quasi_inverse"])
    _emit(payload, fmt, _verify_lines)
    _finish(bool(payload["verdict"]))


def _construct_lines(payload: Payload) -> List[str]:
    out = [f"principal parts equal: {payload['principal_equal']}"]
    for entry in payload["rows"]:
        line = f"coefficient row {entry['row']}: integer={entry['integer']}"
        if "rational" in entry:
            line += f" rational={entry['rational']}"
        out.append(line)
    out.append("map found" if payload["map"] is not None else "no map exists")
    return out


@main.command("construct-qh")
@click.argument("src_file")
@click.argument("dst_file")
@click.option("--out", default=None, help="Write the constructed map here.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
def construct_qh(src_file: str, dst_file: str, out: Optional[str], fmt: str) -> None:
    """Solve for the canonical monomial map between two seed files."""
    src = _load_seed(src_file)
    dst = _load_seed(dst_file)
    try:
        payload: Payload = qh.construct_qh_diagnostics(
            src.btilde, dst.btilde, src.var_names, dst.var_names
        )
    except qh.PrincipalMismatch as exc:
        payload = {
            "principal_equal": False,
            "rows": [],
            "map": None,
            "reason": str(exc),
            "src_vars": list(src.var_names),
            "dst_vars": list(dst.var_names),
        }
        _emit(payload, fmt, _construct_lines)
        _finish(False)
    if payload["map"] is not None and out is not None:
        built = qh.MonomialMap(
            payload["map"], src.var_names, dst.var_names, src.n, dst.n
        )
        _write_json(out, qh.map_to_json(built))
        payload["written"] = out
    _emit(payload, fmt, _construct_lines)
    _finish(payload["map"] is not None)


def _gradings_lines(payload: Payload) -> List[str]:
    out = [f"corank: {payload['corank']}"]
    for row in payload["basis"]:
        out.append("grading: " + " ".join(str(v) for v in row))
    return out


@main.command()
@click.argument("seed_file")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
def gradings(seed_file: str, fmt: str) -> None:
    """Basis of the integer gradings of a seed's extended matrix."""
    seed = _load_seed(seed_file)
    basis = qh.grading_space(seed.btilde)
    _emit({"corank": len(basis), "basis": basis}, fmt, _gradings_lines)


def _orbit_lines(payload: Payload) -> List[str]:
    if payload["equivalent"]:
        return ["seeds are orbit-equivalent"]
    return ["seeds are not orbit-equivalent"]


@main.command("orbit-eq")
@click.argument("left_file")
@click.argument("right_file")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
def orbit_eq(left_file: str, right_file: str, fmt: str) -> None:
    """Decide rescaling-orbit equivalence of two seed files."""
    left = _load_seed(left_file)
    right = _load_seed(right_file)
    if left.n != right.n or left.m != right.m:
        raise InputFault(
            {
                "error": "shape mismatch",
                "left": [left.n, left.m],
                "right": [right.n, right.m],
            }
        )
    witness = ob.seeds_equivalent(
        ob.seedlike_from_seed(left), ob.seedlike_from_seed(right)
    )
    payload: Payload = {"equivalent": witness is not None}
    if witness is not None:
        payload["rescaling"] = {
            "c": [list(e) for e in witness.c],
            "d": [list(e) for e in witness.d],
        }
    _emit(payload, fmt, _orbit_lines)
    _finish(witness is not None)


# ---------------------------------------------------------------------------
# fixture reports


def _signed_permutation_group(r: int) -> List[sf.SignedPermutation]:
    out = []
    for perm in permutations(range(r)):
        for signs in product((1, -1), repeat=r):
            out.append(
                sf.SignedPermutation(
                    tuple(
                        tuple(signs[i] if j == perm[i] else 0 for j in range(r))
                        for i in range(r)
                    )
                )
            )
    return out


def _surface_suites(fx: sf.AnnulusFixture) -> List[Tuple[str, Callable[[], Payload]]]:
    def twist_realized() -> Payload:
        failures = []
        if not qh.verify_qh(fx.twist_map, fx.seed, fx.twist_seed):
            failures.append("twist map fails seed verification")
        star = [((), k) for k in range(fx.seed.n)]
        if qh.check_on_nerve(fx.twist_map, star, fx.seed, fx.twist_seed) != "direct":
            failures.append("twist map fails on the base star")
        return _suite("twist_realized", 2, failures)

    def half_turn_inequivalent() -> Payload:
        base = ob.seedlike_from_seed(fx.seed)
        half = sd.mutate_word(fx.seed, fx.half_turn_word)
        failures = []
        for perm in permutations(range(fx.seed.n)):
            relabeled = sd.Seed(
                pt.permute_btilde(half.btilde, fx.seed.n, perm),
                [half.cluster[perm[i]] for i in range(fx.seed.n)],
                half.var_names,
            )
            if ob.seeds_equivalent(base, ob.seedlike_from_seed(relabeled)) is not None:
                failures.append(f"equivalent under relabeling {perm}")
        return _suite("half_turn_inequivalent", 24, failures)

    def doubled_pairing() -> Payload:
        vector = sf.pairing_vector(fx.laminations["doubled"], fx.table)
        failures = [] if vector == [-2, -2] else [f"pairing vector {vector}"]
        return _suite("doubled_pairing", 1, failures)

    def stabilizer_indices() -> Payload:
        group = _signed_permutation_group(fx.table.r)
        vectors = [sf.pairing_vector(fx.laminations["doubled"], fx.table)]
        fixed = [g for g in group if sf.lattice_fixed(g, vectors)]
        central = [
            g
            for g in group
            if sf.qa_subgroup_test(g)[0] == "always"
        ]
        failures = []
        if len(group) // len(fixed) != 2:
            failures.append(f"stabilizer index {len(group) // len(fixed)}")
        if len(group) // len(central) != 4:
            failures.append(f"central index {len(group) // len(central)}")
        return _suite("stabilizer_indices", 2, failures)

    def shear_relations() -> Payload:
        failures = [
            name
            for name, lam in sorted(fx.laminations.items())
            if not sf.shear_relation_check(fx.boundary_matrix, lam)
        ]
        return _suite("shear_relations", len(fx.laminations), failures)

    def kernel_basis() -> Payload:
        failures = []
        corank = len(fx.seed.principal) - la.rank(fx.seed.principal)
        if corank != fx.table.r:
            failures.append(f"corank {corank} differs from {fx.table.r} components")
        if not sf.kernel_basis_check(fx.seed.principal, fx.arc_pairings):
            failures.append("pairing columns do not cut out the row span")
        return _suite("kernel_basis", 2, failures)

    def residues_match() -> Payload:
        cases = 0
        failures = []
        for name, lam in sorted(fx.laminations.items()):
            pairing = sf.pairing_vector(lam, fx.table)
            for comp in range(fx.table.r):
                cases += 1
                got = sf.residue(lam.shear, fx.arc_pairings, comp)
                if got != pairing[comp]:
                    failures.append(f"{name} component {comp}: {got} != {pairing[comp]}")
        return _suite("residues_match_pairings", cases, failures)

    return [
        ("twist_realized", twist_realized),
        ("half_turn_inequivalent", half_turn_inequivalent),
        ("doubled_pairing", doubled_pairing),
        ("stabilizer_indices", stabilizer_indices),
        ("shear_relations", shear_relations),
        ("kernel_basis", kernel_basis),
        ("residues_match_pairings", residues_match),
    ]


def _checks_lines(payload: Payload) -> List[str]:
    out = []
    for entry in payload["checks"]:
        mark = "PASS" if entry["ok"] else "FAIL"
        out.append(f"{mark} {entry['name']} ({entry['cases']} cases)")
        for failure in entry["failures"]:
            out.append(f"  {failure}")
    out.append(f"verdict: {'PASS' if payload['verdict'] else 'FAIL'}")
    return out


@main.command()
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
def surface(fmt: str) -> None:
    """Annulus fixture report: twist, subgroup indices, shear identities."""
    fx = sf.annulus_fixture()
    results = _run_suites(_surface_suites(fx))
    payload: Payload = {
        "seed": sd.seed_to_json(fx.seed),
        "twist_map": qh.map_to_json(fx.twist_map),
        "laminations": {
            name: sf.lamination_to_json(lam)
            for name, lam in sorted(fx.laminations.items())
        },
        "checks": results,
        "verdict": all(entry["ok"] for entry in results),
    }
    _emit(payload, fmt, _checks_lines)
    _finish(bool(payload["verdict"]))


def _grassmann_suites(
    ctx: gx.GenericMatrixContext, fx: gx.GrassmannFixture
) -> List[Tuple[str, Callable[[], Payload]]]:
    def relations() -> Payload:
        records = gx.quintic_relation_checks(ctx)
        failures = [
            f"{r['kind']} relation {r['index']} fails"
            for r in records
            if not r["holds"]
        ]
        return _suite("relation_identities", len(records), failures)

    def map_verification() -> Payload:
        cases = 1
        failures = []
        if not qh.verify_qh(fx.fstar_map, fx.gr_seed, fx.band_seed):
            failures.append("forward map fails seed verification")
        if fx.gstar_map is not None:
            cases += 2
            if not qh.verify_qh(fx.gstar_map, fx.band_seed, fx.gr_seed):
                failures.append("reverse map fails seed verification")
            if not qh.quasi_inverse_check(fx.fstar_map, fx.gstar_map, fx.gr_seed):
                failures.append("composite moves the star neighborhood")
        return _suite("map_verification", cases, failures)

    def factorization() -> Payload:
        frozen = set(gx.plucker_frozen_sets(ctx))
        images = set()
        cases = 0
        failures = []
        for cols in combinations(range(1, ctx.n + 1), ctx.rows):
            if cols in frozen:
                continue
            cases += 1
            try:
                _, i_set, j_set = gx.factor_fstar(ctx, cols)
            except gx.NoFactorization:
                failures.append(f"{gx.plucker_name(cols)} does not factor")
                continue
            images.add((i_set, j_set))
        cases += 1
        if images != set(gx.non_frozen_irreducible_minors(ctx)):
            failures.append("factor images miss the irreducible catalog")
        return _suite("factorization", cases, failures)

    def flat_to_band() -> Payload:
        cases = gx.flattoband_cases(ctx)
        failures = [
            f"rows [{a}, {a + s - 1}], columns {list(j_set)}"
            for a, s, j_set in cases
            if not gx.flattoband_check(ctx, a, s, j_set)
        ]
        return _suite("flat_to_band_minors", len(cases), failures)

    def tropical() -> Payload:
        cases = gx.tropical_cases(ctx)
        failures = [
            f"base {list(base)}, quad {list(quad)}"
            for base, quad in cases
            if not gx.tropical_c_check(ctx, base, *quad)
        ]
        return _suite("tropical_contents", len(cases), failures)

    def composite() -> Payload:
        images = [
            gx.g_star(ctx, i, i + d)
            for i in range(1, ctx.rows + 1)
            for d in range(ctx.k + 1)
        ]
        run = lp.constant(1, gx.x_arity(ctx))
        for i in range(1, ctx.rows):
            run = lp.mul(run, gx.plucker(ctx, tuple(range(i + ctx.k + 1, ctx.n + i + 1))))
        failures = []
        cases = 0
        for cols in combinations(range(1, ctx.n + 1), ctx.rows):
            cases += 1
            got = gx.substitute(gx.f_star(ctx, cols), images, gx.x_arity(ctx))
            if not lp.equal(got, lp.mul(run, gx.plucker(ctx, cols))):
                failures.append(gx.plucker_name(cols))
        return _suite("composite_identity", cases, failures)

    suites: List[Tuple[str, Callable[[], Payload]]] = []
    if (ctx.k, ctx.n) == (2, 5):
        suites.append(("relation_identities", relations))
    suites.append(("map_verification", map_verification))
    suites.append(("factorization", factorization))
    suites.append(("flat_to_band_minors", flat_to_band))
    suites.append(("tropical_contents", tropical))
    # the composite blows up over wide bands; run it where minors stay small
    if (ctx.k, ctx.n) in ((2, 5), (3, 6)):
        suites.append(("composite_identity", composite))
    return suites


@main.command()
@click.option("--kn", nargs=2, type=int, required=True, metavar="K N",
              help="Band width and column count of the fixture.")
@click.option("--all-checks", is_flag=True, help="Run every identity suite.")
@click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json")
def grassmann(kn: Tuple[int, int], all_checks: bool, fmt: str) -> None:
    """Flat-to-band fixture data and identity checks."""
    k, n = kn
    try:
        ctx = gx.make_context(k, n)
        fx = gx.build_fixture(ctx)
    except (gx.InvalidIndex, gx.UnsupportedContext) as exc:
        raise InputFault({"error": "unsupported dimensions", "reason": str(exc)})
    payload: Payload = {
        "k": k,
        "n": n,
        "plucker_seed": sd.seed_to_json(fx.gr_seed),
        "band_seed": sd.seed_to_json(fx.band_seed),
        "flat_to_band": qh.map_to_json(fx.fstar_map),
        "band_to_flat": (
            qh.map_to_json(fx.gstar_map) if fx.gstar_map is not None else None
        ),
        "factorizations": [
            {
                "coordinate": gx.plucker_name(cols),
                "content": dict(sorted(gx.factor_fstar(ctx, cols)[0].items())),
                "minor": gx.band_name(*gx.factor_fstar(ctx, cols)[1:]),
            }
            for cols in combinations(range(1, ctx.n + 1), ctx.rows)
            if not gx.is_frozen_plucker(ctx, cols)
        ],
    }
    if (k, n) == (2, 5):
        payload["relations"] = gx.quintic_relation_checks(ctx)
    if not all_checks:
        _emit(payload, fmt, lambda p: [
            f"fixture k={p['k']} n={p['n']}",
            f"factorizations: {len(p['factorizations'])}",
        ])
        return
    results = _run_suites(_grassmann_suites(ctx, fx))
    payload["checks"] = results
    payload["verdict"] = all(entry["ok"] for entry in results)
    _emit(payload, fmt, _checks_lines)
    _finish(bool(payload["verdict"]))


if __name__ == "__main__":
    main()
