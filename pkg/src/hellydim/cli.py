"""Command-line front end: ``hellydim VERB INPUT`` with JSON in and out.

Exit status: 0 success, 1 domain or precondition error, 2 malformed input,
3 resource bound exceeded. Errors are reported as ``{"error": ...}``.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import abelian, binary_forms as bf, finite_groups as fg, jsonio, torus
from .errors import DomainError, InputError, ResourceError


def _kappa(obj, args):
    return {"kappa": abelian.kappa_abelian(jsonio.group_from_json(obj))}


def _brute_kappa(obj, args):
    if isinstance(obj, dict) and "table" in obj:
        G = jsonio.table_from_json(obj)
        bound = args.max_order or fg.DEFAULT_MAX_TABLE_ORDER
        return {"kappa": fg.brute_kappa_table(G, bound)}
    A = jsonio.group_from_json(obj)
    return {"kappa": abelian.brute_kappa(A, args.max_order or abelian.DEFAULT_MAX_ORDER)}


def _check_subset_bound(m, args):
    if args.max_subset is not None and m > args.max_subset:
        raise ResourceError(f"{m} members exceed --max-subset {args.max_subset}")


def _intersect(obj, args):
    A, cosets = jsonio.coset_system_from_json(obj)
    meet = abelian.intersect_cosets(cosets)
    if meet is not None:
        return {"empty": False, "intersection": jsonio.coset_to_json(meet)}
    _check_subset_bound(len(cosets), args)
    return {"empty": True, "certificate": abelian.helly_certificate(cosets)}


def _witness(obj, args):
    p = jsonio._int(jsonio._field(obj, "p"))
    d = jsonio._int(jsonio._field(obj, "d"))
    system = abelian.witness_system(p, d)
    return jsonio.coset_system_to_json(system[0].ambient, system)


def _progressions(obj, args):
    progs = jsonio.progressions_from_json(obj)
    meet = abelian.intersect_progressions(progs)
    if meet is not None:
        return {"empty": False, "a": meet.a, "m": meet.m}
    for i in range(len(progs)):
        for j in range(i + 1, len(progs)):
            if abelian.intersect_progressions([progs[i], progs[j]]) is None:
                return {"empty": True, "certificate": [i, j]}
    raise AssertionError("empty family without a disjoint pair")


def _torus_check(obj, args):
    W = jsonio.weight_system_from_json(obj)
    closed, comb = torus.orbit_closed(W)
    out = {"closed": closed, "dim": torus.orbit_dimension(W)}
    if closed:
        out["weights"] = [list(w) for w in W.weights()]
        out["combination"] = [jsonio.rational_to_json(c) for c in comb]
    else:
        out["cocharacter"] = list(torus.destabilizing_direction(W))
    return out


def _torus_select(obj, args):
    W = jsonio.weight_system_from_json(obj)
    return torus.select_factors(W).to_json()


def _forms(obj, twisted):
    comps = jsonio.components_from_json(obj, twisted)
    kept, stripped = bf.strip_zero(comps)
    return comps, [comps[i] for i in kept], stripped


def _closed_result(comps, stripped, group):
    if group == "SL2":
        closed, dim = bf.sl2_orbit_closed(comps), bf.sl2_orbit_dimension(comps)
    else:
        closed, dim = bf.gl2_orbit_closed(comps), bf.gl2_orbit_dimension(comps)
    out = {"closed": closed, "dim": dim}
    if not closed:
        out["destabilizing"] = jsonio.subgroup_to_json(bf.destabilizing_subgroup(comps, group))
    if stripped:
        out["stripped"] = stripped
    return out


def _sl2_closed(obj, args):
    _, comps, stripped = _forms(obj, False)
    return _closed_result(comps, stripped, "SL2")


def _gl2_closed(obj, args):
    _, comps, stripped = _forms(obj, True)
    return _closed_result(comps, stripped, "GL2")


def _sl2_select(obj, args):
    comps, _, _ = _forms(obj, False)
    return bf.sl2_select(comps).to_json()


def _gl2_select(obj, args):
    comps, _, _ = _forms(obj, True)
    return bf.gl2_select(comps).to_json()


def _oracle(obj, args):
    group = str(jsonio._field(obj, "group", str, "GL2")).upper()
    if "random" in obj:
        trials = jsonio._int(obj["random"])
        rng = random.Random(args.seed)
        bad = []
        for t in range(trials):
            comps = bf.random_tuple(rng, group)
            fast = bf.sl2_orbit_closed(comps) if group == "SL2" else bf.gl2_orbit_closed(comps)
            if fast != bf.birkes_richardson_oracle(comps, group):
                bad.append([jsonio.component_to_json(c) for c in comps])
        return {"group": group, "seed": args.seed, "trials": trials,
                "discrepancies": len(bad), "examples": bad[:5]}
    _, comps, stripped = _forms(obj, group == "GL2")
    out = {"closed": bf.birkes_richardson_oracle(comps, group)}
    if stripped:
        out["stripped"] = stripped
    return out


def _separate(obj, args):
    G = jsonio.table_from_json(obj)
    stabs = [jsonio._int_list(H) for H in jsonio._field(obj, "stabilizers", list)]
    action = fg.CosetSpaceAction(G, stabs)
    x = action.point(jsonio._int_list(jsonio._field(obj, "x")))
    y = action.point(jsonio._int_list(jsonio._field(obj, "y")))
    g = fg.transporting_element(action, x, y)
    if g is not None:
        return {"same_orbit": True, "element": g}
    _check_subset_bound(action.factors, args)
    return {"same_orbit": False, "projection": fg.min_separating_projection(action, x, y)}


VERBS = {
    "kappa": _kappa,
    "intersect": _intersect,
    "witness": _witness,
    "brute-kappa": _brute_kappa,
    "progressions": _progressions,
    "torus-check": _torus_check,
    "torus-select": _torus_select,
    "sl2-closed": _sl2_closed,
    "sl2-select": _sl2_select,
    "gl2-closed": _gl2_closed,
    "gl2-select": _gl2_select,
    "oracle": _oracle,
    "separate": _separate,
}


def _load(source: str):
    text = sys.stdin.read() if source == "-" else source
    if source != "-" and not source.lstrip().startswith(("{", "[")):
        try:
            text = Path(source).read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hellydim", description=__doc__.splitlines()[0])
    ap.add_argument("verb", choices=sorted(VERBS))
    ap.add_argument("input", help="inline JSON, a file path, or - for standard input")
    ap.add_argument("-o", "--output", help="write the result here instead of standard output")
    ap.add_argument("--max-order", type=int, help="group order bound for brute-force searches")
    ap.add_argument("--max-subset", type=int,
                    help="largest system size searched for a minimal certificate")
    ap.add_argument("--seed", type=int, default=0, help="seed for randomized runs")
    return ap


def run(argv=None) -> tuple[int, str]:
    """Execute one command and return ``(exit status, JSON text)``."""
    args = build_parser().parse_args(argv)
    return _execute(args)


def _execute(args) -> tuple[int, str]:
    try:
        result, status = VERBS[args.verb](_load(args.input), args), 0
    except InputError as exc:
        result, status = {"error": str(exc)}, 2
    except DomainError as exc:
        result, status = {"error": str(exc)}, 1
    except ResourceError as exc:
        result, status = {"error": str(exc)}, 3
    return status, dumps(result)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    status, text = _execute(args)
    if args.output:
        Path(args.output).write_text(text + "\n")
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
