"""Command-line front end.

Every command reads fan/polytope JSON (a file path or ``-`` for stdin), runs
one analysis, and prints a deterministic report. Reports are JSON by default
(sorted keys, two-space indent) or ``--format text`` tables; integers beyond
the 53-bit range are serialized as decimal strings.

Exit codes: 0 success, 1 "answer is no" for decision commands under
``--strict``, 2 invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import additive, cox, demazure, fan as fans, polytope as polytopes
from .errors import InvalidFan, ToricError

_INT_LIMIT = 2 ** 53


def _json_safe(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= _INT_LIMIT else obj
    if isinstance(obj, (list, tuple)):
        return [_json_safe(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _dumps(payload) -> str:
    return json.dumps(_json_safe(payload), sort_keys=True, indent=2) + "\n"


def _read_bytes(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as fh:
        return fh.read()


def _load_json(path: str):
    raw = _read_bytes(path)
    digest = hashlib.sha256(raw).hexdigest()
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ToricError(f"not valid JSON: {exc}") from None
    return data, digest


def _unwrap(data, kind: str):
    """Accept bare objects or report envelopes (for piping between commands)."""
    if isinstance(data, dict):
        if kind == "fan" and {"dim", "rays", "max_cones"} <= set(data):
            return data
        if kind == "polytope" and {"dim", "vertices"} <= set(data):
            return data
        for key in ("result", "fan", "polytope", "object"):
            if key in data and isinstance(data[key], dict):
                try:
                    return _unwrap(data[key], kind)
                except ToricError:
                    pass
    raise ToricError(f"no {kind} object found in input JSON")


def _load_fan(path: str):
    data, digest = _load_json(path)
    return fans.fan_from_json_dict(_unwrap(data, "fan")), digest


def _load_polytope(path: str):
    data, digest = _load_json(path)
    return polytopes.polytope_from_json_dict(_unwrap(data, "polytope")), digest


# ---------------------------------------------------------------------------
# serialization helpers


def _root_dict(r: demazure.DemazureRoot) -> dict:
    return {"vector": list(r.vector), "ray": r.ray}


def _ray_roots_dict(rr: demazure.RayRoots) -> dict:
    out = {"ray": rr.ray, "status": rr.status,
           "roots": [_root_dict(r) for r in rr.roots]}
    if rr.bound is not None:
        out["bound"] = rr.bound
    return out


def _collection_dict(fan_obj, c: additive.CompleteCollection) -> dict:
    return {
        "rays": list(c.ray_indices),
        "roots": [list(v) for v in c.root_vectors],
        "derivations": [demazure.format_derivation(demazure.derivation(fan_obj, r))
                        for r in c.roots],
    }


def _witness_dict(w: additive.EquivalenceWitness) -> dict:
    return {"matrix": [list(row) for row in w.matrix],
            "ray_map": [list(pair) for pair in w.ray_map]}


def _cone_dict(c) -> dict:
    return {"rays": list(c.ray_indices), "dim": c.dim}


# ---------------------------------------------------------------------------
# report plumbing


class _Failure(Exception):
    def __init__(self, message: str, violations=None):
        super().__init__(message)
        self.message = message
        self.violations = list(violations or [])


def _report(args, command: str, result, status: str, exit_code: int,
            digest: str | None, text_lines) -> int:
    envelope = {
        "command": command,
        "input": {"path": getattr(args, "file", None), "sha256": digest} if digest else None,
        "result": result,
        "status": status,
        "exit_code": exit_code,
    }
    if args.format == "json":
        sys.stdout.write(_dumps(envelope))
    else:
        for line in text_lines:
            sys.stdout.write(line + "\n")
    return exit_code


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


# ---------------------------------------------------------------------------
# commands


def _cmd_fan_check(args) -> int:
    data, digest = _load_json(args.file)
    payload = _unwrap(data, "fan")
    violations = fans.validate_fan(payload.get("dim"), payload.get("rays", []),
                                   payload.get("max_cones", []))
    if violations:
        result = {"valid": False, "violations": violations, "complete": None}
        lines = ["valid: no"] + [f"violation: {v}" for v in violations]
        return _report(args, "fan-check", result, "invalid", 2, digest, lines)
    fan_obj = fans.fan_from_json_dict(payload)
    complete = fans.is_complete(fan_obj)
    result = {"valid": True, "violations": [], "complete": complete}
    lines = ["valid: yes", f"complete: {_yesno(complete)}"]
    return _report(args, "fan-check", result, "ok", 0, digest, lines)


def _cmd_roots(args) -> int:
    fan_obj, digest = _load_fan(args.file)
    rs = demazure.all_roots(fan_obj, args.bound)
    per_ray = [_ray_roots_dict(rr) for rr in rs.per_ray]
    result = {"per_ray": per_ray, "finite": rs.finite,
              "total_listed": sum(len(rr.roots) for rr in rs.per_ray)}
    lines = []
    for rr in rs.per_ray:
        ray = fan_obj.rays[rr.ray]
        vecs = ", ".join(str(list(r.vector)) for r in rr.roots)
        suffix = f" (bound {rr.bound})" if rr.bound is not None else ""
        lines.append(f"ray {rr.ray} {list(ray)}: {rr.status}{suffix} [{vecs}]")
    lines.append(f"total listed roots: {result['total_listed']}")
    return _report(args, "roots", result, "ok", 0, digest, lines)


def _cmd_collections(args) -> int:
    fan_obj, digest = _load_fan(args.file)
    cols = additive.complete_collections(fan_obj)
    result = {"count": len(cols),
              "collections": [_collection_dict(fan_obj, c) for c in cols]}
    lines = [f"complete collections: {len(cols)}"]
    for c in cols:
        lines.append(f"  rays {list(c.ray_indices)} roots {[list(v) for v in c.root_vectors]}")
    if args.equivalence and cols:
        classes: list[list[int]] = []
        witnesses = []
        reps: list[int] = []
        for i, c in enumerate(cols):
            for cls_idx, rep in enumerate(reps):
                try:
                    w = additive.find_equivalence(fan_obj, cols[rep], c)
                except additive.NoWitness:
                    continue
                classes[cls_idx].append(i)
                if i != rep:
                    witnesses.append({"from": rep, "to": i, **_witness_dict(w)})
                break
            else:
                reps.append(i)
                classes.append([i])
        result["equivalence"] = {"classes": classes, "witnesses": witnesses}
        lines.append(f"equivalence classes: {len(classes)}")
        for w in witnesses:
            lines.append(f"  witness {w['from']} -> {w['to']}: matrix {w['matrix']}")
    status, code = "ok", 0
    if args.strict and not cols:
        status, code = "no", 1
    return _report(args, "collections", result, status, code, digest, lines)


def _cmd_additive(args) -> int:
    fan_obj, digest = _load_fan(args.file)
    decision = additive.admits_additive(fan_obj)
    result = {
        "admits": decision.admits,
        "reading": decision.reading,
        "witness": _collection_dict(fan_obj, decision.witness) if decision.witness else None,
        "formulas": [],
        "theorem3con": None,
    }
    lines = [f"admits additive action: {_yesno(decision.admits)} ({decision.reading})"]
    if decision.witness:
        rules = cox.action_formulas(fan_obj, decision.witness)
        result["formulas"] = [cox.format_formula(r) for r in rules]
        lines.extend(f"  {s}" for s in result["formulas"])
    if decision.fan_complete:
        report = additive.theorem3con_report(fan_obj)
        result["theorem3con"] = {
            "complete_collection_exists": report.complete_collection_exists,
            "distinguished_span": report.distinguished_span,
        }
        lines.append(
            "theorem flags: collection "
            f"{_yesno(report.complete_collection_exists)}, "
            f"span {_yesno(report.distinguished_span)}")
    status, code = "ok", 0
    if args.strict and not decision.admits:
        status, code = "no", 1
    return _report(args, "additive", result, status, code, digest, lines)


def _cmd_cox(args) -> int:
    fan_obj, digest = _load_fan(args.file)
    pres = cox.cox_presentation(fan_obj)
    canon = cox.canonical_degrees(pres)
    result = {
        "num_vars": pres.num_vars,
        "class_rank": pres.class_rank,
        "torsion": list(pres.torsion),
        "degrees": [list(v) for v in pres.degrees],
        "degrees_canonical": [list(v) for v in canon],
    }
    lines = [f"variables: {pres.num_vars}", f"class rank: {pres.class_rank}",
             f"torsion: {list(pres.torsion)}"]
    for i, v in enumerate(canon):
        lines.append(f"deg x{i + 1} = {list(v)}")
    return _report(args, "cox", result, "ok", 0, digest, lines)


def _parse_root(fan_obj, spec: str) -> demazure.DemazureRoot:
    try:
        ray_part, vec_part = spec.split(":", 1)
        ray = int(ray_part)
        coords = tuple(int(x) for x in vec_part.split(","))
    except ValueError:
        raise ToricError(f"bad root spec {spec!r}; expected 'rayIndex:c1,c2,...'") from None
    if not 0 <= ray < len(fan_obj.rays):
        raise ToricError(f"no ray with index {ray}")
    if len(coords) != fan_obj.dim:
        raise ToricError(f"root vector has dimension {len(coords)}, expected {fan_obj.dim}")
    if not demazure.is_demazure_root(fan_obj, coords, ray):
        raise ToricError(f"{list(coords)} is not a Demazure root with distinguished ray {ray}")
    return demazure.demazure_root(fan_obj, coords, ray)


def _cmd_pairs(args) -> int:
    fan_obj, digest = _load_fan(args.file)
    root = _parse_root(fan_obj, args.root)
    pairs = demazure.he_connected_pairs(fan_obj, root)
    result = {
        "root": _root_dict(root),
        "pairs": [{"facet": _cone_dict(a), "cone": _cone_dict(b)} for a, b in pairs],
    }
    lines = [f"root {list(root.vector)} (ray {root.ray}): {len(pairs)} pair(s)"]
    for a, b in pairs:
        lines.append(f"  facet {list(a.ray_indices)} (dim {a.dim}) "
                     f"< cone {list(b.ray_indices)} (dim {b.dim})")
    return _report(args, "pairs", result, "ok", 0, digest, lines)


def _cmd_polytope(args) -> int:
    poly, digest = _load_polytope(args.file)
    if args.action == "check":
        witness = polytopes.inscribed_in_rectangle(poly)
        report = polytopes.check_polytope_theorem(poly)
        result = {
            "inscribed": report.inscribed,
            "fan_admits": report.fan_admits,
            "agree": report.inscribed == report.fan_admits,
            "witness": ({"vertex": list(witness.vertex),
                         "edge_basis": [list(e) for e in witness.edge_basis]}
                        if witness else None),
        }
        lines = [f"inscribed in a rectangle: {_yesno(report.inscribed)}",
                 f"normal fan admits additive action: {_yesno(report.fan_admits)}"]
        if witness:
            lines.append(f"witness vertex {list(witness.vertex)} "
                         f"edge basis {[list(e) for e in witness.edge_basis]}")
        status, code = "ok", 0
        if args.strict and not report.inscribed:
            status, code = "no", 1
        return _report(args, "polytope check", result, status, code, digest, lines)
    if args.action == "normalfan":
        fan_obj = polytopes.normal_fan(poly)
        payload = fans.fan_to_json_dict(fan_obj)
        result = {"fan": payload}
        lines = [json.dumps(_json_safe(payload), sort_keys=True)]
        return _report(args, "polytope normalfan", result, "ok", 0, digest, lines)
    scaled = polytopes.scale(poly, args.k)
    payload = polytopes.polytope_to_json_dict(scaled)
    result = {"polytope": payload}
    lines = [json.dumps(_json_safe(payload), sort_keys=True)]
    return _report(args, "polytope scale", result, "ok", 0, digest, lines)


def _cmd_gen(args) -> int:
    params = tuple(int(x) for x in args.params)
    if args.name in fans._BUILTIN_FANS:
        obj = fans.builtin_fan(args.name, *params)
        payload = fans.fan_to_json_dict(obj)
        kind = "fan"
    elif args.name in polytopes._BUILTIN_POLYTOPES:
        obj = polytopes.builtin_polytope(args.name, *params)
        payload = polytopes.polytope_to_json_dict(obj)
        kind = "polytope"
    else:
        known = sorted(fans._BUILTIN_FANS) + sorted(polytopes._BUILTIN_POLYTOPES)
        raise ToricError(f"unknown generator {args.name!r}; known: {', '.join(known)}")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(_dumps(payload))
    result = {"kind": kind, "object": payload, "written": args.out}
    lines = [json.dumps(_json_safe(payload), sort_keys=True)]
    if args.out:
        lines.append(f"written: {args.out}")
    return _report(args, "gen", result, "ok", 0, None, lines)


# ---------------------------------------------------------------------------
# argument parsing


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="toricroots",
        description="Exact additive-action analysis of toric varieties "
                    "given as fans or lattice polytopes.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json",
                        help="report format (default: json)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fan-check", parents=[common],
                       help="validate a fan and decide completeness")
    p.add_argument("file")
    p.set_defaults(func=_cmd_fan_check)

    p = sub.add_parser("roots", parents=[common], help="Demazure roots per ray")
    p.add_argument("file")
    p.add_argument("--bound", type=int, default=None,
                   help="truncate infinite root sets at this sup-norm")
    p.set_defaults(func=_cmd_roots)

    p = sub.add_parser("collections", parents=[common],
                       help="complete collections of Demazure roots")
    p.add_argument("file")
    p.add_argument("--equivalence", action="store_true",
                   help="also group collections by fan automorphisms")
    p.add_argument("--strict", action="store_true",
                   help="exit 1 when no collection exists")
    p.set_defaults(func=_cmd_collections)

    p = sub.add_parser("additive", parents=[common],
                       help="decide existence of an additive action")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="exit 1 on a negative answer")
    p.set_defaults(func=_cmd_additive)

    p = sub.add_parser("cox", parents=[common], help="Cox presentation (degrees, torsion)")
    p.add_argument("file")
    p.set_defaults(func=_cmd_cox)

    p = sub.add_parser("pairs", parents=[common],
                       help="orbit-connecting cone pairs of one root")
    p.add_argument("file")
    p.add_argument("--root", required=True, metavar="RAY:C1,C2,...",
                   help="root as distinguished ray index and vector")
    p.set_defaults(func=_cmd_pairs)

    p = sub.add_parser("polytope", parents=[common], help="lattice polytope analyses")
    psub = p.add_subparsers(dest="action", required=True)
    pc = psub.add_parser("check", parents=[common],
                         help="inscribed-in-a-rectangle test plus the fan-side answer")
    pc.add_argument("file")
    pc.add_argument("--strict", action="store_true", help="exit 1 when not inscribed")
    pc.set_defaults(func=_cmd_polytope, action="check")
    pn = psub.add_parser("normalfan", parents=[common], help="emit the normal fan as fan JSON")
    pn.add_argument("file")
    pn.set_defaults(func=_cmd_polytope, action="normalfan")
    ps = psub.add_parser("scale", parents=[common], help="dilate the polytope by k")
    ps.add_argument("file")
    ps.add_argument("k", type=int)
    ps.set_defaults(func=_cmd_polytope, action="scale")

    p = sub.add_parser("gen", parents=[common], help="write a builtin fan or polytope")
    p.add_argument("name")
    p.add_argument("params", nargs="*")
    p.add_argument("--out", default=None, help="write the object JSON to this file")
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (InvalidFan,) as exc:
        error = {"type": type(exc).__name__, "message": str(exc),
                 "violations": exc.violations}
    except (ToricError, OSError, ValueError) as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
    envelope = {"command": args.command, "input": None, "result": None,
                "error": error, "status": "invalid", "exit_code": 2}
    if args.format == "json":
        sys.stdout.write(_dumps(envelope))
    else:
        sys.stdout.write(f"error: {error['message']}\n")
        for v in error.get("violations", []):
            sys.stdout.write(f"violation: {v}\n")
    return 2


def run() -> None:
    raise SystemExit(main())
