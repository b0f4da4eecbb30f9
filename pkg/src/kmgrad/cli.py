"""Command-line front end: ``kmgrad <verb> ...``.

Every verb builds a JSON-serialisable dict from library calls, then prints
it as JSON (``--format json``, the default) or as indented text. Exit
codes: 0 success, 1 domain error, 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path
from typing import Callable

from . import diagram
from .cadmissible import build_AJ, check_pair, enumerate_pairs, verify_theorem1, weight_fiber
from .errors import InputError, KmgradError
from .gcm import GCM, classify, corank, determinant, form_signature, is_symmetrizable, rank
from .gradation import RestrictionSpec, analyze, cartan_constraints, fiber_counts
from .named import expand_family, from_name
from .quotient import build_Abar, check_quotient, enumerate_quotients, parse_fibers, verify_maximal
from .rootsys import DEFAULT_HEIGHT, bilinear_data, enumerate_positive_roots

SCHEMA = "kmgrad/1"


def load_matrix(ref: str) -> GCM:
    """A builtin name, or a JSON file holding {"labels": [...], "matrix": [[...]]}."""
    path = Path(ref)
    if path.suffix == ".json" or path.is_file():
        try:
            data = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {ref}: {exc}") from exc
        return GCM.from_json(data)
    return from_name(ref)


def _split(text: str | None) -> list[str]:
    if not text:
        return []
    return [x for x in re.split(r"[,\s]+", text.strip()) if x]


def _frac(x) -> str:
    return str(x)


# -- verbs --------------------------------------------------------------------

def cmd_classify(args) -> dict:
    g = load_matrix(args.matrix)
    out = {"matrix": g.to_json(), **classify(g).to_dict(), "rank": rank(g), "corank": corank(g)}
    if args.det:
        out["det"] = determinant(g)
    if args.signature:
        out["signature"] = list(form_signature(g)) if is_symmetrizable(g) else None
    return out


def cmd_roots(args) -> dict:
    g = load_matrix(args.matrix)
    form = bilinear_data(g, args.normalize) if is_symmetrizable(g) else None
    roots = []
    for beta, verdict in enumerate_positive_roots(g, args.height):
        item = {"root": list(beta), "height": sum(beta), "kind": verdict.kind}
        if form is not None:
            item["norm"] = _frac(form.norm(beta))
        roots.append(item)
    real = sum(1 for r in roots if r["kind"] == "real")
    return {"labels": list(g.labels), "height": args.height, "count": len(roots),
            "real": real, "imaginary": len(roots) - real, "roots": roots}


def cmd_pairs(args) -> dict:
    g = load_matrix(args.matrix)
    pairs = enumerate_pairs(g)
    return {"labels": list(g.labels), "pairs": [list(J) for J in pairs]}


def cmd_build_aj(args) -> dict:
    g = load_matrix(args.matrix)
    alg = build_AJ(g, _split(args.j))
    out = alg.to_dict()
    out["classify"] = classify(alg.aj).to_dict()
    out["corank"] = corank(alg.aj)
    out["source_diagram"] = diagram.render_text(g, alg.J)
    out["diagram"] = diagram.render_text(alg.aj, ())
    if args.verify:
        out["theorem"] = verify_theorem1(g, alg.J, args.height).to_dict()
    return out


def cmd_fiber(args) -> dict:
    g = load_matrix(args.matrix)
    J = _split(args.j)
    gamma = [int(x) for x in _split(args.gamma)]
    roots = weight_fiber(g, J, gamma)
    return {"J": J, "gamma": gamma, "size": len(roots), "roots": [list(r) for r in roots]}


def cmd_fold(args) -> dict:
    g = load_matrix(args.matrix)
    q = check_quotient(g, parse_fibers(args.fibers))
    mg = build_Abar(q)
    out = mg.to_dict()
    out["classify"] = classify(mg.abar).to_dict()
    out["diagram"] = diagram.render_text(mg.abar)
    out["maximal"] = verify_maximal(q, args.height).to_dict()
    return out


def cmd_quotients(args) -> dict:
    g = load_matrix(args.matrix)
    qs = enumerate_quotients(g, args.max_fibers)
    return {"labels": list(g.labels),
            "quotients": [{"fibers": [list(f) for f in q.fibers],
                           "matrix": [list(r) for r in build_Abar(q).abar.entries]} for q in qs]}


def cmd_analyze(args) -> dict:
    try:
        data = json.loads(Path(args.spec).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {args.spec}: {exc}") from exc
    try:
        spec = RestrictionSpec.from_json(data)
    except KeyError as exc:
        raise InputError(f"spec is missing the field {exc}") from exc
    rep = analyze(spec, args.height)
    out = rep.to_dict()
    out["constraints"] = cartan_constraints(spec).to_dict()
    out["fibers"] = fiber_counts(spec, args.height).to_dict()
    return out


def cmd_diagram(args) -> dict:
    g = load_matrix(args.matrix)
    J = _split(args.j) if args.j is not None else None
    if J:
        check_pair(g, J)
    text, dot = diagram.render_diagram(g, J)
    return {"text": text, "dot": dot}


def catalog_entry(name: str, g: GCM, max_fibers: int | None = None) -> dict:
    pairs = enumerate_pairs(g)
    qs = enumerate_quotients(g, max_fibers)
    return {
        "schema": SCHEMA,
        "name": name,
        "matrix": g.to_json(),
        "classify": classify(g).to_dict(),
        "c_admissible_pairs": [
            {"J": list(J), "A_J": [list(r) for r in build_AJ(g, J).aj.entries]} for J in pairs
        ],
        "quotients": [
            {"fibers": [list(f) for f in q.fibers],
             "matrix": [list(r) for r in build_Abar(q).abar.entries]} for q in qs
        ],
    }


def file_name(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name) + ".json"


def cmd_catalog(args) -> dict:
    family = expand_family(args.family or "")
    out_dir = Path(args.out)
    written = []
    for name, g in family:
        entry = catalog_entry(name, g, args.max_fibers)
        out_dir.mkdir(parents=True, exist_ok=True)
        path = out_dir / file_name(name)
        path.write_text(json.dumps(entry, indent=2, sort_keys=True) + "\n")
        written.append(str(path))
    return {"written": written}


VERBS: dict[str, Callable] = {
    "classify": cmd_classify,
    "roots": cmd_roots,
    "pairs": cmd_pairs,
    "build-aj": cmd_build_aj,
    "fiber": cmd_fiber,
    "fold": cmd_fold,
    "quotients": cmd_quotients,
    "analyze": cmd_analyze,
    "diagram": cmd_diagram,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--height", type=int, default=DEFAULT_HEIGHT)
    common.add_argument("--normalize", default=None, help='e.g. "short=1,long=2"')

    p = argparse.ArgumentParser(prog="kmgrad", description="Gradations of Kac-Moody root data.")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("classify", parents=[common])
    s.add_argument("matrix")
    s.add_argument("--det", action="store_true")
    s.add_argument("--signature", action="store_true")

    for verb in ("roots", "pairs", "quotients"):
        s = sub.add_parser(verb, parents=[common])
        s.add_argument("matrix")
        if verb == "quotients":
            s.add_argument("--max-fibers", type=int, default=None)

    s = sub.add_parser("build-aj", parents=[common])
    s.add_argument("matrix")
    s.add_argument("--j", required=True)
    s.add_argument("--verify", action="store_true", help="also run the restricted-root check")

    s = sub.add_parser("fiber", parents=[common])
    s.add_argument("matrix")
    s.add_argument("--j", required=True)
    s.add_argument("--gamma", required=True)

    s = sub.add_parser("fold", parents=[common])
    s.add_argument("matrix")
    s.add_argument("--fibers", required=True, help='e.g. "1,5|2,6|3|4"')

    s = sub.add_parser("analyze", parents=[common])
    s.add_argument("spec")

    s = sub.add_parser("diagram", parents=[common])
    s.add_argument("matrix")
    s.add_argument("--j", default=None)
    s.add_argument("--dot", action="store_true", help="print only the DOT source")

    s = sub.add_parser("catalog", parents=[common])
    s.add_argument("family", nargs="?", default="")
    s.add_argument("--out", default="catalog")
    s.add_argument("--max-fibers", type=int, default=None)
    return p


def render_text(obj, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, str) and "\n" in v:
                lines.append(f"{pad}{k}:")
                lines.extend(f"{pad}  {line}" for line in v.rstrip("\n").split("\n"))
            elif isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        return "\n".join(
            f"{pad}-\n{render_text(v, indent + 1)}" if isinstance(v, (dict, list)) and not _flat(v)
            else f"{pad}- {_scalar(v)}" for v in obj)
    return pad + _scalar(obj)


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) or _flat(x) for x in v) \
        and all(not isinstance(x, dict) for x in v)


def _scalar(v) -> str:
    if isinstance(v, (list, dict)):
        return json.dumps(v, ensure_ascii=False)
    if v is None:
        return "-"
    return str(v)


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = VERBS[args.verb](args)
    except InputError as exc:
        _emit_error(exc, 2, args, stdout, stderr)
        return 2
    except KmgradError as exc:
        _emit_error(exc, 1, args, stdout, stderr)
        return 1
    except ValueError as exc:
        _emit_error(exc, 2, args, stdout, stderr)
        return 2
    if args.verb == "diagram" and args.dot:
        stdout.write(result["dot"])
        return 0
    result = {"schema": SCHEMA, "verb": args.verb, **result}
    if args.format == "json":
        stdout.write(json.dumps(result, indent=2, ensure_ascii=False) + "\n")
    else:
        stdout.write(render_text(result) + "\n")
    return 0


def _emit_error(exc: Exception, code: int, args, stdout, stderr) -> None:
    payload = {
        "schema": SCHEMA,
        "verb": args.verb,
        "error": type(exc).__name__,
        "message": str(exc),
        "witness": getattr(exc, "witness", {}),
        "exit_code": code,
    }
    if args.format == "json":
        stdout.write(json.dumps(payload, indent=2, ensure_ascii=False, default=str) + "\n")
    stderr.write(f"kmgrad {args.verb}: {type(exc).__name__}: {exc}\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
