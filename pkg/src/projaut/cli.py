"""Batch-oriented command line front end with stable JSON I/O.

Exit codes: 0 success, 1 malformed input, 2 domain error (with a
machine-readable {"error", "detail"} payload on stdout).  Identical
input produces byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__, jsonio
from .cone import cone_structure
from .errors import DomainError, InputError
from .monomial_maps import degree_sequence, empirical_growth, homogenize, predicted_growth
from .normal_form import classify_automorphism
from .relations import independence_partition, relation_lattice
from .spectral import growth_class, jordan_data_rational, normalize_spectral
from .sym_power import m2_irreducible_chain, weight_decomposition

# the empirical classifier needs a longer window than small --steps requests
CLASSIFY_WINDOW = 12


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _decode_spectral_input(payload):
    if not isinstance(payload, dict):
        raise InputError("payload must be an object")
    if "matrix" in payload:
        return jordan_data_rational(jsonio.decode_rational_matrix(payload["matrix"]))
    if "spectral" in payload:
        spectral = jsonio.decode_spectral(payload["spectral"])
        if not spectral.normalized:
            spectral = normalize_spectral(list(spectral.blocks))
        return spectral
    raise InputError("payload needs a 'matrix' or 'spectral' field")


def _cmd_relations(payload) -> dict:
    if not isinstance(payload, list) or not payload:
        raise InputError("relations payload must be a nonempty array of eigenvalues")
    values = [jsonio.decode_eigenvalue(v) for v in payload]
    rel = relation_lattice(values)
    part = independence_partition(values)
    out = jsonio.encode_relation_lattice(rel)
    out["partition"] = jsonio.encode_partition(part)
    return out


def _cmd_normal_form(payload) -> dict:
    return jsonio.encode_normal_form(classify_automorphism(_decode_spectral_input(payload)))


def _cmd_growth(payload) -> dict:
    spectral = _decode_spectral_input(payload)
    return {"spectral": jsonio.encode_spectral(spectral), "growth": jsonio.encode_growth(growth_class(spectral))}


def _cmd_decompose(payload) -> dict:
    if not isinstance(payload, dict):
        raise InputError("payload must be an object")
    case = payload.get("case")
    if case not in ("m1", "m2"):
        raise InputError("decompose needs case 'm1' or 'm2'")
    spectral = jsonio.decode_spectral(payload["spectral"]) if "spectral" in payload else None
    if spectral is None:
        raise InputError("decompose needs a 'spectral' field")
    if case == "m1":
        degree = payload.get("degree")
        if isinstance(degree, bool) or not isinstance(degree, int) or degree < 1:
            raise InputError("decompose m1 needs a positive integer 'degree'")
        components = weight_decomposition(spectral, degree)
        return {
            "case": "m1",
            "degree": degree,
            "components": [jsonio.encode_weight_component(c) for c in components],
        }
    generators = [jsonio.decode_polynomial(p) for p in payload.get("generators", [])]
    if not generators:
        raise InputError("decompose m2 needs 'generators'")
    chain = m2_irreducible_chain(spectral, generators)
    degree = payload.get("degree")
    if degree is not None and generators[0].degree() != degree:
        raise DomainError(f"generators have degree {generators[0].degree()}, not {degree}")
    return {"case": "m2", "degree": generators[0].degree(), "chain": jsonio.encode_chain(chain)}


def _cmd_cone(payload) -> dict:
    if not isinstance(payload, dict):
        raise InputError("payload must be an object")
    try:
        nf = jsonio.decode_normal_form(payload["normal_form"])
        generators = [jsonio.decode_polynomial(p) for p in payload["generators"]]
        degree = payload["degree"]
    except KeyError as exc:
        raise InputError(f"cone payload is missing {exc}") from exc
    if isinstance(degree, bool) or not isinstance(degree, int):
        raise InputError("'degree' must be an integer")
    return jsonio.encode_cone_certificate(cone_structure(nf, generators, degree))


def _cmd_simulate(payload) -> dict:
    if not isinstance(payload, dict):
        raise InputError("payload must be an object")
    try:
        matrix = jsonio.decode_matrix(payload["matrix"])
        steps = payload["steps"]
    except KeyError as exc:
        raise InputError(f"simulate payload is missing {exc}") from exc
    if isinstance(steps, bool) or not isinstance(steps, int) or steps < 1:
        raise InputError("'steps' must be a positive integer")
    window = max(steps, CLASSIFY_WINDOW)
    degrees = degree_sequence(matrix, window)
    out: dict = {
        "degrees": degrees[:steps],
        "map": jsonio.encode_monomial_map(homogenize(matrix)),
    }
    if payload.get("compare"):
        predicted = predicted_growth(matrix)
        empirical = empirical_growth(degrees)
        out["predicted"] = str(predicted)
        out["empirical"] = str(empirical)
        out["agree"] = predicted.tag == empirical.tag
    return out


_COMMANDS = {
    "relations": _cmd_relations,
    "normal-form": _cmd_normal_form,
    "growth": _cmd_growth,
    "decompose": _cmd_decompose,
    "cone": _cmd_cone,
    "simulate": _cmd_simulate,
}


def run_job(job) -> dict:
    """Execute one JobRequest {"command", "payload", "seed"?}."""
    if not isinstance(job, dict):
        raise InputError("job must be an object")
    command = job.get("command")
    if command not in _COMMANDS:
        raise InputError(f"unknown command {command!r}")
    seed = job.get("seed")
    if seed is not None and not isinstance(seed, int):
        raise InputError("'seed' must be an integer")
    return _COMMANDS[command](job.get("payload"))


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # malformed usage is exit code 1, not argparse's 2
        self.exit(1, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="projaut", description=__doc__)
    parser.add_argument("--version", action="store_true", help="print version and exit")
    parser.add_argument("--schema", metavar="COMMAND", help="print the JSON schema of a command")
    parser.add_argument(
        "--batch",
        action="store_true",
        help="read JSON-lines JobRequests from stdin, one result line each",
    )
    sub = parser.add_subparsers(dest="command")
    for name in ("relations", "normal-form", "growth", "cone"):
        p = sub.add_parser(name)
        p.add_argument("payload", nargs="?", default="-", help="JSON payload ('-' reads stdin)")
    p = sub.add_parser("decompose")
    p.add_argument("payload", nargs="?", default="-")
    p.add_argument("--degree", type=int)
    p.add_argument("--case", choices=["m1", "m2"])
    p = sub.add_parser("simulate")
    p.add_argument("--matrix", required=True, help="integer matrix as JSON")
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--compare", action="store_true")
    p.add_argument("--csv", metavar="PATH", help="dump 'n,degree' lines ('-' for stdout)")
    return parser


def _read_payload(raw: str):
    text = sys.stdin.read() if raw == "-" else raw
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON payload: {exc}") from exc


def _emit(result: dict) -> None:
    sys.stdout.write(_dumps(result) + "\n")


def _run_batch() -> int:
    worst = 0
    for line in sys.stdin:
        line = line.strip()
        if not line:
            continue
        try:
            job = json.loads(line)
            result = run_job(job)
            _emit({"ok": True, "result": result})
        except InputError as exc:
            _emit({"ok": False, "error": "input", "detail": str(exc)})
            worst = 1
        except json.JSONDecodeError as exc:
            _emit({"ok": False, "error": "input", "detail": f"malformed JSON: {exc}"})
            worst = 1
        except DomainError as exc:
            _emit({"ok": False, "error": "domain", "detail": str(exc)})
            if worst != 1:
                worst = 2
    return worst


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.version:
        print(__version__)
        return 0
    if args.schema:
        try:
            print(json.dumps(jsonio.schema_for(args.schema), indent=2, sort_keys=True))
        except InputError as exc:
            sys.stderr.write(str(exc) + "\n")
            return 1
        return 0
    if args.batch:
        return _run_batch()
    if not args.command:
        parser.print_help()
        return 1
    try:
        if args.command == "simulate":
            payload = {
                "matrix": _read_payload(args.matrix),
                "steps": args.steps,
                "compare": bool(args.compare),
            }
            result = _cmd_simulate(payload)
            if args.csv:
                lines = "".join(f"{i + 1},{d}\n" for i, d in enumerate(result["degrees"]))
                if args.csv == "-":
                    sys.stdout.write(lines)
                else:
                    with open(args.csv, "w", encoding="utf-8") as handle:
                        handle.write(lines)
        else:
            payload = _read_payload(args.payload)
            if args.command == "decompose":
                if not isinstance(payload, dict):
                    raise InputError("payload must be an object")
                if args.degree is not None:
                    payload.setdefault("degree", args.degree)
                if args.case is not None:
                    payload.setdefault("case", args.case)
            result = _COMMANDS[args.command](payload)
    except InputError as exc:
        _emit({"error": "input", "detail": str(exc)})
        return 1
    except DomainError as exc:
        _emit({"error": "domain", "detail": str(exc)})
        return 2
    _emit(result)
    return 0


if __name__ == "__main__":
    sys.exit(main())
