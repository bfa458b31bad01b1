"""Command-line front end.

Every subcommand reads JSON files, calls into the library and writes one
JSON document (or a flat text rendering with ``--format text``).  Exit code
0 means success, 1 an operation error (reported as JSON), 2 unparseable
input.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .hierarchy import hierarchy_demo
from .limits import (
    OrderingSequence,
    approximating_sequence,
    limit_prefix,
    stabilization_probe,
)
from .orders import (
    StagedOrdering,
    StandardOrdering,
    compare_staged,
    compare_standard,
)
from .pl import IDENTITY, PLHomeo, Sign, compose, invert
from .rationals import format_rational
from .realization import PLSubgroup, ZdLex, check_recovery, realize
from .witnesses import approximate_typical_trace, construct_anb


class InputError(Exception):
    """Input that does not parse against the documented schemas."""


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def _homeo(data) -> PLHomeo:
    try:
        return ser.homeo_from_json(data)
    except ser.SchemaError as exc:
        raise InputError(str(exc)) from exc


def _homeo_list(data) -> list[PLHomeo]:
    if isinstance(data, dict) and "functions" in data:
        data = data["functions"]
    if not isinstance(data, list):
        raise InputError("expected a list of maps or {\"functions\": [...]}")
    return [_homeo(d) for d in data]


def _ordering(path: str | None):
    if path is None:
        return StandardOrdering()
    try:
        return ser.ordering_from_json(_load(path))
    except ser.SchemaError as exc:
        raise InputError(str(exc)) from exc


def _compare(ord, f, g) -> dict:
    if isinstance(ord, StandardOrdering):
        s, idx = compare_standard(ord, f, g)
        return {"sign": s.symbol, "witness_index": idx}
    if isinstance(ord, StagedOrdering):
        s, where = compare_staged(ord, f, g)
        return {"sign": s.symbol, "witness": list(where) if where else None}
    h = compose(invert(g), f)
    if h.is_identity():
        return {"sign": Sign.ZERO.symbol, "decided_by": None}
    by = "interior" if h.germ().is_trivial() else "germ"
    out = {"sign": ord.compare(f, g).symbol, "decided_by": by}
    if by == "interior":
        out["witness_index"] = compare_standard(ord.interior, h, IDENTITY)[1]
    return out


# ------------------------------------------------------------ subcommands

def cmd_sign(args) -> dict:
    return _compare(_ordering(args.ordering), _homeo(_load(args.fn)), IDENTITY)


def cmd_compare(args) -> dict:
    return _compare(_ordering(args.ordering), _homeo(_load(args.f)), _homeo(_load(args.g)))


def cmd_absets(args) -> dict:
    f = _homeo(_load(args.fn))
    return {"above": f.above.to_json(), "below": f.below.to_json()}


def cmd_anb(args) -> dict:
    fs = _homeo_list(_load(args.inputs))
    return ser.anb_to_json(construct_anb(fs, max_rounds=args.max_rounds))


def cmd_approximate(args) -> dict:
    fs = _homeo_list(_load(args.inputs))
    if args.invert_negatives:
        ref = _ordering(args.ordering)
        fs = [f if ref.sign(f) != Sign.NEGATIVE else invert(f) for f in fs]
    trace = approximate_typical_trace(fs)
    return {
        "ordering": ser.ordering_to_json(trace.ordering),
        "decided_by": trace.decided_by,
        "inputs": [f.to_json() for f in fs],
    }


def _pl_oracle(args):
    if not args.generators:
        raise InputError("--group pl needs --generators")
    gens = _homeo_list(_load(args.generators))
    ord = _ordering(args.ordering)
    return PLSubgroup(gens, ord)


def cmd_realize(args) -> dict:
    if args.group == "z":
        oracle = ZdLex(1, ["a"])
    elif args.group == "z2lex":
        oracle = ZdLex(2, ["a", "b"])
    else:
        oracle = _pl_oracle(args)
    result = realize(oracle, args.radius)
    report = check_recovery(result, oracle)
    return {
        "group": args.group,
        "radius": args.radius,
        "elements": [oracle.format_word(w) for w in result.elements],
        "t": {oracle.format_word(w): format_rational(result.t[w]) for w in result.elements},
        "rho": {oracle.generator_ids[i - 1]: r.to_json() for i, r in sorted(result.rho.items())},
        "recovery": {
            "ok": report.ok,
            "order_violations": len(report.order_violations),
            "sign_violations": len(report.sign_violations),
            "action_violations": len(report.action_violations),
            "action_pairs_checked": report.action_pairs_checked,
        },
    }


def _sequence(data, budget: int) -> OrderingSequence:
    try:
        kind = data["kind"]
        if kind == "approximating":
            target = ser.ordering_from_json(data["target"])
            if not isinstance(target, StagedOrdering):
                raise InputError("approximating sequences need a staged target")
            return OrderingSequence(lambda n: approximating_sequence(target, n), budget)
        if kind == "explicit":
            ords = [ser.ordering_from_json(o) for o in data["orderings"]]
            if not ords or not all(isinstance(o, StandardOrdering) for o in ords):
                raise InputError("explicit sequences need standard orderings")
            # the last listed ordering repeats beyond the list
            return OrderingSequence(lambda n: ords[min(n, len(ords)) - 1], budget)
    except (KeyError, TypeError, ser.SchemaError) as exc:
        raise InputError(f"bad sequence description: {exc}") from exc
    raise InputError(f"unknown sequence kind {kind!r}")


def cmd_limits(args) -> dict:
    seq = _sequence(_load(args.sequence), args.budget)
    out: dict = {"budget": args.budget}
    if args.tests:
        report = stabilization_probe(seq, _homeo_list(_load(args.tests)))
        out["window"] = report.window
        out["table"] = [
            {"signs": "".join(s.symbol for s in t.signs), "stabilized": t.stabilized,
             "first_stable_index": t.first_stable_index, "final_sign": t.final_sign.symbol}
            for t in report.traces
        ]
    if args.prefix:
        rows = []
        for p, item in enumerate(limit_prefix(seq, args.prefix)):
            if item:
                rows.append({"position": p, "point": format_rational(item[0]),
                             "sign": item[1].symbol})
            else:
                rows.append({"position": p, "stabilized": False})
        out["limit_prefix"] = rows
    return out


def cmd_hierarchy(args) -> dict:
    return hierarchy_demo(seed=args.seed, samples=args.samples)


# ----------------------------------------------------------------- driver

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plorders", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("sign", help="sign of a map under an ordering")
    s.add_argument("--ordering")
    s.add_argument("--fn", required=True)
    s.set_defaults(run=cmd_sign)

    s = sub.add_parser("compare", help="compare two maps under an ordering")
    s.add_argument("--ordering")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s.set_defaults(run=cmd_compare)

    s = sub.add_parser("absets", help="above and below sets of a map")
    s.add_argument("--fn", required=True)
    s.set_defaults(run=cmd_absets)

    s = sub.add_parser("anb", help="build g and h for maps with equal above/below unions")
    s.add_argument("--inputs", required=True)
    s.add_argument("--max-rounds", type=int, default=20)
    s.set_defaults(run=cmd_anb)

    s = sub.add_parser("approximate", help="standard ordering making given maps positive")
    s.add_argument("--inputs", required=True)
    s.add_argument("--invert-negatives", action="store_true",
                   help="first invert maps negative under --ordering")
    s.add_argument("--ordering")
    s.set_defaults(run=cmd_approximate)

    s = sub.add_parser("realize", help="dynamical realization of a small group")
    s.add_argument("--group", choices=("z", "z2lex", "pl"), required=True)
    s.add_argument("--radius", type=int, required=True)
    s.add_argument("--generators")
    s.add_argument("--ordering")
    s.set_defaults(run=cmd_realize)

    s = sub.add_parser("limits", help="convergence probes")
    lsub = s.add_subparsers(dest="limits_command", required=True)
    probe = lsub.add_parser("probe", help="sign stabilization along a sequence")
    probe.add_argument("--sequence", required=True)
    probe.add_argument("--tests")
    probe.add_argument("--budget", type=int, required=True)
    probe.add_argument("--prefix", type=int, default=0,
                       help="also reconstruct this many limit points")
    probe.set_defaults(run=cmd_limits)

    s = sub.add_parser("hierarchy-demo", help="strict inclusions between ordering classes")
    s.add_argument("--samples", type=int, default=20)
    s.set_defaults(run=cmd_hierarchy)
    return p


def _text(payload, prefix: str = "") -> list[str]:
    lines = []
    items = payload.items() if isinstance(payload, dict) else enumerate(payload)
    for k, v in items:
        if _nested(v):
            lines += _text(v, f"{prefix}{k}.")
        else:
            lines.append(f"{prefix}{k}: {_scalar(v)}")
    return lines


def _nested(v) -> bool:
    # descend into objects and lists of objects; print other lists inline
    if isinstance(v, dict):
        return bool(v)
    return isinstance(v, list) and any(isinstance(x, dict) for x in v)


def _scalar(v) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _emit(payload: dict, args) -> None:
    if args.format == "json":
        text = ser.dumps(payload) + "\n"
    else:
        text = "\n".join(_text(payload)) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        body = args.run(args)
    except InputError as exc:
        _emit({"schema_version": ser.SCHEMA_VERSION,
               "error": {"type": "InputError", "message": str(exc)}}, args)
        return 2
    except (ValueError, ArithmeticError, RuntimeError) as exc:
        _emit({"schema_version": ser.SCHEMA_VERSION,
               "error": {"type": type(exc).__name__, "message": str(exc)}}, args)
        return 1
    _emit({"schema_version": ser.SCHEMA_VERSION, **body}, args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
