"""Command-line front-end: every library operation over metric JSON documents.

Exit codes: 0 success, 1 domain error (machine-readable error object on
stdout), 2 malformed input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .core import Doubleton, as_rational, doubleton_dist, is_floppy, lower_envelope, rational_str, shortest_path, validate
from .errors import MalformedInputError, MetricError
from .extension import full_extend, one_step_extend, verify_step_properties
from .game import adversary_player_two, play, winning_player_one
from .game import ProbeSecondPlayer, RandomSecondPlayer
from .generators import cantor_tree, complete_metric, cycle_metric, path_metric, random_floppy, star_metric
from .glue import floppy_certificate, glue, glue_hat, validate_patchwork
from .serialize import metric_to_doc, metric_to_dot


def _emit(obj):
    print(json.dumps(obj, indent=2))


def _parse_pair(text: str) -> Doubleton:
    parts = text.split(",")
    if len(parts) != 2:
        raise MalformedInputError(f"pair must be 'u,v', got {text!r}")
    return Doubleton(parts[0], parts[1])


def _cmd_validate(args):
    m = serialize.load_metric(args.file)
    if args.dot:
        print(metric_to_dot(m))
        return 0
    _emit(validate(m).to_json())
    return 0


def _cmd_query(args):
    m = serialize.load_metric(args.file)
    if args.hat:
        value = shortest_path(m, args.hat[0], args.hat[1])
    elif args.check:
        value = lower_envelope(m, args.check[0], args.check[1])
    else:
        value = doubleton_dist(m, _parse_pair(args.ddot[0]), _parse_pair(args.ddot[1]))
    _emit({"value": rational_str(value)})
    return 0


def _cmd_floppy(args):
    m = serialize.load_metric(args.file)
    _emit(is_floppy(m).to_json())
    return 0


def _cmd_step(args):
    m = serialize.load_metric(args.file)
    extended = one_step_extend(m, _parse_pair(args.pair), as_rational(args.r), args.mode)
    _emit(metric_to_doc(extended))
    return 0


def _cmd_pstep(args):
    m = serialize.load_metric(args.file)
    report = verify_step_properties(m, _parse_pair(args.pair), as_rational(args.r))
    _emit(report.to_json())
    return 0


def _cmd_extend(args):
    m = serialize.load_metric(args.file)
    choice = "midpoint"
    if args.choice != "midpoint":
        if not args.choice.startswith("set-file:"):
            raise MalformedInputError("--choice must be 'midpoint' or 'set-file:PATH'")
        with open(args.choice.split(":", 1)[1]) as fh:
            choice = serialize.choice_map_from_doc(json.load(fh))
    trace = full_extend(m, order=args.order, choice=choice)
    _emit(trace.to_json())
    return 0


def _make_player_two(spec: str):
    if spec == "adversary":
        return adversary_player_two()
    if spec.startswith("random:"):
        return RandomSecondPlayer(int(spec.split(":", 1)[1]))
    if spec in ("low", "high", "mid"):
        return ProbeSecondPlayer(spec)
    raise MalformedInputError(f"unknown player-two strategy {spec!r}")


def _cmd_game(args):
    if args.action != "play":
        raise MalformedInputError(f"unknown game action {args.action!r}")
    base = serialize.load_metric(args.file)
    if args.p1 != "winning":
        raise MalformedInputError(f"unknown player-one strategy {args.p1!r}")
    p1 = winning_player_one(base)
    p2 = _make_player_two(args.p2)
    length = args.game_length if args.game_length is not None else len(base.non_edges())
    transcript = play(base, length, p1, p2)
    _emit(transcript.to_json())
    return 0


def _cmd_glue(args):
    with open(args.file) as fh:
        pw = serialize.patchwork_from_doc(json.load(fh))
    if args.cert:
        _emit(floppy_certificate(pw).to_json())
    elif args.hat:
        _emit({"value": rational_str(glue_hat(pw, args.hat[0], args.hat[1]))})
    elif args.check_only:
        _emit(validate_patchwork(pw).to_json())
    else:
        _emit(metric_to_doc(glue(pw)))
    return 0


def _cmd_gen(args):
    scale = as_rational(args.scale)
    if args.kind == "cantor":
        m = cantor_tree(args.depth)
    elif args.kind == "path":
        m = path_metric(args.n, scale)
    elif args.kind == "cycle":
        m = cycle_metric(args.n, scale)
    elif args.kind == "star":
        m = star_metric(args.n, scale)
    elif args.kind == "complete":
        m = complete_metric(args.n, scale)
    else:
        m = random_floppy(args.n, as_rational(args.density), args.seed, scale=scale)
    _emit(metric_to_doc(m))
    return 0


def _build_parser():
    parser = argparse.ArgumentParser(prog="floppymetrics", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="classify a metric document")
    p.add_argument("file")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of the report")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("query", help="evaluate one derived distance")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--hat", nargs=2, metavar=("X", "Y"), help="shortest-path distance")
    group.add_argument("--check", nargs=2, metavar=("X", "Y"), help="extension lower envelope")
    group.add_argument("--ddot", nargs=2, metavar=("A,B", "U,V"), help="doubleton distance")
    p.add_argument("file")
    p.set_defaults(func=_cmd_query)

    p = sub.add_parser("floppy", help="floppiness report")
    p.add_argument("file")
    p.set_defaults(func=_cmd_floppy)

    p = sub.add_parser("step", help="one-step extension")
    p.add_argument("--pair", required=True, metavar="X,Y")
    p.add_argument("--r", required=True)
    p.add_argument("--mode", choices=["theorem", "proposition"], default="theorem")
    p.add_argument("file")
    p.set_defaults(func=_cmd_step)

    p = sub.add_parser("pstep", help="verify the step-extension properties")
    p.add_argument("--pair", required=True, metavar="X,Y")
    p.add_argument("--r", required=True)
    p.add_argument("file")
    p.set_defaults(func=_cmd_pstep)

    p = sub.add_parser("extend", help="extend to a full metric")
    p.add_argument("--order", default="lex", help="lex | maxgap | random:SEED")
    p.add_argument("--choice", default="midpoint", help="midpoint | set-file:PATH")
    p.add_argument("file")
    p.set_defaults(func=_cmd_extend)

    p = sub.add_parser("game", help="play the metric-extending game")
    p.add_argument("action", choices=["play"])
    p.add_argument("--p1", default="winning")
    p.add_argument("--p2", default="random:0", help="random:SEED | adversary | low | high | mid")
    p.add_argument("--lambda", dest="game_length", type=int, default=None, help="number of innings")
    p.add_argument("file")
    p.set_defaults(func=_cmd_game)

    p = sub.add_parser("glue", help="glued-patchwork operations")
    p.add_argument("--cert", action="store_true", help="emit the floppiness certificate")
    p.add_argument("--check-only", dest="check_only", action="store_true", help="validate only")
    p.add_argument("--hat", nargs=2, metavar=("X", "Y"), help="closed-form glued distance")
    p.add_argument("file")
    p.set_defaults(func=_cmd_glue)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("kind", choices=["cantor", "path", "cycle", "star", "complete", "random"])
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--density", default="1/2")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--scale", default="1")
    p.set_defaults(func=_cmd_gen)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except MalformedInputError as exc:
        _emit(exc.to_json())
        return 2
    except MetricError as exc:
        _emit(exc.to_json())
        return 1
    except (OSError, json.JSONDecodeError) as exc:
        _emit({"error": "REJECT_MALFORMED", "message": str(exc)})
        return 2


if __name__ == "__main__":
    sys.exit(main())
