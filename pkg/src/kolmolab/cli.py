"""Single entry point dispatching all subcommands.

Output modes: human-readable (default) or JSON lines (--json).  Every JSON
line is self-contained and carries a "config" echo (budget caps, machine-doc
label, seed, backend) so results are reproducible from any single line.
Exit codes: 0 success, 1 usage or malformed input, 2 resource refusal.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import engine
from .census import census, deficiency_profile
from .codec import DecodeError, check_bits, decode_pair, encode_pair, pad
from .complexity import estimate_k, estimate_k_given, estimate_k_pair, info_estimate
from .dovetail import sweep
from .machinedoc import resolve_machine_doc
from .machines import (
    DEFAULT_CELLS,
    ExecBudget,
    ResourceRefusal,
    enumerate_machine,
    iter_table_trace,
    run,
)
from .palindrome import crossing_sequences, quadratic_report, run_palindrome_tm
from .prefixfree import dyadic_digits, estimate_h, omega_estimate
from .randomness import (
    FiniteMLTest,
    frequency_stats,
    lil_statistic,
    ml_test_eval,
    rule_from_spec,
    select_subsequence,
    source_from_spec,
)

USAGE_ERROR, REFUSAL = 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; this tool reserves 2 for refusals
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(USAGE_ERROR)


def _common_flags(parser, suffix=""):
    # the same flags are accepted before and after the subcommand; the
    # post-subcommand position wins when both are given
    parser.add_argument("--json", action="store_true", dest=f"json{suffix}", default=None, help="emit JSON lines")
    parser.add_argument(
        "--machine-doc",
        metavar="PATH",
        dest=f"machine_doc{suffix}",
        default=None,
        help="machine doc override (also env KOLMOLAB_MACHINE_DOC)",
    )
    parser.add_argument("--tape", type=int, dest=f"tape{suffix}", default=None, help="tape cell cap")
    parser.add_argument("--seed", type=int, dest=f"seed{suffix}", default=None, help="seed echoed in config")


def build_parser() -> _Parser:
    p = _Parser(prog="kolmolab", description=__doc__)
    _common_flags(p, suffix="_pre")
    common = argparse.ArgumentParser(add_help=False)
    _common_flags(common)
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("pad", help="double a bit string with marker zeros", parents=[common])
    sp.add_argument("bits")

    sp = sub.add_parser("pair", help="pair codecs")
    pair_sub = sp.add_subparsers(dest="pair_cmd", required=True)
    enc = pair_sub.add_parser("encode", parents=[common])
    enc.add_argument("--level", type=int, required=True, choices=(1, 2, 3))
    enc.add_argument("u")
    enc.add_argument("v")
    dec = pair_sub.add_parser("decode", parents=[common])
    dec.add_argument("--level", type=int, required=True, choices=(1, 2, 3))
    dec.add_argument("w")

    sp = sub.add_parser("run", help="run machine e on an input", parents=[common])
    sp.add_argument("--machine", type=int, required=True)
    sp.add_argument("--input", default="")
    sp.add_argument("--steps", type=int, required=True)
    sp.add_argument("--trace", action="store_true")

    sp = sub.add_parser("sweep", help="stream halting programs up to a horizon", parents=[common])
    sp.add_argument("--horizon", type=int, required=True)

    sp = sub.add_parser("k", help="plain/conditional/pair complexity upper bound", parents=[common])
    sp.add_argument("--target", required=True)
    sp.add_argument("--horizon", type=int, required=True)
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--cond", metavar="BITS")
    group.add_argument("--pair", metavar="BITS")
    group.add_argument("--info", metavar="BITS", help="also report mutual-information estimate given BITS")

    sp = sub.add_parser("h", help="prefix complexity upper bound", parents=[common])
    sp.add_argument("--target", required=True)
    sp.add_argument("--horizon", type=int, required=True)

    sp = sub.add_parser("omega", help="halting-probability lower bound", parents=[common])
    sp.add_argument("--horizon", type=int, required=True)
    sp.add_argument("--digits", type=int, default=8)

    sp = sub.add_parser("census", help="incompressibility census at length n", parents=[common])
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--c", type=int, required=True)
    sp.add_argument("--horizon", type=int, required=True)
    sp.add_argument("--prefix", action="store_true")

    sp = sub.add_parser("deficiency", help="prefix randomness-deficiency profile", parents=[common])
    sp.add_argument("--source", required=True)
    sp.add_argument("--n-max", type=int, required=True)
    sp.add_argument("--horizon", type=int, required=True)

    sp = sub.add_parser("random", help="sequence test bench")
    rand_sub = sp.add_subparsers(dest="random_cmd", required=True)
    freq = rand_sub.add_parser("freq", parents=[common])
    freq.add_argument("--source", required=True)
    freq.add_argument("--n", type=int, required=True)
    sel = rand_sub.add_parser("select", parents=[common])
    sel.add_argument("--source", required=True)
    sel.add_argument("--n", type=int, required=True)
    sel.add_argument("--rule", required=True)
    lil = rand_sub.add_parser("lil", parents=[common])
    lil.add_argument("--source", required=True)
    lil.add_argument("--n", type=int, required=True)
    ml = rand_sub.add_parser("mltest", parents=[common])
    ml.add_argument("--source", required=True)
    ml.add_argument("--n", type=int, required=True)
    ml.add_argument("--test", required=True, metavar="FILE")

    sp = sub.add_parser("tm", help="palindrome machine profiler")
    tm_sub = sp.add_subparsers(dest="tm_cmd", required=True)
    palin = tm_sub.add_parser("palindrome", parents=[common])
    palin.add_argument("--input", default="")
    palin.add_argument("--trace", action="store_true")
    quad = tm_sub.add_parser("quadratic", parents=[common])
    quad.add_argument("--n", required=True, help="comma-separated lengths")
    quad.add_argument("--trials", type=int, default=20)
    quad.add_argument("--csv", action="store_true")

    return p


def _merge_common_flags(args):
    for name, fallback in (
        ("json", False),
        ("machine_doc", None),
        ("tape", DEFAULT_CELLS),
        ("seed", None),
    ):
        post = getattr(args, name, None)
        pre = getattr(args, f"{name}_pre", None)
        setattr(args, name, post if post is not None else (pre if pre is not None else fallback))


class Emitter:
    def __init__(self, args, config):
        self.json = args.json
        self.config = config

    def line(self, obj: dict, human: str):
        if self.json:
            print(json.dumps({**obj, "config": self.config}))
        else:
            print(human)

    def header(self, human: str):
        if not self.json:
            print(f"# {human}")


def _frac_fields(value: Fraction, prefix: str) -> dict:
    return {
        f"{prefix}_num": value.numerator,
        f"{prefix}_den_pow2": value.denominator.bit_length() - 1,
    }


def _bound_payload(got, kind: str) -> dict:
    if got is None:
        return {"kind": kind, "found": False}
    return {
        "kind": kind,
        "found": True,
        "bound": got.bound,
        "witness": got.witness,
        "horizon": got.horizon,
    }


def _dispatch(args, emit: Emitter) -> int:
    if args.cmd == "pad":
        out = pad(check_bits(args.bits))
        emit.line({"cmd": "pad", "input": args.bits, "output": out}, out)

    elif args.cmd == "pair":
        if args.pair_cmd == "encode":
            w = encode_pair(args.level, check_bits(args.u), check_bits(args.v))
            emit.line({"cmd": "pair-encode", "level": args.level, "code": w}, w)
        else:
            u, v = decode_pair(args.level, check_bits(args.w))
            emit.line(
                {"cmd": "pair-decode", "level": args.level, "u": u, "v": v},
                f"u={u} v={v}",
            )

    elif args.cmd == "run":
        check_bits(args.input)
        budget = ExecBudget(args.steps, args.tape)
        if args.trace:
            machine = enumerate_machine(args.machine)
            if machine.kind != "table":
                raise DecodeError(
                    f"--trace requires a table machine; index {args.machine} is the "
                    f"builtin '{machine.name}'"
                )
            for entry in iter_table_trace(machine.table, args.input, budget):
                emit.line(entry, json.dumps(entry))
        out = run(args.machine, args.input, budget)
        emit.line(
            {
                "cmd": "run",
                "machine": args.machine,
                "input": args.input,
                "halted": out.halted,
                "output": out.output,
                "steps": out.steps,
            },
            f"halted output={out.output} steps={out.steps}"
            if out.halted
            else f"still-running steps={out.steps}",
        )

    elif args.cmd == "sweep":
        emit.header(f"sweep horizon={args.horizon}")
        for ev in sweep(args.horizon, args.tape):
            emit.line(
                {"program": ev.program, "output": ev.output, "steps": ev.steps},
                f"{ev.program} -> {ev.output} [{ev.steps} steps]",
            )

    elif args.cmd == "k":
        target = check_bits(args.target)
        if args.cond is not None:
            got = estimate_k_given(target, check_bits(args.cond), args.horizon, args.tape)
            payload = _bound_payload(got, "conditional")
            payload["given"] = args.cond
        elif args.pair is not None:
            got = estimate_k_pair(target, check_bits(args.pair), args.horizon, args.tape)
            payload = _bound_payload(got, "pair")
            payload["second"] = args.pair
        elif args.info is not None:
            other = check_bits(args.info)
            k_t = estimate_k(target, args.horizon, args.tape)
            k_t_given = estimate_k_given(target, other, args.horizon, args.tape)
            info = info_estimate(other, target, args.horizon, args.tape)
            payload = _bound_payload(k_t, "plain")
            payload["cond_bound"] = None if k_t_given is None else k_t_given.bound
            payload["info"] = info  # difference of two upper bounds, not a bound
            payload["given"] = other
        else:
            got = estimate_k(target, args.horizon, args.tape)
            payload = _bound_payload(got, "plain")
        payload["target"] = target
        if payload.get("found"):
            human = f"bound={payload['bound']} witness={payload['witness']} horizon={args.horizon}"
            if "info" in payload:
                human += f" cond_bound={payload['cond_bound']} info={payload['info']}"
        else:
            human = f"not found at horizon {args.horizon}"
        emit.line(payload, human)

    elif args.cmd == "h":
        got = estimate_h(check_bits(args.target), args.horizon, args.tape)
        payload = _bound_payload(got, "prefix")
        payload["target"] = args.target
        emit.line(
            payload,
            f"bound={payload['bound']} witness={payload['witness']}"
            if payload["found"]
            else f"not found at horizon {args.horizon}",
        )

    elif args.cmd == "omega":
        got = omega_estimate(args.horizon, args.tape)
        payload = {
            "cmd": "omega",
            "horizon": got.horizon,
            **_frac_fields(got.value, "value"),
            "contributing": got.contributing,
            "digits_at_horizon": dyadic_digits(got.value, args.digits),
            "note": "lower bound; digits are stable only relative to this horizon",
        }
        emit.line(
            payload,
            f"omega >= {got.value} ({got.contributing} programs, horizon {got.horizon}); "
            f"digits at this horizon: 0.{payload['digits_at_horizon']}",
        )

    elif args.cmd == "census":
        rep = census(args.n, args.c, args.horizon, prefix=args.prefix, max_cells=args.tape)
        emit.line(
            {
                "cmd": "census",
                "n": rep.n,
                "c": rep.c,
                "horizon": rep.horizon,
                "flagged": rep.flagged,
                "total": rep.total,
                "prefix": rep.prefix,
            },
            f"{rep.flagged}/{rep.total} strings of length {rep.n} have a witness "
            f"shorter than {rep.n - rep.c} (horizon {rep.horizon})",
        )

    elif args.cmd == "deficiency":
        source = source_from_spec(args.source)
        values = deficiency_profile(source, args.n_max, args.horizon, args.tape)
        emit.header(f"deficiency source={source.name} horizon={args.horizon}")
        for n, v in enumerate(values, start=1):
            emit.line(
                {"n": n, "deficiency": v},
                f"n={n} deficiency={'unknown' if v is None else v}",
            )

    elif args.cmd == "random":
        source = source_from_spec(args.source)
        if args.random_cmd == "freq":
            ones, ratio = frequency_stats(source, args.n)
            emit.line(
                {
                    "cmd": "freq",
                    "source": source.name,
                    "n": args.n,
                    "ones": ones,
                    "ratio_num": ratio.numerator,
                    "ratio_den": ratio.denominator,
                },
                f"ones={ones}/{args.n} ratio={ratio}",
            )
        elif args.random_cmd == "select":
            rule = rule_from_spec(args.rule)
            sub_seq = select_subsequence(rule, source, args.n)
            emit.line(
                {
                    "cmd": "select",
                    "source": source.name,
                    "rule": rule.name,
                    "n": args.n,
                    "selected": sub_seq,
                    "count": len(sub_seq),
                },
                sub_seq,
            )
        elif args.random_cmd == "lil":
            s_star, ratio = lil_statistic(source, args.n)
            emit.line(
                {
                    "cmd": "lil",
                    "source": source.name,
                    "n": args.n,
                    "s_star": s_star,
                    "ratio": ratio,
                    "log_convention": "natural",
                },
                f"s_star={s_star:.6f} ratio={ratio:.6f} (natural log)",
            )
        else:  # mltest
            test = FiniteMLTest.load(args.test)
            for v in ml_test_eval(test, source, args.n):
                emit.line(
                    {
                        "cmd": "mltest",
                        "source": source.name,
                        "level": v.level,
                        "status": v.status,
                        "witness": v.witness,
                    },
                    f"level {v.level}: {v.status}"
                    + (f" (witness {v.witness})" if v.witness else ""),
                )

    elif args.cmd == "tm":
        if args.tm_cmd == "palindrome":
            check_bits(args.input)
            tr = run_palindrome_tm(args.input)
            if args.trace:
                for c in crossing_sequences(tr):
                    emit.line(
                        {"boundary": c.cell, "crossings": list(c.states)},
                        f"boundary {c.cell}: {list(c.states)}",
                    )
            emit.line(
                {
                    "cmd": "tm-palindrome",
                    "input": args.input,
                    "accepted": tr.accepted,
                    "steps": tr.steps,
                },
                f"{'accepted' if tr.accepted else 'rejected'} in {tr.steps} steps",
            )
        else:  # quadratic
            n_values = [int(s) for s in args.n.split(",") if s]
            seed = 0 if args.seed is None else args.seed
            rep = quadratic_report(n_values, args.trials, seed)
            if args.csv:
                print("n,mean_steps")
                for n, m in zip(rep.n_values, rep.mean_steps):
                    print(f"{n},{m}")
            else:
                emit.line(
                    {
                        "cmd": "tm-quadratic",
                        "n_values": list(rep.n_values),
                        "mean_steps": list(rep.mean_steps),
                        "doubling_ratios": list(rep.doubling_ratios),
                        "slope": rep.slope,
                        "trials": args.trials,
                        "seed": seed,
                    },
                    f"means={list(rep.mean_steps)} ratios="
                    f"{[round(r, 3) for r in rep.doubling_ratios]} slope="
                    f"{rep.slope if rep.slope is None else round(rep.slope, 3)}",
                )

    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    _merge_common_flags(args)
    try:
        doc_label, _doc = resolve_machine_doc(args.machine_doc)
        config = {
            "max_cells": args.tape,
            "machine_doc": doc_label,
            "seed": args.seed,
            "backend": engine.BACKEND,
        }
        return _dispatch(args, Emitter(args, config))
    except ResourceRefusal as e:
        print(f"refused: {e}", file=sys.stderr)
        return REFUSAL
    except (DecodeError, ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
