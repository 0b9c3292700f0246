"""Batch command line front end.

Every subcommand reads JSON, runs one library operation and writes a JSON
artifact (stdout or ``--out``).  Exit status: 0 decisive result, 1 input
error, 2 budget exhausted.
"""

import argparse
import signal
import sys
from fractions import Fraction

from .divisors import Nef, canonical_divisor, cartier_index, is_nef_canonical
from .field import FieldError
from .fileio import (InputError, divisor_to_json, dump_json, hints_for, load_json,
                     morphism_from_json, morphism_to_json, oracle_from_json, variety_from_json,
                     variety_to_json)
from .geometry import GeometryError, segre_product
from .groebner import BudgetExceeded
from .mmp import (BettiOracle, OracleMissing, PartialTrace, find_contraction, flip, morphism_degree,
                  run_mmp, stein_factorization)
from .poly import ParseError, RingError

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


class Timeout(BudgetExceeded):
    pass


def _num(v):
    if isinstance(v, Fraction):
        return str(v) if v.denominator != 1 else int(v)
    return v


def _hilbert_values(X, n=6):
    H = X.hilbert_series()
    return [H(i) for i in range(n)]


# ---------------------------------------------------------------- subcommands

def cmd_check(args):
    X = variety_from_json(load_json(args.input))
    return {
        "command": "check",
        "variety": variety_to_json(X),
        "dim": X.dim(),
        "degree": _num(X.degree()),
        "hilbert_function": _hilbert_values(X),
        "status": "ok",
    }


def cmd_segre(args):
    Y = variety_from_json(load_json(args.input))
    X = variety_from_json(load_json(args.second))
    seg = segre_product(Y, X)
    V = seg.variety()
    return {
        "command": "segre",
        "hilbert_basis": [[list(b), list(a)] for b, a in seg.basis],
        "ring": seg.zring.descriptor(),
        "ideal": [str(g) for g in seg.kernel.gens],
        "hilbert_function": _hilbert_values(V),
    }


def cmd_stein(args):
    f = morphism_from_json(load_json(args.input))
    st = stein_factorization(f, fast=not args.no_fast_path)
    return {
        "command": "stein",
        "path": st.path,
        "Z": variety_to_json(st.Z),
        "g": morphism_to_json(st.g),
        "h": morphism_to_json(st.h),
        "degree_g": morphism_degree(st.g),
        "gamma": None if st.gamma is None else str(st.gamma),
        "components": None if st.components is None else len(st.components),
    }


def cmd_canonical(args):
    X = variety_from_json(load_json(args.input))
    cd = canonical_divisor(X)
    K = cd.module
    return {
        "command": "canonical",
        "module": {"ideal": [str(g) for g in K.ideal.gens], "shift": K.shift},
        "divisor": divisor_to_json(cd.divisor),
        "cartier_index": cartier_index(K, args.index_budget),
    }


def cmd_nef(args):
    X = variety_from_json(load_json(args.input))
    hs = hints_for(X, load_json(args.hints) if args.hints else None)
    res = is_nef_canonical(X, budget=args.budget_curves, hints=hs["curves"])
    out = {"command": "nef", "variety": X.label}
    if isinstance(res, Nef):
        out.update({"result": "Nef", "power": res.power, "index": res.index})
    else:
        out.update({"result": "NotNef", "witness_curve": [str(g) for g in res.curve.gens],
                    "K_dot_C": _num(res.value)})
    return out


def _oracle(args):
    if not args.betti_oracle:
        return BettiOracle({}, args.oracle_policy or "fail")
    return oracle_from_json(load_json(args.betti_oracle), args.oracle_policy)


def cmd_contract(args):
    X = variety_from_json(load_json(args.input))
    hs = hints_for(X, load_json(args.hints) if args.hints else None)
    h, cert, D = find_contraction(X, _oracle(args), args.budget_divisors, hs["divisors"],
                                  window=args.cohomology_cap)
    return {
        "command": "contract",
        "divisor": divisor_to_json(D),
        "morphism": morphism_to_json(h),
        "certificate": cert.to_json(),
    }


def cmd_flip(args):
    X = variety_from_json(load_json(args.input))
    fr = flip(X, e_max=args.flip_max_e)
    W = fr.morphism
    return {
        "command": "flip",
        "m": fr.m,
        "rees_generators": [str(g) for g in fr.rees.gens],
        "Z": {"ring": W.ring.descriptor(), "ideal": [str(g) for g in W.ideal.gens]},
        "exceptional_codim": fr.exc_codim,
        "flipped_curve": None if fr.curve is None else [str(g) for g in fr.curve.gens],
        "K_dot_C": _num(fr.value),
    }


def cmd_mmp(args):
    X = variety_from_json(load_json(args.input))
    data = load_json(args.hints) if args.hints else None
    seq = run_mmp(X, _oracle(args), hints=lambda V: hints_for(V, data),
                  divisor_budget=args.budget_divisors, curve_budget=args.budget_curves,
                  e_max=args.flip_max_e, window=args.cohomology_cap)
    out = {"command": "mmp"}
    out.update(seq.to_json())
    return out


def render_trace(trace):
    """One line per step; the last line carries the terminal status."""
    if not isinstance(trace, dict) or "steps" not in trace or "terminal" not in trace:
        raise InputError("trace: expected an object with 'steps' and 'terminal'")
    steps = trace["steps"]
    if not steps:
        return f"0 steps; terminal: {trace['terminal']}\n"
    lines = []
    for k, s in enumerate(steps, 1):
        cert = s.get("certificate") or {}
        digest = ""
        if cert:
            digest = f" [K.C={cert.get('K_dot_C')}, exc codim {cert.get('exceptional_codim')}]"
        lines.append(f"{k}. {s['kind']}: {s['source']} -> {s['target']}{digest}")
    lines[-1] += f"; terminal: {trace['terminal']}"
    return "\n".join(lines) + "\n"


def cmd_render(args):
    return render_trace(load_json(args.input))


COMMANDS = {
    "check": cmd_check,
    "segre": cmd_segre,
    "stein": cmd_stein,
    "canonical": cmd_canonical,
    "nef": cmd_nef,
    "contract": cmd_contract,
    "flip": cmd_flip,
    "mmp": cmd_mmp,
    "render": cmd_render,
}


def _positive(text):
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-divisors", type=_positive, default=10)
    common.add_argument("--budget-curves", type=_positive, default=20)
    common.add_argument("--flip-max-e", type=_positive, default=5)
    common.add_argument("--cohomology-cap", type=_positive, default=3,
                        help="width of the Leray window for higher direct images")
    common.add_argument("--index-budget", type=_positive, default=6)
    common.add_argument("--timeout", type=_positive, default=0, help="seconds, 0 = unlimited")
    common.add_argument("--betti-oracle")
    common.add_argument("--oracle-policy", choices=["fail", "assume"])
    common.add_argument("--hints")
    common.add_argument("--jobs", type=_positive, default=1)
    common.add_argument("--out")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="algmmp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("input")
        if name == "segre":
            sp.add_argument("second")
        if name == "stein":
            sp.add_argument("--no-fast-path", action="store_true")
    return p


def _on_alarm(signum, frame):
    raise Timeout("wall-clock timeout")


def _emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.timeout:
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.alarm(args.timeout)
    try:
        res = COMMANDS[args.command](args)
    except PartialTrace as exc:
        out = {"command": args.command, "error": "BudgetExceeded", "message": str(exc)}
        out.update(exc.trace.to_json())
        _emit(dump_json(out), args.out)
        return EXIT_BUDGET
    except BudgetExceeded as exc:
        _emit(dump_json({"command": args.command, "error": type(exc).__name__,
                         "message": str(exc)}), args.out)
        return EXIT_BUDGET
    except (InputError, GeometryError, ParseError, RingError, FieldError, OracleMissing,
            KeyError, TypeError, ValueError) as exc:
        sys.stderr.write(f"algmmp {args.command}: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT
    finally:
        if args.timeout:
            signal.alarm(0)
    if isinstance(res, str):
        _emit(res, args.out)
    else:
        res["config"] = {
            "budget_divisors": args.budget_divisors,
            "budget_curves": args.budget_curves,
            "flip_max_e": args.flip_max_e,
            "jobs": args.jobs,
        }
        _emit(dump_json(res), args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
