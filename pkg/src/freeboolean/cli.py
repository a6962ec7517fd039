"""Command-line interface: ``freeboolean <subcommand> ...``.

Every numeric result is printed exactly (``p/q`` strings, Gaussian rationals
as ``a+bi``); ``--decimal`` appends a clearly marked decimal approximation.
JSON arguments accept either inline JSON or a file path. The exit status of
``verify`` is 0 exactly when the report has no failures.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import io
from .cumulants import (
    CumulantTable,
    MomentSpec,
    convolve_distributions,
    kappa,
    moments_from_cumulants,
    moments_spec_from_cumulants,
)
from .fock import fock_from_json
from .inc import enumerate_inc
from .incidence import moebius_inc
from .operators import OperatorModel
from .partitions import ColorMap, Partition, inner_blocks
from .scalars import format_decimal, format_scalar
from .verification import SUITES, run_suite, verify_spec

__all__ = ["main", "build_parser"]


def _scalar_out(x, args) -> str:
    s = format_scalar(x)
    if getattr(args, "decimal", False):
        s += f"  (decimal approximation: {format_decimal(x)})"
    return s


def _emit(text: str, args) -> None:
    out = getattr(args, "output", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _colors(value: str) -> ColorMap:
    return ColorMap(value.strip())


def _partition(value: str, n: int) -> Partition:
    data = io.load_arg(value)
    return Partition(data, range(1, n + 1))


def _blocks_text(p: Partition) -> str:
    return " ".join("{" + ",".join(map(str, b)) + "}" for b in p.blocks)


# -- subcommands ---------------------------------------------------------------


def cmd_enumerate(args) -> int:
    chi = _colors(args.chi)
    n = args.n if args.n is not None else chi.n
    if chi.n != n:
        raise ValueError(f"--chi has length {chi.n} but --n is {n}")
    parts = enumerate_inc(chi)
    if args.format == "json":
        rows = []
        for p in parts:
            row = {"blocks": p.to_json()}
            if args.stats:
                inner = set(inner_blocks(p))
                row["inner"] = len(inner)
                row["outer"] = len(p.blocks) - len(inner)
            rows.append(row)
        _emit(io.dumps({"chi": chi.colors, "n": n, "count": len(parts), "partitions": rows}), args)
        return 0
    lines = []
    tot_in = tot_out = 0
    for p in parts:
        line = _blocks_text(p)
        if args.stats:
            k = len(inner_blocks(p))
            tot_in += k
            tot_out += len(p.blocks) - k
            line += f"\tinner={k} outer={len(p.blocks) - k}"
        lines.append(line)
    lines.append(f"count={len(parts)}")
    if args.stats:
        lines.append(f"inner_total={tot_in} outer_total={tot_out}")
    _emit("\n".join(lines) + "\n", args)
    return 0


def cmd_moebius(args) -> int:
    chi = _colors(args.chi)
    sigma = _partition(args.sigma, chi.n)
    pi = _partition(args.pi, chi.n)
    _emit(_scalar_out(moebius_inc(sigma, pi, chi), args) + "\n", args)
    return 0


def _word(table, text: str):
    return table.word(text)


def cmd_cumulant(args) -> int:
    spec = MomentSpec.from_json(io.load_arg(args.spec))
    if args.all:
        _emit(io.dumps(CumulantTable.from_moments(spec).to_json()), args)
        return 0
    w = _word(spec, args.word)
    p = _partition(args.partition, len(w)) if args.partition else None
    _emit(_scalar_out(kappa(spec, w, p), args) + "\n", args)
    return 0


def cmd_moments(args) -> int:
    table = CumulantTable.from_json(io.load_arg(args.cumulants))
    if args.all:
        _emit(io.dumps(moments_spec_from_cumulants(table).to_json()), args)
        return 0
    _emit(_scalar_out(moments_from_cumulants(table, _word(table, args.word)), args) + "\n", args)
    return 0


def cmd_convolve(args) -> int:
    a = MomentSpec.from_json(io.load_arg(args.a))
    b = MomentSpec.from_json(io.load_arg(args.b))
    _emit(_scalar_out(convolve_distributions(a, b, a.word(args.word)), args) + "\n", args)
    return 0


def cmd_model_moment(args) -> int:
    if args.fock:
        model = fock_from_json(io.load_arg(args.fock), args.depth).model
    else:
        data = io.load_arg(args.model)
        if args.depth is not None:
            data = dict(data, depth=args.depth)
        model = OperatorModel.from_json(data)
    key = tuple(args.word.split())
    for v in key:
        if v not in model.letters:
            raise ValueError(f"unknown variable {v!r}; known: {', '.join(model.letters)}")
    _emit(_scalar_out(model.moment(key), args) + "\n", args)
    return 0


def cmd_verify(args) -> int:
    if args.spec:
        rep = verify_spec(MomentSpec.from_json(io.load_arg(args.spec)), args.nmax, args.seed)
    else:
        rep = run_suite(args.suite, args.nmax, args.seed)
    if args.format == "json":
        _emit(io.dumps(rep.to_json()), args)
    else:
        _emit(rep.render() + "\n", args)
    return 0 if rep.ok else 1


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="freeboolean",
        description="Exact free-Boolean combinatorics, cumulants and operator-model checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=False):
        p.add_argument("--decimal", action="store_true",
                       help="also print a marked decimal approximation")
        p.add_argument("--output", "-o", help="write the result to this file")
        if fmt:
            p.add_argument("--format", choices=("table", "json"), default="table")

    p = sub.add_parser("enumerate", help="list INC(chi)")
    p.add_argument("--n", type=int, help="length (defaults to the length of --chi)")
    p.add_argument("--chi", required=True, help="color string over b/w (or •/∘)")
    p.add_argument("--stats", action="store_true", help="add inner/outer block tallies")
    common(p, fmt=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("moebius", help="Möbius function of INC(chi) on sigma <= pi")
    p.add_argument("--chi", required=True)
    p.add_argument("--sigma", required=True, help="blocks as JSON, e.g. [[1],[2,3]]")
    p.add_argument("--pi", required=True, help="blocks as JSON")
    common(p)
    p.set_defaults(func=cmd_moebius)

    p = sub.add_parser("cumulant", help="free-Boolean cumulant of a word from a moment spec")
    p.add_argument("--spec", required=True, help="moment spec JSON (inline or file)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--word", help="space-separated variable ids")
    g.add_argument("--all", action="store_true", help="cumulant table of every tabulated word")
    p.add_argument("--partition", help="blocks as JSON; default is the one-block partition")
    common(p)
    p.set_defaults(func=cmd_cumulant)

    p = sub.add_parser("moments", help="moments from a cumulant table")
    p.add_argument("--cumulants", required=True, help="cumulant table JSON (inline or file)")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--word")
    g.add_argument("--all", action="store_true", help="moment spec of every tabulated word")
    common(p)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("convolve", help="moment of a word under the additive convolution")
    p.add_argument("--a", required=True, help="first moment spec")
    p.add_argument("--b", required=True, help="second moment spec")
    p.add_argument("--word", required=True)
    common(p)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("model-moment", help="vacuum moment of a word in an operator model")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--model", help="reduced-product model JSON")
    g.add_argument("--fock", help="Fock central-limit data JSON")
    p.add_argument("--word", required=True)
    p.add_argument("--depth", type=int, help="override the truncation depth")
    common(p)
    p.set_defaults(func=cmd_model_moment)

    p = sub.add_parser("verify", help="run a verification suite or check a moment spec")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--suite", choices=sorted(SUITES))
    g.add_argument("--spec", help="moment spec JSON to check for free-Boolean independence")
    p.add_argument("--nmax", type=int)
    p.add_argument("--seed", type=int)
    common(p, fmt=True)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
