"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 decode inconsistency
(including a graph that is not a codeword), 3 self-test failure.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import bench as bench_mod
from .double import MIN_DECODE_N, decode_double
from .erasure import decode_erasures
from .errors import GraphCodeError, InconsistentInputError, UndecodablePatternError
from .graph import (
    Code,
    CodeSpec,
    ErasedGraph,
    LabeledGraph,
    format_graph,
    parse_graph,
    syndrome,
)
from .matrix import build_parity_check, encode, gf2_rank, systematic_form
from .oracle import DEFAULT_MAX_DIM, DEFAULT_SEED, min_distance, verify_all_patterns
from .ring import RingPoly, is_irreducible, is_two_primitive, m_n, poly_gcd, x_n_minus_1

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_INCONSISTENT = 2
EXIT_SELFTEST = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _emit(kv: dict[str, object], block: Sequence[str] = ()) -> None:
    for k, v in kv.items():
        if isinstance(v, bool):
            v = "yes" if v else "no"
        print(f"{k}={v}")
    if block:
        print()
        for line in block:
            print(line)


def _spec(args: argparse.Namespace) -> CodeSpec:
    return CodeSpec(args.n, Code(args.code))


def _int_list(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(tok) for tok in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}") from None


def _parse_info(text: str, k: int) -> list[int]:
    """``0x...`` reads a hex integer (bit t = symbol t); otherwise a 0/1 string."""
    text = text.strip()
    if text.lower().startswith("0x"):
        try:
            value = int(text, 16)
        except ValueError:
            raise UsageError(f"bad hex information word {text!r}") from None
        if value >> k:
            raise UsageError(f"hex information word needs more than k={k} bits")
        return [(value >> t) & 1 for t in range(k)]
    if set(text) - {"0", "1"}:
        raise UsageError("information word must be a 0/1 string or 0x-prefixed hex")
    if len(text) != k:
        raise UsageError(f"information word has {len(text)} bits, code dimension is k={k}")
    return [int(ch) for ch in text]


def _read_graph(path: str) -> tuple[LabeledGraph, CodeSpec]:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="ascii")
    return parse_graph(text)


def _write_graph(path: Optional[str], g: LabeledGraph, spec: CodeSpec) -> None:
    text = format_graph(g, spec)
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="ascii")


def _check_failures(spec: CodeSpec, fail: list[int]) -> frozenset[int]:
    failed = frozenset(fail)
    if len(failed) != len(fail):
        raise UsageError("failure list has repeated nodes")
    bad = [v for v in failed if not 0 <= v < spec.n]
    if bad:
        raise UsageError(f"failed nodes {sorted(bad)} out of range for n={spec.n}")
    if len(failed) > spec.rho:
        raise UsageError(f"code {spec.code.value} corrects at most {spec.rho} failures, got {len(failed)}")
    return failed


def _verdict(rank: int, bound: int) -> str:
    if rank == bound:
        return "optimal"
    if rank == bound + 1:
        return "one bit from optimal"
    if rank < bound:
        return "below the Singleton bound (not rho-correcting)"
    return f"{rank - bound} bits from optimal"


# --- commands -----------------------------------------------------------------


def cmd_params(args: argparse.Namespace) -> int:
    spec = _spec(args)
    rank = gf2_rank(build_parity_check(spec))
    bound = spec.singleton_bound
    verdict = _verdict(rank, bound)
    _emit(
        {
            "n": spec.n,
            "code": spec.code.value,
            "rho": spec.rho,
            "edges": spec.num_edges,
            "constraints": spec.num_constraints,
            "rank": rank,
            "dimension": spec.num_edges - rank,
            "redundancy": rank,
            "singleton": bound,
            "verdict": verdict,
        },
        [f"{spec}: redundancy {rank} against Singleton bound {bound} for {spec.rho} node failures: {verdict}"],
    )
    return EXIT_OK


def cmd_encode(args: argparse.Namespace) -> int:
    spec = _spec(args)
    form = systematic_form(spec)
    if args.info is not None:
        info = _parse_info(args.info, form.k)
    else:
        rng = random.Random(args.seed)
        info = [rng.getrandbits(1) for _ in range(form.k)]
    _write_graph(args.out, encode(form, info), spec)
    return EXIT_OK


def cmd_erase(args: argparse.Namespace) -> int:
    g, spec = _read_graph(args.input)
    failed = _check_failures(spec, args.fail)
    _write_graph(args.out, ErasedGraph.erase(g, failed).graph, spec)
    return EXIT_OK


def _pick_decoder(choice: str, spec: CodeSpec, failed: frozenset[int]) -> Callable:
    if choice == "double" or (choice == "auto" and len(failed) <= 2 and spec.n >= MIN_DECODE_N):
        return decode_double
    return decode_erasures


def cmd_decode(args: argparse.Namespace) -> int:
    g, spec = _read_graph(args.input)
    failed = _check_failures(spec, args.fail)
    decoder = _pick_decoder(args.decoder, spec, failed)
    try:
        out = decoder(ErasedGraph(g, failed), spec)
    except (InconsistentInputError, UndecodablePatternError) as exc:
        print(f"decode failed: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    _write_graph(args.out, out, spec)
    return EXIT_OK


def _constraint_names(spec: CodeSpec) -> list[str]:
    names = [f"S_{h}" for h in range(spec.n)] + [f"D_{m}" for m in range(spec.n)]
    if spec.code is Code.C3:
        names += [f"T_{s}" for s in range(spec.n)]
    return names


def cmd_check(args: argparse.Namespace) -> int:
    g, spec = _read_graph(args.input)
    syn = syndrome(g, spec)
    violated = [name for name, bit in zip(_constraint_names(spec), syn) if bit]
    ok = not violated
    _emit(
        {"n": spec.n, "code": spec.code.value, "codeword": ok, "violated": ",".join(violated) or "none"},
        [f"codeword: {'yes' if ok else 'no'}"],
    )
    return EXIT_OK if ok else EXIT_INCONSISTENT


def cmd_rank(args: argparse.Namespace) -> int:
    spec = _spec(args)
    H = build_parity_check(spec)
    n = spec.n

    def xor_rows(lo: int) -> int:
        acc = 0
        for row in H.rows[lo : lo + n]:
            acc ^= row
        return acc

    kv: dict[str, object] = {
        "n": n,
        "code": spec.code.value,
        "rows": H.nrows,
        "cols": H.ncols,
        "rank": gf2_rank(H),
        "xor_S_rows_zero": xor_rows(0) == 0,
        "xor_D_rows_zero": xor_rows(n) == 0,
    }
    if spec.code is Code.C3:
        kv["xor_T_rows_zero"] = xor_rows(2 * n) == 0
    _emit(kv, [f"{spec}: parity-check matrix {H.nrows}x{H.ncols} has GF(2) rank {kv['rank']}"])
    return EXIT_OK


def cmd_mindist(args: argparse.Namespace) -> int:
    spec = _spec(args)
    report = min_distance(spec, max_dim=args.max_dim)
    block = [
        f"{spec}: minimum distance {report.min_distance} over {report.codewords} nonzero codewords",
        "witness:",
        *format_graph(report.witness, spec).splitlines(),
    ]
    _emit(report.key_values(), block)
    return EXIT_OK


def _ring_checks(n: int) -> list[str]:
    problems = []
    mn = m_n(n)
    if mn * RingPoly(n, 0b11):
        problems.append("M_n(x)(x+1) != 0")
    for l in range(1, n):
        xl1 = (1 << l) | 1
        if poly_gcd(xl1, x_n_minus_1(n)) != 0b11:
            problems.append(f"gcd(x^{l}+1, x^n-1) != x+1")
        if poly_gcd(xl1, mn) != 1:
            problems.append(f"gcd(x^{l}+1, M_n) != 1")
    if is_two_primitive(n) and not is_irreducible(mn.bits):
        problems.append("M_n reducible although 2 is primitive")
    return problems


def _corrupting(decoder: Callable) -> Callable:
    """Wrap ``decoder`` so its first output has edge 0 flipped."""
    state = {"armed": True}

    def corrupted(eg: ErasedGraph, spec: CodeSpec) -> LabeledGraph:
        out = decoder(eg, spec)
        if state["armed"]:
            state["armed"] = False
            flipped = bytearray(out.labels)
            flipped[0] ^= 1
            out = LabeledGraph(out.n, bytes(flipped))
        return out

    corrupted.__name__ = f"{decoder.__name__}+fault"
    return corrupted


def _sweep_line(rep) -> str:
    text = (
        f"sweep {rep.spec.code.value} n={rep.spec.n} rho={rep.rho} [{rep.decoder}]: "
        f"{rep.checked - rep.failures}/{rep.checked} restored"
    )
    if rep.first_failure:
        text += f", first failure {rep.first_failure}"
    return text


def cmd_selftest(args: argparse.Namespace) -> int:
    lines: list[str] = []
    failures = 0

    def record(ok: bool, text: str) -> None:
        nonlocal failures
        failures += not ok
        lines.append(f"{'PASS' if ok else 'FAIL'} {text}")

    for n in args.n:
        spec2 = CodeSpec(n)
        problems = _ring_checks(n)
        record(not problems, f"ring identities n={n}" + (f": {'; '.join(problems)}" if problems else ""))
        rank2 = gf2_rank(build_parity_check(spec2))
        record(rank2 == 2 * n - 1, f"rank c2 n={n}: {rank2} (expected {2 * n - 1})")
        if n >= MIN_DECODE_N:
            double = _corrupting(decode_double) if args.inject_fault else decode_double
            rep = verify_all_patterns(spec2, args.trials, 2, seed=args.seed, decoder=double)
            record(rep.ok, _sweep_line(rep))
        rep = verify_all_patterns(spec2, args.trials, 2, seed=args.seed, decoder=decode_erasures)
        record(rep.ok, _sweep_line(rep))
        if n >= 5 and is_two_primitive(n):
            spec3 = CodeSpec(n, Code.C3)
            rank3 = gf2_rank(build_parity_check(spec3))
            record(rank3 in (3 * n - 3, 3 * n - 2), f"rank c3 n={n}: {rank3} (bound {3 * n - 2})")
            rep = verify_all_patterns(spec3, args.trials, 3, seed=args.seed)
            record(rep.ok, _sweep_line(rep))
        else:
            lines.append(f"SKIP c3 n={n}: 2 not primitive mod {n}")
    checks = sum(1 for line in lines if not line.startswith("SKIP"))
    summary = {"sizes": ",".join(map(str, args.n)), "trials": args.trials, "checks": checks, "failures": failures}
    _emit(summary, lines)
    return EXIT_OK if failures == 0 else EXIT_SELFTEST


def cmd_bench(args: argparse.Namespace) -> int:
    timings = [bench_mod.time_decode(n, repeats=args.repeats, seed=args.seed) for n in args.sizes]
    slope = bench_mod.scaling_exponent(timings) if len(timings) >= 2 else float("nan")
    block = [f"{'n':>6}  {'seconds':>12}"]
    block += [f"{t.n:>6}  {t.seconds:>12.6f}" for t in timings]
    block.append(f"observed scaling exponent {slope:.3f} (quadratic target 2)")
    _emit({"sizes": ",".join(map(str, args.sizes)), "exponent": f"{slope:.3f}"}, block)
    return EXIT_OK


# --- wiring -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="graphcodes", description="Node-erasure codes over complete graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def code_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--n", type=int, required=True, help="number of nodes (prime)")
        sp.add_argument("--code", choices=[c.value for c in Code], default="c2")

    sp = sub.add_parser("params", help="redundancy and optimality report")
    code_args(sp)
    sp.set_defaults(func=cmd_params)

    sp = sub.add_parser("encode", help="systematically encode an information word")
    code_args(sp)
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--info", help="0/1 string of length k, or 0x-prefixed hex")
    src.add_argument("--random", action="store_true", help="random information word from --seed")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_encode)

    for name, func, helptext in (
        ("erase", cmd_erase, "zero the neighborhoods of failed nodes"),
        ("decode", cmd_decode, "restore failed nodes"),
    ):
        sp = sub.add_parser(name, help=helptext)
        sp.add_argument("--in", dest="input", required=True)
        sp.add_argument("--fail", type=_int_list, default=[], help="comma-separated failed nodes")
        sp.add_argument("--out")
        if name == "decode":
            sp.add_argument("--decoder", choices=["auto", "double", "generic"], default="auto")
        sp.set_defaults(func=func)

    sp = sub.add_parser("check", help="test codeword membership")
    sp.add_argument("--in", dest="input", required=True)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("rank", help="parity-check rank and row dependencies")
    code_args(sp)
    sp.set_defaults(func=cmd_rank)

    sp = sub.add_parser("mindist", help="exact minimum distance by enumeration")
    code_args(sp)
    sp.add_argument("--max-dim", type=int, default=DEFAULT_MAX_DIM)
    sp.set_defaults(func=cmd_mindist)

    sp = sub.add_parser("selftest", help="run the oracle suites")
    sp.add_argument("--n", type=_int_list, default=[5, 7, 11, 13])
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--inject-fault", action="store_true", help="corrupt one decoded bit to exercise detection")
    sp.set_defaults(func=cmd_selftest)

    sp = sub.add_parser("bench", help="time decode_double and fit the scaling exponent")
    sp.add_argument("--sizes", type=_int_list, default=[101, 211, 401])
    sp.add_argument("--repeats", type=int, default=5)
    sp.add_argument("--seed", type=int, default=7)
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GraphCodeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
