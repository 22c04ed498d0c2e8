"""Command-line front door.

Every operation is a subcommand with machine-readable output: numeric
tables as CSV behind '#' header comments carrying version, group, seed
and budgets; verifications exit 0 when VALID, 2 when a check fails, 1 on
usage or engine errors. Output contains no timestamps, so identical
commands produce byte-identical results.
"""

from __future__ import annotations

import argparse
import sys

from . import __version__
from .backends import FreeAbelianBackend, GroupBackend, ModVectorBackend, TreeBackend
from .certificates import (
    CertificateError,
    build_certificate,
    parse_certificate,
    serialize_certificate,
    verify_certificate,
)
from .growth import GrowthError, growth_report
from .grpfile import GrpParseError, LoweredExplicit, LoweredFamily, parse as parse_grp, validate_and_lower
from .omega import CLASSICAL_OMEGA, OmegaSequence
from .prp import PrpError, ball, ball_to_dot, components_finite
from .randomwalk import rw_speed
from .schreier import SchreierError, schreier, spanning_walk
from .witnesses import NoWitnessError, check_ad_order, relabel_for_d, verify_classical, verify_general
from .words import WordError, word

USAGE_ERROR = 1
VERIFY_FAIL = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit 2; usage errors are 1 here
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_ERROR)


class CliError(Exception):
    pass


def _omega_from_args(args) -> OmegaSequence:
    if getattr(args, "grp", None):
        spec = parse_grp(open(args.grp, encoding="utf-8").read())
        name = getattr(args, "group", None)
        if not name:
            raise CliError("--grp needs --group NAME to pick a declaration")
        lowered = validate_and_lower(spec)
        if name not in lowered:
            raise CliError(f"group {name!r} not declared in {args.grp}")
        target = lowered[name]
        if isinstance(target, LoweredExplicit):
            raise CliError(f"group {name!r} is an explicit recursion; this command needs a family group")
        return target.omega
    prefix = getattr(args, "prefix", "") or ""
    cycle = getattr(args, "omega", None)
    if cycle:
        return OmegaSequence(prefix, cycle)
    return CLASSICAL_OMEGA


def _header(args, group: str, extra: str = "") -> list[str]:
    seed = getattr(args, "seed", 0)
    budget = getattr(args, "budget", None)
    parts = [f"# prplab={__version__}", f"# group={group} seed={seed}"]
    if budget is not None or extra:
        bits = []
        if budget is not None:
            bits.append(f"budget={budget}")
        if extra:
            bits.append(extra)
        parts.append("# " + " ".join(bits))
    return parts


def _emit(lines) -> None:
    for ln in lines:
        print(ln)


def _tree_backend_entries(args, omega: OmegaSequence) -> tuple:
    start = getattr(args, "start", None) or "a;b;c;d"
    return tuple(word(omega, w.strip()) for w in start.split(";"))


def _finite_backend(args) -> GroupBackend:
    name = args.group
    if name == "zd":
        return FreeAbelianBackend(args.d)
    if name == "zpn":
        return ModVectorBackend(args.p, args.n)
    if name == "z2k":
        return ModVectorBackend(2, args.k)
    raise CliError(f"unknown finite group alias {name!r}")


def _backend_and_start(args) -> tuple[GroupBackend, tuple, str]:
    name = getattr(args, "group", None) or "grigorchuk"
    if name == "grigorchuk" or getattr(args, "omega", None) or getattr(args, "grp", None):
        omega = _omega_from_args(args)
        backend: GroupBackend = TreeBackend(omega, fingerprint_level=args.fingerprint_level)
        entries = _tree_backend_entries(args, omega)
    else:
        backend = _finite_backend(args)
        if getattr(args, "start", None):
            entries = tuple(
                backend.element([int(c) for c in chunk.split(",")])
                for chunk in args.start.split(";")
            )
        else:
            d = backend.d
            entries = tuple(
                backend.element([1 if i == j else 0 for j in range(d)]) for i in range(d)
            )
    size = getattr(args, "size", None)
    if size is not None:
        if size < len(entries):
            raise CliError("--size smaller than the start tuple")
        entries = entries + (backend.identity,) * (size - len(entries))
    if backend.is_generating(entries) is False:
        raise CliError("start tuple does not generate the group")
    return backend, entries, backend.describe()


# -- subcommand handlers -----------------------------------------------------


def _cmd_element(args) -> int:
    omega = _omega_from_args(args)
    g = word(omega, args.word, offset=args.offset)
    _emit(_header(args, f"family({omega.describe()})"))
    if args.element_cmd == "reduce":
        print(f"word={g.letters or 'identity'}")
    elif args.element_cmd == "act":
        print(f"result={g.act(args.string)}")
    elif args.element_cmd == "order":
        result = g.order(args.cap)
        print(f"order={'exceeds-cap' if result is None else result}")
    elif args.element_cmd == "sections":
        pair = g.sections()
        print(f"left={pair.left.letters or 'identity'}")
        print(f"right={pair.right.letters or 'identity'}")
        print(f"swapped={int(pair.swapped)}")
    return 0


def _cmd_witness(args) -> int:
    if args.witness_cmd == "classical":
        report = verify_classical(args.m)
        _emit(_header(args, f"family({CLASSICAL_OMEGA.describe()})"))
        _print_witness(report)
        return 0 if report.valid else VERIFY_FAIL
    if args.witness_cmd == "general":
        omega = _omega_from_args(args)
        report = verify_general(omega, args.n)
        _emit(_header(args, f"family({omega.describe()})"))
        _print_witness(report)
        if report.no_witness:
            return 0  # correctly routed branch, not a failure
        return 0 if report.valid else VERIFY_FAIL
    # sweep
    cycles = [c for c in args.cycles.split(",") if c]
    _emit(_header(args, "sweep"))
    print("omega,n,status,letters_abcd,letters_abc,nontrivial,rist_ok,bound_ok")
    worst = 0
    for cycle in cycles:
        omega = OmegaSequence(args.prefix or "", cycle)
        for n in range(0, args.n_max + 1):
            r = verify_general(omega, n)
            print(
                f"{omega.describe()},{n},{r.status()},{r.letters_abcd},{r.letters_abc},"
                f"{int(r.nontrivial)},{int(r.rist_ok)},{int(r.bound_ok)}"
            )
            if not r.no_witness and not r.valid:
                worst = VERIFY_FAIL
    return worst


def _print_witness(report) -> None:
    print(f"status={report.status()}")
    print(f"m={report.m}")
    if report.t_word is not None:
        print(f"word={report.t_word.letters}")
    print(f"letters_abcd={report.letters_abcd}")
    print(f"letters_abc={report.letters_abc}")
    print(f"nontrivial={int(report.nontrivial)}")
    print(f"rist_ok={int(report.rist_ok)}")
    print(f"bound_ok={int(report.bound_ok)}")
    if report.section_ok is not None:
        print(f"section_ok={int(report.section_ok)}")


def _cmd_schreier(args) -> int:
    omega = _omega_from_args(args)
    gens = _tree_backend_entries(args, omega)
    graph = schreier(gens, args.m, max_level=args.max_level)
    _emit(_header(args, f"family({omega.describe()})", extra=f"max-level={args.max_level}"))
    if args.dot:
        print(graph.to_dot())
        return 0
    print(f"level={graph.level}")
    print(f"vertices={len(graph.vertices)}")
    print(f"connected={int(graph.connected)}")
    print("vertex,label,target")
    for v, s in enumerate(graph.vertices):
        for li, (gi, sign) in enumerate(graph.labels):
            print(f"{s},g{gi}{'+' if sign > 0 else '-'},{graph.vertices[graph.out[v][li]]}")
    return 0


def _cmd_walk(args) -> int:
    omega = _omega_from_args(args)
    gens = _tree_backend_entries(args, omega)
    graph = schreier(gens, args.m, max_level=args.max_level)
    start = args.start_vertex or "1" * args.m
    walk = spanning_walk(graph, start)
    _emit(_header(args, f"family({omega.describe()})"))
    print(f"start={walk.start}")
    print(f"visits={len(walk.visits)}")
    print(f"total_steps={walk.total_steps}")
    print("i,visit,walk_word")
    for i, (s, h) in enumerate(zip(walk.visits, walk.h_words)):
        print(f"{i + 1},{s},{h.letters or 'identity'}")
    return 0


def _cmd_cert(args) -> int:
    if args.cert_cmd == "build":
        omega = _omega_from_args(args)
        base = tuple(args.base.split(";"))
        try:
            cert = build_certificate(omega, args.m, base=base, max_level=args.max_level)
        except NoWitnessError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return USAGE_ERROR
        text = serialize_certificate(cert)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0
    # verify
    text = open(args.file, encoding="utf-8").read() if args.file else sys.stdin.read()
    cert = parse_certificate(text)
    result = verify_certificate(cert, max_level=args.max_level, brute_cap=args.brute_cap)
    _emit(_header(args, f"family({cert.omega.describe()})"))
    print(f"status={'VALID' if result.ok else 'INVALID'}")
    print(f"level={cert.level}")
    print(f"k={result.k}")
    print(f"path_length={result.path_length}")
    print(f"bound={result.bound}")
    for failure in result.failures:
        print(f"failure={failure}")
    return 0 if result.ok else VERIFY_FAIL


def _cmd_prp_ball(args) -> int:
    backend, entries, desc = _backend_and_start(args)
    _emit(
        _header(
            args,
            desc,
            extra=f"radius={args.radius} tuple-size={len(entries)}",
        )
    )
    if args.dot:
        print(ball_to_dot(backend, entries, args.radius, max_vertices=args.dot_max))
        return 0
    table = ball(backend, entries, args.radius, budget=args.budget)
    for row in table.csv_rows():
        print(row)
    print(f"# truncated={int(table.truncated)}")
    if args.rate:
        radii = [int(r) for r in args.rate.split(",")]
        report = growth_report(table, radii, beta=args.beta)
        print(f"# rate={report.rate:.6f} subsequence={args.rate} beta={args.beta}")
    return 0


def _cmd_prp_components(args) -> int:
    backend = _finite_backend(args)
    size = args.size if args.size is not None else backend.d
    census = components_finite(backend, size, max_tuples=args.max_tuples)
    _emit(_header(args, backend.describe(), extra=f"tuple-size={size} max-tuples={args.max_tuples}"))
    print(f"vertices={census.vertex_count}")
    print(census.summary())
    return 0


def _cmd_rw_speed(args) -> int:
    backend, entries, desc = _backend_and_start(args)
    stats = rw_speed(
        backend,
        entries,
        steps=args.steps,
        trials=args.trials,
        radius=args.radius,
        seed=args.seed,
        budget=args.budget,
        threads=args.threads,
    )
    _emit(_header(args, desc, extra=f"threads-requested={args.threads}"))
    sys.stdout.write(stats.serialize())
    return 0


def _cmd_parse_check(args) -> int:
    try:
        text = open(args.file, encoding="utf-8").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        spec = parse_grp(text)
        lowered = validate_and_lower(spec)
    except GrpParseError as exc:
        print(f"status=INVALID")
        print(f"diagnostic={exc}")
        return VERIFY_FAIL
    print("status=OK")
    for name, target in lowered.items():
        kind = "family" if isinstance(target, LoweredFamily) else "explicit"
        print(f"group={name} kind={kind}")
    return 0


def _cmd_ad_order(args) -> int:
    omega = _omega_from_args(args)
    relabeled, perm = relabel_for_d(omega, args.n)
    ok = check_ad_order(relabeled, args.n, args.k)
    _emit(_header(args, f"family({omega.describe()})"))
    print(f"relabeled={relabeled.describe()}")
    print(f"holds={int(ok)}")
    return 0 if ok else VERIFY_FAIL


# -- argument wiring ---------------------------------------------------------


def _add_family_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--omega", help="cycle letters of the defining sequence (default dcb)")
    p.add_argument("--prefix", default="", help="prefix letters of the defining sequence")
    p.add_argument("--grp", help=".grp file with group declarations")
    p.add_argument("--group", help="group name (builtin alias or declaration in --grp)")


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--max-level", dest="max_level", type=int, default=14)
    p.add_argument("--fingerprint-level", dest="fingerprint_level", type=int, default=7)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="prplab", description=__doc__)
    top.add_argument("--version", action="version", version=f"prplab {__version__}")
    sub = top.add_subparsers(dest="cmd", required=True)

    p_el = sub.add_parser("element", help="reduced-word operations")
    el_sub = p_el.add_subparsers(dest="element_cmd", required=True)
    for name in ("reduce", "act", "order", "sections"):
        q = el_sub.add_parser(name)
        q.add_argument("--word", required=True)
        q.add_argument("--offset", type=int, default=0)
        if name == "act":
            q.add_argument("--string", required=True)
        if name == "order":
            q.add_argument("--cap", type=int, default=20)
        _add_family_options(q)
        _add_common(q)
        q.set_defaults(func=_cmd_element)

    p_w = sub.add_parser("witness", help="rigid-stabilizer witness reports")
    w_sub = p_w.add_subparsers(dest="witness_cmd", required=True)
    q = w_sub.add_parser("classical")
    q.add_argument("--m", type=int, required=True)
    _add_common(q)
    q.set_defaults(func=_cmd_witness)
    q = w_sub.add_parser("general")
    q.add_argument("--n", type=int, required=True)
    _add_family_options(q)
    _add_common(q)
    q.set_defaults(func=_cmd_witness)
    q = w_sub.add_parser("sweep")
    q.add_argument("--cycles", required=True, help="comma-separated cycle strings")
    q.add_argument("--prefix", default="")
    q.add_argument("--n-max", dest="n_max", type=int, default=5)
    _add_common(q)
    q.set_defaults(func=_cmd_witness)

    q = sub.add_parser("schreier", help="level action graph")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--start", help="generator words separated by ';' (default a;b;c;d)")
    q.add_argument("--dot", action="store_true")
    _add_family_options(q)
    _add_common(q)
    q.set_defaults(func=_cmd_schreier)

    q = sub.add_parser("walk", help="spanning walk of a level graph")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--start", help="generator words separated by ';' (default a;b;c;d)")
    q.add_argument("--start-vertex", dest="start_vertex")
    _add_family_options(q)
    _add_common(q)
    q.set_defaults(func=_cmd_walk)

    p_c = sub.add_parser("cert", help="growth certificates")
    c_sub = p_c.add_subparsers(dest="cert_cmd", required=True)
    q = c_sub.add_parser("build")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--base", default="a;b;c;d", help="base tuple words separated by ';'")
    q.add_argument("--out")
    _add_family_options(q)
    _add_common(q)
    q.set_defaults(func=_cmd_cert)
    q = c_sub.add_parser("verify")
    q.add_argument("file", nargs="?", help="certificate file (default stdin)")
    q.add_argument("--brute-cap", dest="brute_cap", type=int, default=16,
                   help="largest k settled by full product enumeration")
    _add_common(q)
    q.set_defaults(func=_cmd_cert)

    p_p = sub.add_parser("prp", help="product replacement graph exploration")
    pp_sub = p_p.add_subparsers(dest="prp_cmd", required=True)
    q = pp_sub.add_parser("ball")
    q.add_argument("--radius", type=int, required=True)
    q.add_argument("--budget", type=int, default=5_000_000)
    q.add_argument("--start", help="entries ';'-separated; coords ','-separated for vector groups")
    q.add_argument("--size", type=int, help="pad the start tuple with identities to this size")
    q.add_argument("--rate", help="comma-separated log-dense radii for a growth rate")
    q.add_argument("--beta", type=float, default=2.0)
    q.add_argument("--dot", action="store_true")
    q.add_argument("--dot-max", dest="dot_max", type=int, default=2000)
    q.add_argument("--d", type=int, default=1)
    q.add_argument("--p", type=int, default=3)
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--k", type=int, default=3)
    _add_family_options(q)
    _add_common(q)
    q.set_defaults(func=_cmd_prp_ball)
    q = pp_sub.add_parser("components")
    q.add_argument("--group", required=True, choices=["zpn", "z2k"])
    q.add_argument("--p", type=int, default=3)
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--k", type=int, default=3)
    q.add_argument("--size", type=int, help="tuple size (default: the dimension)")
    q.add_argument("--max-tuples", dest="max_tuples", type=int, default=10_000_000)
    _add_common(q)
    q.set_defaults(func=_cmd_prp_components)

    q = sub.add_parser("rw-speed", help="seeded random walk distance statistics")
    q.add_argument("--steps", type=int, default=40)
    q.add_argument("--trials", type=int, default=200)
    q.add_argument("--radius", type=int, default=10)
    q.add_argument("--budget", type=int, default=200_000)
    q.add_argument("--start", help="entries ';'-separated")
    q.add_argument("--size", type=int, help="pad the start tuple with identities to this size")
    q.add_argument("--d", type=int, default=1)
    q.add_argument("--p", type=int, default=3)
    q.add_argument("--n", type=int, default=2)
    q.add_argument("--k", type=int, default=3)
    _add_family_options(q)
    _add_common(q)
    q.set_defaults(func=_cmd_rw_speed)

    p_parse = sub.add_parser("parse", help=".grp file checks")
    pc_sub = p_parse.add_subparsers(dest="parse_cmd", required=True)
    q = pc_sub.add_parser("check")
    q.add_argument("file")
    _add_common(q)
    q.set_defaults(func=_cmd_parse_check)

    q = sub.add_parser("ad-order", help="dihedral order check for a d_k")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    _add_family_options(q)
    _add_common(q)
    q.set_defaults(func=_cmd_ad_order)

    return top


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (
        WordError,
        SchreierError,
        PrpError,
        GrowthError,
        CertificateError,
        GrpParseError,
        NoWitnessError,
        CliError,
        ValueError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
