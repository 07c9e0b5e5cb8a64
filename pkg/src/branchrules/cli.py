"""Command line front end.

Subcommands ``essential``, ``branch``, ``discover``, ``relations`` and
``verify-paper``.  Every command prints either an aligned table (default) or
one record per line (``--format lines``):

    SIG λ=<ints> p=<ints> hw'=<ints>
    REL <u-vector> = <w-vector>

Exit status: 0 success, 1 usage error, 2 counterexample, 3 budget or cap hit.
A JSON config file (``--config``) overrides command line flags; its keys are
the long flag names (``degree-bound`` or ``degree_bound``).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import List, Optional, Sequence

from .branching import EmbeddingError, branching_slice, load_embedding
from .essential import (
    DEFAULT_BUDGET,
    EnumerationBudgetExceeded,
    MonomialOrderSpec,
    OrderError,
    Signature,
    deglex_order,
    essential_signatures,
)
from .golden import EXAMPLES, reference_numbering, verify
from .hwmodule import DEFAULT_DIM_CAP, ModuleTooLarge, build_module
from .pairs import PairSpec, b3_g2, bn_dn, builtin_order, f4_b4, g2_a2, get_pair
from .rootsys import RootSystem, RootSystemError, build_root_system, root_system_from_json
from .semigroup import (
    BUDGET,
    CERTIFIED,
    COUNTEREXAMPLE,
    ElementBudgetExceeded,
    GeneratorSet,
    certify,
    compute_relations,
    discover_generators,
)
from .toric import GroebnerBudgetExceeded

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_COUNTEREXAMPLE = 2
EXIT_BUDGET = 3

BUDGET_ERRORS = (EnumerationBudgetExceeded, ModuleTooLarge, GroebnerBudgetExceeded, ElementBudgetExceeded)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- resolving descriptors ----------------------------------------------------------


def ints(text) -> tuple:
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    text = str(text).strip().strip("()[]")
    return tuple(int(x) for x in re.split(r"[,\s]+", text) if x) if text else ()


def _read_json(text: str):
    if os.path.exists(text):
        with open(text) as fh:
            return json.load(fh)
    return json.loads(text)


# builtin orders that come with their own root ordering
_ORDER_ALGEBRAS = {"g2-default": lambda: g2_a2().g, "b3-g2": lambda: b3_g2().g, "f4-b4": lambda: f4_b4().g}


def resolve_algebra(spec: str, order_name: Optional[str] = None) -> RootSystem:
    """``G2``, ``B3``... or a JSON root-system descriptor (file or inline)."""
    m = re.fullmatch(r"\s*([A-Ga-g])\s*(\d+)\s*", spec)
    if m:
        series, rank = m.group(1).upper(), int(m.group(2))
        if order_name in _ORDER_ALGEBRAS:
            g = _ORDER_ALGEBRAS[order_name]()
            if (g.series, g.rank) == (series, rank):
                return g
        if order_name == "bn-dn" and series == "B":
            return bn_dn(rank).g
        return build_root_system(series, rank)
    try:
        return root_system_from_json(json.dumps(_read_json(spec)))
    except (OSError, ValueError) as exc:
        raise UsageError(f"cannot read algebra {spec!r}: {exc}")


def resolve_order(spec: Optional[str], g: RootSystem, default: Optional[MonomialOrderSpec] = None) -> MonomialOrderSpec:
    if spec is None:
        return default if default is not None else deglex_order(g.n_positive)
    try:
        return builtin_order(spec, g)
    except KeyError:
        pass
    try:
        order = MonomialOrderSpec.from_dict(_read_json(spec))
    except (OSError, ValueError) as exc:
        raise UsageError(f"unknown order {spec!r}: {exc}")
    if order.n != g.n_positive:
        raise UsageError(f"order has {order.n} variables but {g.name()} has {g.n_positive} positive roots")
    return order


def resolve_pair(args) -> PairSpec:
    if getattr(args, "embedding", None):
        if not args.algebra:
            raise UsageError("--embedding needs --algebra")
        g = resolve_algebra(args.algebra, args.order)
        emb = load_embedding(g, args.embedding)
        return PairSpec(emb.name or "custom", g, emb, resolve_order(args.order, g))
    if not args.pair:
        raise UsageError("--pair (or --algebra with --embedding) is required")
    try:
        P = get_pair(args.pair)
    except KeyError as exc:
        raise UsageError(str(exc.args[0]))
    if args.order:
        P = PairSpec(P.name, P.g, P.emb, resolve_order(args.order, P.g))
    return P


def weights_of(args, rank: int) -> List[tuple]:
    out = []
    for w in args.weight or []:
        for part in str(w).split(";"):
            if part.strip():
                lam = ints(part)
                if len(lam) != rank or any(x < 0 for x in lam):
                    raise UsageError(f"weight {part!r} is not a dominant weight of rank {rank}")
                out.append(lam)
    return out


# -- output -------------------------------------------------------------------------


def _c(v) -> str:
    return ",".join(map(str, v))


def sig_line(sig: Signature, h_weight=None) -> str:
    line = f"SIG λ={_c(sig.hw)} p={_c(sig.exps)}"
    if h_weight is not None:
        line += f" hw'={_c(h_weight)}"
    return line


_SIG_RE = re.compile(r"SIG\s+λ=([-\d,]*)\s+p=([\d,]*)(?:\s+hw'=([-\d,]*))?")


def parse_sig_lines(text: str):
    out = []
    for line in text.splitlines():
        m = _SIG_RE.match(line.strip())
        if m:
            hw = ints(m.group(3)) if m.group(3) is not None else None
            out.append((Signature(ints(m.group(1)), ints(m.group(2))), hw))
    return out


def table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max([len(h)] + [len(r[i]) for r in rows]) for i, h in enumerate(headers)]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    lines = [fmt.format(*headers).rstrip(), fmt.format(*["-" * w for w in widths]).rstrip()]
    lines += [fmt.format(*r).rstrip() for r in rows]
    return "\n".join(lines)


def _emit_signatures(args, rows) -> None:
    """rows: (signature, h_weight or None)."""
    if args.format == "lines":
        for s, w in rows:
            print(sig_line(s, w))
        return
    has_h = any(w is not None for _, w in rows)
    headers = ["#", "λ", "p"] + (["λ'"] if has_h else [])
    body = []
    for i, (s, w) in enumerate(rows, 1):
        r = [str(i), _c(s.hw), _c(s.exps)]
        if has_h:
            r.append(_c(w) if w is not None else "")
        body.append(r)
    print(table(headers, body))


# -- commands -----------------------------------------------------------------------


def cmd_essential(args) -> int:
    if args.pair and not args.algebra:
        P = resolve_pair(args)
        g, order = P.g, P.order
    else:
        if not args.algebra:
            raise UsageError("--algebra or --pair is required")
        g = resolve_algebra(args.algebra, args.order)
        order = resolve_order(args.order, g)
    lams = weights_of(args, g.rank)
    if not lams:
        raise UsageError("--weight is required")
    rows = []
    for lam in lams:
        M = build_module(g, lam, dim_cap=args.dim_cap, cache_dir=args.cache_dir)
        B = essential_signatures(M, order, args.budget)
        rows += [(s, None) for s in B.signatures]
    _emit_signatures(args, rows)
    return EXIT_OK


def cmd_branch(args) -> int:
    P = resolve_pair(args)
    lams = weights_of(args, P.g.rank)
    if not lams:
        raise UsageError("--weight is required")
    rows = []
    for lam in lams:
        M = build_module(P.g, lam, dim_cap=args.dim_cap, cache_dir=args.cache_dir)
        sl = branching_slice(M, P.emb, P.order, args.budget, route=args.route)
        rows += [(e.signature, e.h_weight) for e in sl.entries]
    _emit_signatures(args, rows)
    return EXIT_OK


def _report_lines(rep) -> List[str]:
    lines = [f"certificate: {rep.verdict} (degree bound {rep.degree_bound}, {rep.points_tested} of {rep.points_total} weights)"]
    if rep.failing:
        lines.append("failing: " + " ".join(f"({_c(w)})" for w in rep.failing))
    if rep.note:
        lines.append(f"note: {rep.note}")
    return lines


def _status_code(status: str) -> int:
    return {CERTIFIED: EXIT_OK, COUNTEREXAMPLE: EXIT_COUNTEREXAMPLE, BUDGET: EXIT_BUDGET}[status]


def _discover(args, P: PairSpec):
    initial = weights_of(args, P.g.rank) or None
    progress = (lambda m: print(m, file=sys.stderr)) if args.verbose else None
    return discover_generators(
        P.emb,
        P.order,
        initial=initial,
        iteration_cap=args.iteration_cap,
        k=args.degree_bound,
        dim_cap=args.dim_cap,
        budget=args.budget,
        cache_dir=args.cache_dir,
        progress=progress,
        route=args.route,
        threads=args.threads,
    )


def _read_generators(path: str, P: PairSpec) -> GeneratorSet:
    with open(path) as fh:
        parsed = parse_sig_lines(fh.read())
    if not parsed:
        raise UsageError(f"no SIG lines in {path}")
    sigs = [s for s, _ in parsed]
    hws = [w if w is not None else P.emb.restrict(s.weight(P.g)) for s, w in parsed]
    return GeneratorSet(P.g, P.emb.h, sigs, hws, P.emb)


def cmd_discover(args) -> int:
    P = resolve_pair(args)
    prefix = "# " if args.format == "lines" else ""
    if args.generators:
        # certify the given set as it is
        gens = _read_generators(args.generators, P)
        rep = certify(gens, args.degree_bound)
        _emit_signatures(args, list(zip(gens.signatures, gens.h_weights)))
        for line in _report_lines(rep):
            print(prefix + line)
        return _status_code(rep.verdict)
    res = _discover(args, P)
    gens = res.generators
    _emit_signatures(args, list(zip(gens.signatures, gens.h_weights)))
    for line in _report_lines(res.report):
        print(prefix + line)
    if res.status == BUDGET and res.report.verdict == COUNTEREXAMPLE:
        print(f"{prefix}iteration cap {args.iteration_cap} reached")
    return _status_code(res.status)


def cmd_relations(args) -> int:
    P = resolve_pair(args)
    status = CERTIFIED
    if args.generators:
        gens = _read_generators(args.generators, P)
    else:
        res = _discover(args, P)
        gens, status = res.generators, res.status
    if args.numbering == "reference":
        perm = reference_numbering(P.name, gens.signatures)
        if perm is not None:
            gens = GeneratorSet(P.g, P.emb.h, [gens.signatures[i] for i in perm], [gens.h_weights[i] for i in perm], P.emb)
    pres = compute_relations(gens)
    if args.format == "lines":
        for s, w in zip(gens.signatures, gens.h_weights):
            print(sig_line(s, w))
        for line in pres.machine_lines():
            print(line)
    else:
        print(table(["#", "λ", "p", "λ'"], [[f"s{i}", _c(s.hw), _c(s.exps), _c(w)] for i, (s, w) in enumerate(zip(gens.signatures, gens.h_weights), 1)]))
        print()
        print(f"{len(pres.relations)} relation(s)" + (":" if pres.relations else ""))
        if pres.relations:
            print(pres.text())
    return _status_code(status)


def cmd_verify_paper(args) -> int:
    names = EXAMPLES if args.example == "all" else [args.example]
    if any(n not in EXAMPLES for n in names):
        raise UsageError(f"unknown example {args.example!r}; choose from all, {', '.join(EXAMPLES)}")
    progress = (lambda m: print(m, file=sys.stderr)) if args.verbose else None
    ok = True
    for n in names:
        rep = verify(
            n,
            extended=args.extended,
            dim_cap=args.dim_cap if args.dim_cap != DEFAULT_DIM_CAP else None,
            degree_bound=args.degree_bound or 6,
            progress=progress,
            threads=args.threads,
            cache_dir=args.cache_dir,
        )
        lines = rep.lines()
        if args.format == "lines":
            lines = [re.sub(r" \(\d+\.\ds\)$", "", l) for l in lines]
        print("\n".join(lines))
        ok = ok and rep.passed
    return EXIT_OK if ok else EXIT_COUNTEREXAMPLE


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file whose keys override the flags")
    common.add_argument("--algebra", help="e.g. G2, B3, or a JSON root-system descriptor")
    common.add_argument("--pair", help="G2:A2, B3:G2, F4:B4, Bn:Dn or An:An-1")
    common.add_argument("--embedding", help="JSON embedding file (with --algebra)")
    common.add_argument("--weight", action="append", help="highest weight(s), e.g. 1,0 (repeat or separate with ';')")
    common.add_argument("--order", help="builtin order name or JSON order descriptor")
    common.add_argument("--degree-bound", type=int, help="simplex size for the certificate")
    common.add_argument("--iteration-cap", type=int, default=10)
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="candidate enumeration budget")
    common.add_argument("--dim-cap", type=int, default=DEFAULT_DIM_CAP, help="largest module to build")
    common.add_argument("--cache-dir", help="directory for cached modules")
    common.add_argument("--threads", type=int, default=1, help="worker processes for slices")
    common.add_argument("--route", choices=["direct", "tilde"], default="direct")
    common.add_argument("--format", choices=["table", "lines"], default="table")
    common.add_argument("--verbose", "-v", action="store_true", help="progress on stderr")

    p = _Parser(prog="branchrules", description="Essential bases and branching semigroups of simple Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("essential", parents=[common], help="essential signatures of V(λ)")
    sub.add_parser("branch", parents=[common], help="branching slice of V(λ)")
    d = sub.add_parser("discover", parents=[common], help="grow and certify a generator set")
    d.add_argument("--generators", help="file of SIG lines to certify as given, without growing the set")
    r = sub.add_parser("relations", parents=[common], help="relations among generators")
    r.add_argument("--generators", help="file of SIG lines (default: run discovery)")
    r.add_argument(
        "--numbering",
        choices=["reference", "input"],
        default="reference",
        help="number generators as in the built-in table when all appear there (default), or keep input order",
    )
    v = sub.add_parser("verify-paper", parents=[common], help="check the built-in reference tables")
    v.add_argument("example", help=f"all, {', '.join(EXAMPLES)}")
    v.add_argument("--extended", action="store_true", help="also run the long F4 discovery")
    return p


COMMANDS = {
    "essential": cmd_essential,
    "branch": cmd_branch,
    "discover": cmd_discover,
    "relations": cmd_relations,
    "verify-paper": cmd_verify_paper,
}


def apply_config(args, path: str) -> None:
    with open(path) as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict):
        raise UsageError("config file must hold a JSON object")
    for key, val in cfg.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise UsageError(f"unknown config key {key!r}")
        if dest == "weight" and not isinstance(val, list):
            val = [val]
        elif dest == "weight":
            val = [_c(w) if isinstance(w, list) else str(w) for w in val]
        setattr(args, dest, val)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            apply_config(args, args.config)
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BUDGET_ERRORS as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RootSystemError, EmbeddingError, OrderError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
