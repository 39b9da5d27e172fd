"""Command line interface.

Exit codes: 0 success or certificate issued, 1 a theorem hypothesis or audit
fails (a legitimate negative finding), 2 invalid input or usage.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import fileformat, report
from .errors import AuditMissing, HypothesisError, QMError, ValidationError
from .generate import PREORDER_KINDS, GenParams, corpus, gen_instance
from .lab import build_witness, check_equivalences, witness_noncompleteness_report
from .picard import RULES, caristi_multi, caristi_single, full_ekeland, takahashi, weak_ekeland
from .qspace import as_rat

EXIT_OK, EXIT_FINDING, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _rat_arg(text: str) -> Fraction:
    try:
        return as_rat(text)
    except (TypeError, ValueError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "machine"), default="text")

    p = _Parser(prog="qmprinciples", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", parents=[fmt], help="validate an instance and run all audits")
    v.add_argument("file")

    s = sub.add_parser("solve", help="run a solver and print its certificate")
    ssub = s.add_subparsers(dest="solver", required=True, parser_class=_Parser)
    w = ssub.add_parser("wek", parents=[fmt], help="weak Ekeland point")
    w.add_argument("file")
    w.add_argument("--start")
    w.add_argument("--rule", choices=RULES, default="argmin")
    w.add_argument("--seed", type=int)
    e = ssub.add_parser("ekeland", parents=[fmt], help="full Ekeland point")
    e.add_argument("file")
    e.add_argument("--eps", type=_rat_arg, required=True)
    e.add_argument("--lambda", dest="lam", type=_rat_arg, required=True)
    e.add_argument("--start", required=True)
    t = ssub.add_parser("takahashi", parents=[fmt], help="Takahashi minimization")
    t.add_argument("file")
    t.add_argument("--variant", choices=("strict", "closure"), default="strict")
    c = ssub.add_parser("caristi", parents=[fmt], help="Caristi point for a map")
    c.add_argument("file")
    c.add_argument("--map", required=True)

    lab = sub.add_parser("lab", help="equivalence harness")
    lsub = lab.add_subparsers(dest="lab", required=True, parser_class=_Parser)
    le = lsub.add_parser("equivalence", parents=[fmt])
    le.add_argument("file")
    lc = lsub.add_parser("corpus", parents=[fmt])
    lc.add_argument("--n", type=int, default=8, help="largest point count")
    lc.add_argument("--count", type=int, default=100)
    lc.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gen", help="print a random instance file")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--zero-prob", type=_rat_arg, default=Fraction(1, 4))
    g.add_argument("--inf-prob", type=_rat_arg, default=Fraction(0))
    g.add_argument("--preorder", choices=PREORDER_KINDS, default="total")

    wt = sub.add_parser("witness", parents=[fmt], help="truncated non-completeness witness")
    wt.add_argument("--N", type=int, required=True)
    return p


def _load(path: str):
    return fileformat.loads(Path(path).read_text())


def _point(inst, label: str) -> int:
    try:
        return inst.space.index(label)
    except KeyError:
        raise ValidationError(f"unknown point {label!r}") from None


def _run(args, out) -> int:
    fmt = getattr(args, "format", "text")

    if args.command == "gen":
        params = GenParams(args.n, args.seed, args.zero_prob, args.inf_prob, args.preorder)
        out.write(fileformat.dumps(gen_instance(params)))
        return EXIT_OK

    if args.command == "witness":
        if args.N < 2:
            raise ValidationError("--N must be at least 2")
        w = build_witness(args.N)
        rep = witness_noncompleteness_report(w)
        body = {"instance": fileformat.dumps(w.instance, witness=args.N)} if fmt == "machine" else None
        if body is None:
            out.write(fileformat.dumps(w.instance, witness=args.N))
            out.write("\n")
            out.write(report.render({"witness": report.witness_report(w.instance, rep)}))
        else:
            body["witness"] = report.witness_report(w.instance, rep)
            out.write(report.render(body, fmt))
        return EXIT_OK if rep.ok else EXIT_FINDING

    if args.command == "validate":
        inst = _load(args.file)
        rep = report.audit_report(inst)
        out.write(report.render({"validate": rep}, fmt))
        return EXIT_OK if rep["ok"] else EXIT_FINDING

    if args.command == "solve":
        inst = _load(args.file)
        if args.solver == "wek":
            x0 = None if args.start is None else _point(inst, args.start)
            cert = weak_ekeland(inst, x0, args.rule, args.seed)
            out.write(report.render(report.wek_report(inst, cert), fmt))
            return EXIT_OK
        if args.solver == "ekeland":
            cert = full_ekeland(inst, args.eps, args.lam, _point(inst, args.start))
            out.write(report.render(report.full_ekeland_report(inst, cert), fmt))
            return EXIT_OK
        if args.solver == "takahashi":
            rep = takahashi(inst, args.variant)
            out.write(report.render(report.takahashi_report(inst, rep), fmt))
            return EXIT_OK if rep.hypothesis_ok else EXIT_FINDING
        kind, images = fileformat.parse_map(Path(args.map).read_text(), inst.space.labels)
        res = caristi_single(inst, images) if kind == "single" else caristi_multi(inst, images)
        out.write(report.render(report.caristi_report(inst, res), fmt))
        return EXIT_OK

    if args.lab == "equivalence":
        inst = _load(args.file)
        rep = check_equivalences(inst)
        out.write(report.render(report.equivalence_report(inst, rep), fmt))
        return EXIT_OK
    instances = corpus(args.count, args.seed, args.n)
    holds = sum(check_equivalences(inst).wEk_holds for inst in instances)
    out.write(report.render({
        "corpus": {"count": len(instances), "seed": args.seed, "n_max": args.n,
                   "wEk_holds": holds, "consistent": len(instances)},
    }, fmt))
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return _run(args, out)
    except (HypothesisError, AuditMissing) as exc:
        err.write(f"finding: {exc}\n")
        return EXIT_FINDING
    except (ValidationError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except QMError as exc:
        err.write(f"internal error: {exc}\n")
        return 3


if __name__ == "__main__":
    sys.exit(main())
