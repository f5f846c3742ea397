"""``tapestry`` command-line front end.

Every subcommand prints plain text by default and a JSON document carrying
``"schema": 1`` with ``--json``.  Exit status: 0 success, 2 bad input,
3 a resource limit was hit, 4 an internal consistency check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .algebra import LaurentPoly, ModulusMismatch, laurent_divides
from .presentation import (FreeWord, PresentationError, abelianization, fixture_text, load_presentation,
                           parse_hom, parse_presentation, parse_word, serialize_presentation,
                           simplify_presentation)
from .reps import DEFAULT_MAX_NODES, SearchLimitExceeded, enumerate_representations, representation_from_lists
from .tap import (Verdict, format_table, meridional_obstruction, plain_divisibility_check, tap_table,
                  twisted_alexander)
from . import twistknot, wordprob

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_LIMIT = 3
EXIT_INTERNAL = 4


class LimitHit(Exception):
    pass


# ---------------------------------------------------------------------------
# input helpers


def _read_text(source: str, suffix: str) -> str:
    """A file path, or the name of a bundled fixture."""
    if os.path.exists(source):
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    name = os.path.basename(source)
    if not name.endswith(suffix):
        name += suffix
    try:
        return fixture_text(name)
    except (FileNotFoundError, OSError):
        raise PresentationError("no such file or fixture: %s" % source) from None


def load_pres(source: str):
    if source.startswith("twist:"):
        return twistknot.twist_presentation(int(source.split(":", 1)[1]))
    if os.path.exists(source):
        return load_presentation(source)
    return parse_presentation(_read_text(source, ".pres"))


def _parse_rep(text: str, g, p: int):
    if os.path.exists(text):
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    data = json.loads(text)
    if isinstance(data, dict):
        data = data.get("representation", data.get("images"))
    mats = []
    for m in data:
        if len(m) == 4 and all(isinstance(x, int) for x in m):
            m = [m[:2], m[2:]]
        mats.append(m)
    return representation_from_lists(g, p, mats)


def _workers(args):
    return getattr(args, "workers", None)


def _emit(args, payload: dict, text: str):
    if args.json:
        out = json.dumps(payload, indent=2, sort_keys=False)
    else:
        out = text
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out + "\n")
    else:
        print(out)


# ---------------------------------------------------------------------------
# subcommands


def cmd_enum(args):
    g = load_pres(args.pres)
    constrain = False if args.unconstrained else None
    reps = enumerate_representations(g, args.p, constrain_conjugate=constrain, conjugation=args.conjugation,
                                     workers=_workers(args), max_nodes=args.max_nodes)
    lines = ["%d representations of %s into SL(2, F_%d) up to %s conjugacy (%d before dedup)"
             % (len(reps), g.name, args.p, args.conjugation, reps.raw_count)]
    for i, r in enumerate(reps):
        lines.append("%3d  " % i + "  ".join("%s=%s" % (n, m.tolist()) for n, m in zip(g.generators, r.images)))
    _emit(args, reps.to_json(), "\n".join(lines))


def cmd_tap(args):
    g = load_pres(args.pres)
    rho = _parse_rep(args.rep, g, args.p)
    pair = twisted_alexander(g, rho, column=args.column)
    payload = {"schema": 1, "presentation": g.name, "p": args.p, "representation": rho.to_json(),
               **pair.to_json()}
    text = "Delta^N = %s\nDelta^D = %s" % (pair.numerator, pair.denominator)
    _emit(args, payload, text)


def cmd_table(args):
    g = load_pres(args.pres)
    rows = tap_table(g, args.p, normalization=args.normalization, workers=_workers(args),
                     max_nodes=args.max_nodes)
    payload = {"schema": 1, "presentation": g.name, "p": args.p, "normalization": args.normalization,
               "rows": [{"representation": r.representation.to_json(), "multiplicity": r.multiplicity,
                         **r.pair.to_json()} for r in rows]}
    text = format_table(g, rows) + "\n%d distinct pairs from %d representations" % (
        len(rows), sum(r.multiplicity for r in rows))
    _emit(args, payload, text)


def _report_text(rep) -> str:
    lines = ["%s: %s -> %s over F_%d (%s test)" % (rep.verdict.value, rep.source, rep.target, rep.p, rep.mode)]
    for k, v in rep.stats.items():
        lines.append("  %s: %s" % (k, v))
    if rep.witness is not None:
        w = rep.witness
        lines.append("  witness target representation #%d: %s" % (w.index, w.representation.to_json()))
        lines.append("    Delta^N' = %s, Delta^D' = %s" % (w.pair.numerator, w.pair.denominator))
        lines.append("    no source representation matches for eps = 1 or eps = -1")
    for n in rep.notes:
        lines.append("  note: %s" % n)
    return "\n".join(lines)


def _run_sweep(args, fn, **extra):
    src, tgt = load_pres(args.source), load_pres(args.target)
    rep = fn(src, tgt, args.p, exhaustive=args.exhaustive, workers=_workers(args),
             max_nodes=args.max_nodes, **extra)
    _emit(args, rep.to_json(), _report_text(rep))
    if rep.verdict is Verdict.INCONCLUSIVE:
        raise LimitHit("obstruction sweep inconclusive")


def cmd_obstruct(args):
    _run_sweep(args, meridional_obstruction, filter_image=args.filter_image)


def cmd_divides(args):
    if args.d is not None or args.f is not None:
        if args.d is None or args.f is None:
            raise PresentationError("--d and --f go together")
        d, f = LaurentPoly.parse(args.d, args.p), LaurentPoly.parse(args.f, args.p)
        if d.is_zero():
            raise PresentationError("divisor is the zero polynomial")
        ok, q = laurent_divides(d, f)
        payload = {"schema": 1, "p": args.p, "divides": ok, "quotient": None if q is None else q.to_json()}
        _emit(args, payload, ("yes, quotient %s" % q) if ok else "no")
        return
    if not (args.source and args.target):
        raise PresentationError("give --source and --target, or --d and --f")
    _run_sweep(args, plain_divisibility_check)


def cmd_twist(args):
    q = args.q
    if args.action == "phi":
        phi = twistknot.riley_phi(q)
        _emit(args, {"schema": 1, "q": q, "phi": str(phi), "degree": phi.degree}, "phi_%d(u) = %s" % (q, phi))
    elif args.action == "p":
        pq = twistknot.trace_gap_p(q, args.method)
        payload = {"schema": 1, "q": q, "method": args.method, "p": str(pq), "degree": pq.degree,
                   "pseudo_meridian": twistknot.twist_presentation(q).format_word(twistknot.pseudo_meridian(q))}
        _emit(args, payload, "p_%d(u) = %s" % (q, pq))
    elif args.action == "certify":
        rep = twistknot.non_meridian_certificate(q)
        text = "%s (q = %d): %s\n  phi = %s\n  p = %s" % (rep.verdict.value, q, rep.reason, rep.phi, rep.p)
        if rep.p_bar is not None:
            text += "\n  p / u^2 = %s\n  gcd = %s" % (rep.p_bar, rep.gcd)
        _emit(args, rep.to_json(), text)
    elif args.action == "gencheck":
        if args.p is None:
            raise PresentationError("gencheck needs -p")
        ok = twistknot.generating_identity_check(q, args.p)
        _emit(args, {"schema": 1, "q": q, "p": args.p, "holds": ok},
              "identity %s under every SL(2, F_%d) representation" % ("holds" if ok else "FAILS", args.p))
        if not ok:
            raise AssertionError("generating identity failed")


def cmd_coset(args):
    if args.twist is not None:
        g = twistknot.twist_presentation(args.twist)
        extra = [twistknot.pseudo_meridian(args.twist)]
    else:
        if not args.pres:
            raise PresentationError("give --pres or --twist")
        g = load_pres(args.pres)
        extra = []
    extra += [parse_word(w, g.generators) for w in args.extra or []]
    res = wordprob.todd_coxeter_trivial(g, extra, args.limit)
    text = "%s%s (%d cosets defined, %d live at most)" % (
        res.status.value, "" if res.order is None else ", order %d" % res.order, res.defined, res.max_live)
    _emit(args, res.to_json(), text)
    if res.status is wordprob.CosetStatus.LIMIT_EXCEEDED:
        raise LimitHit("coset limit reached")


def cmd_verify_hom(args):
    src, tgt = load_pres(args.source), load_pres(args.target)
    h = parse_hom(_read_text(args.hom, ".hom"), src, tgt)
    ok, failing = wordprob.verify_group_hom(h)
    payload = {"schema": 1, "homomorphism": ok, "failing_relators": failing}
    lines = ["relators: %s" % ("all %d vanish" % len(src.relators) if ok else "failing %s" % failing)]
    if h.witnesses:
        surj = wordprob.verify_surjectivity_witnesses(h)
        payload["surjective"] = surj
        lines.append("surjectivity witnesses: %s" % ("ok" if surj else "FAIL"))
    tr = wordprob.meridian_trace_obstruction(h, args.meridian)
    payload["trace"] = tr.to_json()
    lines.append("rho(f(meridian)) = %s, trace %d vs %d: %s"
                 % ([list(r) for r in tr.matrix], tr.trace, tr.meridian_trace, tr.verdict))
    _emit(args, payload, "\n".join(lines))


def cmd_simplify(args):
    g = load_pres(args.pres)
    s = simplify_presentation(g)
    payload = {"schema": 1, "name": s.name, "generators": list(s.generators),
               "relators": [s.format_word(r) for r in s.relators],
               "relator_lengths": [len(r) for r in s.relators]}
    _emit(args, payload, serialize_presentation(s).rstrip())


def cmd_abelianize(args):
    g = load_pres(args.pres)
    torsion, rank = abelianization(g)
    parts = ["Z"] * rank + ["Z/%d" % t for t in torsion]
    _emit(args, {"schema": 1, "free_rank": rank, "torsion": torsion}, " + ".join(parts) or "0")


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="tapestry", description="Twisted Alexander polynomials over SL(2, F_p).")
    ap.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, search=False):
        p.add_argument("--json", action="store_true", help="emit JSON")
        p.add_argument("-o", "--output", help="write output to this file")
        if search:
            p.add_argument("--workers", type=int, default=None,
                           help="worker processes (default: $TAPESTRY_WORKERS or 1)")
            p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
        return p

    p = common(sub.add_parser("enum", help="representations into SL(2, F_p) up to conjugacy"), True)
    p.add_argument("--pres", required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--unconstrained", action="store_true", help="do not assume conjugate generators")
    p.add_argument("--conjugation", choices=("SL", "GL"), default="SL")
    p.set_defaults(func=cmd_enum)

    p = common(sub.add_parser("tap", help="twisted Alexander pair for one representation"))
    p.add_argument("--pres", required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--rep", required=True, help="JSON list of 2x2 matrices, or a file holding it")
    p.add_argument("--column", type=int, default=None, help="0-based generator column to delete")
    p.set_defaults(func=cmd_tap)

    p = common(sub.add_parser("table", help="distinct pairs over all representations"), True)
    p.add_argument("--pres", required=True)
    p.add_argument("-p", type=int, required=True)
    p.add_argument("--normalization", choices=("unit", "shift"), default="unit")
    p.set_defaults(func=cmd_table)

    for name, func, hlp in (("obstruct", cmd_obstruct, "meridional-epimorphism obstruction"),
                            ("divides", cmd_divides, "plain divisibility test, or divide two polynomials")):
        p = common(sub.add_parser(name, help=hlp), True)
        p.add_argument("--source", required=(name == "obstruct"))
        p.add_argument("--target", required=(name == "obstruct"))
        p.add_argument("-p", type=int, required=True)
        p.add_argument("--exhaustive", action="store_true", help="check every target representation")
        if name == "obstruct":
            p.add_argument("--filter-image", action="store_true",
                           help="only compare source representations with the same image")
        else:
            p.add_argument("--d", help="divisor polynomial, e.g. 't^2 + 1'")
            p.add_argument("--f", help="dividend polynomial")
        p.set_defaults(func=func)

    p = common(sub.add_parser("twist", help="twist-knot polynomials and certificates"))
    p.add_argument("action", choices=("phi", "p", "certify", "gencheck"))
    p.add_argument("-q", type=int, required=True)
    p.add_argument("-p", type=int, default=None, help="prime for gencheck")
    p.add_argument("--method", choices=("recursion", "direct"), default="recursion")
    p.set_defaults(func=cmd_twist)

    p = common(sub.add_parser("coset", help="Todd-Coxeter over the trivial subgroup"))
    p.add_argument("--pres")
    p.add_argument("--twist", type=int, default=None, help="use J(2,2q) plus its pseudo-meridian")
    p.add_argument("--extra", action="append", help="extra relator word (repeatable)")
    p.add_argument("--limit", type=int, default=wordprob.DEFAULT_COSET_LIMIT)
    p.set_defaults(func=cmd_coset)

    p = common(sub.add_parser("verify-hom", help="check a homomorphism into the trefoil group"))
    p.add_argument("--hom", required=True)
    p.add_argument("--source", required=True)
    p.add_argument("--target", required=True)
    p.add_argument("--meridian", default=None, help="source meridian generator name")
    p.set_defaults(func=cmd_verify_hom)

    for name, func in (("simplify", cmd_simplify), ("abelianize", cmd_abelianize)):
        p = common(sub.add_parser(name))
        p.add_argument("--pres", required=True)
        p.set_defaults(func=func)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (SearchLimitExceeded, LimitHit) as exc:
        print("limit: %s" % exc, file=sys.stderr)
        return EXIT_LIMIT
    except (PresentationError, ModulusMismatch, ValueError, KeyError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except (AssertionError, ArithmeticError) as exc:
        print("internal error: %s" % exc, file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
