"""monores command line.

    monores validate inst.json
    monores run inst.json --devil exhaustive --trace-out t.json
    monores forge --p 2 --e 1 --r 1 --s 1 --t 2 --out inst.json
    monores verify t.json
    monores invariants inst.json
    monores compare inst.json
    monores suite --seed 3
"""

import argparse
import collections
import json
import os
import sys
from dataclasses import replace

from .audit import Finding, audit
from .driver import Exhaustive, Scripted, Status, TraceTree, WorstCase, run
from .errors import InvalidState, MonoresError, SchemaError, SpecViolation
from .field import GF
from .forge import JumpSpec, analyze, build_phi, embed, verify_jump
from .invariants import report
from .io import dumps, load_instance, report_out, save_json, state_out, trace_in, trace_out
from .state import validate

EXIT = {
    Status.RESOLVED: 0,
    Status.TIGHT_RESOLVED: 10,
    Status.SIGMA_DROP: 11,
    Status.MAX_STEPS: 12,
    Status.PRECISION_EXHAUSTED: 13,
    Status.OUTSIDE_SETTING: 14,
}
SEVERITY = [Status.RESOLVED, Status.TIGHT_RESOLVED, Status.SIGMA_DROP, Status.MAX_STEPS,
            Status.OUTSIDE_SETTING, Status.PRECISION_EXHAUSTED]


def default_prec():
    try:
        return int(os.environ.get("MONORES_PREC", "64"))
    except ValueError:
        return 64


def _load(path):
    return load_instance(path, default_prec())


def format_report(r):
    lines = [f"config {r.config}   point {'good' if r.point_good else 'bad'}   locus {r.locus}",
             f"  mu {r.mu}   H {r.H}   ord a_q {r.ord_aq}",
             f"  ord M_tight {r.ord_tight}   heart {r.heart}   B {r.B}",
             f"  A {list(map(str, r.A))}   spade {r.spade}",
             f"  old {tuple(str(x) for x in r.old)}"]
    for d in r.divisors:
        tail = "" if d.good else f"   rho {d.rho}   w-rho {d.w_rho}"
        lines.append(f"  divisor {d.index} on {{{d.axis}=0}}: m {d.m}   mu {d.mu}   H {d.H}   "
                     f"{'good' if d.good else 'bad'}{tail}")
    if r.tight:
        lines.append(f"  tight type {r.tight}   gamma {r.gamma}")
    return "\n".join(lines)


def cmd_validate(args):
    st, _ = _load(args.instance)
    rep = validate(st)
    for c in rep:
        mark = "ok  " if c.ok else "FAIL"
        print(f"{mark} {c.name}" + (f": {c.witness}" if c.witness else ""))
    return 0 if rep.ok else 1


def _devil(args, script):
    if args.devil == "exhaustive":
        return Exhaustive(args.node_budget)
    if args.devil == "scripted" or args.script or script:
        text = args.script.split(",") if args.script else list(script)
        return Scripted(text)
    return WorstCase()


def cmd_run(args):
    st, script = _load(args.instance)
    if args.prec is not None:
        st = _with_prec(st, args.prec)
    devil = _devil(args, script)
    result = run(st, devil, args.max_steps)
    paths = result.paths() if isinstance(result, TraceTree) else [result]
    for k, t in enumerate(paths):
        if len(paths) > 1:
            print(f"path {k}:")
        for s in t.steps:
            post = s.post.spade if s.post is not None else s.outcome
            print(f"  year {s.year} {s.phase:8} {str(s.center):10} {str(s.fiber):6} {s.kind:9} "
                  f"{s.pre.spade} -> {post}")
        print(f"  status {t.status}" + (f" ({t.detail})" if t.detail else ""))
    if args.trace_out:
        save_json(args.trace_out, trace_out(result, getattr(devil, "name", "worst")))
    worst = max((t.status for t in paths), key=SEVERITY.index)
    return EXIT[worst]


def _with_prec(st, prec):
    return replace(st, prec=prec, hyp=replace(st.hyp, coeffs=tuple(c.truncate(prec) for c in st.hyp.coeffs)))


def cmd_forge(args):
    F = GF(args.p, args.m)
    try:
        spec = JumpSpec.make(F, args.e, args.r, args.s, args.t, args.gamma or ())
        if args.d is not None:
            spec = JumpSpec(F, args.e, args.r, args.s, args.t, args.d, spec.gammas)
        spec.check()
        phi = build_phi(spec)
    except SpecViolation as exc:
        print(f"SpecViolation: {', '.join(exc.failed)}", file=sys.stderr)
        return 1
    an = analyze(spec)
    print(f"phi = {phi}")
    print(f"d {spec.d}  n {spec.n}  u {spec.u}  alpha {spec.alpha}  beta {spec.beta}")
    print(f"w0 {an.w0}  v0 {an.v0}  predicted res-ord after the jump {an.predicted_res_ord}")
    st = embed(spec, args.config, args.prec or default_prec(), args.tail, args.boost)
    if args.verify:
        rep = verify_jump(spec, args.config, args.prec or default_prec(), args.tail, args.boost)
        print("verify: " + ("ok" if rep.ok else "; ".join(rep.failures)))
    text = dumps(state_out(st))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0


def verify_paths(paths, q):
    """Findings for stored paths, plus tamper checks of the printed invariants."""
    findings, eps = [], []
    for t in paths:
        fs, es = audit(t.steps, q)
        for s in t.steps:
            for rep, text in zip((s.pre, s.post), getattr(s, "spade_text", (None, None))):
                if rep is not None and text is not None and text != str(rep.spade):
                    fs.append(Finding("report.spade-text", s.year, False, f"stored {text}, derived {rep.spade}"))
        findings += fs
        eps += es
    return findings, eps


def cmd_verify(args):
    with open(args.trace) as fh:
        data = json.load(fh)
    st, paths = trace_in(data)
    findings, eps = verify_paths(paths, st.q)
    bad = [f for f in findings if not f.ok]
    counts = collections.Counter(f.prop for f in findings)
    fails = collections.Counter(f.prop for f in bad)
    for prop in sorted(counts):
        print(f"{'ok  ' if not fails[prop] else 'FAIL'} {prop}: {counts[prop] - fails[prop]}/{counts[prop]}")
    for f in bad[:20]:
        print(f"  year {f.year} {f.prop}: {f.detail}")
    for ep in eps:
        if ep.truncated:
            print(f"warning: EpisodeTruncated at step {ep.start}" + (f" ({ep.note})" if ep.note else ""))
    return 1 if bad else 0


def cmd_invariants(args):
    st, _ = _load(args.instance)
    rep, _ = report(st)
    if args.json:
        print(dumps(report_out(rep)))
    else:
        print(format_report(rep))
    return 0


def cmd_compare(args):
    st, script = _load(args.instance)
    t = run(st, Scripted(script) if script else WorstCase())
    print(f"{'year':>4}  {'kind':9} {'old before':28} {'old after':28} {'new before':24} new after")
    for s in t.steps:
        if s.post is None:
            continue
        o1 = "(" + ", ".join(map(str, s.pre.old)) + ")"
        o2 = "(" + ", ".join(map(str, s.post.old)) + ")"
        print(f"{s.year:>4}  {s.kind:9} {o1:28} {o2:28} {str(s.pre.spade):24} {s.post.spade}")
    print(f"status {t.status}")
    return 0


def cmd_suite(args):
    from .corpus import forged_corpus, random_corpus, tight_seeds
    corpus = random_corpus(args.seed, args.count) + forged_corpus() + tight_seeds(args.seed)
    counts, fails = collections.Counter(), collections.Counter()
    statuses = collections.Counter()
    for st in corpus:
        for devil in (WorstCase(), Exhaustive(args.node_budget)):
            res = run(st, devil)
            for t in res.paths() if isinstance(res, TraceTree) else [res]:
                statuses[str(t.status)] += 1
                for f in audit(t.steps, st.q)[0]:
                    counts[f.prop] += 1
                    fails[f.prop] += not f.ok
    print(f"{len(corpus)} instances; path statuses {dict(statuses)}")
    for prop in sorted(counts):
        print(f"{'ok  ' if not fails[prop] else 'FAIL'} {prop}: {counts[prop] - fails[prop]}/{counts[prop]}")
    return 1 if sum(fails.values()) else 0


def build_parser():
    ap = argparse.ArgumentParser(prog="monores", description="Monomial-case resolution game over finite fields.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("instance")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("run", help="play the resolution game")
    p.add_argument("instance")
    p.add_argument("--devil", choices=["worst", "exhaustive", "scripted"], default="worst")
    p.add_argument("--script", help="comma separated fiber points, e.g. Y0,X(1)")
    p.add_argument("--max-steps", type=int)
    p.add_argument("--prec", type=int)
    p.add_argument("--node-budget", type=int, default=20000)
    p.add_argument("--trace-out")
    p.set_defaults(fn=cmd_run)

    p = sub.add_parser("forge", help="build an instance with a prescribed jump")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e", type=int, default=1)
    p.add_argument("--m", type=int, default=1)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, default=0)
    p.add_argument("--d", type=int)
    p.add_argument("--gamma", type=int, action="append")
    p.add_argument("--config", choices=["4", "5"], default="5")
    p.add_argument("--tail", action="store_true")
    p.add_argument("--boost", type=int, default=0)
    p.add_argument("--prec", type=int)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(fn=cmd_forge)

    p = sub.add_parser("verify", help="re-check a stored trace")
    p.add_argument("trace")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("invariants", help="one-shot invariant report")
    p.add_argument("instance")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("compare", help="old and new invariant along a run")
    p.add_argument("instance")
    p.set_defaults(fn=cmd_compare)

    p = sub.add_parser("suite", help="audit a random corpus")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--node-budget", type=int, default=2000)
    p.set_defaults(fn=cmd_suite)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidState, MonoresError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
