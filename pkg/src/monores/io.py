"""Canonical JSON for instances, reports and traces.

Rationals are "num/den" strings, field elements are digit vectors over Z/p
(lowest power of the generator first) and keys are sorted, so equal objects
serialize to equal bytes.
"""

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction

from .blowup import Center, FiberPoint
from .driver import Status, Trace, TraceTree
from .errors import SchemaError
from .field import GF
from .invariants import Config, DivisorReport, GammaTight, Report, Spade
from .series import BiSeries, HomogPoly
from .state import DivisorInfo, Hypersurface, MonomialData, MonomialState

SCHEMA = 1


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _need(d, key, where):
    try:
        return d[key]
    except (KeyError, TypeError):
        raise SchemaError(f"{where}: missing field {key!r}") from None


# scalars

def rat(x):
    if x is None:
        return None
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def unrat(s, where="rational"):
    if s is None:
        return None
    try:
        if isinstance(s, int):
            return Fraction(s)
        num, den = s.split("/")
        return Fraction(int(num), int(den))
    except (ValueError, AttributeError, ZeroDivisionError):
        raise SchemaError(f"{where}: {s!r} is not a num/den rational") from None


def elem_out(F, v):
    return list(F.coords(v))


def elem_in(F, c, where):
    if isinstance(c, int):
        return c % F.order
    if isinstance(c, list) and len(c) == F.m and all(isinstance(x, int) for x in c):
        return F.elem(c).value
    raise SchemaError(f"{where}: {c!r} is not a field element of GF({F.p}^{F.m})")


# fields and series

def field_out(F):
    return {"p": F.p, "m": F.m, "modulus": list(F.modulus)}


def field_in(d, where="field"):
    try:
        return GF(_need(d, "p", where), d.get("m", 1), d.get("modulus"))
    except (ValueError, TypeError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def series_out(f):
    F = f.field
    terms = [[i, j, elem_out(F, c)] for (i, j), c in sorted(f.terms.items())]
    return {"prec": f.prec, "terms": terms}


def series_in(F, d, where="series"):
    prec = _need(d, "prec", where)
    pairs = []
    for k, t in enumerate(_need(d, "terms", where)):
        w = f"{where} term {k}"
        if not (isinstance(t, list) and len(t) == 3 and isinstance(t[0], int) and isinstance(t[1], int)):
            raise SchemaError(f"{w}: expected [i, j, coefficient], got {t!r}")
        if t[0] < 0 or t[1] < 0:
            raise SchemaError(f"{w}: negative exponent")
        pairs.append((t[0], t[1], elem_in(F, t[2], w)))
    if not isinstance(prec, int) or prec < 0:
        raise SchemaError(f"{where}: bad precision {prec!r}")
    return BiSeries.from_pairs(F, pairs, prec)


def form_out(phi):
    if phi is None:
        return None
    return {"degree": phi.degree, "coeffs": [elem_out(phi.field, c) for c in phi.coeffs]}


def form_in(F, d):
    if d is None:
        return None
    return HomogPoly(F, d["degree"], tuple(elem_in(F, c, "form") for c in d["coeffs"]))


# instances

def state_out(st, script=None):
    out = {
        "field": field_out(st.field),
        "e": st.e,
        "prec": st.prec,
        "a": st.mono.a,
        "divisors": [{"axis": d.axis, "index": d.index, "m": d.m} for d in st.mono.divisors],
        "coeffs": [series_out(c) for c in st.hyp.coeffs],
    }
    if st.year:
        out["year"] = st.year
    if script:
        out["script"] = list(script)
    return out


def state_in(d, default_prec=None):
    """Instance dict -> (state, script).  Validation is the caller's business."""
    if "field" in d:
        F = field_in(d["field"])
    else:
        F = field_in(d, "instance")
    e = _need(d, "e", "instance")
    prec = d.get("prec", default_prec)
    if prec is None:
        raise SchemaError("instance: missing field 'prec'")
    divs = []
    for k, dv in enumerate(_need(d, "divisors", "instance")):
        w = f"divisor {k}"
        axis = _need(dv, "axis", w)
        axis = {"Hx": "x", "Hy": "y"}.get(axis, axis)
        if axis not in ("x", "y"):
            raise SchemaError(f"{w}: axis must be x or y, got {axis!r}")
        m = dv.get("m", dv.get("m_D"))
        if m is None:
            raise SchemaError(f"{w}: missing field 'm'")
        divs.append(DivisorInfo(axis, dv.get("index", k), m))
    q = F.p ** e
    raw = _need(d, "coeffs", "instance")
    if len(raw) != q:
        raise SchemaError(f"instance: {len(raw)} coefficients given, q = {q} needed")
    coeffs = []
    for k, c in enumerate(raw, start=1):
        if isinstance(c, list):
            c = {"prec": prec, "terms": c}
        elif isinstance(c, dict) and "prec" not in c:
            c = {**c, "prec": prec}
        s = series_in(F, c, f"coefficient a_{k}")
        coeffs.append(s.truncate(prec))
    st = MonomialState(F, Hypersurface(F.p, e, tuple(coeffs)), MonomialData(_need(d, "a", "instance"), tuple(divs)),
                       prec, d.get("year", 0))
    return st, tuple(d.get("script", ()))


def instance_hash(st):
    return hashlib.sha256(dumps(state_out(st)).encode()).hexdigest()[:16]


def load_instance(path, default_prec=None):
    try:
        with open(path) as fh:
            d = json.load(fh)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return state_in(d, default_prec)


def save_json(path, obj):
    with open(path, "w") as fh:
        fh.write(dumps(obj) + "\n")


# reports

def _word_out(w):
    return [rat(x) for x in w]


def _word_in(w):
    return tuple(unrat(x) for x in w)


def report_out(r):
    return {
        "p": r.p, "e": r.e, "a": r.a, "prec": r.prec,
        "mu": rat(r.mu), "ord_aq": r.ord_aq, "H": rat(r.H), "point_good": r.point_good,
        "divisors": [{
            "axis": d.axis, "index": d.index, "m": d.m, "mu": rat(d.mu), "order": d.order,
            "H": rat(d.H), "good": d.good, "res_ord": d.res_ord, "rho": rat(d.rho), "w_rho": rat(d.w_rho),
        } for d in r.divisors],
        "ord_tight": rat(r.ord_tight), "heart": rat(r.heart),
        "A": _word_out(r.A), "B": rat(r.B), "spade": str(r.spade),
        "config": r.config.value, "old": [rat(x) for x in r.old], "locus": r.locus,
        "tight": r.tight, "tight_kinds": sorted(r.tight_kinds),
        "gamma": None if r.gamma.value is None else {
            "n": r.gamma.value[0], "total": rat(r.gamma.value[1]), "indices": list(r.gamma.value[2]),
            "omega": list(r.gamma.omega)},
    }


def report_in(d):
    try:
        divs = tuple(DivisorReport(v["axis"], v["index"], v["m"], unrat(v["mu"]), v["order"], unrat(v["H"]),
                                   v["good"], v["res_ord"], unrat(v["rho"]), unrat(v["w_rho"]))
                     for v in d["divisors"])
        g = d["gamma"]
        gamma = GammaTight() if g is None else GammaTight(
            (g["n"], unrat(g["total"]), tuple(g["indices"])), tuple(g["omega"]))
        A = _word_in(d["A"])
        B = unrat(d["B"])
        return Report(d["p"], d["e"], d["a"], d["prec"], unrat(d["mu"]), d["ord_aq"], unrat(d["H"]),
                      d["point_good"], divs, unrat(d["ord_tight"]), unrat(d["heart"]), A, B, Spade(A, B),
                      Config(d["config"]), tuple(unrat(x) for x in d["old"]), d["locus"], d["tight"], gamma,
                      frozenset(d.get("tight_kinds", ())))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"report: {exc!r}") from None


# traces

@dataclass
class StoredStep:
    """A step read back from disk; carries what the auditor needs."""

    year: int
    phase: str
    center: Center
    fiber: FiberPoint
    kind: str
    outcome: str
    pre: Report
    post: Report
    phi: HomogPoly
    options: tuple = ()
    spade_text: tuple = (None, None)


def _fiber_out(fp):
    return {"chart": fp.chart, "c": fp.c}


def step_out(s):
    F = s.pre_state.field if getattr(s, "pre_state", None) is not None else None
    return {
        "year": s.year, "phase": s.phase,
        "center": {"kind": s.center.kind, "axis": s.center.axis, "omega": list(s.center.omega)},
        "fiber": _fiber_out(s.fiber), "kind": s.kind, "outcome": s.outcome,
        "pre": report_out(s.pre), "post": None if s.post is None else report_out(s.post),
        "initial_form": form_out(s.phi) if F is not None and s.center.kind == "point" else None,
        "options": [[str(fp), k] for fp, k in s.options],
    }


def step_in(d, F):
    try:
        c = d["center"]
        center = Center(c["kind"], c["axis"], tuple(c["omega"]))
        fp = FiberPoint(d["fiber"]["chart"], d["fiber"]["c"])
        pre = report_in(d["pre"])
        post = None if d["post"] is None else report_in(d["post"])
        return StoredStep(d["year"], d["phase"], center, fp, d["kind"], d["outcome"], pre, post,
                          form_in(F, d.get("initial_form")), tuple(tuple(o) for o in d.get("options", ())),
                          (d["pre"].get("spade"), None if d["post"] is None else d["post"].get("spade")))
    except (KeyError, TypeError) as exc:
        raise SchemaError(f"step: {exc!r}") from None


def _episodes_out(eps):
    return [{"start": ep.start, "truncated": ep.truncated, "jump": ep.jump, "note": ep.note,
             "values": {k: (rat(v) if isinstance(v, Fraction) else v) for k, v in ep.values.items()},
             "checks": [[f.prop, f.ok] for f in ep.findings]} for ep in eps]


def comparison(steps):
    """Old and new invariant side by side along a path."""
    rows = []
    for s in steps:
        if s.post is None:
            continue
        rows.append({"year": s.year, "kind": s.kind,
                     "old": [[rat(x) for x in s.pre.old], [rat(x) for x in s.post.old]],
                     "new": [str(s.pre.spade), str(s.post.spade)],
                     "old_decreases": s.post.old < s.pre.old,
                     "new_decreases": s.post.spade < s.pre.spade})
    return rows


def path_out(trace):
    from .audit import episodes
    return {"steps": [step_out(s) for s in trace.steps], "status": str(trace.status),
            "detail": trace.detail, "episodes": _episodes_out(episodes(trace.steps)),
            "comparison": comparison(trace.steps)}


def trace_out(result, devil="worst"):
    """A Trace or TraceTree as a self-contained dict."""
    initial = result.initial
    out = {"schema": SCHEMA, "instance": state_out(initial), "instance_hash": instance_hash(initial),
           "devil": devil}
    if isinstance(result, TraceTree):
        out["truncated"] = result.truncated
        out["nodes"] = result.nodes
        out["paths"] = [path_out(t) for t in result.paths()]
    else:
        out["paths"] = [path_out(result)]
    return out


def trace_in(d):
    """-> (instance state, [Trace of StoredStep]) from a stored trace dict."""
    if d.get("schema") != SCHEMA:
        raise SchemaError(f"trace: unsupported schema {d.get('schema')!r}")
    st, _ = state_in(_need(d, "instance", "trace"))
    if instance_hash(st) != d.get("instance_hash"):
        raise SchemaError("trace: instance hash does not match the stored instance")
    paths = []
    for p in _need(d, "paths", "trace"):
        steps = [step_in(s, st.field) for s in p["steps"]]
        try:
            status = Status(p["status"])
        except ValueError:
            raise SchemaError(f"trace: unknown status {p['status']!r}") from None
        paths.append(Trace(st, steps, status, p.get("detail", "")))
    return st, paths
