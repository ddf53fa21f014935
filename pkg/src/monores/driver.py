"""The resolution game: the algorithm picks centers, a devil picks points.

A run alternates between the monomial phase, where the center comes from
the singular locus of the monomial data, and the tight phase, where it is
the subset of boundary divisors maximizing the tight invariant.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

from .blowup import CURVE, POINT, Center, FiberPoint, Y0, fiber_outcomes, transform_curve, transform_gamma
from .errors import OutsideSetting, PrecisionExhausted
from .invariants import Config, report
from .state import require_valid, validate

THREE_FOUR_FIVE = (Config.THREE, Config.FOUR, Config.FIVE)


class Status(Enum):
    RESOLVED = "Resolved"
    TIGHT_RESOLVED = "TightResolved"
    SIGMA_DROP = "SigmaDrop"
    MAX_STEPS = "MaxSteps"
    PRECISION_EXHAUSTED = "PrecisionExhausted"
    OUTSIDE_SETTING = "OutsideSetting"

    def __str__(self):
        return self.value


@dataclass
class Step:
    year: int
    phase: str
    center: Center
    fiber: FiberPoint
    kind: str  # "curve", "standard", "esoteric", "gamma"
    outcome: str
    pre: object
    post: object = None
    pre_state: object = None
    post_state: object = None
    options: tuple = ()

    @property
    def initial_form(self):
        return self.pre_state.aq.initial_form() if self.pre_state is not None else None

    @property
    def phi(self):
        return self.initial_form


@dataclass
class Trace:
    initial: object
    steps: list = field(default_factory=list)
    status: Status = Status.MAX_STEPS
    detail: str = ""

    def reports(self):
        """The sequence of points visited: the start and each new point."""
        out = [self.steps[0].pre] if self.steps else []
        out += [s.post for s in self.steps if s.post is not None]
        return out


def select_center(rep):
    if rep.spade.is_zero:
        idx = rep.gamma.omega
        if len(idx) == 1:
            return Center("gamma", rep.divisor(idx[0]).axis, idx)
        return Center("gamma", None, idx)
    if rep.locus == "point":
        return POINT
    if rep.locus == "both":
        dx, dy = rep.on("x"), rep.on("y")
        pick = max((dx, dy), key=lambda d: (d.H, d.index))
        return Center("curve", pick.axis)
    return Center("curve", "x" if rep.locus == "curve-x" else "y")


def classify(pre, post, center):
    if center.kind == "gamma":
        return "gamma"
    if center.kind == "curve":
        return "curve"
    if post is not None and pre.config in THREE_FOUR_FIVE and post.config in THREE_FOUR_FIVE:
        if pre.A < post.A:
            return "esoteric"
    return "standard"


def outcomes_for(state, rep, center):
    if center.kind == "gamma":
        return transform_gamma(state, [rep.divisor(i).axis for i in center.omega])
    if center.kind == "curve":
        return [(CURVE, transform_curve(state, center.axis))]
    return fiber_outcomes(state)


HALT = ("precision", "outside_setting")


def _halts(options):
    return any(o.kind in HALT for _, o in options)


def _terminal(options, phase):
    kinds = {o.kind for _, o in options}
    if "precision" in kinds:
        return Status.PRECISION_EXHAUSTED
    if "outside_setting" in kinds:
        return Status.OUTSIDE_SETTING
    if "sigma_drop" in kinds:
        return Status.SIGMA_DROP
    return Status.TIGHT_RESOLVED if phase == "tight" else Status.RESOLVED


def _leaf_choice(options):
    """The option shown on a terminal step: the first one still singular."""
    for fp, o in options:
        if o.kind != "not_singular":
            return fp, o
    return options[0]


def _priority(out):
    rep = out.report
    if rep.spade.is_zero:
        return (0, rep.gamma.key())
    return (1, rep.spade.key())


class WorstCase:
    """Keeps the invariant as large as possible; ties go to the earlier fiber point."""

    name = "worst"

    def choose(self, state, rep, options):
        best = None
        for k, (fp, out) in enumerate(options):
            if out.is_new and (best is None or _priority(out) > _priority(options[best][1])):
                best = k
        return best


class Scripted:
    """Follows a list of fiber points, then behaves like WorstCase."""

    name = "scripted"

    def __init__(self, script):
        self.script = [parse_fiber(s) if isinstance(s, str) else s for s in script]
        self.pos = 0
        self.fallback = WorstCase()

    def choose(self, state, rep, options):
        if len(options) > 1 and self.pos < len(self.script):
            want = self.script[self.pos]
            self.pos += 1
            for k, (fp, out) in enumerate(options):
                if fp == want and out.is_new:
                    return k
        return self.fallback.choose(state, rep, options)


class Exhaustive:
    """Marker devil: every singular fiber point is explored."""

    name = "exhaustive"

    def __init__(self, node_budget=20000):
        self.node_budget = node_budget


def parse_fiber(text):
    text = text.strip()
    if text.upper() == "Y0":
        return Y0
    if text.upper().startswith("X(") and text.endswith(")"):
        return FiberPoint("x", int(text[2:-1]))
    raise ValueError(f"unknown fiber point {text!r}")


def _start(state):
    require_valid(state)
    rep, cur = report(state)
    broken = validate(cur).failures
    if broken:
        raise OutsideSetting(f"after cleaning: {broken[0].name} {broken[0].witness}")
    return rep, cur


def _options(state, rep):
    center = select_center(rep)
    phase = "tight" if rep.spade.is_zero else "monomial"
    return center, phase, outcomes_for(state, rep, center)


def _step(state, rep, center, phase, fp, out, options):
    post = out.report if out.is_new else None
    return Step(state.year, phase, center, fp, classify(rep, post, center), out.kind,
                rep, post, state, out.state if out.is_new else None,
                tuple((f, o.kind) for f, o in options))


def run(state, devil=None, max_steps=None):
    """Play the game from state.  Exhaustive devils return a TraceTree."""
    devil = devil or WorstCase()
    if max_steps is None:
        max_steps = state.prec // state.q
    if isinstance(devil, Exhaustive):
        return explore(state, max_steps, devil.node_budget)
    try:
        rep, cur = _start(state)
    except PrecisionExhausted as exc:
        return Trace(state, [], Status.PRECISION_EXHAUSTED, str(exc))
    except OutsideSetting as exc:
        return Trace(state, [], Status.OUTSIDE_SETTING, str(exc))
    trace = Trace(cur)
    for _ in range(max_steps):
        center, phase, options = _options(cur, rep)
        k = devil.choose(cur, rep, options)
        if k is None or _halts(options):
            fp, out = _leaf_choice(options) if k is None else options[k]
            trace.steps.append(_step(cur, rep, center, phase, fp, out, options))
            trace.status = _terminal(options, phase)
            return trace
        fp, out = options[k]
        trace.steps.append(_step(cur, rep, center, phase, fp, out, options))
        cur, rep = out.state, out.report
    trace.status = Status.MAX_STEPS
    return trace


@dataclass
class Node:
    step: Optional[Step]
    children: list = field(default_factory=list)
    status: Optional[Status] = None


@dataclass
class TraceTree:
    initial: object
    root: Node
    truncated: bool = False
    nodes: int = 0

    def paths(self):
        """Every root-to-leaf path as a Trace."""
        out = []

        def walk(node, prefix):
            steps = prefix + ([node.step] if node.step is not None else [])
            if not node.children:
                out.append(Trace(self.initial, steps, node.status or Status.MAX_STEPS))
                return
            for ch in node.children:
                walk(ch, steps)

        walk(self.root, [])
        return out

    def statuses(self):
        return [t.status for t in self.paths()]


def explore(state, max_steps, node_budget=20000):
    try:
        rep, cur = _start(state)
    except PrecisionExhausted:
        return TraceTree(state, Node(None, status=Status.PRECISION_EXHAUSTED))
    except OutsideSetting:
        return TraceTree(state, Node(None, status=Status.OUTSIDE_SETTING))
    tree = TraceTree(cur, Node(None))
    stack = [(tree.root, cur, rep, 0)]
    while stack:
        node, st, rp, depth = stack.pop()
        if depth >= max_steps:
            node.status = Status.MAX_STEPS
            continue
        center, phase, options = _options(st, rp)
        news = [(fp, o) for fp, o in options if o.is_new]
        if not news or _halts(options):
            fp, out = _leaf_choice(options)
            leaf = Node(_step(st, rp, center, phase, fp, out, options), status=_terminal(options, phase))
            node.children.append(leaf)
            continue
        for fp, out in news:
            tree.nodes += 1
            if tree.nodes > node_budget:
                tree.truncated = True
                node.status = Status.MAX_STEPS
                stack.clear()
                break
            child = Node(_step(st, rp, center, phase, fp, out, options))
            node.children.append(child)
            stack.append((child, out.state, out.report, depth + 1))
    return tree
