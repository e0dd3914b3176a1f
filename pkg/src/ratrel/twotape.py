"""Two-tape Buchi automata: representation, run semantics, decisions.

Transitions consume a finite word on each tape (either may be empty), and
acceptance asks for a run that visits an accepting state infinitely often
while consuming both infinite words entirely.  A run that eventually stops
consuming one of the tapes is not a computation over the word pair and
never accepts, which is also why cycles made purely of (empty, empty)
labels do not count as accepting behaviour.

For ultimately periodic inputs membership is decided exactly on the finite
graph of (state, tape-1 position, tape-2 position) configurations, where a
position is absolute inside the lasso prefix and a phase inside the
period.  For block-pattern inputs a budgeted best-first search reports
evidence instead of a verdict.
"""

from __future__ import annotations

import enum
import heapq
import json
from collections import deque
from dataclasses import dataclass
from typing import NamedTuple

from ._scc import tarjan_scc
from .words import Alphabet, AlphabetMismatch, LassoWord, OmegaWord


class InvalidAutomaton(ValueError):
    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = list(violations)


class DegenerateAutomaton(ValueError):
    """An accepting cycle of (empty, empty) transitions with no consuming way out."""


class TwoTapeTransition(NamedTuple):
    src: str
    read1: str
    read2: str
    dst: str


def _as_transition(t) -> TwoTapeTransition:
    return t if isinstance(t, TwoTapeTransition) else TwoTapeTransition(*t)


@dataclass(frozen=True)
class TwoTapeAutomaton:
    states: tuple[str, ...]
    sigma1: Alphabet
    sigma2: Alphabet
    transitions: tuple[TwoTapeTransition, ...]
    initial: str
    accepting: frozenset[str]

    def __post_init__(self):
        object.__setattr__(
            self, "transitions", tuple(sorted(_as_transition(t) for t in self.transitions))
        )
        object.__setattr__(self, "accepting", frozenset(self.accepting))

    def transitions_from(self, state: str) -> tuple[TwoTapeTransition, ...]:
        return self._by_src().get(state, ())

    def _by_src(self) -> dict[str, tuple[TwoTapeTransition, ...]]:
        cached = getattr(self, "_by_src_cache", None)
        if cached is None:
            grouped: dict[str, list[TwoTapeTransition]] = {}
            for t in self.transitions:
                grouped.setdefault(t.src, []).append(t)
            cached = {s: tuple(ts) for s, ts in grouped.items()}
            object.__setattr__(self, "_by_src_cache", cached)
        return cached


@dataclass(frozen=True)
class Diagnostics:
    state_count: int
    unreachable: frozenset[str]
    cannot_reach_accepting: frozenset[str]


def validate(aut: TwoTapeAutomaton) -> Diagnostics:
    """Check the structural invariants; raise InvalidAutomaton listing violations.

    On success, reports unreachable states and states from which the
    accepting set is unreachable (informational, not errors).
    """
    problems: list[str] = []
    states = set(aut.states)
    if len(states) != len(aut.states):
        problems.append("duplicate state names")
    if aut.initial not in states:
        problems.append(f"initial state {aut.initial!r} not among states")
    for q in aut.accepting - states:
        problems.append(f"accepting state {q!r} not among states")
    for t in aut.transitions:
        if t.src not in states:
            problems.append(f"transition source {t.src!r} not among states")
        if t.dst not in states:
            problems.append(f"transition target {t.dst!r} not among states")
        try:
            aut.sigma1.check_word(t.read1, "tape-1 label")
        except AlphabetMismatch as exc:
            problems.append(str(exc))
        try:
            aut.sigma2.check_word(t.read2, "tape-2 label")
        except AlphabetMismatch as exc:
            problems.append(str(exc))
    if problems:
        raise InvalidAutomaton(problems)

    fwd: dict[str, set[str]] = {s: set() for s in aut.states}
    back: dict[str, set[str]] = {s: set() for s in aut.states}
    for t in aut.transitions:
        fwd[t.src].add(t.dst)
        back[t.dst].add(t.src)

    def closure(seeds: set[str], edges: dict[str, set[str]]) -> set[str]:
        seen = set(seeds)
        todo = deque(seeds)
        while todo:
            for nxt in edges[todo.popleft()]:
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        return seen

    reachable = closure({aut.initial}, fwd)
    co_accepting = closure(set(aut.accepting), back) if aut.accepting else set()
    return Diagnostics(
        state_count=len(aut.states),
        unreachable=frozenset(states - reachable),
        cannot_reach_accepting=frozenset(states - co_accepting),
    )


def union(a: TwoTapeAutomaton, b: TwoTapeAutomaton) -> TwoTapeAutomaton:
    """Automaton for the union of the two relations.

    Disjointly renames both machines and adds a fresh initial state that
    copies every transition leaving either original initial state, so no
    (empty, empty) bridge is introduced.
    """
    if a.sigma1 != b.sigma1 or a.sigma2 != b.sigma2:
        raise AlphabetMismatch("union requires matching tape alphabets")
    ra = {s: f"L.{s}" for s in a.states}
    rb = {s: f"R.{s}" for s in b.states}
    init = "u0"
    transitions = [
        TwoTapeTransition(ra[t.src], t.read1, t.read2, ra[t.dst]) for t in a.transitions
    ] + [TwoTapeTransition(rb[t.src], t.read1, t.read2, rb[t.dst]) for t in b.transitions]
    for t in a.transitions_from(a.initial):
        transitions.append(TwoTapeTransition(init, t.read1, t.read2, ra[t.dst]))
    for t in b.transitions_from(b.initial):
        transitions.append(TwoTapeTransition(init, t.read1, t.read2, rb[t.dst]))
    return TwoTapeAutomaton(
        states=(init,) + tuple(ra[s] for s in a.states) + tuple(rb[s] for s in b.states),
        sigma1=a.sigma1,
        sigma2=a.sigma2,
        transitions=tuple(transitions),
        initial=init,
        accepting=frozenset({ra[s] for s in a.accepting} | {rb[s] for s in b.accepting}),
    )


def epsilon_normalize(aut: TwoTapeAutomaton) -> TwoTapeAutomaton:
    """Equivalent automaton without (empty, empty) transitions.

    Silent segments are folded into their predecessors; a silent path that
    passes through an accepting state is remembered by routing the folded
    transition into an accepting copy of its target, so accepting visits
    that happened mid-segment still recur in the folded run.
    """
    eps_edges: dict[str, list[str]] = {}
    for t in aut.transitions:
        if t.read1 == "" and t.read2 == "":
            eps_edges.setdefault(t.src, []).append(t.dst)
    if not eps_edges:
        return aut

    _reject_degenerate(aut, eps_edges)

    suffix = "+"
    names = set(aut.states)
    while any(s + suffix in names for s in aut.states):
        suffix += "+"

    consuming: dict[str, list[TwoTapeTransition]] = {}
    for t in aut.transitions:
        if t.read1 or t.read2:
            consuming.setdefault(t.src, []).append(t)

    folded: dict[str, list[tuple[str, str, str, bool]]] = {}
    for q in aut.states:
        rows: list[tuple[str, str, str, bool]] = []
        seen = {(q, False)}
        todo = deque([(q, False)])
        while todo:
            x, flagged = todo.popleft()
            for y in eps_edges.get(x, ()):  # states strictly after q get folded away
                item = (y, flagged or y in aut.accepting)
                if item not in seen:
                    seen.add(item)
                    todo.append(item)
        for r, flagged in sorted(seen):
            for t in consuming.get(r, ()):  # ignore silent rows; they were expanded above
                rows.append((t.read1, t.read2, t.dst, flagged))
        folded[q] = rows

    transitions: set[TwoTapeTransition] = set()
    marked: set[str] = set()
    worklist: deque[str] = deque()

    def add_rows(src_name: str, base: str) -> None:
        for read1, read2, dst, flagged in folded[base]:
            if flagged:
                target = dst + suffix
                if dst not in marked:
                    marked.add(dst)
                    worklist.append(dst)
            else:
                target = dst
            transitions.add(TwoTapeTransition(src_name, read1, read2, target))

    for q in aut.states:
        add_rows(q, q)
    while worklist:
        base = worklist.popleft()
        add_rows(base + suffix, base)
    plus_names = {base + suffix for base in marked}

    # prune states unreachable from the initial state
    fwd: dict[str, list[str]] = {}
    for t in transitions:
        fwd.setdefault(t.src, []).append(t.dst)
    keep = {aut.initial}
    todo = deque([aut.initial])
    while todo:
        for nxt in fwd.get(todo.popleft(), ()):
            if nxt not in keep:
                keep.add(nxt)
                todo.append(nxt)
    kept_trans = tuple(t for t in transitions if t.src in keep and t.dst in keep)
    kept_states = tuple(s for s in aut.states if s in keep) + tuple(
        sorted(plus_names & keep)
    )
    accepting = frozenset(
        {s for s in aut.accepting if s in keep} | (plus_names & keep)
    )
    return TwoTapeAutomaton(
        states=kept_states,
        sigma1=aut.sigma1,
        sigma2=aut.sigma2,
        transitions=kept_trans,
        initial=aut.initial,
        accepting=accepting,
    )


def _reject_degenerate(aut: TwoTapeAutomaton, eps_edges: dict[str, list[str]]) -> None:
    """Raise if a reachable accepting silent cycle has no consuming continuation."""
    states = list(aut.states)
    idx = {s: i for i, s in enumerate(states)}
    adj = [[idx[d] for d in eps_edges.get(s, ())] for s in states]
    comp = tarjan_scc(len(states), adj)
    members: dict[int, list[int]] = {}
    for i, c in enumerate(comp):
        members.setdefault(c, []).append(i)

    fwd_all: dict[str, set[str]] = {s: set() for s in states}
    for t in aut.transitions:
        fwd_all[t.src].add(t.dst)
    reachable = {aut.initial}
    todo = deque([aut.initial])
    while todo:
        for nxt in fwd_all[todo.popleft()]:
            if nxt not in reachable:
                reachable.add(nxt)
                todo.append(nxt)

    has_consuming = {t.src for t in aut.transitions if t.read1 or t.read2}
    for nodes in members.values():
        cyc = [states[i] for i in nodes]
        if len(nodes) == 1 and idx[cyc[0]] not in adj[nodes[0]]:
            continue  # trivial component, no silent self-loop
        if not any(s in aut.accepting for s in cyc):
            continue
        if not any(s in reachable for s in cyc):
            continue
        seen = set(cyc)
        todo = deque(cyc)
        escapes = False
        while todo and not escapes:
            s = todo.popleft()
            if s in has_consuming:
                escapes = True
                break
            for nxt in eps_edges.get(s, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    todo.append(nxt)
        if not escapes:
            raise DegenerateAutomaton(
                f"accepting silent cycle through {sorted(set(cyc))} cannot consume input"
            )


@dataclass(frozen=True)
class RunPrefix:
    """Finite chain of transitions, starting at the automaton's initial state."""

    transitions: tuple[TwoTapeTransition, ...]

    def consumed1(self) -> str:
        return "".join(t.read1 for t in self.transitions)

    def consumed2(self) -> str:
        return "".join(t.read2 for t in self.transitions)

    def __len__(self) -> int:
        return len(self.transitions)


@dataclass(frozen=True)
class RunReport:
    transitions_ok: bool
    chaining_ok: bool
    tape1_ok: bool
    tape2_ok: bool
    accepting_visits: int
    consumed: tuple[int, int]
    problems: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return self.transitions_ok and self.chaining_ok and self.tape1_ok and self.tape2_ok


def run_prefix_valid(
    aut: TwoTapeAutomaton, run: RunPrefix, w1: OmegaWord, w2: OmegaWord
) -> RunReport:
    """Replay a run prefix against a word pair.

    Checks that the transitions exist and chain from the initial state and
    that the concatenated labels are prefixes of the two words.  Accepting
    visits count the states entered after each transition.
    """
    problems: list[str] = []
    known = set(aut.transitions)
    transitions_ok = all(t in known for t in run.transitions)
    if not transitions_ok:
        problems.append("run uses transitions not present in the automaton")

    chaining_ok = True
    here = aut.initial
    for t in run.transitions:
        if t.src != here:
            chaining_ok = False
            problems.append(f"transition {t} does not start at {here!r}")
            break
        here = t.dst

    u = run.consumed1()
    v = run.consumed2()
    tape1_ok = u == w1.prefix_of(len(u))
    if not tape1_ok:
        problems.append("tape-1 labels do not match the first word")
    tape2_ok = v == w2.prefix_of(len(v))
    if not tape2_ok:
        problems.append("tape-2 labels do not match the second word")

    visits = sum(1 for t in run.transitions if t.dst in aut.accepting)
    return RunReport(
        transitions_ok=transitions_ok,
        chaining_ok=chaining_ok,
        tape1_ok=tape1_ok,
        tape2_ok=tape2_ok,
        accepting_visits=visits,
        consumed=(len(u), len(v)),
        problems=tuple(problems),
    )


class Verdict(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Certificate:
    stem: RunPrefix
    cycle: RunPrefix


@dataclass(frozen=True)
class SearchStats:
    expansions: int
    fair_visits: int
    deepest: int
    frontier: int
    exhausted: bool


@dataclass(frozen=True)
class SearchOutcome:
    verdict: Verdict
    certificate: Certificate | None = None
    stats: SearchStats | None = None


class _Tape:
    """Normalized positions for one lasso tape: absolute in the prefix, phase in the period."""

    __slots__ = ("prefix", "period", "lp", "pp")

    def __init__(self, w: LassoWord):
        w = w.normal()
        self.prefix = w.prefix
        self.period = w.period
        self.lp = len(w.prefix)
        self.pp = len(w.period)

    def match(self, pos: int, label: str) -> int | None:
        prefix, period, lp, pp = self.prefix, self.period, self.lp, self.pp
        for ch in label:
            cur = prefix[pos] if pos < lp else period[pos - lp]
            if cur != ch:
                return None
            pos += 1
            if pos >= lp + pp:
                pos = lp + (pos - lp) % pp
        return pos


def accepts_lasso_pair(
    aut: TwoTapeAutomaton, w1: LassoWord, w2: LassoWord
) -> SearchOutcome:
    """Decide membership of an ultimately periodic pair; sound and complete.

    A pair is accepted iff the reachable part of the configuration graph
    has a strongly connected component containing an accepting-state
    configuration, an edge consuming at least one tape-1 letter and an
    edge consuming at least one tape-2 letter: inside one component those
    features always compose into a single fair cycle, and conversely any
    accepting run yields such a component.  Accepted verdicts carry a
    replayable stem-plus-cycle certificate.
    """
    aut.sigma1.check_word(w1.prefix + w1.period, "tape-1 word")
    aut.sigma2.check_word(w2.prefix + w2.period, "tape-2 word")
    t1 = _Tape(w1)
    t2 = _Tape(w2)

    start = (aut.initial, 0, 0)
    order: dict[tuple[str, int, int], int] = {start: 0}
    nodes = [start]
    out_edges: list[list[tuple[int, TwoTapeTransition]]] = [[]]
    queue = deque([start])
    while queue:
        cfg = queue.popleft()
        q, p1, p2 = cfg
        row = out_edges[order[cfg]]
        for t in aut.transitions_from(q):
            np1 = t1.match(p1, t.read1)
            if np1 is None:
                continue
            np2 = t2.match(p2, t.read2)
            if np2 is None:
                continue
            dst = (t.dst, np1, np2)
            j = order.get(dst)
            if j is None:
                j = len(nodes)
                order[dst] = j
                nodes.append(dst)
                out_edges.append([])
                queue.append(dst)
            row.append((j, t))

    comp = tarjan_scc(len(nodes), [[j for j, _ in row] for row in out_edges])
    members: dict[int, list[int]] = {}
    for i, c in enumerate(comp):
        members.setdefault(c, []).append(i)

    for c in sorted(members, key=lambda c: min(members[c])):
        nodeset = members[c]
        inside = set(nodeset)
        anchor = None
        for i in nodeset:  # discovery order: nodeset is ascending
            if nodes[i][0] in aut.accepting:
                anchor = i
                break
        if anchor is None:
            continue
        e1 = e2 = None
        for i in nodeset:
            for j, t in out_edges[i]:
                if j not in inside:
                    continue
                if e1 is None and t.read1:
                    e1 = (i, j, t)
                if e2 is None and t.read2:
                    e2 = (i, j, t)
        if e1 is None or e2 is None:
            continue
        stem = _bfs_edge_path(out_edges, 0, anchor, None)
        cycle = (
            _bfs_edge_path(out_edges, anchor, e1[0], inside)
            + [e1[2]]
            + _bfs_edge_path(out_edges, e1[1], e2[0], inside)
            + [e2[2]]
            + _bfs_edge_path(out_edges, e2[1], anchor, inside)
        )
        return SearchOutcome(
            verdict=Verdict.ACCEPTED,
            certificate=Certificate(
                stem=RunPrefix(tuple(stem)), cycle=RunPrefix(tuple(cycle))
            ),
        )
    return SearchOutcome(verdict=Verdict.REJECTED)


def _bfs_edge_path(
    out_edges: list[list[tuple[int, TwoTapeTransition]]],
    src: int,
    dst: int,
    allowed: set[int] | None,
) -> list[TwoTapeTransition]:
    if src == dst:
        return []
    parent: dict[int, tuple[int, TwoTapeTransition]] = {src: (-1, None)}  # type: ignore[dict-item]
    queue = deque([src])
    while queue:
        i = queue.popleft()
        for j, t in out_edges[i]:
            if allowed is not None and j not in allowed:
                continue
            if j in parent:
                continue
            parent[j] = (i, t)
            if j == dst:
                path: list[TwoTapeTransition] = []
                k = j
                while k != src:
                    k, tr = parent[k]
                    path.append(tr)
                path.reverse()
                return path
            queue.append(j)
    raise RuntimeError("path requested between unconnected configurations")


def bounded_run_search(
    aut: TwoTapeAutomaton, w1: OmegaWord, w2: OmegaWord, budget: int
) -> SearchOutcome:
    """Budgeted evidence search over (state, position, position) configurations.

    Deterministic best-first exploration that maximises balanced progress
    (the smaller of the two consumption counts); runs that stop consuming
    one tape freeze their rank and starve, so the whole budget flows into
    behaviours that keep consuming both words.  Accepting-visit counts
    propagate along explored edges as labels: a visit is counted when both
    tapes advanced since the previously counted visit, which is the fair
    evidence the statistics report.  Never returns Rejected; returns
    Accepted only when both inputs are lassos and the exact decision finds
    a certificate.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if isinstance(w1, LassoWord) and isinstance(w2, LassoWord):
        outcome = accepts_lasso_pair(aut, w1, w2)
        if outcome.verdict is Verdict.ACCEPTED:
            return outcome

    # per-configuration best label: (fair visits, anchor sum), more visits
    # first, smaller anchors (earlier counted visit) on ties
    best: dict[tuple[str, int, int], tuple[int, int]] = {}
    heap: list[tuple[int, int, int, tuple[str, int, int], tuple[int, int, int]]] = []
    seq = 0
    start = (aut.initial, 0, 0)
    best[start] = (0, 0)
    heapq.heappush(heap, (0, 0, seq, start, (0, 0, 0)))

    fair_visits = 0
    deepest = 0
    expansions = 0
    while heap and expansions < budget:
        _, _, _, cfg, label = heapq.heappop(heap)
        visits, a1, a2 = label
        cur = best.get(cfg)
        if cur is not None and (cur[0], -cur[1]) > (visits, -(a1 + a2)):
            continue  # a better label for this configuration was processed
        expansions += 1
        q, c1, c2 = cfg
        for t in aut.transitions_from(q):
            nc1 = _match_absolute(w1, c1, t.read1)
            if nc1 is None:
                continue
            nc2 = _match_absolute(w2, c2, t.read2)
            if nc2 is None:
                continue
            if t.dst in aut.accepting and nc1 > a1 and nc2 > a2:
                nlabel = (visits + 1, nc1, nc2)
            else:
                nlabel = (visits, a1, a2)
            dst = (t.dst, nc1, nc2)
            prev = best.get(dst)
            if prev is not None and (prev[0], -prev[1]) >= (nlabel[0], -(nlabel[1] + nlabel[2])):
                continue
            best[dst] = (nlabel[0], nlabel[1] + nlabel[2])
            fair_visits = max(fair_visits, nlabel[0])
            deepest = max(deepest, min(nc1, nc2))
            seq += 1
            heapq.heappush(heap, (-min(nc1, nc2), nc1 + nc2, seq, dst, nlabel))

    return SearchOutcome(
        verdict=Verdict.INCONCLUSIVE,
        stats=SearchStats(
            expansions=expansions,
            fair_visits=fair_visits,
            deepest=deepest,
            frontier=len(heap),
            exhausted=not heap,
        ),
    )


def _match_absolute(w: OmegaWord, consumed: int, label: str) -> int | None:
    for ch in label:
        if w.letter_at(consumed + 1) != ch:
            return None
        consumed += 1
    return consumed


def to_json(aut: TwoTapeAutomaton) -> str:
    doc = {
        "states": list(aut.states),
        "sigma1": str(aut.sigma1),
        "sigma2": str(aut.sigma2),
        "transitions": [[t.src, t.read1, t.read2, t.dst] for t in aut.transitions],
        "initial": aut.initial,
        "accepting": sorted(aut.accepting),
    }
    return json.dumps(doc, indent=2)


def from_json(text: str) -> TwoTapeAutomaton:
    doc = json.loads(text)
    aut = TwoTapeAutomaton(
        states=tuple(doc["states"]),
        sigma1=Alphabet.of(doc["sigma1"]),
        sigma2=Alphabet.of(doc["sigma2"]),
        transitions=tuple(TwoTapeTransition(*t) for t in doc["transitions"]),
        initial=doc["initial"],
        accepting=frozenset(doc["accepting"]),
    )
    validate(aut)
    return aut


def to_dot(aut: TwoTapeAutomaton) -> str:
    def lab(s: str) -> str:
        return s if s else "ε"

    lines = ["digraph twotape {", "  rankdir=LR;"]
    for s in aut.states:
        shape = "doublecircle" if s in aut.accepting else "circle"
        lines.append(f'  "{s}" [shape={shape}];')
    lines.append("  __start [shape=point];")
    lines.append(f'  __start -> "{aut.initial}";')
    for t in aut.transitions:
        lines.append(f'  "{t.src}" -> "{t.dst}" [label="{lab(t.read1)} / {lab(t.read2)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
