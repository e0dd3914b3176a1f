"""One-tape Buchi automata and lasso membership.

Covers exactly what the reference constructions need: letter-labelled
transitions, the two fixed machines for "infinitely many 1s" and its
complement, and a sound and complete membership decision for ultimately
periodic words.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._scc import tarjan_scc
from .words import Alphabet, BINARY, LassoWord


@dataclass(frozen=True)
class BuchiAutomaton:
    states: tuple[str, ...]
    alphabet: Alphabet
    transitions: tuple[tuple[str, str, str], ...]  # (source, letter, target)
    initial: str
    accepting: frozenset[str]

    def __post_init__(self):
        states = set(self.states)
        if self.initial not in states:
            raise ValueError("initial state not among states")
        if not self.accepting <= states:
            raise ValueError("accepting states not among states")
        for src, ch, dst in self.transitions:
            if src not in states or dst not in states:
                raise ValueError(f"transition endpoint outside states: {(src, ch, dst)}")
            if ch not in self.alphabet:
                raise ValueError(f"transition letter outside alphabet: {(src, ch, dst)}")


def ones_automaton(complement: bool = False) -> BuchiAutomaton:
    """Buchi automaton over {0,1} for words with infinitely many 1s.

    With ``complement=True``, the machine instead recognizes words with
    finitely many 1s, by nondeterministically guessing a position after
    the last 1 and then insisting on 0s forever.
    """
    if not complement:
        return BuchiAutomaton(
            states=("seen0", "seen1"),
            alphabet=BINARY,
            transitions=(
                ("seen0", "0", "seen0"),
                ("seen0", "1", "seen1"),
                ("seen1", "0", "seen0"),
                ("seen1", "1", "seen1"),
            ),
            initial="seen0",
            accepting=frozenset({"seen1"}),
        )
    return BuchiAutomaton(
        states=("guess", "final"),
        alphabet=BINARY,
        transitions=(
            ("guess", "0", "guess"),
            ("guess", "1", "guess"),
            ("guess", "0", "final"),
            ("final", "0", "final"),
        ),
        initial="guess",
        accepting=frozenset({"final"}),
    )


def _positions(w: LassoWord) -> tuple[str, str, int, int]:
    w = w.normal()
    return w.prefix, w.period, len(w.prefix), len(w.period)


def buchi_accepts_lasso(aut: BuchiAutomaton, w: LassoWord) -> bool:
    """Membership of an ultimately periodic word.

    Works on the finite graph of (state, position) pairs, where a position
    is absolute inside the lasso prefix and a phase inside the period.
    The word is accepted iff some accepting pair reachable from the start
    lies on a cycle; cycles can only live in the periodic region, since
    prefix positions never repeat.
    """
    prefix, period, lp, pp = _positions(w)
    aut.alphabet.check_word(prefix + period, "lasso")

    by_src: dict[str, list[tuple[str, str]]] = {}
    for src, ch, dst in sorted(aut.transitions):
        by_src.setdefault(src, []).append((ch, dst))

    def letter(pos: int) -> str:
        return prefix[pos] if pos < lp else period[pos - lp]

    def step(pos: int) -> int:
        pos += 1
        return pos if pos < lp + pp else lp + (pos - lp) % pp

    start = (aut.initial, 0)
    index: dict[tuple[str, int], int] = {start: 0}
    adj: list[list[int]] = [[]]
    frontier = [start]
    nodes = [start]
    while frontier:
        nxt: list[tuple[str, int]] = []
        for cfg in frontier:
            q, pos = cfg
            ch = letter(pos)
            row = adj[index[cfg]]
            for label, dst in by_src.get(q, ()):  # deterministic order
                if label != ch:
                    continue
                target = (dst, step(pos))
                if target not in index:
                    index[target] = len(nodes)
                    nodes.append(target)
                    adj.append([])
                    nxt.append(target)
                row.append(index[target])
        frontier = nxt

    comp = tarjan_scc(len(nodes), adj)
    members: dict[int, list[int]] = {}
    for node, c in enumerate(comp):
        members.setdefault(c, []).append(node)
    for c, nodeset in members.items():
        if not any(nodes[i][0] in aut.accepting for i in nodeset):
            continue
        inside = set(nodeset)
        if len(nodeset) > 1 or any(t in inside for t in adj[nodeset[0]]):
            return True
    return False


def to_json(aut: BuchiAutomaton) -> str:
    import json

    doc = {
        "states": list(aut.states),
        "alphabet": str(aut.alphabet),
        "transitions": [list(t) for t in sorted(aut.transitions)],
        "initial": aut.initial,
        "accepting": sorted(aut.accepting),
    }
    return json.dumps(doc, indent=2)


def to_dot(aut: BuchiAutomaton) -> str:
    lines = ["digraph buchi {", "  rankdir=LR;"]
    for s in aut.states:
        shape = "doublecircle" if s in aut.accepting else "circle"
        lines.append(f'  "{s}" [shape={shape}];')
    lines.append('  __start [shape=point];')
    lines.append(f'  __start -> "{aut.initial}";')
    for src, ch, dst in sorted(aut.transitions):
        lines.append(f'  "{src}" -> "{dst}" [label="{ch}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
