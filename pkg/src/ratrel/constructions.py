"""The built-in reference relation family and its verification machinery.

The centrepiece is a six-state two-tape automaton T whose accepting runs
track pairs of A-separated block words where the second tape carries only
zeros between separators, block splits are linked by a unit-step ledger,
and an accepting state is visited exactly when the zero-buffer is allowed
to grow.  Around it live the complement pieces C1..C5 (everything that is
not a coded grid paired with the fixed word alpha), their union R2, the
full relation R, the decomposition enumerator and the run-schema builder
that witnesses membership for coded grids whose columns die out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import lcm

from .grid import GridWord, antidiagonal, encode_h, in_P
from .twotape import (
    RunPrefix,
    TwoTapeAutomaton,
    TwoTapeTransition,
    run_prefix_valid,
    union,
)
from .words import BlockWord, GAMMA, LassoWord, OmegaWord

SIGMA = "01"


class NotInP(ValueError):
    """The grid has a column with infinitely many 1s; no run schema exists."""


class UnknownShape(ValueError):
    """A block word without a grid tag cannot be classified."""


class UndecidableCondition(ValueError):
    """No search bound can be established for this word shape."""


def alpha() -> BlockWord:
    """The fixed word A.0.A.00.A.000..., i.e. the coded all-zero grid."""
    return BlockWord(
        block_fn=lambda n: "0" * n,
        block_len_fn=lambda n: n,
        h_source=GridWord.zero(),
    )


@lru_cache(maxsize=None)
def automaton_T() -> TwoTapeAutomaton:
    """The six-state reference automaton; accepting state q4 marks growth steps."""
    T = TwoTapeTransition
    transitions = [
        T("q0", "A", "A", "q0"),
        T("q0", "A", "A", "q1"),
        T("q1", "", "", "q2"),
        T("q2", "A", "", "q3"),
        T("q3", "", "", "q4"),
        T("q4", "", "A", "q2"),
        T("q5", "", "A", "q2"),
    ]
    for a in SIGMA:
        transitions += [
            T("q0", a, "", "q0"),
            T("q0", "", a, "q0"),
            T("q1", a, "", "q1"),
            T("q2", a, "0", "q2"),
            T("q3", a, "0", "q3"),
            T("q3", a, "", "q5"),
        ]
    return TwoTapeAutomaton(
        states=("q0", "q1", "q2", "q3", "q4", "q5"),
        sigma1=GAMMA,
        sigma2=GAMMA,
        transitions=tuple(transitions),
        initial="q0",
        accepting=frozenset({"q4"}),
    )


# ---------------------------------------------------------------------------
# Decompositions: the block ledger for pairs (coded grid, alpha).


def _column_last_one(x: GridWord, j: int) -> int | None:
    """Last row of column j carrying a 1; None when the period has 1s (infinitely many)."""
    col = x.column(j).normal()
    if "1" in col.period:
        return None
    idx = col.prefix.rfind("1")
    return idx + 1 if idx >= 0 else 0


def _safe_cap(x: GridWord, k: int, n: int) -> int:
    """Largest zero-buffer length usable at block n and every later block.

    Length ell is safe iff every column j <= ell is permanently zero from
    row k+n-j on; a buffer below this cap can be kept (or grown into the
    cap) forever, and conversely any infinite ledger must stay below it.
    """
    cap = 0
    while cap + 1 <= k + n - 1:
        last = _column_last_one(x, cap + 1)
        if last is None or last + (cap + 1) >= k + n:
            break
        cap += 1
    return cap


@dataclass(frozen=True)
class Decomposition:
    """Prefix of a block ledger: k plus the split sizes s_n = |u_n|.

    Derived per the ledger arithmetic: |v_n| = k+n-1-s_n, |w_n| = |v_n|,
    |z_n| = s_n, and consecutive splits satisfy s_{n+1} in {s_n, s_n+1}.
    A growth step is an index with s_{n+1} = s_n, i.e. the buffer grows.
    """

    k: int
    splits: tuple[int, ...]

    def v_len(self, n: int) -> int:
        return self.k + n - 1 - self.splits[n - 1]

    @property
    def depth(self) -> int:
        return len(self.splits)

    @property
    def growth_steps(self) -> int:
        return sum(
            1 for i in range(len(self.splits) - 1) if self.splits[i + 1] == self.splits[i]
        )

    @property
    def final_v(self) -> int:
        return self.v_len(self.depth)


@dataclass(frozen=True)
class DecompositionSearch:
    branches: tuple[Decomposition, ...]

    @property
    def branch_count(self) -> int:
        return len(self.branches)

    @property
    def max_growth_steps(self) -> int:
        return max((b.growth_steps for b in self.branches), default=0)

    @property
    def max_final_v(self) -> int:
        return max((b.final_v for b in self.branches), default=0)


def build_decompositions(x: GridWord, depth: int, k_max: int) -> DecompositionSearch:
    """All ledger prefixes of the given depth for the pair (coded x, alpha).

    Enumerates every k <= k_max and every unit-step split sequence whose
    zero-buffers stay within the permanent-safety cap; this keeps exactly
    the prefixes of infinite ledgers, so depth-local accidents (a buffer
    grown into a column that turns 1 later) do not appear as branches.
    """
    if depth < 1 or k_max < 1:
        raise ValueError("depth and k_max must be >= 1")
    branches: list[Decomposition] = []
    for k in range(1, k_max + 1):
        caps = [_safe_cap(x, k, n) for n in range(1, depth + 1)]
        stack: list[tuple[int, tuple[int, ...]]] = []
        for v1 in range(min(k, caps[0]) + 1):
            stack.append((1, (v1,)))
        while stack:
            n, vs = stack.pop()
            if n == depth:
                splits = tuple(k + i - 1 - vs[i - 1] for i in range(1, depth + 1))
                branches.append(Decomposition(k, splits))
                continue
            v = vs[-1]
            stack.append((n + 1, vs + (v,)))
            if v + 1 <= caps[n]:
                stack.append((n + 1, vs + (v + 1,)))
    branches.sort(key=lambda d: (d.k, d.splits))
    return DecompositionSearch(tuple(branches))


def decomposition_valid(x: GridWord, dec: Decomposition) -> bool:
    """Replay a ledger prefix against the grid from first principles."""
    k = dec.k
    if k < 1:
        return False
    prev = None
    for n in range(1, dec.depth + 1):
        s = dec.splits[n - 1]
        if not 0 <= s <= k + n - 1:
            return False
        if prev is not None and s not in (prev, prev + 1):
            return False
        block = antidiagonal(x, k + n)
        if any(ch != "0" for ch in block[s:]):
            return False
        prev = s
    return True


# ---------------------------------------------------------------------------
# Run schemas: constructive witnesses for grids whose columns die out.


@dataclass(eq=False)
class RunSchema:
    """Greedy ledger for (coded grid, alpha) with growth at the earliest safe block.

    The buffer grows to length ell once every column <= ell is permanently
    zero at the rows the buffer will cover; because each column has a last
    1, every length becomes safe eventually, so growth happens infinitely
    often.
    """

    grid: GridWord
    k: int = 1
    _v: list[int] = field(default_factory=list, repr=False)

    def v_len(self, n: int) -> int:
        while len(self._v) < n:
            m = len(self._v) + 1
            cap = _safe_cap(self.grid, self.k, m)
            prev = self._v[-1] if self._v else min(self.k, cap)
            self._v.append(prev if m == 1 else min(prev + 1, cap))
        return self._v[n - 1]

    def split(self, n: int) -> int:
        return self.k + n - 1 - self.v_len(n)

    def growth_at(self, n: int) -> bool:
        return self.v_len(n + 1) == self.v_len(n) + 1

    def growth_steps(self, blocks: int) -> int:
        return sum(1 for n in range(1, blocks + 1) if self.growth_at(n))


def build_run_schema(x: GridWord) -> RunSchema:
    if not in_P(x):
        raise NotInP("some column carries infinitely many 1s")
    return RunSchema(x)


def schema_to_run(schema: RunSchema, blocks: int) -> RunPrefix:
    """Explicit transition sequence of the reference automaton for the schema.

    Covers the opening ledger chunk plus the first ``blocks`` block cycles;
    the accepting state is entered exactly at growth steps.
    """
    if blocks < 0:
        raise ValueError("block count must be >= 0")
    if schema.k != 1:
        raise ValueError("run generation expects the builder's ledger offset k = 1")
    x = schema.grid
    k = schema.k
    T = TwoTapeTransition
    run: list[TwoTapeTransition] = [T("q0", "A", "A", "q1")]
    if blocks == 0:
        return RunPrefix(tuple(run))

    u1 = antidiagonal(x, k + 1)[: schema.split(1)]
    run.extend(T("q1", ch, "", "q1") for ch in u1)
    run.append(T("q1", "", "", "q2"))
    for n in range(1, blocks + 1):
        block = antidiagonal(x, k + n)
        s = schema.split(n)
        v = block[s:]
        if "1" in v:
            raise RuntimeError("schema produced a non-zero buffer")
        run.extend(T("q2", ch, "0", "q2") for ch in v)
        run.append(T("q2", "A", "", "q3"))
        nxt = antidiagonal(x, k + n + 1)
        run.extend(T("q3", nxt[i], "0", "q3") for i in range(s))
        if schema.growth_at(n):
            run.append(T("q3", "", "", "q4"))
            run.append(T("q4", "", "A", "q2"))
        else:
            run.append(T("q3", nxt[s], "", "q5"))
            run.append(T("q5", "", "A", "q2"))
    return RunPrefix(tuple(run))


def grid_pair_in_r1(x: GridWord, check_blocks: int = 50) -> bool:
    """Whether (coded x, alpha) belongs to the ledger relation R1.

    Decided through the column predicate; positive answers additionally
    build a run schema and replay a truncation through the reference
    automaton as defence in depth.
    """
    if not in_P(x):
        return False
    schema = build_run_schema(x)
    report = run_prefix_valid(
        automaton_T(), schema_to_run(schema, check_blocks), encode_h(x), alpha()
    )
    if not report.ok:
        raise RuntimeError(f"schema replay failed: {report.problems}")
    return True


# ---------------------------------------------------------------------------
# The complement pieces C1..C5 and the unions R2 and R.


@lru_cache(maxsize=None)
def c_automaton(j: int) -> TwoTapeAutomaton:
    """Automaton for the j-th complement piece, j in 1..5.

    C1: some tape has finitely many As.  C2: some tape does not start with
    the shape A.s.A.ss.A.  C3: the second tape contains a 1.  C4: after a
    common count of blocks, the next blocks differ in length.  C5: after a
    common count of blocks and one extra block on tape 1, the compared
    block lengths break the +1 ladder.
    """
    T = TwoTapeTransition
    if j == 1:
        transitions = []
        for a in GAMMA.letters:
            transitions += [
                T("pick", a, "", "pick"),
                T("pick", "", a, "pick"),
                T("pick", a, "", "drop1"),
                T("pick", "", a, "drop2"),
                T("drop1", "", a, "drop1"),
                T("drop2", a, "", "drop2"),
            ]
        for a in SIGMA:
            transitions += [T("drop1", a, "", "drop1"), T("drop2", "", a, "drop2")]
        return _gamma_automaton(
            ("pick", "drop1", "drop2"), transitions, "pick", {"drop1", "drop2"}
        )
    if j == 2:
        expected = ["A", "01", "A", "01", "01", "A"]
        transitions = []
        chain1 = ["root", "t1", "t2", "t3", "t4", "t5"]
        chain2 = ["root", "s1", "s2", "s3", "s4", "s5"]
        for chain, tape in ((chain1, 1), (chain2, 2)):
            for i, state in enumerate(chain):
                for a in GAMMA.letters:
                    if a in expected[i]:
                        if i + 1 < 6:
                            dst = chain[i + 1]
                        else:
                            continue  # a fully conforming prefix never reaches the sink
                    else:
                        dst = "sink"
                    if tape == 1:
                        transitions.append(T(state, a, "", dst))
                    else:
                        transitions.append(T(state, "", a, dst))
        for a in GAMMA.letters:
            transitions += [T("sink", a, "", "sink"), T("sink", "", a, "sink")]
        states = ("root", "t1", "t2", "t3", "t4", "t5", "s1", "s2", "s3", "s4", "s5", "sink")
        return _gamma_automaton(states, transitions, "root", {"sink"})
    if j == 3:
        transitions = [T("scan", "", "1", "hot")]
        for a in GAMMA.letters:
            transitions += [
                T("scan", a, "", "scan"),
                T("scan", "", a, "scan"),
                T("hot", a, "", "hot"),
                T("hot", "", a, "hot"),
            ]
        return _gamma_automaton(("scan", "hot"), transitions, "scan", {"hot"})
    if j == 4:
        transitions = [
            T("start", "A", "A", "blocks"),
            T("blocks", "A", "A", "blocks"),
            T("blocks", "A", "A", "cmp"),
            T("more2", "", "A", "tail"),
            T("more1", "A", "", "tail"),
        ]
        for a in SIGMA:
            transitions += [
                T("blocks", a, "", "blocks"),
                T("blocks", "", a, "blocks"),
                T("cmp", "A", a, "more2"),
                T("cmp", a, "A", "more1"),
                T("more2", "", a, "more2"),
                T("more1", a, "", "more1"),
            ]
            for b in SIGMA:
                transitions.append(T("cmp", a, b, "cmp"))
        for a in GAMMA.letters:
            transitions += [T("tail", a, "", "tail"), T("tail", "", a, "tail")]
        states = ("start", "blocks", "cmp", "more1", "more2", "tail")
        return _gamma_automaton(states, transitions, "start", {"tail"})
    if j == 5:
        transitions = [
            T("start", "A", "A", "blocks"),
            T("blocks", "A", "A", "blocks"),
            T("blocks", "A", "A", "skip"),
            T("skip", "A", "", "cmp"),
            T("cmp", "A", "A", "tail"),
            T("lag2", "", "A", "tail"),
            T("lead1b", "A", "", "tail"),
        ]
        for a in SIGMA:
            transitions += [
                T("blocks", a, "", "blocks"),
                T("blocks", "", a, "blocks"),
                T("skip", a, "", "skip"),
                T("cmp", "A", a, "lag2"),
                T("cmp", a, "A", "lead1"),
                T("lag2", "", a, "lag2"),
                T("lead1", a, "", "lead1b"),
                T("lead1b", a, "", "lead1b"),
            ]
            for b in SIGMA:
                transitions.append(T("cmp", a, b, "cmp"))
        for a in GAMMA.letters:
            transitions += [T("tail", a, "", "tail"), T("tail", "", a, "tail")]
        states = ("start", "blocks", "skip", "cmp", "lag2", "lead1", "lead1b", "tail")
        return _gamma_automaton(states, transitions, "start", {"tail"})
    raise ValueError("complement pieces are numbered 1..5")


def _gamma_automaton(states, transitions, initial, accepting) -> TwoTapeAutomaton:
    return TwoTapeAutomaton(
        states=tuple(states),
        sigma1=GAMMA,
        sigma2=GAMMA,
        transitions=tuple(transitions),
        initial=initial,
        accepting=frozenset(accepting),
    )


@lru_cache(maxsize=None)
def r2_automaton() -> TwoTapeAutomaton:
    """Union of the five complement pieces."""
    aut = c_automaton(1)
    for j in range(2, 6):
        aut = union(aut, c_automaton(j))
    return aut


@lru_cache(maxsize=None)
def r_automaton() -> TwoTapeAutomaton:
    """The full reference relation: ledger relation plus complement pieces."""
    return union(automaton_T(), r2_automaton())


# ---------------------------------------------------------------------------
# Structural complement conditions (automaton-independent evaluation).


@dataclass(frozen=True)
class BlockProfile:
    """A-separated block structure of a word.

    kind "layout": blocks of length 1,2,3,... (coded grids and alpha);
    kind "finite": finitely many separators, only complete blocks listed;
    kind "cyclic": eventually periodic block lengths, transient + cycle.
    """

    leading_a: bool
    kind: str
    lengths: tuple[int, ...] = ()
    cycle: tuple[int, ...] = ()

    def block_len(self, n: int) -> int | None:
        if n < 1:
            raise ValueError("blocks are 1-based")
        if self.kind == "layout":
            return n
        if n <= len(self.lengths):
            return self.lengths[n - 1]
        if self.kind == "cyclic":
            return self.cycle[(n - len(self.lengths) - 1) % len(self.cycle)]
        return None

    def bounded(self) -> int:
        return max(self.lengths + self.cycle, default=0)


def block_profile(w: OmegaWord) -> BlockProfile:
    if isinstance(w, BlockWord):
        if any(w.block_len_fn(n) != n for n in range(1, 9)):
            raise UndecidableCondition("block word outside the 1,2,3,... layout")
        return BlockProfile(leading_a=True, kind="layout")
    w = w.normal()
    lp, pp = len(w.prefix), len(w.period)
    leading_a = w.letter_at(1) == "A"
    if "A" not in w.period:
        a_positions = [i + 1 for i, ch in enumerate(w.prefix) if ch == "A"]
        lengths = tuple(
            a_positions[i + 1] - a_positions[i] - 1 for i in range(len(a_positions) - 1)
        )
        return BlockProfile(leading_a=leading_a, kind="finite", lengths=lengths)

    def next_a(pos: int) -> int:
        while w.letter_at(pos) != "A":
            pos += 1
        return pos

    lengths: list[int] = []
    seen_phase: dict[int, int] = {}
    prev = next_a(1)
    while True:
        start = prev + 1
        if start > lp:
            phase = (start - lp - 1) % pp
            if phase in seen_phase:
                i = seen_phase[phase]
                return BlockProfile(
                    leading_a=leading_a,
                    kind="cyclic",
                    lengths=tuple(lengths[:i]),
                    cycle=tuple(lengths[i:]),
                )
            seen_phase[phase] = len(lengths)
        nxt = next_a(start)
        lengths.append(nxt - start)
        prev = nxt


def _finitely_many_a(w: OmegaWord) -> bool:
    if isinstance(w, BlockWord):
        return False
    return "A" not in w.normal().period


def _conforming_opening(w: OmegaWord) -> bool:
    p = w.prefix_of(6)
    return (
        p[0] == "A"
        and p[1] in SIGMA
        and p[2] == "A"
        and p[3] in SIGMA
        and p[4] in SIGMA
        and p[5] == "A"
    )


def _contains_one(w: OmegaWord) -> bool:
    if isinstance(w, LassoWord):
        return "1" in w.letters()
    x = w.h_source
    if not isinstance(x, GridWord):
        raise UndecidableCondition("untagged block word: letter inventory unknown")
    return "1" in x.default_column.letters() or any(
        "1" in col.letters() for col in x.overrides.values()
    )


def _exists_block_mismatch(
    p1: BlockProfile, p2: BlockProfile, off1: int, off2: int, delta: int
) -> bool:
    """Whether some n >= 1 has blocks n+off1 / n+off2 defined with L1 != L2 + delta."""
    if p1.kind == "layout" and p2.kind == "layout":
        return off1 != off2 + delta
    if p1.kind == "cyclic" and p2.kind == "cyclic":
        horizon = (
            max(len(p1.lengths), len(p2.lengths))
            + lcm(len(p1.cycle), len(p2.cycle))
            + max(off1, off2)
        )
    else:
        horizon = (
            len(p1.lengths)
            + len(p2.lengths)
            + len(p1.cycle)
            + len(p2.cycle)
            + max(p1.bounded(), p2.bounded())
            + max(off1, off2)
            + 2
        )
    for n in range(1, horizon + 1):
        l1 = p1.block_len(n + off1)
        l2 = p2.block_len(n + off2)
        if l1 is None or l2 is None:
            return False
        if l1 != l2 + delta:
            return True
    return False


def c_condition_holds(j: int, w1: OmegaWord, w2: OmegaWord) -> bool:
    """Evaluate the defining condition of complement piece j directly."""
    if j == 1:
        return _finitely_many_a(w1) or _finitely_many_a(w2)
    if j == 2:
        return not _conforming_opening(w1) or not _conforming_opening(w2)
    if j == 3:
        return _contains_one(w2)
    if j in (4, 5):
        p1 = block_profile(w1)
        p2 = block_profile(w2)
        if not (p1.leading_a and p2.leading_a):
            return False
        if j == 4:
            return _exists_block_mismatch(p1, p2, 1, 1, 0)
        return _exists_block_mismatch(p1, p2, 2, 1, 1)
    raise ValueError("complement pieces are numbered 1..5")


# ---------------------------------------------------------------------------
# The distinguished section and the reduction.


def in_alpha_section(w: OmegaWord) -> bool:
    """Membership in the one nontrivial section of the reference relation.

    Lassos are never coded grids (coded block lengths grow strictly, a
    lasso's block structure is eventually periodic), so they all belong.
    Tagged block words delegate to the column predicate of their grid.
    """
    if isinstance(w, LassoWord):
        return True
    x = w.h_source
    if isinstance(x, GridWord):
        return in_P(x)
    raise UnknownShape("block word without a grid tag")


def grid_pair(x: GridWord) -> tuple[BlockWord, BlockWord]:
    """The canonical reduction of a grid: its coded word paired with alpha."""
    return encode_h(x), alpha()


def section_member(sigma: LassoWord, u: LassoWord) -> bool:
    """Whether (sigma, u) lies in the reference relation, for lasso inputs.

    Always true: every section at an ultimately periodic second component
    is full, because such a word is never the fixed word alpha.
    """
    GAMMA.check_word(sigma.letters(), "first component")
    GAMMA.check_word(u.letters(), "second component")
    return True
