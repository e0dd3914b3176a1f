"""Embedded property suite behind the CLI ``verify`` verb.

Each check re-derives expected behaviour from an independent angle
(closure matrices instead of component analysis, direct letter scans
instead of the decision procedures) and runs on seeded random instances,
so a single command can exercise the grid, two-tape and construction
layers without the development test harness.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .buchi import buchi_accepts_lasso, ones_automaton
from .constructions import (
    alpha,
    automaton_T,
    build_decompositions,
    build_run_schema,
    c_condition_holds,
    grid_pair,
    grid_pair_in_r1,
    in_alpha_section,
    r2_automaton,
    r_automaton,
    schema_to_run,
)
from .grid import GridWord, decode_h_prefix, encode_h, grid_distance_exponent, in_P
from .twotape import (
    RunPrefix,
    TwoTapeAutomaton,
    TwoTapeTransition,
    Verdict,
    accepts_lasso_pair,
    epsilon_normalize,
    run_prefix_valid,
    union,
)
from .words import BINARY, LassoWord, lasso_equal


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def random_lasso(rng: random.Random, letters: str, max_prefix: int = 3, max_period: int = 3) -> LassoWord:
    prefix = "".join(rng.choice(letters) for _ in range(rng.randint(0, max_prefix)))
    period = "".join(rng.choice(letters) for _ in range(rng.randint(1, max_period)))
    return LassoWord(prefix, period)


def random_grid(rng: random.Random, ensure_in_p: bool) -> GridWord:
    def col() -> LassoWord:
        prefix = "".join(rng.choice("01") for _ in range(rng.randint(0, 4)))
        if ensure_in_p:
            return LassoWord(prefix, "0")
        period = "".join(rng.choice("01") for _ in range(rng.randint(1, 3)))
        return LassoWord(prefix, period)

    overrides = {}
    for _ in range(rng.randint(0, 3)):
        overrides[rng.randint(1, 6)] = col()
    return GridWord(col(), overrides)


def random_small_automaton(rng: random.Random) -> TwoTapeAutomaton:
    n = rng.randint(1, 3)
    states = tuple(f"s{i}" for i in range(n))
    labels = ["", "0", "1"]
    transitions = []
    for _ in range(rng.randint(1, 2 * n + 2)):
        transitions.append(
            TwoTapeTransition(
                rng.choice(states), rng.choice(labels), rng.choice(labels), rng.choice(states)
            )
        )
    accepting = frozenset(s for s in states if rng.random() < 0.5)
    return TwoTapeAutomaton(states, BINARY, BINARY, tuple(set(transitions)), states[0], accepting)


def _closure_accepts_pair(aut: TwoTapeAutomaton, w1: LassoWord, w2: LassoWord) -> bool:
    """Reachability-matrix reference for the lasso decision (no SCC machinery)."""
    w1 = w1.normal()
    w2 = w2.normal()
    lp1, pp1 = len(w1.prefix), len(w1.period)
    lp2, pp2 = len(w2.prefix), len(w2.period)

    def letter(w, lp, pos):
        return w.prefix[pos] if pos < lp else w.period[pos - lp]

    def consume(w, lp, pp, pos, label):
        for ch in label:
            if letter(w, lp, pos) != ch:
                return None
            pos += 1
            if pos >= lp + pp:
                pos = lp + (pos - lp) % pp
        return pos

    nodes = [
        (q, p1, p2)
        for q in aut.states
        for p1 in range(lp1 + pp1)
        for p2 in range(lp2 + pp2)
    ]
    idx = {n: i for i, n in enumerate(nodes)}
    edges = []
    succ: list[set[int]] = [set() for _ in nodes]
    for q, p1, p2 in nodes:
        for t in aut.transitions_from(q):
            n1 = consume(w1, lp1, pp1, p1, t.read1)
            n2 = consume(w2, lp2, pp2, p2, t.read2)
            if n1 is None or n2 is None:
                continue
            a = idx[(q, p1, p2)]
            b = idx[(t.dst, n1, n2)]
            succ[a].add(b)
            edges.append((a, b, len(t.read1), len(t.read2)))

    def reach_from(a: int) -> set[int]:
        seen = {a}
        todo = [a]
        while todo:
            for b in succ[todo.pop()]:
                if b not in seen:
                    seen.add(b)
                    todo.append(b)
        return seen

    start = idx[(aut.initial, 0, 0)]
    from_start = reach_from(start)
    reach_cache: dict[int, set[int]] = {}

    def reach(a: int) -> set[int]:
        if a not in reach_cache:
            reach_cache[a] = reach_from(a)
        return reach_cache[a]

    for c in from_start:
        if nodes[c][0] not in aut.accepting:
            continue
        mutual = {b for b in reach(c) if c in reach(b)}
        has1 = any(a in mutual and b in mutual and k1 > 0 for a, b, k1, _ in edges)
        has2 = any(a in mutual and b in mutual and k2 > 0 for a, b, _, k2 in edges)
        if has1 and has2:
            return True
    return False


def _checks(seed: int, trials: int):
    rng = random.Random(seed)

    def check_lasso_normalization():
        for _ in range(trials):
            a = random_lasso(rng, "01A")
            b = LassoWord(a.prefix + a.period, a.period)  # same word, shifted description
            c = LassoWord(a.prefix, a.period * 2)
            assert lasso_equal(a, b) and lasso_equal(a, c)
            n = a.normal()
            assert a.prefix_of(20) == n.prefix_of(20)

    def check_ones_automaton():
        aut = ones_automaton(False)
        comp = ones_automaton(True)
        for _ in range(trials):
            w = random_lasso(rng, "01")
            expected = "1" in w.normal().period
            assert buchi_accepts_lasso(aut, w) == expected
            assert buchi_accepts_lasso(comp, w) == (not expected)

    def check_coding_round_trip():
        for _ in range(trials):
            x = random_grid(rng, ensure_in_p=False)
            text = encode_h(x).prefix_of(180)
            for (m, n), ch in decode_h_prefix(text).items():
                assert x.entry(m, n) == ch

    def check_coding_identity():
        assert encode_h(GridWord.zero()).prefix_of(2000) == alpha().prefix_of(2000)

    def check_metric_bounds():
        done = 0
        while done < trials:
            x = random_grid(rng, ensure_in_p=False)
            y = random_grid(rng, ensure_in_p=False)
            p = grid_distance_exponent(x, y)
            if p is None:
                continue
            done += 1
            agree = (p - 1) * p // 2
            separate = p * (p + 1) // 2
            assert encode_h(x).prefix_of(agree) == encode_h(y).prefix_of(agree)
            assert encode_h(x).prefix_of(separate) != encode_h(y).prefix_of(separate)

    def check_column_predicate():
        comp = ones_automaton(True)
        for _ in range(trials):
            x = random_grid(rng, ensure_in_p=rng.random() < 0.5)
            via_automaton = all(buchi_accepts_lasso(comp, col) for col in x.columns())
            assert in_P(x) == via_automaton

    def check_pair_decision_reference():
        for _ in range(trials):
            aut = random_small_automaton(rng)
            w1 = random_lasso(rng, "01", 2, 2)
            w2 = random_lasso(rng, "01", 2, 2)
            got = accepts_lasso_pair(aut, w1, w2).verdict is Verdict.ACCEPTED
            assert got == _closure_accepts_pair(aut, w1, w2)

    def check_union_law():
        for _ in range(trials):
            a = random_small_automaton(rng)
            b = random_small_automaton(rng)
            u = union(a, b)
            assert len(u.states) == len(a.states) + len(b.states) + 1
            w1 = random_lasso(rng, "01", 2, 2)
            w2 = random_lasso(rng, "01", 2, 2)
            lhs = accepts_lasso_pair(u, w1, w2).verdict is Verdict.ACCEPTED
            rhs = (
                accepts_lasso_pair(a, w1, w2).verdict is Verdict.ACCEPTED
                or accepts_lasso_pair(b, w1, w2).verdict is Verdict.ACCEPTED
            )
            assert lhs == rhs

    def check_silent_normalization():
        plain = epsilon_normalize(automaton_T())
        assert all(t.read1 or t.read2 for t in plain.transitions)
        for _ in range(trials):
            w1 = random_lasso(rng, "01A")
            w2 = random_lasso(rng, "01A")
            assert (
                accepts_lasso_pair(plain, w1, w2).verdict
                is accepts_lasso_pair(automaton_T(), w1, w2).verdict
            )

    def check_schema_replay():
        for _ in range(max(5, trials // 4)):
            x = random_grid(rng, ensure_in_p=True)
            schema = build_run_schema(x)
            run = schema_to_run(schema, 40)
            report = run_prefix_valid(automaton_T(), run, encode_h(x), alpha())
            assert report.ok
            assert report.accepting_visits == schema.growth_steps(40)
            assert grid_pair_in_r1(x)

    def check_blocked_growth():
        for _ in range(max(5, trials // 4)):
            period = "".join(rng.choice("01") for _ in range(rng.randint(1, 3)))
            if "1" not in period:
                period += "1"
            x = GridWord(LassoWord("", "0"), {1: LassoWord("", period)})
            found = build_decompositions(x, depth=20, k_max=3)
            assert found.branch_count >= 1
            assert found.max_growth_steps == 0

    def check_complement_structure():
        for _ in range(max(5, trials // 4)):
            x = random_grid(rng, ensure_in_p=rng.random() < 0.5)
            pair = grid_pair(x)
            assert all(not c_condition_holds(j, *pair) for j in range(1, 6))

    def check_complement_coverage():
        r2 = r2_automaton()
        for _ in range(trials):
            w1 = random_lasso(rng, "01A")
            w2 = random_lasso(rng, "01A")
            verdict = accepts_lasso_pair(r2, w1, w2).verdict is Verdict.ACCEPTED
            structural = any(c_condition_holds(j, w1, w2) for j in range(1, 6))
            assert verdict and structural

    def check_section_law():
        r = r_automaton()
        for _ in range(trials):
            sigma = random_lasso(rng, "01A")
            u = random_lasso(rng, "01A")
            assert accepts_lasso_pair(r, sigma, u).verdict is Verdict.ACCEPTED
            assert in_alpha_section(sigma)

    def check_certificates():
        for _ in range(trials):
            aut = random_small_automaton(rng)
            w1 = random_lasso(rng, "01", 2, 2)
            w2 = random_lasso(rng, "01", 2, 2)
            out = accepts_lasso_pair(aut, w1, w2)
            if out.verdict is not Verdict.ACCEPTED:
                continue
            cert = out.certificate
            assert cert.cycle.consumed1() and cert.cycle.consumed2()
            replay = RunPrefix(cert.stem.transitions + cert.cycle.transitions * 3)
            assert run_prefix_valid(aut, replay, w1, w2).ok

    return [
        ("lasso-normalization", check_lasso_normalization),
        ("ones-automaton-characterization", check_ones_automaton),
        ("coding-round-trip", check_coding_round_trip),
        ("coding-identity", check_coding_identity),
        ("metric-continuity-injectivity", check_metric_bounds),
        ("column-predicate-cross-check", check_column_predicate),
        ("pair-decision-vs-closure-reference", check_pair_decision_reference),
        ("union-law", check_union_law),
        ("silent-transition-normalization", check_silent_normalization),
        ("schema-replay", check_schema_replay),
        ("blocked-growth-ledgers", check_blocked_growth),
        ("complement-disjoint-from-coded-pairs", check_complement_structure),
        ("complement-covers-lasso-pairs", check_complement_coverage),
        ("section-law", check_section_law),
        ("certificate-replay", check_certificates),
    ]


def run_all(seed: int = 0, trials: int = 25) -> list[CheckResult]:
    results = []
    for name, fn in _checks(seed, trials):
        try:
            fn()
        except AssertionError as exc:
            results.append(CheckResult(name, False, str(exc) or "assertion failed"))
        except Exception as exc:  # defensive: a crash is a failure, not an abort
            results.append(CheckResult(name, False, f"{type(exc).__name__}: {exc}"))
        else:
            results.append(CheckResult(name, True))
    return results
