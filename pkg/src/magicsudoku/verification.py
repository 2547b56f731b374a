"""One-shot verification of every published value the package
reproduces: group orders, enumeration counts, censuses, nest graphs,
minimality certificates, decomposition suites, and property samples.

Checks are registered by name; each returns an (expected, actual) pair
of JSON-ready values and passes exactly when they are equal. Expensive
enumeration passes are shared through a VerifyContext: one sweep over
the 32,256 modular-magic boards feeds the count, census, and
off-diagonal checks, and one sweep over the 5,971,968 semi-magic
boards feeds the count and census checks.
"""

from __future__ import annotations

import multiprocessing
import random
import time
from collections import Counter
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from . import catalog, nestgraph, nests
from .analysis import check_two_equal, g9_minimality_certificate
from .boards import Board
from .enumeration import (
    complete_standard_gnomon,
    enumerate_modular_magic,
    enumerate_semi_magic,
    random_semi_magic,
    semi_magic_blocks,
)
from .errors import DomainError
from .keedwell import (
    apply_alpha,
    apply_beta,
    keedwell_decompose,
    linearity_degree,
    swap_block_columns,
)
from .nests import MM, SM, Census, NestLabel
from .perms import act, closure, compose, identity, inverse

__all__ = [
    "CheckResult",
    "VerifyReport",
    "VerifyContext",
    "CHECKS",
    "CRITERIA",
    "VARIANT_CHECKS",
    "run_checks",
]

DEFAULT_SEED = 20260823
SM_CROSSCHECK_TARGET = 10_000


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: object
    actual: object
    passed: bool
    seconds: float


@dataclass(frozen=True)
class VerifyReport:
    checks: tuple[CheckResult, ...]
    overall: bool

    def to_dict(self) -> dict:
        return {
            "checks": [
                {
                    "name": c.name,
                    "expected": c.expected,
                    "actual": c.actual,
                    "pass": c.passed,
                    "seconds": round(c.seconds, 3),
                }
                for c in self.checks
            ],
            "overall": self.overall,
        }


# --- shared enumeration surveys ---


@dataclass(frozen=True)
class MMSurvey:
    total: int
    labels: dict[tuple[int, int], int]
    off_diagonal_failures: int
    sample_cells: tuple[bytes, ...]
    seconds: float


@dataclass(frozen=True)
class SMSurvey:
    total: int
    labels: dict[tuple[int, int], int]
    seconds: float


def _mm_survey_slice(args: tuple[int, int]):
    worker, count = args
    counts: Counter = Counter()
    failures = 0
    seen = 0
    sample: list[bytes] = []

    def visit(board: Board) -> None:
        nonlocal failures, seen
        alpha, gamma, _ = nests._mm_reduce(board.cells)
        counts[(alpha, gamma)] += 1
        if not check_two_equal(board):
            failures += 1
        if seen % 31 == 0:
            sample.append(board.cells)
        seen += 1

    total = enumerate_modular_magic(visit, (worker, count) if count > 1 else None)
    return total, dict(counts), failures, sample


def _sm_survey_slice(args: tuple[int, int]):
    worker, count = args
    counts: Counter = Counter()

    def visit(board: Board) -> None:
        counts[nests._sm_label(board.cells)] += 1

    total = enumerate_semi_magic(visit, (worker, count) if count > 1 else None)
    return total, dict(counts)


class VerifyContext:
    """Lazy shared state for the check suite.

    threads > 1 splits the enumeration surveys across processes; all
    other work stays in the calling process.
    """

    def __init__(self, threads: int = 1, seed: int = DEFAULT_SEED):
        if threads < 1:
            raise DomainError(f"bad thread count {threads}")
        self.threads = threads
        self.seed = seed
        self._mm: MMSurvey | None = None
        self._sm: SMSurvey | None = None
        self._crosscheck: tuple[int, int, float] | None = None

    def _map_slices(self, fn):
        if self.threads == 1:
            return [fn((0, 1))]
        parts = [(w, self.threads) for w in range(self.threads)]
        with multiprocessing.Pool(self.threads) as pool:
            return pool.map(fn, parts)

    def mm_survey(self) -> MMSurvey:
        if self._mm is None:
            t0 = time.perf_counter()
            nests._mm_scan_tables()  # build once, before any fork
            results = self._map_slices(_mm_survey_slice)
            counts: Counter = Counter()
            total = failures = 0
            sample: list[bytes] = []
            for part_total, part_counts, part_failures, part_sample in results:
                total += part_total
                failures += part_failures
                counts.update(part_counts)
                sample.extend(part_sample)
            self._mm = MMSurvey(
                total, dict(counts), failures, tuple(sample),
                time.perf_counter() - t0,
            )
        return self._mm

    def sm_survey(self) -> SMSurvey:
        if self._sm is None:
            t0 = time.perf_counter()
            results = self._map_slices(_sm_survey_slice)
            counts: Counter = Counter()
            total = 0
            for part_total, part_counts in results:
                total += part_total
                counts.update(part_counts)
            self._sm = SMSurvey(total, dict(counts), time.perf_counter() - t0)
        return self._sm

    def sm_crosscheck(self) -> tuple[int, int, float]:
        """(boards checked, mismatches, seconds) for the constructive
        vs scan-oracle comparison on random semi-magic boards."""
        if self._crosscheck is None:
            t0 = time.perf_counter()
            rng = random.Random(self.seed)
            mismatches = 0
            for _ in range(SM_CROSSCHECK_TARGET):
                board = random_semi_magic(rng)
                try:
                    nests.crosscheck_sm(board)
                except Exception:
                    mismatches += 1
            self._crosscheck = (
                SM_CROSSCHECK_TARGET, mismatches, time.perf_counter() - t0
            )
        return self._crosscheck

    def mm_census(self) -> Census:
        survey = self.mm_survey()
        counts = {
            NestLabel(MM, a, b): n for (a, b), n in sorted(survey.labels.items())
        }
        return Census(MM, counts, survey.total)

    def sm_census(self) -> Census:
        survey = self.sm_survey()
        counts = {
            NestLabel(SM, a, b): n for (a, b), n in sorted(survey.labels.items())
        }
        return Census(SM, counts, survey.total)

    def mm_sample_boards(self) -> tuple[Board, ...]:
        return tuple(Board._wrap(c) for c in self.mm_survey().sample_cells)


# --- individual checks ---


def _check_group_orders(ctx: VerifyContext):
    t0 = time.perf_counter()
    actual = {
        "h_mm": catalog.h_mm_group().order,
        "s_mm": catalog.s_mm_elements().order,
        "g_mm": catalog.g_mm_group().order,
        "h_gamma": catalog.h_gamma_group().order,
        "h_9": catalog.h9_group().order,
        "s_sm": catalog.s_sm_group().order,
        "g_sm": catalog.g_sm_order(),
    }
    actual["within_600s"] = time.perf_counter() - t0 < 600
    expected = {
        "h_mm": 4608,
        "s_mm": 36,
        "g_mm": 165_888,
        "h_gamma": 373_248,
        "h_9": 3_359_232,
        "s_sm": 72,
        "g_sm": 241_864_704,
        "within_600s": True,
    }
    return expected, actual


def _check_mm_enumeration(ctx: VerifyContext):
    survey = ctx.mm_survey()
    expected = {"count": 32_256, "within_60s": True}
    actual = {"count": survey.total, "within_60s": survey.seconds < 60}
    return expected, actual


def _check_sm_blocks(ctx: VerifyContext):
    t0 = time.perf_counter()
    count = len(semi_magic_blocks())
    elapsed = time.perf_counter() - t0
    return (
        {"count": 72, "within_1s": True},
        {"count": count, "within_1s": elapsed < 1},
    )


def _check_sm_enumeration(ctx: VerifyContext):
    survey = ctx.sm_survey()
    expected = {"count": 5_971_968, "within_600s": True}
    actual = {"count": survey.total, "within_600s": survey.seconds < 600}
    return expected, actual


def _check_gnomon_completions(ctx: VerifyContext):
    t0 = time.perf_counter()
    count = len(complete_standard_gnomon())
    elapsed = time.perf_counter() - t0
    return (
        {"count": 16, "within_1s": True},
        {"count": count, "within_1s": elapsed < 1},
    )


def _check_mm_census(ctx: VerifyContext):
    small = {(1, 1), (2, 2), (7, 7)}
    alphabet = sorted(
        (label.first, label.second) for label in nests.mm_labels()
    )
    expected = {
        "counts": {
            f"[{a},{b}]": 1536 if (a, b) in small else 4608 for a, b in alphabet
        },
        "total": 32_256,
    }
    survey = ctx.mm_survey()
    actual = {
        "counts": {f"[{a},{b}]": n for (a, b), n in sorted(survey.labels.items())},
        "total": survey.total,
    }
    return expected, actual


def _check_sm_census(ctx: VerifyContext):
    survey = ctx.sm_survey()
    actual = {
        "label_count": len(survey.labels),
        "distinct_sizes": sorted(set(survey.labels.values())),
        "labels_match_standard_boards": sorted(survey.labels)
        == sorted((l.first, l.second) for l in nests.sm_labels()),
        "total": survey.total,
    }
    expected = {
        "label_count": 16,
        "distinct_sizes": [373_248],
        "labels_match_standard_boards": True,
        "total": 5_971_968,
    }
    return expected, actual


def _check_sm_crosscheck(ctx: VerifyContext):
    checked, mismatches, _ = ctx.sm_crosscheck()
    return (
        {"mismatches": 0, "at_least_10000": True},
        {"mismatches": mismatches, "at_least_10000": checked >= 10_000},
    )


def _check_mm_nest_graph(ctx: VerifyContext):
    graph = nestgraph.build_nest_graph(MM, ["rho", "mu(4,0)"])
    comps = nestgraph.weak_components(graph)
    actual = {
        "component_sizes": [len(c) for c in comps],
        "small_component": [str(l) for l in comps[0]],
    }
    expected = {
        "component_sizes": [3, 6],
        "small_component": ["[1,1]", "[2,2]", "[7,7]"],
    }
    return expected, actual


def _check_sm_nest_graphs(ctx: VerifyContext):
    uv = nestgraph.build_nest_graph(SM, [], ["swap_bands(0,1)", "swap_pillars(0,1)"])
    uv_mu = nestgraph.build_nest_graph(SM, ["(12)(45)(78)"])
    actual = {
        "uv_sizes": [len(c) for c in nestgraph.weak_components(uv)],
        "uv_mu_sizes": [len(c) for c in nestgraph.weak_components(uv_mu)],
    }
    expected = {"uv_sizes": [1, 3, 3, 9], "uv_mu_sizes": [1, 6, 9]}
    return expected, actual


def _check_mm_minimality(ctx: VerifyContext):
    census = ctx.mm_census()
    small = nestgraph.minimality(
        MM, catalog.h_mm_group(), ["rho", "mu(4,0)"], census
    )
    full = nestgraph.minimality(
        MM, catalog.h_mm_group(), [g.name for g in catalog.s_mm_generators()], census
    )
    actual = {
        "group_order": small.group_order,
        "largest_orbit": small.largest_orbit,
        "complete": small.complete,
        "minimal": small.minimal,
        "full_group_order": full.group_order,
        "full_complete": full.complete,
        "full_minimal": full.minimal,
    }
    expected = {
        "group_order": 27_648,
        "largest_orbit": 27_648,
        "complete": True,
        "minimal": True,
        "full_group_order": 165_888,
        "full_complete": True,
        "full_minimal": False,
    }
    return expected, actual


def _check_sm_minimality(ctx: VerifyContext):
    report = nestgraph.minimality(
        SM, catalog.h9_group(), ["(12)(45)(78)"], ctx.sm_census()
    )
    actual = {
        "group_order": report.group_order,
        "is_18_72cubed": report.group_order == 18 * 72**3,
        "orbit_lcm": report.orbit_lcm,
        "complete": report.complete,
        "minimal": report.minimal,
    }
    expected = {
        "group_order": 6_718_464,
        "is_18_72cubed": True,
        "orbit_lcm": 6_718_464,
        "complete": True,
        "minimal": True,
    }
    return expected, actual


def _check_mm_orbit_sizes(ctx: VerifyContext):
    sizes = nestgraph.orbit_sizes(MM, nest_census=ctx.mm_census())
    full = catalog.g_mm_group().order
    actual = {
        "sizes": list(sizes),
        "divide_full_group": all(full % s == 0 for s in sizes),
    }
    expected = {"sizes": [4608, 27_648], "divide_full_group": True}
    return expected, actual


def _check_sm_orbit_sizes(ctx: VerifyContext):
    sizes = nestgraph.orbit_sizes(SM, nest_census=ctx.sm_census())
    full = catalog.g_sm_order()
    actual = {
        "sizes": list(sizes),
        "divide_full_group": all(full % s == 0 for s in sizes),
    }
    expected = {
        "sizes": [373_248, 2_239_488, 3_359_232],
        "divide_full_group": True,
    }
    return expected, actual


def _check_keedwell_suite(ctx: VerifyContext):
    boards = {
        (b[9 * 6 + 5], b[9 * 5 + 6]): b for b in complete_standard_gnomon()
    }
    decomposable = sum(keedwell_decompose(b) is not None for b in boards.values())

    graph = nestgraph.build_nest_graph(SM, ["(12)(45)(78)"])
    degrees_by_component = {}
    for comp in nestgraph.weak_components(graph):
        degrees = sorted(
            {linearity_degree(boards[(l.first, l.second)]) for l in comp}
        )
        degrees_by_component[str(len(comp))] = degrees

    dec71 = keedwell_decompose(boards[(7, 1)])
    exponents_71 = {
        "c": [list(row) for row in dec71.exponents.c],
        "d": [list(row) for row in dec71.exponents.d],
    }

    gk_failures = 0
    for gen in catalog.g_k_generators():
        for board in boards.values():
            if linearity_degree(act(gen.symmetry, board)) != linearity_degree(board):
                gk_failures += 1

    tau_failures = 0
    for blk in semi_magic_blocks():
        for a, b in ((0, 1), (0, 2), (1, 2)):
            tau = lambda x: swap_block_columns(x, a, b)
            if tau(apply_alpha(blk, 1)) != apply_alpha(tau(blk), 1):
                tau_failures += 1
            if tau(apply_beta(blk, 1)) != apply_beta(apply_beta(tau(blk), 1), 1):
                tau_failures += 1

    actual = {
        "decomposable": decomposable,
        "degrees_by_component": degrees_by_component,
        "board_71_exponents": exponents_71,
        "gk_degree_failures": gk_failures,
        "tau_identity_failures": tau_failures,
    }
    expected = {
        "decomposable": 16,
        "degrees_by_component": {"1": [2], "6": [1], "9": [0]},
        "board_71_exponents": {
            "c": [[0, 1, 2], [0, 2, 1], [0, 1, 2]],
            "d": [[0, 0, 0], [1, 1, 1], [2, 2, 2]],
        },
        "gk_degree_failures": 0,
        "tau_identity_failures": 0,
    }
    return expected, actual


def _check_off_diagonal_sweep(ctx: VerifyContext):
    survey = ctx.mm_survey()
    actual = {
        "boards": survey.total,
        "failures": survey.off_diagonal_failures,
        "within_120s": survey.seconds < 120,
    }
    expected = {"boards": 32_256, "failures": 0, "within_120s": True}
    return expected, actual


def _check_g9_certificate(ctx: VerifyContext):
    t0 = time.perf_counter()
    cert = g9_minimality_certificate()
    elapsed = time.perf_counter() - t0
    actual = {
        "average_orbit_floor": cert.average_orbit_floor,
        "bound_holds": cert.bound_holds,
        "within_1s": elapsed < 1,
    }
    expected = {
        "average_orbit_floor": 1_218_935_174_261,
        "bound_holds": True,
        "within_1s": True,
    }
    return expected, actual


def _check_mm_properties(ctx: VerifyContext):
    rng = random.Random(ctx.seed + 1)
    sample = ctx.mm_sample_boards()
    group = catalog.h_mm_group()
    relabelings = catalog.s_mm_elements()

    def draw_symmetry(r):
        kind = r.randrange(3)
        h = group.element(r.randrange(group.order))
        s = relabelings.element(r.randrange(relabelings.order))
        return h if kind == 0 else s if kind == 1 else compose(h, s)

    axiom_failures = 0
    invariance_failures = 0
    for _ in range(1000):
        board = rng.choice(sample)
        s1 = draw_symmetry(rng)
        s2 = draw_symmetry(rng)
        if act(identity(), board) != board:
            axiom_failures += 1
        if act(inverse(s1), act(s1, board)) != board:
            axiom_failures += 1
        if act(compose(s2, s1), board) != act(s2, act(s1, board)):
            axiom_failures += 1
        h = group.element(rng.randrange(group.order))
        a0, g0, _ = nests._mm_reduce(board.cells)
        a1, g1, _ = nests._mm_reduce(act(h, board).cells)
        if (a0, g0) != (a1, g1):
            invariance_failures += 1

    shuffled = list(catalog.h_mm_generators())
    rng.shuffle(shuffled)
    regrown = closure([g.symmetry for g in shuffled])
    deterministic = regrown.order == group.order and np.array_equal(
        regrown._rows, group._rows
    )

    actual = {
        "action_axiom_failures": axiom_failures,
        "label_invariance_failures": invariance_failures,
        "closure_deterministic": deterministic,
        "samples": 1000,
    }
    expected = {
        "action_axiom_failures": 0,
        "label_invariance_failures": 0,
        "closure_deterministic": True,
        "samples": 1000,
    }
    return expected, actual


def _check_sm_properties(ctx: VerifyContext):
    rng = random.Random(ctx.seed + 2)
    group = catalog.h_gamma_group()
    relabelings = catalog.s_sm_group()

    def draw_symmetry(r):
        kind = r.randrange(3)
        h = group.element(r.randrange(group.order))
        s = relabelings.element(r.randrange(relabelings.order))
        return h if kind == 0 else s if kind == 1 else compose(h, s)

    axiom_failures = 0
    invariance_failures = 0
    for _ in range(1000):
        board = random_semi_magic(rng)
        s1 = draw_symmetry(rng)
        s2 = draw_symmetry(rng)
        if act(identity(), board) != board:
            axiom_failures += 1
        if act(inverse(s1), act(s1, board)) != board:
            axiom_failures += 1
        if act(compose(s2, s1), board) != act(s2, act(s1, board)):
            axiom_failures += 1
        h = group.element(rng.randrange(group.order))
        if nests._sm_label(act(h, board).cells) != nests._sm_label(board.cells):
            invariance_failures += 1

    shuffled = list(catalog.h_gamma_generators())
    rng.shuffle(shuffled)
    regrown = closure([g.symmetry for g in shuffled])
    deterministic = regrown.order == group.order and np.array_equal(
        regrown._rows, group._rows
    )

    actual = {
        "action_axiom_failures": axiom_failures,
        "label_invariance_failures": invariance_failures,
        "closure_deterministic": deterministic,
        "samples": 1000,
    }
    expected = {
        "action_axiom_failures": 0,
        "label_invariance_failures": 0,
        "closure_deterministic": True,
        "samples": 1000,
    }
    return expected, actual


CHECKS: dict[str, Callable[[VerifyContext], tuple[object, object]]] = {
    "group_orders": _check_group_orders,
    "mm_enumeration": _check_mm_enumeration,
    "sm_blocks": _check_sm_blocks,
    "sm_enumeration": _check_sm_enumeration,
    "gnomon_completions": _check_gnomon_completions,
    "mm_census": _check_mm_census,
    "sm_census": _check_sm_census,
    "sm_crosscheck": _check_sm_crosscheck,
    "mm_nest_graph": _check_mm_nest_graph,
    "sm_nest_graphs": _check_sm_nest_graphs,
    "mm_minimality": _check_mm_minimality,
    "sm_minimality": _check_sm_minimality,
    "mm_orbit_sizes": _check_mm_orbit_sizes,
    "sm_orbit_sizes": _check_sm_orbit_sizes,
    "keedwell_suite": _check_keedwell_suite,
    "off_diagonal_sweep": _check_off_diagonal_sweep,
    "g9_certificate": _check_g9_certificate,
    "mm_properties": _check_mm_properties,
    "sm_properties": _check_sm_properties,
}

#: Acceptance criterion number -> check names covering it.
CRITERIA: dict[int, tuple[str, ...]] = {
    1: ("group_orders",),
    2: ("mm_enumeration", "sm_blocks", "sm_enumeration", "gnomon_completions"),
    3: ("mm_census",),
    4: ("sm_census", "sm_crosscheck"),
    5: ("mm_nest_graph", "sm_nest_graphs"),
    6: ("mm_minimality", "sm_minimality"),
    7: ("mm_orbit_sizes", "sm_orbit_sizes"),
    8: ("keedwell_suite",),
    9: ("off_diagonal_sweep",),
    10: ("g9_certificate",),
    11: ("mm_properties", "sm_properties"),
}

VARIANT_CHECKS = {
    MM: (
        "group_orders",
        "mm_enumeration",
        "mm_census",
        "mm_nest_graph",
        "mm_minimality",
        "mm_orbit_sizes",
        "off_diagonal_sweep",
        "g9_certificate",
        "mm_properties",
    ),
    SM: (
        "group_orders",
        "sm_blocks",
        "sm_enumeration",
        "gnomon_completions",
        "sm_census",
        "sm_crosscheck",
        "sm_nest_graphs",
        "sm_minimality",
        "sm_orbit_sizes",
        "keedwell_suite",
        "g9_certificate",
        "sm_properties",
    ),
}


def run_checks(
    names: Iterable[str] | None = None,
    ctx: VerifyContext | None = None,
    threads: int = 1,
    seed: int = DEFAULT_SEED,
) -> VerifyReport:
    """Run the named checks (all by default) and collect a report."""
    if ctx is None:
        ctx = VerifyContext(threads=threads, seed=seed)
    selected = list(CHECKS) if names is None else list(names)
    unknown = [n for n in selected if n not in CHECKS]
    if unknown:
        raise DomainError(f"unknown checks: {', '.join(unknown)}")
    results = []
    for name in selected:
        t0 = time.perf_counter()
        expected, actual = CHECKS[name](ctx)
        results.append(
            CheckResult(
                name=name,
                expected=expected,
                actual=actual,
                passed=expected == actual,
                seconds=time.perf_counter() - t0,
            )
        )
    return VerifyReport(tuple(results), all(r.passed for r in results))
