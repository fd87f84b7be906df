"""Benchmark corpora (SKI compositions, Church arithmetic) and the harness.

Corpora are described by oracle terms (nested tuples, see ``lamred.oracle``)
and a fresh graph is built for every run, so one corpus can be fed to every
strategy and to either core.  Generation uses ``random.Random`` (Mersenne
Twister, recorded as ``RNG_ID``) and is replayable from (seed, count, size).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from lamred import oracle, strategies
from lamred.meter import ByteModel, Meter, MeterReport, combine, report
from lamred.strategies import Strategy
from lamred.terms import NonTerminating, Term

__all__ = [
    "RNG_ID", "BENCH_FUEL", "S", "K", "I", "PLUS", "MULT", "BenchCase", "CaseOutcome",
    "BenchResult", "SuiteSpec", "church", "church_plus", "church_mult",
    "gen_ski", "gen_church", "run_benchmark", "compare", "report_json",
]

RNG_ID = "python-random-mt19937"
BENCH_FUEL = 10_000

S = ("l", ("l", ("l", ("a", ("a", ("i", 3), ("i", 1)), ("a", ("i", 2), ("i", 1))))))
K = ("l", ("l", ("i", 2)))
I = ("l", ("i", 1))
PLUS = ("l", ("l", ("l", ("l", ("a", ("a", ("i", 4), ("i", 2)),
                                 ("a", ("a", ("i", 3), ("i", 2)), ("i", 1)))))))
MULT = ("l", ("l", ("l", ("a", ("i", 3), ("a", ("i", 2), ("i", 1))))))

_LEAVES = (("S", S), ("K", K), ("I", I))


@dataclass(frozen=True)
class BenchCase:
    name: str
    spec: tuple
    expected: Optional[tuple] = None

    def build(self, meter: Optional[Meter] = None, core=None) -> Term:
        """A fresh graph for this case, from ``core`` if given."""
        if core is None:
            return oracle.to_node(self.spec, meter)
        return _build_with(core, self.spec)


def _build_with(core, spec):
    T = core.Term

    def go(u):
        k = u[0]
        if k == "a":
            return T(core.APP, go(u[1]), go(u[2]))
        if k == "l":
            return T(core.LAM, go(u[1]))
        if k == "i":
            return T(core.BV, u[1])
        return T(core.CONST if k == "c" else core.FVAR, u[1])

    return go(spec)


# -- Church numerals ---------------------------------------------------------


def church_spec(n: int) -> tuple:
    if n < 0:
        raise ValueError("Church numerals are non-negative")
    body = ("i", 1)
    for _ in range(n):
        body = ("a", ("i", 2), body)
    return ("l", ("l", body))


def church(n: int, meter=None) -> Term:
    return oracle.to_node(church_spec(n), meter)


def church_plus(meter=None) -> Term:
    return oracle.to_node(PLUS, meter)


def church_mult(meter=None) -> Term:
    return oracle.to_node(MULT, meter)


def church_case(op: str, a: int, b: int) -> BenchCase:
    fn, value = (PLUS, a + b) if op == "plus" else (MULT, a * b)
    spec = ("a", ("a", fn, church_spec(a)), church_spec(b))
    return BenchCase("church-%s-%d-%d" % (op, a, b), spec, church_spec(value))


def gen_church(seed: int, count: int, size: int) -> list[BenchCase]:
    """Sums and products of numerals up to ``size``.

    The first cases are fixed corners (largest and smallest operands); the
    rest draw operator and operands at random.
    """
    corners = [("plus", size, size), ("mult", size, size), ("plus", 0, 0),
               ("mult", 0, size), ("mult", size, 1), ("plus", 1, size)]
    rng = random.Random(seed)
    cases = [church_case(*c) for c in corners[:count]]
    while len(cases) < count:
        op = rng.choice(("plus", "mult"))
        cases.append(church_case(op, rng.randint(0, size), rng.randint(0, size)))
    return cases


# -- SKI ---------------------------------------------------------------------


def _ski_tree(rng, n):
    if n == 0:
        name, spec = rng.choice(_LEAVES)
        return name, spec
    left = rng.randrange(n)
    lname, lspec = _ski_tree(rng, left)
    rname, rspec = _ski_tree(rng, n - 1 - left)
    if " " in rname:
        rname = "(%s)" % rname
    return "%s %s" % (lname, rname), ("a", lspec, rspec)


def gen_ski(seed: int, count: int, size: int) -> list[BenchCase]:
    """``count`` random application trees with ``size`` internal nodes each.

    The left subtree of a node with ``n`` internal nodes gets a uniformly
    drawn share ``0..n-1``; leaves are S, K or I with equal probability.
    """
    if count < 1 or size < 1:
        raise ValueError("count and size must be positive")
    rng = random.Random(seed)
    cases = []
    for k in range(count):
        text, spec = _ski_tree(rng, size)
        cases.append(BenchCase("ski-%04d %s" % (k, text), spec))
    return cases


# -- running -----------------------------------------------------------------


@dataclass(frozen=True)
class CaseOutcome:
    name: str
    terminated: bool
    beta_steps: int
    report: MeterReport


@dataclass(frozen=True)
class BenchResult:
    strategy: Strategy
    outcomes: tuple
    excluded: frozenset = field(default_factory=frozenset)

    @property
    def nonterminating(self) -> list[str]:
        return [o.name for o in self.outcomes if not o.terminated]

    @property
    def report(self) -> MeterReport:
        """Aggregate over terminated cases that are not excluded."""
        keep = [o.report for o in self.outcomes
                if o.terminated and o.name not in self.excluded]
        return combine(keep, self.byte_model)

    @property
    def byte_model(self) -> ByteModel:
        return self.outcomes[0].report.byte_model if self.outcomes else ByteModel.from_env()


def run_case(case: BenchCase, strategy, fuel: int, byte_model=None,
             check: bool = False) -> CaseOutcome:
    strategy = Strategy(strategy) if not isinstance(strategy, Strategy) else strategy
    t = case.build()
    m = Meter()
    try:
        strategies.normalize_full(t, strategy, fuel, m)
    except NonTerminating as exc:
        return CaseOutcome(case.name, False, exc.steps, report(m, byte_model))
    if check and case.expected is not None and oracle.from_node(t) != case.expected:
        raise AssertionError("%s: wrong normal form under %s" % (case.name, strategy.value))
    return CaseOutcome(case.name, True, m.beta_steps, report(m, byte_model))


def run_benchmark(cases: Sequence[BenchCase], strategy, fuel: int = strategies.DEFAULT_FUEL,
                  byte_model: Optional[ByteModel] = None) -> BenchResult:
    """Normalize every case with a fresh meter and collect the outcomes."""
    strategy = Strategy(strategy) if not isinstance(strategy, Strategy) else strategy
    outcomes = tuple(run_case(c, strategy, fuel, byte_model) for c in cases)
    return BenchResult(strategy, outcomes)


def compare(cases: Sequence[BenchCase], strategies_: Sequence = tuple(Strategy),
            fuel: int = strategies.DEFAULT_FUEL,
            byte_model: Optional[ByteModel] = None) -> dict:
    """Run several strategies; a case that fails to terminate under any of
    them is left out of every aggregate."""
    results = [run_benchmark(cases, s, fuel, byte_model) for s in strategies_]
    dropped = frozenset(n for r in results for n in r.nonterminating)
    return {r.strategy: BenchResult(r.strategy, r.outcomes, dropped) for r in results}


# -- corpus specs and reports ------------------------------------------------


@dataclass(frozen=True)
class SuiteSpec:
    suite: str
    seed: int = 1
    count: int = 500
    size: int = 12
    fuel: int = BENCH_FUEL

    def cases(self) -> list[BenchCase]:
        if self.suite == "ski":
            return gen_ski(self.seed, self.count, self.size)
        if self.suite == "church":
            return gen_church(self.seed, self.count, self.size)
        raise ValueError("unknown suite %r" % self.suite)

    def to_json(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "count": self.count,
                "size": self.size, "fuel": self.fuel}

    @classmethod
    def from_json(cls, data: dict) -> "SuiteSpec":
        return cls(data["suite"], data["seed"], data["count"], data["size"],
                   data.get("fuel", BENCH_FUEL))


def report_json(spec: SuiteSpec, result: BenchResult) -> dict:
    rep = result.report
    out = {
        "suite": spec.suite,
        "seed": spec.seed,
        "params": {
            "count": spec.count,
            "size": spec.size,
            "fuel": spec.fuel,
            "rng": RNG_ID,
            "byte_model": rep.byte_model.to_json(),
        },
        "strategy": result.strategy.value,
    }
    out.update(rep.to_json())
    out["nonterminating_cases"] = sorted(set(result.nonterminating) | set(result.excluded))
    return out
