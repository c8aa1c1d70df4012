"""Run seeded episodes, aggregate score and steps, and report them."""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .agents import Agent, AgentAborted, RandomAgent, OracleAgent, Turn
from .core import STEP_LIMIT, TASKS, ConfigurationError, split_seeds
from .engine import EpisodeTrace, reset, step
from .references import REFERENCE_RESULTS

log = logging.getLogger(__name__)

AgentFactory = Callable[[str, int], Agent]


def run_episode(
    task: str,
    seed: int,
    agent: Agent,
    *,
    step_limit: int = STEP_LIMIT,
    count_module_steps: bool = True,
    split: str | None = None,
    on_turn: Callable | None = None,
    **reset_options,
) -> EpisodeTrace:
    """Play one episode to completion. An aborted agent ends it early, flagged."""
    state, obs, _, actions = reset(
        task, seed, step_limit=step_limit, count_module_steps=count_module_steps, **reset_options
    )
    agent.reset(state)
    aborted = False
    while not state.done:
        turn = Turn(obs, state.inventory_text(), state.raw_score, actions, state)
        try:
            decision = agent.act(turn)
        except AgentAborted as exc:
            log.warning("%s seed %d: agent aborted: %s", task, seed, exc)
            aborted = True
            break
        result = step(state, decision.chosen)
        if on_turn is not None:
            on_turn(turn, decision, result)
        obs, actions = result.observation, result.valid_actions
    trace = state.trace(split)
    if aborted:
        trace.aborted = True
        trace.done_reason = "aborted"
    return trace


@dataclass
class RunConfig:
    tasks: tuple[str, ...] = TASKS
    split: str = "test"
    episodes: int = 100
    agent: str = "oracle"
    step_limit: int = STEP_LIMIT
    seed_offset: int = 0
    count_module_steps: bool = True
    jobs: int = 1

    def __post_init__(self):
        self.tasks = tuple(self.tasks)
        unknown = [t for t in self.tasks if t not in TASKS]
        if unknown or not self.tasks:
            raise ConfigurationError(f"unknown tasks {unknown}; expected some of {', '.join(TASKS)}")
        if self.episodes < 1:
            raise ConfigurationError("episode count must be at least 1")
        if self.jobs < 1:
            raise ConfigurationError("jobs must be at least 1")

    def seeds(self) -> list[int]:
        return split_seeds(self.split, self.episodes, self.seed_offset)

    def to_dict(self) -> dict:
        # parallelism is left out so reports do not depend on it
        d = asdict(self)
        d.pop("jobs")
        d["tasks"] = list(self.tasks)
        return d


@dataclass
class EpisodeRow:
    task: str
    seed: int
    score: float
    steps: int
    done_reason: str | None
    aborted: bool = False


@dataclass
class TaskSummary:
    task: str
    episodes: int
    total_steps: int
    score: float
    steps: float
    aborted: int

    @property
    def mean_steps(self) -> Fraction:
        return Fraction(self.total_steps, self.episodes)


@dataclass
class EvalReport:
    config: dict
    rows: list[EpisodeRow]
    per_task: dict[str, TaskSummary] = field(init=False)
    overall: dict[str, float] = field(init=False)

    def __post_init__(self):
        if not self.rows:
            raise ValueError("a report needs at least one episode row")
        order = {t: i for i, t in enumerate(TASKS)}
        self.rows = sorted(self.rows, key=lambda r: (order[r.task], r.seed))
        self.per_task = {}
        for task in sorted({r.task for r in self.rows}, key=order.get):
            rows = [r for r in self.rows if r.task == task]
            total = sum(r.steps for r in rows)
            self.per_task[task] = TaskSummary(
                task=task,
                episodes=len(rows),
                total_steps=total,
                score=sum(r.score for r in rows) / len(rows),
                steps=total / len(rows),
                aborted=sum(r.aborted for r in rows),
            )
        summaries = list(self.per_task.values())
        self.overall = {
            "score": sum(s.score for s in summaries) / len(summaries),
            "steps": sum(s.steps for s in summaries) / len(summaries),
        }

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "rows": [asdict(r) for r in self.rows],
            "summary": {
                "per_task": {t: asdict(s) for t, s in self.per_task.items()},
                "overall": self.overall,
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_dict(cls, d: dict) -> "EvalReport":
        return cls(d["config"], [EpisodeRow(**r) for r in d["rows"]])


def agent_factory(kind: str) -> AgentFactory:
    """Factory for the agents that need nothing beyond a name."""
    if kind == "oracle":
        return lambda task, seed: OracleAgent()
    if kind == "random":
        return lambda task, seed: RandomAgent()
    raise ConfigurationError(f"agent {kind!r} needs an explicit factory")


def run_benchmark(
    config: RunConfig,
    make_agent: AgentFactory | None = None,
    traces: list | None = None,
) -> EvalReport:
    """Run every (task, seed) episode of ``config`` and aggregate.

    Episodes run on up to ``config.jobs`` threads; rows are sorted by task and
    seed afterwards, so the report does not depend on scheduling. Pass a list
    as ``traces`` to collect the episode traces in the same order.
    """
    make_agent = make_agent or agent_factory(config.agent)
    jobs = [(task, seed) for task in config.tasks for seed in config.seeds()]

    def play(job):
        task, seed = job
        return run_episode(
            task, seed, make_agent(task, seed),
            step_limit=config.step_limit,
            count_module_steps=config.count_module_steps,
            split=config.split,
        )

    if config.jobs == 1:
        results = [play(j) for j in jobs]
    else:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(play, jobs))
    if traces is not None:
        traces.extend(results)
    rows = [EpisodeRow(t.task, t.seed, t.final_score, t.step_count, t.done_reason, t.aborted) for t in results]
    return EvalReport(config.to_dict(), rows)


# -- rendering --------------------------------------------------------------

DISPLAY_NAMES = {"arithmetic": "Arithmetic", "mapreader": "MapReader", "sorting": "Sorting", "twc": "TWC"}


def _round_steps(x) -> int:
    # half-up, as printed tables do
    return int(Fraction(x) + Fraction(1, 2))


def render_table(
    report: EvalReport,
    references: Sequence[str] = (),
    label: str | None = None,
) -> str:
    """Plain-text Score/Steps table with an Average row.

    ``references`` names columns from REFERENCE_RESULTS to print alongside.
    """
    for name in references:
        if name not in REFERENCE_RESULTS:
            raise KeyError(f"unknown reference column {name!r}")
    label = label or str(report.config.get("agent", "this run"))
    columns = [label, *references]

    def cells(name, key):
        if name == label:
            if key == "average":
                score, steps = report.overall["score"], report.overall["steps"]
            else:
                s = report.per_task[key]
                score, steps = s.score, s.mean_steps
        else:
            score, steps = REFERENCE_RESULTS[name][key]
        return [f"{score:.2f}", str(_round_steps(steps))]

    header1 = ["", *[c for name in columns for c in (name, "")]]
    header2 = ["Benchmark", *["Score", "Steps"] * len(columns)]
    body = [
        [DISPLAY_NAMES[t], *[c for name in columns for c in cells(name, t)]]
        for t in report.per_task
    ]
    body.append(["Average", *[c for name in columns for c in cells(name, "average")]])
    grid = [header1, header2, *body]
    widths = [max(len(row[i]) for row in grid) for i in range(len(header2))]

    def fmt(row):
        return "  ".join(c.ljust(w) if i == 0 else c.rjust(w) for i, (c, w) in enumerate(zip(row, widths))).rstrip()

    rule = "-" * len(fmt(header2))
    lines = [fmt(header1), fmt(header2), rule, *map(fmt, body[:-1]), rule, fmt(body[-1])]
    return "\n".join(lines) + "\n"


def summarize(traces: Iterable[EpisodeTrace]) -> EvalReport:
    rows = [EpisodeRow(t.task, t.seed, t.final_score, t.step_count, t.done_reason, t.aborted) for t in traces]
    return EvalReport({}, rows)
