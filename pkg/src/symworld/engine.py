"""Episode loop shared by all four games.

``reset`` builds a seeded world; ``step`` routes an action either to the game
(which may pay reward) or to the task's symbolic module (which never does).
The valid action set each turn is the union of both sources.
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import IO, Iterable

from .core import (
    STEP_LIMIT, Action, ActionSet, EpisodeFinished, InvalidAction, Observation,
    Origin, StepResult, canonicalize, normalize_score, split_of,
)
from .games import Game, game_class, load_kb
from .modules import ModuleContext, module_actions, run_module


@dataclass
class TraceStep:
    step: int
    observation: str
    action: str
    origin: str
    reward: int
    raw_score: int


@dataclass
class EpisodeState:
    task: str
    seed: int
    game: Game
    kb: dict[str, str]
    step_limit: int = STEP_LIMIT
    count_module_steps: bool = True
    context: ModuleContext = field(default_factory=ModuleContext)
    raw_score: int = 0
    steps: int = 0
    module_steps: int = 0
    done: bool = False
    done_reason: str | None = None
    observation: Observation | None = None
    initial_observation: Observation | None = None
    history: list[TraceStep] = field(default_factory=list)

    @property
    def description(self) -> str:
        return self.game.description

    @property
    def score(self) -> float:
        return normalize_score(self.raw_score, self.game.max_raw)

    @property
    def reported_steps(self) -> int:
        """The "Steps" metric: all turns, or environment turns only."""
        return self.steps if self.count_module_steps else self.steps - self.module_steps

    def valid_actions(self) -> ActionSet:
        if self.done:
            return ActionSet()
        return ActionSet.union(self.game.env_actions(), module_actions(self.game, self.context))

    def inventory_text(self) -> str:
        return self.game.inventory_text()

    def world_hash(self) -> str:
        return hashlib.sha256(self.game.snapshot().encode()).hexdigest()

    def trace(self, split: str | None = None) -> "EpisodeTrace":
        return EpisodeTrace(
            task=self.task,
            seed=self.seed,
            split=split if split is not None else split_of(self.seed),
            description=self.description,
            initial_observation=self.initial_observation.text if self.initial_observation else "",
            steps=list(self.history),
            final_score=self.score,
            step_count=self.reported_steps,
            done_reason=self.done_reason,
        )


def reset(
    task: str,
    seed: int,
    *,
    step_limit: int = STEP_LIMIT,
    count_module_steps: bool = True,
    kb: dict[str, str] | None = None,
    **options,
) -> tuple[EpisodeState, Observation, str, ActionSet]:
    """Start a fresh episode of ``task`` generated from ``seed``.

    Extra keyword options go to the game generator (``start_in_box_room`` for
    MapReader, ``allow_mixed_dimensions`` for Sorting).
    """
    cls = game_class(task)
    if split_of(seed) is None:
        warnings.warn(f"seed {seed} lies outside every split", stacklevel=2)
    if step_limit < 1:
        raise ValueError("step_limit must be at least 1")
    kb = load_kb() if kb is None else kb
    if task == "twc":
        options.setdefault("kb", kb)
    game = cls.generate(seed, **options)
    state = EpisodeState(
        task=task, seed=seed, game=game, kb=kb,
        step_limit=step_limit, count_module_steps=count_module_steps,
    )
    obs = game.initial_observation()
    state.observation = state.initial_observation = obs
    state.context.observe(obs)
    return state, obs, game.description, state.valid_actions()


def step(state: EpisodeState, action: Action | str) -> StepResult:
    if state.done:
        raise EpisodeFinished(f"{state.task} episode (seed {state.seed}) is over")
    raw = action.text if isinstance(action, Action) else action
    chosen = state.valid_actions().get(canonicalize(raw))
    if chosen is None:
        raise InvalidAction(raw)

    reward = 0
    if chosen.origin is Origin.MODULE:
        obs = Observation(run_module(chosen.text, state.context, state.kb))
        state.module_steps += 1
    else:
        outcome = state.game.apply(chosen.text)
        obs, reward = outcome.observation, outcome.reward
        state.raw_score += reward
        state.context.observe(obs)
        if outcome.done:
            state.done, state.done_reason = True, outcome.reason
    state.steps += 1
    if not state.done and state.steps >= state.step_limit:
        state.done, state.done_reason = True, "step_limit"
    state.observation = obs
    state.history.append(
        TraceStep(state.steps, obs.text, chosen.text, chosen.origin.value, reward, state.raw_score)
    )
    return StepResult(obs, reward, state.done, state.valid_actions(), state.raw_score,
                      info={"origin": chosen.origin, "done_reason": state.done_reason})


# -- traces -----------------------------------------------------------------

@dataclass
class EpisodeTrace:
    task: str
    seed: int
    split: str | None
    description: str
    initial_observation: str
    steps: list[TraceStep]
    final_score: float
    step_count: int
    done_reason: str | None
    aborted: bool = False

    @property
    def actions(self) -> list[str]:
        return [s.action for s in self.steps]

    def records(self) -> list[dict]:
        header = {
            "task": self.task, "seed": self.seed, "split": self.split,
            "description": self.description, "observation": self.initial_observation,
        }
        body = [vars(s).copy() for s in self.steps]
        trailer = {"final_score": self.final_score, "steps": self.step_count, "done_reason": self.done_reason}
        if self.aborted:
            trailer["aborted"] = True
        return [header, *body, trailer]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in self.records())

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_jsonl(), encoding="utf-8")

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "EpisodeTrace":
        records = list(records)
        if len(records) < 2:
            raise ValueError("a trace needs at least a header and a trailer")
        header, *body, trailer = records
        return cls(
            task=header["task"], seed=header["seed"], split=header.get("split"),
            description=header.get("description", ""),
            initial_observation=header.get("observation", ""),
            steps=[TraceStep(**r) for r in body],
            final_score=trailer["final_score"], step_count=trailer["steps"],
            done_reason=trailer.get("done_reason"), aborted=trailer.get("aborted", False),
        )

    @classmethod
    def read(cls, source: str | Path | IO[str]) -> "EpisodeTrace":
        if isinstance(source, (str, Path)):
            text = Path(source).read_text(encoding="utf-8")
        else:
            text = source.read()
        return cls.from_records(json.loads(line) for line in text.splitlines() if line.strip())


def replay(task: str, seed: int, actions: Iterable[str], **reset_options) -> EpisodeState:
    """Play a fixed action list from a fresh reset; stops early if the episode ends."""
    state, *_ = reset(task, seed, **reset_options)
    for a in actions:
        if state.done:
            break
        step(state, a)
    return state
