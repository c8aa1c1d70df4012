"""Value types shared by the engine, the games and the symbolic modules."""

from __future__ import annotations

import enum
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

TASKS = ("arithmetic", "mapreader", "sorting", "twc")

STEP_LIMIT = 50

SPLITS = {
    "train": range(0, 1000),
    "dev": range(1000, 2000),
    "test": range(2000, 3000),
}


class SymWorldError(Exception):
    """Base class for every error raised by this package."""


class ConfigurationError(SymWorldError):
    pass


class InvalidAction(SymWorldError):
    def __init__(self, text: str):
        super().__init__(f"not a valid action: {text!r}")
        self.text = text


class EpisodeFinished(SymWorldError):
    pass


_STRIP = "'\"`.,;:!?()[]{}<> \t\r\n"
_WS = re.compile(r"\s+")


def canonicalize(text: str) -> str:
    """Normalize free text into the canonical command form.

    Lowercases, collapses runs of whitespace and strips quotes, backticks and
    punctuation from both ends. Canonical action strings are fixed points.

    >>> canonicalize("  `Take  20 Apples`. ")
    'take 20 apples'
    """
    return _WS.sub(" ", text.lower()).strip(_STRIP)


class Origin(str, enum.Enum):
    ENVIRONMENT = "environment"
    MODULE = "module"


@dataclass(frozen=True)
class Action:
    text: str
    origin: Origin = Origin.ENVIRONMENT

    def __post_init__(self):
        if not self.text:
            raise ValueError("action text must be non-empty")
        if canonicalize(self.text) != self.text:
            raise ValueError(f"action text is not canonical: {self.text!r}")

    def __str__(self) -> str:
        return self.text


class ActionSet(Sequence[Action]):
    """Ordered, duplicate-free collection of valid actions.

    Environment actions come first, module actions after, matching the union
    the agent is offered each turn.
    """

    def __init__(self, actions: Iterable[Action] = ()):
        self._actions: list[Action] = []
        self._index: dict[str, Action] = {}
        for action in actions:
            if action.text in self._index:
                raise ValueError(f"duplicate action text: {action.text!r}")
            self._actions.append(action)
            self._index[action.text] = action

    @classmethod
    def union(cls, env: Iterable[str], module: Iterable[str]) -> "ActionSet":
        return cls(
            [Action(t, Origin.ENVIRONMENT) for t in env]
            + [Action(t, Origin.MODULE) for t in module]
        )

    def __getitem__(self, i):
        return self._actions[i]

    def __len__(self) -> int:
        return len(self._actions)

    def __iter__(self) -> Iterator[Action]:
        return iter(self._actions)

    def __contains__(self, item) -> bool:
        text = item.text if isinstance(item, Action) else item
        return text in self._index

    def __eq__(self, other) -> bool:
        if not isinstance(other, ActionSet):
            return NotImplemented
        return self._actions == other._actions

    def __repr__(self) -> str:
        return f"ActionSet({self.texts()!r})"

    def get(self, text: str) -> Action | None:
        return self._index.get(text)

    def texts(self) -> list[str]:
        return [a.text for a in self._actions]

    def of_origin(self, origin: Origin) -> list[Action]:
        return [a for a in self._actions if a.origin is origin]


@dataclass(frozen=True)
class Observation:
    """Rendered text plus an optional structured view of the same scene.

    ``items`` holds the display strings of visible items (``"25 g of oak"``,
    ``"56 apples"``); each one appears verbatim in ``text``. ``None`` means the
    observation carries no scene listing at all, as opposed to an empty one.
    """

    text: str
    room: str | None = None
    items: tuple[str, ...] | None = None

    def __post_init__(self):
        for name in self.items or ():
            if name not in self.text:
                raise ValueError(f"structured item {name!r} missing from text")
        if self.room is not None and self.room not in self.text:
            raise ValueError(f"room {self.room!r} missing from text")


@dataclass
class StepResult:
    observation: Observation
    reward: int
    done: bool
    valid_actions: ActionSet
    raw_score: int
    info: dict = field(default_factory=dict)


def split_of(seed: int) -> str | None:
    for name, seeds in SPLITS.items():
        if seed in seeds:
            return name
    return None


def split_seeds(split: str, count: int, offset: int = 0) -> list[int]:
    if split not in SPLITS:
        raise ConfigurationError(f"unknown split {split!r}; expected one of {sorted(SPLITS)}")
    if count < 1:
        raise ConfigurationError("episode count must be at least 1")
    base = SPLITS[split].start + offset
    seeds = list(range(base, base + count))
    if seeds[-1] not in SPLITS[split]:
        warnings.warn(f"seeds {seeds[0]}..{seeds[-1]} run past the {split} split", stacklevel=2)
    return seeds


def normalize_score(raw: int, max_raw: int) -> float:
    if raw < 0:
        raise ValueError("raw score must be non-negative")
    if max_raw <= 0:
        raise ValueError("max_raw must be positive")
    return min(raw / max_raw, 1.0)
