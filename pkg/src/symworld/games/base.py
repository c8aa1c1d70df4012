from __future__ import annotations

import abc
import dataclasses
import random
from dataclasses import dataclass
from typing import ClassVar

from ..core import Observation


@dataclass
class Outcome:
    observation: Observation
    reward: int = 0
    done: bool = False
    reason: str | None = None  # "completed" | "failed" when done


def seeded_rng(task: str, seed: int) -> random.Random:
    # str seeding hashes with sha512, so it is stable across processes
    return random.Random(f"{task}:{seed}")


def join_items(items: list[str]) -> str:
    return ", ".join(items)


class Game(abc.ABC):
    """World state and rules of one seeded game instance.

    Subclasses are dataclasses; their fields are the complete world state, so
    ``snapshot`` can compare states without knowing the game.
    """

    task: ClassVar[str]

    @classmethod
    @abc.abstractmethod
    def generate(cls, seed: int, **options) -> "Game": ...

    @property
    @abc.abstractmethod
    def description(self) -> str: ...

    @property
    @abc.abstractmethod
    def max_raw(self) -> int: ...

    @abc.abstractmethod
    def look(self) -> Observation: ...

    @abc.abstractmethod
    def env_actions(self) -> list[str]: ...

    @abc.abstractmethod
    def apply(self, command: str) -> Outcome: ...

    @abc.abstractmethod
    def inventory(self) -> list[str]: ...

    def initial_observation(self) -> Observation:
        return self.look()

    def inventory_text(self) -> str:
        held = self.inventory()
        if not held:
            return "Your inventory is empty."
        return f"Your inventory contains: {join_items(held)}."

    def snapshot(self) -> str:
        return repr(dataclasses.astuple(self))
