"""Text World Common Sense: put misplaced household objects where they belong."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from ..core import Observation, SymWorldError
from .base import Game, Outcome, join_items, seeded_rng

# object counts 1-3, weighted toward single-object rooms
OBJECT_COUNT_WEIGHTS = {1: 0.7, 2: 0.2, 3: 0.1}
DISTRACTOR_LOCATIONS = 2
ROOMS = ("living room", "bedroom", "kitchen", "hallway", "study")

TAKE_REWARD = 1
PLACE_REWARD = 2


class KnowledgeBaseError(SymWorldError):
    pass


def parse_kb(text: str) -> dict[str, str]:
    kb: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not all(p.strip() for p in parts):
            raise KnowledgeBaseError(f"line {lineno}: expected 'object<TAB>location', got {line!r}")
        obj, loc = (p.strip() for p in parts)
        if obj in kb:
            raise KnowledgeBaseError(f"line {lineno}: duplicate object {obj!r}")
        kb[obj] = loc
    return kb


@functools.lru_cache(maxsize=None)
def _default_kb_text() -> str:
    return resources.files("symworld.data").joinpath("twc_kb.tsv").read_text(encoding="utf-8")


def load_kb(path: str | Path | None = None) -> dict[str, str]:
    """Object -> canonical location table. Defaults to the bundled household dataset."""
    if path is None:
        return parse_kb(_default_kb_text())
    return parse_kb(Path(path).read_text(encoding="utf-8"))


@dataclass
class TWCGame(Game):
    task = "twc"

    room: str
    locations: tuple[str, ...]
    targets: dict[str, str]  # object -> canonical location
    position: dict[str, str] = field(default_factory=dict)  # object -> "floor" | "held" | location
    taken: list[str] = field(default_factory=list)

    def __post_init__(self):
        for obj, loc in self.targets.items():
            if loc not in self.locations:
                raise KnowledgeBaseError(f"{obj!r} belongs in {loc!r}, which is not in the room")
            self.position.setdefault(obj, "floor")

    @classmethod
    def generate(cls, seed: int, kb: dict[str, str] | None = None, **options) -> "TWCGame":
        kb = load_kb() if kb is None else kb
        rng = seeded_rng(cls.task, seed)
        counts = sorted(OBJECT_COUNT_WEIGHTS)
        k = rng.choices(counts, weights=[OBJECT_COUNT_WEIGHTS[c] for c in counts])[0]
        objects = rng.sample(sorted(kb), k)
        targets = {obj: kb[obj] for obj in objects}
        needed = sorted(set(targets.values()))
        others = sorted(set(kb.values()) - set(needed))
        locations = needed + rng.sample(others, DISTRACTOR_LOCATIONS)
        rng.shuffle(locations)
        return cls(room=rng.choice(ROOMS), locations=tuple(locations), targets=targets)

    @property
    def description(self) -> str:
        return (
            "Your task is to pick up objects, then place them in their usual "
            "locations in the environment."
        )

    @property
    def max_raw(self) -> int:
        return (TAKE_REWARD + PLACE_REWARD) * len(self.targets)

    def is_placed(self, obj: str) -> bool:
        return self.position[obj] == self.targets[obj]

    def misplaced(self) -> list[str]:
        return [o for o in self.targets if not self.is_placed(o)]

    def _takeable(self) -> list[str]:
        return [o for o in self.targets if self.position[o] != "held" and not self.is_placed(o)]

    def look(self) -> Observation:
        text = f"You are in the {self.room}. You see: {join_items(['a ' + loc for loc in self.locations])}."
        floor = [o for o in self.targets if self.position[o] == "floor"]
        if floor:
            text += f" On the floor, you see: {join_items(floor)}."
        for o in self.targets:
            if self.position[o] not in ("floor", "held"):
                text += f" The {o} is in the {self.position[o]}."
        return Observation(text, room=self.room, items=tuple(self._takeable()))

    def inventory(self) -> list[str]:
        return [o for o in self.targets if self.position[o] == "held"]

    def env_actions(self) -> list[str]:
        actions = ["look around"]
        actions += [f"take {o}" for o in self._takeable()]
        for o in self.targets:
            if self.position[o] == "held":
                actions += [f"put {o} in {loc}" for loc in self.locations]
        return actions

    def apply(self, command: str) -> Outcome:
        if command == "look around":
            return Outcome(self.look())
        for o in self.targets:
            if command == f"take {o}":
                self.position[o] = "held"
                reward = 0
                if o not in self.taken:
                    self.taken.append(o)
                    reward = TAKE_REWARD
                return Outcome(Observation(f"You take the {o}."), reward=reward)
            for loc in self.locations:
                if command == f"put {o} in {loc}":
                    self.position[o] = loc
                    if loc != self.targets[o]:
                        return Outcome(Observation(f"You put the {o} in the {loc}."))
                    done = not self.misplaced()
                    return Outcome(
                        Observation(f"You put the {o} in the {loc}. That is where it belongs."),
                        reward=PLACE_REWARD, done=done, reason="completed" if done else None,
                    )
        raise ValueError(f"command not applicable: {command!r}")
