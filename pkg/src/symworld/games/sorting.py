"""Sorting: box 3-5 quantified items in ascending order of unit-normalized quantity."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..core import Observation
from .base import Game, Outcome, join_items, seeded_rng

# factors to the base unit of each dimension (mg, ml, mm)
UNITS: dict[str, tuple[str, int]] = {
    "mg": ("mass", 1),
    "g": ("mass", 1_000),
    "kg": ("mass", 1_000_000),
    "ml": ("volume", 1),
    "l": ("volume", 1_000),
    "mm": ("length", 1),
    "cm": ("length", 10),
    "m": ("length", 1_000),
}
DIMENSIONS = ("mass", "volume", "length")
MAGNITUDE_RANGE = (1, 50)
ITEM_COUNT = (3, 5)

MATERIALS = (
    "oak", "brick", "cedar", "marble", "granite", "pine", "steel", "copper",
    "clay", "sand", "glass", "iron", "maple", "birch", "slate", "cotton",
    "wool", "silver", "gold", "rubber", "wax", "salt", "chalk", "bamboo",
)
ROOMS = ("workshop", "kitchen", "storeroom", "laboratory", "garage")

_ITEM = re.compile(r"^(\d+) (mg|g|kg|ml|l|mm|cm|m) of (.+)$")


@dataclass(frozen=True, order=True)
class Quantity:
    magnitude: int
    unit: str

    def __post_init__(self):
        if self.unit not in UNITS:
            raise ValueError(f"unknown unit {self.unit!r}")
        if self.magnitude <= 0:
            raise ValueError("magnitude must be positive")

    @property
    def dimension(self) -> str:
        return UNITS[self.unit][0]

    @property
    def base_value(self) -> int:
        return self.magnitude * UNITS[self.unit][1]

    def __str__(self) -> str:
        return f"{self.magnitude} {self.unit}"


@dataclass(frozen=True)
class Item:
    name: str
    quantity: Quantity

    @property
    def label(self) -> str:
        return f"{self.quantity} of {self.name}"


def parse_item(label: str) -> Item | None:
    """Parse ``"25 g of oak"`` into an Item; None if the text is not a quantified item."""
    m = _ITEM.match(label)
    if m is None:
        return None
    return Item(m.group(3), Quantity(int(m.group(1)), m.group(2)))


def sort_by_quantity(items, descending: bool = False) -> list[Item]:
    return sorted(items, key=lambda it: (it.quantity.base_value, it.name), reverse=descending)


@dataclass
class SortingGame(Game):
    task = "sorting"

    room: str
    items: list[Item]
    held: list[str] = field(default_factory=list)
    placed: list[str] = field(default_factory=list)

    @classmethod
    def generate(cls, seed: int, allow_mixed_dimensions: bool = False, **options) -> "SortingGame":
        rng = seeded_rng(cls.task, seed)
        n = rng.randint(*ITEM_COUNT)
        names = rng.sample(MATERIALS, n)
        dim = rng.choice(DIMENSIONS)
        units = [u for u, (d, _) in UNITS.items() if allow_mixed_dimensions or d == dim]
        while True:
            items = [Item(name, Quantity(rng.randint(*MAGNITUDE_RANGE), rng.choice(units))) for name in names]
            if len({it.quantity.base_value for it in items}) == n:
                break
        return cls(room=rng.choice(ROOMS), items=items)

    @property
    def description(self) -> str:
        return (
            "Your task is to sort objects by quantity. First, place the object with the "
            "smallest quantity in the box. Then, place the objects with the next smallest "
            "quantity in the box, and repeat until all objects have been placed in the box."
        )

    @property
    def max_raw(self) -> int:
        return len(self.items)

    @property
    def expected_order(self) -> list[str]:
        return [it.label for it in sort_by_quantity(self.items)]

    def _floor(self) -> list[str]:
        return [it.label for it in self.items if it.label not in self.held and it.label not in self.placed]

    def _floor_text(self) -> str:
        floor = self._floor()
        if not floor:
            return "There is nothing on the floor."
        return f"On the floor, you see: {join_items(floor)}."

    def look(self) -> Observation:
        text = f"You are in the {self.room}. You see a box"
        if self.placed:
            text += f", which contains: {join_items(self.placed)}"
        text += f". {self._floor_text()}"
        return Observation(text, room=self.room, items=tuple(self._floor()))

    def inventory(self) -> list[str]:
        return list(self.held)

    def env_actions(self) -> list[str]:
        actions = ["look around"]
        for it in self.items:
            if it.label in self.held:
                actions.append(f"put {it.label} in box")
            elif it.label not in self.placed:
                actions.append(f"take {it.label}")
        return actions

    def _smallest_remaining(self) -> Item:
        return sort_by_quantity(it for it in self.items if it.label not in self.placed)[0]

    def apply(self, command: str) -> Outcome:
        if command == "look around":
            return Outcome(self.look())
        for it in self.items:
            if command == f"take {it.label}":
                self.held.append(it.label)
                return Outcome(self._after(f"You take the {it.label}."))
            if command == f"put {it.label} in box":
                correct = it == self._smallest_remaining()
                self.held.remove(it.label)
                self.placed.append(it.label)
                if not correct:
                    return Outcome(
                        self._after(f"You put the {it.label} in the box. That is out of order."),
                        done=True, reason="failed",
                    )
                done = len(self.placed) == len(self.items)
                return Outcome(
                    self._after(f"You put the {it.label} in the box."),
                    reward=1, done=done, reason="completed" if done else None,
                )
        raise ValueError(f"command not applicable: {command!r}")

    def _after(self, message: str) -> Observation:
        return Observation(f"{message} {self._floor_text()}", items=tuple(self._floor()))
