"""Arithmetic: read a math problem, then box the bundle whose quantity is the answer."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..core import Observation
from .base import Game, Outcome, join_items, seeded_rng

OPERATIONS = ("add", "sub", "mul", "div")
OPERAND_RANGE = (2, 12)
MAX_ANSWER = 100

NOUNS = (
    "apples", "avocados", "bananas", "oranges", "peaches", "pears", "plums",
    "lemons", "limes", "mangoes", "kiwis", "apricots", "cherries", "figs",
    "grapes", "tomatoes", "potatoes", "onions", "carrots", "walnuts",
)
ROOMS = ("kitchen", "pantry", "living room", "dining room", "garage")

_PROBLEM_TEXT = {
    "add": "Add {a} and {b}.",
    "sub": "Subtract {b} from {a}.",
    "mul": "Multiply {a} and {b}.",
    "div": "Divide {a} by {b}.",
}


def solve(op: str, a: int, b: int) -> int | None:
    """Exact integer result of ``a op b``, or None when it is not a valid quantity."""
    if op == "add":
        r = a + b
    elif op == "sub":
        r = a - b
    elif op == "mul":
        r = a * b
    elif op == "div":
        if b == 0 or a % b:
            return None
        r = a // b
    else:
        raise ValueError(f"unknown operation {op!r}")
    return r if 1 <= r <= MAX_ANSWER else None


@dataclass(frozen=True)
class MathProblem:
    op: str
    a: int
    b: int

    @property
    def answer(self) -> int:
        r = solve(self.op, self.a, self.b)
        if r is None:
            raise ValueError(f"invalid problem {self}")
        return r

    @property
    def text(self) -> str:
        return _PROBLEM_TEXT[self.op].format(a=self.a, b=self.b)


@dataclass(frozen=True)
class Bundle:
    quantity: int
    noun: str

    @property
    def name(self) -> str:
        return f"{self.quantity} {self.noun}"


def make_bundles(problem: MathProblem, nouns: list[str], rng) -> list[Bundle]:
    """Correct bundle plus three distractors, all quantities distinct.

    Distractors are the results of the other three operations on the same
    operands where those are valid quantities, else random distinct values.
    """
    quantities = [problem.answer]
    for op in OPERATIONS:
        if op == problem.op:
            continue
        r = solve(op, problem.a, problem.b)
        if r is None or r in quantities:
            r = rng.choice([q for q in range(1, MAX_ANSWER + 1) if q not in quantities])
        quantities.append(r)
    return [Bundle(q, noun) for q, noun in zip(quantities, nouns)]


@dataclass
class ArithmeticGame(Game):
    task = "arithmetic"

    room: str
    problem: MathProblem
    bundles: list[Bundle]
    problem_held: bool = False
    problem_read: bool = False
    held: list[str] = field(default_factory=list)
    boxed: list[str] = field(default_factory=list)

    @classmethod
    def generate(cls, seed: int, **options) -> "ArithmeticGame":
        rng = seeded_rng(cls.task, seed)
        lo, hi = OPERAND_RANGE
        while True:
            problem = MathProblem(rng.choice(OPERATIONS), rng.randint(lo, hi), rng.randint(lo, hi))
            if solve(problem.op, problem.a, problem.b) is not None:
                break
        bundles = make_bundles(problem, rng.sample(NOUNS, 4), rng)
        rng.shuffle(bundles)
        return cls(room=rng.choice(ROOMS), problem=problem, bundles=bundles)

    @property
    def description(self) -> str:
        return (
            "Your first task is to solve the math problem. Then, pick up the item with "
            "the same quantity as the math problem answer, and place it in the box."
        )

    @property
    def max_raw(self) -> int:
        return 1

    @property
    def answer_bundle(self) -> Bundle:
        return next(b for b in self.bundles if b.quantity == self.problem.answer)

    def _floor(self) -> list[str]:
        names = [] if self.problem_held else ["math problem"]
        names += [b.name for b in self.bundles if b.name not in self.held and b.name not in self.boxed]
        return names

    def look(self) -> Observation:
        floor = self._floor()
        text = f"You are in the {self.room}. You see a box."
        if floor:
            shown = ["a math problem" if n == "math problem" else n for n in floor]
            text += f" On the floor, you see: {join_items(shown)}."
        return Observation(text, room=self.room, items=tuple(floor))

    def inventory(self) -> list[str]:
        return (["a math problem"] if self.problem_held else []) + list(self.held)

    def env_actions(self) -> list[str]:
        actions = ["look around"]
        if not self.problem_held:
            actions.append("take math problem")
        else:
            actions.append("read math problem")
        for b in self.bundles:
            if b.name in self.held:
                actions.append(f"put {b.name} in box")
            elif b.name not in self.boxed:
                actions.append(f"take {b.name}")
        return actions

    def apply(self, command: str) -> Outcome:
        if command == "look around":
            return Outcome(self.look())
        if command == "take math problem":
            self.problem_held = True
            return Outcome(Observation("You take the math problem."))
        if command == "read math problem":
            self.problem_read = True
            return Outcome(Observation(f"The math problem reads: {self.problem.text}"))
        for b in self.bundles:
            if command == f"take {b.name}":
                self.held.append(b.name)
                return Outcome(Observation(f"You take the {b.name}."))
            if command == f"put {b.name} in box":
                self.held.remove(b.name)
                self.boxed.append(b.name)
                if b.quantity == self.problem.answer:
                    return Outcome(
                        Observation(f"You put the {b.name} in the box. That is the correct answer!"),
                        reward=1, done=True, reason="completed",
                    )
                return Outcome(
                    Observation(f"You put the {b.name} in the box. That is not the correct answer."),
                    done=True, reason="failed",
                )
        raise ValueError(f"command not applicable: {command!r}")
