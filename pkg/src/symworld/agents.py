"""Policies: random baseline, scripted oracle and the prompted LLM agent."""

from __future__ import annotations

import abc
import random
import re
from dataclasses import dataclass, field

from .core import Action, ActionSet, Observation, SymWorldError, canonicalize
from .engine import EpisodeState
from .games import ArithmeticGame, MapReaderGame, SortingGame, TWCGame
from .games.sorting import sort_by_quantity
from .llm import LLM, ChatMessage, LLMError
from .modules import parse_location, parse_route
from .prompts import build_action_query, build_role_init


class ReplyUnparseable(SymWorldError):
    def __init__(self, raw: str):
        super().__init__(f"reply matches no valid action: {raw!r}")
        self.raw = raw


class AgentAborted(SymWorldError):
    pass


@dataclass
class PolicyDecision:
    chosen: Action
    raw_reply: str | None = None
    repair_applied: bool = False


@dataclass
class Turn:
    """Everything a policy sees when choosing. Only the oracle reads ``state``."""

    observation: Observation
    inventory: str
    score: int
    valid_actions: ActionSet
    state: EpisodeState


def parse_reply(raw: str, action_set: ActionSet) -> PolicyDecision:
    """Map a free-text reply onto one valid action.

    An exact (canonicalized) match wins; otherwise the reply is accepted if
    exactly one action appears in it as a whole phrase, ignoring actions that
    only match as part of a longer matching action.
    """
    text = canonicalize(raw)
    exact = action_set.get(text)
    if exact is not None:
        return PolicyDecision(exact, raw_reply=raw)
    hits = [
        a for a in action_set
        if re.search(rf"(?<![\w]){re.escape(a.text)}(?![\w])", text)
    ]
    hits = [a for a in hits if not any(a is not b and a.text in b.text for b in hits)]
    if len(hits) == 1:
        return PolicyDecision(hits[0], raw_reply=raw, repair_applied=True)
    raise ReplyUnparseable(raw)


def fallback_action(action_set: ActionSet) -> Action:
    return action_set.get("look around") or action_set[0]


class Agent(abc.ABC):
    name: str = "agent"

    def reset(self, state: EpisodeState) -> None:
        """Called once per episode before the first ``act``."""

    @abc.abstractmethod
    def act(self, turn: Turn) -> PolicyDecision: ...


class RandomAgent(Agent):
    name = "random"

    def __init__(self, seed: int | None = None):
        self.seed = seed
        self.rng = random.Random(seed)

    def reset(self, state: EpisodeState) -> None:
        if self.seed is None:
            self.rng = random.Random(f"random:{state.task}:{state.seed}")

    def act(self, turn: Turn) -> PolicyDecision:
        return PolicyDecision(self.rng.choice(list(turn.valid_actions)))


class OracleAgent(Agent):
    """Scripted full-visibility policy that plays each task optimally.

    It uses the symbolic modules the way a gold trajectory would and reads
    their replies off the observation, except on Sorting, where the item
    quantities are already visible and querying the sorter only costs a step.
    """

    name = "oracle"

    def reset(self, state: EpisodeState) -> None:
        self.route: list[str] = []
        self.trail: list[str] = []
        self.awaiting: str | None = None
        self.locations: dict[str, str] = {}
        self.calculated = False

    def act(self, turn: Turn) -> PolicyDecision:
        game = turn.state.game
        if isinstance(game, ArithmeticGame):
            text = self._arithmetic(game)
        elif isinstance(game, MapReaderGame):
            text = self._mapreader(game, turn.observation)
        elif isinstance(game, SortingGame):
            text = self._sorting(game)
        elif isinstance(game, TWCGame):
            text = self._twc(game, turn.observation)
        else:
            raise TypeError(type(game).__name__)
        action = turn.valid_actions.get(text)
        if action is None:
            raise AssertionError(f"oracle chose {text!r}, not in {turn.valid_actions.texts()}")
        return PolicyDecision(action)

    def _arithmetic(self, g: ArithmeticGame) -> str:
        if not g.problem_held:
            return "take math problem"
        if not g.problem_read:
            return "read math problem"
        if not self.calculated:
            self.calculated = True
            p = g.problem
            return f"{p.op} {p.a} {p.b}"
        target = g.answer_bundle.name
        return f"put {target} in box" if target in g.held else f"take {target}"

    def _mapreader(self, g: MapReaderGame, obs: Observation) -> str:
        if not self.trail:
            self.trail.append(g.agent_room)
        if not g.map_read:
            return "read map"
        if self.awaiting is not None:
            self.route = parse_route(obs.text) or []
            self.awaiting = None
        if not g.coin_held:
            if g.agent_room == g.coin_room:
                # walk back the way we came when that ends at the box
                if self.trail[0] == g.box_room:
                    self.route = self.trail[-2::-1]
                return "take coin"
            goal = g.coin_room
        else:
            if g.agent_room == g.box_room:
                return "put coin in box"
            goal = g.box_room
        if not self.route:
            self.awaiting = goal
            return f"next step to {goal}"
        nxt = self.route.pop(0)
        self.trail.append(nxt)
        return f"go to {nxt}"

    def _sorting(self, g: SortingGame) -> str:
        if g.held:
            return f"put {g.held[0]} in box"
        remaining = [it for it in g.items if it.label not in g.placed]
        return f"take {sort_by_quantity(remaining)[0].label}"

    def _twc(self, g: TWCGame, obs: Observation) -> str:
        if self.awaiting is not None:
            self.locations[self.awaiting] = parse_location(obs.text)
            self.awaiting = None
        for obj in g.misplaced():
            if obj not in self.locations:
                self.awaiting = obj
                return f"query {obj}"
            if g.position[obj] != "held":
                return f"take {obj}"
            return f"put {obj} in {self.locations[obj]}"
        raise AssertionError("no misplaced objects left")


@dataclass
class Transcript:
    messages: list[ChatMessage] = field(default_factory=list)

    def add(self, role: str, content: str) -> None:
        self.messages.append(ChatMessage(role, content))

    def window(self, max_turns: int | None = None, max_chars: int | None = None) -> list[ChatMessage]:
        """Messages to send: role init plus the most recent turns that fit.

        The newest message is always kept; older query/reply pairs are
        dropped oldest-first once either budget is exceeded.
        """
        head, rest = self.messages[:1], self.messages[1:]
        if max_turns is not None:
            rest = rest[-(2 * max_turns - 1):] if max_turns > 0 else rest[-1:]
        if max_chars is not None:
            size = sum(len(m.content) for m in head + rest)
            while len(rest) > 1 and size > max_chars:
                size -= sum(len(m.content) for m in rest[:2])
                rest = rest[2:]
        return head + rest


def llm_policy_step(
    transcript: Transcript,
    observation: str,
    inventory: str,
    score: int,
    action_set: ActionSet,
    llm: LLM,
    *,
    max_turns: int | None = None,
    max_chars: int | None = None,
    strict: bool = False,
) -> tuple[PolicyDecision, Transcript]:
    """One action query/reply round, with the repair chain.

    Exact match, then unique substring, then one re-prompt with the same
    query, then fall back to "look around" (or the first action). With
    ``strict`` an unparseable second reply aborts instead of falling back.
    """
    query = build_action_query(observation, inventory, score, action_set)
    raw = ""
    for attempt in range(2):
        transcript.add("user", query)
        try:
            raw = llm.complete(transcript.window(max_turns, max_chars))
        except LLMError as exc:
            raise AgentAborted(str(exc)) from exc
        transcript.add("assistant", raw)
        try:
            decision = parse_reply(raw, action_set)
        except ReplyUnparseable:
            continue
        decision.repair_applied = decision.repair_applied or attempt > 0
        return decision, transcript
    if strict:
        raise AgentAborted(f"unparseable reply after re-prompt: {raw!r}")
    return PolicyDecision(fallback_action(action_set), raw_reply=raw, repair_applied=True), transcript


class LLMAgent(Agent):
    name = "llm"

    def __init__(
        self,
        llm: LLM,
        *,
        constrained: bool = True,
        max_turns: int | None = None,
        max_chars: int | None = None,
        strict: bool = False,
    ):
        self.llm = llm
        self.constrained = constrained
        self.max_turns = max_turns
        self.max_chars = max_chars
        self.strict = strict
        self.transcript = Transcript()

    def reset(self, state: EpisodeState) -> None:
        self.transcript = Transcript()
        self.transcript.add("system", build_role_init(state.task, state.description, self.constrained))

    def act(self, turn: Turn) -> PolicyDecision:
        decision, self.transcript = llm_policy_step(
            self.transcript, turn.observation.text, turn.inventory, turn.score,
            turn.valid_actions, self.llm,
            max_turns=self.max_turns, max_chars=self.max_chars, strict=self.strict,
        )
        return decision
