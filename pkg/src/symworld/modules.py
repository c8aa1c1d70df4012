"""Symbolic modules: calculator, navigator, sorter and knowledge-base lookup.

Each module maps a module-action string plus the context it needs to a
response text. Module actions use a small fixed grammar::

    add|sub|mul|div <int> <int>
    next step to <room>
    sort ascending|descending
    query <object phrase>
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field

from .core import Observation, canonicalize
from .games import ArithmeticGame, Game, MapReaderGame, SortingGame, TWCGame
from .games.arithmetic import OPERATIONS
from .games.sorting import parse_item, sort_by_quantity

GERUNDS = {"add": "Adding", "sub": "Subtracting", "mul": "Multiplying", "div": "Dividing"}

INVALID_OPERATION = "That operation is not valid here."
MAP_UNREAD = "You should read the map first."
NOTHING_TO_SORT = "There is nothing to sort."


# -- query grammar ----------------------------------------------------------

@dataclass(frozen=True)
class ModuleQuery:
    verb: str  # add | sub | mul | div | next step to | sort | query
    args: tuple = ()

    def render(self) -> str:
        return " ".join([self.verb, *map(str, self.args)])


_CALC = re.compile(r"^(add|sub|mul|div) (-?\d+) (-?\d+)$")
_NEXT = re.compile(r"^next step to (.+)$")
_SORT = re.compile(r"^sort (ascending|descending)$")
_QUERY = re.compile(r"^query (.+)$")


def parse_query(text: str) -> ModuleQuery | None:
    if m := _CALC.match(text):
        return ModuleQuery(m.group(1), (int(m.group(2)), int(m.group(3))))
    if m := _NEXT.match(text):
        return ModuleQuery("next step to", (m.group(1),))
    if m := _SORT.match(text):
        return ModuleQuery("sort", (m.group(1),))
    if m := _QUERY.match(text):
        return ModuleQuery("query", (m.group(1),))
    return None


# -- calculator -------------------------------------------------------------

def calc(op: str, a: int, b: int) -> str:
    if op == "add":
        r = a + b
    elif op == "sub":
        r = a - b
    elif op == "mul":
        r = a * b
    elif op == "div":
        if b == 0 or a % b:
            return INVALID_OPERATION
        r = a // b
    else:
        return INVALID_OPERATION
    return f"{GERUNDS[op]} {a} and {b} results in {r}."


# -- navigator --------------------------------------------------------------

_ROOM = re.compile(r"You are in the ([a-z][a-z ]*?)\.")
_MAP_LINE = re.compile(r"^The (.+?) connects to (.+)\.$")


def parse_map(text: str) -> dict[str, list[str]] | None:
    """Adjacency lists from a map listing, or None if ``text`` is not one."""
    lines = text.splitlines()
    adj: dict[str, set[str]] = {}
    for line in lines:
        m = _MAP_LINE.match(line)
        if m is None:
            return None
        room = m.group(1)
        adj.setdefault(room, set())
        for other in m.group(2).split(", "):
            adj[room].add(other)
            adj.setdefault(other, set()).add(room)
    if not adj:
        return None
    return {r: sorted(n) for r, n in adj.items()}


def parse_room(text: str) -> str | None:
    m = _ROOM.search(text)
    return m.group(1) if m else None


def shortest_path(adj: dict[str, list[str]], start: str, dest: str) -> list[str] | None:
    """Rooms to walk through from ``start`` to ``dest``, excluding ``start``.

    Among equally short routes the lexicographically smallest room sequence
    wins. Returns None if ``dest`` is unreachable.
    """
    if start not in adj or dest not in adj:
        return None
    # distances to dest, then greedy descent picking the smallest name
    dist = {dest: 0}
    queue = deque([dest])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    if start not in dist:
        return None
    path, here = [], start
    while here != dest:
        here = min(v for v in adj[here] if dist.get(v) == dist[here] - 1)
        path.append(here)
    return path


@dataclass
class ModuleContext:
    """What the modules remember from earlier environment observations."""

    previous_observation: Observation | None = None
    last_look: Observation | None = None
    current_room: str | None = None
    map_edges: dict[str, list[str]] | None = None

    def observe(self, observation: Observation) -> None:
        self.previous_observation = observation
        if observation.items is not None:
            self.last_look = observation
        room = parse_room(observation.text)
        if room is not None:
            self.current_room = room
        edges = parse_map(observation.text)
        if edges is not None:
            self.map_edges = edges


def next_step(destination: str, ctx: ModuleContext) -> str:
    if ctx.map_edges is None:
        return MAP_UNREAD
    here = ctx.current_room
    if here is None:
        return "I do not know where you are."
    if destination == here:
        return f"You are already at {here}."
    path = shortest_path(ctx.map_edges, here, destination)
    if path is None:
        return f"There is no known path to {destination}."
    return (
        f"The next location to go to is {path[0]}. If you want to go to {destination} "
        f"from {here}, you need go through {', '.join(path)}."
    )


_NEXT_REPLY = re.compile(r"you need go through (.+)\.$")


def parse_route(response: str) -> list[str] | None:
    """Route listed by a navigator response, or None if it names no route."""
    m = _NEXT_REPLY.search(response)
    return m.group(1).split(", ") if m else None


# -- sorter -----------------------------------------------------------------

def sort_items(direction: str, last_look: Observation | None) -> str:
    items = [it for label in (last_look.items or ()) if (it := parse_item(label))] if last_look else []
    if not items:
        return NOTHING_TO_SORT
    descending = direction == "descending"
    order = "decreasing" if descending else "increasing"
    ordered = sort_by_quantity(items, descending=descending)
    return (
        f"The observed items, sorted in order of {order} quantity, are: "
        f"{', '.join(it.label for it in ordered)}."
    )


_SORT_REPLY = re.compile(r"quantity, are: (.+)\.$")


def parse_sorted(response: str) -> list[str] | None:
    m = _SORT_REPLY.search(response)
    return m.group(1).split(", ") if m else None


# -- knowledge base ---------------------------------------------------------

def kb_query(phrase: str, kb: dict[str, str]) -> str:
    obj = canonicalize(phrase)
    location = kb.get(obj)
    if location is None:
        return f"I do not know where {obj} belongs."
    return f"{obj[:1].upper()}{obj[1:]} is expected to be located at {location}."


_KB_REPLY = re.compile(r"is expected to be located at (.+)\.$")


def parse_location(response: str) -> str | None:
    m = _KB_REPLY.search(response)
    return m.group(1) if m else None


# -- action offering and dispatch -------------------------------------------

def module_actions(game: Game, ctx: ModuleContext) -> list[str]:
    """Module actions on offer, limited to the ones relevant to the task."""
    if isinstance(game, ArithmeticGame):
        if not game.problem_read:
            return []
        a, b = game.problem.a, game.problem.b
        actions = []
        for op in OPERATIONS:
            if op == "sub" and a <= b:
                continue
            if op == "div" and a % b:
                continue
            actions.append(f"{op} {a} {b}")
        return actions
    if isinstance(game, MapReaderGame):
        if ctx.map_edges is None:
            return []
        return [f"next step to {game.coin_room}", f"next step to {game.box_room}"]
    if isinstance(game, SortingGame):
        return ["sort ascending", "sort descending"]
    if isinstance(game, TWCGame):
        return [f"query {o}" for o in game.misplaced()]
    raise TypeError(f"no symbolic module for {type(game).__name__}")


def run_module(text: str, ctx: ModuleContext, kb: dict[str, str]) -> str:
    query = parse_query(text)
    if query is None:
        raise ValueError(f"not a module action: {text!r}")
    if query.verb in GERUNDS:
        return calc(query.verb, *query.args)
    if query.verb == "next step to":
        return next_step(query.args[0], ctx)
    if query.verb == "sort":
        return sort_items(query.args[0], ctx.last_look)
    return kb_query(query.args[0], kb)
