"""MapReader: carry a coin through a room graph to the box, with a map to help."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from ..core import Observation
from .base import Game, Outcome, join_items, seeded_rng

ROOM_NAMES = (
    "pantry", "chamber", "canteen", "kitchen", "lounge", "supermarket", "bar",
    "steam room", "library", "cookery", "hallway", "garden", "attic", "cellar",
    "bedroom", "bathroom", "office", "laundry room", "workshop", "foyer",
)
ROOM_COUNT = (6, 12)
MAX_DEGREE = 4
PATH_LENGTH = (2, 6)


def adjacency(rooms, edges) -> dict[str, list[str]]:
    adj = {r: [] for r in rooms}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return {r: sorted(n) for r, n in adj.items()}


def distances(adj: dict[str, list[str]], source: str) -> dict[str, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def random_room_graph(rng, n: int) -> tuple[tuple[str, ...], tuple[tuple[str, str], ...]]:
    """Random spanning tree plus a few extra edges, degree capped at MAX_DEGREE."""
    rooms = rng.sample(ROOM_NAMES, n)
    degree = {r: 0 for r in rooms}
    edges: set[tuple[str, str]] = set()

    def add(u, v):
        edges.add(tuple(sorted((u, v))))
        degree[u] += 1
        degree[v] += 1

    for i in range(1, n):
        parent = rng.choice([r for r in rooms[:i] if degree[r] < MAX_DEGREE])
        add(rooms[i], parent)
    for _ in range(rng.randint(0, n // 2)):
        u, v = rng.sample(rooms, 2)
        if tuple(sorted((u, v))) not in edges and degree[u] < MAX_DEGREE and degree[v] < MAX_DEGREE:
            add(u, v)
    return tuple(rooms), tuple(sorted(edges))


def render_map(rooms, adj) -> str:
    return "\n".join(f"The {r} connects to {join_items(adj[r])}." for r in rooms)


@dataclass
class MapReaderGame(Game):
    task = "mapreader"

    rooms: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    coin_room: str
    box_room: str
    agent_room: str
    coin_held: bool = False
    coin_boxed: bool = False
    map_read: bool = False

    @classmethod
    def generate(cls, seed: int, start_in_box_room: bool = True, **options) -> "MapReaderGame":
        rng = seeded_rng(cls.task, seed)
        lo, hi = PATH_LENGTH
        while True:
            rooms, edges = random_room_graph(rng, rng.randint(*ROOM_COUNT))
            adj = adjacency(rooms, edges)
            pairs = [
                (u, v) for u in rooms
                for v, d in distances(adj, u).items() if lo <= d <= hi
            ]
            if pairs:
                break
        coin_room, box_room = rng.choice(pairs)
        start = box_room if start_in_box_room else rng.choice([r for r in rooms if r != coin_room])
        return cls(rooms=rooms, edges=edges, coin_room=coin_room, box_room=box_room, agent_room=start)

    @property
    def adjacency(self) -> dict[str, list[str]]:
        return adjacency(self.rooms, self.edges)

    @property
    def description(self) -> str:
        return (
            f"Your task is to take the coin located in the {self.coin_room}, and put it into "
            f"the box found in the {self.box_room}. A map is provided, that you may find helpful."
        )

    @property
    def max_raw(self) -> int:
        return 2

    def map_text(self) -> str:
        return render_map(self.rooms, self.adjacency)

    def look(self) -> Observation:
        room = self.agent_room
        items = []
        text = f"You are in the {room}."
        if room == self.box_room:
            items.append("box")
            text += " You see a box."
        if room == self.coin_room and not self.coin_held and not self.coin_boxed:
            items.append("coin")
            text += " You see a coin."
        text += f" From here you can go to: {join_items(self.adjacency[room])}."
        return Observation(text, room=room, items=tuple(items))

    def inventory(self) -> list[str]:
        return ["a map"] + (["a coin"] if self.coin_held else [])

    def env_actions(self) -> list[str]:
        actions = ["look around", "read map", "task"]
        actions += [f"go to {r}" for r in self.adjacency[self.agent_room]]
        if self.agent_room == self.coin_room and not self.coin_held and not self.coin_boxed:
            actions.append("take coin")
        if self.agent_room == self.box_room and self.coin_held:
            actions.append("put coin in box")
        return actions

    def apply(self, command: str) -> Outcome:
        if command == "look around":
            return Outcome(self.look())
        if command == "read map":
            self.map_read = True
            return Outcome(Observation(self.map_text()))
        if command == "task":
            return Outcome(Observation(self.description))
        if command.startswith("go to "):
            target = command[len("go to "):]
            if target not in self.adjacency[self.agent_room]:
                raise ValueError(f"{target!r} is not adjacent to {self.agent_room!r}")
            self.agent_room = target
            return Outcome(self.look())
        if command == "take coin":
            self.coin_held = True
            return Outcome(Observation("You take the coin."), reward=1)
        if command == "put coin in box":
            self.coin_held = False
            self.coin_boxed = True
            return Outcome(
                Observation("You put the coin in the box."), reward=1, done=True, reason="completed"
            )
        raise ValueError(f"command not applicable: {command!r}")
