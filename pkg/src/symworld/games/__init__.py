from ..core import TASKS, ConfigurationError
from .arithmetic import ArithmeticGame
from .base import Game, Outcome
from .mapreader import MapReaderGame
from .sorting import SortingGame
from .twc import TWCGame, load_kb

GAMES: dict[str, type[Game]] = {
    "arithmetic": ArithmeticGame,
    "mapreader": MapReaderGame,
    "sorting": SortingGame,
    "twc": TWCGame,
}
assert tuple(GAMES) == TASKS


def game_class(task: str) -> type[Game]:
    try:
        return GAMES[task]
    except KeyError:
        raise ConfigurationError(f"unknown task {task!r}; expected one of {', '.join(TASKS)}") from None


__all__ = [
    "GAMES", "Game", "Outcome", "ArithmeticGame", "MapReaderGame",
    "SortingGame", "TWCGame", "game_class", "load_kb",
]
