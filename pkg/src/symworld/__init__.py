"""Four symbolic text games, their symbolic modules, and an agent harness."""

from .agents import LLMAgent, OracleAgent, PolicyDecision, RandomAgent, parse_reply
from .core import (
    STEP_LIMIT, TASKS, Action, ActionSet, ConfigurationError, EpisodeFinished,
    InvalidAction, Observation, Origin, StepResult, canonicalize, normalize_score,
)
from .engine import EpisodeState, EpisodeTrace, reset, step
from .harness import EvalReport, RunConfig, render_table, run_benchmark, run_episode

__all__ = [
    "STEP_LIMIT", "TASKS", "Action", "ActionSet", "ConfigurationError", "EpisodeFinished",
    "InvalidAction", "Observation", "Origin", "StepResult", "canonicalize", "normalize_score",
    "EpisodeState", "EpisodeTrace", "reset", "step",
    "LLMAgent", "OracleAgent", "PolicyDecision", "RandomAgent", "parse_reply",
    "EvalReport", "RunConfig", "render_table", "run_benchmark", "run_episode",
]
