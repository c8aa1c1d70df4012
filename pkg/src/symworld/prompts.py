"""Prompt texts sent to the language model.

The role-initialization message is sent once per episode and carries the
task description plus the task's rule block; the action query is rendered
every turn.
"""

from __future__ import annotations

from typing import Iterable

from .core import TASKS, Action, ConfigurationError

ROLE_INIT = (
    "You are a robot. {task_description}\n"
    "You are required to choose action from the valid action set to complete the task step by step.\n"
    "To take action, respond with an action in the valid action set.\n"
)

ACTION_QUERY = (
    "{observation}\n"
    "{inventory}\n"
    "Your current score is: {score}\n"
    "The valid action set contains: {actions}.\n"
    "Please choose one action from the valid action set to finish the task step by step.\n"
    "Do NOT respond with any other text, and you cannot decline to take an action."
)

NO_DECLINE = "Do NOT respond with any other text, and you cannot decline to take an action."

CONSTRAINTS = {
    "arithmetic": (
        "There are some rules for choosing action:\n"
        "1) If you do not see the items that meet your requirements, please choose 'look around'.\n"
        "2) If you want to put something in the box, please first take it and then put it in box.\n"
        "3) For example, if you want to put 20 apples in the box, you should first choose "
        "'take 20 apples' and then choose 'put 20 apples in box'.\n"
        "4) The next action of 'take math problem' is 'read math problem'.\n"
        "5) However, please never choose 'put math problem in box' as action.\n"
    ),
    "mapreader": (
        "1) At the beginning choose 'read map' to get the unknown surrounding layout.\n"
        "2) After that, if you do not know how to get to SOMEPLACE, you can choose "
        "'next step to SOMEPLACE' to get the path to SOMEPLACE.\n"
        "3) To choose the action, 'task', you can recall your task.\n"
        "4) Do NOT go to anywhere that is unnecessary for finishing the task.\n"
    ),
    "sorting": (
        "To sort the items one by one, please follow the instruction:\n"
        "1) choose 'sort ascending' or 'sort descending' to know which one should be sort next.\n"
        "2) take the items.\n"
        "3) put the items in box.\n"
    ),
    "twc": (
        "1) When you take the item, you will get positive score.\n"
        "2) When you put the item in the right place, you will get higher positive score. "
        "Otherwise you get 0.\n"
        "3) You are supposed to get as much score as possible.\n"
    ),
}
assert tuple(CONSTRAINTS) == TASKS


def build_role_init(task: str, task_description: str, constrained: bool = True) -> str:
    """First message of every episode; pass ``constrained=False`` to drop the rule block."""
    if task not in CONSTRAINTS:
        raise ConfigurationError(f"unknown task {task!r}")
    text = ROLE_INIT.format(task_description=task_description)
    return text + CONSTRAINTS[task] if constrained else text


def build_action_query(observation: str, inventory: str, score: int, actions: Iterable[Action | str]) -> str:
    texts = [a.text if isinstance(a, Action) else a for a in actions]
    if not texts:
        raise ValueError("the valid action set is empty")
    return ACTION_QUERY.format(
        observation=observation, inventory=inventory, score=score, actions=", ".join(texts)
    )
