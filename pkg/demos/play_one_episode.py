# coding: utf-8

# # One episode, by hand
#
# A game is created from a task name and a seed. Seeds 2000-2999 are the test split.
# `reset` returns the state, the first observation, the task description and the valid actions.

from symworld import reset, step

state, obs, description, actions = reset("arithmetic", 2038)
print(description)
print(obs.text)


# The valid action set mixes environment actions with module actions.
# Nothing from the calculator is offered until the problem has been read.

print([a.text for a in actions])


# Take and read the problem.

step(state, "take math problem")
result = step(state, "read math problem")
print(result.observation.text)
print([(a.text, a.origin.value) for a in result.valid_actions if a.origin.value == "module"])


# Asking the calculator costs a step but leaves the world untouched.

result = step(state, "mul 10 2")
print(result.observation.text)


# Put the matching bundle in the box.

step(state, "take 20 apples")
result = step(state, "put 20 apples in box")
print(result.reward, result.done, state.done_reason)
print("score", state.score, "steps", state.steps)
