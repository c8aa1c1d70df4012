# coding: utf-8

# # The LLM agent without a network
#
# A scripted mock stands in for the chat endpoint. Feeding it the oracle's actions
# sends the full prompt, complete, parse loop through the same path a live model uses.

from symworld.agents import LLMAgent, OracleAgent
from symworld.harness import run_episode
from symworld.llm import ScriptedMock, oracle_script

gold = run_episode("mapreader", 2000, OracleAgent())
print(gold.actions)

mock = ScriptedMock(oracle_script(gold), on_exhaust="error")
trace = run_episode("mapreader", 2000, LLMAgent(mock, strict=True))
print(trace.actions == gold.actions, trace.final_score)


# What the model is shown: a system message with the role and rules, then one query per turn.

first_call = mock.calls[0]
print(first_call[0].content)
print(first_call[1].content)


# Chatty replies are repaired when exactly one valid action appears in them.
# A reply that names no action gets one re-prompt before falling back to "look around".

chatty = [f"I think the best choice is `{a}`." for a in gold.actions]
trace = run_episode("mapreader", 2000, LLMAgent(ScriptedMock(chatty)))
print(trace.final_score, trace.step_count)

stubborn = run_episode("mapreader", 2000, LLMAgent(ScriptedMock(["I decline."])))
print(stubborn.final_score, stubborn.done_reason)


# Traces are JSONL: a header, one record per step, a trailer.

print(gold.to_jsonl().splitlines()[0])
print(gold.to_jsonl().splitlines()[-1])
