# coding: utf-8

# # A small benchmark
#
# The oracle plays every task perfectly, the random agent gives a floor.
# Twenty test-split seeds per task keeps this quick.

from symworld.harness import RunConfig, render_table, run_benchmark

oracle = run_benchmark(RunConfig(agent="oracle", episodes=20, jobs=4))
print(render_table(oracle, references=["BC+module", "LLM agent"]))

rand = run_benchmark(RunConfig(agent="random", episodes=20))
print(render_table(rand))


# Mean steps are kept exact, the table rounds them half-up.

for task, summary in oracle.per_task.items():
    print(task, summary.mean_steps, float(summary.mean_steps))


# Leaving module calls out of the step count.

env_only = run_benchmark(RunConfig(agent="oracle", episodes=20, count_module_steps=False))
print(render_table(env_only, label="oracle, env steps"))
