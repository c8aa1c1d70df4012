"""Command line: ``symworld play|run|eval``.

Exit codes: 0 success, 1 configuration error, 2 agent or transport failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .agents import Agent, LLMAgent
from .core import STEP_LIMIT, TASKS, ConfigurationError, InvalidAction
from .engine import reset, step
from .harness import RunConfig, agent_factory, render_table, run_benchmark, run_episode
from .llm import ChatClient, LLMConfig, ScriptedMock, read_mock_script

EXIT_OK, EXIT_CONFIG, EXIT_AGENT = 0, 1, 2

LLM_KEYS = {"endpoint": str, "model": str, "temperature": float, "max_tokens": int, "timeout": float, "retries": int}


def load_llm_config(args) -> LLMConfig:
    """File values first, then flags; the credential only ever comes from the environment."""
    values = {}
    if args.config:
        try:
            with open(args.config, "rb") as fh:
                table = tomllib.load(fh).get("llm", {})
        except (OSError, tomllib.TOMLDecodeError) as exc:
            raise ConfigurationError(f"cannot read config file {args.config}: {exc}") from None
        for key, value in table.items():
            conv = LLM_KEYS.get(key)
            if conv is None:
                raise ConfigurationError(f"{args.config}: [llm] unknown key {key!r}")
            if isinstance(value, bool) or not isinstance(value, (str, int, float)):
                raise ConfigurationError(f"{args.config}: [llm] {key}: expected a {conv.__name__}")
            try:
                values[key] = conv(value)
            except ValueError as exc:
                raise ConfigurationError(f"{args.config}: [llm] {key}: {exc}") from None
    for key in ("endpoint", "model", "temperature"):
        if getattr(args, key, None) is not None:
            values[key] = getattr(args, key)
    return LLMConfig(**values)


def make_factory(args):
    kind, _, script_path = args.agent.partition(":")
    script_path = script_path or args.mock_script
    if kind in ("oracle", "random"):
        return agent_factory(kind)
    if kind == "llm":
        client = ChatClient(load_llm_config(args))
        return lambda task, seed: LLMAgent(client, constrained=not args.no_constraints)
    if kind == "mock":
        if not script_path:
            raise ConfigurationError("mock agent needs --mock-script PATH or --agent mock:PATH")
        if not Path(script_path).exists():
            raise ConfigurationError(f"mock script not found: {script_path}")
        scripts = read_mock_script(script_path)

        def factory(task, seed):
            replies = scripts.get((task, seed), scripts.get(None, []))
            return LLMAgent(ScriptedMock(replies, on_exhaust="error"), strict=True,
                            constrained=not args.no_constraints)
        return factory
    raise ConfigurationError(f"unknown agent {args.agent!r}")


def parse_tasks(value: str) -> tuple[str, ...]:
    if value == "all":
        return TASKS
    tasks = tuple(t.strip() for t in value.split(",") if t.strip())
    bad = [t for t in tasks if t not in TASKS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown task(s): {', '.join(bad)}")
    return tasks


# -- subcommands ------------------------------------------------------------

def cmd_play(args, stdin=None, out=None) -> int:
    stdin, out = stdin or sys.stdin, out or sys.stdout
    state, obs, desc, actions = reset(args.task, args.seed, step_limit=args.step_limit)
    print(desc, file=out)
    while True:
        print(f"\n{obs.text}\n{state.inventory_text()}  Score: {state.raw_score}", file=out)
        if state.done:
            break
        for i, a in enumerate(actions, 1):
            print(f"  {i:2d}. {a.text}", file=out)
        print("> ", end="", file=out, flush=True)
        line = stdin.readline()
        if not line:
            print(file=out)
            break
        choice = line.strip()
        if choice.isdigit() and 1 <= int(choice) <= len(actions):
            choice = actions[int(choice) - 1].text
        try:
            result = step(state, choice)
        except InvalidAction:
            print(f"Not a valid action: {choice!r}", file=out)
            continue
        obs, actions = result.observation, result.valid_actions
        if result.reward:
            print(f"(+{result.reward})", file=out)
    print(f"Final score: {state.score:.2f} ({state.raw_score}/{state.game.max_raw}) "
          f"after {state.steps} steps", file=out)
    return EXIT_OK


def _verbose_printer(agent: Agent, out):
    def on_turn(turn, decision, result):
        if isinstance(agent, LLMAgent):
            for m in agent.transcript.messages[-2:]:
                print(f"[{m.role}] {m.content}", file=out)
        flag = " (repaired)" if decision.repair_applied else ""
        print(f">>> {decision.chosen.text}{flag}\n{result.observation.text}\n"
              f"reward {result.reward}, score {result.raw_score}\n", file=out)
    return on_turn


def cmd_run(args, out=None) -> int:
    out = out or sys.stdout
    agent = make_factory(args)(args.task, args.seed)
    on_turn = _verbose_printer(agent, out) if args.verbose else None
    trace = run_episode(args.task, args.seed, agent, step_limit=args.step_limit, on_turn=on_turn)
    if args.trace:
        trace.write(args.trace)
    print(f"{args.task} seed {args.seed}: score {trace.final_score:.2f}, "
          f"steps {trace.step_count}, {trace.done_reason}", file=out)
    return EXIT_AGENT if trace.aborted else EXIT_OK


def cmd_eval(args, out=None) -> int:
    out = out or sys.stdout
    config = RunConfig(
        tasks=args.tasks, split=args.split, episodes=args.episodes, agent=args.agent,
        step_limit=args.step_limit, seed_offset=args.seed_offset, jobs=args.jobs,
        count_module_steps=not args.env_steps_only,
    )
    report = run_benchmark(config, make_factory(args))
    table = render_table(report, args.references)
    if args.report:
        report.write(args.report)
        Path(args.report).with_suffix(".txt").write_text(table, encoding="utf-8")
    print(table, end="", file=out)
    aborted = sum(s.aborted for s in report.per_task.values())
    if aborted:
        print(f"{aborted} episode(s) aborted by the agent", file=out)
        return EXIT_AGENT
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symworld", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--step-limit", type=int, default=STEP_LIMIT)
        sp.add_argument("--verbose", "-v", action="store_true")

    def agent_opts(sp):
        sp.add_argument("--agent", default="oracle", help="oracle | random | llm | mock[:PATH]")
        sp.add_argument("--mock-script", help="JSONL replies for the mock agent")
        sp.add_argument("--config", help="TOML file with an [llm] table")
        sp.add_argument("--endpoint")
        sp.add_argument("--model")
        sp.add_argument("--temperature", type=float)
        sp.add_argument("--no-constraints", action="store_true", help="omit the per-task rule block")

    play = sub.add_parser("play", help="play an episode interactively")
    play.add_argument("--task", required=True, choices=TASKS)
    play.add_argument("--seed", type=int, default=2000)
    common(play)
    play.set_defaults(func=cmd_play)

    run = sub.add_parser("run", help="run one agent episode")
    run.add_argument("--task", required=True, choices=TASKS)
    run.add_argument("--seed", type=int, default=2000)
    run.add_argument("--trace", help="write the episode trace as JSONL")
    agent_opts(run)
    common(run)
    run.set_defaults(func=cmd_run)

    ev = sub.add_parser("eval", help="benchmark an agent over many seeds")
    ev.add_argument("--tasks", "--task", type=parse_tasks, default=TASKS, help="'all' or comma list")
    ev.add_argument("--split", default="test", choices=["train", "dev", "test"])
    ev.add_argument("--episodes", type=int, default=100)
    ev.add_argument("--seed-offset", type=int, default=0)
    ev.add_argument("--jobs", type=int, default=1)
    ev.add_argument("--report", help="report JSON path; the table goes next to it as .txt")
    ev.add_argument("--references", nargs="*", default=["BC+module", "LLM agent"],
                    help="published result columns to print alongside")
    ev.add_argument("--env-steps-only", action="store_true",
                    help="leave module calls out of the Steps metric")
    agent_opts(ev)
    common(ev)
    ev.set_defaults(func=cmd_eval)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"symworld: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
