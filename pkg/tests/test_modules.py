import random
import re

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from symworld.core import Observation
from symworld.engine import reset, step
from symworld.games import load_kb
from symworld.modules import (
    MAP_UNREAD, NOTHING_TO_SORT, ModuleContext, ModuleQuery, calc, kb_query,
    module_actions, next_step, parse_map, parse_query, run_module, sort_items,
)


# -- calculator ---------------------------------------------------------------

def test_calc_reference_example():
    assert calc("mul", 8, 7) == "Multiplying 8 and 7 results in 56."


def test_calc_examples():
    assert calc("add", 0, 5) == "Adding 0 and 5 results in 5."
    assert calc("sub", 47, 25) == "Subtracting 47 and 25 results in 22."
    assert calc("div", 56, 7) == "Dividing 56 and 7 results in 8."


@pytest.mark.parametrize("a, b", [(7, 0), (7, 2)])
def test_calc_invalid_division(a, b):
    assert calc("div", a, b) == "That operation is not valid here."


@given(st.integers(-10**6, 10**6), st.integers(-10**6, 10**6))
def test_calc_is_exact(a, b):
    assert calc("add", a, b).endswith(f"results in {a + b}.")
    assert calc("mul", a, b).endswith(f"results in {a * b}.")
    if b and a % b == 0:
        assert calc("div", a, b).endswith(f"results in {a // b}.")


# -- grammar ------------------------------------------------------------------

words = st.from_regex(r"[a-z]+( [a-z]+){0,3}", fullmatch=True)
queries = st.one_of(
    st.builds(lambda op, a, b: ModuleQuery(op, (a, b)),
              st.sampled_from(["add", "sub", "mul", "div"]), st.integers(0, 999), st.integers(0, 999)),
    st.builds(lambda r: ModuleQuery("next step to", (r,)), words),
    st.builds(lambda d: ModuleQuery("sort", (d,)), st.sampled_from(["ascending", "descending"])),
    st.builds(lambda o: ModuleQuery("query", (o,)), words),
)


@given(queries)
def test_query_roundtrip(q):
    assert parse_query(q.render()) == q


def test_parse_query_rejects_other_text():
    assert parse_query("look around") is None
    assert parse_query("sort sideways") is None


# -- navigator ----------------------------------------------------------------

def map_text(g):
    return "\n".join(f"The {r} connects to {', '.join(sorted(g[r]))}." for r in g.nodes)


def context_for(g, here):
    ctx = ModuleContext()
    ctx.observe(Observation(f"You are in the {here}. From here you can go to: {', '.join(sorted(g[here]))}."))
    ctx.observe(Observation(map_text(g)))
    return ctx


_REPLY = re.compile(
    r"The next location to go to is (.+)\. If you want to go to (.+) from (.+), you need go through (.+)\.$"
)


def test_navigator_reference_example():
    g = nx.Graph([("chamber", "canteen"), ("canteen", "pantry"), ("chamber", "lounge")])
    ctx = context_for(g, "chamber")
    assert next_step("pantry", ctx) == (
        "The next location to go to is canteen. If you want to go to pantry from chamber, "
        "you need go through canteen, pantry."
    )


def test_navigator_needs_map():
    ctx = ModuleContext()
    ctx.observe(Observation("You are in the chamber."))
    assert next_step("pantry", ctx) == MAP_UNREAD


def test_navigator_already_there():
    g = nx.Graph([("chamber", "canteen")])
    assert next_step("chamber", context_for(g, "chamber")) == "You are already at chamber."


def test_navigator_breaks_ties_lexicographically():
    g = nx.Graph([("a", "x"), ("a", "b"), ("x", "z"), ("b", "z")])
    assert next_step("z", context_for(g, "a")).endswith("you need go through b, z.")


def test_current_room_comes_from_latest_environment_observation():
    ctx = ModuleContext()
    ctx.observe(Observation("You are in the chamber."))
    ctx.observe(Observation("You take the coin."))
    assert ctx.current_room == "chamber"
    ctx.observe(Observation("You are in the steam room. You see a box."))
    assert ctx.current_room == "steam room"


def random_connected_graph(rng):
    n = rng.randint(2, 14)
    letters = "abcdefghijklmnopqrstuvwxyz"
    names = rng.sample([f"{a}{b} hall" for a in letters for b in letters[:4]], n)
    g = nx.random_labeled_tree(n, seed=rng.randrange(2**32)) if hasattr(nx, "random_labeled_tree") \
        else nx.random_tree(n, seed=rng.randrange(2**32))
    g = nx.relabel_nodes(g, dict(enumerate(names)))
    for _ in range(rng.randint(0, n)):
        u, v = rng.sample(names, 2)
        g.add_edge(u, v)
    return g


def test_navigator_against_bfs_oracle_on_random_graphs():
    rng = random.Random(1234)
    for _ in range(1000):
        g = random_connected_graph(rng)
        src, dst = rng.sample(list(g.nodes), 2)
        reply = next_step(dst, context_for(g, src))
        m = _REPLY.match(reply)
        assert m, reply
        first, dest, start, path = m.group(1), m.group(2), m.group(3), m.group(4).split(", ")
        assert (dest, start) == (dst, src)
        optimal = sorted(nx.all_shortest_paths(g, src, dst))
        assert first in {p[1] for p in optimal}
        assert len(path) == nx.shortest_path_length(g, src, dst)
        assert [src, *path] == optimal[0]
        # following first hops reaches the destination in exactly that many moves
        here, moves = src, 0
        while here != dst:
            here = _REPLY.match(next_step(dst, context_for(g, here))).group(1)
            moves += 1
        assert moves == len(path)


def test_parse_map_rejects_non_maps():
    assert parse_map("You are in the chamber.") is None
    assert parse_map("") is None


# -- sorter -------------------------------------------------------------------

def test_sorter_reference_example():
    look = Observation("On the floor, you see: 15 kg of cedar, 47 g of brick, 21 kg of marble, 25 g of oak.",
                       items=("15 kg of cedar", "47 g of brick", "21 kg of marble", "25 g of oak"))
    assert sort_items("ascending", look) == (
        "The observed items, sorted in order of increasing quantity, are: "
        "25 g of oak, 47 g of brick, 15 kg of cedar, 21 kg of marble."
    )
    assert sort_items("descending", look).endswith(
        "decreasing quantity, are: 21 kg of marble, 15 kg of cedar, 47 g of brick, 25 g of oak."
    )


def test_sorter_single_and_empty():
    one = Observation("You see 3 l of sand.", items=("3 l of sand",))
    assert sort_items("ascending", one).endswith("are: 3 l of sand.")
    assert sort_items("ascending", Observation("Nothing.", items=())) == NOTHING_TO_SORT
    assert sort_items("ascending", None) == NOTHING_TO_SORT
    assert sort_items("ascending", Observation("A box.", items=("box",))) == NOTHING_TO_SORT


FACTORS = {"mg": 1, "g": 1000, "kg": 10**6, "ml": 1, "l": 1000, "mm": 1, "cm": 10, "m": 1000}


def test_sorter_against_oracle_on_random_item_sets():
    rng = random.Random(99)
    for _ in range(1000):
        units = rng.choice([["mg", "g", "kg"], ["ml", "l"], ["mm", "cm", "m"]])
        n = rng.randint(1, 6)
        seen, labels = set(), []
        for name in rng.sample(["oak", "brick", "cedar", "marble", "pine", "clay", "iron", "wax"], n):
            while True:
                mag, unit = rng.randint(1, 50), rng.choice(units)
                if mag * FACTORS[unit] not in seen:
                    break
            seen.add(mag * FACTORS[unit])
            labels.append(f"{mag} {unit} of {name}")
        look = Observation("On the floor, you see: " + ", ".join(labels) + ".", items=tuple(labels))
        expected = sorted(labels, key=lambda s: int(s.split()[0]) * FACTORS[s.split()[1]])
        reply = sort_items("ascending", look)
        listed = reply.split("are: ", 1)[1].rstrip(".").split(", ")
        assert listed == expected
        assert sorted(listed) == sorted(labels)


# -- knowledge base -----------------------------------------------------------

def test_kb_reference_example():
    assert kb_query("clean brown shirt", load_kb()) == "Clean brown shirt is expected to be located at wardrobe."


def test_kb_unknown():
    assert kb_query("flux capacitor", load_kb()) == "I do not know where flux capacitor belongs."


def test_kb_roundtrips_every_entry():
    kb = load_kb()
    for obj, loc in kb.items():
        reply = kb_query(obj, kb)
        assert reply.lower() == f"{obj} is expected to be located at {loc}.".lower()
        assert reply.endswith(f"located at {loc}.")


# -- offering -----------------------------------------------------------------

def test_arithmetic_offers_no_calc_before_reading():
    state, *_ = reset("arithmetic", 2000)
    assert module_actions(state.game, state.context) == []


def test_sorting_always_offers_two():
    state, *_ = reset("sorting", 2000)
    assert module_actions(state.game, state.context) == ["sort ascending", "sort descending"]


@pytest.mark.parametrize("seed", range(2000, 2030))
def test_every_offered_module_action_parses_and_runs(task, seed):
    rng = random.Random(seed)
    state, _, _, actions = reset(task, seed)
    while not state.done:
        for a in actions:
            if a.origin.value == "module":
                assert parse_query(a.text) is not None
                reply = run_module(a.text, state.context, state.kb)
                assert reply and "not valid" not in reply
        # bias towards environment actions so games progress
        actions = step(state, rng.choice(list(actions))).valid_actions
