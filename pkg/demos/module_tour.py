# coding: utf-8

# # The four symbolic modules
#
# Each module is a plain function of a query and whatever the agent has seen so far.

from symworld.core import Observation
from symworld.games import load_kb
from symworld.modules import ModuleContext, calc, kb_query, next_step, sort_items

print(calc("mul", 8, 7))
print(calc("div", 7, 2))


# The navigator only knows what the agent has read: where it is, and the map.

ctx = ModuleContext()
ctx.observe(Observation("You are in the chamber. From here you can go to: canteen, lounge."))
print(next_step("pantry", ctx))

ctx.observe(Observation(
    "The chamber connects to canteen, lounge.\n"
    "The canteen connects to chamber, pantry.\n"
    "The lounge connects to chamber.\n"
    "The pantry connects to canteen."
))
print(next_step("pantry", ctx))


# The sorter compares quantities across units, so 47 g comes before 15 kg.

floor = ("15 kg of cedar", "47 g of brick", "21 kg of marble", "25 g of oak")
look = Observation("On the floor, you see: " + ", ".join(floor) + ".", items=floor)
print(sort_items("ascending", look))
print(sort_items("descending", look))


# The knowledge base is a small TSV of objects and where they belong.

kb = load_kb()
print(len(kb), "entries")
print(kb_query("clean brown shirt", kb))
print(kb_query("flux capacitor", kb))
