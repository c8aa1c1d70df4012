"""Published (score, steps) results, for printing beside fresh runs.

Each entry maps a column name to per-task (mean score, mean steps) on 100
test games, plus the "average" row as published.
"""

REFERENCE_RESULTS: dict[str, dict[str, tuple[float, int]]] = {
    "DRRN": {
        "arithmetic": (0.17, 10), "mapreader": (0.02, 50), "sorting": (0.03, 21), "twc": (0.57, 27),
        "average": (0.20, 27),
    },
    "DRRN+module": {
        "arithmetic": (0.14, 7), "mapreader": (0.02, 50), "sorting": (0.03, 18), "twc": (0.37, 34),
        "average": (0.14, 27),
    },
    "BC": {
        "arithmetic": (0.56, 5), "mapreader": (0.71, 27), "sorting": (0.72, 7), "twc": (0.90, 6),
        "average": (0.72, 11),
    },
    "BC+module": {
        "arithmetic": (1.00, 5), "mapreader": (1.00, 10), "sorting": (0.98, 8), "twc": (0.97, 3),
        "average": (0.99, 7),
    },
    "LLM agent": {
        "arithmetic": (1.00, 4), "mapreader": (0.86, 15), "sorting": (0.71, 7), "twc": (0.94, 4),
        "average": (0.88, 7),
    },
    "LLM agent (train)": {
        "arithmetic": (1.00, 3), "mapreader": (0.84, 15), "sorting": (0.70, 7), "twc": (0.93, 4),
        "average": (0.87, 7),
    },
    "LLM agent (dev)": {
        "arithmetic": (0.95, 4), "mapreader": (0.84, 14), "sorting": (0.63, 6), "twc": (0.835, 5),
        "average": (0.81, 7),
    },
    "LLM agent w/o constraints": {
        "arithmetic": (0.96, 3), "mapreader": (0.64, 12), "sorting": (0.35, 10), "twc": (0.73, 7),
        "average": (0.67, 8),
    },
    "GPT-4 agent": {
        "arithmetic": (1.00, 4), "mapreader": (0.99, 7), "sorting": (0.93, 8), "twc": (0.71, 16),
        "average": (0.91, 8),
    },
}
