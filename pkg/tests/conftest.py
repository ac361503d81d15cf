from functools import lru_cache

from prym_forge.search import search_seeds


@lru_cache(maxsize=None)
def seeds(n, g_y, b, count=5, seed=0, split=True):
    result = search_seeds(n, g_y, b, count=count, seed=seed, split=split, max_attempts=200000)
    assert len(result.seeds) == count, f"search for ({n}, {g_y}, {b}) found only {len(result.seeds)}"
    return tuple(result.seeds)


def one_seed(n, g_y, b, seed=0, split=True):
    return seeds(n, g_y, b, 1, seed, split)[0]


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
