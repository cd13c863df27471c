"""Enumeration budgets shared by the brute-force routines."""

import os

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


def budget(override: int | None = None) -> int:
    """Effective budget: explicit override, then ZETAFORGE_BUDGET, then the default."""
    if override is not None:
        return int(override)
    env = os.environ.get("ZETAFORGE_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def check(count: int, what: str, override: int | None = None) -> None:
    limit = budget(override)
    if count > limit:
        raise BudgetExceeded(f"{what}: {count} exceeds budget {limit}")
