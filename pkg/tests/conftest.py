import pytest

import randsub as rs


@pytest.fixture(scope="session")
def tables():
    """Language tables shared across test modules (pure, read-only)."""
    cache = {}

    def get(name: str, ell: int, budget: int = 10**8) -> rs.LanguageTable:
        if name not in cache:
            cache[name] = rs.legal_words(rs.get_example(name), ell, budget=budget)
        return cache[name].extend(ell)

    return get


def brute_force_no_11(ell: int) -> set[str]:
    """Binary words of length ell avoiding the factor 11 (golden shift)."""
    from itertools import product

    return {
        "".join(w) for w in product("01", repeat=ell) if "11" not in "".join(w)
    }
