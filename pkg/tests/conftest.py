import functools
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fanocox.cli import load_reference  # noqa: E402
from fanocox import invariants as inv  # noqa: E402
from fanocox.verification import verify_candidate  # noqa: E402


@functools.lru_cache(maxsize=None)
def table():
    return load_reference()


class RowCache:
    """Lazily computed invariants of the reference rows, shared by all tests."""

    def __init__(self):
        self._store = {}

    def _get(self, key, k, fn):
        if (key, k) not in self._store:
            self._store[(key, k)] = fn(table().row(k).data)
        return self._store[(key, k)]

    def report(self, k):
        return self._get("report", k, verify_candidate)

    def K4(self, k):
        return self._get("K4", k, inv.anticanonical_degree)

    def hodge(self, k):
        return self._get("hodge", k, lambda d: tuple(inv.hodge_numbers(d).as_list()))

    def contractions(self, k):
        return self._get("contr", k, inv.elementary_contractions)


_CACHE = RowCache()


@pytest.fixture(scope="session")
def ref():
    return table()


@pytest.fixture(scope="session")
def rows():
    return _CACHE


ROW_NUMBERS = [r.row for r in table().rows]
