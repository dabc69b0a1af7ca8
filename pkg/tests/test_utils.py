from contextlib import AbstractContextManager
from contextlib import nullcontext as does_not_raise
from pathlib import Path

import pytest

from pytanner.constants import WORKERS_ENV
from pytanner.exceptions import TannerValidationError
from pytanner.utils import (
    Ordering,
    atomic_write_text,
    order,
    resolve_workers,
    validate_index,
    validate_positive,
)


@pytest.mark.parametrize(
    ("a", "b", "answer"),
    [
        (1, 2, Ordering.less),
        ((4, 7), (4, 5), Ordering.greater),
        ("x", "x", Ordering.equal),
    ],
)
def test_order(a: object, b: object, answer: Ordering):
    assert order(a, b) is answer


@pytest.mark.parametrize(
    ("index", "bound", "expectation"),
    [
        (0, 1, does_not_raise()),
        (4, 5, does_not_raise()),
        (5, 5, pytest.raises(TannerValidationError)),
        (-1, 5, pytest.raises(TannerValidationError)),
    ],
)
def test_validate_index(
    index: int, bound: int, expectation: AbstractContextManager
):
    with expectation:
        assert validate_index(index, bound) == index


def test_validate_positive():
    assert validate_positive(3, "count") == 3
    with pytest.raises(TannerValidationError, match="count"):
        validate_positive(0, "count")


class TestResolveWorkers:
    def test_explicit_value_wins(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv(WORKERS_ENV, "8")

        assert resolve_workers(2) == 2

    def test_environment(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.setenv(WORKERS_ENV, "3")

        assert resolve_workers() == 3

    def test_default(self, monkeypatch: pytest.MonkeyPatch):
        monkeypatch.delenv(WORKERS_ENV, raising=False)

        assert resolve_workers() == 1

    @pytest.mark.parametrize("raw", ["two", "0"])
    def test_invalid_environment(
        self, monkeypatch: pytest.MonkeyPatch, raw: str
    ):
        monkeypatch.setenv(WORKERS_ENV, raw)

        with pytest.raises(TannerValidationError):
            resolve_workers()


def test_atomic_write_text(tmp_path: Path):
    target = tmp_path / "out.txt"
    target.write_text("old", encoding="utf-8")

    assert atomic_write_text(target, "new\n") == target
    assert target.read_text(encoding="utf-8") == "new\n"
    assert sorted(p.name for p in tmp_path.iterdir()) == ["out.txt"]
