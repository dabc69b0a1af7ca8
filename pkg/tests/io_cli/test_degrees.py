from collections import Counter
from pathlib import Path

import pytest

from pytanner.exceptions import TannerValidationError
from pytanner.io import (
    degrees_from_gamma,
    normalize_gamma,
    parse_gamma,
    read_degrees,
)

IRREGULAR = (
    "0.47532x^2 + 0.27953x^3 + 0.03486x^4 + 0.10889x^5 + 0.10138x^{15}"
)


## Distribution section


class TestParseGamma:
    def test_braced_exponent(self):
        gamma = parse_gamma(IRREGULAR)

        assert list(gamma) == [2, 3, 4, 5, 15]
        assert sum(gamma.values()) == pytest.approx(1.0)

    @pytest.mark.parametrize(
        ("text", "answer"),
        [
            ("1.0x^3", {3: 1.0}),
            ("0.5x + 0.5x^2", {1: 0.5, 2: 0.5}),
            ("0.5*x^2 + 0.5 x^3", {2: 0.5, 3: 0.5}),
            ("0.25x^2 + 0.25x^2 + 0.5x^3", {2: 0.5, 3: 0.5}),
            ("0.5x^3 + 0.5x^2", {2: 0.5, 3: 0.5}),
            ("1e0x^4", {4: 1.0}),
        ],
    )
    def test_terms(self, text: str, answer: dict[int, float]):
        assert parse_gamma(text) == pytest.approx(answer)

    @pytest.mark.parametrize(
        ("text", "message"),
        [
            ("0.5x^2 + 0.4x^3", "sum to"),
            ("abc", "invalid degree distribution term"),
            ("0.5y^2 + 0.5x^3", "invalid degree distribution term"),
            ("", "invalid degree distribution term"),
            ("1.0x^0", "invalid term"),
        ],
    )
    def test_malformed(self, text: str, message: str):
        with pytest.raises(TannerValidationError, match=message):
            parse_gamma(text)

    def test_normalize_drops_empty_terms(self):
        assert normalize_gamma({3: 1.0, 2: 0.0}) == {3: 1.0}

    def test_normalize_empty(self):
        with pytest.raises(TannerValidationError, match="empty"):
            normalize_gamma({})


## Apportionment section


class TestDegreesFromGamma:
    def test_irregular_code(self):
        degrees = degrees_from_gamma(parse_gamma(IRREGULAR), 1008)

        assert len(degrees) == 1008
        assert Counter(degrees) == {2: 479, 3: 282, 4: 35, 5: 110, 15: 102}
        assert list(degrees) == sorted(degrees)

    def test_irregular_code_in_groups(self):
        degrees = degrees_from_gamma(parse_gamma(IRREGULAR), 1008, 36)

        groups = Counter(degrees[i] for i in range(0, 1008, 36))
        assert groups == {2: 13, 3: 8, 4: 1, 5: 3, 15: 3}
        for start in range(0, 1008, 36):
            assert len(set(degrees[start : start + 36])) == 1

    def test_regular(self):
        assert list(degrees_from_gamma({3: 1.0}, 4)) == [3, 3, 3, 3]

    def test_ties_go_to_smaller_degree(self):
        assert list(degrees_from_gamma({2: 0.5, 3: 0.5}, 3)) == [2, 2, 3]

    def test_groups_must_tile(self):
        with pytest.raises(TannerValidationError, match="not a multiple"):
            degrees_from_gamma({2: 1.0}, 10, 4)

    def test_positive_length(self):
        with pytest.raises(TannerValidationError):
            degrees_from_gamma({2: 1.0}, 0)


## Degree file section


class TestReadDegrees:
    def test_separators_and_comments(self, tmp_path: Path):
        path = tmp_path / "degrees.txt"
        path.write_text("# VN degrees\n2 3, 3\n\n4 # last\n", encoding="utf-8")

        assert list(read_degrees(path)) == [2, 3, 3, 4]

    def test_invalid_token(self, tmp_path: Path):
        path = tmp_path / "degrees.txt"
        path.write_text("2 3\n3 x\n", encoding="utf-8")

        with pytest.raises(TannerValidationError, match=":2: invalid degree"):
            read_degrees(path)

    def test_empty_file(self, tmp_path: Path):
        path = tmp_path / "degrees.txt"
        path.write_text("# nothing\n", encoding="utf-8")

        with pytest.raises(TannerValidationError, match="no degrees"):
            read_degrees(path)
