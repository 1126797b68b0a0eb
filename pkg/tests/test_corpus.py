from __future__ import annotations

import json
from fractions import Fraction

import pytest

from conftest import BRUDNO
from jacobi_madden.corpus_io import (
    CorpusError,
    CorpusRecord,
    corpus_dumps,
    corpus_load,
    corpus_save,
    shipped_corpus,
    shipped_corpus_text,
    parse_corpus,
)
from jacobi_madden.solutions import Verdict, t_orbit, verify_solution


def test_shipped_corpus_verifies():
    records = shipped_corpus()
    assert len(records) == 33
    for rec in records:
        assert verify_solution(*rec.solution) is Verdict.VALID
        assert rec.t in t_orbit(rec.solution)
    assert {rec.source for rec in records} >= {"table-2.1", "table-3.1"}


def test_round_trip_is_byte_identical(tmp_path):
    text = shipped_corpus_text()
    assert corpus_dumps(parse_corpus(text)) == text
    path = tmp_path / "copy.jsonl"
    corpus_save(shipped_corpus(), path)
    assert path.read_text() == text
    assert corpus_load(path) == shipped_corpus()


def test_record_fields_are_strings():
    line = shipped_corpus()[0].to_json()
    obj = json.loads(line)
    assert list(obj) == ["t", "a", "b", "c", "d", "source"]
    assert all(isinstance(v, str) for v in obj.values())


def test_altered_digit_is_rejected():
    rec = CorpusRecord(Fraction(511, 450), BRUDNO, "x", 1)
    line = rec.to_json().replace('"5400"', '"5401"')
    with pytest.raises(CorpusError, match="line 2"):
        parse_corpus("\n" + line + "\n")
    # structural parsing alone still succeeds
    assert parse_corpus(line, verify=False)[0].solution[0] == 5401


def test_t_outside_orbit_is_rejected():
    line = CorpusRecord(Fraction(31, 6), BRUDNO, "x", 1).to_json()
    with pytest.raises(CorpusError):
        parse_corpus(line)


def test_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    assert corpus_load(path) == []
    assert parse_corpus("\n\n") == []


@pytest.mark.parametrize(
    "line",
    [
        "not json",
        "[1, 2]",
        '{"t":"511/450","a":"-2634","b":"955","c":"5400","source":"x"}',
        '{"t":"511/450","a":"-2634","b":"955","c":"5400","d":"1770","source":"x","extra":"1"}',
        '{"t":"511/450","a":"-2634","b":"955","c":"5400","d":"17.70","source":"x"}',
        '{"t":"x/y","a":"-2634","b":"955","c":"5400","d":"1770","source":"x"}',
    ],
)
def test_malformed_lines_report_line_number(line):
    good = shipped_corpus()[0].to_json()
    with pytest.raises(CorpusError, match="line 3"):
        parse_corpus("\n".join([good, good, line]))
