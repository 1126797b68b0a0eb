"""JSON-lines corpus of published solutions."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable

from .exactmath import format_rational
from .solutions import Verdict, t_orbit, verify_solution

FIELDS = ("t", "a", "b", "c", "d", "source")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusRecord:
    t: Fraction
    solution: tuple[int, int, int, int]
    source: str
    line: int = 0

    def check(self) -> None:
        if verify_solution(*self.solution) is not Verdict.VALID:
            raise CorpusError(f"line {self.line}: {self.label()} does not satisfy the equation")
        if self.t not in t_orbit(self.solution):
            raise CorpusError(f"line {self.line}: t={format_rational(self.t)} is not in the orbit of {self.label()}")

    def label(self) -> str:
        return f"{self.source} ({','.join(map(str, self.solution))})"

    def to_json(self) -> str:
        row = {"t": format_rational(self.t)}
        row.update(zip("abcd", map(str, self.solution)))
        row["source"] = self.source
        return json.dumps(row, separators=(",", ":"))


def _parse(line: str, lineno: int) -> CorpusRecord:
    try:
        row = json.loads(line)
        if not isinstance(row, dict) or set(row) != set(FIELDS):
            raise ValueError(f"expected keys {', '.join(FIELDS)}")
        t = Fraction(row["t"])
        sol = tuple(int(row[k]) for k in "abcd")
        source = str(row["source"])
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise CorpusError(f"line {lineno}: malformed record: {exc}") from None
    return CorpusRecord(t, sol, source, lineno)  # type: ignore[arg-type]


def parse_corpus(text: str, verify: bool = True) -> list[CorpusRecord]:
    records = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        rec = _parse(line, lineno)
        if verify:
            rec.check()
        records.append(rec)
    return records


def corpus_load(path: str | Path, verify: bool = True) -> list[CorpusRecord]:
    return parse_corpus(Path(path).read_text(encoding="utf-8"), verify)


def corpus_dumps(records: Iterable[CorpusRecord]) -> str:
    return "".join(r.to_json() + "\n" for r in records)


def corpus_save(records: Iterable[CorpusRecord], path: str | Path) -> None:
    Path(path).write_text(corpus_dumps(records), encoding="utf-8")


def shipped_corpus_text() -> str:
    return resources.files("jacobi_madden.corpus").joinpath("paper.jsonl").read_text(encoding="utf-8")


def shipped_corpus() -> list[CorpusRecord]:
    """The published solutions shipped with the package, verified."""
    return parse_corpus(shipped_corpus_text())
