"""Plain-text file formats: presentations, semiring tables, census lines, run records.

Presentation file::

    # comments start with '#'
    generators: w
    unital: false          (optional, default false)
    relations:
    w = 2w + 2w^2
    w = 3w + 3w^3

Relations may also follow ``relations:`` on the same line and may be
separated by ``;``.  Semiring table files are JSON (or the equivalent YAML)
objects with ``elements``, ``add`` and ``mul``; table entries are row-major
element indices.
"""

from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

import yaml

from .engine import Presentation
from .enumeration import canonical_hash
from .finite import FiniteSemiring, SemiringError
from .terms import ParseError, parse_term

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")


def _relation(chunk: str, line: int, col: int, gens, unital):
    lhs, sep, rhs = chunk.partition("=")
    if not sep:
        raise ParseError("expected 'lhs = rhs'", line, col + len(chunk.rstrip()))
    a = parse_term(lhs, gens, unital, line, col)
    b = parse_term(rhs, gens, unital, line, col + len(lhs) + 1)
    return a, b


def parse_presentation(text: str) -> Presentation:
    gens: list[str] | None = None
    unital = False
    pending: list[tuple[str, int, int]] = []
    in_relations = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        key, colon, value = line.partition(":")
        k = key.strip().lower()
        if colon and k in ("generators", "relations", "unital"):
            vcol = len(key) + 2
            if k == "generators":
                names = value.replace(",", " ").split()
                if not names:
                    raise ParseError("no generators declared", lineno, vcol)
                for nm in names:
                    if not _IDENT.match(nm):
                        raise ParseError(f"bad generator name {nm!r}", lineno, vcol + value.find(nm) - 1)
                gens = names
                in_relations = False
            elif k == "unital":
                v = value.strip().lower()
                if v not in ("true", "false", "yes", "no"):
                    raise ParseError("unital must be true or false", lineno, vcol)
                unital = v in ("true", "yes")
            else:
                in_relations = True
                rest, offset = value, len(key) + 2
                _split_relations(rest, lineno, offset, pending)
            continue
        if not in_relations:
            raise ParseError("expected 'generators:', 'unital:' or 'relations:'", lineno, 1)
        _split_relations(line, lineno, 1, pending)
    if gens is None:
        raise ParseError("missing 'generators:' line", 1, 1)
    rels = tuple(_relation(chunk, ln, col, gens, unital) for chunk, ln, col in pending)
    return Presentation(tuple(gens), rels, unital)


def _split_relations(text: str, lineno: int, col0: int, out: list) -> None:
    pos = 0
    for part in text.split(";"):
        if part.strip():
            out.append((part, lineno, col0 + pos))
        pos += len(part) + 1


def read_presentation(path: str | Path) -> Presentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"))


def format_presentation(p: Presentation) -> str:
    lines = [f"generators: {', '.join(p.generators)}"]
    if p.unital:
        lines.append("unital: true")
    lines.append("relations:")
    for l, r in p.relations:
        lines.append(f"{p.fmt(l)} = {p.fmt(r)}")
    return "\n".join(lines) + "\n"


# -- semiring tables ---------------------------------------------------------

def semiring_to_dict(s: FiniteSemiring) -> dict[str, Any]:
    return {"elements": list(s.labels), "add": s.add.tolist(), "mul": s.mul.tolist()}


def semiring_from_dict(d: dict[str, Any]) -> FiniteSemiring:
    try:
        labels = d["elements"]
        add, mul = d["add"], d["mul"]
    except (KeyError, TypeError) as exc:
        raise SemiringError("table file needs 'elements', 'add' and 'mul'") from exc
    return FiniteSemiring(add, mul, tuple(str(x) for x in labels))


def dumps_semiring(s: FiniteSemiring) -> str:
    d = semiring_to_dict(s)
    rows = lambda t: "[" + ", ".join(json.dumps(r) for r in t) + "]"  # noqa: E731
    return ("{\n"
            f'  "elements": {json.dumps(d["elements"])},\n'
            f'  "add": {rows(d["add"])},\n'
            f'  "mul": {rows(d["mul"])}\n'
            "}\n")


def loads_semiring(text: str) -> FiniteSemiring:
    try:
        d = json.loads(text)
    except json.JSONDecodeError:
        d = yaml.safe_load(text)
    return semiring_from_dict(d)


def read_semiring(path: str | Path) -> FiniteSemiring:
    return loads_semiring(Path(path).read_text(encoding="utf-8"))


def write_semiring(s: FiniteSemiring, path: str | Path) -> None:
    Path(path).write_text(dumps_semiring(s), encoding="utf-8")


# -- census and run records --------------------------------------------------

def census_record(s: FiniteSemiring, flags: dict[str, bool]) -> str:
    rec = {"hash": canonical_hash(s), "order": s.n, **flags}
    return json.dumps(rec, sort_keys=False)


def digest(data: str | bytes) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


@dataclass
class RunRecord:
    argv: list[str]
    input_digest: str | None
    budget: dict[str, int] | None
    wall_time: float
    outcome: str
    artifacts: list[str] = field(default_factory=list)
    started: str = field(default_factory=lambda: time.strftime("%Y-%m-%dT%H:%M:%S"))

    def append_to(self, path: str | Path) -> None:
        with open(path, "a", encoding="utf-8") as fh:
            fh.write(json.dumps(asdict(self)) + "\n")


def read_run_records(path: str | Path) -> list[RunRecord]:
    out = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if line.strip():
            out.append(RunRecord(**json.loads(line)))
    return out
