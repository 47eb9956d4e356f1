"""Reading and writing set-system files.

Text format::

    # comments start with '#'
    lottery n=7 k=3 r=2 p=2 label=fano
    0 1 2
    0 3 4
    ...

The header is the first non-comment line; ``r``, ``p`` and ``label`` are
optional. Each following line is one block of ``k`` distinct 0-based
vertices. Files ending in ``.json`` use the mirror
``{"n": 7, "k": 3, "r": 2, "p": 2, "label": "fano", "blocks": [[0, 1, 2], ...]}``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ParseError
from .setsystem import Params, SetSystem


@dataclass(frozen=True)
class SystemFile:
    system: SetSystem
    r: int | None = None
    p: int | None = None
    label: str | None = None

    def params(self) -> Params | None:
        if self.r is None or self.p is None:
            return None
        return Params(self.system.n, self.system.k, self.r, self.p)


def _int(token: str, line: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what} {token!r} is not an integer", line) from None


def _check_block(block: list[int], n: int, k: int, line: int | None) -> tuple[int, ...]:
    if len(block) != k:
        raise ParseError(f"block has {len(block)} vertices, expected {k}", line)
    if len(set(block)) != k:
        raise ParseError(f"block {block} repeats a vertex", line)
    bad = [v for v in block if not 0 <= v < n]
    if bad:
        raise ParseError(f"vertex {bad[0]} outside [0, {n})", line)
    return tuple(sorted(block))


def parse_text(text: str) -> SystemFile:
    header = None
    blocks = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if header is None:
            tokens = line.split()
            if tokens[0] != "lottery":
                raise ParseError("expected header 'lottery n=<n> k=<k> ...'", lineno)
            fields = {}
            for tok in tokens[1:]:
                key, sep, val = tok.partition("=")
                if not sep or key not in ("n", "k", "r", "p", "label"):
                    raise ParseError(f"bad header field {tok!r}", lineno)
                if key in fields:
                    raise ParseError(f"header field {key!r} given twice", lineno)
                fields[key] = val if key == "label" else _int(val, lineno, key)
            if "n" not in fields or "k" not in fields:
                raise ParseError("header needs n= and k=", lineno)
            if fields["n"] < 0 or fields["k"] < 0:
                raise ParseError("n and k must be non-negative", lineno)
            header = fields
            continue
        block = [_int(tok, lineno, "vertex") for tok in line.split()]
        blocks.append(_check_block(block, header["n"], header["k"], lineno))
    if header is None:
        raise ParseError("missing header line")
    return SystemFile(
        SetSystem(header["n"], header["k"], tuple(blocks)),
        header.get("r"), header.get("p"), header.get("label"),
    )


def parse_json(text: str) -> SystemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno) from None
    if not isinstance(data, dict) or "n" not in data or "k" not in data:
        raise ParseError("JSON system needs keys 'n', 'k' and 'blocks'")
    n, k = data["n"], data["k"]
    if not isinstance(n, int) or not isinstance(k, int) or n < 0 or k < 0:
        raise ParseError("'n' and 'k' must be non-negative integers")
    blocks = []
    for i, b in enumerate(data.get("blocks", [])):
        if not isinstance(b, list) or not all(isinstance(v, int) for v in b):
            raise ParseError(f"block #{i} is not a list of integers")
        try:
            blocks.append(_check_block(b, n, k, None))
        except ParseError as exc:
            raise ParseError(f"block #{i}: {exc}") from None
    return SystemFile(SetSystem(n, k, tuple(blocks)), data.get("r"), data.get("p"), data.get("label"))


def emit_text(sf: SystemFile, comments: list[str] = ()) -> str:
    s = sf.system
    head = [f"lottery n={s.n} k={s.k}"]
    if sf.r is not None:
        head.append(f"r={sf.r}")
    if sf.p is not None:
        head.append(f"p={sf.p}")
    if sf.label:
        head.append(f"label={sf.label}")
    lines = [f"# {c}" for c in comments]
    lines.append(" ".join(head))
    lines.extend(" ".join(map(str, b)) for b in s.blocks)
    return "\n".join(lines) + "\n"


def emit_json(sf: SystemFile) -> str:
    s = sf.system
    data = {"n": s.n, "k": s.k}
    if sf.r is not None:
        data["r"] = sf.r
    if sf.p is not None:
        data["p"] = sf.p
    if sf.label:
        data["label"] = sf.label
    data["blocks"] = [list(b) for b in s.blocks]
    return json.dumps(data) + "\n"


def load(path: str | Path) -> SystemFile:
    path = Path(path)
    text = path.read_text()
    return parse_json(text) if path.suffix == ".json" else parse_text(text)


def dump(sf: SystemFile, path: str | Path, comments: list[str] = ()) -> None:
    path = Path(path)
    path.write_text(emit_json(sf) if path.suffix == ".json" else emit_text(sf, comments))
