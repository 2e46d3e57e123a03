"""Presentation file format shared by the CLI commands.

Line 1 declares the generators, each following non-comment line is one
relator in word serialization; ``#`` lines carry provenance and symbol
names.  Structured comments ``#name <token> <display>`` and ``#meta``
round-trip so parse(write(p)) reproduces the presentation.
"""
from __future__ import annotations

import io
from typing import TextIO

from .presentation import GroupPresentation
from .words import FreeWord, GeneratorId, word_from_str, word_to_str


class PresentationFormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


def write_presentation(p: GroupPresentation, fh: TextIO) -> None:
    fh.write("generators: " + " ".join(g.token() for g in p.generators) + "\n")
    fh.write(f"#meta name {p.name}\n")
    fh.write(f"#meta n {p.n}\n")
    for g in p.generators:
        display = p.gen_names.get(g) if p.gen_names else None
        if display:
            fh.write(f"#name {g.token()} {display}\n")
    prov = p.provenance or tuple("" for _ in p.relators)
    for rel, pv in zip(p.relators, prov):
        if pv:
            fh.write(f"# {pv}\n")
        fh.write(word_to_str(rel) + "\n")


def presentation_to_str(p: GroupPresentation) -> str:
    buf = io.StringIO()
    write_presentation(p, buf)
    return buf.getvalue()


def parse_presentation(fh: TextIO) -> GroupPresentation:
    generators: tuple[GeneratorId, ...] | None = None
    relators: list[FreeWord] = []
    provenance: list[str] = []
    names: dict[GeneratorId, str] = {}
    meta = {"name": "", "n": 0}
    pending_comment = ""
    for lineno, raw in enumerate(fh, start=1):
        line = raw.rstrip("\n")
        if not line.strip():
            continue
        if line.startswith("#meta "):
            try:
                _, key, value = line.split(" ", 2)
            except ValueError:
                raise PresentationFormatError("malformed #meta line", lineno)
            meta[key] = value
            continue
        if line.startswith("#name "):
            parts = line.split(" ", 2)
            if len(parts) != 3:
                raise PresentationFormatError("malformed #name line", lineno)
            try:
                tok = word_from_str(parts[1])
            except ValueError as exc:
                raise PresentationFormatError(str(exc), lineno)
            names[tok.letters[0][0]] = parts[2]
            continue
        if line.startswith("#"):
            pending_comment = line[1:].strip()
            continue
        if line.startswith("generators:"):
            try:
                gens_word = word_from_str(line.split(":", 1)[1])
            except ValueError as exc:
                raise PresentationFormatError(str(exc), lineno)
            generators = tuple(g for g, _ in gens_word.letters)
            continue
        if generators is None:
            raise PresentationFormatError("relator before generators line", lineno)
        try:
            rel = word_from_str(line)
        except ValueError as exc:
            raise PresentationFormatError(str(exc), lineno)
        undeclared = rel.generators() - set(generators)
        if undeclared:
            tokens = ", ".join(sorted(g.token() for g in undeclared))
            raise PresentationFormatError(f"undeclared generator(s) {tokens}", lineno)
        relators.append(rel)
        provenance.append(pending_comment)
        pending_comment = ""
    if generators is None:
        raise PresentationFormatError("missing generators line", 0)
    return GroupPresentation(
        generators=generators,
        relators=tuple(relators),
        name=str(meta.get("name", "")),
        n=int(meta.get("n", 0) or 0),
        provenance=tuple(provenance),
        gen_names=names,
    )


def parse_presentation_str(s: str) -> GroupPresentation:
    return parse_presentation(io.StringIO(s))
