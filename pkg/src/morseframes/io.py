"""Face-list parsing and text/JSON serialisation of sequences and frames."""
from __future__ import annotations

from pathlib import Path
from typing import Iterable

from .complex import Complex, ComplexError, Simplex, closure, simplex, sorted_chain
from .frames import Frame, format_label
from .sequence import Critical, MorseSequence, Regular


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_simplices(text: str) -> list[Simplex]:
    """Simplexes listed one per line; ``#`` comments and blank lines skipped."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        vertices = []
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise ParseError(lineno, f"invalid vertex id {tok!r}") from None
            if v < 0:
                raise ParseError(lineno, f"negative vertex id {v}")
            vertices.append(v)
        try:
            out.append(simplex(vertices))
        except ComplexError as exc:
            raise ParseError(lineno, str(exc)) from None
    return out


def parse_face_list(text: str) -> Complex:
    return closure(parse_simplices(text))


def read_face_list(path: str | Path) -> Complex:
    return parse_face_list(Path(path).read_text())


def _vs(s: Simplex) -> str:
    return " ".join(map(str, s))


# -- sequences ----------------------------------------------------------------

def sequence_lines(W: MorseSequence) -> list[str]:
    return [
        f"C {_vs(st.sigma)}" if isinstance(st, Critical) else f"R {_vs(st.sigma)} | {_vs(st.tau)}"
        for st in W.steps
    ]


def sequence_to_json(W: MorseSequence) -> dict:
    steps = []
    for st in W.steps:
        if isinstance(st, Critical):
            steps.append({"type": "C", "sigma": list(st.sigma)})
        else:
            steps.append({"type": "R", "sigma": list(st.sigma), "tau": list(st.tau)})
    return {"steps": steps, "critical_counts": W.critical_counts()}


def sequence_from_json(K: Complex, data: dict) -> MorseSequence:
    steps = []
    for st in data["steps"]:
        if st["type"] == "C":
            steps.append(Critical(tuple(st["sigma"])))
        elif st["type"] == "R":
            steps.append(Regular(tuple(st["sigma"]), tuple(st["tau"])))
        else:
            raise ValueError(f"unknown step type {st['type']!r}")
    return MorseSequence.from_steps(K, steps)


def parse_sequence_lines(K: Complex, lines: Iterable[str]) -> MorseSequence:
    steps = []
    for lineno, line in enumerate(lines, start=1):
        line = line.strip()
        if not line:
            continue
        kind, _, rest = line.partition(" ")
        try:
            if kind == "C":
                steps.append(Critical(simplex(map(int, rest.split()))))
            elif kind == "R":
                lo, _, hi = rest.partition("|")
                steps.append(Regular(simplex(map(int, lo.split())), simplex(map(int, hi.split()))))
            else:
                raise ParseError(lineno, f"unknown step kind {kind!r}")
        except (ValueError, ComplexError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(lineno, str(exc)) from None
    return MorseSequence.from_steps(K, steps)


# -- frames -------------------------------------------------------------------

def frame_lines(frame: Frame) -> list[str]:
    return [f"{_vs(s)} : {format_label(label)}" for s, label in frame.items()]


def frame_to_json(frame: Frame) -> dict:
    return {
        "kind": frame.kind,
        "labels": [
            {"simplex": list(s), "label": [list(c) for c in sorted_chain(label)]}
            for s, label in frame.items()
        ],
    }


def frame_from_json(W: MorseSequence, data: dict) -> Frame:
    K = W.complex
    masks = [0] * len(K)
    probe = Frame(W, masks, data.get("kind", "frame"))
    for entry in data["labels"]:
        masks[K.id_of(tuple(entry["simplex"]))] = probe.encode(tuple(c) for c in entry["label"])
    return probe
