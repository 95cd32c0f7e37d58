"""``mf`` command line.

Exit status: 0 on success, 1 when a check or invariant fails, 2 on usage or
parse errors.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path

import click

from . import z2
from .annotation import PICKS, annotate as run_annotation
from .betti import perfect_frame
from .checks import run_battery
from .complex import Complex, ComplexError, sorted_chain
from .frames import coreference as build_coreference, format_label, reference as build_reference
from .io import (
    ParseError,
    frame_lines,
    frame_to_json,
    parse_simplices,
    read_face_list,
    sequence_lines,
    sequence_to_json,
)
from .morse_complex import build_morse_complex
from .sequence import ORDERS, SCHEMES, build_sequence


@dataclass(frozen=True)
class RunConfig:
    path: Path
    scheme: str = "increasing"
    order: str = "lex"
    seed: int = 0
    pick: str = "min-lex"
    json: bool = False

    def complex(self) -> Complex:
        try:
            return read_face_list(self.path)
        except (ParseError, ComplexError) as exc:
            raise click.UsageError(f"{self.path}: {exc}") from None
        except OSError as exc:
            raise click.UsageError(f"{self.path}: {exc.strerror}") from None

    def sequence(self, K: Complex | None = None):
        return build_sequence(K if K is not None else self.complex(), self.scheme, self.order, self.seed)


def _sequence_options(fn):
    fn = click.option("--seed", type=int, default=0, envvar="MF_SEED", show_default=True,
                      help="Seed for --order random (falls back to $MF_SEED).")(fn)
    fn = click.option("--order", type=click.Choice(ORDERS), default="lex", show_default=True)(fn)
    fn = click.option("--scheme", type=click.Choice(tuple(SCHEMES)), default="increasing", show_default=True)(fn)
    fn = click.option("--json", "as_json", is_flag=True, help="Emit JSON.")(fn)
    fn = click.argument("file", type=click.Path(path_type=Path))(fn)
    return fn


def _pick_option(fn):
    return click.option("--pick", type=click.Choice(PICKS), default="min-lex", show_default=True)(fn)


def _emit(obj) -> None:
    click.echo(json.dumps(obj, sort_keys=True))


def _vs(s) -> str:
    return " ".join(map(str, s))


@click.group()
def main() -> None:
    """Morse sequences, Morse frames and mod-2 homology of simplicial complexes."""


@main.command()
@_sequence_options
def sequence(file, as_json, scheme, order, seed):
    """Print a Morse sequence: `C v...` or `R sigma | tau` per step."""
    cfg = RunConfig(file, scheme, order, seed, json=as_json)
    W = cfg.sequence()
    if as_json:
        _emit(sequence_to_json(W))
    else:
        click.echo("\n".join(sequence_lines(W)))


def _frame_command(builder):
    def command(file, as_json, scheme, order, seed):
        cfg = RunConfig(file, scheme, order, seed, json=as_json)
        frame = builder(cfg.sequence())
        if as_json:
            _emit(frame_to_json(frame))
        else:
            click.echo("\n".join(frame_lines(frame)))

    return command


main.command("reference", help="Print the Morse reference of each simplex.")(
    _sequence_options(_frame_command(build_reference))
)
main.command("coreference", help="Print the Morse co-reference of each simplex.")(
    _sequence_options(_frame_command(build_coreference))
)


@main.command("morse-complex")
@_sequence_options
def morse_complex_cmd(file, as_json, scheme, order, seed):
    """Print the critical simplexes and their differentials."""
    W = RunConfig(file, scheme, order, seed).sequence()
    M = build_morse_complex(W, build_reference(W))
    if as_json:
        _emit({
            "critical": [[list(s) for s in crit] for crit in M.critical],
            "matrices": [M.matrix(p).tolist() for p in range(M.dim + 1)],
        })
        return
    for p, crit in enumerate(M.critical):
        click.echo(f"dim {p}: {len(crit)} critical")
        for s in crit:
            click.echo(f"  d({_vs(s)}) = {format_label(M.differential[s])}")


@main.command()
@_sequence_options
@_pick_option
@click.option("--cycle", "cycle_file", type=click.Path(path_type=Path),
              help="File listing the simplexes of a cycle; prints its class.")
def annotate(file, as_json, scheme, order, seed, pick, cycle_file):
    """Run the annotation scan; print labels and live critical simplexes."""
    cfg = RunConfig(file, scheme, order, seed, pick, as_json)
    K = cfg.complex()
    ann = run_annotation(cfg.sequence(K), pick)
    if cycle_file is not None:
        try:
            z = parse_simplices(cycle_file.read_text())
            label = ann.cycle_class(z)
        except (ParseError, ComplexError, OSError) as exc:
            raise click.UsageError(f"{cycle_file}: {exc}") from None
        if as_json:
            _emit({"class": [list(s) for s in sorted_chain(label)]})
        else:
            click.echo(format_label(label))
        return
    frame = ann.frame()
    live = [[list(s) for s in ann.live_simplexes(p)] for p in range(K.dim + 1)]
    if as_json:
        payload = frame_to_json(frame)
        payload["live"] = live
        _emit(payload)
        return
    click.echo("\n".join(frame_lines(frame)))
    for p in range(K.dim + 1):
        click.echo(f"live {p}: {format_label(ann.live_simplexes(p))}")


@main.command()
@_sequence_options
@_pick_option
@click.option("--oracle", is_flag=True, help="Use Gaussian elimination instead of Morse frames.")
@click.option("--trace", is_flag=True, help="Also print each cancellation.")
def betti(file, as_json, scheme, order, seed, pick, oracle, trace):
    """Print mod-2 Betti numbers b0 ... bd."""
    cfg = RunConfig(file, scheme, order, seed, pick, as_json)
    K = cfg.complex()
    cancellations: list[str] = []
    if oracle:
        values = z2.betti_numbers(K)
    else:
        result = perfect_frame(cfg.sequence(K), pick=pick)
        values = result.betti
        cancellations = result.trace_lines()
    if as_json:
        payload = {
            "betti": values,
            "per_dimension": {str(p): b for p, b in enumerate(values)},
            "method": "oracle" if oracle else "perfect-frame",
        }
        if trace and not oracle:
            payload["cancellations"] = cancellations
        _emit(payload)
        return
    if trace:
        for line in cancellations:
            click.echo(line)
    click.echo(" ".join(map(str, values)))


@main.command()
@_sequence_options
@_pick_option
@click.option("--trials", type=int, default=100, show_default=True)
def check(file, as_json, scheme, order, seed, pick, trials):
    """Run the invariant battery; exit 1 if any property fails."""
    cfg = RunConfig(file, scheme, order, seed, pick, as_json)
    results = run_battery(cfg.sequence(), pick=pick, seed=seed, trials=trials)
    if as_json:
        _emit({r.name: {"ok": r.ok, "skipped": r.skipped, "violations": len(r.violations)} for r in results})
    else:
        for r in results:
            click.echo(r.line())
    if not all(r.ok for r in results):
        sys.exit(1)


if __name__ == "__main__":
    main()
