"""Polytope and weight file formats, and the bundled corpus.

Polytope files::

    # comment
    dim 2
    lattice full
    0 0
    1 0

Weight files hold one lattice point per line followed by a rational
weight: ``x1 ... xn  p/q``.
"""
from __future__ import annotations

from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import InputError
from .polytope import VPolytope
from .triangulation import WeightVector

__all__ = [
    "parse_polytope",
    "read_polytope",
    "format_polytope",
    "parse_weights",
    "read_weights",
    "complete_weights",
    "format_rational",
    "corpus_names",
    "corpus_path",
    "resolve_input",
]


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _ints(tokens: Sequence[str], number: int) -> tuple:
    try:
        return tuple(int(t) for t in tokens)
    except ValueError:
        raise InputError(f"expected integers, got {' '.join(tokens)!r}", number) from None


def parse_polytope(text: str, name: Optional[str] = None) -> VPolytope:
    lines = list(_content_lines(text))
    if not lines:
        raise InputError("empty polytope file")
    number, head = lines[0]
    parts = head.split()
    if len(parts) != 2 or parts[0] != "dim":
        raise InputError("first line must be 'dim n'", number)
    try:
        n = int(parts[1])
    except ValueError:
        raise InputError(f"bad dimension {parts[1]!r}", number) from None
    if n < 1:
        raise InputError("ambient dimension must be positive", number)
    body = lines[1:]
    if body and body[0][1].split()[0] == "lattice":
        number, line = body[0]
        if line.split() != ["lattice", "full"]:
            raise InputError("only 'lattice full' is supported", number)
        body = body[1:]
    vertices = []
    where = {}
    for number, line in body:
        tokens = line.split()
        if len(tokens) != n:
            raise InputError(f"vertex has {len(tokens)} coordinates, expected {n}", number)
        v = _ints(tokens, number)
        if v in where:
            raise InputError(f"vertex {v} repeated (first on line {where[v]})", number)
        where[v] = number
        vertices.append(v)
    if not vertices:
        raise InputError("no vertices given")
    try:
        return VPolytope(vertices, name=name)
    except ValueError as exc:
        bad = next((v for v in vertices if str(v) in str(exc)), None)
        raise InputError(str(exc), where.get(bad)) from None


def read_polytope(path) -> VPolytope:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror}") from None
    return parse_polytope(text, name=p.stem)


def format_polytope(P: VPolytope, comments: Iterable[str] = ()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"dim {P.ambient_dim}")
    out.append("lattice full")
    out.extend(" ".join(str(x) for x in v) for v in sorted(P.vertices))
    return "\n".join(out) + "\n"


def parse_weights(text: str, dim: int) -> WeightVector:
    w = {}
    for number, line in _content_lines(text):
        tokens = line.split()
        if len(tokens) != dim + 1:
            raise InputError(f"expected {dim} coordinates and a weight", number)
        point = _ints(tokens[:dim], number)
        try:
            value = Fraction(tokens[dim])
        except (ValueError, ZeroDivisionError):
            raise InputError(f"bad weight {tokens[dim]!r}", number) from None
        if point in w:
            raise InputError(f"point {point} weighted twice", number)
        w[point] = value
    return WeightVector(w)


def read_weights(path, dim: int) -> WeightVector:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {p}: {exc.strerror}") from None
    return parse_weights(text, dim)


def complete_weights(w: WeightVector, points: Sequence[Sequence[int]]) -> tuple[WeightVector, list]:
    """Restrict ``w`` to ``points``; points without a weight get 0 and are returned."""
    pts = [tuple(p) for p in points]
    extra = sorted(set(w) - set(pts))
    if extra:
        raise InputError(f"weighted point {extra[0]} is not a lattice point of the polytope")
    missing = w.missing(pts)
    full = WeightVector({p: w.get(p, 0) for p in pts})
    return full, missing


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# corpus ---------------------------------------------------------------------


def _corpus_dir():
    return resources.files("gorpoly") / "corpus"


def corpus_names() -> list[str]:
    return sorted(p.name[: -len(".poly")] for p in _corpus_dir().iterdir() if p.name.endswith(".poly"))


def corpus_path(name: str) -> Path:
    return Path(str(_corpus_dir() / name))


def resolve_input(arg: str, suffix: str = ".poly") -> Path:
    """A file path, or the name of a bundled corpus file."""
    p = Path(arg)
    if p.exists():
        return p
    bundled = corpus_path(arg if arg.endswith(suffix) else arg + suffix)
    if bundled.exists():
        return bundled
    bundled = corpus_path(arg)
    if bundled.exists():
        return bundled
    raise InputError(f"no such file or corpus entry: {arg}")
