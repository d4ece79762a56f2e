"""Explicit functions between finite indexed sets.

A function f: X -> Y with |X| = n and |Y| = m is stored as the tuple of
images (f(0), ..., f(n-1)), all indices zero-based.  The degree of
noninvertibility

    deg(f) = (1/n) * sum_x |f^-1(f(x))| = (1/n) * sum_y |f^-1(y)|^2

is always an exact rational (a ``fractions.Fraction``); nothing in this
module touches floating point.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    EmptySetError,
    FunctionFileError,
    InvalidExponentError,
    LengthMismatchError,
    OutOfRangeImageError,
    SizeMismatchError,
)

__all__ = [
    "FiniteFunction",
    "make_function",
    "compose",
    "identity_function",
    "constant_function",
    "parse_function_text",
    "parse_function_json",
    "load_function",
    "format_function_text",
    "function_to_json",
]


@dataclass(frozen=True)
class FiniteFunction:
    """An explicit function between two finite nonempty indexed sets.

    Immutable; all derived quantities are pure functions of the image
    tuple, so instances are safe to share between threads.
    """

    domain_size: int
    codomain_size: int
    images: tuple[int, ...]

    def __post_init__(self):
        if self.domain_size < 1 or self.codomain_size < 1:
            raise EmptySetError(
                f"domain and codomain must be nonempty, got sizes "
                f"({self.domain_size}, {self.codomain_size})"
            )
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.domain_size:
            raise LengthMismatchError(
                f"expected {self.domain_size} images, got {len(images)}"
            )
        for x, y in enumerate(images):
            if not 0 <= y < self.codomain_size:
                raise OutOfRangeImageError(
                    f"image of {x} is {y}, outside [0, {self.codomain_size})"
                )

    def __call__(self, x: int) -> int:
        if not 0 <= x < self.domain_size:
            raise IndexError(f"{x} is outside the domain [0, {self.domain_size})")
        return self.images[x]

    def fiber_sizes(self) -> tuple[int, ...]:
        """Sizes |f^-1(y)| for y = 0..codomain_size-1; they sum to |X|."""
        counts = [0] * self.codomain_size
        for y in self.images:
            counts[y] += 1
        return tuple(counts)

    def degree(self) -> Fraction:
        """deg(f) = (1/|X|) * sum_y |f^-1(y)|^2, as a reduced rational."""
        return Fraction(
            sum(c * c for c in self.fiber_sizes()), self.domain_size
        )

    def degree_q(self, q: int) -> Fraction:
        """Generalized degree (1/|X|) * sum_y |f^-1(y)|^q for q >= 1.

        q = 1 always gives 1 and q = 2 recovers ``degree``.  Exponents
        below 1 are rejected: q = 0 would force a 0^0 convention into the
        public API (the internal summations that need it adopt 0^0 = 1,
        but callers never see it).
        """
        if q < 1:
            raise InvalidExponentError(f"exponent must be >= 1, got {q}")
        return Fraction(
            sum(c**q for c in self.fiber_sizes()), self.domain_size
        )

    def max_fiber(self) -> int:
        """Largest fiber size; at least ceil(|X| / |Y|)."""
        return max(self.fiber_sizes())


def make_function(
    domain_size: int, codomain_size: int, images: Sequence[int]
) -> FiniteFunction:
    """Build a validated FiniteFunction from zero-based images."""
    return FiniteFunction(domain_size, codomain_size, tuple(images))


def identity_function(n: int) -> FiniteFunction:
    return FiniteFunction(n, n, tuple(range(n)))


def constant_function(
    domain_size: int, codomain_size: int, value: int
) -> FiniteFunction:
    return FiniteFunction(
        domain_size, codomain_size, (value,) * domain_size
    )


def compose(outer: FiniteFunction, inner: FiniteFunction) -> FiniteFunction:
    """outer after inner: x -> outer(inner(x))."""
    if inner.codomain_size != outer.domain_size:
        raise SizeMismatchError(
            f"cannot compose: inner codomain {inner.codomain_size} != "
            f"outer domain {outer.domain_size}"
        )
    return FiniteFunction(
        inner.domain_size,
        outer.codomain_size,
        tuple(outer.images[y] for y in inner.images),
    )


# ---------------------------------------------------------------------------
# Function file formats.
#
# Text:  a single line  "n m : i_1 i_2 ... i_n"  with ONE-based images.
# JSON:  {"domain": n, "codomain": m, "images": [...]}  with ZERO-based
#        images.  The two conventions are never mixed: a 0 in the text
#        format and an image equal to the codomain size in the JSON
#        format are both rejected with a pointed message.
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\S+")


def parse_function_text(text: str) -> FiniteFunction:
    """Parse the one-line text format (one-based images)."""
    lines = text.splitlines() or [""]
    content = [(i + 1, ln) for i, ln in enumerate(lines) if ln.strip()]
    if not content:
        raise FunctionFileError("empty function file", 1, 1)
    if len(content) > 1:
        lineno = content[1][0]
        raise FunctionFileError(
            "expected a single line 'n m : i_1 ... i_n'", lineno, 1
        )
    lineno, line = content[0]
    tokens = [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]

    def want_int(idx: int, what: str, minimum: int) -> int:
        if idx >= len(tokens):
            raise FunctionFileError(f"missing {what}", lineno, len(line) + 1)
        tok, col = tokens[idx]
        try:
            value = int(tok)
        except ValueError:
            raise FunctionFileError(
                f"{what} must be an integer, got {tok!r}", lineno, col
            ) from None
        if value < minimum:
            raise FunctionFileError(
                f"{what} must be >= {minimum}, got {value}", lineno, col
            )
        return value

    n = want_int(0, "domain size", 1)
    m = want_int(1, "codomain size", 1)
    if len(tokens) < 3 or tokens[2][0] != ":":
        col = tokens[2][1] if len(tokens) > 2 else len(line) + 1
        raise FunctionFileError("expected ':' after the two sizes", lineno, col)
    image_tokens = tokens[3:]
    if len(image_tokens) != n:
        col = image_tokens[-1][1] if image_tokens else len(line) + 1
        raise FunctionFileError(
            f"expected {n} images, got {len(image_tokens)}", lineno, col
        )
    images = []
    for tok, col in image_tokens:
        try:
            value = int(tok)
        except ValueError:
            raise FunctionFileError(
                f"image must be an integer, got {tok!r}", lineno, col
            ) from None
        if value == 0:
            raise FunctionFileError(
                "text images are one-based; 0 is not a valid image "
                "(zero-based images belong in the JSON format)",
                lineno,
                col,
            )
        if not 1 <= value <= m:
            raise FunctionFileError(
                f"one-based image {value} outside [1, {m}]", lineno, col
            )
        images.append(value - 1)
    return FiniteFunction(n, m, tuple(images))


def parse_function_json(text: str) -> FiniteFunction:
    """Parse the JSON format (zero-based images)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FunctionFileError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(data, dict):
        raise FunctionFileError("expected a JSON object", 1, 1)
    required = {"domain", "codomain", "images"}
    missing = required - data.keys()
    if missing:
        raise FunctionFileError(f"missing keys: {sorted(missing)}", 1, 1)
    extra = data.keys() - required
    if extra:
        raise FunctionFileError(f"unknown keys: {sorted(extra)}", 1, 1)
    n, m, images = data["domain"], data["codomain"], data["images"]
    if not isinstance(n, int) or not isinstance(m, int):
        raise FunctionFileError("domain and codomain must be integers", 1, 1)
    if n < 1 or m < 1:
        raise FunctionFileError("domain and codomain must be >= 1", 1, 1)
    if not isinstance(images, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in images
    ):
        raise FunctionFileError("images must be a list of integers", 1, 1)
    if len(images) != n:
        raise FunctionFileError(
            f"expected {n} images, got {len(images)}", 1, 1
        )
    for i, v in enumerate(images):
        if v == m:
            raise FunctionFileError(
                f"image {v} at index {i} equals the codomain size; JSON "
                "images are zero-based (one-based images belong in the "
                "text format)",
                1,
                1,
            )
        if not 0 <= v < m:
            raise FunctionFileError(
                f"image {v} at index {i} outside [0, {m})", 1, 1
            )
    return FiniteFunction(n, m, tuple(images))


def load_function(path: str) -> FiniteFunction:
    """Read a function file, sniffing the format from the first character."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_function_json(text)
    return parse_function_text(text)


def format_function_text(f: FiniteFunction) -> str:
    """Serialize to the one-line text format (one-based images)."""
    images = " ".join(str(y + 1) for y in f.images)
    return f"{f.domain_size} {f.codomain_size} : {images}"


def function_to_json(f: FiniteFunction) -> dict:
    """Serialize to the JSON format dict (zero-based images)."""
    return {
        "domain": f.domain_size,
        "codomain": f.codomain_size,
        "images": list(f.images),
    }
