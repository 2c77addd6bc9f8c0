"""Tables of zeta-zero ordinates: ingestion, validation and counting.

File format: UTF-8 text, LF or CRLF line endings, one positive decimal
ordinate per line in ascending order.  Lines starting with ``#`` are
comments.  Blank lines are only allowed at the end of the file.
"""
from __future__ import annotations

import math
import os
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import (CoverageError, DomainError, EmptyTableError, MonotonicityError,
                     ZeroTableParseError)

ZEROS_ENV = "MANGOLDT_TWISTS_ZEROS"
FIXTURE_NAME = "zeros_100.txt"

_DECIMAL = re.compile(r"[+]?(\d+)(?:\.(\d+))?")


@dataclass(frozen=True, eq=False)
class ZeroTable:
    """Ascending positive ordinates gamma; every real part is taken to be 1/2.

    ``source_digits`` is the number of decimals the source carried, or None
    for ordinates treated as exact.
    """

    gammas: np.ndarray
    source_digits: int | None = None
    source: str | None = None

    def __post_init__(self):
        g = np.array(self.gammas, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "gammas", g)

    def __len__(self) -> int:
        return int(self.gammas.size)

    @property
    def max_ordinate(self) -> float:
        return float(self.gammas[-1]) if self.gammas.size else 0.0

    @property
    def ordinate_error(self) -> float:
        """Half a unit in the last recorded decimal (0 for exact ordinates)."""
        return 0.0 if self.source_digits is None else 0.5 * 10.0 ** -self.source_digits

    def up_to(self, T: float) -> np.ndarray:
        return self.gammas[: count_up_to(self, T)]


def parse_zeros(text: str, source: str | None = None) -> ZeroTable:
    lines = text.split("\n")
    # trailing blank lines are allowed; strip them (and a final newline) first
    while lines and lines[-1].strip("\r") == "":
        lines.pop()
    values: list[float] = []
    digits = 0
    prev = -math.inf
    for lineno, raw in enumerate(lines, start=1):
        line = raw[:-1] if raw.endswith("\r") else raw
        if line.startswith("#"):
            continue
        tok = line.strip()
        if not tok:
            raise ZeroTableParseError("blank line inside table", lineno)
        m = _DECIMAL.fullmatch(tok)
        if m is None:
            raise ZeroTableParseError(f"not a positive decimal ordinate: {tok!r}", lineno)
        g = float(tok)
        if not (g > 0.0 and math.isfinite(g)):
            raise ZeroTableParseError(f"ordinate must be positive: {tok!r}", lineno)
        if g <= prev:
            raise MonotonicityError(f"ordinate {tok} does not exceed the previous one", lineno)
        prev = g
        digits = max(digits, len(m.group(2) or ""))
        values.append(g)
    if not values:
        raise EmptyTableError("zero table contains no ordinates")
    return ZeroTable(np.array(values), source_digits=digits, source=source)


def load_zeros(path: str | os.PathLike) -> ZeroTable:
    path = Path(path)
    data = path.read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ZeroTableParseError(f"{path} is not UTF-8: {exc}") from None
    return parse_zeros(text, source=str(path))


def format_zeros(table: ZeroTable, header: list[str] | None = None) -> str:
    digits = 9 if table.source_digits is None else table.source_digits
    out = [f"# {h}" for h in header or []]
    out.extend(f"{g:.{digits}f}" for g in table.gammas)
    return "\n".join(out) + "\n"


def save_zeros(table: ZeroTable, path: str | os.PathLike, header: list[str] | None = None) -> None:
    Path(path).write_text(format_zeros(table, header), encoding="utf-8")


def fixture_path() -> Path:
    """The bundled table of the first 100 ordinates."""
    return Path(str(resources.files("mangoldt_twists") / "data" / FIXTURE_NAME))


def load_fixture() -> ZeroTable:
    return load_zeros(fixture_path())


def default_zeros_path() -> Path | None:
    p = os.environ.get(ZEROS_ENV)
    return Path(p) if p else None


def count_up_to(table: ZeroTable, T: float) -> int:
    """N(T): number of ordinates 0 < gamma <= T."""
    if T > table.max_ordinate:
        raise CoverageError(f"T={T} exceeds table coverage (max ordinate {table.max_ordinate})")
    return int(np.searchsorted(table.gammas, T, side="right"))


def rvm_estimate(T: float) -> float:
    """Riemann-von Mangoldt main terms (T/2pi) log(T/2pi) - T/2pi + 7/8."""
    if T < 2:
        raise DomainError(f"T={T} must be >= 2")
    u = T / (2.0 * math.pi)
    return u * math.log(u) - u + 0.875


def rvm_residual_max(table: ZeroTable, T_min: float = 20.0) -> tuple[float, float]:
    """sup over T in [T_min, max ordinate] of |N(T) - rvm_estimate(T)|.

    The estimate is increasing and N is a step function, so the supremum is
    attained at T_min, at the top of the table, or on either side of a jump.
    Returns (residual, T where it occurs).
    """
    g = table.gammas
    start = int(np.searchsorted(g, T_min, side="left"))
    pts = g[start:]
    u = pts / (2.0 * math.pi)
    est = u * np.log(u) - u + 0.875
    idx = np.arange(start + 1, g.size + 1, dtype=float)  # N at each jump
    cand = np.concatenate([np.abs(idx - est), np.abs(idx - 1 - est)])
    where = np.concatenate([pts, pts])
    edge = [(abs(count_up_to(table, T_min) - rvm_estimate(T_min)), T_min)] if T_min <= g[-1] else []
    best = max([(float(c), float(w)) for c, w in zip(cand, where)] + edge, default=(0.0, T_min))
    return best
