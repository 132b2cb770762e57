import csv
import logging
import math
import os
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, TypeVar

import pandas as pd
from pydantic import ValidationError as PydanticValidationError

from utils.exceptions import DatasetFormatError
from ._repository_abc import RepositoryABC

T = TypeVar('T')
R = TypeVar('R')

logger = logging.getLogger(__name__)


class TsvRepository(RepositoryABC[T]):
    """Shared TSV reading and writing on top of pandas"""

    # Whether the first non-directive line is a header row
    has_header: bool = True
    # Columns expected in header-less files
    columns: Sequence[str] = ()

    def exists(self, path: str) -> bool:
        """Check if the file exists"""
        return os.path.isfile(path)

    def read_frame(self, path: str, skip_lines: int = 0) -> Tuple[pd.DataFrame, int]:
        """
        Read a TSV file with every cell as a string.

        Args:
            path: File path
            skip_lines: Leading lines to skip (directive lines)

        Returns:
            (frame, line number of the first data row)

        Raises:
            DatasetFormatError: If the file is missing, empty or malformed
        """
        if not self.exists(path):
            raise DatasetFormatError("file not found", path=path)
        options = dict(
            sep="\t",
            dtype=str,
            keep_default_na=False,
            quoting=csv.QUOTE_NONE,
            skiprows=skip_lines,
            encoding="utf-8",
        )
        if not self.has_header:
            options.update(header=None, names=list(self.columns))
        try:
            frame = pd.read_csv(path, **options)
        except pd.errors.EmptyDataError:
            frame = pd.DataFrame(columns=list(self.columns))
        except pd.errors.ParserError as exc:
            raise DatasetFormatError(f"column-count mismatch: {exc}", path=path) from exc
        except UnicodeDecodeError as exc:
            raise DatasetFormatError("file is not valid UTF-8", path=path) from exc

        first_line = skip_lines + (2 if self.has_header else 1)
        logger.debug("Read %d rows from %s", len(frame), path)
        return frame, first_line

    def iter_rows(self, path: str, frame: pd.DataFrame, first_line: int) -> Iterator[Tuple[int, dict]]:
        """
        Yield (line number, row) for every data row.

        Each raw line must have as many tab-separated fields as the header;
        blank lines are skipped as pandas skips them.
        """
        expected = len(frame.columns)
        with open(path, encoding="utf-8") as handle:
            raw_lines = handle.read().split("\n")[first_line - 1:]
        numbered = [
            (first_line + offset, text.rstrip("\r"))
            for offset, text in enumerate(raw_lines)
            if text.rstrip("\r") != ""
        ]
        for (line, text), row in zip(numbered, frame.to_dict("records")):
            fields = text.count("\t") + 1
            if fields != expected:
                raise DatasetFormatError(
                    f"column-count mismatch: expected {expected} fields, got {fields}", path=path, line=line
                )
            yield line, row

    def parse_row(self, path: str, line: int, build: Callable[[], R]) -> R:
        """Run a row constructor, turning validation failures into line-numbered errors"""
        try:
            return build()
        except PydanticValidationError as exc:
            error = exc.errors()[0]
            column = ".".join(str(part) for part in error.get("loc", ())) or None
            raise DatasetFormatError(error["msg"], path=path, line=line, column=column) from exc
        except ValueError as exc:
            raise DatasetFormatError(str(exc), path=path, line=line) from exc

    def write_frame(self, frame: pd.DataFrame, path: str) -> None:
        """Write a frame as UTF-8 TSV"""
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        frame.to_csv(
            path,
            sep="\t",
            index=False,
            header=self.has_header,
            quoting=csv.QUOTE_NONE,
            lineterminator="\n",
            encoding="utf-8",
        )
        logger.debug("Wrote %d rows to %s", len(frame), path)


def read_directives(path: str, names: Sequence[str]) -> Tuple[dict, int]:
    """
    Parse leading '#name=value' lines of a header-less TSV file.

    Returns:
        (name -> raw value, number of directive lines)
    """
    directives = {}
    count = 0
    if not os.path.isfile(path):
        raise DatasetFormatError("file not found", path=path)
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            stripped = line.rstrip("\n")
            if not stripped.startswith("#") or "=" not in stripped:
                break
            name, value = stripped[1:].split("=", 1)
            if name.strip() not in names:
                break
            directives[name.strip()] = value.strip()
            count += 1
    return directives, count


def unique_or_raise(path: str, keys: List[Tuple[int, str]], what: str) -> None:
    """Reject duplicate keys, naming the line of the second occurrence"""
    seen = set()
    for line, key in keys:
        if key in seen:
            raise DatasetFormatError(f"duplicate {what} '{key}'", path=path, line=line)
        seen.add(key)


def parse_float(path: str, line: int, column: str, raw: str, allow_empty: bool = False) -> Optional[float]:
    """Parse one numeric cell"""
    if raw == "":
        if allow_empty:
            return None
        raise DatasetFormatError("missing value", path=path, line=line, column=column)
    try:
        value = float(raw)
    except ValueError:
        raise DatasetFormatError(f"not a number: '{raw}'", path=path, line=line, column=column) from None
    if not math.isfinite(value):
        raise DatasetFormatError(f"not a finite number: '{raw}'", path=path, line=line, column=column)
    return value
