"""
Output rendering helpers.

Command results are rendered either as TSV (via pandas) or as JSON (via
pydantic serialization) and written to stdout or to the --out file.
"""

import logging
import sys
from typing import Any, Mapping, Optional, Sequence

import pandas as pd
from pydantic import TypeAdapter

from datalayer.model.lcp_models import OutputFormat


logger = logging.getLogger(__name__)

_JSON = TypeAdapter(Any)


def to_tsv(rows: Sequence[Mapping[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    """Render flat rows as a TSV table with a header line."""
    frame = pd.DataFrame(list(rows), columns=list(columns) if columns is not None else None)
    return frame.to_csv(sep="\t", index=False, lineterminator="\n", na_rep="")


def to_json(payload: Any) -> str:
    """Render DTOs, lists or dicts as indented JSON."""
    return _JSON.dump_json(payload, indent=2).decode("utf-8") + "\n"


def render(
    rows: Sequence[Mapping[str, Any]],
    payload: Any,
    output_format: OutputFormat,
    columns: Optional[Sequence[str]] = None,
) -> str:
    """
    Render a command result.

    Args:
        rows: Flat rows used for TSV output
        payload: Structured value used for JSON output
        output_format: tsv or json
        columns: Optional TSV column order

    Returns:
        Rendered text
    """
    if OutputFormat(output_format) == OutputFormat.JSON:
        return to_json(payload)
    return to_tsv(rows, columns)


def write_output(text: str, out: Optional[str] = None) -> None:
    """Write rendered text to a file, or to stdout when out is None."""
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        logger.info("Wrote %s", out)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
