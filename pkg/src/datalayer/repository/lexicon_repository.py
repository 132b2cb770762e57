"""
Lexical resource repositories for the lexical complexity toolkit.

All resource files are header-less two-column TSVs: corpus counts
(word, count) optionally preceded by '#tokens=N' / '#types=N' directive
lines, level and familiarity lists (lemma, value) and precomputed
per-instance features (instance_id, value).
"""

import logging
from typing import Dict

import pandas as pd

from datalayer.model.dto.lexicon_dto import (
    FrequencyTable, LevelTable, FamiliarityTable, ExternalFeature
)
from datalayer.model.lcp_models import LexicalUnit
from utils.exceptions import DatasetFormatError
from ._base_repository import TsvRepository, read_directives, unique_or_raise, parse_float
from datalayer.mapper.dataset_mapper import format_float

logger = logging.getLogger(__name__)

DIRECTIVES = ("tokens", "types")


class _KeyValueRepository(TsvRepository):
    """Header-less key/value TSV with unique keys."""

    has_header = False
    columns = ("key", "value")
    key_name = "key"

    def read_pairs(self, path: str, skip_lines: int = 0) -> Dict[str, float]:
        frame, first_line = self.read_frame(path, skip_lines=skip_lines)
        keys = []
        pairs = {}
        for line, row in self.iter_rows(path, frame, first_line):
            key = row["key"].strip()
            if not key:
                raise DatasetFormatError(f"empty {self.key_name}", path=path, line=line)
            keys.append((line, key))
            pairs[key] = parse_float(path, line, "value", row["value"].strip())
        unique_or_raise(path, keys, self.key_name)
        return pairs

    def write_pairs(self, pairs: Dict[str, str], path: str, directives: Dict[str, int] = None) -> None:
        frame = pd.DataFrame(list(pairs.items()), columns=list(self.columns))
        self.write_frame(frame, path)
        if directives:
            with open(path, encoding="utf-8") as handle:
                body = handle.read()
            header = "".join(f"#{name}={value}\n" for name, value in directives.items())
            with open(path, "w", encoding="utf-8", newline="\n") as handle:
                handle.write(header + body)


class FrequencyTableRepository(_KeyValueRepository):
    """Corpus counts keyed by surface form, lemma or character."""

    key_name = "word"

    def __init__(self, unit: LexicalUnit = LexicalUnit.WORD_SURFACE):
        self.unit = unit

    def load(self, path: str) -> FrequencyTable:
        directives, skip = read_directives(path, DIRECTIVES)
        totals = {}
        for name, raw in directives.items():
            try:
                totals[f"{name[:-1]}_total"] = int(raw)
            except ValueError:
                raise DatasetFormatError(f"#{name} must be an integer, got '{raw}'", path=path) from None

        counts = {}
        for word, value in self.read_pairs(path, skip_lines=skip).items():
            if value != int(value) or value < 1:
                raise DatasetFormatError(f"count of '{word}' must be a positive integer, got {value}", path=path)
            counts[word] = int(value)
        if not counts:
            raise DatasetFormatError("no counts", path=path)

        try:
            table = FrequencyTable(counts=counts, unit=self.unit, **totals)
        except ValueError as exc:
            raise DatasetFormatError(str(exc), path=path) from exc
        logger.info(
            "Loaded %d %s counts from %s (tokens=%d, types=%d)",
            len(counts), self.unit.value, path, table.token_total, table.type_total,
        )
        return table

    def save(self, entity: FrequencyTable, path: str) -> None:
        self.write_pairs(
            {word: str(count) for word, count in entity.counts.items()},
            path,
            directives={"tokens": entity.token_total, "types": entity.type_total},
        )


class LevelTableRepository(_KeyValueRepository):
    """Pedagogical level list keyed by lemma."""

    key_name = "lemma"

    def load(self, path: str) -> LevelTable:
        levels = {}
        for lemma, value in self.read_pairs(path).items():
            if value != int(value):
                raise DatasetFormatError(f"level of '{lemma}' must be an integer, got {value}", path=path)
            levels[lemma] = int(value)
        if not levels:
            raise DatasetFormatError("no levels", path=path)
        try:
            table = LevelTable(levels=levels)
        except ValueError as exc:
            raise DatasetFormatError(str(exc), path=path) from exc
        logger.info("Loaded %d levels from %s (max level %d)", len(levels), path, table.max_level)
        return table

    def save(self, entity: LevelTable, path: str) -> None:
        self.write_pairs({lemma: str(level) for lemma, level in entity.levels.items()}, path)


class FamiliarityTableRepository(_KeyValueRepository):
    """Familiarity norms keyed by lemma."""

    key_name = "lemma"

    def load(self, path: str) -> FamiliarityTable:
        familiarity = self.read_pairs(path)
        if not familiarity:
            raise DatasetFormatError("no familiarity values", path=path)
        logger.info("Loaded %d familiarity values from %s", len(familiarity), path)
        return FamiliarityTable(familiarity=familiarity)

    def save(self, entity: FamiliarityTable, path: str) -> None:
        self.write_pairs({lemma: format_float(v) for lemma, v in entity.familiarity.items()}, path)


class ExternalFeatureRepository(_KeyValueRepository):
    """Precomputed feature values keyed by instance id."""

    key_name = "instance id"

    def __init__(self, name: str):
        self.name = name

    def load(self, path: str) -> ExternalFeature:
        values = self.read_pairs(path)
        logger.info("Loaded %d values of feature '%s' from %s", len(values), self.name, path)
        return ExternalFeature(name=self.name, values=values)

    def save(self, entity: ExternalFeature, path: str) -> None:
        self.write_pairs({key: format_float(v) for key, v in entity.values.items()}, path)
