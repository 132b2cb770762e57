"""
Lexical feature helpers.

This module provides the per-instance scalar features with their handling
of words missing from a resource: Laplace-smoothed log10 frequencies
aggregated by minimum, learner levels with an out-of-list dummy aggregated
by maximum, and familiarity with the table minimum as floor aggregated by
minimum.
"""

import math
from typing import List, Sequence, Tuple, Union

from datalayer.model.dto.dataset_dto import Instance
from datalayer.model.dto.lexicon_dto import (
    FrequencyTable, LevelTable, FamiliarityTable, ExternalFeature
)
from datalayer.model.lcp_models import LexicalUnit
from .exceptions import ValidationError


Resource = Union[FrequencyTable, LevelTable, FamiliarityTable, ExternalFeature]


def smoothed_log_freq(table: FrequencyTable, item: str) -> float:
    """
    Laplace-smoothed log10 relative frequency.

    log10((count + 1) / (tokens + types)); unseen items use count 0.
    """
    return math.log10((table.count(item) + 1) / (table.token_total + table.type_total))


def sequence_log_freq(table: FrequencyTable, items: Sequence[str]) -> float:
    """Minimum smoothed log-frequency over a sequence of items."""
    if not items:
        raise ValidationError("cannot compute the frequency of an empty sequence")
    return min(smoothed_log_freq(table, item) for item in items)


def char_log_freq(table: FrequencyTable, target: str) -> float:
    """Minimum smoothed log-frequency over the code points of a target."""
    if not target:
        raise ValidationError("cannot compute the character frequency of an empty target")
    return sequence_log_freq(table, list(target))


def level_feature(table: LevelTable, lemmas: Sequence[str]) -> int:
    """Highest level among the lemmas; unlisted lemmas count as max_level + 1."""
    if not lemmas:
        raise ValidationError("cannot compute the level of an empty lemma list")
    return max(table.levels.get(lemma, table.dummy) for lemma in lemmas)


def familiarity_feature(table: FamiliarityTable, lemmas: Sequence[str]) -> float:
    """Lowest familiarity among the lemmas; unlisted lemmas get the table floor."""
    if not lemmas:
        raise ValidationError("cannot compute the familiarity of an empty lemma list")
    floor = table.floor
    return min(table.familiarity.get(lemma, floor) for lemma in lemmas)


def lookup_units(instance: Instance, unit: LexicalUnit) -> Tuple[str, ...]:
    """Items of an instance a resource is keyed by."""
    if unit == LexicalUnit.LEMMA:
        return instance.lemmas
    if unit == LexicalUnit.CHARACTER:
        return instance.characters
    return instance.tokens


def coverage_mask(resource: Resource, instances: Sequence[Instance]) -> List[bool]:
    """
    Whether each instance is fully covered by a resource.

    True means no smoothing, dummy or floor substitution enters the
    instance's feature value: every lookup unit is stored in the resource
    (with a count of at least 1 for frequency tables).
    """
    if isinstance(resource, ExternalFeature):
        return [instance.id in resource for instance in instances]
    if isinstance(resource, FrequencyTable):
        return [
            all(resource.count(item) >= 1 for item in lookup_units(instance, resource.unit))
            for instance in instances
        ]
    # level and familiarity tables are lemma-keyed
    return [all(lemma in resource for lemma in instance.lemmas) for instance in instances]
