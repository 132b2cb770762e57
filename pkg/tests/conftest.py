"""
Pytest configuration and fixtures for the lexical complexity toolkit tests.

This module provides the published trial-set table, synthetic rating
matrices and helpers that write dataset files under tmp_path.
"""

import os
from typing import Callable, Dict, List, Sequence, Tuple

import numpy as np
import pytest

from config import Config
from datalayer.model.dto.dataset_dto import Instance, RatingMatrix, LabeledView
from datalayer.model.dto.lexicon_dto import ExternalFeature
from datalayer.model.lcp_models import Origin, Split
from utils.rating_helpers import group_mean


# target, origin, log10 frequency, original mean, Chinese L1 mean, replication mean
TRIAL_TABLE: List[Tuple[str, str, float, float, float, float]] = [
    ("掲載した", "Chinese", -4.744, 0.400, 0.100, 0.475),
    ("恩を売り", "Mixed", -5.166, 0.700, 0.450, 0.700),
    ("標題", "Chinese", -7.173, 0.375, 0.125, 0.525),
    ("考慮した", "Chinese", -4.815, 0.400, 0.175, 0.325),
    ("強盗被害", "Chinese", -5.554, 0.400, 0.225, 0.425),
    ("各種の", "Chinese", -4.978, 0.200, 0.025, 0.150),
    ("気にかけない", "Mixed", -3.588, 0.475, 0.300, 0.375),
    ("書き添えられて", "Japanese", -6.817, 0.600, 0.450, 0.550),
    ("長大な", "Chinese", -6.317, 0.475, 0.325, 0.300),
    ("随所", "Chinese", -5.857, 0.725, 0.600, 0.700),
    ("応用した", "Chinese", -4.935, 0.225, 0.125, 0.325),
    ("旧", "Chinese", -4.613, 0.150, 0.075, 0.200),
    ("市電", "Chinese", -6.232, 0.475, 0.400, 0.400),
    ("募集し", "Chinese", -4.664, 0.100, 0.050, 0.325),
    ("諫める", "Japanese", -7.068, 0.775, 0.775, 0.850),
    ("変更されて", "Chinese", -4.105, 0.100, 0.100, 0.050),
    ("または", "Japanese", -2.939, 0.075, 0.075, 0.050),
    ("戦闘曲", "Chinese", -4.224, 0.425, 0.425, 0.625),
    ("ロック", "Other", -4.245, 0.025, 0.050, 0.275),
    ("はじめ", "Japanese", -4.239, 0.025, 0.075, 0.000),
    ("繰り返し", "Japanese", -4.232, 0.200, 0.275, 0.050),
    ("小物", "Japanese", -5.112, 0.225, 0.325, 0.275),
    ("馴染み深かった", "Japanese", -7.913, 0.500, 0.600, 0.550),
    ("再び", "Japanese", -4.462, 0.075, 0.175, 0.025),
    ("連れ戻す", "Japanese", -6.602, 0.300, 0.400, 0.325),
    ("ピックアップして", "Other", -4.977, 0.050, 0.175, 0.075),
    ("直ちに", "Japanese", -5.383, 0.275, 0.400, 0.300),
    ("なおかつ", "Japanese", -5.103, 0.500, 0.700, 0.700),
    ("キレさせる", "Japanese", -5.205, 0.375, 0.625, 0.725),
    ("コーナー", "Other", -4.325, 0.100, 0.400, 0.225),
]

GROUP_COLUMNS = {"original": 3, "chinese_l1": 4, "replication": 5}


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Fresh Config singleton that ignores any local .env file."""
    monkeypatch.setenv("ENV_PATH", str(tmp_path / "no.env"))
    for key in list(os.environ):
        if key.startswith("LCP_"):
            monkeypatch.delenv(key, raising=False)
    Config.reset()
    yield
    Config.reset()


# ============================================================================
# Instance Fixtures
# ============================================================================

def make_instance(instance_id: str, target: str, origin: str = "Japanese", pos: str = "Noun",
                  split: str = "trial", tokens: Sequence[str] = None) -> Instance:
    tokens = tuple(tokens or (target,))
    return Instance(
        id=instance_id,
        target=target,
        tokens=tokens,
        lemmas=tokens,
        origin=Origin(origin),
        pos=pos,
        split=Split(split),
    )


@pytest.fixture
def trial_instances() -> List[Instance]:
    """The 30 trial words with their published word origins."""
    return [
        make_instance(f"trial{i:02d}", target, origin)
        for i, (target, origin, *_rest) in enumerate(TRIAL_TABLE, start=1)
    ]


@pytest.fixture
def trial_frequency(trial_instances) -> Dict[str, float]:
    """Published log10 frequency per trial instance id."""
    return {instance.id: row[2] for instance, row in zip(trial_instances, TRIAL_TABLE)}


def group_matrix(instance_ids: Sequence[str], means: Sequence[float], n_annotators: int = 2,
                 prefix: str = "A") -> RatingMatrix:
    """Matrix whose annotators all rate every instance with the given mean."""
    return RatingMatrix(
        annotator_ids=tuple(f"{prefix}{k + 1}" for k in range(n_annotators)),
        instance_ids=tuple(instance_ids),
        values=np.tile(np.asarray(means, dtype=float), (n_annotators, 1)),
    )


@pytest.fixture
def trial_groups(trial_instances) -> Dict[str, RatingMatrix]:
    """Rating matrices reproducing the published group means."""
    ids = [instance.id for instance in trial_instances]
    return {
        name: group_matrix(ids, [row[column] for row in TRIAL_TABLE], prefix=name[:2].upper())
        for name, column in GROUP_COLUMNS.items()
    }


@pytest.fixture
def trial_views(trial_groups) -> Dict[str, LabeledView]:
    return {name: group_mean(matrix) for name, matrix in trial_groups.items()}


# ============================================================================
# Synthetic Fixtures
# ============================================================================

def synthetic_dataset(n_annotators: int = 12, n_instances: int = 40, seed: int = 7
                      ) -> Tuple[List[Instance], RatingMatrix, ExternalFeature]:
    """
    Instances split evenly into trial and test, grid ratings driven by a
    latent complexity, and a noisy feature correlated with it.
    """
    rng = np.random.default_rng(seed)
    latent = np.linspace(0.05, 0.95, n_instances)
    rng.shuffle(latent)
    instances = [
        make_instance(
            f"s{j:03d}", f"語{j:03d}",
            origin=("Japanese", "Chinese")[j % 2],
            split="trial" if j < n_instances // 2 else "test",
        )
        for j in range(n_instances)
    ]
    noise = rng.normal(0.0, 0.15, size=(n_annotators, n_instances))
    values = np.clip(np.round((latent + noise) * 4) / 4, 0.0, 1.0)
    matrix = RatingMatrix(
        annotator_ids=tuple(f"A{k:02d}" for k in range(n_annotators)),
        instance_ids=tuple(instance.id for instance in instances),
        values=values,
    )
    feature = ExternalFeature(
        name="signal",
        values={
            instance.id: float(-3.0 - 4.0 * value + rng.normal(0.0, 0.3))
            for instance, value in zip(instances, latent)
        },
    )
    return instances, matrix, feature


@pytest.fixture
def synthetic():
    return synthetic_dataset()


# ============================================================================
# File Fixtures
# ============================================================================

@pytest.fixture
def write_file(tmp_path) -> Callable[[str, str], str]:
    """Write UTF-8 text under tmp_path and return the path."""
    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def trial_files(tmp_path, trial_instances, trial_groups, trial_frequency) -> Dict[str, str]:
    """Instances, group ratings and a log-frequency feature of the trial set on disk."""
    from services.dataset_service import DatasetService
    from datalayer.repository.lexicon_repository import ExternalFeatureRepository

    service = DatasetService()
    paths = {"instances": str(tmp_path / "instances.tsv")}
    service.instance_repo.save(trial_instances, paths["instances"])
    for name, matrix in trial_groups.items():
        paths[name] = str(tmp_path / f"ratings_{name}.tsv")
        service.rating_repo.save(matrix, paths[name])
    paths["tubelex"] = str(tmp_path / "tubelex_logfreq.tsv")
    ExternalFeatureRepository("tubelex").save(
        ExternalFeature(name="tubelex", values=trial_frequency), paths["tubelex"]
    )
    return paths
