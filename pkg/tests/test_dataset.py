"""
Dataset tests for the lexical complexity toolkit.

Tests for loading and saving dataset files, rating aggregation and
dataset composition.
"""

import math

import numpy as np
import pytest

from datalayer.model.dto.dataset_dto import AnnotatorProfile, RatingMatrix
from datalayer.model.lcp_models import Origin, Provenance, Split
from datalayer.repository.instance_repository import InstanceRepository
from datalayer.repository.profile_repository import ProfileRepository
from datalayer.repository.rating_repository import RatingRepository
from services.dataset_service import DatasetService
from utils.exceptions import AnnotatorMismatchError, DatasetFormatError, NotFoundError, ValidationError
from utils.rating_helpers import (
    cwi_label,
    group_majority,
    group_mean,
    individual_labels,
    individual_view,
    mean_threshold_labels,
    select_annotators,
    select_instances,
    union,
)
from tests.conftest import make_instance


INSTANCES_TSV = (
    "id\ttarget\ttokens\tlemmas\torigin\tpos\tsplit\n"
    "w1\t掲載した\t掲載 し た\t掲載 する た\tChinese\tVerb\ttest\n"
    "w2\t恩を売り\t恩 を 売り\t恩 を 売る\tCh.+Ja.\tMWE\ttest\n"
    "w3\tロック\tロック\tロック\tEnglish\tNoun\ttrial\n"
)


def matrix_of(rows, annotators=None, instances=None):
    annotators = annotators or tuple("ABCDEFGH"[: len(rows)])
    instances = instances or tuple(f"i{j + 1}" for j in range(len(rows[0])))
    return RatingMatrix(annotator_ids=tuple(annotators), instance_ids=tuple(instances), values=rows)


@pytest.mark.dataset
class TestInstanceRepository:
    """Test reading and writing the instances file."""

    def test_load_instances(self, write_file):
        """Test tokens split on spaces and published origin labels."""
        instances = InstanceRepository().load(write_file("instances.tsv", INSTANCES_TSV))

        assert [i.id for i in instances] == ["w1", "w2", "w3"]
        assert instances[0].tokens == ("掲載", "し", "た")
        assert instances[0].lemmas == ("掲載", "する", "た")
        assert instances[1].origin == Origin.MIXED
        assert instances[2].origin == Origin.OTHER
        assert instances[2].split == Split.TRIAL

    def test_save_then_load(self, tmp_path, write_file):
        """Test saved instances load back unchanged."""
        repo = InstanceRepository()
        instances = repo.load(write_file("instances.tsv", INSTANCES_TSV))
        path = str(tmp_path / "copy.tsv")

        repo.save(instances, path)

        assert repo.load(path) == instances

    def test_duplicate_id(self, write_file):
        """Test a repeated instance id is reported at its second line."""
        text = INSTANCES_TSV + "w1\t再び\t再び\t再び\tJapanese\tAdverb\ttrial\n"

        with pytest.raises(DatasetFormatError) as exc_info:
            InstanceRepository().load(write_file("instances.tsv", text))

        assert exc_info.value.details["line"] == 5
        assert "duplicate instance id" in exc_info.value.message

    def test_missing_column(self, write_file):
        """Test a header without the split column is rejected."""
        text = "id\ttarget\ttokens\tlemmas\torigin\tpos\nw1\t旧\t旧\t旧\tChinese\tNoun\n"

        with pytest.raises(DatasetFormatError) as exc_info:
            InstanceRepository().load(write_file("instances.tsv", text))

        assert exc_info.value.details["column"] == "split"

    def test_token_lemma_mismatch(self, write_file):
        """Test tokens and lemmas must align one to one."""
        text = INSTANCES_TSV.splitlines()[0] + "\nw1\t掲載した\t掲載 し\t掲載\tChinese\tVerb\ttest\n"

        with pytest.raises(DatasetFormatError) as exc_info:
            InstanceRepository().load(write_file("instances.tsv", text))

        assert exc_info.value.details["line"] == 2

    def test_unknown_origin(self, write_file):
        """Test an origin outside the known categories is rejected."""
        text = INSTANCES_TSV.replace("English", "Korean")

        with pytest.raises(DatasetFormatError) as exc_info:
            InstanceRepository().load(write_file("instances.tsv", text))

        assert exc_info.value.details["line"] == 4
        assert exc_info.value.details["column"] == "origin"


@pytest.mark.dataset
class TestRatingRepository:
    """Test reading and writing ratings files."""

    def test_missing_cells(self, write_file):
        """Test empty cells load as missing ratings."""
        path = write_file("ratings.tsv", "id\tA\tB\ni1\t0.25\t\ni2\t0.5\t1\n")

        matrix = RatingRepository().load(path)

        assert matrix.annotator_ids == ("A", "B")
        assert matrix.instance_ids == ("i1", "i2")
        assert matrix.values[0].tolist() == [0.25, 0.5]
        assert math.isnan(matrix.values[1, 0])
        assert matrix.values[1, 1] == 1.0

    def test_rating_out_of_range(self, write_file):
        """Test ratings above 1 name their line and annotator."""
        path = write_file("ratings.tsv", "id\tA\tB\ni1\t0.25\t0.5\ni2\t1.5\t0\n")

        with pytest.raises(DatasetFormatError) as exc_info:
            RatingRepository().load(path)

        assert exc_info.value.details == {"path": path, "line": 3, "column": "A"}

    def test_strict_grid(self, write_file):
        """Test off-grid ratings load unless the grid is enforced."""
        path = write_file("ratings.tsv", "id\tA\tB\ni1\t0.3\t0.5\n")

        assert RatingRepository().load(path).values[0, 0] == pytest.approx(0.3)
        with pytest.raises(DatasetFormatError):
            RatingRepository(strict_grid=True).load(path)

    def test_instance_without_ratings(self, write_file):
        """Test an all-empty row is rejected."""
        path = write_file("ratings.tsv", "id\tA\tB\ni1\t0.25\t0.5\ni2\t\t\n")

        with pytest.raises(DatasetFormatError) as exc_info:
            RatingRepository().load(path)

        assert exc_info.value.details["line"] == 3

    def test_duplicate_annotator(self, write_file):
        """Test repeated annotator ids in the header."""
        path = write_file("ratings.tsv", "id\tA\tA\ni1\t0.25\t0.5\n")

        with pytest.raises(DatasetFormatError) as exc_info:
            RatingRepository().load(path)

        assert "duplicate annotator id" in exc_info.value.message

    def test_short_row(self, write_file):
        """Test a row with too few fields."""
        path = write_file("ratings.tsv", "id\tA\tB\ni1\t0.25\t0.5\ni2\t0.5\n")

        with pytest.raises(DatasetFormatError) as exc_info:
            RatingRepository().load(path)

        assert "column-count mismatch" in exc_info.value.message

    def test_not_a_number(self, write_file):
        path = write_file("ratings.tsv", "id\tA\ni1\thard\n")

        with pytest.raises(DatasetFormatError):
            RatingRepository().load(path)

    def test_short_row_with_missing_cell(self, write_file):
        """Test a short row is not read as a row with an empty last cell."""
        path = write_file("ratings.tsv", "id\tA\tB\tC\ni1\t0.25\t\t0.5\ni2\t0.5\t\n")

        with pytest.raises(DatasetFormatError) as exc_info:
            RatingRepository().load(path)

        assert exc_info.value.details["line"] == 3

    def test_nan_rating(self, write_file):
        path = write_file("ratings.tsv", "id\tA\tB\ni1\t0.25\tnan\n")

        with pytest.raises(DatasetFormatError) as exc_info:
            RatingRepository().load(path)

        assert exc_info.value.details == {"path": path, "line": 2, "column": "B"}

    def test_save_then_load(self, tmp_path):
        """Test saved matrices keep missing cells and exact values."""
        matrix = matrix_of([[0.1, np.nan, 1 / 3], [0.0, 0.75, 1.0]])
        path = str(tmp_path / "ratings.tsv")
        repo = RatingRepository()

        repo.save(matrix, path)
        loaded = repo.load(path)

        assert loaded.annotator_ids == matrix.annotator_ids
        np.testing.assert_array_equal(loaded.values, matrix.values)


@pytest.mark.dataset
class TestDatasetService:
    """Test dataset loading across files."""

    def test_load_dataset(self, write_file):
        instances_path = write_file("instances.tsv", INSTANCES_TSV)
        ratings_path = write_file("ratings.tsv", "id\tA\tB\nw1\t0.25\t0.5\nw2\t0\t0\nw3\t1\t0.75\n")

        instances, matrix = DatasetService().load_dataset(instances_path, ratings_path)

        assert len(instances) == 3
        assert matrix.instance_ids == tuple(i.id for i in instances)

    def test_load_dataset_order_mismatch(self, write_file):
        """Test instance ids must appear in the same order in both files."""
        instances_path = write_file("instances.tsv", INSTANCES_TSV)
        ratings_path = write_file("ratings.tsv", "id\tA\nw2\t0.25\nw1\t0.5\nw3\t0\n")

        with pytest.raises(DatasetFormatError) as exc_info:
            DatasetService().load_dataset(instances_path, ratings_path)

        assert exc_info.value.details["line"] == 2

    def test_load_group_subset(self, write_file):
        """Test a group rating only some instances."""
        service = DatasetService()
        instances = service.instance_repo.load(write_file("instances.tsv", INSTANCES_TSV))
        ratings_path = write_file("ratings.tsv", "id\tX\nw3\t0.5\nw1\t0.25\n")

        rated, matrix = service.load_group(ratings_path, instances)

        assert [i.id for i in rated] == ["w3", "w1"]
        assert matrix.n_instances == 2

    def test_load_group_unknown_instance(self, write_file):
        service = DatasetService()
        instances = service.instance_repo.load(write_file("instances.tsv", INSTANCES_TSV))

        with pytest.raises(DatasetFormatError):
            service.load_group(write_file("ratings.tsv", "id\tX\nw9\t0.5\n"), instances)

    def test_split_matrix(self, synthetic):
        """Test trial slicing keeps matching columns."""
        instances, matrix, _ = synthetic

        trial, trial_matrix = DatasetService.split_matrix(instances, matrix, Split.TRIAL)

        assert len(trial) == 20
        assert trial_matrix.instance_ids == tuple(i.id for i in trial)
        assert all(i.split == Split.TRIAL for i in trial)

    def test_split_instances(self, synthetic):
        instances, _, _ = synthetic

        test = DatasetService.split_instances(instances, Split.TEST)

        assert [i.id for i in test] == [i.id for i in instances[20:]]
        assert DatasetService.split_instances(instances[:20], "test") == []

    def test_save_then_load_dataset(self, synthetic, tmp_path):
        """Test a saved dataset loads back exactly."""
        instances, matrix, _ = synthetic
        service = DatasetService()
        instances_path = str(tmp_path / "instances.tsv")
        ratings_path = str(tmp_path / "ratings.tsv")

        service.save_dataset(instances, matrix, instances_path, ratings_path)
        loaded_instances, loaded_matrix = service.load_dataset(instances_path, ratings_path)

        assert loaded_instances == instances
        assert loaded_matrix.annotator_ids == matrix.annotator_ids
        np.testing.assert_array_equal(loaded_matrix.values, matrix.values)

    def test_save_dataset_id_mismatch(self, synthetic, tmp_path):
        instances, matrix, _ = synthetic

        with pytest.raises(ValidationError):
            DatasetService().save_dataset(
                instances[::-1], matrix, str(tmp_path / "i.tsv"), str(tmp_path / "r.tsv")
            )

    def test_load_profiles(self, write_file):
        path = write_file(
            "profiles.tsv",
            "annotator_id\tnative_languages\tjlpt_level\tyears_in_japan\n"
            "A01\tChinese;English\tN1\t3.5\n"
            "A02\tVietnamese\t\t\n",
        )

        profiles = ProfileRepository().load(path)

        assert profiles[0].native_languages == ("Chinese", "English")
        assert profiles[0].years_in_japan == 3.5
        assert profiles[1].jlpt_level == ""

    def test_describe_profiles(self):
        """Test languages are counted per annotator and numeric fields summarized."""
        profiles = [
            AnnotatorProfile(annotator_id="A01", native_languages=("Chinese", "English"), jlpt_level="N1",
                             years_in_japan=3.0),
            AnnotatorProfile(annotator_id="A02", native_languages=("Chinese",), years_in_japan=5.0),
        ]

        rows = {(row.category, row.label): row for row in DatasetService.describe_profiles(profiles)}

        assert rows[("Annotators", "total")].n == 2
        assert rows[("Native Language", "Chinese")].n == 2
        assert rows[("Native Language", "English")].n == 1
        assert rows[("JLPT Level", "none")].n == 1
        assert rows[("Background", "years_in_japan")].mean == 4.0
        assert rows[("Background", "years_in_japan")].std == pytest.approx(math.sqrt(2.0))

    def test_describe_no_profiles(self):
        with pytest.raises(ValidationError):
            DatasetService.describe_profiles([])

    def test_duplicate_profile(self, write_file):
        path = write_file("profiles.tsv", "annotator_id\tjlpt_level\nA01\tN1\nA01\tN2\n")

        with pytest.raises(DatasetFormatError):
            ProfileRepository().load(path)


@pytest.mark.dataset
class TestAggregation:
    """Test group and individual targets."""

    def test_group_mean_skips_missing(self):
        view = group_mean(matrix_of([[0.25, np.nan], [0.75, 0.5]]))

        assert view.targets == (0.5, 0.5)
        assert view.provenance == Provenance.GROUP_MEAN

    def test_group_mean_ignores_annotator_order(self):
        rng = np.random.default_rng(8)
        values = rng.choice([0.0, 0.25, 0.5, 0.75, 1.0], size=(5, 12))
        ids = ("A", "B", "C", "D", "E")
        order = [3, 0, 4, 1, 2]

        shuffled = matrix_of(values[order], annotators=[ids[k] for k in order])

        assert group_mean(shuffled).targets == group_mean(matrix_of(values, annotators=ids)).targets
        assert group_majority(shuffled).targets == group_majority(matrix_of(values, annotators=ids)).targets

    def test_labels_monotone(self):
        """Test a higher threshold never adds complex labels and a higher rating never removes one."""
        rng = np.random.default_rng(9)
        values = rng.choice([0.0, 0.25, 0.5, 0.75, 1.0], size=(4, 20))
        raised = np.minimum(values + 0.25, 1.0)

        for low, high in [(0.25, 0.375), (0.375, 0.5), (0.5, 0.75)]:
            for labels in (group_majority, mean_threshold_labels):
                loose = labels(matrix_of(values), threshold=low).targets
                strict = labels(matrix_of(values), threshold=high).targets
                assert all(s <= l for s, l in zip(strict, loose))
        before = group_majority(matrix_of(values)).targets
        after = group_majority(matrix_of(raised)).targets
        assert all(b <= a for b, a in zip(before, after))

    def test_cwi_label_threshold_inclusive(self):
        assert cwi_label(0.375) is True
        assert cwi_label(0.25) is False
        with pytest.raises(ValidationError):
            cwi_label(0.5, threshold=1.5)

    def test_majority_tie_is_complex(self):
        """Test an even split of votes resolves to complex."""
        view = group_majority(matrix_of([[0.5, 0.0], [0.0, 0.0]]))

        assert view.targets == (True, False)

    def test_mean_threshold_labels(self):
        """Test thresholding the mean can disagree with the vote."""
        matrix = matrix_of([[1.0], [0.25], [0.0]], annotators=("A", "B", "C"))

        assert group_majority(matrix).targets == (False,)
        assert mean_threshold_labels(matrix).targets == (True,)
        assert mean_threshold_labels(matrix, threshold=0.5).targets == (False,)

    def test_individual_view(self):
        """Test an annotator's view covers only the instances they rated."""
        matrix = matrix_of([[0.25, np.nan, 1.0], [0.5, 0.5, 0.5]])

        view = individual_view(matrix, "A")
        labels = individual_labels(matrix, "A")

        assert view.instance_ids == ("i1", "i3")
        assert view.targets == (0.25, 1.0)
        assert view.label == "individual(A)"
        assert labels.targets == (False, True)

    def test_individual_view_unknown(self):
        with pytest.raises(NotFoundError):
            individual_view(matrix_of([[0.5]]), "Z")

    def test_union_prefixes_colliding_ids(self):
        """Test colliding annotator ids are prefixed with the group name."""
        first = matrix_of([[0.0, 1.0], [0.25, 0.75]])
        second = matrix_of([[1.0, 0.0], [0.5, 0.5]])

        merged = union([first, second], names=["g1", "g2"])

        assert merged.annotator_ids == ("g1:A", "g1:B", "g2:A", "g2:B")
        assert merged.values.shape == (4, 2)

    def test_union_keeps_distinct_ids(self):
        merged = union([matrix_of([[0.0]], annotators=("A",)), matrix_of([[1.0]], annotators=("B",))])

        assert merged.annotator_ids == ("A", "B")

    def test_union_requires_same_instances(self):
        with pytest.raises(AnnotatorMismatchError):
            union([matrix_of([[0.0, 1.0]]), matrix_of([[0.5]], instances=("i9",))])

    def test_union_then_select(self):
        """Test selecting a group's annotators back out of a union."""
        first = matrix_of([[0.0, 1.0]], annotators=("A",))
        second = matrix_of([[0.5, 0.25]], annotators=("B",))

        restored = select_annotators(union([first, second]), ["B"])

        np.testing.assert_array_equal(restored.values, second.values)

    def test_select_instances_drops_empty_annotators(self):
        matrix = matrix_of([[0.5, np.nan], [0.25, 0.75]])

        selected = select_instances(matrix, ["i2"])

        assert selected.annotator_ids == ("B",)
        assert selected.values.tolist() == [[0.75]]


@pytest.mark.dataset
class TestDescribe:
    """Test dataset composition tables."""

    def test_trial_origins(self, trial_instances):
        """Test the trial set shares of Chinese-origin words and loanwords."""
        table = DatasetService.describe(trial_instances)
        rows = {(row.category, row.label): row.percentages for row in table.rows}

        assert table.splits == ["trial"]
        assert rows[("Word Origin", "Chinese")]["trial"] == pytest.approx(50.0)
        assert rows[("Word Origin", "Other")]["trial"] == pytest.approx(10.0)
        assert rows[("Part of Speech", "Noun")]["trial"] == pytest.approx(100.0)

    def test_absent_part_of_speech(self):
        """Test categories missing from a split have no percentage."""
        instances = [
            make_instance("t1", "旧", pos="Noun", split="test"),
            make_instance("t2", "再び", pos="Adverb", split="test"),
            make_instance("t3", "小物", pos="Noun", split="test"),
            make_instance("r1", "市電", pos="Noun", split="trial"),
        ]

        table = DatasetService.describe(instances)
        labels = [row.label for row in table.rows if row.category == "Part of Speech"]
        adverb = next(row for row in table.rows if row.label == "Adverb")

        assert table.splits == ["test", "trial"]
        assert labels == ["Noun", "Adverb"]
        assert adverb.percentages == {"test": pytest.approx(100 / 3), "trial": None}

    def test_empty(self):
        with pytest.raises(ValidationError):
            DatasetService.describe([])
