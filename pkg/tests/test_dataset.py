import io

import pytest
from hypothesis import given, settings, strategies as st

from gainbudget import (
    ColumnSchema,
    DatasetError,
    LabeledDataset,
    LabeledInstance,
    parse_dataset,
    read_dataset_file,
    render_dataset,
    validate_dataset,
)

from conftest import worked_path


def parse_text(text: str, schema: ColumnSchema = ColumnSchema(), name: str = "t"):
    return parse_dataset(io.StringIO(text), schema, name=name)


class TestParse:
    def test_worked_fixture(self):
        dataset, digest = read_dataset_file(worked_path("s1m1"))
        assert dataset.size == 6
        assert dataset.positive_total == 3
        assert len(digest) == 64

    def test_row_order_preserved(self):
        d = parse_text("id,score,label\nb,1,0\na,2,1\n")
        assert [inst.id for inst in d.instances] == ["b", "a"]

    def test_header_only_is_empty_dataset(self):
        with pytest.raises(DatasetError, match="zero instances"):
            parse_text("id,score,label\n")

    def test_empty_stream(self):
        with pytest.raises(DatasetError, match="header"):
            parse_text("")

    def test_non_numeric_score_reports_line(self):
        text = "id,score,label\na,1,1\nb,2,0\nc,abc,1\n"
        with pytest.raises(DatasetError) as exc:
            parse_text(text)
        assert exc.value.issues == ((4, "non-numeric score 'abc'"),)

    @pytest.mark.parametrize("bad", ["nan", "inf", "-inf"])
    def test_non_finite_score_rejected(self, bad):
        with pytest.raises(DatasetError, match="non-finite"):
            parse_text(f"id,score,label\na,{bad},1\n")

    def test_unrecognized_label_token(self):
        with pytest.raises(DatasetError, match="unrecognized label token 'maybe'"):
            parse_text("id,score,label\na,1,maybe\n")

    def test_default_tokens_accept_true_false(self):
        d = parse_text("id,score,label\na,1,True\nb,2,FALSE\n")
        assert [inst.positive for inst in d.instances] == [True, False]

    def test_custom_tokens_replace_defaults(self):
        schema = ColumnSchema(
            positive_tokens=frozenset({"yes"}), negative_tokens=frozenset({"no"})
        )
        d = parse_text("id,score,label\na,1,yes\nb,2,no\n", schema)
        assert d.positive_total == 1
        with pytest.raises(DatasetError, match="unrecognized label"):
            parse_text("id,score,label\na,1,1\n", schema)

    def test_duplicate_id_reports_line(self):
        text = "id,score,label\nx,1,1\nx,2,0\n"
        with pytest.raises(DatasetError) as exc:
            parse_text(text)
        assert exc.value.issues[0][0] == 3
        assert "duplicate id 'x'" in exc.value.issues[0][1]

    def test_missing_column(self):
        with pytest.raises(DatasetError, match="missing configured column"):
            parse_text("id,confidence,label\na,1,1\n")

    def test_column_remapping(self):
        schema = ColumnSchema(id_col="phrase", score_col="fixedness", label_col="idiom")
        d = parse_text("phrase,fixedness,idiom\nkick the bucket,0.9,1\n", schema)
        assert d.instances[0].id == "kick the bucket"

    def test_tab_delimiter(self):
        schema = ColumnSchema(delimiter="\t")
        d = parse_text("id\tscore\tlabel\na\t1\t1\n", schema)
        assert d.size == 1

    def test_blank_lines_skipped(self):
        d = parse_text("id,score,label\na,1,1\n\nb,2,0\n")
        assert d.size == 2

    def test_short_row(self):
        with pytest.raises(DatasetError, match="expected at least"):
            parse_text("id,score,label\na,1\n")

    def test_all_errors_collected(self):
        text = "id,score,label\na,x,1\nb,1,huh\n"
        with pytest.raises(DatasetError) as exc:
            parse_text(text)
        assert [line for line, _ in exc.value.issues] == [2, 3]

    def test_missing_file(self, tmp_path):
        with pytest.raises(DatasetError, match="cannot read"):
            read_dataset_file(tmp_path / "nope.csv")


class TestValidate:
    def test_worked_example_counts(self, worked_datasets):
        report = validate_dataset(worked_datasets["s1m1"])
        assert report.instance_count == 6
        assert report.positive_count == 3
        assert report.duplicate_ids == ()
        assert report.bad_rows == ()

    def test_case_study_counts(self, case_study_profiles, case_study_dir):
        dataset, _ = read_dataset_file(case_study_dir / "m1.csv")
        report = validate_dataset(dataset)
        assert report.instance_count == 2091
        assert report.positive_count == 414

    def test_constructed_duplicate(self):
        d = LabeledDataset(
            name="dup",
            instances=(
                LabeledInstance("x", 1.0, True),
                LabeledInstance("x", 2.0, False),
            ),
        )
        assert validate_dataset(d).duplicate_ids == ("x",)

    def test_never_throws_on_degenerate_data(self):
        report = validate_dataset(LabeledDataset(name="empty", instances=()))
        assert report.instance_count == 0
        assert report.positive_count == 0


ids = st.lists(
    st.text(
        alphabet=st.characters(min_codepoint=33, max_codepoint=126, exclude_characters=",\"'"),
        min_size=1,
        max_size=8,
    ),
    min_size=1,
    max_size=30,
    unique=True,
)
scores = st.floats(min_value=-1e9, max_value=1e9, allow_nan=False, allow_infinity=False)


@st.composite
def datasets(draw):
    uids = draw(ids)
    instances = tuple(
        LabeledInstance(uid, draw(scores), draw(st.booleans())) for uid in uids
    )
    return LabeledDataset(name="prop", instances=instances)


@given(datasets())
@settings(max_examples=100)
def test_render_parse_round_trip(d):
    parsed = parse_dataset(io.StringIO(render_dataset(d)), name="prop")
    assert parsed == d


@given(datasets())
@settings(max_examples=100)
def test_parsed_count_matches_data_rows(d):
    text = render_dataset(d)
    rows = text.count("\n") - 1
    report = validate_dataset(parse_dataset(io.StringIO(text), name="prop"))
    assert report.instance_count == rows
