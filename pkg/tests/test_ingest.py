"""Delimited-file ingestion into canonical state graphs."""

import pytest

from ccmselect import (
    EmptyNetworkError,
    IngestConfig,
    NodeType,
    ParseError,
    SchemaError,
    SharedPatientRecord,
    ProviderRecord,
    build_state_graph,
    load_ingest_config,
    parse_provider_file,
    parse_shared_patient_file,
)


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


SHARED_HEADER = "npi_a,npi_b,shared_count\n"
PROVIDER_HEADER = "npi,state,specialty\n"


class TestSharedPatientParsing:
    def test_unordered_pairs_collapse(self, tmp_path):
        p = write(tmp_path, "s.csv", SHARED_HEADER + "A,B,3\nB,A,3\n")
        recs = parse_shared_patient_file(p)
        assert recs == [SharedPatientRecord("A", "B", 3)]

    def test_duplicates_keep_the_largest_count(self, tmp_path):
        p = write(tmp_path, "s.csv", SHARED_HEADER + "A,B,3\nB,A,7\nA,B,5\n")
        recs = parse_shared_patient_file(p)
        assert recs == [SharedPatientRecord("A", "B", 7)]

    def test_threshold_drops_low_counts(self, tmp_path):
        p = write(tmp_path, "s.csv", SHARED_HEADER + "A,B,1\nA,C,2\n")
        recs = parse_shared_patient_file(p, IngestConfig(threshold=2))
        assert recs == [SharedPatientRecord("A", "C", 2)]

    def test_threshold_is_monotone(self, tmp_path):
        rows = "".join(f"A,B{i},{i}\n" for i in range(1, 9))
        p = write(tmp_path, "s.csv", SHARED_HEADER + rows)
        kept = [
            set(parse_shared_patient_file(p, IngestConfig(threshold=t)))
            for t in (1, 3, 6)
        ]
        assert kept[2] <= kept[1] <= kept[0]
        assert len(kept[0]) == 8 and len(kept[1]) == 6 and len(kept[2]) == 3

    def test_row_order_does_not_matter(self, tmp_path):
        rows = ["A,B,3", "C,D,1", "B,C,9"]
        p1 = write(tmp_path, "s1.csv", SHARED_HEADER + "\n".join(rows) + "\n")
        p2 = write(tmp_path, "s2.csv", SHARED_HEADER + "\n".join(reversed(rows)) + "\n")
        assert parse_shared_patient_file(p1) == parse_shared_patient_file(p2)

    def test_blank_rows_are_skipped(self, tmp_path):
        p = write(tmp_path, "s.csv", SHARED_HEADER + "A,B,3\n\n , ,\nC,D,1\n")
        assert len(parse_shared_patient_file(p)) == 2

    def test_bad_count_reports_file_line(self, tmp_path):
        p = write(tmp_path, "s.csv", SHARED_HEADER + "A,B,3\nC,D,many\n")
        with pytest.raises(ParseError) as exc:
            parse_shared_patient_file(p)
        assert exc.value.line == 3

    def test_self_pair_rejected(self, tmp_path):
        p = write(tmp_path, "s.csv", SHARED_HEADER + "A,A,3\n")
        with pytest.raises(ParseError):
            parse_shared_patient_file(p)

    def test_nonpositive_count_rejected(self, tmp_path):
        p = write(tmp_path, "s.csv", SHARED_HEADER + "A,B,0\n")
        with pytest.raises(ParseError):
            parse_shared_patient_file(p)

    def test_short_row_rejected(self, tmp_path):
        p = write(tmp_path, "s.csv", SHARED_HEADER + "A,B\n")
        with pytest.raises(ParseError):
            parse_shared_patient_file(p)

    def test_missing_column_is_a_schema_error(self, tmp_path):
        p = write(tmp_path, "s.csv", "npi_a,npi_b\nA,B\n")
        with pytest.raises(SchemaError):
            parse_shared_patient_file(p)

    def test_empty_file_is_a_schema_error(self, tmp_path):
        p = write(tmp_path, "s.csv", "")
        with pytest.raises(SchemaError):
            parse_shared_patient_file(p)

    def test_custom_delimiter_and_columns(self, tmp_path):
        cfg = IngestConfig(delimiter="|", npi_a_column="left", npi_b_column="right", count_column="n")
        p = write(tmp_path, "s.psv", "left|right|n\nA|B|4\n")
        assert parse_shared_patient_file(p, cfg) == [SharedPatientRecord("A", "B", 4)]


class TestProviderParsing:
    def test_primary_mapping_is_case_insensitive(self, tmp_path):
        p = write(
            tmp_path,
            "r.csv",
            PROVIDER_HEADER + "1,wy,family practice\n2,WY,INTERNAL MEDICINE\n3,WY,Podiatry\n",
        )
        res = parse_provider_file(p)
        assert [r.derived_type for r in res] == [
            NodeType.PRIMARY,
            NodeType.PRIMARY,
            NodeType.SPECIALTY,
        ]
        assert res.unmapped_counts == {"Podiatry": 1}
        assert res[0].state == "WY"

    def test_unmapped_tally_counts_repeats(self, tmp_path):
        p = write(
            tmp_path,
            "r.csv",
            PROVIDER_HEADER + "1,WY,Podiatry\n2,WY,Podiatry\n3,WY,Chiropractic\n",
        )
        res = parse_provider_file(p)
        assert res.unmapped_counts == {"Podiatry": 2, "Chiropractic": 1}

    def test_missing_identity_names_the_line(self, tmp_path):
        p = write(tmp_path, "r.csv", PROVIDER_HEADER + "1,WY,Podiatry\n,WY,Podiatry\n")
        with pytest.raises(SchemaError, match="line 3"):
            parse_provider_file(p)

    def test_sequence_protocol(self, tmp_path):
        p = write(tmp_path, "r.csv", PROVIDER_HEADER + "1,WY,Podiatry\n2,CO,Podiatry\n")
        res = parse_provider_file(p)
        assert len(res) == 2
        assert res[1].npi == "2"
        assert [r.npi for r in res] == ["1", "2"]

    def test_custom_primary_list(self, tmp_path):
        cfg = IngestConfig(primary_specialties=("Podiatry",))
        p = write(tmp_path, "r.csv", PROVIDER_HEADER + "1,WY,Podiatry\n")
        res = parse_provider_file(p, cfg)
        assert res[0].derived_type is NodeType.PRIMARY
        assert res.unmapped_counts == {}


def provider(npi, state, specialty="Podiatry", derived=NodeType.SPECIALTY):
    return ProviderRecord(npi, state, specialty, derived)


class TestStateGraph:
    def test_keeps_only_in_state_edges(self):
        shared = [
            SharedPatientRecord("1", "2", 5),
            SharedPatientRecord("2", "9", 5),
        ]
        roster = [provider("1", "WY"), provider("2", "WY"), provider("9", "CO")]
        g = build_state_graph(shared, roster, "WY")
        assert g.n == 2
        assert g.edge_count == 1
        assert g.node_ids == ("1", "2")

    def test_state_match_ignores_case_and_whitespace(self):
        shared = [SharedPatientRecord("1", "2", 5)]
        roster = [provider("1", "WY"), provider("2", "WY")]
        g = build_state_graph(shared, roster, " wy ")
        assert g.edge_count == 1

    def test_types_come_from_the_roster(self):
        shared = [SharedPatientRecord("1", "2", 5)]
        roster = [
            provider("1", "WY", "Family Practice", NodeType.PRIMARY),
            provider("2", "WY"),
        ]
        g = build_state_graph(shared, roster, "WY")
        assert g.node_type == (NodeType.PRIMARY, NodeType.SPECIALTY)

    def test_no_qualifying_providers(self):
        with pytest.raises(EmptyNetworkError):
            build_state_graph([], [provider("1", "CO")], "WY")

    def test_isolates_appear_only_on_request(self):
        shared = [SharedPatientRecord("1", "2", 5)]
        roster = [provider("1", "WY"), provider("2", "WY"), provider("3", "WY")]
        assert build_state_graph(shared, roster, "WY").n == 2
        g = build_state_graph(shared, roster, "WY", include_isolates=True)
        assert g.n == 3
        assert g.degrees() == (1, 1, 0)

    def test_conflicting_roster_rows_rejected(self):
        roster = [
            provider("1", "WY", "Podiatry"),
            provider("1", "WY", "Family Practice", NodeType.PRIMARY),
            provider("2", "WY"),
        ]
        with pytest.raises(SchemaError):
            build_state_graph([SharedPatientRecord("1", "2", 5)], roster, "WY")

    def test_identical_duplicate_rows_are_fine(self):
        roster = [provider("1", "WY"), provider("1", "WY"), provider("2", "WY")]
        g = build_state_graph([SharedPatientRecord("1", "2", 5)], roster, "WY")
        assert g.n == 2


class TestConfigLoading:
    def test_round_trip(self, tmp_path):
        p = write(
            tmp_path,
            "cfg.toml",
            'delimiter = "|"\nthreshold = 3\nprimary_specialties = ["Podiatry"]\n',
        )
        cfg = load_ingest_config(p)
        assert cfg.delimiter == "|"
        assert cfg.threshold == 3
        assert cfg.primary_specialties == ("Podiatry",)
        assert cfg.npi_column == "npi"

    def test_unknown_key_rejected(self, tmp_path):
        p = write(tmp_path, "cfg.toml", "treshold = 3\n")
        with pytest.raises(SchemaError, match="treshold"):
            load_ingest_config(p)

    def test_bad_threshold_rejected(self, tmp_path):
        p = write(tmp_path, "cfg.toml", "threshold = 0\n")
        with pytest.raises(SchemaError):
            load_ingest_config(p)

    def test_multichar_delimiter_rejected(self, tmp_path):
        p = write(tmp_path, "cfg.toml", 'delimiter = "::"\n')
        with pytest.raises(SchemaError):
            load_ingest_config(p)
