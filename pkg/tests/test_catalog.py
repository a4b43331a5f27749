"""Catalog ingestion: classification, parsing, matching, grouping."""

import pytest
from hypothesis import given, strategies as st

from museumgen.catalog import (
    ArtifactKind,
    ArtifactRecord,
    ArtifactSize,
    GroupKey,
    MetadataFormat,
    UNSPECIFIED,
    build_catalog,
    build_index,
    classify_asset,
    display_order,
    group_by,
    parse_metadata,
    parse_size,
)
from museumgen.errors import (
    BadSizeSyntax,
    DuplicateName,
    EmptyCatalog,
    MalformedDocument,
    UnknownColumn,
    UnsupportedFormat,
)

CSV_HEADER = "name,artist,style,location,time,size,description\n"


def make_catalog(rows, refs):
    doc = CSV_HEADER + "\n".join(rows)
    fragments = parse_metadata(doc, MetadataFormat.CSV) if rows else []
    return build_catalog(fragments, refs)


class TestClassifyAsset:
    def test_sculpture_obj(self):
        assert classify_asset("venus.obj") is ArtifactKind.SCULPTURE

    def test_case_insensitive(self):
        assert classify_asset("NOTES.TXT") is ArtifactKind.TEXT

    def test_unsupported(self):
        with pytest.raises(UnsupportedFormat) as err:
            classify_asset("clip.avi")
        assert err.value.extension == ".avi"
        assert ".mp4" in err.value.supported

    def test_all_known_extensions(self):
        expected = {
            "a.txt": ArtifactKind.TEXT,
            "a.jpeg": ArtifactKind.PAINTING,
            "a.jpg": ArtifactKind.PAINTING,
            "a.png": ArtifactKind.PAINTING,
            "a.obj": ArtifactKind.SCULPTURE,
            "a.fbx": ArtifactKind.SCULPTURE,
            "a.mp3": ArtifactKind.SOUND,
            "a.mp4": ArtifactKind.VIDEO,
        }
        for ref, kind in expected.items():
            assert classify_asset(ref) is kind

    def test_uri_and_nested_path(self):
        assert classify_asset("https://host/archive/venus.OBJ?dl=1") is ArtifactKind.SCULPTURE
        assert classify_asset("/data/deep/dir/song.mp3") is ArtifactKind.SOUND

    def test_no_extension(self):
        with pytest.raises(UnsupportedFormat):
            classify_asset("README")

    @given(st.sampled_from(sorted(["a.txt", "b.jpg", "c.png", "d.obj", "e.fbx", "f.mp3", "g.mp4"])))
    def test_uppercase_rename_invariant(self, ref):
        stem, ext = ref.rsplit(".", 1)
        assert classify_asset(ref) is classify_asset(f"{stem}.{ext.upper()}")


class TestParseMetadata:
    def test_csv_row(self):
        doc = CSV_HEADER + "Starry Night,van Gogh,Post-Impressionism,MoMA,1889,0.74x0.92,Oil on canvas\n"
        frags = parse_metadata(doc, MetadataFormat.CSV)
        assert len(frags) == 1
        f = frags[0]
        assert f.name == "Starry Night"
        assert f.time == 1889
        assert f.size == ArtifactSize(0.74, 0.92)
        assert f.artist == "van Gogh"

    def test_json_missing_optionals(self):
        doc = '[{"name": "Untitled", "artist": "X", "style": "", "location": null, "description": "d"}]'
        frags = parse_metadata(doc, MetadataFormat.JSON)
        f = frags[0]
        assert f.time is None
        assert f.size is None
        assert f.style is None  # empty string marks the field absent

    def test_bad_size_unicode_times(self):
        doc = CSV_HEADER + "A,,,,,0.74×0.92m,\n"
        with pytest.raises(BadSizeSyntax):
            parse_metadata(doc, MetadataFormat.CSV)

    def test_size_three_components(self):
        assert parse_size("1.5x2x0.5") == ArtifactSize(1.5, 2.0, 0.5)

    @pytest.mark.parametrize("bad", ["1,5x2", "2x", "x2", "-1x2", "0x2", "1x2x3x4", "1 x 2"])
    def test_size_grammar_rejections(self, bad):
        with pytest.raises(BadSizeSyntax):
            parse_size(bad)

    def test_unknown_column_csv(self):
        doc = "name,artist,style,location,time,size,description,price\nA,,,,,,,9\n"
        with pytest.raises(UnknownColumn) as err:
            parse_metadata(doc, MetadataFormat.CSV)
        assert err.value.name == "price"

    def test_missing_column_csv(self):
        doc = "name,artist\nA,B\n"
        with pytest.raises(MalformedDocument):
            parse_metadata(doc, MetadataFormat.CSV)

    def test_ragged_row(self):
        doc = CSV_HEADER + "A,b\n"
        with pytest.raises(MalformedDocument) as err:
            parse_metadata(doc, MetadataFormat.CSV)
        assert "line 2" in str(err.value)

    def test_bad_time(self):
        doc = CSV_HEADER + "A,,,,a while ago,,\n"
        with pytest.raises(MalformedDocument):
            parse_metadata(doc, MetadataFormat.CSV)

    def test_negative_year_ok(self):
        doc = CSV_HEADER + "Venus de Milo,,,,-130,,\n"
        assert parse_metadata(doc, MetadataFormat.CSV)[0].time == -130

    def test_quoted_commas(self):
        doc = CSV_HEADER + '"Nocturne, Blue","Whistler, J.",,,,,\n'
        f = parse_metadata(doc, MetadataFormat.CSV)[0]
        assert f.name == "Nocturne, Blue"
        assert f.artist == "Whistler, J."

    def test_json_not_array(self):
        with pytest.raises(MalformedDocument):
            parse_metadata('{"name": "A"}', MetadataFormat.JSON)

    def test_json_bad_time_type(self):
        with pytest.raises(MalformedDocument):
            parse_metadata('[{"name": "A", "time": "1889"}]', MetadataFormat.JSON)

    def test_json_unknown_key(self):
        with pytest.raises(UnknownColumn):
            parse_metadata('[{"name": "A", "year": 1900}]', MetadataFormat.JSON)

    def test_json_syntax_error_position(self):
        with pytest.raises(MalformedDocument) as err:
            parse_metadata('[{"name": }]', MetadataFormat.JSON)
        assert "line 1" in err.value.position


class TestBuildCatalog:
    def test_total_match(self):
        rows = ["A,a1,s1,l1,1900,1x1,", "B,a2,s2,l2,1910,2x1,", "C,a3,s3,l3,1920,,"]
        cat = make_catalog(rows, ["A.png", "B.jpg", "C.obj"])
        assert len(cat) == 3
        assert cat.records[0].artist == "a1"
        assert cat.records[2].kind is ArtifactKind.SCULPTURE
        assert cat.unmatched_fragments == ()

    def test_assets_without_metadata(self):
        cat = make_catalog([], ["venus.obj", "notes.txt"])
        assert [r.name for r in cat.records] == ["venus", "notes"]
        assert all(r.time is None and r.size is None and r.artist == "" for r in cat.records)

    def test_stem_collision(self):
        with pytest.raises(DuplicateName) as err:
            make_catalog([], ["a.png", "a.txt"])
        assert err.value.name == "a"

    def test_unmatched_fragment_reported(self):
        cat = make_catalog(["A,,,,,,", "Ghost,,,,,,"], ["A.png"])
        assert cat.unmatched_fragments == ("Ghost",)
        assert [r.name for r in cat.records] == ["A"]

    def test_match_is_case_sensitive(self):
        cat = make_catalog(["a,,,,,,"], ["A.png"])
        assert cat.unmatched_fragments == ("a",)

    def test_duplicate_fragment_names(self):
        with pytest.raises(DuplicateName):
            make_catalog(["A,,,,,,", "A,x,,,,,"], ["A.png"])

    def test_indexes_rebuild_identically(self):
        rows = ["A,artist1,s1,,1900,,", "B,,s1,loc,1890,,", "C,artist1,,,,,"]
        cat = make_catalog(rows, ["A.png", "B.jpg", "C.mp3"])
        assert build_index(cat.records, GroupKey.ARTIST) == cat.index_artist
        assert build_index(cat.records, GroupKey.STYLE) == cat.index_style
        assert build_index(cat.records, GroupKey.LOCATION) == cat.index_location
        assert build_index(cat.records, GroupKey.TIME) == cat.index_time

    def test_every_record_in_each_index_once(self):
        rows = ["A,x,,,1900,,", "B,,,,,,"]
        cat = make_catalog(rows, ["A.png", "B.jpg"])
        for index in (cat.index_artist, cat.index_style, cat.index_location, cat.index_time):
            ids = [i for ids in index.values() for i in ids]
            assert sorted(ids) == list(range(len(cat.records)))


class TestGroupBy:
    def test_distinct_value_count(self):
        cat = make_catalog(
            ["A,,StyleA,,,,", "B,,StyleA,,,,", "C,,StyleB,,,,"],
            ["A.png", "B.png", "C.png"],
        )
        groups = group_by(cat, GroupKey.STYLE)
        assert [(g.key_value, len(g.ordered_records)) for g in groups] == [
            ("StyleA", 2), ("StyleB", 1),
        ]

    def test_date_then_alphabetical(self):
        rows = ["Delta,,S,,1890,,", "Gamma,,S,,1850,,", "Alpha,,S,,,,", "Beta,,S,,,,"]
        cat = make_catalog(rows, ["Delta.png", "Gamma.png", "Alpha.png", "Beta.png"])
        (group,) = group_by(cat, GroupKey.STYLE)
        assert [r.name for r in group.ordered_records] == ["Gamma", "Delta", "Alpha", "Beta"]

    def test_all_unspecified_location(self):
        # oracle by hand: 4 records, no locations -> a single unspecified group
        cat = make_catalog(
            ["A,x,,,1900,,", "B,y,,,1910,,", "C,z,,,,,", "D,w,,,,,"],
            ["A.png", "B.png", "C.png", "D.png"],
        )
        groups = group_by(cat, GroupKey.LOCATION)
        assert len(groups) == 1
        assert groups[0].key_value == UNSPECIFIED
        assert len(groups[0].ordered_records) == 4

    def test_empty_catalog(self):
        with pytest.raises(EmptyCatalog):
            group_by(build_catalog([], []), GroupKey.STYLE)

    def test_partition_property(self):
        rows = ["A,x,s1,,1900,,", "B,,s2,,1910,,", "C,x,,,1920,,", "D,,s1,,,,"]
        cat = make_catalog(rows, ["A.png", "B.png", "C.png", "D.png"])
        for key in GroupKey:
            groups = group_by(cat, key)
            names = sorted(r.name for g in groups for r in g.ordered_records)
            assert names == sorted(r.name for r in cat.records)

    def test_time_groups_sorted_with_unspecified_last(self):
        rows = ["A,,,,1920,,", "B,,,,1850,,", "C,,,,,,"]
        cat = make_catalog(rows, ["A.png", "B.png", "C.png"])
        groups = group_by(cat, GroupKey.TIME)
        assert [g.key_value for g in groups] == [1850, 1920, UNSPECIFIED]


record_strategy = st.builds(
    ArtifactRecord,
    name=st.text(st.characters(min_codepoint=65, max_codepoint=122), min_size=1, max_size=8),
    kind=st.sampled_from(ArtifactKind),
    asset_ref=st.just("x.png"),
    time=st.one_of(st.none(), st.integers(min_value=-3000, max_value=2100)),
)


@given(st.lists(record_strategy, min_size=1, max_size=20))
def test_display_order_is_total_and_idempotent(records):
    once = sorted(records, key=display_order)
    assert sorted(once, key=display_order) == once
    dated = [r for r in once if r.time is not None]
    undated = [r for r in once if r.time is None]
    assert once == dated + undated
    assert [r.time for r in dated] == sorted(r.time for r in dated)
    assert [r.name for r in undated] == sorted(r.name for r in undated)
