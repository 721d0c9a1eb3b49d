import pytest
from hypothesis import given, strategies as st

from hydrofold.seq import (
    KYTE_DOOLITTLE,
    REJECT,
    STANDARD_RESIDUES,
    BinaryProfile,
    HydropathyScale,
    ScaleError,
    Sequence,
    SequenceError,
    builtin_kd,
    encode_binary,
    hydrophobic_members,
    load_scale,
    parse_scale_text,
    parse_sequence,
    profile_for_set,
)

FIXTURE_TEXT = """XGDVAKGKKTFVQKCAQCHTVENGGKHKVG
PNLWGLFGRKTGQAEGYSYTDANKSKGIVWN
NDTLMEYLENPKKYIPGTKMIFAGIKKKGERQ
DLVAYLKSATS"""

residue_text = st.text(alphabet="ACDEFGHIKLMNPQRSTVWYX", min_size=1, max_size=60)


def test_fixture_length(fixture_seq):
    assert len(fixture_seq) == 104
    assert str(fixture_seq) == "".join(FIXTURE_TEXT.split())


def test_raw_literal_length():
    assert len(parse_sequence(FIXTURE_TEXT)) == 104


def test_fasta_concatenates_lines():
    s = parse_sequence(">t\nVG\nD", "fasta")
    assert s == Sequence("t", ("V", "G", "D"))


def test_raw_uppercases():
    s = parse_sequence("vgd")
    assert s.residues == ("V", "G", "D")
    assert s.id == "seq"


@pytest.mark.parametrize(
    "text, fmt",
    [
        ("", "raw"),
        ("  \n ", "raw"),
        ("VG1D", "raw"),
        ("VG-D", "raw"),
        ("VGD", "fasta"),
        (">a\nVG\n>b\nDD", "fasta"),
        (">a\n", "fasta"),
    ],
)
def test_parse_errors(text, fmt):
    with pytest.raises(SequenceError):
        parse_sequence(text, fmt)


def test_builtin_kd_values():
    kd = load_scale("builtin-kd")
    assert kd.values["V"] == 4.2
    assert kd.values["D"] == -3.5
    assert kd.values["A"] == 1.8 and kd.values["A"] > kd.threshold
    assert kd.threshold == 0.0


def test_builtin_matches_bundled_table():
    from importlib import resources

    text = resources.files("hydrofold").joinpath("data/kyte_doolittle.tsv").read_text()
    assert dict(parse_scale_text(text).values) == dict(KYTE_DOOLITTLE)


def test_kd_positive_set():
    assert {c for c, v in KYTE_DOOLITTLE.items() if v > 0} == set("ACFILMV")
    assert hydrophobic_members("kd_positive") == frozenset("ACFILMV")
    assert hydrophobic_members("kd_including_G") == frozenset("ACFILMVG")
    assert len(hydrophobic_members("nonpolar_eleven")) == 11


def _scale_rows(codes):
    return "\n".join(f"{c}\t{KYTE_DOOLITTLE[c]}" for c in codes)


def test_scale_file_round_trip(tmp_path):
    path = tmp_path / "kd.tsv"
    path.write_text("# comment\n" + _scale_rows(sorted(STANDARD_RESIDUES)) + "\nX\t0.0\n")
    scale = load_scale(path, threshold=1.0)
    assert scale.name == "kd"
    assert scale.threshold == 1.0
    assert scale.values["X"] == 0.0


def test_scale_missing_residue():
    codes = sorted(STANDARD_RESIDUES)[:-1]
    with pytest.raises(ScaleError, match="missing residue"):
        parse_scale_text(_scale_rows(codes))


def test_scale_duplicate_and_unparsable():
    rows = _scale_rows(sorted(STANDARD_RESIDUES))
    with pytest.raises(ScaleError, match="duplicate"):
        parse_scale_text(rows + "\nA\t1.0")
    with pytest.raises(ScaleError, match="unparsable"):
        parse_scale_text(rows.replace("1.8", "one"))


def test_encode_vgd():
    profile = encode_binary(parse_sequence("VGD"), builtin_kd())
    assert profile.bits == (1, 0, 0)
    assert profile.hydrophobic_count == 1


def test_encode_all_lysine():
    assert encode_binary(parse_sequence("K" * 12), builtin_kd()).hydrophobic_count == 0


def test_unknown_policy():
    s = parse_sequence("XV")
    assert encode_binary(s, builtin_kd()).bits == (0, 1)
    with pytest.raises(SequenceError):
        encode_binary(s, builtin_kd().with_policy(REJECT))


def test_fixture_profiles(fixture_seq):
    # A x7, C x2, F x3, I x4, L x6, M x2, V x6
    assert profile_for_set(fixture_seq, "kd_positive").hydrophobic_count == 30
    assert encode_binary(fixture_seq, builtin_kd()).bits == profile_for_set(fixture_seq, "kd_positive").bits


def test_hp_profile():
    p = BinaryProfile.from_hp("hpph")
    assert p.bits == (1, 0, 0, 1)
    assert p.to_hp() == "HPPH"
    with pytest.raises(SequenceError):
        BinaryProfile.from_hp("HPX")


@given(residue_text, st.randoms(use_true_random=False))
def test_encoding_is_position_local(text, rnd):
    seq = parse_sequence(text)
    perm = list(range(len(seq)))
    rnd.shuffle(perm)
    shuffled = Sequence("p", tuple(seq.residues[i] for i in perm))
    bits = encode_binary(seq, builtin_kd()).bits
    assert encode_binary(shuffled, builtin_kd()).bits == tuple(bits[i] for i in perm)


@given(residue_text)
def test_fasta_and_raw_agree(text):
    wrapped = "\n".join(text[i:i + 7] for i in range(0, len(text), 7))
    raw = encode_binary(parse_sequence(text), builtin_kd())
    fasta = encode_binary(parse_sequence(">x\n" + wrapped, "fasta"), builtin_kd())
    assert raw.hydrophobic_count == fasta.hydrophobic_count


@given(residue_text, st.floats(-5, 5), st.floats(-5, 5))
def test_threshold_monotone(text, t1, t2):
    lo, hi = sorted((t1, t2))
    seq = parse_sequence(text)
    assert (
        encode_binary(seq, builtin_kd(hi)).hydrophobic_count
        <= encode_binary(seq, builtin_kd(lo)).hydrophobic_count
    )


def test_scale_rejects_nonfinite_threshold():
    with pytest.raises(ScaleError):
        HydropathyScale("kd", KYTE_DOOLITTLE, float("nan"))
