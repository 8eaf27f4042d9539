import pytest
from hypothesis import given, strategies as st

from espart import oeis
from espart.oeis import BFile, ParseError, diff, load_bundled, parse_bfile, render_bfile
from espart.sequences import delta, value

REFERENCE_IDS = ["A000123", "A131205", "A227800", "A126236", "A213213", "A258472"]


def test_parse_basic():
    bf = parse_bfile("# c\n\n1 5\n2 -7\n3 123456789012345678901234567890\n", "A000001")
    assert bf.entries == [(1, 5), (2, -7), (3, 123456789012345678901234567890)]


@pytest.mark.parametrize("text,line", [("5 x\n", 1), ("1 2\n2\n", 2), ("1 1\n3 3\n", 2)])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_bfile(text)
    assert exc.value.line == line


@given(st.integers(-5, 5), st.lists(st.integers(-10**30, 10**30), max_size=20))
def test_render_round_trip(start, values):
    bf = BFile("A000042", [(start + i, v) for i, v in enumerate(values)], "bundled", {"provenance": "test"})
    assert parse_bfile(render_bfile(bf), "A000042") == bf


@pytest.mark.parametrize("anum", REFERENCE_IDS)
def test_bundled_fixtures(anum):
    bf = load_bundled(anum)
    assert len(bf.entries) >= 40
    assert bf.source == "bundled"
    assert "not retrieved from oeis.org" in bf.provenance
    assert anum in oeis.bundled_ids()


def test_a131205_alignment():
    d = diff([(n, value("a", n)) for n in range(2, 41)], load_bundled("A131205"), offset=-1)
    assert d.passed and d.compared == 39


def test_delta_a_against_a000123():
    ref = load_bundled("A000123")
    d = diff([(n, delta(lambda m: value("a", m), n)) for n in range(1, 30)], ref, offset=-1)
    assert d.passed, d.summary()


def test_diff_reports_mismatch_and_shift():
    ref = parse_bfile("0 1\n1 2\n2 3\n", "A000001")
    d = diff({0: 2, 1: 3, 2: 5, 3: 9}, ref, shift=1)
    assert d.mismatches == [(2, 5, 4)]
    assert d.missing == [3]
    assert not d.passed
    assert "first at n=2" in d.summary()


def test_fetch_refuses_without_network():
    with pytest.raises(oeis.NetworkError):
        oeis.fetch("A131205")


def test_bad_id():
    with pytest.raises(ValueError):
        load_bundled("B12")


def file_url(path):
    """file:// URL template; as_uri escapes the braces of the {id} placeholder."""
    return path.as_uri().replace("%7B", "{").replace("%7D", "}")


def test_fetch_uses_configured_url(tmp_path, monkeypatch):
    (tmp_path / "A131205-remote.txt").write_text("1 1\n2 3\n3 7\n")
    monkeypatch.setenv(oeis.CACHE_ENV, str(tmp_path / "cache"))
    monkeypatch.setenv(oeis.URL_ENV, file_url(tmp_path / "{id}-remote.txt"))
    bf = oeis.fetch("A131205", allow_network=True)
    assert bf.source == "fetched" and bf.entries[:3] == [(1, 1), (2, 3), (3, 7)]
    assert (tmp_path / "cache" / "b131205.txt").is_file()
    # a second call is served from the cache
    (tmp_path / "A131205-remote.txt").unlink()
    assert oeis.fetch("A131205", allow_network=True).entries == bf.entries


def test_fetch_integrity_error(tmp_path, monkeypatch):
    (tmp_path / "A131205.txt").write_text("1 1\n2 4\n")
    monkeypatch.setenv(oeis.CACHE_ENV, str(tmp_path / "cache"))
    monkeypatch.setenv(oeis.URL_ENV, file_url(tmp_path / "{id}.txt"))
    with pytest.raises(oeis.IntegrityError):
        oeis.fetch("A131205", allow_network=True)
    assert not (tmp_path / "cache" / "b131205.txt").exists()


def test_fetch_network_error(tmp_path, monkeypatch):
    monkeypatch.setenv(oeis.CACHE_ENV, str(tmp_path / "cache"))
    monkeypatch.setenv(oeis.URL_ENV, file_url(tmp_path / "missing-{id}.txt"))
    with pytest.raises(oeis.NetworkError):
        oeis.fetch("A131205", allow_network=True)
