import pytest

from espart import conjectures as C
from espart.partitions import Partition

P = Partition.parse


def test_chi_tau_definitions():
    S = [P("(2,1)"), P("(1,1,1)")]
    assert C.tau(S) == 5
    assert C.chi(S, "per_partition") == 3
    assert C.chi(S, "global") == 2
    with pytest.raises(ValueError):
        C.chi(S, "other")


def test_r_dk_small():
    assert C.r_dk(2, 2, 2) == 1  # image set {(1)}
    assert C.r_dk(3, 4, 3) == 0  # no partition of 3 has four parts
    with pytest.raises(ValueError):
        C.r_dk(1, 2, 5)


def test_r_dk_bounded_by_image_count():
    for n in range(15):
        for d in (2, 3):
            st = C.image_stats(n, 2)
            assert C.r_dk(d, 2, n, "distinct") <= len(st.images)


def test_window_is_sum():
    f = lambda n: n * n + 1
    assert C.window(f, 3, 6) == sum(f(i) for i in range(3, 7))
    assert C.window(f, 4, 4) == f(4)


def test_pre3_collision_is_logged():
    st = C.image_stats(13, 3)
    pairs = {frozenset(map(str, p)) for p in st.collisions}
    assert frozenset({"(9,2,2)", "(6,6,1)"}) in pairs
    assert len(st.records) == len(st.images) + len(st.collisions)


def test_formula_grammar():
    f = C.compile_formula("3*floor(n/10)+2")
    assert [f(n) for n in (0, 9, 10, 25)] == [2, 2, 5, 8]
    assert C.compile_formula("floor((n+2)/4)")(6) == 2
    assert C.compile_formula("-n//3")(7) == -3
    for bad in ("__import__('os')", "n**2", "n/2", "abs(n)", "m+1", "1.5"):
        with pytest.raises((ValueError, SyntaxError)):
            C.compile_formula(bad)


def test_table_parsing():
    entries = C.parse_table("# comment\n2 2 0 floor((n+2)/4)\n2 2 1 0\n")
    assert [(e.d, e.m, e.residue) for e in entries] == [(2, 2, 0), (2, 2, 1)]
    with pytest.raises(ValueError):
        C.parse_table("2 2 0\n")
    bundled = C.load_table()
    assert {e.d for e in bundled} == {2, 3, 4, 5}
    assert len(bundled) == 2 + 6 + 4 + 10


def test_c9_binary_column():
    rep = C.check_c9(ds=(2,), n_max=24)
    assert rep.passed, rep.summary()
    for n in range(0, 25, 2):
        assert C.r_dk(2, 2, n) - C.r_dk(2, 3, n) == (n + 2) // 4


def test_c9_three_zero_residue():
    for n in (0, 6, 12, 18, 24):
        assert C.r_dk(3, 2, n) - C.r_dk(3, 3, n) == 2 * (n // 6)


def test_c9_failure_has_counterexample():
    rep = C.check_c9(ds=(5,), n_max=12)
    assert not rep.passed
    ce = rep.details["counterexample"]
    assert ce["d"] == 5 and ce["n"] == rep.first_failure.n
    assert all("source" in row and "image" in row for row in ce["regular_images_k2"])


def test_c10_examples():
    assert C.r_dk(3, 1, 9) - C.r_dk(3, 2, 9) == 0
    assert C.r_dk(3, 1, 10) - C.r_dk(3, 2, 10) == 1
    assert C.check_c10(n_max=20).passed


def test_c11_small():
    rep = C.check_c11(ks=(2, 3), n_max=16)
    assert rep.passed, rep.summary()
    names = {r.tag for r in rep.rows}
    assert "C11(k=2,m9[n,n+2])" in names and "C11(k=3,m1)" in names


def test_c11_p1_reduces():
    M = lambda n: C.image_stats(n, 2).m(1)
    for n in range(15):
        assert M(n + 1) - M(n) == C.image_stats(n, 1).m(1)


def test_chi_mode_resolution():
    res = C.resolve_chi_mode(20)
    for stat, modes in res.items():
        assert modes == {"per_partition": False, "global": True}, stat


def test_c12_passes_on_bundled_prefixes():
    rep = C.check_c12(n_max=20)
    assert rep.passed, rep.summary()
    assert rep.details["chi_mode"] == "global"


def test_unknown_conjecture():
    with pytest.raises(ValueError):
        C.verify_conjecture("C99")


def test_c9_columns_under_both_countings():
    # per-source counting fits the d = 2, 3, 4 columns; distinct counting
    # breaks once pre_3 collides
    assert C.check_c9(ds=(2, 3, 4), n_max=20, counting="per_source").passed
    assert not C.check_c9(ds=(3,), n_max=20, counting="distinct").passed


def test_c9_d5_column_fits_at_n_plus_1():
    column = {e.residue: e for e in C.load_table() if e.d == 5}
    for n in range(21):
        assert C.r_dk(5, 2, n) - C.r_dk(5, 3, n) == column[(n + 1) % 10](n + 1)
