import io
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from contactverify import __version__, registry
from contactverify.abelian import ChainComplex, IntMatrix
from contactverify.cli import build_report, run
from contactverify.formats import (
    FormatError, format_complex, format_matrix, format_presentation, parse_complex,
    parse_matrix, parse_presentation,
)
from contactverify.grouppres import Presentation, pi1_m0


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


# file formats

def test_parse_examples():
    assert parse_matrix("2 2\n2 4\n6 8").to_rows() == [[2, 4], [6, 8]]
    assert parse_matrix("# comment\n1 3\n1 2 3\n").shape == (1, 3)
    assert parse_matrix("0 2\n").shape == (0, 2)
    P = parse_presentation("gens: a b c\nrel: a b a^-1 b^-1 c^-1")
    assert P == pi1_m0()
    assert parse_presentation("gens: a b\nrel: a b b^-1").relators == ((("a", 1),),)
    C = parse_complex('{"dims": [1, 2, 1], "boundaries": [[[0, 0]], [[0], [2]]]}')
    assert list(C.dims) == [1, 2, 1]


@pytest.mark.parametrize("text", ["", "2 2\n1 2 3", "2 x\n", "1 1\n1.5", "-1 2\n"])
def test_bad_matrix_files(text):
    with pytest.raises(FormatError):
        parse_matrix(text)


@pytest.mark.parametrize("text", ["rel: a", "gens: a\nrel: b", "gens: a\ngens: b",
                                  "gens: a a", "foo: a", "gens: a\nrel: a^z"])
def test_bad_presentation_files(text):
    with pytest.raises(FormatError):
        parse_presentation(text)


def test_bad_complex_files():
    with pytest.raises(FormatError, match="degree 2"):
        parse_complex('{"dims": [1, 2, 1], "boundaries": [[[1, 0]], [[1], [0]]]}')
    for text in ["[1]", "{", '{"dims": [1, 1]}', '{"dims": [1, 1], "boundaries": [[[true]]]}',
                 '{"dims": [1, 1], "boundaries": [[[1, 2]]]}']:
        with pytest.raises(FormatError):
            parse_complex(text)


small = st.integers(-10 ** 6, 10 ** 6)


@st.composite
def int_matrices(draw):
    r, c = draw(st.integers(0, 5)), draw(st.integers(0, 5))
    return IntMatrix(r, c, draw(st.lists(st.lists(small, min_size=c, max_size=c),
                                         min_size=r, max_size=r)))


@given(int_matrices())
def test_matrix_round_trip(M):
    assert parse_matrix(format_matrix(M)) == M


@st.composite
def chain_complexes(draw):
    # block form: d1 vanishes on the columns hit by d2
    n0, n1, n2 = draw(st.integers(0, 3)), draw(st.integers(0, 4)), draw(st.integers(0, 3))
    k = draw(st.integers(0, n1))
    A = draw(st.lists(st.lists(small, min_size=n2, max_size=n2), min_size=k, max_size=k))
    B = draw(st.lists(st.lists(small, min_size=n1 - k, max_size=n1 - k), min_size=n0, max_size=n0))
    d2 = [A[i] if i < k else [0] * n2 for i in range(n1)]
    d1 = [[0] * k + B[i] for i in range(n0)]
    return ChainComplex.from_lists([n0, n1, n2], [d1, d2])


@given(chain_complexes())
def test_complex_round_trip(C):
    D = parse_complex(format_complex(C))
    assert list(D.dims) == list(C.dims)
    assert [b.to_rows() for b in D.boundaries] == [b.to_rows() for b in C.boundaries]


names = st.sampled_from(["a", "b", "c", "x1", "gen_2"])


@st.composite
def presentations(draw):
    gens = draw(st.lists(names, min_size=1, max_size=5, unique=True))
    letter = st.tuples(st.sampled_from(gens), st.sampled_from([1, -1]))
    rels = draw(st.lists(st.lists(letter, max_size=8).map(tuple), max_size=4))
    return Presentation(tuple(gens), tuple(rels))


@given(presentations())
def test_presentation_round_trip(P):
    assert parse_presentation(format_presentation(P)) == P


# command line

def test_list_matches_registry():
    code, out, _ = call("list")
    assert code == 0
    listed = [ln.split()[0] for ln in out.splitlines()]
    assert listed == [s.name for s in registry.SCENARIOS]
    assert len(set(listed)) == len(listed)


@pytest.mark.parametrize("desc", registry.SCENARIOS, ids=lambda d: d.name)
def test_every_scenario_runs_at_defaults(desc):
    code, out, err = call("verify", "--scenario", desc.name, "--format", "json")
    assert code in (0, 1), err
    rec = json.loads(out)
    assert rec["scenario"] == desc.name
    assert (code == 0) == (rec["status"] == "pass")


def test_verify_exit_codes():
    code, out, _ = call("verify", "--scenario", "top-power", "--n", "3")
    assert code == 0 and out.startswith("PASS top-power")
    assert call("verify", "--scenario", "top-power", "--n", "99")[0] == 2
    assert call("verify", "--scenario", "top-power", "--n", "5", "--unsafe-n")[0] == 0
    assert call("verify", "--scenario", "nope")[0] == 2
    assert call("verify", "--scenario", "stereographic", "--n", "2")[0] == 2
    assert call("verify", "--scenario", "weinstein", "--param", "a")[0] == 2
    assert call("verify", "--scenario", "weinstein", "--param", "n=2")[0] == 0
    assert call("verify", "--scenario", "weinstein", "--param", "a=2")[0] == 2
    assert call("frobnicate")[0] == 2
    assert call()[0] == 2


def test_negative_controls_fail_through_the_cli():
    for desc in registry.SCENARIOS:
        if desc.negative is not None:
            assert call("verify", "--scenario", desc.name, "--negative-control")[0] == 1, desc.name


def test_disk_pullback_exit_code_is_one():
    code, out, _ = call("verify", "--scenario", "disk-pullback")
    assert code == 1
    assert "FAIL" in out


def test_snf_and_homology_commands(tmp_path):
    m = tmp_path / "m.txt"
    m.write_text("2 2\n2 4\n6 8\n")
    code, out, _ = call("snf", "--input", str(m), "--format", "json")
    assert code == 0 and json.loads(out)["invariant_factors"] == [2, 4]
    c = tmp_path / "klein.json"
    c.write_text('{"dims": [1, 2, 1], "boundaries": [[[0, 0]], [[0], [2]]]}')
    code, out, _ = call("homology", "--input", str(c))
    assert code == 0 and out.splitlines() == ["H0 = Z", "H1 = Z + Z/2", "H2 = 0"]
    bad = tmp_path / "bad.json"
    bad.write_text('{"dims": [1, 2, 1], "boundaries": [[[1, 0]], [[1], [0]]]}')
    code, _, err = call("homology", "--input", str(bad))
    assert code == 2 and "degree 2" in err
    assert call("snf", "--input", str(tmp_path / "missing"))[0] == 2


def test_pi1_command(tmp_path):
    p = tmp_path / "m0.txt"
    p.write_text("gens: a b c\nrel: a b a^-1 b^-1 c^-1\n")
    code, out, _ = call("pi1", "--input", str(p), "--simplify", "--abelianize", "--format", "json")
    rec = json.loads(out)
    assert code == 0
    assert rec["relator_free"] and rec["free_rank"] == 2 and rec["abelianization"] == "Z^2"
    code, out, _ = call("pi1", "--input", str(p), "--simplify")
    assert "syntactically free of rank 2" in out


def _strip(report):
    report = dict(report)
    report.pop("elapsed_ms")
    report["results"] = [{k: v for k, v in r.items() if k != "elapsed_ms"} for r in report["results"]]
    return report


def test_report_is_deterministic_and_consistent(tmp_path):
    a, b = build_report(2), build_report(2)
    assert _strip(a) == _strip(b)
    assert a["version"] == __version__
    statuses = [r["status"] for r in a["results"]]
    assert a["summary"] == {"pass": statuses.count("pass"), "fail": statuses.count("fail")}
    assert [r["scenario"] for r in a["results"]][0] == registry.SCENARIOS[0].name
    out = tmp_path / "report.json"
    code, text, _ = call("report", "--all", "--n-max", "3", "--out", str(out))
    rep = json.loads(out.read_text())
    assert code == (0 if rep["summary"]["fail"] == 0 else 1)
    assert {r["scenario"] for r in rep["results"]} == set(registry.BY_NAME)
    assert all(r["params"].get("n", 0) <= 3 for r in rep["results"])
    ss = [r for r in rep["results"] if r["scenario"] == "surgered-sphere"][0]
    assert ss["axioms_used"]


def test_no_color(monkeypatch):
    class Tty(io.StringIO):
        def isatty(self):
            return True

    out = Tty()
    monkeypatch.delenv("NO_COLOR", raising=False)
    run(["verify", "--scenario", "liouville"], out, io.StringIO())
    assert "\033[" in out.getvalue()
    out = Tty()
    monkeypatch.setenv("NO_COLOR", "1")
    run(["verify", "--scenario", "liouville"], out, io.StringIO())
    assert "\033[" not in out.getvalue()
