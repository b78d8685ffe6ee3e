import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

from ordtower import exp, exp_less, nat, restrict
from ordtower.cli import run_command
from ordtower.notation import format_fixture, format_term, parse_fixture
from ordtower.wellfounded import EvidenceError

from helpers import fixture_corpus, nat_exp_terms

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.mark.parametrize("argv, output", [
    (["cmp", "exp(nat,nat)", "p^2*5+p^1*1", "p^2*5+p^1*2"], "LT\n"),
    (["dom", "exp(nat,nat)", "p^1*0+p^1*1"], "OUT\n"),
    (["wf", "kreisel:bad=3", "10", "--budget", "5"], "UNKNOWN chain=10,11,12,13,14,15\n"),
])
def test_documented_examples(argv, output):
    res = run_command(argv)
    assert res.status == 0
    assert res.output == output
    assert res.errors == ""


@pytest.mark.parametrize("argv, output", [
    (["cmp", "nat", "3", "3"], "EQ\n"),
    (["cmp", "nat", "4", "3"], "GT\n"),
    (["cmp", "lex(chain:2,chain:2)", "<0,1>", "<1,0>"], "LT\n"),
    (["cmp", "glue:demo", "<0,2>", "<1,2>"], "INCOMPARABLE\n"),
    (["cmp", "tower:N=4;bases=kreisel:bad=3,nat", "p^1*10", "p^2*0", "--gated", "--budget", "20"],
     "UNKNOWN\n"),
    (["cmp", "exp(nat,nat)", "p^1*3", "p^2*0", "--gated"], "LT\n"),
    (["dom", "exp(nat,nat)", "0"], "IN\n"),
    (["wf", "nat", "5"], "WELLFOUNDED rank=5\n"),
    (["rank", "nat", "7", "--set", "0,2,7"], "2\n"),
    (["ordertype", "exp(chain:2,chain:1)", "--set", "0,p^0*0,p^1*0,p^1*0+p^0*0"], "4\n"),
    (["enum", "chain:3"], "0\n1\n2\n"),
    (["enum", "nat", "--max", "2"], "0\n1\n"),
])
def test_subcommands(argv, output):
    res = run_command(argv)
    assert (res.status, res.output, res.errors) == (0, output, "")


@pytest.mark.parametrize("argv, kind", [
    (["cmp", "exp(nat,nat", "0", "0"], "parse"),
    (["cmp", "nat", "p^", "0"], "parse"),
    (["cmp", "chain:2", "0", "5"], "domain"),
    (["wf", "nat", "5", "--budget", "x"], "usage"),
    (["frobnicate"], "usage"),
    (["rank", "nat", "3", "--set", "0,2,7"], "domain"),
    (["ordertype", "file:" + str(FIXTURES / "diamond.rel"), "--set", "0,1,2,3"], "not-linear"),
    (["rank", "file:" + str(FIXTURES / "cycle.rel"), "5", "--set", "5,6"], "cycle"),
    (["wf", "file:/nonexistent/rel.txt", "0"], "io"),
    (["cmp", "glue:nosuch", "<0,0>", "<0,1>"], "unknown-stream"),
    (["cmp", "nat", "1", "2", "--gated"], "usage"),
    (["fixture", "run", "/nonexistent.fixture"], "io"),
])
def test_errors_exit_one_with_prefix(argv, kind):
    res = run_command(argv)
    assert res.status == 1
    assert res.output == ""
    assert res.errors.startswith(f"error:{kind}:")
    assert res.errors.count("\n") == 1


def test_failed_evidence_exits_two(monkeypatch):
    def broken(*args, **kwargs):
        raise EvidenceError("tampered")

    monkeypatch.setattr("ordtower.cli.verify_verdict", broken)
    res = run_command(["wf", "nat", "3"])
    assert res.status == 2
    assert res.errors.startswith("error:internal:")


def test_dot_output():
    res = run_command(["dot", "nat", "--set", "7,0,2"])
    assert res.status == 0
    lines = res.output.splitlines()
    assert lines[0] == "digraph order {" and lines[-1] == "}"
    assert lines[1:4] == ['  "0";', '  "2";', '  "7";']
    edges = lines[4:-1]
    assert edges == ['  "0" -> "2";', '  "0" -> "7";', '  "2" -> "7";']


@pytest.mark.parametrize("order, elems", [
    ("exp(chain:2,chain:2)", "0,p^0*0,p^0*1,p^1*0,p^1*1,p^1*1+p^0*0"),
    ("lex(chain:2,nat)", "<0,0>,<1,3>,<0,9>,<1,0>"),
    ("kreisel:bad=2", "0,1,2,3,4"),
])
def test_dot_one_edge_per_relation_pair(order, elems):
    from ordtower.cli import Env, _terms
    ord = Env().resolve(order)
    r = restrict(ord, _terms(ord, elems))
    lines = run_command(["dot", order, "--set", elems]).output.splitlines()
    edges = [l for l in lines if "->" in l]
    assert len(edges) == len(set(edges)) == len(r.edges)
    expected = {f'  "{format_term(a)}" -> "{format_term(b)}";' for a, b in r.edges}
    assert set(edges) == expected
    assert edges == sorted(edges)


@settings(max_examples=100, deadline=None)
@given(nat_exp_terms(), nat_exp_terms())
def test_cmp_agrees_with_library(a, b):
    E = exp(nat(), nat())
    out = run_command(["cmp", "exp(nat,nat)", format_term(a), format_term(b)]).output.strip()
    expected = "EQ" if a == b else ("LT" if exp_less(E, a, b) else "GT")
    assert out == expected


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.fixture")), ids=lambda p: p.name)
def test_handwritten_fixtures_pass(path):
    res = run_command(["fixture", "run", str(path)])
    assert res.status == 0, res.output + res.errors
    assert "FAIL" not in res.output
    assert all(line.endswith(" ok") for line in res.output.splitlines())


def test_failing_fixture_exits_one(tmp_path):
    fx = tmp_path / "bad.fixture"
    fx.write_text("[check] kind=cmp order=nat args=1;2 expect=GT\n")
    res = run_command(["fixture", "run", str(fx)])
    assert res.status == 1
    assert res.output == "1 cmp nat: LT FAIL expected=GT\n"
    assert res.errors.startswith("error:check-failed:")


def test_malformed_fixture_is_parse_error(tmp_path):
    fx = tmp_path / "bad.fixture"
    fx.write_text("[order] expr=nat\n")
    res = run_command(["fixture", "run", str(fx)])
    assert res.status == 1 and res.errors.startswith("error:parse:")


def test_generated_fixtures_run_without_crashing(tmp_path):
    # generated fixtures refer to cycle.rel next to themselves
    (tmp_path / "cycle.rel").write_text((FIXTURES / "cycle.rel").read_text())
    handwritten = len(list(FIXTURES.glob("*.fixture")))
    for name, text in fixture_corpus(FIXTURES, generated=15, seed=99)[handwritten:]:
        fx = tmp_path / f"{name}.fixture"
        fx.write_text(text)
        res = run_command(["fixture", "run", str(fx)])
        assert res.status in (0, 1), (name, res.errors)
        n_checks = len(parse_fixture(text).checks)
        assert len(res.output.splitlines()) == n_checks


def test_fixture_round_trip_corpus():
    corpus = fixture_corpus(FIXTURES)
    assert len(corpus) >= 50
    for name, text in corpus:
        fx = parse_fixture(text)
        assert parse_fixture(format_fixture(fx)) == fx, name


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ordtower", "cmp", "nat", "1", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "LT\n"
