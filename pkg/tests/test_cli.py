"""Command line interface: pinned output lines, exit codes, CSV side files."""

import pytest

from bernpairs import cli
from bernpairs.pairs import build_database, load_database


@pytest.fixture(scope="session")
def db160_file(tmp_path_factory, db160):
    path = tmp_path_factory.mktemp("cli") / "db160.txt"
    db160.save(str(path))
    return str(path)


@pytest.fixture(scope="session")
def db1000_file(tmp_path_factory, db1000):
    path = tmp_path_factory.mktemp("cli") / "db1000.txt"
    db1000.save(str(path))
    return str(path)


@pytest.fixture(scope="session")
def db6500_file(tmp_path_factory, db6500):
    path = tmp_path_factory.mktemp("cli") / "db6500.txt"
    db6500.save(str(path))
    return str(path)


def test_sieve_roundtrip(tmp_path, capsys):
    out = tmp_path / "db.txt"
    assert cli.main(["sieve", "--max-p", "40", "--out", str(out)]) == 0
    assert capsys.readouterr().out == f"1 pairs over primes below 40 -> {out}\n"
    assert load_database(str(out)) == build_database(40)


def test_pairs_listing(db160_file, tmp_path, capsys):
    csv_path = tmp_path / "pairs.csv"
    code = cli.main(
        ["pairs", "--p", "157", "--db", db160_file, "--csv", str(csv_path)]
    )
    assert code == 0
    assert capsys.readouterr().out == "157,62\n157,110\n"
    assert csv_path.read_text().splitlines() == ["p,l", "157,62", "157,110"]


def test_pairs_regular_prime_is_empty(db160_file, capsys):
    assert cli.main(["pairs", "--p", "41", "--db", db160_file]) == 0
    assert capsys.readouterr().out == ""


def test_delta_line(capsys):
    assert cli.main(["delta", "--p", "37", "--l", "32"]) == 0
    assert capsys.readouterr().out == "37,32,21\n"


def test_lift_lines(capsys):
    assert cli.main(["lift", "--p", "353", "--l", "186"]) == 0
    assert capsys.readouterr().out == "(353;186,190)\n"
    assert cli.main(["lift", "--p", "37", "--l", "32", "--order", "3"]) == 0
    assert capsys.readouterr().out == "(37;32,7,28)\n"


def test_a_value_valid(db160_file, capsys):
    assert cli.main(["a-value", "--p", "37", "--l", "32", "--db", db160_file]) == 0
    assert capsys.readouterr().out == "m=1148 VALID\n"


def test_a_value_invalid_with_witness(db6500_file, capsys):
    code = cli.main(["a-value", "--p", "6449", "--l", "4884", "--db", db6500_file])
    assert code == 0
    assert capsys.readouterr().out == "m=31490468 INVALID witness=(257,164)\n"


def test_a_value_prime_power_no_solution(db160_file, capsys):
    code = cli.main(
        ["a-value", "--p", "37", "--l", "32", "--r", "2", "--db", db160_file]
    )
    assert code == 0
    assert capsys.readouterr().out == "no solution: s_2 deviates from s_1 - 1\n"


def test_exceptions_listing(db6500_file, tmp_path, capsys):
    csv_path = tmp_path / "exc.csv"
    code = cli.main(["exceptions", "--db", db6500_file, "--csv", str(csv_path)])
    assert code == 0
    assert capsys.readouterr().out == (
        "(6449,4884) m=31490468 factors=19*257 witness=(257,164)\n"
    )
    assert csv_path.read_text().splitlines() == [
        "p,l,m,factors,witnesses",
        '6449,4884,31490468,19*257,"(257,164)"',
    ]


def test_lambda_finite(db160_file, capsys):
    assert cli.main(["lambda", "--c", "2183", "--db", db160_file]) == 0
    assert capsys.readouterr().out == "L(2183)=272876 S={(37,32),(59,44)}\n"


def test_lambda_infinite(db1000_file, capsys):
    assert cli.main(["lambda", "--c", "34453", "--db", db1000_file]) == 0
    assert capsys.readouterr().out == "L(34453)=Infinity\n"


def test_lambda_mixed_exponents(db160_file, capsys):
    assert cli.main(["lambda", "--c", str(37 * 37 * 59), "--db", db160_file]) == 0
    out = capsys.readouterr().out
    assert out == "L(80771)=Infinity [unsupported: mixed exponents]\n"


def test_lambda_regular_prime_fails(db160_file, capsys):
    assert cli.main(["lambda", "--c", "7", "--db", db160_file]) == 1
    err = capsys.readouterr().err
    assert err.startswith("NotIrregular:")


def test_mn_pinned_line(db160_file, tmp_path, capsys):
    csv_path = tmp_path / "mn.csv"
    code = cli.main(
        [
            "mn",
            "--n", "2",
            "--u0", "7610864",
            "--db", db160_file,
            "--log",
            "--csv", str(csv_path),
        ]
    )
    assert code == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "M_2=107430 c=103*149 S={(103,24),(149,130)}"
    assert lines[1] == "n S U u"
    assert lines[2] == "2 {(37,32),(59,44)} 272876 522"
    assert lines[3] == "2 {(103,24),(149,130)} 107430 327"
    assert csv_path.read_text().splitlines() == [
        "n,S,U,u",
        '2,"{(37,32),(59,44)}",272876,522',
        '2,"{(103,24),(149,130)}",107430,327',
    ]


def test_ratio_line(capsys):
    assert cli.main(["ratio", "--m", "12"]) == 0
    assert capsys.readouterr().out == "ratio(12)=1\n"
    assert cli.main(["ratio", "--m", "1148"]) == 0
    assert capsys.readouterr().out == "ratio(1148)=37\n"


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as exc:
        cli.main(["lift", "--p", "37"])  # missing --l
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["no-such-command"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["ratio", "--m", "-4"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_domain_errors_exit_1(db160_file, capsys):
    # regular pair: delta refuses
    assert cli.main(["delta", "--p", "37", "--l", "30"]) == 1
    assert capsys.readouterr().err.startswith("NotIrregular:")
    # shape errors surface as ValueError, same exit code
    assert cli.main(["delta", "--p", "35", "--l", "12"]) == 1
    assert capsys.readouterr().err.startswith("ValueError:")
    # query beyond database coverage
    assert cli.main(["pairs", "--p", "1000003", "--db", db160_file]) == 1
    assert capsys.readouterr().err.startswith("DatabaseTooSmall:")


def test_verify_quick(capsys):
    assert cli.main(["verify", "--quick", "--jobs", "1"]) == 0
    out = capsys.readouterr().out
    assert "FAIL" not in out
    assert "checks passed" in out
