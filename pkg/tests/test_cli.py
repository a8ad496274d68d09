import json
import random

import pytest

from isopade.checks import random_series
from isopade.cli import main
from isopade.serialize import decode_poly, decode_series
from isopade.type1 import TypeIProblem, solve_all_type_i


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


PARAMS = {"alpha": ["1/3"], "beta": ["1/5"], "gamma": ["7/4"]}


def test_duality_worked_example(capsys):
    code, out, _ = run(capsys, "duality", "--L", "2", "--n", "1", "--order", "4")
    assert code == 0
    data = json.loads(out)
    assert data["D"] == ["1", "1"] and data["detR"] == "1"
    assert data["R"] == [[["1"], ["-1"]], [["0", "1"], ["1", "-1"]]]
    assert data["Rinv"] == [[["1", "-1"], ["1"]], [["0", "-1"], ["1"]]]


def test_verify_all(capsys):
    code, out, _ = run(capsys, "verify-all", "--seed", "42")
    assert code == 0 and json.loads(out)["ok"] is True


def test_malformed_rational(capsys, tmp_path):
    path = write(tmp_path, "f.json", {"f": [["1", "0"], ["1/0", "1"]]})
    code, _, err = run(capsys, "type1", "--input", path, "--order", "1")
    assert code == 2
    assert "f[1][0]" in err


def test_malformed_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{ not json")
    code, _, err = run(capsys, "type1", "--input", str(path))
    assert code == 2 and "line 1" in err


def test_non_generic_exit_code(capsys, tmp_path):
    path = write(tmp_path, "f.json", {"f": [["1", "1", "0", "0", "0"], ["1", "1", "0", "0", "0"]]})
    code, _, _ = run(capsys, "type1", "--input", path, "--order", "4", "--row", "1")
    assert code == 3


def test_order_too_small(capsys):
    code, _, _ = run(capsys, "duality", "--L", "3", "--n", "2", "--order", "5")
    assert code == 2


def test_jet_order_too_small(capsys, tmp_path):
    code, _, _ = run(capsys, "hln", "solve", "--params", write(tmp_path, "p.json", PARAMS), "--jet-order", "1")
    assert code == 2


@pytest.mark.parametrize("argv", [
    ("type1", "--L", "3", "--n", "2", "--seed", "9", "--order", "10"),
    ("type2", "--L", "3", "--n", "1", "--seed", "9", "--order", "8"),
    ("vcf", "--L", "3", "--seed", "5", "--steps", "3"),
    ("verify-all", "--seed", "7"),
])
def test_deterministic(capsys, argv):
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second and first


def test_type_i_output_reingests(capsys, tmp_path):
    code, out, _ = run(capsys, "type1", "--L", "3", "--n", "1", "--seed", "3", "--order", "6")
    assert code == 0
    rows = json.loads(out)["rows"]
    f = random_series(random.Random(3), 3, 6)
    solved = solve_all_type_i(TypeIProblem(f, 1))
    for row, sol in zip(rows, solved):
        assert [decode_poly(v) for v in row["vector"]] == sol.vector
        assert decode_series(row["remainder"], 6) == sol.remainder


def test_vcf_worked(capsys):
    code, out, _ = run(capsys, "vcf", "--steps", "2", "--order", "8")
    data = json.loads(out)
    assert code == 0 and data["contact_ok"]
    assert data["wT"][0] == [[["0"], ["0", "1"]], [["1"], ["-1"]]]


def test_hln_solve(capsys, tmp_path):
    path = write(tmp_path, "p.json", PARAMS)
    code, out, _ = run(capsys, "hln", "solve", "--params", path, "--n", "0", "--jet-order", "4")
    data = json.loads(out)
    assert code == 0 and data["residuals_zero"] and data["residual_max_order_checked"] == 3
    assert data["q"] == [[{}]]
    code, out, _ = run(capsys, "hln", "solve", "--params", path, "--n", "1", "--jet-order", "3")
    assert code == 0 and json.loads(out)["residuals_zero"]


def test_hln_solve_mismatched_L(capsys, tmp_path):
    code, _, _ = run(capsys, "hln", "solve", "--params", write(tmp_path, "p.json", PARAMS), "--L", "3")
    assert code == 2


def test_hln_oracle(capsys, tmp_path):
    mu = {"measures": [[["1", "1"], ["2", "1/2"]], [["0", "1"], ["3", "2"]]]}
    code, out, _ = run(capsys, "hln", "oracle", "--measures", write(tmp_path, "m.json", mu),
                       "--k", "1", "--nvec", "1,1")
    data = json.loads(out)
    assert code == 0 and data["equal"] and data["delta"] == data["symmetrized"] == "3"


def test_fuchs_transform_roundtrip(capsys, tmp_path):
    from isopade.fuchsian import hypergeometric_system
    from isopade.hypergeo import HGParams, build_order
    from isopade.serialize import encode, truncate_jets

    M = 4
    params = write(tmp_path, "p.json", PARAMS)
    out_path = str(tmp_path / "tr.json")
    code, _, _ = run(capsys, "fuchs", "transform", "--params", params, "--n", "1",
                     "--jet-order", str(M), "--output", out_path)
    assert code == 0
    first = json.loads(open(out_path).read())
    assert first["certificate"] and first["eigenvalue_shift"]

    p = HGParams(["1/3"], ["1/5"], ["7/4"], build_order(M) + 2)
    sys_ = hypergeometric_system(p)
    system = write(tmp_path, "sys.json", {"L": 2, "N": 1, "residues": encode(truncate_jets(sys_.residues, M))})
    code, out, _ = run(capsys, "fuchs", "transform", "--system", system, "--R", out_path, "--jet-order", str(M))
    assert code == 0
    second = json.loads(out)
    assert second["certificate"]
    # R(1/x_i) and R^-1(1/x_i) each cost an order on truncated input, so the
    # second run knows fewer terms; every term it does emit must agree
    for A, B in zip(first["residues"], second["residues"]):
        for ra, rb in zip(A, B):
            for a, b in zip(ra, rb):
                if isinstance(b, dict):
                    assert all(a[k] == v for k, v in b.items())
                    assert all(k in b for k in a if int(k.strip("()")) <= M - 2)
                else:
                    assert a == b


def test_fuchs_system_requires_R(capsys, tmp_path):
    system = write(tmp_path, "sys.json", {"L": 2, "N": 1, "residues": [[["0", "0"], ["0", "0"]]] * 3})
    code, _, _ = run(capsys, "fuchs", "transform", "--system", system)
    assert code == 2
