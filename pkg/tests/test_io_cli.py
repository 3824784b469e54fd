import json
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest

from hopfhom import (
    Field,
    FiniteAbelianGroup,
    GroupHom,
    appendix_d1,
    appendix_d2,
    builtin_space,
    group_hom_to_morphism,
    group_hopf,
)
from hopfhom import io
from hopfhom.cli import main
from hopfhom.constructors import d_pair
from hopfhom.errors import InputError
from hopfhom.homology import periodicized_chain


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


# -- JSON formats -------------------------------------------------------------------


def test_fixtures_match_constructors(fixtures_dir):
    assert io.load_hopf(fixtures_dir / "d1.json").same_structure(appendix_d1())
    assert io.load_hopf(fixtures_dir / "d2.json").same_structure(appendix_d2())
    assert io.load_hopf(fixtures_dir / "kz2_f3.json").same_structure(group_hopf(Field.prime(3), [2]))
    assert io.load_hopf(fixtures_dir / "kz5_f3.json").same_structure(group_hopf(Field.prime(3), [5]))


@pytest.mark.parametrize(
    "h",
    [appendix_d1(), group_hopf(Field.rational(), [3]), d_pair(group_hopf(Field.prime(5), [2]))],
    ids=["d1", "q", "dpair"],
)
def test_hopf_round_trip(h):
    obj = io.hopf_to_json(h)
    again = io.hopf_from_json(json.loads(io.dumps(obj)))
    assert again.same_structure(h)
    assert io.hopf_to_json(again) == obj


def test_sparse_entries_sorted(fixtures_dir):
    obj = io.read_json(fixtures_dir / "d1.json")
    assert list(obj)[:3] == ["field", "dim", "basis_names"]
    assert obj["mul"] == sorted(obj["mul"])
    assert obj["field"] == {"kind": "prime", "p": 3}


def test_rational_entries_are_strings():
    h = group_hopf(Field.rational(), [2])
    obj = io.hopf_to_json(h)
    loaded = io.hopf_from_json(obj)
    assert isinstance(loaded.mul[0, 0, 0], Fraction)


@pytest.mark.parametrize(
    "mutate",
    [
        lambda o: o.pop("mul"),
        lambda o: o.update(dim=0),
        lambda o: o.update(field={"kind": "prime", "p": 4}),
        lambda o: o["mul"].append([9, 0, 0, 1]),
        lambda o: o.update(unit=[1, 0, 0]),
    ],
)
def test_malformed_hopf_json(fixtures_dir, mutate):
    obj = io.read_json(fixtures_dir / "kz2_f3.json")
    mutate(obj)
    with pytest.raises(InputError):
        io.hopf_from_json(obj)


def test_morphism_round_trip(tmp_path, fixtures_dir):
    f = group_hom_to_morphism(GroupHom(FiniteAbelianGroup((2,)), FiniteAbelianGroup((4,)), ((2,),)), Field.prime(3))
    path = tmp_path / "m.json"
    io.write_json(io.morphism_to_json(f), path)
    assert io.load_morphism(path) == f
    ref = {"source": str(fixtures_dir / "kz2_f3.json"), "target": str(fixtures_dir / "kz2_f3.json"), "matrix": [[1, 0], [0, 1]]}
    g = io.morphism_from_json(ref)
    assert g.source.dim == 2 and g.matrix.tolist() == [[1, 0], [0, 1]]


def test_cw_and_chain_round_trip():
    kw = builtin_space("S2-big")
    again = io.cw_from_json(io.cw_to_json(kw))
    assert again.cells == kw.cells
    assert all((a == b).all() for a, b in zip(again.boundary, kw.boundary))
    c = periodicized_chain(builtin_space("RP2"), 5)
    c2 = io.fp_chain_from_json(io.fp_chain_to_json(c))
    assert c2.dims == c.dims and c2.homology_dims() == c.homology_dims()


def test_cw_json_validation():
    with pytest.raises(InputError):
        io.cw_from_json({"cells": [1, 1, 1], "boundary": [[[1]], [[1]]]})


# -- CLI ----------------------------------------------------------------------------


def test_verify_fixture(capsys, fixtures_dir):
    code, out, _ = run(capsys, "verify", fixtures_dir / "d1.json")
    assert code == 0 and out.count("pass") == 11


def test_verify_malformed(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, "verify", bad)
    assert code == 2 and "input error" in err


def test_verify_broken_antipode(capsys, tmp_path, fixtures_dir):
    obj = io.read_json(fixtures_dir / "d1.json")
    obj["antipode"] = np.eye(5, dtype=int).tolist()
    path = tmp_path / "broken.json"
    io.write_json(obj, path)
    code, out, _ = run(capsys, "verify", path)
    assert code == 1 and "FAIL  antipode" in out and "failed: antipode" in out


def test_info_d1(capsys, fixtures_dir):
    code, out, _ = run(capsys, "info", fixtures_dir / "d1.json")
    assert code == 0
    assert out.splitlines()[0] == "dim 5, GE 1, GE^∨ 1, semisimple yes, cosemisimple yes, class nontrivial"
    assert "normalized integral:   a" in out


def test_construct_info_round_trip(capsys, tmp_path):
    g = tmp_path / "g.json"
    assert run(capsys, "construct", "group", "--field", "3", "--group", "2,4", "-o", g)[0] == 0
    code, out, _ = run(capsys, "info", g)
    assert code == 0 and "class group_hopf" in out
    d = tmp_path / "d.json"
    run(capsys, "construct", "dpair", "--field", "F3", "--group", "5", "-o", d)
    code, out, _ = run(capsys, "info", d)
    assert "dim 25, GE 5, GE^∨ 5" in out and "class nontrivial" in out


def test_info_budget_warning(capsys, tmp_path):
    d = tmp_path / "d.json"
    run(capsys, "construct", "dpair", "--field", "3", "--group", "5", "-o", d)
    code, out, err = run(capsys, "info", d, "--budget", "10")
    assert code == 0 and "class unknown" in out and "warning" in err


def test_construct_needs_field(capsys):
    assert run(capsys, "construct", "group", "--group", "2")[0] == 2


def test_dual_tensor_dpair_commands(capsys, tmp_path, fixtures_dir):
    kz2 = fixtures_dir / "kz2_f3.json"
    out = tmp_path / "t.json"
    assert run(capsys, "tensor", kz2, kz2, "-o", out)[0] == 0
    assert io.load_hopf(out).dim == 4
    assert run(capsys, "dual", fixtures_dir / "d1.json", "-o", out)[0] == 0
    assert io.load_hopf(out).dim == 5
    assert run(capsys, "dpair", kz2, "-o", out)[0] == 0
    assert io.load_hopf(out).dim == 4


def test_endring_d1(capsys, tmp_path, fixtures_dir):
    path = tmp_path / "end.json"
    code, out, _ = run(capsys, "endring", fixtures_dir / "d1.json", "-o", path)
    assert code == 0 and "5 elements" in out and "ring F_5" in out
    assert io.read_json(path)["labels"] == ["[0]", "[1]", "[2]", "[3]", "[4]"]


def test_homology_rp2(capsys, tmp_path, fixtures_dir):
    path = tmp_path / "h.json"
    code, _, _ = run(capsys, "homology", "--space", "rp2", "--coeff", fixtures_dir / "kz2_f3.json", "-o", path)
    assert code == 0
    assert [d["dim"] for d in io.read_json(path)["degrees"]] == [2, 2, 2]


def test_homology_point_with_d1(capsys, tmp_path, fixtures_dir):
    path = tmp_path / "h.json"
    args = ["homology", "--space", "pt", "--coeff", fixtures_dir / "d1.json", "-o", path, "--emit-presentations"]
    assert run(capsys, *args)[0] == 0
    rep = io.read_json(path)
    assert [d["dim"] for d in rep["degrees"]] == [5]
    assert io.hopf_from_json(rep["presentations"][0]).same_structure(appendix_d1())


def test_homology_relative_les(capsys, fixtures_dir):
    args = ["homology", "--space", "rp2", "--relative", "rp1", "--coeff", fixtures_dir / "kz2_f3.json", "--les"]
    code, out, _ = run(capsys, *args)
    verdicts = [line for line in out.splitlines() if line.startswith(("exact", "NOT exact"))]
    assert code == 0 and len(verdicts) == 9 and all(v.startswith("exact") for v in verdicts)


def test_homology_relative_file(capsys, tmp_path, fixtures_dir):
    sub = tmp_path / "sub.json"
    sub.write_text(json.dumps({"keep": [[0], [0]]}))
    code, out, _ = run(capsys, "homology", "--space", "d2", "--relative", sub, "--coeff", fixtures_dir / "d1.json", "--les")
    assert code == 0


def test_homology_cap(capsys, fixtures_dir):
    code, _, err = run(capsys, "homology", "--space", "s2-big", "--coeff", fixtures_dir / "d1.json")
    assert code == 3 and "HOPF_CAP" in err


def test_homology_bad_space(capsys, fixtures_dir):
    assert run(capsys, "homology", "--space", "klein", "--coeff", fixtures_dir / "d1.json")[0] == 2


def test_expfun_examples(capsys, tmp_path, fixtures_dir):
    path = tmp_path / "e.json"
    code, _, _ = run(capsys, "expfun", "--coeff", fixtures_dir / "d1.json", "--prime", 5, "--space", "rp2", "-o", path)
    assert code == 0
    rep = io.read_json(path)
    assert [d["dim"] for d in rep["degrees"]] == [5, 1, 1] and all(d["isomorphism"] for d in rep["degrees"])
    code, _, err = run(capsys, "expfun", "--coeff", fixtures_dir / "kz2_f3.json", "--prime", 5)
    assert code == 1 and "[5] is not trivial" in err
    code, _, _ = run(capsys, "expfun", "--coeff", fixtures_dir / "kz5_f3.json", "--prime", 5, "--space", "s1", "-o", path)
    assert code == 0 and [d["dim"] for d in io.read_json(path)["degrees"]] == [5, 5]


def test_expfun_chain_file(capsys, tmp_path, fixtures_dir):
    chain = tmp_path / "c.json"
    io.write_json(io.fp_chain_to_json(periodicized_chain(builtin_space("pt"), 5)), chain)
    code, out, _ = run(capsys, "expfun", "--coeff", fixtures_dir / "d1.json", "--prime", 5, "--chain", chain)
    assert code == 0 and out.strip().endswith("extraordinary")


def test_lift_command(capsys, tmp_path):
    f = group_hom_to_morphism(GroupHom(FiniteAbelianGroup((2,)), FiniteAbelianGroup((4,)), ((2,),)), Field.prime(3))
    path = tmp_path / "m.json"
    io.write_json(io.morphism_to_json(f), path)
    code, out, _ = run(capsys, "lift", path)
    assert code == 0 and "generator 0 -> (2,)" in out
    obj = io.morphism_to_json(f)
    obj["matrix"] = [[1, 1], [0, 0], [0, 0], [0, 2]]
    io.write_json(obj, path)
    assert run(capsys, "lift", path)[0] == 1


def test_unknown_subcommand(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_output_is_byte_identical(tmp_path, fixtures_dir):
    outs = []
    for i in range(2):
        path = tmp_path / f"run{i}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "hopfhom", "homology", "--space", "t2", "--coeff", str(fixtures_dir / "kz2_f3.json"),
             "--les", "-o", str(path)],
            capture_output=True,
            check=True,
        )
        outs.append((proc.stdout, path.read_bytes()))
    assert outs[0] == outs[1]
