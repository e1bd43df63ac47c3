import json

import pytest

from forcinglab import fixtures
from forcinglab.errors import FormulaSyntaxError, InputError
from forcinglab.loaders import (
    load_dense_family,
    load_document,
    load_eps,
    load_formulas,
    load_name_system,
    load_poset,
    load_valuation,
)

from conftest import pset

TREE3_YAML = """
elements: [r, p0, p1]
leq:
  - [p0, r]
  - [p1, r]
"""


@pytest.fixture
def tree3_file(tmp_path):
    path = tmp_path / "tree3.yaml"
    path.write_text(TREE3_YAML)
    return str(path)


def test_builtin_names():
    assert load_poset("tree3") == fixtures.tree3()
    assert load_eps("eq") == fixtures.eq()
    assert load_name_system("ns2") is fixtures.ns2()
    assert load_valuation("vt") is fixtures.vt()


def test_poset_file(tree3_file, tree3):
    assert load_poset(tree3_file) == tree3


def test_numeric_labels_stay_strings(tmp_path):
    path = tmp_path / "chain.yaml"
    path.write_text("elements: [0, 1, 2]\nleq: [[0, 1], [1, 2]]\n")
    P = load_poset(str(path))
    assert P.elements == ("0", "1", "2")
    assert P.le("0", "2")


def test_poset_errors(tmp_path):
    with pytest.raises(InputError, match="no such file"):
        load_poset(str(tmp_path / "missing.yaml"))
    cyclic = tmp_path / "cyclic.yaml"
    cyclic.write_text("elements: [a, b]\nleq: [[a, b], [b, a]]\n")
    with pytest.raises(InputError, match="cycle"):
        load_poset(str(cyclic))
    unknown = tmp_path / "unknown.yaml"
    unknown.write_text("elements: [a]\nleq: [[a, z]]\n")
    with pytest.raises(InputError, match="unknown element"):
        load_poset(str(unknown))
    extra = tmp_path / "extra.yaml"
    extra.write_text("elements: [a]\ncolour: red\n")
    with pytest.raises(InputError):
        load_poset(str(extra))
    scalar = tmp_path / "scalar.yaml"
    scalar.write_text("- a\n- b\n")
    with pytest.raises(InputError):
        load_document(str(scalar))


def test_valuation_file(tmp_path, tree3_file, vt):
    path = tmp_path / "vt.yaml"
    path.write_text(
        "signature:\n"
        "  relations: {R: 1}\n"
        "  names: [n0, n1]\n"
        "poset: tree3.yaml\n"
        "atoms:\n"
        "  R(n0): [p0]\n"
        "  R(n1): [p1]\n"
    )
    loaded = load_valuation(str(path))
    assert loaded.table == vt.table
    assert load_valuation(str(path), poset=load_poset(tree3_file)).table == vt.table


def test_valuation_regularity(tmp_path, tree3_file, algebra3):
    path = tmp_path / "v.yaml"
    path.write_text(
        f"signature: {{relations: {{R: 1}}, names: [n0]}}\nposet: {tree3_file}\natoms: {{R(n0): [p0, p1]}}\n"
    )
    with pytest.raises(InputError, match="not a regular"):
        load_valuation(str(path))
    regular = load_valuation(str(path), regularize=True)
    assert regular.table == {a: algebra3.one for a in regular.table}


def test_valuation_needs_a_poset(tmp_path):
    path = tmp_path / "v.yaml"
    path.write_text("signature: {relations: {R: 1}, names: [n0]}\n")
    with pytest.raises(InputError, match="no poset"):
        load_valuation(str(path))


def test_builtin_valuation_on_another_poset(chain2):
    with pytest.raises(InputError, match="different poset"):
        load_valuation("vt", chain2)


def test_eps_file(tmp_path):
    path = tmp_path / "e.yaml"
    path.write_text("nodes: [a, b, c]\neps: [[a, c], [b, c]]\n")
    assert load_eps(str(path)) == fixtures.ea()


def test_name_system_file(tmp_path, tree3_file, ns2):
    path = tmp_path / "names.yaml"
    path.write_text(
        f"poset: {tree3_file}\n"
        "names:\n"
        "  - {id: empty, stage: 1}\n"
        "  - {id: half, stage: 2, table: {empty: [p0]}}\n"
    )
    S = load_name_system(str(path))
    assert S.ids == ("empty", "half")
    assert S.eps_matrix["empty", "half"].members == pset("p0")
    bad = tmp_path / "bad.yaml"
    bad.write_text(f"poset: {tree3_file}\nnames:\n  - {{id: a, stage: 1, table: {{a: []}}}}\n")
    with pytest.raises(InputError):
        load_name_system(str(bad))


def test_name_system_documents_reload(tmp_path, ns2):
    path = tmp_path / "ns2.json"
    path.write_text(json.dumps(ns2.to_doc()))
    S = load_name_system(str(path))
    assert S.ids == ns2.ids
    assert S.eps_matrix == ns2.eps_matrix


def test_dense_family_file(tmp_path, tree3):
    path = tmp_path / "d.yaml"
    path.write_text("dense:\n  - [p0, p1]\n")
    family = load_dense_family(str(path), tree3, 12)
    assert family.sets == (pset("p0", "p1"),)
    assert len(load_dense_family("all", tree3, 12)) > 1
    path.write_text("dense:\n  - [p0]\n")
    with pytest.raises(InputError, match="not dense"):
        load_dense_family(str(path), tree3, 12)


def test_formula_files(tmp_path, vt):
    text = tmp_path / "f.txt"
    text.write_text("# atoms\nR(n0)\n\nexists x. R(x)\n")
    assert len(load_formulas(str(text), vt.signature)) == 2
    doc = tmp_path / "f.yaml"
    doc.write_text("formulas:\n  - (R(n0) and R(n1))\n")
    assert len(load_formulas(str(doc), vt.signature)) == 1
    doc.write_text("formulas:\n  - R(n0) and\n")
    with pytest.raises(FormulaSyntaxError):
        load_formulas(str(doc), vt.signature)
