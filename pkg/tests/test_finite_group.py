import itertools
import json

import numpy as np
import pytest

from wreath_states import finite_group as fg


@pytest.mark.parametrize("group", [fg.trivial_group(), fg.cyclic(2), fg.cyclic(3), fg.symmetric3()])
def test_tables_are_groups(group):
    n = group.order
    for a in range(n):
        assert group.mul[a, group.inv[a]] == group.identity
    for a, b, c in itertools.product(range(n), repeat=3):
        assert group.product(a, b, c) == group.mul[group.mul[a, b], c]


def test_s3_is_nonabelian_and_named():
    g = fg.symmetric3()
    assert not g.is_abelian()
    t12, t23 = g.index("t12"), g.index("t23")
    # (t12 . t23) applied to 0 -> t12(t23(0)) = t12(0) = 1, etc. gives the 3-cycle 0->1->2->0
    assert g.name(g.mul[t12, t23]) == "c123"
    assert g.mul[g.index("c123"), g.index("c132")] == g.identity


def test_cyclic_names():
    assert fg.cyclic(4).names == ("e", "a", "a2", "a3")


@pytest.mark.parametrize("names, mul, fragment", [
    (["e", "a"], [[0, 1], [1, 1]], "permutation"),
    (["e", "e"], [[0, 1], [1, 0]], "distinct"),
    (["e", "a b"], [[0, 1], [1, 0]], "reserved"),
    (["e"], [[0, 0]], "1x1"),
    ([], [], "at least one"),
])
def test_invalid_tables(names, mul, fragment):
    with pytest.raises(fg.GroupError, match=fragment):
        fg.validate_table(names, mul)


def test_non_associative_latin_square_rejected():
    # a Latin square with identity 0 that is not associative (order 5 loop)
    mul = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(fg.GroupError, match="associativity"):
        fg.validate_table(list("eabcd"), mul)


@pytest.mark.parametrize("rep", [
    fg.regular_rep(fg.symmetric3()),
    fg.standard_rep_s3(),
    fg.sign_rep_s3(),
    fg.cyclic_irrep(3, 2),
    fg.tensor_rep(fg.standard_rep_s3(), fg.sign_rep_s3()),
])
def test_representations_are_homomorphisms(rep):
    g = rep.group
    for a, b in itertools.product(range(g.order), repeat=2):
        assert np.allclose(rep(a) @ rep(b), rep(int(g.mul[a, b])))


def test_character_values():
    g = fg.symmetric3()
    std = fg.standard_rep_s3(g)
    assert fg.normalized_char(std, g.index("t12")) == pytest.approx(0.0)
    assert fg.normalized_char(std, g.index("c123")) == pytest.approx(-0.5)
    reg = fg.regular_rep(g)
    assert fg.normalized_char(reg, g.index("t23")) == 0
    assert fg.normalized_char(fg.sign_rep_s3(g), g.index("t13")) == pytest.approx(-1)


def test_build_rejects_non_homomorphism():
    g = fg.cyclic(2)
    with pytest.raises(fg.GroupError, match="homomorphism"):
        fg.UnitaryRep.build(g, [np.eye(1), 1j * np.eye(1)])
    with pytest.raises(fg.GroupError, match="unitary"):
        fg.UnitaryRep.build(g, [np.eye(1), 2 * np.eye(1)])
    with pytest.raises(fg.GroupError, match="need 2"):
        fg.UnitaryRep.build(g, [np.eye(1)])


def test_json_round_trip(tmp_path):
    g = fg.symmetric3()
    gpath = tmp_path / "g.json"
    gpath.write_text(json.dumps(fg.group_to_json(g)))
    g2 = fg.group_from_json(gpath)
    assert g2.names == g.names and np.array_equal(g2.mul, g.mul)
    rep = fg.standard_rep_s3(g)
    r2 = fg.rep_from_json(json.loads(json.dumps(fg.rep_to_json(rep))), g2)
    assert all(np.allclose(a, b) for a, b in zip(rep.mats, r2.mats))


def test_json_errors(tmp_path):
    with pytest.raises(fg.FormatError):
        fg.group_from_json(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(fg.FormatError):
        fg.group_from_json(bad)
    with pytest.raises(fg.FormatError):
        fg.group_from_json({"names": ["e"]})
    with pytest.raises(fg.GroupError):
        fg.group_from_json({"order": 2, "names": ["e"], "mul": [[0]]})
