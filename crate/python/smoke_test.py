"""Smoke test for the quivercanon extension module."""

import json

import quivercanon as qc


def check_chain():
    # identity chain 1 -> 2 -> 3 of dimension 2 is L(1,3) twice
    eye = [[1, 0], [0, 1]]
    rep = qc.Representation("chain", ">>", [2, 2, 2], [eye, eye])
    res = qc.canon(rep)
    assert res.labels == [("L", 1, 3), ("L", 1, 3)], res.labels
    assert res.multiplicities == {(1, 3): 2}
    assert res.residual <= 1e-12


def check_cycle():
    spec = {
        "kind": "cycle",
        "t": 3,
        "orientations": "><>",
        "labels": [{"G": [2, 5]}, {"G": [1, 1]}],
        "regular_eigs": [[2.0, 0.0], [1.0, 1.0]],
        "seed": 7,
    }
    rep, truth = qc.plant(json.dumps(spec))
    assert json.loads(truth)["seed"] == 7
    dec = qc.regularize(rep)
    assert sorted(dec.labels) == [("G", 1, 1), ("G", 2, 5)], dec.labels
    assert dec.regular_dim == 2
    eigs = sorted(dec.eigenvalues, key=lambda z: (z.real, z.imag))
    for got, want in zip(eigs, [1 + 1j, 2 + 0j]):
        assert abs(got - want) < 1e-6, eigs
    assert set(dec.passes) <= {1, 2}


def check_round_trip():
    g = qc.Representation.indecomposable("cycle", "><<>><", "G", 1, 9)
    assert g.dims == [2, 2, 2, 1, 1, 1]
    back = qc.Representation.from_json(g.to_json())
    assert back.matrices == g.matrices
    assert g.transpose().orientations == "<>><<>"


def check_errors():
    try:
        qc.Representation("chain", ">", [1, 1], [[[1, 2]]])
    except ValueError:
        pass
    else:
        raise AssertionError("bad shape accepted")
    u = qc.random_unitary(3, 1)
    assert len(u) == 3 and len(u[0]) == 3


if __name__ == "__main__":
    check_chain()
    check_cycle()
    check_round_trip()
    check_errors()
    print("quivercanon smoke test passed")
