"""Smoke test for the gridfloer_py extension.

Build it first:

    cargo build -p gridfloer-python --release --features extension-module

then run `python3 python/smoke_test.py`. The extension is loaded from
target/release (or target/debug) unless it is already importable.
"""

import importlib.machinery
import importlib.util
import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load():
    try:
        import gridfloer_py

        return gridfloer_py
    except ImportError:
        pass
    for profile in ("release", "debug"):
        for name in ("libgridfloer_py.so", "libgridfloer_py.dylib", "gridfloer_py.dll"):
            path = ROOT / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("gridfloer_py", str(path))
                spec = importlib.util.spec_from_file_location("gridfloer_py", path, loader=loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                sys.modules["gridfloer_py"] = module
                return module
    sys.exit("gridfloer_py extension not found; build it with cargo first")


def main():
    gf = load()

    unknot = gf.Grid.unknot()
    assert unknot.hfk_hat() == {(0, 0): 1}

    trefoil = gf.Grid.parse("n=5; O=[0,1,2,3,4]; X=[2,3,4,0,1]")
    assert trefoil == gf.Grid.trefoil()
    assert trefoil.alexander() == "q^-1 - 1 + q"
    report = trefoil.report()
    assert report["hfk_hat"] == {(0, -1): 1, (1, 0): 1, (2, 1): 1}
    assert (report["genus"], report["tau"], report["fibered"]) == (1, -1, True)
    assert report["torsions"] == [((1, 0), 1)]
    assert trefoil.mirror().report()["tau"] == 1

    exported = json.loads(trefoil.labeled_complex())
    assert len(exported["generators"]) == 120
    grading = {g["id"]: (g["M"], g["A"]) for g in exported["generators"]}
    for a in exported["arrows"]:
        (m0, a0), (m1, a1) = grading[a["from"]], grading[a["to"]]
        assert m0 - m1 == 1 - 2 * a["o_count"] and a0 - a1 == a["x_count"] - a["o_count"]

    moved = trefoil.random_moves(20, seed=5, max_n=7)
    assert moved.n <= 7 and moved.hfk_hat() == report["hfk_hat"]

    fig8 = gf.Grid.figure_eight()
    assert fig8.hfk_hat() == {(-1, -1): 1, (0, 0): 3, (1, 1): 1}

    try:
        gf.Grid([0, 1], [0, 1])
    except ValueError:
        pass
    else:
        raise AssertionError("coincident markings accepted")

    left = gf.Model.bundled("trefoil-left")
    plus_one = gf.surgery_homology(left, 1)
    assert [(c["towers"], c["finite_rank"]) for c in plus_one] == [(1, 1)]
    assert [(c["towers"], c["finite_rank"]) for c in gf.surgery_homology(left, -1)] == [(1, 0)]
    assert gf.large_surgery(left, 0)["hat_rank"] == 3
    assert len(gf.surgery_homology(gf.Model.bundled("unknot"), 5)) == 5

    assert gf.staircase("q^-1 - 1 + q") == ([-1, 0, 1], [-2, -1, 0])
    right = gf.Model.staircase("q^-1 - 1 + q")
    assert right.hat_ranks() == {(-2, -1): 1, (-1, 0): 1, (0, 1): 1}
    assert gf.Model.load(right.to_json()).hat_ranks() == right.hat_ranks()

    print("gridfloer_py", gf.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
