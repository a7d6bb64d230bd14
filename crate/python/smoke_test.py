#!/usr/bin/env python3
"""Smoke test for the aimkit_py extension module.

Builds the cdylib with cargo, stages it under the import name, then runs a
handful of end-to-end checks against known-small instances.
"""

import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def build_and_import():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "aimkit-py"],
        cwd=REPO,
        check=True,
    )
    built = REPO / "target" / "release" / "libaimkit_py.so"
    if not built.exists():  # e.g. macOS
        built = REPO / "target" / "release" / "libaimkit_py.dylib"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    stage = Path(tempfile.mkdtemp(prefix="aimkit_py_"))
    shutil.copy2(built, stage / f"aimkit_py{suffix}")
    sys.path.insert(0, str(stage))
    import aimkit_py

    return aimkit_py


def main():
    aim = build_and_import()

    # graph basics and text round trip
    g = aim.Graph(4, [(0, 1), (1, 2), (2, 3)])
    assert g.n() == 4 and g.m() == 3
    assert g.degree(1) == 2
    assert g.neighbors(2) == [1, 3]
    assert not g.is_induced_matching()
    assert g.is_aim_deletion_set([0, 3])
    text = g.to_text()
    assert aim.Graph.from_text(text).to_text() == text

    # solver against the brute-force oracle on the Petersen graph
    petersen = aim.gen_named("petersen")
    min_deletion, witness = aim.oracle_min_deletion(petersen)
    got_k, got_witness = aim.min_deletion_k(petersen)
    assert got_k == min_deletion, (got_k, min_deletion)
    assert aim.verify(petersen, got_k, got_witness)
    assert not aim.solve(petersen, min_deletion - 1)["yes"]
    result = aim.solve(petersen, min_deletion)
    assert result["yes"] and len(result["witness"]) <= min_deletion
    assert result["stats"]["nodes_total"] >= 1

    # kernelization on a planted instance: bound and composition
    planted = aim.gen_planted(8, 3, 42)
    reduced = aim.kernelize(planted, 3)
    assert reduced["status"] == "reduced"
    assert reduced["n"] <= 6 * reduced["k"]
    inner_k, inner_witness = aim.min_deletion_k(reduced["graph"])
    composed = sorted(reduced["forced"] + inner_witness)
    assert planted.is_aim_deletion_set(composed)
    assert len(composed) <= 3

    # a budget of zero on a non-matching graph is a NO
    assert aim.kernelize(aim.gen_named("cycle_5"), 0)["status"] == "no"

    # branching factors
    assert abs(aim.branching_factor([1, 3, 3]) - 1.6957) < 1e-3
    assert abs(aim.branching_factor([1, 2]) - 1.6180) < 1e-3
    table = aim.step_factor_table()
    assert len(table) == 9 and all(row["pass"] for row in table)

    # deterministic generation
    a = aim.gen_erdos_renyi(20, 0.2, 7).to_text()
    b = aim.gen_erdos_renyi(20, 0.2, 7).to_text()
    assert a == b

    print("aimkit_py smoke test passed")


if __name__ == "__main__":
    main()
