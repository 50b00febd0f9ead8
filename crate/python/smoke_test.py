#!/usr/bin/env python3
"""Smoke test for the _split_spectral extension module.

Builds the cdylib with cargo, stages it next to this script under the
importable name, then exercises every exported function against known
exact values.  Run from anywhere:

    python3 python/smoke_test.py
"""

import shutil
import subprocess
import sys
import sysconfig
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def build_and_stage():
    subprocess.run(
        ["cargo", "build", "--release", "-p", "split-spectral-py"],
        cwd=ROOT,
        check=True,
    )
    built = ROOT / "target" / "release" / "lib_split_spectral.so"
    if not built.exists():  # e.g. macOS
        built = ROOT / "target" / "release" / "lib_split_spectral.dylib"
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    staged = Path(__file__).parent / f"_split_spectral{suffix}"
    shutil.copy2(built, staged)
    return staged


def main():
    staged = build_and_stage()
    sys.path.insert(0, str(staged.parent))
    import _split_spectral as ss

    geo = ss.cover_geometry(2, 2)
    assert geo["g_S"] == 17
    assert geo["g_Sbar"] == 7
    assert geo["N"] == 8
    assert geo["dim_prym"] == 10
    assert geo["dim_so_fiber"] == 6

    assert ss.hitchin_base_dims(2, 2) == [3, 7]
    assert ss.hitchin_base_dims(3, 2) == [3, 7, 11]

    assert ss.count_by_m(8, 2) == 28
    assert ss.count_classes(8) == 64
    assert ss.count_classes(60) == 2**58

    classes = ss.enumerate_classes(4)
    assert len(classes) == 4
    assert ("0000", 0) in classes
    assert ss.canonicalize("11110000") == ("00001111", 4)

    prof = ss.degree_profile(2, 2, 0)
    assert prof["deg_U_plus"] == 6
    assert prof["deg_U_minus"] == 2
    assert prof["deg_W"] == 2
    mw = ss.milnor_wood(2, 2, 0)
    assert mw["toledo"] == 2 and mw["within_bound"]

    sw = ss.sw_classes(2, 2, "0x0", "00000000", True)
    assert sw["w1_Vplus"] == "0000"  # norm lands downstairs, length 2g
    assert sw["w2_Vplus"] is False
    assert sw["w2_Vminus"] is True

    bundles = ss.hitchin_bundles(2)
    assert bundles["symplectic"] == [-3, -1, 1, 3]
    assert bundles["orthogonal"] == [-4, -2, 0, 2, 4]
    assert bundles["all_checks_pass"]

    assert ss.gothen_count(2) == 48
    assert ss.gothen_count(3) == 194

    fiber = ss.so_fiber(2, 2)
    assert fiber["dim"] == 6 and fiber["copies"] == 2
    assert fiber["points_per_copy"] == 64

    assert ss.fiber_count("so", 2, 2, 2) == 28
    assert ss.fiber_count("sp", 2, 2, 2) == 28 * 2**14

    entries = ss.convention_ledger(2, 2)
    assert any(e["id"] == "deg_u" and e["resolved"] for e in entries)

    totals = ss.grading_totals(2, 2)
    assert totals["so"] == 64
    assert totals["sp"] == 2 ** (8 - 1 + 14)

    # validation errors surface as ValueError
    for bad in (
        lambda: ss.cover_geometry(0, 2),
        lambda: ss.degree_profile(2, 2, 3),
        lambda: ss.fiber_count("bogus", 2, 2, 2),
        lambda: ss.canonicalize("101"),
    ):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke test passed")


if __name__ == "__main__":
    main()
