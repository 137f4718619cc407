"""Smoke test for the hh1 extension module.

Build first, either with `maturin develop -m crates/python/Cargo.toml` or with
`cargo build --release -p hh1-python --features extension-module`; in the
second case this script loads target/release/libhh1.so directly.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load():
    try:
        import hh1

        return hh1
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for name in ("libhh1.so", "libhh1.dylib", "hh1.dll"):
        path = root / "target" / "release" / name
        if path.exists():
            loader = importlib.machinery.ExtensionFileLoader("hh1", str(path))
            spec = importlib.util.spec_from_file_location("hh1", path, loader=loader)
            module = importlib.util.module_from_spec(spec)
            loader.exec_module(module)
            return module
    sys.exit("hh1 extension not found; build it first")


def main():
    hh1 = load()

    a = hh1.Algebra.smash(3, 2, 1)
    assert a.dim == 27
    assert (a.hh1().dim, a.center_dim()) == (3, 3)
    h = a.smash_hh1()
    assert h.dim_der - h.dim_ider == 3
    assert h.labels == ["g0,0", "g0,1", "g0,2"]
    assert h.bracket_table()[1][2] == [0, 0, 0]
    assert h.bracket_table()[0][1] == [0, 1, 0]
    assert h.pmap_table() == [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    lie = h.lie()
    assert lie.is_trigonalizable()
    torus = lie.maximal_torus()
    assert torus["dim"] == 1 and torus["maximality_status"] == "exhaustively-certified"

    t = hh1.Algebra.trivial_extension_kronecker(3).hh1().lie()
    assert t.fingerprint() == hh1.RestrictedLie.gl2(3).fingerprint()
    assert t.fingerprint()["mu"] == 2

    w = hh1.RestrictedLie.witt(5, 1)
    assert w.dim == 5 and w.is_simple()
    assert not hh1.Algebra.truncated(3, [2]).hh1().lie().is_solvable()

    again = hh1.Algebra.from_json(a.to_json())
    assert again.to_json() == a.to_json()
    try:
        hh1.Algebra.smash(2, 1, 1)
    except ValueError as e:
        assert "p≥3" in str(e)
    else:
        raise AssertionError("p = 2 accepted")

    results = hh1.reproduce(3)
    assert [r["check_id"] for r in results] == hh1.check_ids()
    failed = [r["check_id"] for r in results if r["status"] != "pass"]
    assert not failed, failed
    print(f"smoke test ok: {len(results)} suite checks pass at p=3")


if __name__ == "__main__":
    main()
