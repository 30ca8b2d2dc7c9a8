"""Smoke test for the `artin` extension module.

Run after `cargo build -p artin-py --features extension-module`; the built
library is picked up from target/ when `artin` is not installed.
"""

import importlib.util
import pathlib
import sys


def load_artin():
    try:
        import artin

        return artin
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parent.parent
    for profile in ("release", "debug"):
        for name in ("libartin.so", "libartin.dylib", "artin.dll"):
            lib = root / "target" / profile / name
            if lib.exists():
                spec = importlib.util.spec_from_file_location("artin", lib)
                module = importlib.util.module_from_spec(spec)
                spec.loader.exec_module(module)
                sys.modules["artin"] = module
                return module
    sys.exit("artin extension not found; build it with cargo first")


def main():
    artin = load_artin()

    f7 = artin.Field(7)
    assert (f7.p, f7.n, f7.order) == (7, 1, 7)
    assert f7.mul(3, 5) == 1

    klein = artin.QuotientMap.named(artin.Group(f7, "klein:1"))
    rep, size = klein.inv(2, "general")
    assert rep.is_identity() and size == 1
    assert klein.inv(2, "formula")[0] == rep

    f3 = artin.Field(3)
    assert artin.tripartite_symbol(f3, 1) == 1

    f5 = artin.Field(5)
    rows = artin.pgl2_bijection(f5)
    assert [(tau, order) for tau, _, _, order in rows] == [(1, 3), (2, 4), (3, 6), (4, 5)]

    g3 = artin.QuotientMap.named(artin.Group(f5, "g3"))
    assert g3.num == [1, 2, 0, 1] and g3.den == [0, 4, 1]
    assert [count for _, _, count in g3.census()] == [2, 2, 2]
    for tau in range(5):
        general = g3.inv(tau)
        brute = g3.inv(tau, "brute")
        assert (general is None) == (brute is None)
        assert general is None or general[0] == brute[0]

    shape = artin.Matrix(f3, [0, 2, 1, 0]).factor_shape()
    assert shape == {"t": 2, "count_t": 2, "linear": 0, "kappa": 1, "verified": True}

    f9 = artin.Field(3, 2)
    assert artin.split_test(f9, [f9.parse("[-1]"), 1], 3) is not None
    q_w, q_y, _ = artin.reciprocity(f9, [1], 3)
    assert q_y == [1, 1]

    try:
        artin.Field(6)
    except ValueError:
        pass
    else:
        raise AssertionError("F_6 should be rejected")

    ident, name, passed, cases, failures = artin.run_check(5, 13)
    assert passed and name == "Klein theorem", failures
    print(f"smoke test ok ({cases} Klein-theorem cases)")


if __name__ == "__main__":
    main()
