"""Smoke test for the idealcore extension module.

Run after `maturin develop` (from crates/py), or directly after
`cargo build -p idealcore-py --release`: the built library is then loaded
from the workspace target directory.
"""

import importlib.machinery
import importlib.util
import pathlib
import sys


def load():
    try:
        import idealcore

        return idealcore
    except ImportError:
        pass
    root = pathlib.Path(__file__).resolve().parents[3]
    for profile in ("release", "debug"):
        for name in ("libidealcore_py.so", "libidealcore_py.dylib", "idealcore_py.dll"):
            path = root / "target" / profile / name
            if path.exists():
                loader = importlib.machinery.ExtensionFileLoader("idealcore", str(path))
                spec = importlib.util.spec_from_loader("idealcore", loader)
                module = importlib.util.module_from_spec(spec)
                loader.exec_module(module)
                sys.modules["idealcore"] = module
                return module
    sys.exit("idealcore extension not found; build it with `cargo build -p idealcore-py --release`")


def main():
    ic = load()
    R = ic.Ring("x,y,z,w")
    x, y, z, w = (R(v) for v in R.variables)

    i2 = R.ideal([x**2 + y * w, y**2 + z * w, z**2 + x * w])
    i = i2 + R.maximal_ideal_power(3)
    j = R.ideal(["x^2+y*w", "y^2+z*w", "z^2+x*w", "w^3"])
    assert i.contains(j)
    assert i**2 == j * i
    assert i2.krull_dimension() == 1

    report = ic.core(i, reduction=j)
    core = R.ideal(report["core"])
    assert core == i**2
    assert report["samples"][0]["certificate"]["reduction_number"] == 1
    assert not R.maximal_ideal_power(5).contains(core)

    fp = ic.Ring("x,y,z,w", characteristic=32003)
    core_m2 = ic.core_ideal(fp.maximal_ideal_power(2), samples=1)
    assert core_m2 == fp.maximal_ideal_power(5)

    checks = ic.verify_counterexample(characteristic=32003)["checks"]
    assert [c["pass"] for c in checks] == [True] * 6, checks

    assert ic.conjecture_exponents(4, 3, 2) == (0, 2)
    assert ic.theorem_d1_multiplier_formula(4, 2) == (1, 1)
    assert ic.check_conjecture(3, 2, 1, seed=1)["verdict"] == "EQUAL"

    try:
        R.parse("x^^2")
    except ValueError:
        pass
    else:
        raise AssertionError("parse error not raised")

    print(f"idealcore {ic.__version__}: smoke test passed")


if __name__ == "__main__":
    main()
