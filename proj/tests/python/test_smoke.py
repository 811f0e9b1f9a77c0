"""Smoke test for the python bindings.

Usage: python test_smoke.py <dir-containing-extension>
"""

import math
import sys

sys.path.insert(1, sys.argv[1])

import otlab  # noqa: E402

failures = 0


def check(name, ok, detail=""):
    global failures
    print(f"{'ok  ' if ok else 'FAIL'} {name} {detail}")
    if not ok:
        failures += 1


grid = otlab.gaussian_grid(2.0, 4096)
check("grid widened for scale 2", grid.hi == 17.0 and grid.n == 4096)

std = otlab.Density.gaussian(grid, 0.0, 1.0)
wide = otlab.Density.gaussian(grid, 0.0, 4.0)
check("density normalised", abs(std.mass() - 1.0) < 1e-12)

w = otlab.w2(std, wide)
check("w2 of gaussian dilation", abs(w - 1.0) < 1e-4, f"w2={w:.6f}")

h = otlab.entropy(std)
check("gaussian entropy", abs(h - 1.4189385332046727) < 1e-6, f"h={h:.10f}")

d = otlab.relative_entropy(wide)
check(
    "relative entropy against gaussian reference",
    abs(d - (-math.log(2.0) + 1.5)) < 1e-4,
    f"d={d:.6f}",
)

i = otlab.fisher_information(wide)
check("fisher information", abs(i - 9.0 / 4.0) < 1e-3, f"i={i:.6f}")

mid = otlab.interpolate(std, wide, 0.5)
check("interpolant mass", abs(mid.mass() - 1.0) < 1e-6)
check(
    "interpolant variance",
    abs(mid.moment2() - 1.5**2) < 5e-3,
    f"m2={mid.moment2():.6f}",
)

h_mid = otlab.entropy_along(std, wide, 0.5)
check(
    "entropy along the path",
    abs(h_mid - (h + math.log(1.5))) < 1e-4,
    f"h(0.5)={h_mid:.10f}",
)

flowed = otlab.ou_evolve(wide, 1.0)
var_target = 1.0 + 3.0 * math.exp(-2.0)
check(
    "ornstein-uhlenbeck contraction",
    abs(flowed.moment2() - var_target) < 1e-3,
    f"var={flowed.moment2():.6f}",
)

check("suite registry lists bm", "bm" in otlab.suite_names())

results = otlab.run_suite("sharpness", cells_1d=1024)
check(
    "sharpness suite at reduced size",
    len(results) == 1
    and results[0]["matches_expectation"]
    and results[0]["cases"] == 3,
    f"min_margin={results[0]['min_margin']:+.3e}",
)

try:
    otlab.run_suite("no-such-suite")
    check("unknown suite raises", False)
except otlab.ConfigError:
    check("unknown suite raises", True)

print("smoke:", "PASS" if failures == 0 else f"{failures} FAILURES")
sys.exit(failures)
