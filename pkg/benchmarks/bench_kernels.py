"""Time the numba kernels against the numpy fallback.

Each backend runs in its own interpreter because the choice is made at import
time from QASMKIT_DISABLE_NUMBA.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, random, sys, time
import numpy as np
from qasmkit import _kernels
from qasmkit.simcheck import unitary
from qasmkit.frontend import parse

repeat = int(sys.argv[1])
rng = random.Random(0)

def best(fn):
    fn()  # warm-up (includes numba compilation)
    ts = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        ts.append(time.perf_counter() - t0)
    return min(ts)

mats = [[rng.getrandbits(64) for _ in range(64)] for _ in range(20)]
words = 4
xs = np.array([[rng.getrandbits(64) for _ in range(words)] for _ in range(2000)], dtype=np.uint64)
zs = np.array([[rng.getrandbits(64) for _ in range(words)] for _ in range(2000)], dtype=np.uint64)
x = np.zeros(words, dtype=np.uint64)
z = np.zeros(words, dtype=np.uint64)
z[0] = 1
xs[:, 0] &= ~np.uint64(1)

lines = []
for _ in range(300):
    a, b = rng.sample(range(10), 2)
    lines.append(f"CX q[{a}],q[{b}];" if rng.random() < 0.4 else f"U(0.1,0.2,0.3) q[{a}];")
prog = parse('OPENQASM 2.0;\nqreg q[10];\n' + "\n".join(lines))

out = {
    "backend": _kernels.BACKEND,
    "gf2_gauss 64x64 (x20)": best(lambda: [_kernels.gf2_gauss(m, 64, 64) for m in mats]),
    "last_anticommuting 2000x256": best(lambda: _kernels.last_anticommuting(xs, zs, x, z, 2000)),
    "unitary 10q / 300 gates": best(lambda: unitary(prog)),
}
print(json.dumps(out))
"""


def run(disable: bool, repeat: int) -> dict:
    env = dict(os.environ)
    env.pop("QASMKIT_DISABLE_NUMBA", None)
    if disable:
        env["QASMKIT_DISABLE_NUMBA"] = "1"
    r = subprocess.run([sys.executable, "-c", WORKER, str(repeat)], env=env,
                       capture_output=True, text=True)
    if r.returncode:
        sys.exit(r.stderr)
    return json.loads(r.stdout)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    fast, slow = run(False, args.repeat), run(True, args.repeat)
    if fast["backend"] != "numba":
        print("numba unavailable; both columns use numpy", file=sys.stderr)
    keys = [k for k in fast if k != "backend"]
    width = max(map(len, keys))
    print(f"{'kernel'.ljust(width)}  {'numba (ms)':>10}  {'numpy (ms)':>10}  {'speed-up':>8}")
    for k in keys:
        a, b = fast[k] * 1e3, slow[k] * 1e3
        print(f"{k.ljust(width)}  {a:10.2f}  {b:10.2f}  {b / a:7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
