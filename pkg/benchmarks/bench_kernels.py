"""Compare the compiled kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5] [--json]

Part one times each kernel directly on random integer polynomials. Part two
runs end-to-end workloads (root isolation and CAD builds) in subprocesses,
once per backend, since the backend is chosen at import.
"""
import argparse
import importlib
import json
import os
import random
import subprocess
import sys
import timeit

WORKLOADS = {
    "isolate": (
        "import random\n"
        "from ecad import upoly\n"
        "rng = random.Random(1)\n"
        "polys = [[rng.randint(-99, 99) for _ in range(25)] for _ in range(40)]\n",
        "for p in polys: upoly.isolate(p)",
    ),
    "worked-example": (
        "from ecad.formula import parse_formula\n"
        "from ecad.ecprop import Designation\n"
        "from ecad.lifting import build_cad\n"
        "from ecad.polycore import Polynomial, VariableOrder\n"
        "o = VariableOrder('v u x y z')\n"
        "phi = parse_formula(r'x-y+z^2=0 /\\ z^2-u^2+v^2-1=0 /\\ x+y+z^2=0 /\\ "
        "z^2+u^2-v^2-1=0 /\\ x^2-1>=0 /\\ z>=0', o)\n"
        "D = Designation.from_map({k: Polynomial.parse(s, o) for k, s in "
        "{5: 'x-y+z^2', 4: 'u^2-v^2+x-y+1', 3: 'u^2-v^2+x+1', 2: 'u^2-v^2'}.items()})\n",
        "build_cad(phi, o, D, mode='full')",
    ),
    "sign-invariant-ex1": (
        "from ecad.formula import parse_formula\n"
        "from ecad.ecprop import Designation\n"
        "from ecad.lifting import build_cad\n"
        "from ecad.polycore import VariableOrder\n"
        "o = VariableOrder('x y z')\n"
        "phi = parse_formula(r'x+y^2+z=0 /\\ x-y^2+z=0 /\\ x^2+y^2+z^2-1>=0', o)\n",
        "build_cad(phi, o, Designation(), mode='sign')",
    ),
}


def kernel_table(repeat):
    py = importlib.import_module("ecad._kernels_py")
    try:
        cy = importlib.import_module("ecad._kernels")
    except ImportError:
        return None
    rng = random.Random(0)
    polys = [[rng.randint(-10**12, 10**12) for _ in range(40)] for _ in range(50)]
    calls = {
        "eval_hom": lambda m: [m.eval_hom(p, 355, 113) for p in polys],
        "sign_variations": lambda m: [m.sign_variations(p) for p in polys],
        "taylor_shift1": lambda m: [m.taylor_shift1(p) for p in polys],
        "halve": lambda m: [m.halve(p) for p in polys],
        "descartes_01": lambda m: [m.descartes_01(p) for p in polys],
    }
    rows = []
    for name, fn in calls.items():
        assert fn(py) == fn(cy), name
        t_py = min(timeit.repeat(lambda: fn(py), number=20, repeat=repeat))
        t_cy = min(timeit.repeat(lambda: fn(cy), number=20, repeat=repeat))
        rows.append({"kernel": name, "python_s": t_py, "cython_s": t_cy, "speedup": t_py / t_cy})
    return rows


def workload_time(setup, stmt, pure, repeat):
    env = dict(os.environ)
    if pure:
        env["ECAD_PURE_PYTHON"] = "1"
    else:
        env.pop("ECAD_PURE_PYTHON", None)
    code = (f"import timeit, json\n{setup}\nfrom ecad.kernels import BACKEND\n"
            f"t = min(timeit.repeat({stmt!r}, globals=globals(), number=1, repeat={repeat}))\n"
            "print(json.dumps([BACKEND, t]))")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout
    return json.loads(out)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    kernels = kernel_table(args.repeat)
    workloads = []
    for name, (setup, stmt) in WORKLOADS.items():
        b_cy, t_cy = workload_time(setup, stmt, False, args.repeat)
        b_py, t_py = workload_time(setup, stmt, True, args.repeat)
        workloads.append({"workload": name, "python_s": t_py, "default_s": t_cy,
                          "default_backend": b_cy, "speedup": t_py / t_cy})
    if args.json:
        print(json.dumps({"kernels": kernels, "workloads": workloads}, indent=2))
        return
    if kernels is None:
        print("compiled kernels not built; only the fallback is available")
    else:
        print(f"{'kernel':<18}{'python (s)':>12}{'cython (s)':>12}{'speedup':>9}")
        for r in kernels:
            print(f"{r['kernel']:<18}{r['python_s']:>12.4f}{r['cython_s']:>12.4f}{r['speedup']:>8.1f}x")
    print()
    print(f"{'workload':<20}{'python (s)':>12}{'default (s)':>13}{'speedup':>9}")
    for r in workloads:
        print(f"{r['workload']:<20}{r['python_s']:>12.3f}{r['default_s']:>13.3f}{r['speedup']:>8.2f}x"
              f"  [{r['default_backend']}]")


if __name__ == "__main__":
    main()
