"""Benchmark: compiled Cython kernel lane vs the pure-Python fallback.

Runs each workload in a subprocess with QCLASS_KERNEL forcing a lane,
so both lanes are measured in identical fresh interpreters:

    python benchmarks/bench_kernel.py

Workloads cover the three hot paths: raw Laurent-polynomial products,
a full weight-space row reduction, and sparse operator identities.
"""

import json
import os
import subprocess
import sys
import time


def workload_poly_mul():
    import random

    from qclass.coeff import FracScalar, GaussianRational, LaurentPoly, Monomial

    rng = random.Random(42)

    def rnd_poly(nterms):
        out = LaurentPoly.zero()
        for _ in range(nterms):
            m = Monomial(rng.randrange(4), rng.randint(-8, 8), (rng.randint(-3, 3),), 0)
            out = out + LaurentPoly.from_monomial(m).scale(
                GaussianRational.of(rng.randint(-9, 9), rng.randint(-9, 9))
            )
        return out

    polys = [rnd_poly(12) for _ in range(40)]
    acc = FracScalar.one()
    for i in range(600):
        a = polys[i % 40]
        b = polys[(i * 7 + 3) % 40]
        c = a * b + b
        if i % 97 == 0 and not c.is_zero():
            acc = acc * FracScalar(a + b, c)
    return acc.num.n_terms()


def workload_verma_kernels():
    from qclass.rootdata import ClassData, ParamAssignment, delta
    from qclass.verma import VermaEngine

    total = 0
    for cls, mode in (
        (ClassData.make(9, (), 2, 2), "specialized"),
        (ClassData.make(9, (), 2, 2), "generic"),
        (ClassData.make(9, (1, 1), 2, 0), "specialized"),
    ):
        param = getattr(ParamAssignment, mode)(cls)
        eng = VermaEngine(cls, param)
        _, drc, _ = delta(cls)
        ws = eng.space(drc)
        total += ws.dim + len(eng.singular_space(drc))
    return total


def workload_rmatrix_n8():
    from qclass.natrep import check_qybe, check_reflection_relations
    from qclass.rootdata import OrthoRank

    rank = OrthoRank.from_N(8)
    ok = check_qybe(rank)
    res = check_reflection_relations(rank)
    return int(ok) + sum(1 for _, good in res if good)


WORKLOADS = {
    "poly_mul": workload_poly_mul,
    "verma_kernels": workload_verma_kernels,
    "rmatrix_n8": workload_rmatrix_n8,
}


def run_child(name):
    from qclass._core import BACKEND

    fn = WORKLOADS[name]
    t0 = time.perf_counter()
    sentinel = fn()
    dt = time.perf_counter() - t0
    print(json.dumps({"lane": BACKEND, "workload": name, "seconds": dt, "sentinel": sentinel}))


def main():
    if len(sys.argv) > 2 and sys.argv[1] == "--child":
        run_child(sys.argv[2])
        return
    results = {}
    for lane in ("pure", "cython"):
        for name in WORKLOADS:
            env = dict(os.environ, QCLASS_KERNEL=lane)
            proc = subprocess.run(
                [sys.executable, os.path.abspath(__file__), "--child", name],
                capture_output=True,
                text=True,
                env=env,
            )
            if proc.returncode != 0:
                print(f"{lane}/{name}: failed\n{proc.stderr}", file=sys.stderr)
                continue
            obj = json.loads(proc.stdout.strip().splitlines()[-1])
            assert obj["lane"] == lane, f"lane selection failed: {obj}"
            results[(lane, name)] = obj
    print(f"{'workload':<16} {'pure (s)':>10} {'cython (s)':>11} {'speedup':>8}")
    for name in WORKLOADS:
        p = results.get(("pure", name))
        c = results.get(("cython", name))
        if not p or not c:
            continue
        if p["sentinel"] != c["sentinel"]:
            raise SystemExit(f"lane results differ on {name}: {p} vs {c}")
        print(
            f"{name:<16} {p['seconds']:>10.3f} {c['seconds']:>11.3f}"
            f" {p['seconds'] / c['seconds']:>7.2f}x"
        )


if __name__ == "__main__":
    main()
