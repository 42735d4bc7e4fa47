"""Command-line driver: named verification suites over a class config.

    qclass verify <suite> --config class.json [--mode generic|specialized]
                  [--out report.json] [--format json|text] [--jobs K]

The config file carries the class datum {"N": .., "gl_blocks": [..],
"m": .., "p": ..} and optionally {"caps": {"word_cap": ..}}.  Reports
are deterministic for a fixed config: the canonical portion excludes
wall times.  Exit codes: 0 all checks pass, 1 check failure, 2 config
error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from qclass.coeff import FracScalar, Monomial
from qclass.rootdata import (
    ClassData,
    ClassDataError,
    ParamAssignment,
    delta,
    kostant_dim,
)
from qclass.rowreduce import RowSpace, SparseVec, poly_rank
from qclass.verma import ResourceCapError, VermaEngine, word_cap_from_env

SCHEMA_VERSION = 1
SUITES = ("rmatrix", "verma", "singular", "tensor", "spectra", "all")


@dataclass
class SuiteConfig:
    suite: str
    cls: ClassData
    mode: str = "specialized"
    word_cap: int = None
    window_cap: int = 1200
    out: str = None
    fmt: str = "text"
    jobs: int = 1

    def __post_init__(self):
        if self.suite not in SUITES:
            raise ValueError(f"unknown suite {self.suite!r}")
        if self.mode not in ("specialized", "generic"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.word_cap is None:
            self.word_cap = word_cap_from_env()
        if self.word_cap <= 0 or self.window_cap <= 0:
            raise ValueError("caps must be positive")


@dataclass
class CheckRecord:
    id: str
    claim: str
    status: str  # pass | fail | skipped | cap
    witness: str = ""
    wall_time_ms: int = 0

    def as_json(self, with_time=True):
        obj = {
            "id": self.id,
            "claim": self.claim,
            "status": self.status,
            "witness": self.witness,
        }
        if with_time:
            obj["wall_time_ms"] = self.wall_time_ms
        return obj


@dataclass
class Report:
    suite: str
    config: dict
    checks: list = field(default_factory=list)
    total_ms: int = 0

    @property
    def passed(self) -> bool:
        return all(c.status in ("pass", "skipped") for c in self.checks)

    @property
    def capped(self) -> bool:
        return any(c.status == "cap" for c in self.checks)

    def as_json(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "checks": [c.as_json() for c in sorted(self.checks, key=lambda c: c.id)],
            "timing": {"total_ms": self.total_ms},
        }

    def canonical_json(self) -> str:
        """Deterministic portion: no wall times."""
        obj = {
            "schema_version": SCHEMA_VERSION,
            "suite": self.suite,
            "config": self.config,
            "passed": self.passed,
            "checks": [
                c.as_json(with_time=False)
                for c in sorted(self.checks, key=lambda c: c.id)
            ],
        }
        return json.dumps(obj, sort_keys=True, separators=(",", ":"))

    def as_text(self):
        lines = []
        for c in sorted(self.checks, key=lambda c: c.id):
            mark = {"pass": "PASS", "fail": "FAIL", "skipped": "SKIP", "cap": "CAP "}[
                c.status
            ]
            w = f"  [{c.witness}]" if c.witness else ""
            lines.append(f"[{mark}] {c.id}: {c.claim}{w}  ({c.wall_time_ms} ms)")
        lines.append(
            f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"
            f" ({len(self.checks)} checks, {self.total_ms} ms)"
        )
        return "\n".join(lines)


class SuiteContext:
    """Shared lazily-built engines for one run."""

    def __init__(self, config: SuiteConfig):
        self.config = config
        self.cls = config.cls
        self.param = (
            ParamAssignment.specialized(self.cls)
            if config.mode == "specialized"
            else ParamAssignment.generic(self.cls)
        )
        self._verma = {}
        self._tensor = None

    def verma(self, mode=None) -> VermaEngine:
        mode = mode or self.config.mode
        if mode not in self._verma:
            p = (
                ParamAssignment.specialized(self.cls)
                if mode == "specialized"
                else ParamAssignment.generic(self.cls)
            )
            self._verma[mode] = VermaEngine(self.cls, p, self.config.word_cap)
        return self._verma[mode]

    def tensor(self):
        if self._tensor is None:
            from qclass.tensor import TensorEngine

            self._tensor = TensorEngine(
                self.cls, self.param, self.config.word_cap
            )
        return self._tensor


# ----------------------------------------------------------------------
# check implementations
# ----------------------------------------------------------------------


def _rmatrix_checks(ctx: SuiteContext):
    from qclass import natrep, spectra

    rank = ctx.cls.rank
    N = ctx.cls.N

    def defining(_):
        nat = natrep.build_natrep(rank)
        bad = [r for r, ok in natrep.check_defining_relations(nat) if not ok]
        return ("pass" if not bad else "fail", ";".join(bad[:4]))

    def qybe(_):
        return ("pass" if natrep.check_qybe(rank) else "fail", "exact zero residual")

    def spectrum(_):
        ev = natrep.s_eigenvalues(rank)
        return ("pass", " ".join(str(c) for c in ev))

    def kappa_idem(_):
        K = natrep.kappa(rank)
        ok = (K * K - K).is_zero()
        rows = RowSpace()
        for i, row in K.rows.items():
            rows.insert(SparseVec(row))
        ok = ok and rows.rank == 1
        return ("pass" if ok else "fail", f"rank {rows.rank}")

    def kappa_scalar(_):
        K = natrep.kappa(rank)
        S = natrep.smatrix(rank)
        c = FracScalar.from_monomial(Monomial(s_exp=2 * (1 - N)))
        ok = (S * K - K.scale(c)).is_zero()
        return ("pass" if ok else "fail", f"q^(1-N) = q^{1 - N}")

    def reflection(_):
        res = natrep.check_reflection_relations(rank)
        bad = [r for r, ok in res if not ok]
        return ("pass" if not bad else "fail", ";".join(bad))

    def invariance(_):
        res = natrep.check_invariance(rank)
        bad = [r for r, ok in res if not ok]
        return ("pass" if not bad else "fail", ";".join(bad[:4]))

    def anchor(_):
        ok, sq, tg = spectra.check_spectrum_anchor(rank)
        return ("pass" if ok else "fail", "S^2 spectrum = {q^2, q^-2, q^(2-2N)}")

    return [
        ("rmatrix.defining_relations", "natural representation satisfies all defining relations", defining),
        ("rmatrix.qybe", "R12 R13 R23 = R23 R13 R12 exactly", qybe),
        ("rmatrix.s_three_eigenvalues", "S has exactly three distinct eigenvalue monomials", spectrum),
        ("rmatrix.kappa_idempotent", "kappa^2 = kappa with rank one", kappa_idem),
        ("rmatrix.kappa_scalar", "Qh2 S12 Qh2 kappa = q^(1-N) kappa, both sides", kappa_scalar),
        ("rmatrix.reflection", "evaluated exchange and kappa relations hold exactly", reflection),
        ("rmatrix.invariance", "S commutes with every coproduct image", invariance),
        ("rmatrix.spectrum_anchor", "S^2 spectrum matches the highest-weight eigenvalue formula", anchor),
    ]


def _verma_checks(ctx: SuiteContext):
    cls = ctx.cls
    _, drc, _ = delta(cls)

    def dim_delta(_):
        ws = ctx.verma().space(drc)
        expected = kostant_dim(cls, drc)
        extra = ""
        if cls.is_symmetric():
            ok = ws.dim == cls.N - 3 == expected
            extra = f"dim {ws.dim}, N-3 = {cls.N - 3}"
        else:
            ok = ws.dim == expected
            extra = f"dim {ws.dim}, partition count {expected}"
        return ("pass" if ok else "fail", extra)

    def kostant_box(_):
        eng = ctx.verma()
        for i in range(cls.n):
            if drc[i] == 0:
                continue
            b = list(drc)
            b[i] -= 1
            ws = eng.space(tuple(b))
            if ws.dim != kostant_dim(cls, tuple(b)):
                return ("fail", f"mismatch at {tuple(b)}")
        return ("pass", "dims match the partition-count oracle below the top")

    def ker_e1(_):
        from qclass.singular import verify_lemma

        res = verify_lemma("basis", cls, ctx.verma().param, ctx.verma())
        row = [r for r in res if r[0] == "ker_e1_dim"][0]
        return (row[1], row[2])

    def shapo(_):
        eng = ctx.verma()
        sh = cls.shift
        from qclass.coeff import gauss_bracket
        from qclass.rootdata import simple_roots

        val = eng.shapovalov((2 + sh,), (2 + sh,))
        target = gauss_bracket(eng.param.q_on_weight(simple_roots(cls.rank)[1 + sh]))
        return ("pass" if val == target else "fail", f"<omega*, omega> = {val}")

    def gram(_):
        eng = ctx.verma()
        ws = eng.space(drc)
        basis = ws.basis_words()
        cols = list(range(len(basis)))
        rows = []
        for bi in basis:
            r = SparseVec()
            for j, bj in enumerate(basis):
                v = eng.shapovalov(bi, bj)
                if not v.is_zero():
                    r[j] = v
            rows.append(r)
        rank_val = poly_rank(rows, cols)
        if eng.param.mode == "specialized":
            ok = rank_val < len(basis)
            w = f"rank {rank_val} < dim {len(basis)}: singular vector in the radical"
        else:
            ok = rank_val == len(basis)
            w = f"rank {rank_val} = dim {len(basis)}: nondegenerate"
        return ("pass" if ok else "fail", w)

    return [
        ("verma.dim_top_minus_delta", "weight space below the top by delta has the predicted dimension", dim_delta),
        ("verma.kostant_consistency", "weight-space dimensions match the partition-count oracle", kostant_box),
        ("verma.ker_e1_dim", "kernel of the first raising operator has dimension n-1", ker_e1),
        ("verma.shapovalov_omega", "pairing of omega with itself equals the boundary bracket", shapo),
        ("verma.gram_radical", "Shapovalov Gram rank drops exactly in specialized mode", gram),
    ]


def _singular_checks(ctx: SuiteContext):
    from qclass.singular import (
        LEMMA_NAMES,
        recurrence_residuals,
        verify_lemma,
        verify_singular,
    )

    cls = ctx.cls
    out = []

    def lemma_runner(name):
        def run(_):
            res = verify_lemma(name, cls, ctx.verma().param, ctx.verma())
            bad = [r for r in res if r[1] == "fail"]
            skipped = [r for r in res if r[1] == "skipped"]
            if bad:
                return ("fail", ";".join(f"{r[0]}" for r in bad))
            if skipped and len(skipped) == len(res):
                return ("skipped", skipped[0][2])
            return ("pass", f"{len(res)} subchecks")

        return run

    claims = {
        "omega_f": "omega is annihilated by the middle lowering operators",
        "omega_e": "omega is annihilated by all raising operators but the last",
        "y_zero": "the commutator family y_k vanishes (rank-2 exception reproduced)",
        "x_ker": "every x_i lies in the kernel of the first raising operator",
        "xprime_nonzero": "every witness x'_i is nonzero",
        "e_action": "raising operators act on the x family by the selection rule",
        "basis": "the x family is a basis of the kernel at the critical weight",
    }
    for name in LEMMA_NAMES:
        out.append((f"singular.{name}", claims[name], lemma_runner(name)))

    def recur(_):
        rr = recurrence_residuals(cls.rank.series, cls.p + 2)
        bad = [lab for lab, v in rr if not v.is_zero()]
        return ("pass" if not bad else "fail", ";".join(bad) or f"{len(rr)} equations")

    out.append(
        (
            "singular.coeff_recurrence",
            "closed-form coefficients satisfy the recurrent system exactly",
            recur,
        )
    )

    def sing_main(_):
        res = verify_singular(cls, ctx.verma().param, ctx.verma())
        bad = [r for r in res if r[1] == "fail"]
        wit = "; ".join(f"{r[0]}: {r[2]}" for r in res if r[2])
        return ("pass" if not bad else "fail", wit[:220])

    mode = ctx.config.mode
    claim = (
        "singular space at the critical weight is one dimensional and matches sum c_i x_i"
        if mode == "specialized"
        else "singular space at the critical weight is zero dimensional for formal weight"
    )
    out.append((f"singular.{mode}_direction", claim, sing_main))

    if mode == "specialized":

        def sing_generic(_):
            res = verify_singular(cls, ctx.verma("generic").param, ctx.verma("generic"))
            bad = [r for r in res if r[1] == "fail"]
            return ("pass" if not bad else "fail", "; ".join(r[0] for r in res))

        out.append(
            (
                "singular.generic_direction",
                "singular space is zero dimensional for formal weight",
                sing_generic,
            )
        )
    return out


def _tensor_checks(ctx: SuiteContext):
    from qclass.tensor import (
        check_u_nu2_singular,
        verify_filtration,
        verify_span,
        verify_u_nu2_congruence,
    )

    cls = ctx.cls
    out = []
    if ctx.config.mode != "specialized":

        def needs_specialized(_):
            return ("skipped", "quotient-module checks need the specialized weight")

        return [
            (
                "tensor.quotient_checks",
                "filtration and span live in the quotient module",
                needs_specialized,
            )
        ]

    def run_list(fn):
        def run(_):
            res = fn(cls, ctx.param, ctx.tensor())
            bad = [r for r in res if r[1] == "fail"]
            return ("pass" if not bad else "fail", ";".join(r[0] for r in bad) or f"{len(res)} subchecks")

        return run

    if cls.is_symmetric():
        out.append(
            (
                "tensor.u_nu2_singular",
                "the explicit second vector is singular in the tensor module",
                run_list(check_u_nu2_singular),
            )
        )
        out.append(
            (
                "tensor.u_nu2_congruence",
                "second vector matches its stated multiple modulo the first submodule",
                run_list(verify_u_nu2_congruence),
            )
        )
    out.append(
        (
            "tensor.filtration",
            "filtration generators are graded highest vectors; stage l+2 captures stage l+3",
            run_list(verify_filtration),
        )
    )

    def span(_):
        # desk-scale guard: the bottom window weight must stay enumerable
        from math import factorial

        from qclass.rootdata import eps, root_coords

        bottom = root_coords(cls.rank, eps(cls.n, 1).scaled(2))
        est = factorial(sum(bottom))
        for c in bottom:
            est //= factorial(c)
        if sum(bottom) > ctx.config.word_cap:
            return ("skipped", f"window height {sum(bottom)} exceeds the word cap")
        if est > ctx.config.window_cap:
            return ("skipped", f"window word count {est} > cap {ctx.config.window_cap}")
        res = verify_span(cls, ctx.param, ctx.tensor())
        bad = [r for r in res if r[1] == "fail"]
        return ("pass" if not bad else "fail", ";".join(r[0] for r in res))

    out.append(
        (
            "tensor.span",
            "all basis tensors against the top vector lie in the last stage",
            span,
        )
    )
    return out


def _spectra_checks(ctx: SuiteContext):
    from qclass import spectra

    cls = ctx.cls
    rank = cls.rank
    param = ctx.param
    out = []

    def ev_count(_):
        ev = spectra.q_eigenvalues(cls, param, quotient=True)
        ok = len(ev.entries) == 2 * cls.ell + 2
        return ("pass" if ok else "fail", f"{len(ev.entries)} entries")

    def ev_distinct(_):
        ev = spectra.q_eigenvalues(cls, param, quotient=True)
        ok = ev.pairwise_distinct()
        return ("pass" if ok else "fail", " ".join(str(m) for m in ev.monomials()))

    def ev_hw_match(_):
        ev = spectra.q_eigenvalues(cls, param, quotient=False)
        hw = spectra.q_eigenvalues_from_hw(cls, param)
        ok = sorted(m.key() for m in ev.monomials()) == sorted(m.key() for m in hw)
        return ("pass" if ok else "fail", "mu-parameter list = highest-weight formula list")

    def limit_roots(_):
        if ctx.config.mode != "specialized":
            return ("skipped", "the classical limit needs the specialized weight")
        ev = spectra.q_eigenvalues(cls, param, quotient=True)
        cl = sorted(spectra.min_poly_roots(cls, param, "classical"))
        ok = ev.s1_limit_multiset() == cl
        return ("pass" if ok else "fail", "s -> 1 limits equal the classical root list")

    def minpoly_degree(_):
        q = spectra.min_poly_roots(cls, param, "quantum")
        c = spectra.min_poly_roots(cls, param, "classical")
        ok = len(q) == 2 * cls.ell + 2 and len(c) == 2 * cls.ell + 2
        return ("pass" if ok else "fail", f"degree {len(q)}")

    def anchor(_):
        ok, _, _ = spectra.check_spectrum_anchor(rank)
        return ("pass" if ok else "fail", "")

    out.extend(
        [
            ("spectra.eigenvalue_count", "quotient eigenvalue list has 2l+2 entries", ev_count),
            ("spectra.eigenvalue_distinct", "quotient eigenvalues are pairwise distinct signed monomials", ev_distinct),
            ("spectra.eigenvalue_hw_match", "mu-parameter eigenvalues equal the highest-weight formula", ev_hw_match),
            ("spectra.classical_limit_roots", "s -> 1 eigenvalue limits give the classical minimal polynomial", limit_roots),
            ("spectra.minpoly_degree", "reduced minimal polynomial has degree 2l+2", minpoly_degree),
            ("spectra.spectrum_anchor", "S^2 spectrum matches the highest-weight formula", anchor),
        ]
    )

    def qtrace_k(k):
        def run(_):
            if cls.N > 8:
                return ("skipped", "anchor is run at N <= 8")
            ok, scalar = spectra.check_qtrace_central(rank, k)
            return ("pass" if ok else "fail", f"central scalar verified exactly (k={k})")

        return run

    out.append(("spectra.qtrace_central_k1", "partial q-trace of S^2 is the k=1 central scalar", qtrace_k(1)))
    out.append(("spectra.qtrace_central_k2", "partial q-trace of S^4 is the k=2 central scalar", qtrace_k(2)))

    def trace_limit(_):
        zetas = tuple(Fraction(2 * i + 1, 2) for i in range(1, cls.ell + 1))
        worst = 0.0
        for k in range(1, 5):
            rel, _, _ = spectra.trace_classical_limit_check(cls, k, zetas=zetas)
            worst = max(worst, rel)
        ok = worst <= 1e-6
        return ("pass" if ok else "fail", f"worst relative error {worst:.2e}")

    out.append(
        (
            "spectra.trace_classical_limit",
            "q-trace characters approach the classical traces as q -> 1",
            trace_limit,
        )
    )

    def ideal(_):
        zetas = tuple(Fraction(2 * i + 1, 2) for i in range(1, cls.ell + 1))
        res = spectra.classical_ideal_check(cls, spectra.ClassicalPoint(zetas))
        bad = [r for r, ok, _ in res if not ok]
        wit = [w for r, ok, w in res if r == "jacobian_rank"][0]
        return ("pass" if not bad else "fail", wit)

    out.append(
        (
            "spectra.classical_ideal",
            "initial point satisfies the ideal and the Jacobian rank is exact",
            ideal,
        )
    )
    return out


_BUILDERS = {
    "rmatrix": _rmatrix_checks,
    "verma": _verma_checks,
    "singular": _singular_checks,
    "tensor": _tensor_checks,
    "spectra": _spectra_checks,
}


def build_checks(ctx: SuiteContext):
    names = (
        ("rmatrix", "verma", "singular", "tensor", "spectra")
        if ctx.config.suite == "all"
        else (ctx.config.suite,)
    )
    out = []
    for n in names:
        out.extend(_BUILDERS[n](ctx))
    return out


def run_suite(config: SuiteConfig) -> Report:
    ctx = SuiteContext(config)
    checks = build_checks(ctx)
    report = Report(suite=config.suite, config=_config_json(config))
    t_start = time.monotonic()

    def run_one(item):
        cid, claim, fn = item
        t0 = time.monotonic()
        try:
            status, witness = fn(ctx)
        except ResourceCapError as exc:
            status, witness = "cap", str(exc)
        except Exception as exc:  # surface the offending check, keep running
            status, witness = "fail", f"{type(exc).__name__}: {exc}"
        ms = int((time.monotonic() - t0) * 1000)
        return CheckRecord(cid, claim, status, witness, ms)

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            report.checks = list(pool.map(run_one, checks))
    else:
        report.checks = [run_one(c) for c in checks]
    report.total_ms = int((time.monotonic() - t_start) * 1000)
    return report


def _config_json(config: SuiteConfig):
    return {
        "class": config.cls.to_json(),
        "mode": config.mode,
        "caps": {"word_cap": config.word_cap, "window_cap": config.window_cap},
    }


def load_config(path: str, suite: str, args) -> SuiteConfig:
    with open(path) as fh:
        obj = json.load(fh)
    cls_obj = obj.get("class", obj)
    cls = ClassData.from_json(cls_obj)
    caps = obj.get("caps", {})
    return SuiteConfig(
        suite=suite,
        cls=cls,
        mode=args.mode,
        word_cap=caps.get("word_cap"),
        window_cap=caps.get("window_cap", 1200),
        out=args.out,
        fmt=args.format,
        jobs=args.jobs,
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qclass",
        description="exact verification suites for quantum conjugacy classes",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    ver = sub.add_parser("verify", help="run a named verification suite")
    ver.add_argument("suite", choices=SUITES)
    ver.add_argument("--config", required=True, help="class config JSON")
    ver.add_argument("--mode", choices=("generic", "specialized"), default="specialized")
    ver.add_argument("--out", default=None, help="write the JSON report here")
    ver.add_argument("--format", choices=("json", "text"), default="text")
    ver.add_argument("--jobs", type=int, default=1)
    args = parser.parse_args(argv)

    try:
        config = load_config(args.config, args.suite, args)
    except (OSError, json.JSONDecodeError, ClassDataError, ValueError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2

    report = run_suite(config)
    if config.out:
        with open(config.out, "w") as fh:
            json.dump(report.as_json(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    if config.fmt == "json":
        print(json.dumps(report.as_json(), indent=2, sort_keys=True))
    else:
        print(report.as_text())
    if report.capped:
        return 3
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
