"""Acceptance criteria, one test each.

Every test records a one-line verdict; the lines are printed in the pytest
terminal summary (see conftest.py) and also when this file is run directly.
Timed criteria run the command-line tool in a fresh interpreter so that no
warm cache from other tests can flatter the numbers.
"""

from __future__ import annotations

import json
import math
import os
import subprocess
import sys
import time
from contextlib import contextmanager

import pytest

from zetareg import oracles
from zetareg import regprod as rp
from zetareg import tmdirichlet as tm
from zetareg import verify
from zetareg.cli import parse_complex
from zetareg.mpcore import PrecisionContext

REPORT: list[str] = []


@contextmanager
def criterion(number: int, title: str):
    """Record PASS/FAIL for one criterion; details are appended via the yielded list."""
    details: list[str] = []
    ok = False
    try:
        yield details
        ok = True
    finally:
        status = "PASS" if ok else "FAIL"
        line = f"#{number:<2} {status}  {title}"
        if details:
            line += "  [" + "; ".join(details) + "]"
        REPORT.append(line)
        print(line)


def _clean_env() -> dict:
    env = {k: v for k, v in os.environ.items() if not k.startswith("REGPROD_")}
    return env


def regprod(*argv: str) -> tuple[subprocess.CompletedProcess, float]:
    t0 = time.perf_counter()
    r = subprocess.run([sys.executable, "-m", "zetareg", *argv], capture_output=True,
                       env=_clean_env())
    return r, time.perf_counter() - t0


def verify_records(suite: str, digits: int) -> tuple[dict, float, int]:
    r, elapsed = regprod("verify", "--suite", suite, "--digits", str(digits), "--json")
    records = {}
    for line in r.stdout.decode().splitlines():
        rec = json.loads(line)
        records[rec["name"].split("/", 1)[1]] = rec
    return records, elapsed, r.returncode


def digits_of(rec: dict) -> float:
    return float(rec["value"])


@pytest.fixture(scope="module")
def theorem_run():
    return verify_records("theorem", 70)


@pytest.fixture(scope="module")
def properties_run():
    return verify_records("properties", 60)


def test_01_flajolet_martin_digits():
    with criterion(1, "constant phi --digits 5 prints 0.77351 in < 60 s") as d:
        r, elapsed = regprod("constant", "phi", "--digits", "5")
        out = r.stdout.decode().strip()
        d += [f"output {out!r}", f"{elapsed:.1f} s"]
        assert r.returncode == 0
        assert out == "0.77351"
        assert elapsed < 60


def test_02_partition_identity(theorem_run):
    records, elapsed, _ = theorem_run
    with criterion(2, "odious * evil = sqrt(2 pi) to >= 70 digits in < 60 s") as d:
        rec = records["odious*evil = sqrt(2 pi)"]
        d += [f"{digits_of(rec):.1f} digits", f"suite {elapsed:.1f} s"]
        assert digits_of(rec) >= 70
        assert elapsed < 60


def test_03_abstract_identity(theorem_run):
    records, elapsed, _ = theorem_run
    with criterion(3, "odious = pi^(1/4) sqrt(2 phi e^-gamma) to >= 50 digits in < 60 s") as d:
        rec = records["odious = pi^(1/4) sqrt(2 phi e^-gamma)"]
        d += [f"{digits_of(rec):.1f} digits", f"suite {elapsed:.1f} s"]
        assert digits_of(rec) >= 50
        assert elapsed < 60


def test_04_g_at_zero(theorem_run):
    records, _, _ = theorem_run
    with criterion(4, "g(0) = -1 to >= 70 digits via the functional equation") as d:
        ctx = PrecisionContext()
        ev = tm.g(0, ctx, method=tm.Method.FUNCTIONAL_EQUATION)
        gap = abs(ev.value.re.value + 1) + ev.value.error_radius
        got = math.inf if gap == 0 else float(-ctx.mp.log10(gap))
        d += [f"{got:.1f} digits" if math.isfinite(got) else "exact", f"method {ev.method.value}"]
        assert ev.method is tm.Method.FUNCTIONAL_EQUATION
        assert got >= 70
        assert digits_of(records["g(0) = -1 (functional equation)"]) >= 70


def test_05_shifted_products(theorem_run):
    records, _, _ = theorem_run
    with criterion(5, "shifted odious/evil to >= 30 digits, f'(0) = log(2)/2 to >= 50") as d:
        so = digits_of(records["shifted-odious = 2^(1/2) pi^(1/4)"])
        se = digits_of(records["shifted-evil = pi^(1/4)"])
        fp = digits_of(records["f'(0) = log(2)/2"])
        d += [f"odious {so:.1f}", f"evil {se:.1f}", f"f'(0) {fp:.1f}"]
        assert so >= 30 and se >= 30 and fp >= 50


def test_06_catalog():
    with criterion(6, "catalog identities to >= 50 digits, suite < 5 min") as d:
        records, elapsed, code = verify_records("catalog", 50)
        rows = {k: v for k, v in records.items() if not k.startswith("Glaisher")}
        worst = min(rows.items(), key=lambda kv: digits_of(kv[1]))
        d += [f"{len(rows)} identities", f"worst {digits_of(worst[1]):.1f} ({worst[0]})",
              f"{elapsed:.1f} s"]
        assert code == 0
        assert len(rows) == 10 + len(verify.LERCH_GRID) + len(verify.QUADRATIC_GRID)
        assert all(digits_of(r) >= 50 for r in rows.values())
        assert elapsed < 300


def test_07_glaisher():
    with criterion(7, "Glaisher formulas agree to >= 40 digits; A = 1.2824271...") as d:
        a1, a2 = __import__("zetareg.specialfns", fromlist=["x"]).glaisher_routes(PrecisionContext())
        from zetareg.mpcore import agreement_digits

        got = agreement_digits(a1, a2)
        r, _ = regprod("constant", "glaisher", "--digits", "8")
        out = r.stdout.decode().strip()
        d += [f"{got:.1f} digits", f"output {out!r}"]
        assert got >= 40
        assert out == "1.2824271"


def test_08_oracle_concordance():
    with criterion(8, "oracles at N = 10^7: Q and phi within 1e-5, zeta_odious(2) within estimate") as d:
        ctx = PrecisionContext()
        n = 10**7
        q_est = oracles.q_product_oracle(n, ctx)
        phi_est = oracles.phi_product_oracle(n, ctx)
        zo_est = oracles.dirichlet_partial("zeta_odious", 2, n, ctx)
        dq = abs(float(q_est.value.value - tm.q_constant(ctx).value))
        dphi = abs(float(phi_est.value.value - tm.fm_phi(ctx).value))
        dzo = abs(float(zo_est.value.value - tm.zeta_odious(2, ctx).re.value))
        d += [f"|dQ| {dq:.1e}", f"|dphi| {dphi:.1e}", f"|dzeta| {dzo:.1e} <= {zo_est.error_estimate:.1e}"]
        assert dq < 1e-5
        assert dphi < 1e-5
        assert dzo <= zo_est.error_estimate


def test_09_route_overlap(properties_run):
    records, _, _ = properties_run
    with criterion(9, "g direct vs functional equation at 10 points, Re s in [16, 18], >= 60 digits") as d:
        ctx = PrecisionContext()
        pts = [parse_complex(p, ctx) for p in verify.ROUTE_OVERLAP_POINTS]
        assert len(pts) == 10
        assert all(16 <= ctx.mp.re(p) <= 18 for p in pts)
        got = [digits_of(records[f"g({p}) direct = functional equation"])
               for p in verify.ROUTE_OVERLAP_POINTS]
        d += [f"min {min(got):.1f} digits"]
        assert min(got) >= 60


def test_10_property_combinators(properties_run):
    records, _, _ = properties_run
    with criterion(10, "scaling gives Even; head split (odious, 100) >= 60 digits; head(odious, 5) = 448") as d:
        scale = digits_of(records["scale(integers, 2) = even"])
        split = digits_of(records["head split (odious, 100) recombines"])
        head, _ = rp.split_head(rp.SequenceSpec(rp.Kind.ODIOUS), 5, PrecisionContext())
        d += [f"scaling {scale:.1f}", f"split {split:.1f}", f"head {head}"]
        assert scale >= 60
        assert split >= 60
        assert head == 448 and isinstance(head, int)


DETERMINISM_COMMANDS = [
    ("constant", "phi", "--digits", "40", "--json"),
    ("constant", "glaisher"),
    ("eval", "--sequence", "odious", "--json"),
    ("eval", "--sequence", "lerch-quadratic", "--x", "0.5", "--y", "2"),
    ("g", "--s", "0.5+14i", "--json"),
    ("f", "--s", "-1.5-2i"),
    ("list-sequences",),
    ("verify", "--suite", "all", "--json"),
]


def test_11_determinism():
    with criterion(11, "byte-identical output across runs and thread counts") as d:
        for argv in DETERMINISM_COMMANDS:
            a, _ = regprod(*argv)
            b, _ = regprod(*argv)
            assert a.returncode == b.returncode == 0, argv
            assert a.stdout == b.stdout, argv
        base, _ = regprod("verify", "--suite", "all", "--json", "--threads", "1")
        for threads in ("2", "4"):
            other, _ = regprod("verify", "--suite", "all", "--json", "--threads", threads)
            assert other.stdout == base.stdout
        d += [f"{len(DETERMINISM_COMMANDS)} commands x 2 runs", "verify threads 1/2/4"]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
