"""Config-driven verification runs: suites, CSV artifacts and the JSON summary."""
from __future__ import annotations

import csv
import hashlib
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
import yaml

from . import __version__
from .asymptotics import (appendix_integral, appendix_products, bulk_convergence, bulk_residual_convergence,
                          casimir_rates, derivative_convergence, derivative_zero_convergence,
                          discriminant_convergence, edge_convergence, edge_residual_convergence,
                          partition_sweep, symbol_residual_convergence, separation_check)
from .hill import discriminant_roots, eigenfunction_bound_check, galerkin_eigs, hill_discriminant
from .jacobi import char_product_check, discriminant, floquet_indices, sample_flaschka, spectrum_of
from .profiles import ProfilePair, TrigPoly, hill_potentials, norms
from .quantization import (FockState, apply_T, bulk_quasimode, edge_gram_deviation, edge_quasimode,
                           quasimode_certificate, quasimode_pair_certificate)

SUITES = ("spectrum", "edges", "bulk", "discriminant", "derivatives", "quasimodes", "casimirs",
          "partition", "appendix")
GLOBAL_SUITES = ("appendix",)
THREADS_ENV = "TODA_KDV_THREADS"
Q_BOUND = 2.0  # pinned bound for sup |Q_n|/n^2 on the partition boxes
ROOT_GAPS = 2  # discriminant roots are compared for lambda_0..lambda_4
RESIDUAL_GAPS = 8


def standard_profiles() -> tuple[tuple[str, ProfilePair], ...]:
    cos1 = TrigPoly(0.0, (1.0,))
    return (
        ("cos", ProfilePair(cos1, TrigPoly())),
        ("sin", ProfilePair(TrigPoly(), TrigPoly(0.0, (), (1.0,)))),
        ("mixed", ProfilePair(TrigPoly(0.0, (1.0,), (0.0, 0.5)), TrigPoly(0.0, (), (0.3,)))),
    )


@dataclass(frozen=True)
class RunConfig:
    profiles: tuple[tuple[str, ProfilePair], ...]
    N_list: tuple[int, ...]
    eta: float = 0.25
    suites: tuple[str, ...] = SUITES
    output_dir: str = "toda_kdv_out"
    galerkin_K: int | None = None
    J_max: int = 64
    grid_density: int = 64
    seed: int = 0
    band_fraction: float = 0.5
    edge_j_max: int = 4

    def __post_init__(self):
        if not 0.0 < self.eta < 0.5:
            raise ValueError("eta must lie in (0, 0.5)")
        if not self.N_list or any(n < 8 for n in self.N_list):
            raise ValueError("N_list entries must be >= 8")
        if any(b <= a for a, b in zip(self.N_list, self.N_list[1:])):
            raise ValueError("N_list must be strictly increasing")
        bad = [s for s in self.suites if s not in SUITES]
        if bad:
            raise ValueError(f"unknown suites: {bad}")
        ids = [p[0] for p in self.profiles]
        if {"-", "random"} & set(ids):
            raise ValueError("profile ids '-' and 'random' are reserved")
        if len(set(ids)) != len(ids):
            raise ValueError("profile ids must be unique")
        if not self.profiles:
            raise ValueError("at least one profile is required")
        if self.edge_j_max > 8:
            raise ValueError("edge_j_max must be <= 8")

    def to_dict(self) -> dict:
        return {"profiles": [{"id": i, **pp.to_dict()} for i, pp in self.profiles],
                "N_list": list(self.N_list), "eta": self.eta, "suites": list(self.suites),
                "galerkin_K": self.galerkin_K, "J_max": self.J_max, "grid_density": self.grid_density,
                "seed": self.seed, "band_fraction": self.band_fraction, "edge_j_max": self.edge_j_max}

    def hash(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    @property
    def galerkin(self) -> dict:
        return {"K": self.galerkin_K, "J_max": self.J_max}


def _parse_profiles(raw) -> tuple[tuple[str, ProfilePair], ...]:
    if raw is None or raw == "standard":
        return standard_profiles()
    out = []
    for k, item in enumerate(raw):
        if item == "standard":
            out.extend(standard_profiles())
            continue
        pid = str(item.get("id", f"p{k}"))
        out.append((pid, ProfilePair.from_dict(item)))
    return tuple(out)


def config_from_dict(d: dict, suites: str | None = None, out: str | None = None) -> RunConfig:
    d = dict(d)
    raw_suites = suites if suites is not None else d.get("suites", "all")
    if isinstance(raw_suites, str):
        raw_suites = SUITES if raw_suites == "all" else tuple(s.strip() for s in raw_suites.split(",") if s.strip())
    known = {"profiles", "N_list", "eta", "suites", "output_dir", "galerkin_K", "J_max", "grid_density",
             "seed", "band_fraction", "edge_j_max"}
    extra = set(d) - known
    if extra:
        raise ValueError(f"unknown config keys: {sorted(extra)}")
    return RunConfig(
        profiles=_parse_profiles(d.get("profiles")),
        N_list=tuple(int(n) for n in d.get("N_list", (64, 128, 256, 512, 1024))),
        eta=float(d.get("eta", 0.25)),
        suites=tuple(raw_suites),
        output_dir=str(out if out is not None else d.get("output_dir", "toda_kdv_out")),
        galerkin_K=None if d.get("galerkin_K") is None else int(d["galerkin_K"]),
        J_max=int(d.get("J_max", 64)),
        grid_density=int(d.get("grid_density", 64)),
        seed=int(d.get("seed", 0)),
        band_fraction=float(d.get("band_fraction", 0.5)),
        edge_j_max=int(d.get("edge_j_max", 4)),
    )


def load_config(path: str | Path, suites: str | None = None, out: str | None = None) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        data = yaml.safe_load(fh)  # JSON is a subset of YAML
    if not isinstance(data, dict):
        raise ValueError("config must be a mapping")
    return config_from_dict(data, suites, out)


# -- Suite plumbing ------------------------------------------------------------------------------------

@dataclass
class SuiteOutput:
    tables: dict[str, list[dict]] = field(default_factory=dict)
    passed: bool = True
    metrics: dict = field(default_factory=dict)

    def add(self, table: str, row: dict) -> None:
        self.tables.setdefault(table, []).append(row)


def _sides():
    return ((-1, "left"), (1, "right"))


def suite_spectrum(cfg: RunConfig, pid: str, pp: ProfilePair) -> SuiteOutput:
    out = SuiteOutput()
    free = pp.is_free()
    worst_free, worst_char = 0.0, 0.0
    grid = (np.linspace(-2.2, 2.2, 5)[:, None] + 1j * np.linspace(-0.2, 0.2, 5)[None, :]).ravel()
    for N in cfg.N_list:
        s = spectrum_of(pp, N)
        in_l = np.zeros(2 * N, dtype=bool)
        in_l[floquet_indices(N)] = True
        closed = np.sort(-2.0 * np.cos(np.arange(2 * N) * np.pi / N))
        for i, v in enumerate(s.values):
            row = {"profile": pid, "N": N, "index": i, "eigenvalue": v, "in_L": bool(in_l[i])}
            if free:
                row["closed_form"] = closed[i]
            out.add("spectrum", row)
        m = sample_flaschka(pp, N)
        if free:
            mu = np.linspace(-1.99, 1.99, 20)
            d_err = np.abs(discriminant(m, mu).value - 2.0 * np.cos(N * np.arccos(mu / 2.0))).max()
            worst_free = max(worst_free, float(np.abs(s.values - closed).max()), float(d_err))
        res = float(char_product_check(m, s, grid).max())
        worst_char = max(worst_char, res)
        out.add("char_product", {"profile": pid, "N": N, "max_residual": res})
    root_err, scaled_res = 0.0, 0.0
    for side, name in _sides():
        q = hill_potentials(pp)[0 if side > 0 else 1]
        hs = galerkin_eigs(q, cfg.galerkin_K, cfg.J_max)
        roots = discriminant_roots(q, hs, ROOT_GAPS)
        lam = hs.lambdas[: 2 * RESIDUAL_GAPS + 1]
        d = hill_discriminant(q, lam)
        resid = np.abs(d.value ** 2 - 4.0) / (1.0 + np.abs(2.0 * d.value * d.d1))
        for j, v in enumerate(lam):
            root = float(roots[j]) if j < len(roots) else math.nan
            out.add("hill_spectrum", {"profile": pid, "side": name, "index": j, "galerkin": float(v),
                                      "discriminant_root": root, "scaled_residual": float(resid[j].real)})
        root_err = max(root_err, float(np.abs(roots - hs.lambdas[: len(roots)]).max()))
        scaled_res = max(scaled_res, float(resid.real.max()))
    out.passed = worst_char <= 1e-6 and root_err <= 1e-7 and scaled_res <= 1e-7 and (not free or worst_free <= 1e-10)
    out.metrics = {"char_product_max": worst_char, "root_agreement": root_err, "scaled_residual": scaled_res}
    if free:
        out.metrics["free_closed_form_err"] = worst_free
    return out


def _table_rows(out: SuiteOutput, name: str, table, **keys) -> None:
    for N, value, err in table.rows:
        out.add(name, {**keys, "N": N, "value": value, "error": err})


def suite_edges(cfg: RunConfig, pid: str, pp: ProfilePair) -> SuiteOutput:
    out = SuiteOutput()
    for side, name in _sides():
        for j in range(cfg.edge_j_max + 1):
            t = edge_convergence(pp, j, side, cfg.N_list, **cfg.galerkin)
            _table_rows(out, "edges", t, profile=pid, side=name, j=j)
            out.metrics[f"{name}_{j}_slope"] = t.fitted_slope
            out.metrics[f"{name}_{j}_rule"] = t.rule
            out.passed &= t.passed
    sep_ok = True
    for N in cfg.N_list:
        if N >= 256:
            r = separation_check(pp, N, cfg.eta, **cfg.galerkin)
            sep_ok &= r["ordered"] and r["nearest_ok"]
    bounds_ok, pre_any = True, False
    nb = norms(pp)
    for q in hill_potentials(pp):
        hs = galerkin_eigs(q, cfg.galerkin_K, cfg.J_max)
        for N in cfg.N_list:
            rep = eigenfunction_bound_check(hs, nb, N, cfg.eta)
            bounds_ok &= rep["pass"]
            pre_any |= rep["precondition"]
    out.metrics.update({"separation_ok": sep_ok, "eigenfunction_bounds_ok": bounds_ok,
                        "counting_precondition_met": pre_any})
    out.passed &= sep_ok and bounds_ok
    return out


def suite_bulk(cfg: RunConfig, pid: str, pp: ProfilePair) -> SuiteOutput:
    out = SuiteOutput()
    t = bulk_convergence(pp, cfg.band_fraction, cfg.eta, cfg.N_list)
    for (N, value, err), split in zip(t.rows, t.extra["splitting"]):
        out.add("bulk", {"profile": pid, "N": N, "target": value, "error": err, "splitting": split})
    out.passed = t.passed
    out.metrics = {"slope": t.fitted_slope, "rule": t.rule}
    return out


def suite_discriminant(cfg: RunConfig, pid: str, pp: ProfilePair) -> SuiteOutput:
    out = SuiteOutput()
    for side, name in _sides():
        t = discriminant_convergence(pp, side, cfg.eta, cfg.N_list, cfg.grid_density, **cfg.galerkin)
        _table_rows(out, "discriminant", t, profile=pid, side=name)
        out.metrics[f"{name}_contraction"] = t.contraction
        out.metrics[f"{name}_sign_ok"] = t.extra["sign_ok"]
        out.passed &= t.passed
    return out


def suite_derivatives(cfg: RunConfig, pid: str, pp: ProfilePair) -> SuiteOutput:
    out = SuiteOutput()
    for side, name in _sides():
        for j in (1, 2):
            t = derivative_convergence(pp, side, j, cfg.eta, cfg.N_list, cfg.grid_density, **cfg.galerkin)
            _table_rows(out, "derivatives", t, profile=pid, side=name, kind=f"d{j}")
            out.metrics[f"{name}_d{j}_contraction"] = t.contraction
            out.passed &= t.passed
        for n in (1, 2, 3):
            t = derivative_zero_convergence(pp, side, n, cfg.eta, cfg.N_list, **cfg.galerkin)
            _table_rows(out, "derivatives", t, profile=pid, side=name, kind=f"zero{n}")
            out.metrics[f"{name}_zero{n}_contraction"] = t.contraction
            out.metrics[f"{name}_zero{n}_brackets_ok"] = t.extra["brackets_ok"]
            out.passed &= t.passed
    return out


def suite_quasimodes(cfg: RunConfig, pid: str, pp: ProfilePair) -> SuiteOutput:
    out = SuiteOutput()
    tables = [("symbol", 0, symbol_residual_convergence(pp, cfg.N_list))]
    for side, name in _sides():
        for j in range(3):
            tables.append((f"edge_{name}", j, edge_residual_convergence(pp, j, side, cfg.N_list, cfg.eta)))
    tables.append(("bulk", int(cfg.band_fraction * 1000), bulk_residual_convergence(pp, cfg.band_fraction,
                                                                                   cfg.eta, cfg.N_list)))
    for kind, idx, t in tables:
        _table_rows(out, "quasimode_rates", t, profile=pid, kind=kind, index=idx)
        out.metrics[f"{kind}_{idx}_slope"] = t.fitted_slope
        out.passed &= t.passed
    captured_all, gram_ok = True, True
    for N in cfg.N_list:
        ev = spectrum_of(pp, N).values
        A = (lambda v, N=N: apply_T(pp, N, FockState(N, v)).coeffs)
        for side, name in _sides():
            for j in range(3):
                state, mu = edge_quasimode(pp, N, j, side, cfg.eta)
                c = quasimode_certificate(A, state, mu, ev)
                captured_all &= bool(c.verified)
                out.add("quasimodes", {"profile": pid, "N": N, "kind": f"edge_{name}", "index": j, "mu": mu,
                                       "residual": c.residual, "gram_offdiag": c.gram_offdiag,
                                       "nearest_eig": c.nearest, "captured": bool(c.verified)})
            dev, bound = edge_gram_deviation(pp, N, side, cfg.eta)
            gram_ok &= dev <= bound
        ell = int(math.floor(cfg.band_fraction * N))
        a, b, mu = bulk_quasimode(pp, N, ell, cfg.eta)
        c = quasimode_pair_certificate(A, a, b, mu, ev)
        captured_all &= bool(c.verified)
        out.add("quasimodes", {"profile": pid, "N": N, "kind": "bulk_pair", "index": ell, "mu": mu,
                               "residual": c.residual, "gram_offdiag": c.gram_offdiag,
                               "nearest_eig": c.nearest, "captured": bool(c.verified)})
    out.metrics.update({"all_captured": captured_all, "edge_gram_ok": gram_ok})
    out.passed &= captured_all and gram_ok
    return out


def random_certificates(seed: int, count: int = 200) -> SuiteOutput:
    """Certificates on seeded random symmetric matrices: singles near simple eigenvalues, pairs at a double one."""
    out = SuiteOutput()
    rng = np.random.default_rng(seed)
    ok = True
    for i in range(count):
        n = int(rng.integers(3, 101))
        U, _ = np.linalg.qr(rng.standard_normal((n, n)))
        d = np.sort(rng.uniform(-2.0, 2.0, n))
        pair = i % 2 == 1
        if pair:
            d[1] = d[0]
        A = (U * d) @ U.T
        A = 0.5 * (A + A.T)
        delta = 10.0 ** rng.uniform(-8, -2)
        if pair:
            u = U[:, 0] + delta * rng.standard_normal(n)
            w = U[:, 1] + delta * rng.standard_normal(n)
            c = quasimode_pair_certificate(A, u, w, float(d[0]))
            kind = "random_pair"
        else:
            v = U[:, 0] + delta * rng.standard_normal(n)
            v = v / np.linalg.norm(v)
            c = quasimode_certificate(A, v, float(v @ A @ v))
            kind = "random_single"
        ok &= bool(c.verified)
        out.add("quasimodes", {"profile": "random", "N": n, "kind": kind, "index": i, "mu": c.mu,
                               "residual": c.residual, "gram_offdiag": c.gram_offdiag,
                               "nearest_eig": c.nearest, "captured": bool(c.verified)})
    out.passed = ok
    out.metrics = {"instances": count, "all_captured": ok}
    return out


def suite_casimirs(cfg: RunConfig, pid: str, pp: ProfilePair) -> SuiteOutput:
    out = SuiteOutput()
    t = casimir_rates(pp, cfg.N_list)
    for N, qm1, p, scaled in t.rows:
        out.add("casimirs", {"profile": pid, "N": N, "q_minus_1": qm1, "p": p, "N3_q_minus_1": scaled})
    out.passed = t.passed
    out.metrics = {"ratio": t.ratio, "p_zero": t.p_zero}
    return out


def suite_partition(cfg: RunConfig, pid: str, pp: ProfilePair) -> SuiteOutput:
    out = SuiteOutput()
    Ns = [N for N in cfg.N_list if N >= 512] or [cfg.N_list[-1]]
    worst = {"edge": 0.0, "bulk": 0.0, "right": 0.0}
    q_sup = 0.0
    for N in Ns:
        for n in (1, 2, 3):
            r = partition_sweep(pp, cfg.eta, N, n, cfg.grid_density // 2, **cfg.galerkin)
            out.add("partition", {"profile": pid, "N": N, "M": r["M"], "n": n, "dev_edge": r["dev_edge"],
                                  "dev_bulk": r["dev_bulk"], "dev_right": r["dev_right"],
                                  "dev_total": r["dev_total"], "Q_over_n2_sup": r["Q_over_n2_sup"],
                                  "in_proven_range": r["in_proven_range"]})
            for k in worst:
                worst[k] = max(worst[k], r[f"dev_{k}"])
            q_sup = max(q_sup, r["Q_over_n2_sup"])
    out.metrics = {f"max_dev_{k}": v for k, v in worst.items()}
    out.metrics["Q_over_n2_sup"] = q_sup
    out.passed = all(v <= 0.5 for v in worst.values()) and q_sup <= Q_BOUND
    return out


def suite_appendix(cfg: RunConfig, pid: str, pp: ProfilePair | None) -> SuiteOutput:
    out = SuiteOutput()
    Ns = sorted({2, 3, *cfg.N_list})
    prod = appendix_products(Ns)
    for r in prod["identity"]:
        out.add("appendix_products", {"kind": "identity", "N": r["N"], "M": "", "value": r["deviation"],
                                      "ok": r["exact_ok"] and r["order_ok"]})
    for b in prod["bounds"]:
        out.add("appendix_products", {"kind": "sin", "N": b["N"], "M": b["M"], "value": b["c_sin"], "ok": b["sin_ok"]})
        out.add("appendix_products", {"kind": "cos", "N": b["N"], "M": b["M"], "value": b["c_cos"], "ok": b["cos_ok"]})
    integ = appendix_integral()
    for k in ("minus", "plus"):
        out.add("appendix_integral", {"sign": k, "value": integ[k], "target": integ["target"],
                                      "error": integ[f"{k}_err"]})
    out.passed = bool(prod["pass"] and integ["pass"])
    out.metrics = {"identity_max_dev": max(r["deviation"] for r in prod["identity"]),
                   "c_sin_fit": max(b["c_sin"] for b in prod["bounds"]),
                   "c_cos_fit": max(b["c_cos"] for b in prod["bounds"]),
                   "integral_err": max(integ["minus_err"], integ["plus_err"])}
    return out


SUITE_FUNCS: dict[str, Callable[..., SuiteOutput]] = {
    "spectrum": suite_spectrum, "edges": suite_edges, "bulk": suite_bulk, "discriminant": suite_discriminant,
    "derivatives": suite_derivatives, "quasimodes": suite_quasimodes, "casimirs": suite_casimirs,
    "partition": suite_partition, "appendix": suite_appendix,
}


# -- Output --------------------------------------------------------------------------------------------

def fmt(v) -> str:
    """10 significant digits for floats; stable text for everything else."""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        x = float(v)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        s = f"{x:.10g}"
        return "0" if s == "-0" else s
    return str(v)


def _json_safe(v):
    if isinstance(v, dict):
        return {k: _json_safe(x) for k, x in v.items()}
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        x = float(v)
        return fmt(x) if not math.isfinite(x) else float(fmt(x))
    return v


def write_csv(path: Path, rows: list[dict]) -> None:
    cols: list[str] = []
    for r in rows:
        cols.extend(k for k in r if k not in cols)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(cols)
        for r in rows:
            w.writerow([fmt(r.get(c, "")) for c in cols])


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer") from None


def run(cfg: RunConfig, threads: int | None = None) -> dict:
    """Execute the selected suites; write CSVs and summary.json under cfg.output_dir; return the summary."""
    order = [s for s in SUITES if s in cfg.suites]
    tasks = []
    for suite in order:
        if suite in GLOBAL_SUITES:
            tasks.append((suite, "-", None))
        else:
            tasks.extend((suite, pid, pp) for pid, pp in cfg.profiles)
        if suite == "quasimodes":
            tasks.append((suite, "random", None))

    def go(task):
        suite, pid, pp = task
        try:
            if suite == "quasimodes" and pp is None:
                return random_certificates(cfg.seed)
            return SUITE_FUNCS[suite](cfg, pid, pp)
        except Exception as exc:  # surface suite name and inputs with the original error
            raise RuntimeError(f"suite {suite!r} failed for profile {pid!r}: {exc}") from exc

    n = threads or thread_count()
    if n > 1:
        with ThreadPoolExecutor(max_workers=n) as ex:
            outputs = list(ex.map(go, tasks))
    else:
        outputs = [go(t) for t in tasks]

    out_dir = Path(cfg.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    merged: dict[str, list[dict]] = {}
    results = []
    for (suite, pid, _), o in zip(tasks, outputs):
        for name, rows in o.tables.items():
            merged.setdefault(name, []).extend(rows)
        results.append({"suite": suite, "profile_id": pid, "pass": bool(o.passed), "metrics": _json_safe(o.metrics)})
    for name in sorted(merged):
        write_csv(out_dir / f"{name}.csv", merged[name])
    summary = {"version": __version__, "config_hash": cfg.hash(), "results": results}
    with open(out_dir / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return summary


def all_passed(summary: dict) -> bool:
    return all(r["pass"] for r in summary["results"])


# -- Golden files ---------------------------------------------------------------------------------------

def golden_update(golden_dir: str | Path, source_dir: str | Path) -> list[str]:
    g, s = Path(golden_dir), Path(source_dir)
    g.mkdir(parents=True, exist_ok=True)
    names = sorted(p.name for p in s.glob("*.csv"))
    if not names:
        raise FileNotFoundError(f"no CSV artifacts in {s}")
    for name in names:
        (g / name).write_bytes((s / name).read_bytes())
    return names


def golden_check(golden_dir: str | Path, source_dir: str | Path) -> list[str]:
    """Byte comparison of every golden CSV against the run output; returns mismatch descriptions."""
    g, s = Path(golden_dir), Path(source_dir)
    if not g.is_dir() or not any(g.glob("*.csv")):
        return [f"golden directory {g} is missing or empty; create it with `toda-kdv golden update --dir {g}`"]
    problems = []
    for gp in sorted(g.glob("*.csv")):
        sp = s / gp.name
        if not sp.exists():
            problems.append(f"{gp.name}: missing from {s}")
            continue
        a, b = gp.read_text(encoding="utf-8").splitlines(), sp.read_text(encoding="utf-8").splitlines()
        if a == b:
            continue
        for i, (x, y) in enumerate(zip(a, b), start=1):
            if x != y:
                problems.append(f"{gp.name}:{i}: golden {x!r} != current {y!r}")
                break
        else:
            problems.append(f"{gp.name}: line count {len(a)} != {len(b)}")
    for sp in sorted(s.glob("*.csv")):
        if not (g / sp.name).exists():
            problems.append(f"{sp.name}: not in golden set")
    return problems
