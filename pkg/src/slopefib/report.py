"""Assembly of deterministic JSON reports and their plain-text rendering."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field
from importlib import resources

from . import __version__
from .cohomology import InvariantsError, chi_Rk, invariants
from .fibers import ANOMALOUS, TRIGONAL, scan, smoothness_probe
from .horikawa import HorikawaError, bundle_degree, expected_degree, horikawa, verify_slope
from .linalg import NonTorsionCokernel
from .pfaffian import PAIRS, PfaffianModel

SCHEMA_NAME = "report_schema.json"
PROBE_POINTS = ((1, 1),)


def load_schema() -> dict:
    return json.loads(resources.files("slopefib").joinpath(SCHEMA_NAME).read_text(encoding="utf-8"))


def reference_values(family: str | None, param: int | None) -> dict | None:
    """Closed forms attached to the builtin families."""
    if family is None:
        return None
    if family == "A":
        n = param
        return {"p_g": 5 * (2 * n - 1), "chi_f": 10 * n, "K2": 41 * n, "H_total": n, "support": {"(1:0)": 2 * n}}
    if family == "B":
        return {"p_g": 2 * param + 5}
    if family == "C":
        return {"p_g": 2 * param + 4}
    return None


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass
class Report:
    command: str
    config: dict
    model: PfaffianModel
    sections: dict = dc_field(default_factory=dict)
    checks: list = dc_field(default_factory=list)
    timing: dict | None = None

    def check(self, name: str, passed: bool, detail: str = "") -> bool:
        self.checks.append(Check(name, bool(passed), detail))
        return passed

    @property
    def status(self) -> str:
        return "PASS" if all(c.passed for c in self.checks) else "FAIL"

    def as_dict(self) -> dict:
        out = {
            "tool": "slopefib",
            "version": __version__,
            "command": self.command,
            "config": self.config,
            "model": model_echo(self.model),
            "status": self.status,
            "checks": [c.as_dict() for c in self.checks],
        }
        out.update(self.sections)
        if self.timing is not None:
            out["timing"] = self.timing
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"


def model_echo(m: PfaffianModel) -> dict:
    return {
        "label": m.label,
        "field": "rational" if m.field.p is None else m.field.p,
        "seed": m.seed,
        "weights": list(m.weights),
        "entries": {f"m{i + 1}{j + 1}": str(m.upper[(i, j)]) for i, j in PAIRS},
        "homogeneity": m.diagnostic.as_dict() if m.diagnostic is not None else None,
    }


class _Clock:
    def __init__(self, enabled: bool):
        self.enabled = enabled
        self.data: dict = {}

    def run(self, name: str, fn, *args, **kwargs):
        start = time.perf_counter()
        try:
            return fn(*args, **kwargs)
        finally:
            if self.enabled:
                self.data[name] = round(time.perf_counter() - start, 3)


def add_invariants(rep: Report, clock: _Clock, ref: dict | None):
    inv = clock.run("invariants", invariants, rep.model)
    rep.sections["invariants"] = inv.as_dict()
    rep.sections["chi_Rk"] = {str(k): chi_Rk(rep.model, k) for k in range(2, 7)}
    rep.check("cohomology bounds are exact", inv.p_g_exact and inv.q_exact)
    if ref is not None:
        rep.sections["reference"] = ref
        for key in ("p_g", "chi_f", "K2"):
            if key in ref:
                got = getattr(inv, key)
                if rep.config.get("family") == "A":
                    rep.check(f"{key} matches closed form", got == ref[key], f"{got} vs {ref[key]}")
                elif got != ref[key]:
                    # recorded, not failed: the builtin grading differs from the closed form
                    rep.sections.setdefault("reference_mismatches", []).append(
                        {"quantity": key, "computed": got, "closed_form": ref[key]}
                    )
    return inv


def add_fibers(rep: Report, clock: _Clock, support: dict | None):
    cfg = rep.config
    points = [(1, 0), (0, 1)]
    if support:
        for label in support:
            if label.startswith("(") and label.endswith(")"):
                a, b = label[1:-1].split(":")
                points.append((int(a), int(b)))
    rows = clock.run("fibers", scan, rep.model, points, cfg["samples"], cfg["seed"])
    F = rep.model.field
    table = [r.as_dict(F) for r in rows]
    rep.sections["fibers"] = table
    rep.check("every fibre has 3 quadrics and 15 cubics", all(r.quadric_dim == 3 and r.cubic_dim == 15 for r in rows))
    rep.check("no anomalous fibres", all(r.verdict != ANOMALOUS for r in rows))
    probes = {}
    for pt in PROBE_POINTS:
        res = clock.run("smoothness_probe", smoothness_probe, rep.model, pt, 20, 31, cfg["seed"])
        probes[f"({pt[0]}:{pt[1]})"] = {
            "status": res.status,
            "checked": res.checked,
            "prime": res.prime,
            "witness": list(res.witness) if res.witness else None,
        }
        rep.check(f"smoothness probe at ({pt[0]}:{pt[1]})", res.status != "fail", res.reason)
    rep.sections["smoothness"] = probes
    return table


def add_horikawa(rep: Report, clock: _Clock, ref: dict | None):
    try:
        hk = clock.run("horikawa", horikawa, rep.model)
    except (HorikawaError, NonTorsionCokernel) as exc:
        rep.sections["horikawa"] = {"error": str(exc)}
        rep.check("Horikawa module computed", False, str(exc))
        return None
    rep.sections["horikawa"] = hk.as_dict()
    rep.check("local lengths of F are even", hk.even)
    rep.check("chart consistency of F", hk.chart_consistent)
    rep.check("K_03 vanishes", hk.koszul_K03_free_rank == 0 and hk.koszul_K03_length == 0)
    rep.check("K_12 matches F pointwise", hk.koszul_K12_support == hk.support)
    if ref is not None and "support" in ref:
        rep.check("support of F matches closed form", hk.support == ref["support"], str(hk.support))
    return hk


def add_degrees(rep: Report, clock: _Clock, inv):
    out = {}
    for k in (1, 2, 3):
        got = clock.run(f"degree_R{k}", bundle_degree, rep.model, k)
        want = expected_degree(inv, k)
        out[str(k)] = {"computed": got, "expected": want}
        rep.check(f"deg R_{k} = chi_f + C({k},2) K^2", got == want, f"{got} vs {want}")
    rep.sections["degrees"] = out


def add_slope(rep: Report, inv, hk):
    sr = verify_slope(rep.model, inv, hk) if hk is not None else None
    if sr is None:
        rep.sections["slope"] = {"status": "FAIL", "details": ["Horikawa module unavailable; no identity claimed"]}
        return
    rep.sections["slope"] = sr.as_dict()
    rep.check("K^2 = 4 chi_f + sum H", bool(sr.horikawa_identity))
    rep.check("K^2 = 4 chi_f + (len K_12 - len K_03)/2", bool(sr.konno_identity))


def trigonal_vs_support(rep: Report, table: list, hk):
    trig = {r["point"] for r in table if r["verdict"] == TRIGONAL}
    rational = {p for p in hk.support if p.startswith("(")}
    rep.check("trigonal fibres = support of F", trig == rational, f"trigonal {sorted(trig)}, support {sorted(rational)}")


def build_report(command: str, model: PfaffianModel, config: dict, timing: bool = False) -> Report:
    rep = Report(command, config, model)
    clock = _Clock(timing)
    ref = reference_values(config.get("family"), config.get("param"))
    inv = hk = None
    if command in ("invariants", "verify"):
        try:
            inv = add_invariants(rep, clock, ref)
        except InvariantsError as exc:
            rep.sections["invariants"] = {"error": str(exc)}
            rep.check("invariants computed", False, str(exc))
    if command in ("horikawa", "verify", "fibers"):
        if command == "fibers":
            try:
                hk = horikawa(model, koszul=False)
            except (HorikawaError, NonTorsionCokernel):
                hk = None
        else:
            hk = add_horikawa(rep, clock, ref)
    if command in ("fibers", "verify"):
        table = add_fibers(rep, clock, hk.support if hk is not None else None)
        if hk is not None:
            trigonal_vs_support(rep, table, hk)
    if command == "verify" and inv is not None:
        try:
            add_degrees(rep, clock, inv)
        except HorikawaError as exc:
            rep.check("degrees of R_k computed", False, str(exc))
        add_slope(rep, inv, hk)
    if timing:
        rep.timing = clock.data
    return rep


# ---------------------------------------------------------------------------
# text rendering


def render_text(rep: Report) -> str:
    d = rep.as_dict()
    lines = [f"slopefib {d['version']}  {d['command']}  model: {d['model']['label'] or '(unnamed)'}"]
    lines.append(f"field: {d['model']['field']}   weights: {d['model']['weights']}   seed: {d['model']['seed']}")
    inv = d.get("invariants")
    if inv and "error" not in inv:
        lines.append("")
        lines.append("  p_g   q   chi(O)  chi_f   K_f^2   e_f")
        lines.append(f"  {inv['p_g']:<5} {inv['q']:<3} {inv['chi_O']:<7} {inv['chi_f']:<7} {inv['K2']:<7} {inv['e_f']}")
    for item in d.get("reference_mismatches", []):
        lines.append(f"  note: {item['quantity']} = {item['computed']}, closed form gives {item['closed_form']}")
    hk = d.get("horikawa")
    if hk:
        lines.append("")
        if "error" in hk:
            lines.append(f"Horikawa module: {hk['error']}")
        else:
            lines.append("  point          len(F)   H      len(K_12)")
            for p, v in hk["support"].items():
                k12 = (hk["koszul"]["K12_support"] or {}).get(p, "-")
                lines.append(f"  {p:<14} {v:<8} {hk['H_values'][p]!s:<6} {k12}")
            lines.append(f"  total length {hk['total_length']}, sum H = {hk['H_total']}, K_03 length {hk['koszul']['K03_length']}")
    fib = d.get("fibers")
    if fib:
        lines.append("")
        trig = [r for r in fib if r["verdict"] != "nontrigonal"]
        lines.append(f"fibres scanned: {len(fib)}, nontrigonal: {len(fib) - len(trig)}")
        for r in trig:
            lines.append(f"  {r['point']:<14} {r['verdict']}  (quadrics {r['quadric_dim']}, cubics {r['cubic_dim']}, coker {r['coker_mu_dim']})")
    sl = d.get("slope")
    if sl:
        lines.append("")
        for det in sl.get("details", []):
            lines.append(f"  {det}")
    lines.append("")
    for c in d["checks"]:
        mark = "ok  " if c["passed"] else "FAIL"
        lines.append(f"[{mark}] {c['name']}" + (f"  ({c['detail']})" if c["detail"] and not c["passed"] else ""))
    lines.append(f"status: {d['status']}")
    return "\n".join(lines) + "\n"
