"""Experiment scenarios: structural audits and price-of-anarchy sweeps.

Every scenario is deterministic in (config, seed): per-instance seeds are
pre-drawn in the parent process, so the thread count never changes results.
Reports carry no timestamps; identical runs produce identical bytes.

Each scenario emits one row per instance plus a falsification list; any
falsification is a disagreement between an audited claim and observed
behavior and flips the exit code to 1.
"""

from __future__ import annotations

import csv
import hashlib
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Union

from . import __version__
from .constructions import (
    gen_br_cycle,
    gen_hypercube,
    gen_random_directed,
    gen_random_host,
    gen_random_setcover,
    gen_reduction_br,
    gen_reduction_ne,
    gen_t2_equilibrium,
    gen_t2_family,
    SetCoverInstance,
)
from .core import TemporalGraph, compress_labels
from .dynamics import OUTCOME_CYCLE, OUTCOME_GE, final_profile, run_dynamics
from .equilibrium import (
    check_ge,
    check_ne,
    find_large_node,
    freeze_relabel,
    verify_large_node,
)
from .errors import PreconditionViolated, SearchSpaceExceeded
from .game import empty_profile, social_cost
from .optimum import minimum_spanner, poa_ratio
from .responses import exact_best_response


def _pmap(fn: Callable, args_list: list, threads: int) -> list:
    if threads > 1 and len(args_list) > 1:
        with ProcessPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, args_list, chunksize=1))
    return [fn(a) for a in args_list]


def _frac_fields(prefix: str, value: Optional[Fraction]) -> dict:
    if value is None:
        return {f"{prefix}_num": None, f"{prefix}_den": None}
    return {f"{prefix}_num": value.numerator, f"{prefix}_den": value.denominator}


# ---------------------------------------------------------------- scenarios


def _run_hypercube_poa(cfg, seed, threads):
    rows, fals = [], []
    for idx, d in enumerate(cfg["dims"]):
        host, profile = gen_hypercube(d)
        ne = check_ne(host, profile)
        ge = check_ge(host, profile)
        opt_graph, opt = minimum_spanner(host)
        ratio = Fraction(profile.arc_count, opt)
        expected = Fraction(d * (1 << (d - 1)), (1 << d) - 1)
        row = {
            "index": idx,
            "dim": d,
            "n": host.n,
            "t": host.lifetime,
            "arcs": profile.arc_count,
            "ne_stable": ne.stable,
            "ge_stable": ge.stable,
            "opt_size": opt,
            **_frac_fields("poa", ratio),
            **_frac_fields("expected", expected),
        }
        rows.append(row)
        if not ne.stable or not ge.stable:
            fals.append({"index": idx, "message": f"d={d}: profile is not an equilibrium"})
        if opt != host.n - 1:
            fals.append({"index": idx, "message": f"d={d}: optimum {opt} != n-1"})
        if ratio != expected:
            fals.append({"index": idx, "message": f"d={d}: ratio {ratio} != expected {expected}"})
    return rows, fals, {}


def _run_t2_tightness(cfg, seed, threads):
    rows, fals = [], []
    for idx, n in enumerate(cfg["n_values"]):
        host, profile = gen_t2_family(n)
        ne = check_ne(host, profile)
        arcs = profile.arc_count
        bound = host.lifetime * (n - 2)
        ratio = poa_ratio(host, profile)
        expected = Fraction(2 * (n - 2), n - 1)
        row = {
            "index": idx,
            "n": n,
            "t": host.lifetime,
            "arcs": arcs,
            "bound": bound,
            "tight": arcs == bound,
            "ne_stable": ne.stable,
            **_frac_fields("poa", ratio),
            **_frac_fields("expected", expected),
        }
        rows.append(row)
        if not ne.stable:
            fals.append({"index": idx, "message": f"n={n}: family profile not an equilibrium"})
        if arcs != 2 * (n - 2) or arcs != bound:
            fals.append({"index": idx, "message": f"n={n}: arc count {arcs} not tight for bound {bound}"})
        if ratio != expected:
            fals.append({"index": idx, "message": f"n={n}: ratio {ratio} != expected {expected}"})
    return rows, fals, {}


def _run_br_cycle(cfg, seed, threads):
    host, profile, schedule = gen_br_cycle()
    trace = run_dynamics(host, profile, schedule=schedule, rule="greedy")
    returned = trace.final == profile.canonical()
    improving = all(m.cost_after < m.cost_before for m in trace.moves)
    row = {
        "index": 0,
        "outcome": trace.outcome,
        "moves": len(trace.moves),
        "period": trace.period,
        "entry": trace.entry,
        "returned_to_start": returned,
        "all_improving": improving,
    }
    fals = []
    if trace.outcome != OUTCOME_CYCLE or trace.period != 6 or trace.entry != 0:
        fals.append({"index": 0, "message": f"expected a period-6 cycle from the start, got {trace.outcome}"})
    if not returned:
        fals.append({"index": 0, "message": "schedule did not return to the initial profile"})
    if not improving:
        fals.append({"index": 0, "message": "a scheduled move was not strictly improving"})
    return [row], fals, {}


def _reduction_instance(args):
    idx, inst_seed, k_min, k_max, m_min, m_max = args
    sc = gen_random_setcover(k_max, m_max, inst_seed, k_min=k_min, m_min=m_min)
    min_size, min_cover = sc.min_cover()

    host, profile, layout = gen_reduction_br(sc)
    br, cost = exact_best_response(host, profile, layout.x)
    br_ok = len(br) == min_size and cost.unreached == 0

    sc_min = SetCoverInstance(sc.k, sc.sets, min_cover)
    host_min, prof_min, _ = gen_reduction_ne(sc_min)
    ne_min = check_ne(host_min, prof_min)

    has_nonmin = sc.m > min_size
    ne_nonmin_stable = None
    witness_is_x = None
    if has_nonmin:
        extra = min(i for i in range(1, sc.m + 1) if i not in min_cover)
        sc_non = SetCoverInstance(sc.k, sc.sets, set(min_cover) | {extra})
        host_non, prof_non, layout_non = gen_reduction_ne(sc_non)
        ne_non = check_ne(host_non, prof_non)
        ne_nonmin_stable = ne_non.stable
        witness_is_x = (ne_non.witness is not None and ne_non.witness[0] == layout_non.x)
    row = {
        "index": idx,
        "seed": inst_seed,
        "k": sc.k,
        "m": sc.m,
        "min_size": min_size,
        "br_size": len(br),
        "br_ok": br_ok,
        "ne_min_stable": ne_min.stable,
        "has_nonmin": has_nonmin,
        "ne_nonmin_stable": ne_nonmin_stable,
        "nonmin_witness_is_x": witness_is_x,
    }
    msgs = []
    if not br_ok:
        msgs.append(f"best response size {len(br)} != minimum cover {min_size}")
    if not ne_min.stable:
        msgs.append("minimum-cover instance is not a Nash equilibrium")
    if has_nonmin and (ne_nonmin_stable or not witness_is_x):
        msgs.append("non-minimum cover instance should be refuted through agent x")
    return row, [{"index": idx, "message": m} for m in msgs]


def _run_reduction_audit(cfg, seed, threads):
    base = random.Random(seed)
    args = [
        (i, base.randrange(2**32), cfg["k_min"], cfg["k_max"], cfg["m_min"], cfg["m_max"])
        for i in range(cfg["instances"])
    ]
    results = _pmap(_reduction_instance, args, threads)
    rows = [r for r, _ in results]
    fals = [f for _, fs in results for f in fs]
    return rows, fals, {}


def _ge_sweep_instance(args):
    idx, inst_seed, n_min, n_max, t_min, t_max, poa_budget = args
    rng = random.Random(inst_seed)
    n = rng.randint(n_min, n_max)
    t = rng.randint(t_min, t_max)
    host = gen_random_host(n, t, rng.randrange(2**32))
    trace = run_dynamics(host, empty_profile(n), schedule="round-robin", rule="greedy")
    row = {
        "index": idx,
        "seed": inst_seed,
        "n": n,
        "t": host.lifetime,
        "outcome": trace.outcome,
        "moves": len(trace.moves),
        "edges": None,
        "ge_verified": None,
        "antiparallel_free": None,
        "necessary_ok": None,
        "forbidden_none": None,
        "arc_bound": None,
        "arc_bound_applies": None,
        "arc_bound_ok": None,
        "dense_ok": None,
        "opt_size": None,
        "poa_num": None,
        "poa_den": None,
        "poa_within_bound": None,
    }
    msgs = []
    if trace.outcome == OUTCOME_GE:
        profile = final_profile(trace)
        report = check_ge(host, profile, audit=True)
        audit = report.audit
        row.update(
            edges=profile.arc_count,
            ge_verified=report.stable,
            antiparallel_free=audit.antiparallel_free,
            necessary_ok=audit.necessary_ok,
            forbidden_none=audit.forbidden is None,
            arc_bound=audit.bounds.arc_bound,
            arc_bound_applies=audit.bounds.arc_bound_applies,
            arc_bound_ok=audit.bounds.arc_bound_ok,
            dense_ok=audit.bounds.dense_ok,
        )
        if not report.stable:
            msgs.append("dynamics reported a greedy equilibrium that fails verification")
        if not audit.antiparallel_free:
            msgs.append("greedy equilibrium contains antiparallel arcs")
        if not audit.necessary_ok:
            msgs.append("greedy equilibrium has an arc with empty necessary set")
        if audit.forbidden is not None:
            msgs.append("forbidden structure reported")
        if audit.bounds.arc_bound_applies and not audit.bounds.arc_bound_ok:
            msgs.append(
                f"edge count {profile.arc_count} exceeds t(n-2) = {audit.bounds.arc_bound}"
            )
        if not audit.bounds.dense_ok:
            msgs.append(f"edge count {profile.arc_count} reaches the dense threshold")
        try:
            opt_graph, opt = minimum_spanner(host, budget_cap=poa_budget)
            ratio = Fraction(profile.arc_count, opt)
            row.update(opt_size=opt, **_frac_fields("poa", ratio))
            if host.lifetime > 1:
                cap = Fraction(host.lifetime * (n - 2), n - 1)
                row["poa_within_bound"] = ratio <= cap
                if ratio > cap:
                    msgs.append(f"ratio {ratio} exceeds t(n-2)/(n-1) = {cap}")
        except SearchSpaceExceeded:
            pass
    return row, [{"index": idx, "message": m} for m in msgs]


def _run_random_ge_sweep(cfg, seed, threads):
    base = random.Random(seed)
    args = [
        (
            i,
            base.randrange(2**32),
            cfg["n_min"],
            cfg["n_max"],
            cfg["t_min"],
            cfg["t_max"],
            cfg["poa_budget"],
        )
        for i in range(cfg["instances"])
    ]
    results = _pmap(_ge_sweep_instance, args, threads)
    rows = [r for r, _ in results]
    fals = [f for _, fs in results for f in fs]
    outcomes = [r["outcome"] for r in rows]
    extra = {
        "converged_ge": outcomes.count(OUTCOME_GE),
        "cycles": outcomes.count(OUTCOME_CYCLE),
        "other": len(rows) - outcomes.count(OUTCOME_GE) - outcomes.count(OUTCOME_CYCLE),
    }
    return rows, fals, extra


def _freeze_instance(args):
    idx, inst_seed, n_min, n_max, t_min, t_max, retries = args
    row = {
        "index": idx,
        "seed": inst_seed,
        "attempts": 0,
        "n": None,
        "t": None,
        "converged": False,
        "ge_verified": None,
        "frozen_ne_stable": None,
        "cost_unchanged": None,
        "frozen_lifetime": None,
    }
    msgs = []
    for r in range(retries):
        attempt_seed = inst_seed + r * 1_000_003
        rng = random.Random(attempt_seed)
        n = rng.randint(n_min, n_max)
        t = rng.randint(t_min, t_max)
        host = gen_random_host(n, t, rng.randrange(2**32))
        trace = run_dynamics(host, empty_profile(n), schedule="round-robin", rule="greedy")
        row["attempts"] = r + 1
        if trace.outcome != OUTCOME_GE:
            continue
        profile = final_profile(trace)
        ge = check_ge(host, profile)
        frozen = freeze_relabel(host, profile)
        ne = check_ne(frozen, profile)
        sc_before = social_cost(host, profile)
        sc_after = social_cost(frozen, profile)
        row.update(
            n=n,
            t=host.lifetime,
            converged=True,
            ge_verified=ge.stable,
            frozen_ne_stable=ne.stable,
            cost_unchanged=(sc_before == sc_after),
            frozen_lifetime=frozen.lifetime,
        )
        if not ge.stable:
            msgs.append("converged profile fails greedy verification")
        if not ne.stable:
            msgs.append("frozen host breaks the Nash property")
        if sc_before != sc_after:
            msgs.append("social cost changed under freezing")
        break
    return row, [{"index": idx, "message": m} for m in msgs]


def _run_freeze_relabel_audit(cfg, seed, threads):
    base = random.Random(seed)
    args = [
        (
            i,
            base.randrange(2**32),
            cfg["n_min"],
            cfg["n_max"],
            cfg["t_min"],
            cfg["t_max"],
            cfg["retries"],
        )
        for i in range(cfg["instances"])
    ]
    results = _pmap(_freeze_instance, args, threads)
    rows = [r for r, _ in results]
    fals = [f for _, fs in results for f in fs]
    extra = {"ges_verified": sum(1 for r in rows if r["converged"])}
    return rows, fals, extra


def _t2_instance(args):
    idx, part, n, code_or_seed = args
    if part == "exhaustive":
        edges = {}
        bit = 0
        for u in range(n):
            for v in range(u + 1, n):
                edges[(u, v)] = 1 + ((code_or_seed >> bit) & 1)
                bit += 1
        host = compress_labels(TemporalGraph(n, edges))
    else:
        host = gen_random_host(n, 2, code_or_seed)
    profile = gen_t2_equilibrium(host)
    ne = check_ne(host, profile)
    row = {
        "index": idx,
        "part": part,
        "n": n,
        "code": code_or_seed,
        "t": host.lifetime,
        "arcs": profile.arc_count,
        "ne_stable": ne.stable,
    }
    msgs = []
    if not ne.stable:
        msgs.append(f"constructed profile unstable (part={part}, n={n}, code={code_or_seed})")
    if profile.arc_count != n - 1:
        msgs.append("constructed profile is not a spanning tree")
    return row, [{"index": idx, "message": m} for m in msgs]


def _run_t2_existence_sweep(cfg, seed, threads):
    n_ex = cfg["exhaustive_n"]
    pairs = n_ex * (n_ex - 1) // 2
    args = [(i, "exhaustive", n_ex, code) for i, code in enumerate(range(1 << pairs))]
    base = random.Random(seed)
    nxt = len(args)
    for j in range(cfg["random_instances"]):
        rng = random.Random(base.randrange(2**32))
        n = rng.randint(cfg["n_min"], cfg["n_max"])
        args.append((nxt + j, "random", n, rng.randrange(2**32)))
    results = _pmap(_t2_instance, args, threads)
    rows = [r for r, _ in results]
    fals = [f for _, fs in results for f in fs]
    extra = {"exhaustive": 1 << pairs, "random": cfg["random_instances"]}
    return rows, fals, extra


def _large_node_instance(args):
    idx, inst_seed, n, arcs, t, expect_witness = args
    g = gen_random_directed(n, arcs, t, inst_seed)
    row = {
        "index": idx,
        "seed": inst_seed,
        "n": n,
        "arcs": arcs,
        "expect_witness": expect_witness,
        "got_witness": None,
        "verified": None,
        "z": None,
        "m_size": None,
    }
    msgs = []
    try:
        w = find_large_node(g)
        row.update(got_witness=True, z=w.z, m_size=len(w.members))
        ok = verify_large_node(g, w)
        row["verified"] = ok
        if not expect_witness:
            msgs.append(f"witness found below the arc threshold ({arcs} arcs)")
        elif not ok:
            msgs.append("witness failed independent verification")
    except PreconditionViolated:
        row["got_witness"] = False
        if expect_witness:
            msgs.append(f"precondition rejected {arcs} arcs at n={n}")
    return row, [{"index": idx, "message": m} for m in msgs]


def _run_large_node_audit(cfg, seed, threads):
    base = random.Random(seed)
    args = []
    for i in range(cfg["instances"]):
        args.append((i, base.randrange(2**32), cfg["n"], cfg["arcs"], cfg["t"], True))
    nxt = len(args)
    for j, below in enumerate(cfg["below_arcs"]):
        args.append((nxt + j, base.randrange(2**32), cfg["n"], below, cfg["t"], False))
    results = _pmap(_large_node_instance, args, threads)
    rows = [r for r, _ in results]
    fals = [f for _, fs in results for f in fs]
    return rows, fals, {}


SCENARIO_DEFAULTS: dict[str, dict] = {
    "hypercube-poa": {"dims": [3, 4]},
    "t2-tightness": {"n_values": [5, 6, 7, 8, 9, 10, 11, 12]},
    "br-cycle": {},
    "reduction-audit": {"instances": 20, "k_min": 3, "k_max": 8, "m_min": 2, "m_max": 6},
    "random-ge-sweep": {
        "instances": 200,
        "n_min": 4,
        "n_max": 12,
        "t_min": 2,
        "t_max": 4,
        "poa_budget": 5000,
    },
    "freeze-relabel-audit": {
        "instances": 30,
        "n_min": 4,
        "n_max": 10,
        "t_min": 2,
        "t_max": 4,
        "retries": 6,
    },
    "t2-existence-sweep": {
        "exhaustive_n": 5,
        "random_instances": 500,
        "n_min": 5,
        "n_max": 10,
    },
    "large-node-audit": {
        "instances": 20,
        "n": 36,
        "arcs": 600,
        "t": 5,
        "below_arcs": [500, 565],
    },
}

_RUNNERS = {
    "hypercube-poa": _run_hypercube_poa,
    "t2-tightness": _run_t2_tightness,
    "br-cycle": _run_br_cycle,
    "reduction-audit": _run_reduction_audit,
    "random-ge-sweep": _run_random_ge_sweep,
    "freeze-relabel-audit": _run_freeze_relabel_audit,
    "t2-existence-sweep": _run_t2_existence_sweep,
    "large-node-audit": _run_large_node_audit,
}


@dataclass
class ExperimentResult:
    report: dict
    json_path: Path
    csv_path: Path

    @property
    def exit_code(self) -> int:
        return 0 if self.report["summary"]["pass"] else 1


def config_digest(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def run_experiment(
    config: dict,
    out_dir: Union[str, Path] = ".",
    threads: int = 1,
) -> ExperimentResult:
    """Run one scenario and write <scenario>.report.json plus
    <scenario>.instances.csv under out_dir."""
    scenario = config.get("scenario")
    if scenario not in _RUNNERS:
        known = ", ".join(sorted(_RUNNERS))
        raise ValueError(f"unknown scenario {scenario!r}; known: {known}")
    cfg = dict(SCENARIO_DEFAULTS[scenario])
    seed = 0
    for key, value in config.items():
        if key == "scenario":
            continue
        if key == "seed":
            seed = int(value)
            continue
        if key not in cfg:
            raise ValueError(f"unknown config key {key!r} for scenario {scenario}")
        cfg[key] = value
    rows, fals, extra = _RUNNERS[scenario](cfg, seed, threads)
    full_config = {"scenario": scenario, "seed": seed, **cfg}
    report = {
        "scenario": scenario,
        "version": __version__,
        "seed": seed,
        "config": full_config,
        "config_digest": config_digest(full_config),
        "summary": {
            "instances": len(rows),
            "falsifications": len(fals),
            "pass": not fals,
            **extra,
        },
        "instances": rows,
        "falsifications": fals,
    }
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    json_path = out / f"{scenario}.report.json"
    json_path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    csv_path = out / f"{scenario}.instances.csv"
    with open(csv_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if v is None else v) for k, v in row.items()})
    return ExperimentResult(report=report, json_path=json_path, csv_path=csv_path)
