"""Invariant reports: one JSON document per group, plus caching and corpus runs.

A report gathers everything the toolkit computes about one group built from a
DSL expression: order, degree, solubility, the chief series counts a and b,
the generation invariants d and m, the spectrum of independent generating set
sizes, a per-factor summary of a chief series, and the verdicts of the three
structure checks.  Reports are plain dicts shaped for JSON with stable key
names (``schema`` is bumped if they ever change).

Determinism: the same expression with the same knobs yields byte-identical
canonical JSON, except for the ``timings`` entry, which holds wall clock data
and a cache marker and is excluded from :func:`canonical_json`.

Degradation: stages that hit an order cap or the time budget are skipped, the
reason is recorded under ``skipped``, and the remaining stages still run when
they can.  A report carries ``error`` only when the group itself could not be
built.  This keeps one oversized or broken expression from poisoning a corpus
run.

Cache: a JSONL file mapping group fingerprints to finished reports.  Appends
happen under an exclusive advisory lock so concurrent runs may share one
cache; unreadable lines are skipped with a warning.  A cache hit replays the
stored invariants (the id is taken from the current expression, since two
different expressions can build the same group).
"""

import concurrent.futures
import json
import time
import warnings

from . import builder
from . import genset
from . import structure
from . import verify
from .perm import (Budget, CapExceeded, GroupError, TimeBudgetExceeded,
                   DEFAULT_ELEMENT_CAP)

try:
    import fcntl
except ImportError:  # pragma: no cover - non-POSIX fallback, lock is advisory
    fcntl = None

SCHEMA = 1

# Report keys that a cache hit must reproduce exactly.
INVARIANT_KEYS = ("schema", "fingerprint", "order", "degree", "soluble",
                  "d", "m", "a", "b", "spectrum", "chief_factors", "verdicts")


def canonical_json(rep):
    """Serialize a report minus ``timings``, with sorted keys.

    Two reports for the same group compare equal exactly when these strings
    match, which is what the determinism and cache soundness tests check.
    """
    body = {k: v for k, v in rep.items() if k != "timings"}
    return json.dumps(body, sort_keys=True, separators=(",", ":"))


def _normalize(text):
    return " ".join(text.split())


def compute_report(text, max_order=builder.DEFAULT_ORDER_CAP,
                   lattice_cap=structure.DEFAULT_LATTICE_CAP,
                   element_cap=DEFAULT_ELEMENT_CAP,
                   search_order_cap=genset.DEFAULT_SEARCH_ORDER_CAP,
                   time_budget=None, seed=0, ex3_action="shipped",
                   cache=None):
    """Build the group for one expression and report its invariants.

    Parse and construction failures produce a report whose only substance is
    the ``error`` field (and ``error_kind``: "parse", "cap", "time" or
    "group").  Stage failures caused by caps or the budget are recorded under
    ``skipped`` instead and leave the affected fields null.
    """
    rep = {"schema": SCHEMA, "id": _normalize(text)}
    timings = {}
    start = time.perf_counter()
    try:
        G = builder.build(text, order_cap=max_order, ex3_action=ex3_action,
                          element_cap=element_cap)
    except GroupError as exc:
        rep["error"] = str(exc)
        rep["error_kind"] = _error_kind(exc)
        rep["timings"] = {"build": time.perf_counter() - start}
        return rep
    timings["build"] = time.perf_counter() - start

    rep["fingerprint"] = G.fingerprint()
    rep["order"] = G.order()
    rep["degree"] = G.degree
    rep["soluble"] = G.is_soluble()

    if cache is not None:
        hit = load_cache(cache).get(rep["fingerprint"])
        if hit is not None:
            out = {k: hit[k] for k in hit if k not in ("id", "timings")}
            out["id"] = rep["id"]
            out["timings"] = dict(timings, cached=True)
            return out

    budget = Budget(time_budget) if time_budget is not None else None
    skipped = {}

    def stage(name, fn):
        t0 = time.perf_counter()
        try:
            return fn()
        except (CapExceeded, TimeBudgetExceeded) as exc:
            skipped[name] = str(exc)
            return None
        finally:
            timings[name] = time.perf_counter() - t0

    series = stage("chief_series", lambda: structure.chief_series(
        G, lattice_cap, element_cap, budget))
    if series is not None:
        rep["a"] = sum(1 for f in series if not f.is_frattini)
        rep["b"] = sum(1 for f in series if not f.is_abelian)
        rep["chief_factors"] = [
            {"order": f.order, "abelian": f.is_abelian,
             "frattini": f.is_frattini, "prime": f.prime, "dim": f.dim}
            for f in series]
    else:
        rep["a"] = rep["b"] = None
        rep["chief_factors"] = None

    rep["d"] = stage("d", lambda: genset.d(
        G, element_cap, budget, seed, search_order_cap))
    rep["m"] = stage("m", lambda: genset.m(
        G, False, lattice_cap, element_cap, budget, search_order_cap))

    if rep["d"] is not None and rep["m"] is not None:
        if G.is_soluble() or G.order() <= search_order_cap:
            spec = stage("spectrum", lambda: genset.spectrum(
                G, lattice_cap, element_cap, budget, seed, search_order_cap))
            rep["spectrum"] = sorted(spec) if spec is not None else None
        else:
            skipped["spectrum"] = (
                f"spectrum search needs order <= {search_order_cap}, "
                f"group has order {G.order()}")
            rep["spectrum"] = None
    else:
        skipped["spectrum"] = "spectrum needs both d and m"
        rep["spectrum"] = None

    if rep["d"] is not None and rep["m"] is not None:
        verdicts = stage("verdicts", lambda: verify.verify_all(
            G, d=rep["d"], m=rep["m"], lattice_cap=lattice_cap,
            element_cap=element_cap, budget=budget))
        if verdicts is not None:
            rep["verdicts"] = [
                {"theorem": v.theorem, "applicable": v.applicable,
                 "case": v.case, "ok": v.ok}
                for v in verdicts]
        else:
            rep["verdicts"] = None
    else:
        skipped["verdicts"] = "verdicts need both d and m"
        rep["verdicts"] = None

    if skipped:
        rep["skipped"] = skipped
    rep["timings"] = timings
    if cache is not None and "error" not in rep:
        append_cache(cache, rep)
    return rep


def _error_kind(exc):
    if isinstance(exc, builder.ParseError):
        return "parse"
    if isinstance(exc, CapExceeded):
        return "cap"
    if isinstance(exc, TimeBudgetExceeded):
        return "time"
    return "group"


def load_cache(path):
    """Read a JSONL cache into {fingerprint: report}, skipping bad lines."""
    out = {}
    try:
        with open(path, "r", encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    rec = json.loads(line)
                except json.JSONDecodeError:
                    warnings.warn(f"{path}:{lineno}: unreadable cache line "
                                  "skipped")
                    continue
                if isinstance(rec, dict) and "fingerprint" in rec:
                    out[rec["fingerprint"]] = rec
                else:
                    warnings.warn(f"{path}:{lineno}: cache line without a "
                                  "fingerprint skipped")
    except FileNotFoundError:
        pass
    return out


def append_cache(path, rep):
    """Append one report to the cache under an exclusive advisory lock."""
    line = canonical_json(rep) + "\n"
    with open(path, "a", encoding="utf-8") as fh:
        if fcntl is not None:
            fcntl.flock(fh.fileno(), fcntl.LOCK_EX)
        try:
            fh.write(line)
            fh.flush()
        finally:
            if fcntl is not None:
                fcntl.flock(fh.fileno(), fcntl.LOCK_UN)


def read_expressions(path):
    """Expression texts from one file: one per line, # comments allowed."""
    texts = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if line:
                texts.append(line)
    return texts


def corpus_files(directory, slow=False):
    """Sorted *.expr paths; names containing ".slow" only when slow is set."""
    import pathlib
    files = sorted(pathlib.Path(directory).glob("*.expr"))
    if not slow:
        files = [p for p in files if ".slow" not in p.name]
    return files


def _corpus_entry(job):
    text, knobs = job
    return compute_report(text, **knobs)


def run_corpus(directory, slow=False, threads=1, **knobs):
    """One report per expression found under ``directory``.

    Every failure stays inside its own report, so a bad file never affects
    its neighbours.  Results are merged into fingerprint order (reports
    without a fingerprint sort last, by id) no matter how many workers ran.
    """
    reports = []
    pending = []
    for path in corpus_files(directory, slow):
        try:
            texts = read_expressions(path)
        except OSError as exc:
            reports.append({"schema": SCHEMA, "id": str(path),
                            "error": str(exc), "error_kind": "group"})
            continue
        pending.extend((text, knobs) for text in texts)

    if threads > 1 and len(pending) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=threads) as ex:
            reports.extend(ex.map(_corpus_entry, pending))
    else:
        reports.extend(_corpus_entry(job) for job in pending)

    reports.sort(key=lambda r: (0, r["fingerprint"]) if "fingerprint" in r
                 else (1, r["id"]))
    return reports
