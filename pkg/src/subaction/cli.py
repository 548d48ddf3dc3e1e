"""Batch experiment runner.

Subcommands:
  run <scenario.json>      execute the scenario's task list, emit a report
  search --family F --predicate P --budget N [--seed S] [--cursor C]
  report --format json|csv [--in report.json]

All output is JSON (or csv for `report`), deterministic for a fixed seed up
to the elapsed_seconds field. Rationals travel as "num/den" strings; floats
are rejected everywhere. Exit codes: 0 all conclusions hold (a failed kneser
inequality is a finding, not an error), 1 a proved statement was violated,
2 usage or validation errors, 3 capacity refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import time
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

from . import config, theorems
from .actions import ActionProfile, GroupAction, OrbitDecomposition
from .errors import (CapacityError, DomainError, InvariantError,
                     StructuralError)
from .groups import Subgroup
from .linalg import Subspace
from .rationals import exact_fraction, format_fraction
from .search import (FAMILIES, PREDICATES, SearchResult, build_action,
                     build_group, build_representation, search)
from .setfuncs import (CoreResult, Exhaustiveness, MinimizationResult,
                       MuResult, actor_growth, core_set, cut_function,
                       min_image_ratio, minimize_nonempty, target_growth)

VERSION = "0.1.0"


class ScenarioError(ValueError):
    """Scenario text failed validation; maps to exit code 2."""


# -- json serialization ---------------------------------------------------------


def to_jsonable(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Fraction):
        return format_fraction(obj)
    if isinstance(obj, float):
        raise TypeError("refusing to serialize a float; use Fraction")
    if isinstance(obj, (frozenset, set)):
        return sorted(to_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(x) for x in obj]
    if isinstance(obj, np.ndarray):
        return [to_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, Subgroup):
        return {"order": obj.order, "members": sorted(obj.members)}
    if isinstance(obj, Subspace):
        return {"p": obj.p, "ambient_dim": obj.ambient_dim, "dim": obj.dim,
                "basis": [list(r) for r in obj.rows]}
    if isinstance(obj, Exhaustiveness):
        return obj.to_json()
    if isinstance(obj, theorems.CheckReport):
        return {
            "statement_id": obj.statement_id,
            "hypotheses_hold": obj.hypotheses_hold,
            "conclusion_holds": obj.conclusion_holds,
            "witnesses": to_jsonable(obj.witnesses),
            "counterexample": to_jsonable(obj.counterexample),
            "exhaustiveness": obj.exhaustiveness.to_json(),
            "details": to_jsonable(obj.details),
        }
    if isinstance(obj, MinimizationResult):
        return {
            "label": obj.label, "ground_size": obj.ground_size,
            "min_value": to_jsonable(obj.min_value),
            "fragment_count": obj.fragment_count,
            "fragments": to_jsonable(obj.fragments),
            "fragments_truncated": obj.fragments_truncated,
            "atoms": to_jsonable(obj.atoms), "atom_size": obj.atom_size,
        }
    if isinstance(obj, CoreResult):
        return {"atoms": to_jsonable(obj.atoms),
                "union": to_jsonable(obj.union), "disjoint": obj.disjoint}
    if isinstance(obj, MuResult):
        return {"mu": to_jsonable(obj.mu),
                "witness": to_jsonable(obj.witness),
                "methods": to_jsonable(obj.methods),
                "dinkelbach_iterations": obj.dinkelbach_iterations}
    if isinstance(obj, OrbitDecomposition):
        return {"representatives": to_jsonable(obj.representatives),
                "orbits": to_jsonable(obj.orbits),
                "count": obj.count}
    if isinstance(obj, ActionProfile):
        return {"group_order": obj.group_order,
                "domain_size": obj.domain_size,
                "orbit_sizes": to_jsonable(obj.orbit_sizes),
                "transitive": obj.transitive, "faithful": obj.faithful,
                "free": obj.free, "kernel_order": len(obj.kernel)}
    raise TypeError(f"no JSON form for {type(obj).__name__}")


# -- scenario validation ----------------------------------------------------------

_TOP_KEYS = {"group", "action", "representation", "sets", "subspaces",
             "params", "tasks", "seed", "caps"}
_GROUP_KEYS = {"symmetric": {"n"}, "alternating": {"n"}, "cyclic": {"n"},
               "dihedral": {"n"}, "affine_gl1": {"p"},
               "direct_product": {"left", "right"}}
_ACTION_KEYS = {"natural": set(), "left_translation": set(),
                "conjugation": set(), "coset": {"subgroup"}}
_REP_KEYS = {"permutation": {"p"}, "matrices": {"p", "generators"},
             "swap": {"p"}}
_PARAM_KEYS = {"lambda", "alpha", "epsilon", "mu_param", "n_max"}
_TASK_KEYS: dict[str, set[str]] = {
    "kneser": {"A", "Y", "example"},
    "murphy": {"A", "Y", "W"},
    "small_growth": {"A", "Y", "W", "alpha"},
    "freiman": {"A", "Y", "W", "alpha"},
    "ruzsa": {"A", "B", "Y"},
    "hamidoune": {"Y", "W", "lambda", "A0"},
    "petridis": {"A", "Y", "W", "alpha"},
    "tao_doubling": {"A", "Y", "epsilon"},
    "taod": {"A", "Y", "W", "alpha", "n_max"},
    "fragment_bounds": {"A", "lambda", "mu_param"},
    "mu": {"Y"},
    "minimize": {"function", "A", "Y", "lambda"},
    "core": {"function", "A", "Y", "lambda"},
    "orbits": set(),
    "profile": set(),
}
_RATIONAL_TASK_KEYS = {"alpha", "lambda", "epsilon", "mu_param"}


def _reject_float(text: str):
    raise ScenarioError(
        f"float literal {text!r} is not allowed; write a rational "
        f"as \"num/den\"")


def _check_keys(where: str, given: dict, allowed: set[str]) -> None:
    unknown = sorted(set(given) - allowed)
    if unknown:
        raise ScenarioError(f"{where}: unknown key {unknown[0]!r} "
                            f"(allowed: {', '.join(sorted(allowed))})")


def _check_rational(where: str, value) -> None:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ScenarioError(f"{where}: rationals must be ints or "
                            f"\"num/den\" strings, got {value!r}")
    try:
        exact_fraction(value)
    except (DomainError, ValueError) as e:
        raise ScenarioError(f"{where}: {e}") from e


def _check_int_list(where: str, value) -> None:
    if not isinstance(value, list) or not value or \
            not all(isinstance(x, int) and not isinstance(x, bool)
                    for x in value):
        raise ScenarioError(f"{where}: expected a nonempty list of integers")


def _validate_spec(where: str, spec, table: dict[str, set[str]]) -> None:
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ScenarioError(f"{where}: expected an object with a \"kind\" key")
    kind = spec["kind"]
    if kind not in table:
        raise ScenarioError(f"{where}: unknown kind {kind!r} "
                            f"(known: {', '.join(sorted(table))})")
    _check_keys(where, spec, table[kind] | {"kind"})
    if kind == "direct_product":
        _validate_spec(f"{where}.left", spec["left"], table)
        _validate_spec(f"{where}.right", spec["right"], table)


def parse_scenario(text: str) -> dict:
    """Parse and validate a scenario JSON document. Unknown keys, floats,
    and dangling set references are rejected with the offending path."""
    try:
        sc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as e:
        raise ScenarioError(
            f"line {e.lineno}, column {e.colno}: {e.msg}") from e
    if not isinstance(sc, dict):
        raise ScenarioError("scenario must be a JSON object")
    _check_keys("scenario", sc, _TOP_KEYS)
    for key in ("group", "tasks"):
        if key not in sc:
            raise ScenarioError(f"scenario: missing required key {key!r}")
    _validate_spec("scenario.group", sc["group"], _GROUP_KEYS)
    if "action" in sc:
        _validate_spec("scenario.action", sc["action"], _ACTION_KEYS)
        if sc["action"]["kind"] == "coset":
            _check_int_list("scenario.action.subgroup",
                            sc["action"]["subgroup"])
    if "representation" in sc:
        _validate_spec("scenario.representation", sc["representation"],
                       _REP_KEYS)

    sets = sc.get("sets", {})
    if not isinstance(sets, dict):
        raise ScenarioError("scenario.sets: expected an object")
    for name, val in sets.items():
        where = f"scenario.sets.{name}"
        if isinstance(val, dict):
            _check_keys(where, val, {"generate"})
            _check_int_list(f"{where}.generate", val.get("generate"))
        else:
            _check_int_list(where, val)

    subspaces = sc.get("subspaces", {})
    if not isinstance(subspaces, dict):
        raise ScenarioError("scenario.subspaces: expected an object")
    for name, val in subspaces.items():
        where = f"scenario.subspaces.{name}"
        if not isinstance(val, list) or not all(
                isinstance(row, list) and
                all(isinstance(x, int) and not isinstance(x, bool)
                    for x in row) for row in val):
            raise ScenarioError(f"{where}: expected a list of integer vectors")
        if "representation" not in sc:
            raise ScenarioError(f"{where}: subspaces need a representation")

    params = sc.get("params", {})
    if not isinstance(params, dict):
        raise ScenarioError("scenario.params: expected an object")
    _check_keys("scenario.params", params, _PARAM_KEYS)
    for key, val in params.items():
        if key == "n_max":
            if not isinstance(val, int) or isinstance(val, bool) or val < 1:
                raise ScenarioError("scenario.params.n_max: expected a "
                                    "positive integer")
        else:
            _check_rational(f"scenario.params.{key}", val)

    if "seed" in sc and (not isinstance(sc["seed"], int)
                         or isinstance(sc["seed"], bool)):
        raise ScenarioError("scenario.seed: expected an integer")

    caps = sc.get("caps", {})
    if not isinstance(caps, dict):
        raise ScenarioError("scenario.caps: expected an object")
    for name, val in caps.items():
        if name not in config.snapshot():
            raise ScenarioError(f"scenario.caps: unknown cap {name!r}")
        if not isinstance(val, int) or isinstance(val, bool) or val < 1:
            raise ScenarioError(f"scenario.caps.{name}: caps must be "
                                f"positive integers")

    tasks = sc["tasks"]
    if not isinstance(tasks, list) or not tasks:
        raise ScenarioError("scenario.tasks: expected a nonempty list")
    for i, task in enumerate(tasks):
        where = f"scenario.tasks[{i}]"
        if not isinstance(task, dict) or "task" not in task:
            raise ScenarioError(f"{where}: expected an object with a "
                                f"\"task\" key")
        name = task["task"]
        if name not in _TASK_KEYS:
            raise ScenarioError(f"{where}: unknown task {name!r} "
                                f"(known: {', '.join(sorted(_TASK_KEYS))})")
        _check_keys(where, task, _TASK_KEYS[name] | {"task"})
        for key, val in task.items():
            if key in _RATIONAL_TASK_KEYS:
                _check_rational(f"{where}.{key}", val)
            elif key in ("A", "B", "Y", "A0"):
                if not isinstance(val, str):
                    raise ScenarioError(f"{where}.{key}: expected a set name")
                if val not in sets:
                    raise ScenarioError(f"{where}.{key}: dangling set "
                                        f"reference {val!r}")
            elif key == "W":
                if not isinstance(val, str) or val not in subspaces:
                    raise ScenarioError(f"{where}.W: dangling subspace "
                                        f"reference {val!r}")
            elif key == "n_max":
                if not isinstance(val, int) or isinstance(val, bool) \
                        or val < 1:
                    raise ScenarioError(f"{where}.n_max: expected a "
                                        f"positive integer")
            elif key == "example":
                if not isinstance(val, dict):
                    raise ScenarioError(f"{where}.example: expected an object")
                _check_keys(f"{where}.example", val, {"k", "ell"})
                for p in ("k", "ell"):
                    if not isinstance(val.get(p), int) or val[p] < 1:
                        raise ScenarioError(f"{where}.example.{p}: expected "
                                            f"a positive integer")
            elif key == "function":
                if val not in ("cut", "actor_growth", "target_growth"):
                    raise ScenarioError(f"{where}.function: unknown function "
                                        f"{val!r}")
        _check_task_required(where, task)
    return sc


_TASK_REQUIRED = {
    "ruzsa": ("A", "B", "Y"), "tao_doubling": ("A", "Y"),
    "fragment_bounds": ("A",), "mu": ("Y",),
    "minimize": ("function",), "core": ("function",),
}
_TARGET_TASKS = ("murphy", "small_growth", "freiman", "hamidoune",
                 "petridis", "taod")


def _check_task_required(where: str, task: dict) -> None:
    name = task["task"]
    for key in _TASK_REQUIRED.get(name, ()):
        if key not in task:
            raise ScenarioError(f"{where}: missing required key {key!r}")
    if "W" in task and "Y" in task:
        raise ScenarioError(f"{where}: give either Y (set variant) or "
                            f"W (linear variant), not both")
    if name == "kneser":
        if ("example" in task) == ("A" in task and "Y" in task):
            raise ScenarioError(f"{where}: give either A and Y, or example")
    elif name in _TARGET_TASKS:
        if name != "hamidoune" and "A" not in task:
            raise ScenarioError(f"{where}: missing required key 'A'")
        if "Y" not in task and "W" not in task:
            raise ScenarioError(f"{where}: needs a target Y or a subspace W")
    elif name in ("minimize", "core"):
        needed = {"actor_growth": "Y", "target_growth": "A"}.get(
            task["function"])
        if needed and needed not in task:
            raise ScenarioError(f"{where}: function "
                                f"{task['function']!r} needs {needed!r}")


# -- scenario execution -----------------------------------------------------------


@contextmanager
def _cap_overrides(caps: dict):
    saved = {}
    try:
        for name, val in caps.items():
            env = f"SUBACTION_{name}"
            saved[env] = os.environ.get(env)
            os.environ[env] = str(val)
        yield
    finally:
        for env, old in saved.items():
            if old is None:
                os.environ.pop(env, None)
            else:
                os.environ[env] = old


def _param(task: dict, params: dict, key: str, required: bool = True):
    if key in task:
        return task[key]
    if key in params:
        return params[key]
    if required:
        raise ScenarioError(f"task {task['task']!r}: missing parameter "
                            f"{key!r} (set it on the task or in params)")
    return None


def _resolve_sets(G, sets_spec: dict) -> dict:
    out = {}
    for name, val in sets_spec.items():
        if isinstance(val, dict):
            out[name] = tuple(sorted(G.generated_set(
                [int(g) for g in val["generate"]])))
        else:
            out[name] = tuple(sorted(set(int(x) for x in val)))
    return out


def _kneser_example_task(action: GroupAction, task: dict) -> dict:
    n = action.domain_size
    if action.group.order != math.factorial(n):
        raise ScenarioError("kneser example needs the natural action of "
                            "the full symmetric group")
    k, ell = task["example"]["k"], task["example"]["ell"]
    if not 1 <= k <= ell < n:
        raise ScenarioError("kneser example needs 1 <= k <= ell < n")
    ex_action, A, Y, expected = theorems.kneser_example_instance(n, k, ell)
    report = theorems.check_kneser(ex_action, A, Y)
    matches = {key: report.details[key] == expected[key] for key in expected}
    return {"report": to_jsonable(report),
            "expected": to_jsonable(expected),
            "matches_expected": matches}


def _exec_task(task: dict, *, action, rep, sets, subspaces, params, seed
               ) -> dict:
    name = task["task"]
    out: dict = {"task": name}

    def actor(key="A"):
        return sets[task[key]]

    def target():
        return sets[task["Y"]]

    def subspace():
        return subspaces[task["W"]]

    def need_action():
        if action is None:
            raise ScenarioError(f"task {name!r} needs an action")
        return action

    def need_rep():
        if rep is None:
            raise ScenarioError(f"task {name!r} needs a representation")
        return rep

    linear = "W" in task

    if name == "kneser":
        if "example" in task:
            if "A" in task or "Y" in task:
                raise ScenarioError("kneser task: give either example "
                                    "or A/Y, not both")
            out.update(_kneser_example_task(need_action(), task))
            return out
        rep_out = theorems.check_kneser(need_action(), actor(), target())
    elif name == "murphy":
        obj = need_rep() if linear else need_action()
        rep_out = theorems.check_murphy(
            obj, actor(), subspace() if linear else target())
    elif name == "small_growth":
        obj = need_rep() if linear else need_action()
        rep_out = theorems.check_small_growth(
            obj, actor(), subspace() if linear else target(),
            _param(task, params, "alpha"))
    elif name == "freiman":
        obj = need_rep() if linear else need_action()
        rep_out = theorems.check_freiman(
            obj, actor(), subspace() if linear else target(),
            _param(task, params, "alpha"))
    elif name == "ruzsa":
        rep_out = theorems.check_ruzsa_triple(need_action(), actor("A"),
                                              actor("B"), target())
    elif name == "hamidoune":
        A0 = sets[task["A0"]] if "A0" in task else None
        obj = need_rep() if linear else need_action()
        rep_out = theorems.check_hamidoune(
            obj, subspace() if linear else target(),
            _param(task, params, "lambda"), A0, seed=seed)
    elif name == "petridis":
        obj = need_rep() if linear else need_action()
        rep_out = theorems.find_petridis_witness(
            obj, actor(), subspace() if linear else target(),
            _param(task, params, "alpha"), seed=seed)
    elif name == "tao_doubling":
        rep_out = theorems.check_tao_small_doubling(
            need_action(), actor(), target(),
            _param(task, params, "epsilon"))
    elif name == "taod":
        n_max = _param(task, params, "n_max", required=False) or 5
        obj = need_rep() if linear else need_action()
        rep_out = theorems.find_taod_witness(
            obj, actor(), subspace() if linear else target(),
            _param(task, params, "alpha"), n_max=n_max, seed=seed)
    elif name == "fragment_bounds":
        rep_out = theorems.check_fragment_bounds(
            need_action(), actor(), _param(task, params, "lambda"),
            _param(task, params, "mu_param", required=False))
    elif name == "mu":
        out["result"] = to_jsonable(min_image_ratio(need_action(), target()))
        return out
    elif name in ("minimize", "core"):
        fn_name = task["function"]
        act = need_action()
        if fn_name == "cut":
            f = cut_function(act)
        elif fn_name == "actor_growth":
            f = actor_growth(act, target(), _param(task, params, "lambda"))
        else:
            f = target_growth(act, actor(), _param(task, params, "lambda"))
        if name == "minimize":
            out["result"] = to_jsonable(minimize_nonempty(f))
        else:
            out["result"] = to_jsonable(core_set(f))
        return out
    elif name == "orbits":
        out["result"] = to_jsonable(need_action().orbit_decomposition())
        return out
    elif name == "profile":
        out["result"] = to_jsonable(need_action().profile())
        return out
    else:  # pragma: no cover - parse_scenario blocks unknown tasks
        raise ScenarioError(f"unknown task {name!r}")

    out["report"] = to_jsonable(rep_out)
    out["violated"] = rep_out.violated and name != "kneser"
    return out


def run_scenario(sc: dict) -> dict:
    """Execute a validated scenario and assemble the report dict."""
    started = time.time()
    with _cap_overrides(sc.get("caps", {})):
        G = build_group(sc["group"])
        action = build_action(G, sc["action"]) if "action" in sc else None
        rep = None
        if "representation" in sc:
            rep = build_representation(G, action, sc["representation"])
        sets = _resolve_sets(G, sc.get("sets", {}))
        subspaces = {}
        for sub_name, rows in sc.get("subspaces", {}).items():
            subspaces[sub_name] = Subspace.from_vectors(rep.p, rep.dim, rows)
        params = sc.get("params", {})
        seed = sc.get("seed")
        results = [
            _exec_task(task, action=action, rep=rep, sets=sets,
                       subspaces=subspaces, params=params, seed=seed)
            for task in sc["tasks"]
        ]
        caps = config.snapshot()
    return {"version": VERSION, "scenario": sc, "results": results,
            "caps": caps,
            "elapsed_seconds": round(time.time() - started, 6)}


def _search_report(res: SearchResult, elapsed: float) -> dict:
    def records(items):
        return [{"cursor": r.cursor, "kind": r.kind,
                 "scenario": r.scenario, "report": to_jsonable(r.report)}
                for r in items]
    return {
        "version": VERSION,
        "search": {"family": res.family, "predicate": res.predicate,
                   "seed": res.seed, "start_cursor": res.start_cursor,
                   "next_cursor": res.next_cursor},
        "stats": {"instances": res.instances,
                  "hypotheses_held": res.hypotheses_held,
                  "findings": len(res.findings),
                  "violations": len(res.violations)},
        "findings": records(res.findings),
        "violations": records(res.violations),
        "caps": config.snapshot(),
        "elapsed_seconds": round(elapsed, 6),
    }


# -- report reformatting ----------------------------------------------------------


def _to_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if "results" in report:
        writer.writerow(["index", "task", "hypotheses_hold",
                         "conclusion_holds", "exhaustiveness", "summary"])
        for i, res in enumerate(report["results"]):
            task = res.get("task", "")
            rep = res.get("report")
            if rep is not None:
                exh = rep["exhaustiveness"]["kind"]
                writer.writerow([i, task, rep["hypotheses_hold"],
                                 rep["conclusion_holds"], exh,
                                 rep["statement_id"]])
            else:
                inner = res.get("result", {})
                summary = inner.get("mu") or inner.get("min_value") \
                    or inner.get("count") or ""
                writer.writerow([i, task, "", "", "", summary])
    elif "findings" in report:
        writer.writerow(["kind", "cursor", "statement_id",
                         "conclusion_holds"])
        for rec in report.get("findings", []) + report.get("violations", []):
            writer.writerow([rec["kind"], rec["cursor"],
                             rec["report"]["statement_id"],
                             rec["report"]["conclusion_holds"]])
    else:
        raise ScenarioError("not a recognised report document")
    return buf.getvalue()


# -- entry point -------------------------------------------------------------------


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="subaction",
        description="growth checkers and submodular minimizers for finite "
                    "group actions")
    sub = ap.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a scenario file")
    p_run.add_argument("scenario", help="path to a scenario JSON file")
    p_run.add_argument("--out", help="write the report here instead of stdout")

    p_search = sub.add_parser("search", help="stream seeded instances "
                                             "through a predicate")
    p_search.add_argument("--family", required=True,
                          choices=sorted(FAMILIES))
    p_search.add_argument("--predicate", required=True,
                          choices=sorted(PREDICATES))
    p_search.add_argument("--budget", required=True, type=int,
                          help="instance count")
    p_search.add_argument("--seed", type=int, default=0xD1CE)
    p_search.add_argument("--cursor", type=int, default=0,
                          help="resume position")
    p_search.add_argument("--out", help="write the report here")

    p_rep = sub.add_parser("report", help="reformat a report document")
    p_rep.add_argument("--format", choices=("json", "csv"), default="json")
    p_rep.add_argument("--in", dest="in_path",
                       help="report file (default: stdin)")
    p_rep.add_argument("--out", help="write here instead of stdout")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "run":
            try:
                with open(args.scenario, encoding="utf-8") as fh:
                    text = fh.read()
            except OSError as e:
                print(f"error: {e}", file=sys.stderr)
                return 2
            sc = parse_scenario(text)
            report = run_scenario(sc)
            _emit(_dump(report), args.out)
            violated = any(r.get("violated") for r in report["results"])
            return 1 if violated else 0
        if args.command == "search":
            started = time.time()
            res = search(args.family, args.predicate, args.budget,
                         args.seed, args.cursor)
            _emit(_dump(_search_report(res, time.time() - started)),
                  args.out)
            return 1 if res.violations else 0
        if args.command == "report":
            if args.in_path:
                with open(args.in_path, encoding="utf-8") as fh:
                    doc = json.load(fh)
            else:
                doc = json.load(sys.stdin)
            if args.format == "csv":
                _emit(_to_csv(doc), args.out)
            else:
                _emit(_dump(doc), args.out)
            return 0
    except ScenarioError as e:
        print(f"scenario error: {e}", file=sys.stderr)
        return 2
    except (StructuralError, DomainError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except CapacityError as e:
        print(f"capacity: {e}", file=sys.stderr)
        return 3
    except InvariantError as e:
        print(f"invariant violation: {e}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
