"""Command line interface: validation, adjoint algebras, verification suites,
and catalog import/export.

Exit codes: 0 success, 1 mathematical failure, 2 input or schema error.
Reports are deterministic; timing is emitted to stderr only, and only when
requested, so stdout is byte-identical across repeated runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time

from . import catalog as cat
from .adjoint_algebras import (
    TwoCatAdjoint,
    class_function_basis,
    compare_adjoints,
    dinatural_invariance,
    equivalent_modules_iso,
    functor_transport_universality,
    shimizu_adjoint,
    transported_end_universality,
    verify_dual_transpose,
)
from .catalog import _mat_to_doc
from .center_engine import validate_center_algebra
from .errors import SchemaError, TensorAdjError
from .functor_cat import functor_axiom_defects
from .fusion_core import ObjectExpr
from .module_cat import regular_module

DEFAULT_SEED = 20260825

SUITES = ("theorem-5.6", "lemma-4.4", "lemma-5.2", "lemma-5.4", "prop-1.1")


def _digest_bytes(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()[:16]


def _digest_doc(doc) -> str:
    return _digest_bytes(json.dumps(doc, sort_keys=True).encode())


def _morphism_doc(f):
    return {
        "source": list(f.source.mult),
        "target": list(f.target.mult),
        "blocks": [_mat_to_doc(b) for b in f.blocks],
    }


def _check(name: str, ok: bool, detail=None) -> dict:
    out = {"name": name, "status": "pass" if ok else "fail"}
    if detail is not None:
        out["detail"] = detail
    return out


def _emit(report: dict, args) -> None:
    if args.json:
        print(json.dumps(report, indent=2, sort_keys=True))
        return
    print(f"tensoradj {report['command']}")
    for entry in report.get("entries", []):
        print(f"  {entry['kind']:8s} {entry['id']:20s} {entry['note']}")
    for line in report.get("lines", []):
        print(f"  {line}")
    for check in report.get("checks", []):
        mark = "PASS" if check["status"] == "pass" else "FAIL"
        print(f"  {mark} {check['name']}")
        if check["status"] != "pass" and check.get("detail") is not None:
            print(f"       {check['detail']}")
    summary = report.get("summary")
    if summary:
        print(
            f"  summary: {summary['total']} checks, "
            f"{summary['passed']} passed, {summary['failed']} failed"
        )


def _summarize(checks) -> dict:
    passed = sum(1 for c in checks if c["status"] == "pass")
    return {"total": len(checks), "passed": passed, "failed": len(checks) - passed}


def _exit_from(checks) -> int:
    return 0 if all(c["status"] == "pass" for c in checks) else 1


# -- validate ---------------------------------------------------------


def _read_json(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
        return raw, json.loads(raw.decode("utf-8"))
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise SchemaError(f"malformed JSON in {path}: {exc}") from exc


def cmd_validate(args) -> int:
    loaded = []
    for path in args.paths:
        raw, doc = _read_json(path)
        loaded.append((path, _digest_bytes(raw), doc))
    checks = []
    local_cats = {}
    local_mods = {}
    for path, _dig, doc in loaded:
        if doc.get("format") != cat.CAT_FORMAT:
            continue
        stem = path.rsplit("/", 1)[-1].removesuffix(".json")
        C = cat.category_from_json(doc, name=stem)
        problems = C.validate()
        local_cats[stem] = C
        checks.append(_check(f"category {path}", not problems, problems[:5] or None))
    for path, _dig, doc in loaded:
        if doc.get("format") != cat.MOD_FORMAT:
            continue
        base_id = doc.get("base")
        base = local_cats.get(base_id)
        if base is None:
            base = cat.get_category(base_id)
        stem = path.rsplit("/", 1)[-1].removesuffix(".json")
        M = cat.module_from_json(doc, base, name=stem)
        problems = M.validate()
        local_mods[stem] = M
        checks.append(_check(f"module {path}", not problems, problems[:5] or None))
    for path, _dig, doc in loaded:
        fmt = doc.get("format")
        if fmt in (cat.CAT_FORMAT, cat.MOD_FORMAT):
            continue
        if fmt != cat.FUN_FORMAT:
            raise SchemaError(f"{path}: unknown format {fmt!r}")
        src = _resolve_module_ref(doc.get("source"), local_mods)
        tgt = _resolve_module_ref(doc.get("target"), local_mods)
        F = cat.functor_from_json(doc, src, tgt)
        problems = [str(t) for t in functor_axiom_defects(F)]
        checks.append(_check(f"functor {path}", not problems, problems[:5] or None))
    report = {
        "command": "validate",
        "inputs": [{"path": p, "digest": d} for p, d, _ in loaded],
        "checks": checks,
        "summary": _summarize(checks),
    }
    _emit(report, args)
    return _exit_from(checks)


def _resolve_module_ref(ref, local_mods):
    if isinstance(ref, str) and ref in local_mods:
        return local_mods[ref]
    if isinstance(ref, str) and "/" in ref:
        cid, mid = ref.split("/", 1)
        return cat.get_module(cid, mid)
    raise SchemaError(f"cannot resolve module reference {ref!r}")


# -- adjoint ----------------------------------------------------------


def cmd_adjoint(args) -> int:
    M = cat.get_module(args.category, args.module)
    C = M.base
    sh = shimizu_adjoint(M)
    checks = []
    problems = validate_center_algebra(sh.algebra)
    checks.append(_check("end-route algebra laws", not problems,
                         problems[:5] or None))
    carrier = list(sh.algebra.carrier.obj.mult)
    report = {
        "command": f"adjoint {args.category}/{args.module}",
        "inputs": [{
            "id": f"{args.category}/{args.module}",
            "digest": _digest_doc(cat.module_to_json(M, args.category)),
        }],
        "carrier": carrier,
        "checks": checks,
    }
    lines = [f"carrier multiplicities: {carrier}"]
    if args.json:
        report["halfbraiding"] = [
            {"simple": C.simples[a], "morphism": _morphism_doc(f)}
            for a, f in enumerate(sh.algebra.carrier.sigma)
        ]
        report["product"] = _morphism_doc(sh.algebra.mult)
        report["unit"] = _morphism_doc(sh.algebra.unit)
    tc = None
    if args.two_cat or args.compare:
        tc = TwoCatAdjoint(M)
    if args.two_cat:
        problems = validate_center_algebra(tc.algebra)
        checks.append(_check("functor-route algebra laws", not problems,
                             problems[:5] or None))
        same = tc.algebra.carrier.obj.mult == sh.algebra.carrier.obj.mult
        checks.append(_check("routes agree on the carrier", same))
    if args.compare:
        rep = compare_adjoints(M, shimizu=sh, twocat=tc)
        for key in sorted(rep.certificates):
            checks.append(_check(f"comparison {key}", rep.certificates[key]))
    if args.cf:
        reg = sh if M is regular_module(C) else None
        dim = len(class_function_basis(M, shimizu=sh, regular_adjoint=reg))
        report["class_function_dim"] = dim
        lines.append(f"class functions: dimension {dim}")
    report["lines"] = lines
    report["summary"] = _summarize(checks)
    _emit(report, args)
    return _exit_from(checks)


# -- verify -----------------------------------------------------------


class _VerifyContext:
    """Shared per-module algebra instances for one verify run."""

    def __init__(self):
        self.sh = {}
        self.tc = {}

    def shimizu(self, cid, mid):
        key = (cid, mid)
        if key not in self.sh:
            self.sh[key] = shimizu_adjoint(cat.get_module(cid, mid))
        return self.sh[key]

    def twocat(self, cid, mid):
        key = (cid, mid)
        if key not in self.tc:
            self.tc[key] = TwoCatAdjoint(cat.get_module(cid, mid))
        return self.tc[key]


def _catalog_modules():
    out = []
    for cid in cat.category_ids():
        for mid in cat.module_ids(cid):
            out.append((cid, mid))
    return out


def _verify_theorem(ctx, rng, perturb: bool):
    checks = []
    for cid, mid in _catalog_modules():
        M = cat.get_module(cid, mid)
        rep = compare_adjoints(M, shimizu=ctx.shimizu(cid, mid),
                               twocat=ctx.twocat(cid, mid),
                               perturb_sign=perturb)
        if perturb:
            name = f"theorem-5.6[perturbed] {cid}/{mid}"
            checks.append(_check(name, not rep.ok, rep.certificates))
        else:
            checks.append(_check(f"theorem-5.6 {cid}/{mid}", rep.ok,
                                 rep.certificates))
    return checks


def _verify_duals(ctx, rng):
    checks = []
    for cid, mid in _catalog_modules():
        M = cat.get_module(cid, mid)
        try:
            count = verify_dual_transpose(M, twocat=ctx.twocat(cid, mid))
            checks.append(_check(f"lemma-4.4 {cid}/{mid}", True,
                                 {"tuples": count}))
        except TensorAdjError as exc:
            checks.append(_check(f"lemma-4.4 {cid}/{mid}", False, str(exc)))
    return checks


def _verify_rescale(ctx, rng):
    checks = []
    choices = [1, 2, 3, 5, -1, -2, -3]
    for cid, mid in _catalog_modules():
        M = cat.get_module(cid, mid)
        sh = ctx.shimizu(cid, mid)
        ok = True
        detail = None
        for _ in range(10):
            scales = [rng.choice(choices) for _ in range(M.nm)]
            rep = dinatural_invariance(M, scales, shimizu=sh)
            if not rep.ok:
                ok = False
                detail = {"scales": scales, "certificates": rep.certificates}
                break
        checks.append(_check(f"lemma-5.2 {cid}/{mid}", ok, detail))
    return checks


def _verify_equivalences(ctx, rng):
    checks = []
    M = regular_module(cat.get_category("vecz2"))
    tc = ctx.twocat("vecz2", "regular")
    eq = cat.relabel_equivalence(M, [1, 0])
    rep = equivalent_modules_iso(eq, tc_source=tc, tc_target=tc)
    checks.append(_check("lemma-5.4 vecz2 relabeled", rep.ok, rep.certificates))
    choices = [2, 3, 5, -2, -3]
    lam = [[1] * M.nm, [rng.choice(choices) for _ in range(M.nm)]]
    _m2, eq = cat.gauge_equivalence(M, lam)
    rep = equivalent_modules_iso(eq, tc_source=tc)
    checks.append(_check("lemma-5.4 vecz2 gauge-transformed", rep.ok,
                         rep.certificates))
    return checks


def _verify_transports(ctx, rng):
    checks = []
    for cid in ("vecz2", "fib"):
        M = regular_module(cat.get_category(cid))
        X = ObjectExpr(tuple(1 for _ in range(M.base.n)))
        rep = transported_end_universality(M, X, rng, trials=10)
        checks.append(_check(f"prop-1.1(i) {cid}/regular", rep["ok"], rep))
        rep = functor_transport_universality(
            M, rng, trials=3, twocat=ctx.twocat(cid, "regular")
        )
        checks.append(_check(f"prop-1.1(ii) {cid}/regular", rep["ok"], rep))
    return checks


_SUITE_RUNNERS = {
    "theorem-5.6": _verify_theorem,
    "lemma-4.4": _verify_duals,
    "lemma-5.2": _verify_rescale,
    "lemma-5.4": _verify_equivalences,
    "prop-1.1": _verify_transports,
}


def cmd_verify(args) -> int:
    if args.perturb and args.suite != "theorem-5.6":
        raise SchemaError("--perturb applies only to the theorem-5.6 suite")
    suites = SUITES if args.suite == "all" else (args.suite,)
    ctx = _VerifyContext()
    rng = random.Random(args.seed)
    checks = []
    for suite in suites:
        runner = _SUITE_RUNNERS[suite]
        if suite == "theorem-5.6":
            checks.extend(runner(ctx, rng, args.perturb))
        else:
            checks.extend(runner(ctx, rng))
    report = {
        "command": f"verify {args.suite}",
        "seed": args.seed,
        "checks": checks,
        "summary": _summarize(checks),
    }
    _emit(report, args)
    return _exit_from(checks)


# -- catalog ----------------------------------------------------------


def cmd_catalog(args) -> int:
    if args.action == "list":
        entries = sorted(cat.catalog_entries(), key=lambda e: (e.kind, e.id))
        report = {
            "command": "catalog list",
            "entries": [
                {"id": e.id, "kind": e.kind, "note": e.note} for e in entries
            ],
        }
        _emit(report, args)
        return 0
    if args.id is None or args.path is None:
        raise SchemaError("catalog export needs an entry id and a target path")
    if "/" in args.id:
        cid, mid = args.id.split("/", 1)
        doc = cat.module_to_json(cat.get_module(cid, mid), cid)
    else:
        doc = cat.category_to_json(cat.get_category(args.id))
    payload = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    try:
        with open(args.path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    except OSError as exc:
        raise SchemaError(f"cannot write {args.path}: {exc}") from exc
    report = {
        "command": f"catalog export {args.id}",
        "lines": [f"wrote {args.path}"],
        "inputs": [{"id": args.id, "digest": _digest_doc(doc)}],
    }
    _emit(report, args)
    return 0


# -- entry point ------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tensoradj",
        description="Exact fusion-category engine: validation, adjoint "
        "algebras, and theorem verification on the built-in catalog.",
    )
    parser.add_argument("--json", action="store_true",
                        help="emit a JSON report instead of text")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="seed for randomized property trials")
    parser.add_argument("--timing", action="store_true",
                        help="print elapsed time to stderr")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("validate", help="validate category/module/functor files")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("adjoint", help="build the adjoint algebra of a module")
    p.add_argument("--category", required=True)
    p.add_argument("--module", default="regular")
    p.add_argument("--two-cat", dest="two_cat", action="store_true",
                   help="also build the functor-level route")
    p.add_argument("--compare", action="store_true",
                   help="certify the comparison isomorphism")
    p.add_argument("--cf", action="store_true",
                   help="report the class-function dimension")
    p.set_defaults(func=cmd_adjoint)

    p = sub.add_parser("verify", help="run a verification suite on the catalog")
    p.add_argument("suite", choices=SUITES + ("all",))
    p.add_argument("--perturb", action="store_true",
                   help="negative control: expect the perturbed check to fail")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", help="list or export catalog entries")
    p.add_argument("action", choices=("list", "export"))
    p.add_argument("id", nargs="?")
    p.add_argument("path", nargs="?")
    p.set_defaults(func=cmd_catalog)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.monotonic()
    try:
        code = args.func(args)
    except SchemaError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except TensorAdjError as exc:
        print(f"failure: {exc}", file=sys.stderr)
        return 1
    finally:
        if args.timing:
            print(f"elapsed: {time.monotonic() - t0:.2f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
