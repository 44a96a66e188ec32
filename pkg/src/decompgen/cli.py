"""Command line interface.

Exit codes: 0 success, 1 mathematical negative (a check that can honestly
say "no", like `trivial` or `split-check`), 2 validation error in the
input, 3 request outside the supported scope.  Reports are deterministic
for a fixed seed; `--format structured` emits JSON with stable keys.
"""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import factor
from .algebra import load_algebra_file, serialize_algebra, specialize
from .corpus import REGISTRY, STRETCH
from .decomposition import (
    dec_gen_membership,
    decomposition_matrix,
    is_trivial,
    split_data,
)
from .errors import EngineError, NotSplit
from .fingerprints import fingerprint_of_simple
from .modules import is_split, radical
from .primes import parse_prime
from .rings import ring_to_str
from .strata import (
    UnresolvedPrime,
    dec_ex,
    schur_discriminant_crosscheck,
    schur_elements,
    stratify,
    tree_lines,
)

DEFAULT_SEED = 1


def _emit(report, lines, fmt):
    if fmt == "structured":
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        for line in lines:
            print(line)


def _load(args):
    A = load_algebra_file(args.algebra)
    return A


def _prime(args, A):
    return parse_prime(args.prime, A.ring)


def cmd_validate(args):
    A = _load(args)
    report = {
        "algebra": A.name,
        "ring": ring_to_str(A.ring),
        "dim": A.dim,
        "basis": list(A.basis_names),
        "symmetric": A.trace_vector is not None,
        "valid": True,
    }
    lines = [f"{A.name}: dim {A.dim} over {ring_to_str(A.ring)}, "
             f"{'symmetric' if A.trace_vector is not None else 'no trace form'}, valid"]
    _emit(report, lines, args.format)
    return 0


def cmd_fiber(args):
    A = _load(args)
    p = _prime(args, A)
    F = specialize(A, p, validate=True)
    consts = []
    for i in range(F.dim):
        for j in range(F.dim):
            for k in range(F.dim):
                c = F.sc[i][j][k]
                if not F.field.is_zero(c):
                    consts.append([i, j, k, F.field.to_str(c)])
    report = {
        "algebra": A.name,
        "prime": p.short_str(),
        "field": repr(F.field),
        "dim": F.dim,
        "constants": consts,
    }
    lines = [f"fiber of {A.name} at {p.short_str()} over {F.field!r}, dim {F.dim}"]
    lines += [f"  b{i} * b{j} -> b{k} : {s}" for i, j, k, s in consts]
    _emit(report, lines, args.format)
    return 0


def cmd_radical(args):
    A = _load(args)
    p = _prime(args, A)
    F = specialize(A, p)
    lat = radical(F, seed=args.seed)
    rows = [[F.field.to_str(c) for c in row] for row in lat.rows]
    report = {"algebra": A.name, "prime": p.short_str(), "dim": lat.dim, "basis": rows}
    lines = [f"radical of {A.name} at {p.short_str()}: dim {lat.dim}"]
    lines += ["  [" + ", ".join(r) + "]" for r in rows]
    _emit(report, lines, args.format)
    return 0


def _wedderburn_report(A, p, wd):
    simples = []
    for s, mult, jh, e in zip(wd.simples, wd.multiplicities, wd.jh_multiplicities, wd.endo_dims):
        simples.append({"dim": s.dim, "top_multiplicity": mult,
                        "regular_multiplicity": jh, "endo_dim": e})
    return {
        "algebra": A.name,
        "prime": p.short_str(),
        "split": wd.split,
        "radical_dim": wd.radical_dim,
        "simples": simples,
    }


def cmd_simples(args):
    A = _load(args)
    p = _prime(args, A)
    ok, wd = is_split(specialize(A, p), seed=args.seed)
    report = _wedderburn_report(A, p, wd)
    lines = [f"{A.name} at {p.short_str()}: {len(wd.simples)} simples, "
             f"radical dim {wd.radical_dim}, {'split' if ok else 'not split'}"]
    for s in report["simples"]:
        lines.append(f"  dim {s['dim']}: multiplicity {s['regular_multiplicity']} "
                     f"in the regular module, End dim {s['endo_dim']}")
    _emit(report, lines, args.format)
    return 0


def cmd_split_check(args):
    A = _load(args)
    p = _prime(args, A)
    ok, wd = is_split(specialize(A, p), seed=args.seed)
    report = _wedderburn_report(A, p, wd)
    lines = [f"{A.name} at {p.short_str()}: {'split' if ok else 'NOT split'} "
             f"(endo dims {wd.endo_dims})"]
    _emit(report, lines, args.format)
    return 0 if ok else 1


def cmd_fingerprint(args):
    A = _load(args)
    p = _prime(args, A)
    ok, wd = is_split(specialize(A, p), seed=args.seed)
    fps = []
    for s in wd.simples:
        fp = fingerprint_of_simple(s)
        fps.append({"dim": s.dim, "polys": fp.to_strings()})
    report = {"algebra": A.name, "prime": p.short_str(), "fingerprints": fps}
    lines = [f"fingerprints of the {len(fps)} simples of {A.name} at {p.short_str()}"]
    for rec in fps:
        lines.append(f"  dim {rec['dim']}:")
        for poly in rec["polys"]:
            lines.append("    [" + ", ".join(poly) + "]")
    _emit(report, lines, args.format)
    return 0


def _matrix_lines(D):
    lines = [f"decomposition matrix of {D.algebra_name} at {D.prime.short_str()}"]
    colhdr = "  ".join(f"T{j}(d{dj})" for j, dj in enumerate(D.col_dims))
    lines.append(f"{'':>10}  {colhdr}")
    for i, row in enumerate(D.entries):
        label = f"S{i}(d{D.row_dims[i]})"
        lines.append(f"{label:>10}  " + "  ".join(f"{c:>7d}" for c in row))
    return lines


def cmd_decmat(args):
    A = _load(args)
    p = _prime(args, A)
    D = decomposition_matrix(A, p, seed=args.seed)
    report = {
        "algebra": A.name,
        "prime": p.short_str(),
        "rows": [list(r) for r in D.entries],
        "row_dims": list(D.row_dims),
        "col_dims": list(D.col_dims),
        "trivial": is_trivial(D),
    }
    _emit(report, _matrix_lines(D), args.format)
    return 0


def cmd_trivial(args):
    A = _load(args)
    p = _prime(args, A)
    ev = dec_gen_membership(A, p, seed=args.seed, verify=args.verify)
    report = {
        "algebra": A.name,
        "prime": p.short_str(),
        "trivial": ev.trivial,
        "generic_radical_dim": ev.generic_radical_dim,
        "fiber_radical_dim": ev.fiber_radical_dim,
    }
    if args.verify:
        report["matrix"] = [list(r) for r in ev.matrix.entries]
        report["matrix_agrees"] = ev.matrix_agrees
    verdict = "Trivial" if ev.trivial else "NonTrivial"
    lines = [f"{A.name} at {p.short_str()}: {verdict} "
             f"(radical dims {ev.generic_radical_dim} generic, {ev.fiber_radical_dim} fiber)"]
    _emit(report, lines, args.format)
    return 0 if ev.trivial else 1


def cmd_schur(args):
    A = _load(args)
    cs = schur_elements(A, seed=args.seed)
    report = {"algebra": A.name, "schur_elements": [str(c) for c in cs]}
    lines = [f"Schur elements of {A.name}: " + ", ".join(str(c) for c in cs)]
    if args.verify:
        rep = schur_discriminant_crosscheck(A, seed=args.seed)
        report["product"] = str(rep["product"])
        report["matches_discriminant"] = rep["match"]
        lines.append(f"product {rep['product']}; matches verified discriminant: {rep['match']}")
    _emit(report, lines, args.format)
    return 0


def _discriminant_report(dec):
    pts = []
    for pt in dec.points:
        rec = {"status": pt.status}
        if isinstance(pt.prime, UnresolvedPrime):
            rec["generator"] = str(pt.prime.generator)
            rec["reason"] = pt.prime.reason
        else:
            rec["prime"] = pt.prime.short_str()
            if pt.fiber_radical_dim is not None:
                rec["fiber_radical_dim"] = pt.fiber_radical_dim
                rec["generic_radical_dim"] = pt.generic_radical_dim
        pts.append(rec)
    return {"algebra": dec.algebra_name, "candidate": str(dec.candidate), "points": pts}


def cmd_discriminant(args):
    A = _load(args)
    dec = dec_ex(A, seed=args.seed)
    report = _discriminant_report(dec)
    lines = [f"candidate discriminant of {A.name}: ({dec.candidate})"]
    for pt in dec.points:
        if isinstance(pt.prime, UnresolvedPrime):
            lines.append(f"  ({pt.prime.generator}): {pt.status} ({pt.prime.reason})")
        else:
            lines.append(f"  {pt.prime.short_str()}: {pt.status} "
                         f"(radical {pt.generic_radical_dim} -> {pt.fiber_radical_dim})")
    _emit(report, lines, args.format)
    return 0


def _tree_report(node):
    if node.kind == "point-leaf":
        return {"kind": node.kind, "algebra": node.algebra_name}
    if node.kind == "unresolved-leaf":
        return {"kind": node.kind, "algebra": node.algebra_name, "reason": node.reason}
    return {
        "kind": node.kind,
        "algebra": node.algebra_name,
        "ring": ring_to_str(node.ring),
        "discriminant": _discriminant_report(node.discriminant),
        "stratum": node.stratum_description(),
        "children": [
            {"at": (pt.prime.short_str() if not isinstance(pt.prime, UnresolvedPrime)
                    else f"({pt.prime.generator})"),
             "status": pt.status,
             "child": _tree_report(child)}
            for pt, child in node.children
        ],
    }


def _flat_strata(node, out=None):
    if out is None:
        out = []
    out.append({"algebra": node.algebra_name, "stratum": node.stratum_description()})
    if node.kind == "node":
        for _, child in node.children:
            _flat_strata(child, out)
    return out


def cmd_stratify(args):
    A = _load(args)
    tree = stratify(A, seed=args.seed)
    report = {"tree": _tree_report(tree), "strata": _flat_strata(tree)}
    lines = tree_lines(tree)
    lines.append("strata:")
    for i, s in enumerate(report["strata"]):
        lines.append(f"  {i}: {s['algebra']}: {s['stratum']}")
    _emit(report, lines, args.format)
    return 0


def cmd_corpus_build(args):
    import os

    entries = dict(REGISTRY)
    entries.update(STRETCH)
    keys = args.keys or sorted(REGISTRY)
    os.makedirs(args.out, exist_ok=True)
    written = []
    for key in keys:
        if key not in entries:
            print(f"unknown corpus entry {key!r}", file=sys.stderr)
            return 2
        A = entries[key].algebra()
        path = os.path.join(args.out, f"{key}.alg")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(serialize_algebra(A))
        written.append(path)
    _emit({"written": written}, [f"wrote {p}" for p in written], args.format)
    return 0


# --- verify-all -----------------------------------------------------------------------

def _verify_job(job):
    """One corpus verification job; runs in a worker process."""
    kind, key, prime_str, seed = job
    entry = REGISTRY[key]
    A = entry.algebra()
    try:
        if kind == "notsplit":
            try:
                split_data(A, seed)
                return (job, False, "expected a non-split generic fiber")
            except NotSplit:
                return (job, True, "generic fiber is not split, as expected")
        if kind == "discriminant":
            dec = dec_ex(A, seed=seed)
            got = sorted(str(pt.prime.generators[0]) for pt in dec.excluded)
            want = sorted(entry.facts["excluded"])
            ok = got == want and not dec.unknown
            return (job, ok, f"excluded {got}, expected {want}")
        if kind == "schur":
            rep = schur_discriminant_crosscheck(A, seed=seed)
            want = entry.facts["schur"]
            got = [str(c) for c in rep["schur_elements"]]
            ok = rep["match"] and got == want
            return (job, ok, f"schur {got} (expected {want}), match {rep['match']}")
        if kind == "trivial":
            p = parse_prime(prime_str, A.ring)
            ev = dec_gen_membership(A, p, seed=seed, verify=True)
            want = entry.facts["trivial"][prime_str]
            ok = ev.trivial == want and ev.matrix_agrees
            return (job, ok, f"trivial={ev.trivial} (expected {want}), matrix agrees")
        if kind == "decmat":
            p = parse_prime(prime_str, A.ring)
            D = decomposition_matrix(A, p, seed=seed)
            want = tuple(tuple(r) for r in entry.facts["decmat"][prime_str])
            ok = D.entries == want
            return (job, ok, f"matrix {D.entries} (expected {want})")
        return (job, False, f"unknown job kind {kind}")
    except EngineError as e:
        return (job, False, f"{type(e).__name__}: {e}")


def _verify_jobs(seed):
    jobs = []
    for key in sorted(REGISTRY):
        entry = REGISTRY[key]
        facts = entry.facts
        if not facts.get("generic_split", False):
            if facts.get("generic_split") is False:
                jobs.append(("notsplit", key, None, seed))
            continue
        if "excluded" in facts:
            jobs.append(("discriminant", key, None, seed))
        if "schur" in facts:
            jobs.append(("schur", key, None, seed))
        for prime_str in facts.get("trivial", {}):
            jobs.append(("trivial", key, prime_str, seed))
        for prime_str in facts.get("decmat", {}):
            jobs.append(("decmat", key, prime_str, seed))
    return jobs


def cmd_verify_all(args):
    import os

    jobs = _verify_jobs(args.seed)
    workers = min(4, os.cpu_count() or 1)
    if args.serial:
        results = [_verify_job(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_verify_job, jobs))
    results.sort(key=lambda r: jobs.index(r[0]))
    report = {"jobs": [], "passed": 0, "failed": 0}
    lines = []
    for job, ok, msg in results:
        kind, key, prime_str, _ = job
        label = f"{key}:{kind}" + (f"@{prime_str}" if prime_str else "")
        report["jobs"].append({"job": label, "ok": ok, "detail": msg})
        report["passed" if ok else "failed"] += 1
        lines.append(f"{'PASS' if ok else 'FAIL'}  {label}  {msg}")
    lines.append(f"{report['passed']} passed, {report['failed']} failed")
    _emit(report, lines, args.format)
    return 0 if report["failed"] == 0 else 1


def build_parser():
    ap = argparse.ArgumentParser(
        prog="decompgen",
        description="Exact decomposition-matrix and stratification engine "
                    "for finite free algebras given by structure constants.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, needs_algebra=True, needs_prime=False):
        if needs_algebra:
            p.add_argument("algebra", help="algebra definition file")
        if needs_prime:
            p.add_argument("--prime", default="generic",
                           help="p=<int> | gen=[<poly>,...] | generic")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--format", choices=("table", "structured"), default="table")
        p.add_argument("--max-degree", type=int, default=None,
                       help="factorization budget (trial division limit)")

    handlers = {}

    def register(name, fn, needs_prime=False, needs_algebra=True, extra=None):
        p = sub.add_parser(name)
        common(p, needs_algebra, needs_prime)
        if extra:
            extra(p)
        handlers[name] = fn

    register("validate", cmd_validate)
    register("fiber", cmd_fiber, needs_prime=True)
    register("radical", cmd_radical, needs_prime=True)
    register("simples", cmd_simples, needs_prime=True)
    register("split-check", cmd_split_check, needs_prime=True)
    register("fingerprint", cmd_fingerprint, needs_prime=True)
    register("decmat", cmd_decmat, needs_prime=True)
    register("trivial", cmd_trivial, needs_prime=True,
             extra=lambda p: p.add_argument("--verify", action="store_true",
                                            help="also compute the matrix and check agreement"))
    register("schur", cmd_schur,
             extra=lambda p: p.add_argument("--verify", action="store_true",
                                            help="cross-check against the verified discriminant"))
    register("discriminant", cmd_discriminant)
    register("stratify", cmd_stratify)
    register("corpus-build", cmd_corpus_build, needs_algebra=False,
             extra=lambda p: (p.add_argument("keys", nargs="*"),
                              p.add_argument("--out", default="corpus")))
    register("verify-all", cmd_verify_all, needs_algebra=False,
             extra=lambda p: p.add_argument("--serial", action="store_true",
                                            help="run verification jobs in-process"))
    ap._handlers = handlers
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    if args.max_degree:
        factor.DEFAULT_TRIAL_LIMIT = args.max_degree
    handler = ap._handlers[args.command]
    try:
        return handler(args)
    except EngineError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except (ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
