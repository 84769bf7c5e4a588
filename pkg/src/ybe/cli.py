"""Command line front end: verify, analyze, construct, corpus.

Interchange format is one JSON document per object, integers only,
0-indexed, with a canonical layout (sorted keys, one table row per line)
so that export followed by import reproduces the bytes exactly.

Exit codes: 0 pass, 1 domain failure, 2 oracle disagreement, 3 undecided.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Optional

import numpy as np

from . import constructions
from .braces import (SkewBrace, brace_invariants, restricted_solution,
                     simplicity_by_generators, simplicity_by_min_ideal,
                     smallest_nonzero_ideal, validate_brace)
from .constructions import (BRUTE_FORCE_X_CAP, abelian_v_build,
                            abelian_v_data, build_example, byott_build,
                            lyubashenko_build, nonabelian_v_build,
                            nonabelian_v_data, _named_group)
from .errors import CapExceeded, ConstructionRejected, Undecided, ValidationError
from .solutions import (FinSolution, classify_lyubashenko, diagonal_map,
                        is_simple_bruteforce, profile, retraction,
                        sigma_table, validate_solution)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_DISAGREE = 2
EXIT_UNDECIDED = 3


# ---------------------------------------------------------------------------
# canonical serialization


def _fmt(obj, indent: int) -> str:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        parts = [f'{pad}  {json.dumps(str(k))}: {_fmt(obj[k], indent + 1)}'
                 for k in sorted(obj)]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(isinstance(v, int) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(str(v) for v in obj) + "]"
        parts = [pad + "  " + _fmt(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise ValidationError(f"non-serializable value of type {type(obj).__name__}")


def canonical_json(doc: dict) -> str:
    """Sorted keys, integer tables with one row per line, no floats."""
    return _fmt(doc, 0) + "\n"


def solution_document(s: FinSolution, metadata: Optional[dict] = None) -> dict:
    doc = {"size": int(s.n), "lambda": s.lam.tolist(), "rho": s.rho.tolist()}
    if metadata:
        doc["metadata"] = metadata
    return doc


def brace_document(b: SkewBrace, x_set=None, metadata: Optional[dict] = None) -> dict:
    doc = {"size": int(b.n), "add": b.add.table.tolist(),
           "mul": b.mul.table.tolist()}
    if x_set is not None:
        doc["X"] = sorted(int(v) for v in x_set)
    if metadata:
        doc["metadata"] = metadata
    return doc


def load_document(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(
            f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(doc, dict):
        raise ValidationError(f"{path}: top level must be a JSON object")
    return doc


def _table_field(doc: dict, field: str, size: int) -> np.ndarray:
    rows = doc.get(field)
    if not isinstance(rows, list) or len(rows) != size:
        raise ValidationError(f"field '{field}': expected {size} rows")
    for i, row in enumerate(rows):
        if (not isinstance(row, list) or len(row) != size
                or not all(isinstance(v, int) and not isinstance(v, bool)
                           and 0 <= v < size for v in row)):
            raise ValidationError(
                f"field '{field}', row {i}: need {size} integers in [0, {size})")
    return np.array(rows, dtype=np.int32)


def _size_field(doc: dict) -> int:
    size = doc.get("size")
    if not isinstance(size, int) or isinstance(size, bool) or size <= 0:
        raise ValidationError("field 'size': need a positive integer")
    return size


def document_kind(doc: dict) -> str:
    if "lambda" in doc and "rho" in doc:
        return "solution"
    if "add" in doc and "mul" in doc:
        return "brace"
    raise ValidationError(
        "unrecognized schema: need fields lambda/rho (solution) or add/mul (brace)")


def parse_solution_document(doc: dict) -> FinSolution:
    size = _size_field(doc)
    lam = _table_field(doc, "lambda", size)
    rho = _table_field(doc, "rho", size)
    return validate_solution(lam, rho)


def parse_brace_document(doc: dict) -> tuple[SkewBrace, Optional[tuple[int, ...]]]:
    size = _size_field(doc)
    add = _table_field(doc, "add", size)
    mul = _table_field(doc, "mul", size)
    b = validate_brace(add, mul)
    x_field = doc.get("X")
    if x_field is None:
        return b, None
    if (not isinstance(x_field, list)
            or not all(isinstance(v, int) and not isinstance(v, bool)
                       and 0 <= v < size for v in x_field)
            or len(set(x_field)) != len(x_field)):
        raise ValidationError("field 'X': need distinct integers in [0, size)")
    return b, tuple(sorted(x_field))


def write_document(doc: dict, path: Path) -> None:
    path.write_text(canonical_json(doc), encoding="utf-8")


# ---------------------------------------------------------------------------
# gap dumps (convenience export, not a round-trip format)


def gap_solution_text(s: FinSolution, name: str) -> str:
    lines = [f"# solution {name}: images are 1-indexed"]
    lam = ", ".join(
        "PermList([" + ", ".join(str(v + 1) for v in row) + "])" for row in s.lam)
    rho = ", ".join(
        "PermList([" + ", ".join(str(v + 1) for v in row) + "])" for row in s.rho)
    lines.append(f"lam := [ {lam} ];")
    lines.append(f"rho := [ {rho} ];")
    return "\n".join(lines) + "\n"


def gap_brace_text(b: SkewBrace, x_set, name: str) -> str:
    lines = [f"# brace {name}: tables are 1-indexed, identity is 1"]

    def table(t) -> str:
        return "[ " + ", ".join(
            "[" + ", ".join(str(v + 1) for v in row) + "]" for row in t) + " ]"

    lines.append(f"addtable := {table(b.add.table)};")
    lines.append(f"multable := {table(b.mul.table)};")
    if x_set is not None:
        lines.append("xset := [" + ", ".join(str(v + 1) for v in sorted(x_set)) + "];")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    try:
        doc = load_document(args.file)
        kind = document_kind(doc)
        if kind == "solution":
            s = parse_solution_document(doc)
            print(f"PASS solution of size {s.n}")
        else:
            b, x_set = parse_brace_document(doc)
            if x_set is not None:
                restricted_solution(b, x_set)
                print(f"PASS brace of order {b.n} with invariant subset of size {len(x_set)}")
            else:
                print(f"PASS brace of order {b.n}")
        return EXIT_PASS
    except ValidationError as e:
        witness = getattr(e, "witness", None)
        suffix = f"; witness {witness}" if witness is not None else ""
        print(f"FAIL {e}{suffix}")
        return EXIT_FAIL


# ---------------------------------------------------------------------------
# analyze


def _brute_guarded(s: FinSolution) -> bool:
    if s.n > BRUTE_FORCE_X_CAP:
        raise Undecided(
            f"brute force congruence scan capped at {BRUTE_FORCE_X_CAP} points, got {s.n}")
    return is_simple_bruteforce(s)


def _solution_simplicity(s: FinSolution, criterion: str) -> tuple[dict, bool]:
    """Per-criterion verdicts; the flag reports an oracle disagreement."""
    out: dict = {}
    lyu = classify_lyubashenko(s)
    if criterion in ("brute", "both"):
        out["brute"] = _brute_guarded(s)
    if criterion in ("simpleNL", "both"):
        if lyu.is_lyubashenko:
            out["simpleNL"] = bool(lyu.is_simple)
            out["simpleNL_route"] = "permutation-solution classification"
        else:
            rep = simplicity_by_min_ideal(s)
            out["simpleNL"] = bool(rep.verdict)
            out["simpleNL_route"] = "minimal-ideal criterion"
            out["simpleNL_detail"] = {
                "irretractable": rep.irretractable,
                "d_is_min_ideal": rep.d_is_min_ideal,
                "dd_transitive": rep.dd_transitive,
            }
    if criterion == "simpleGEN":
        if lyu.is_lyubashenko:
            out["simpleGEN"] = None
            out["simpleGEN_route"] = "not applicable to permutation solutions"
        elif not profile(s).irretractable:
            out["simpleGEN"] = False
            out["simpleGEN_route"] = "retractable, hence not embedded and not simple"
        else:
            from .braces import permutation_brace
            pb = permutation_brace(s)
            subset = sorted(set(int(v) for v in pb.x_to_element))
            rep = simplicity_by_generators(pb.brace, subset)
            out["simpleGEN"] = bool(rep.verdict)
            out["simpleGEN_detail"] = {
                "generates": rep.generates,
                "v_is_min": rep.v_is_min,
                "v_transitive": rep.v_transitive,
            }
    disagree = (criterion == "both" and out["brute"] != out["simpleNL"])
    return out, disagree


def _analyze_solution(s: FinSolution, args) -> tuple[dict, int]:
    report: dict = {"kind": "solution", "size": int(s.n)}
    want_all = not (args.simple or args.profile or args.brace_invariants)
    if args.profile or want_all:
        prof = profile(s)
        report["profile"] = {
            "involutive": prof.involutive,
            "derived_form": prof.derived_form,
            "twisted_rack": prof.twisted_rack,
            "lyubashenko": prof.lyubashenko,
            "quandle": prof.quandle,
            "indecomposable": prof.indecomposable,
            "irretractable": prof.irretractable,
        }
        part, _ = retraction(s)
        report["retraction_classes"] = part.num_classes
        lyu = classify_lyubashenko(s)
        if lyu.is_lyubashenko:
            report["lyubashenko_simple"] = bool(lyu.is_simple)
    code = EXIT_PASS
    if args.simple or want_all:
        verdicts, disagree = _solution_simplicity(s, args.criterion)
        report["simplicity"] = verdicts
        if disagree:
            report["oracle_disagreement"] = True
            code = EXIT_DISAGREE
    return report, code


def _analyze_brace(b: SkewBrace, x_set, args) -> tuple[dict, int]:
    report: dict = {"kind": "brace", "size": int(b.n)}
    want_all = not (args.simple or args.profile or args.brace_invariants)
    if args.brace_invariants or want_all:
        inv = brace_invariants(b)
        minimal = smallest_nonzero_ideal(b)
        report["invariants"] = {
            "socle_size": inv.socle.size,
            "b2_size": inv.b2.size,
            "b3_size": inv.b3.size,
            "add_center_size": len(inv.add_center),
            "trivial": inv.is_trivial,
            "cyclic_type": inv.is_cyclic_type,
            "min_nonzero_ideal_size": minimal.size if minimal else None,
            "simple": bool(minimal and minimal.size == b.n and b.n > 1),
        }
    code = EXIT_PASS
    if x_set is not None:
        restricted, _ = restricted_solution(b, x_set)
        report["x_size"] = len(x_set)
        if args.simple or want_all:
            if args.criterion == "simpleGEN":
                rep = simplicity_by_generators(b, x_set)
                report["simplicity"] = {
                    "simpleGEN": bool(rep.verdict),
                    "simpleGEN_detail": {
                        "generates": rep.generates,
                        "v_is_min": rep.v_is_min,
                        "v_transitive": rep.v_transitive,
                    },
                }
            else:
                verdicts, disagree = _solution_simplicity(restricted, args.criterion)
                report["simplicity"] = verdicts
                if disagree:
                    report["oracle_disagreement"] = True
                    code = EXIT_DISAGREE
    elif args.simple:
        report["simplicity"] = {"note": "no X subset in file, nothing to restrict to"}
    return report, code


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(canonical_json(report), end="")
        return

    def walk(d: dict, depth: int) -> None:
        for key, value in d.items():
            if isinstance(value, dict):
                print("  " * depth + f"{key}:")
                walk(value, depth + 1)
            else:
                print("  " * depth + f"{key}: {value}")

    walk(report, 0)


def cmd_analyze(args) -> int:
    try:
        doc = load_document(args.file)
        kind = document_kind(doc)
        if kind == "solution":
            report, code = _analyze_solution(parse_solution_document(doc), args)
        else:
            b, x_set = parse_brace_document(doc)
            report, code = _analyze_brace(b, x_set, args)
    except ValidationError as e:
        print(f"FAIL {e}")
        return EXIT_FAIL
    except (Undecided, CapExceeded) as e:
        print(f"UNDECIDED {e}")
        return EXIT_UNDECIDED
    _print_report(report, args.json)
    if code == EXIT_DISAGREE:
        print("FAIL oracle disagreement: brute force and the minimal-ideal "
              "criterion returned different verdicts", file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# construct


def _parse_int_list(raw: str) -> list[int]:
    parts = [p for chunk in raw.split(",") for p in chunk.split()]
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise ValidationError(f"expected comma-separated integers, got {raw!r}")


def _parse_matrix(raw: str, n: int) -> list[list[int]]:
    entries = _parse_int_list(raw)
    if len(entries) != n * n:
        raise ValidationError(
            f"matrix needs {n * n} row-major entries, got {len(entries)}")
    return [entries[i * n:(i + 1) * n] for i in range(n)]


def _parse_group_perm(raw: str, group) -> list[int]:
    """Automorphism of a table group: either explicit images or conj:<g>."""
    if raw.startswith("conj:"):
        c = int(raw[5:])
        if not 0 <= c < group.n:
            raise ValidationError(f"conjugating element {c} out of range")
        return group.table[group.table[c], group.inv[c]].tolist()
    images = _parse_int_list(raw)
    if sorted(images) != list(range(group.n)):
        raise ValidationError(
            f"expected a permutation of 0..{group.n - 1} or conj:<element>")
    return images


def _print_checks(checks) -> None:
    for check in checks:
        print(str(check))


def _slug(value) -> str:
    return str(value).replace(" ", "").replace(",", "_").replace("-", "m")


def _emit(build_name: str, solution: FinSolution, brace, x_set, out_dir: Path,
          fmt: str, metadata: dict) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt == "gap":
        sol_path = out_dir / f"{build_name}-solution.g"
        sol_path.write_text(gap_solution_text(solution, build_name), encoding="utf-8")
        written.append(sol_path)
        if isinstance(brace, SkewBrace):
            brace_path = out_dir / f"{build_name}-brace.g"
            brace_path.write_text(gap_brace_text(brace, x_set, build_name),
                                  encoding="utf-8")
            written.append(brace_path)
    else:
        sol_path = out_dir / f"{build_name}-solution.json"
        write_document(solution_document(solution, metadata), sol_path)
        written.append(sol_path)
        if isinstance(brace, SkewBrace):
            brace_path = out_dir / f"{build_name}-brace.json"
            write_document(brace_document(brace, x_set, metadata), brace_path)
            written.append(brace_path)
    if brace is not None and not isinstance(brace, SkewBrace):
        print("note: brace carrier too large for table export, wrote the solution only")
    for path in written:
        print(f"wrote {path}")


def cmd_construct(args) -> int:
    out_dir = Path(args.out)
    try:
        if args.family == "coro1":
            data = abelian_v_data(args.p, args.n, args.k,
                                  _parse_matrix(args.A, args.n),
                                  _parse_matrix(args.A2, args.n),
                                  _parse_int_list(args.u0))
            build = abelian_v_build(data)
            _print_checks(build.checks)
            name = f"coro1-p{args.p}-n{args.n}-k{args.k}"
            meta = {"name": name,
                    "provenance": (f"coro1 p={args.p} n={args.n} k={args.k} "
                                   f"A={args.A} A2={args.A2} u0={args.u0}")}
            _emit(name, build.solution, build.brace, build.x_set, out_dir,
                  args.format, meta)
        elif args.family == "coro2":
            group = _named_group(args.v_group)
            a = _parse_group_perm(args.A, group)
            a2 = _parse_group_perm(args.A2, group)
            source = ("declared by --assume-char-simple" if args.assume_char_simple
                      else "not declared; pass --assume-char-simple")
            data = nonabelian_v_data(group, args.m, a, a2, args.u0,
                                     assume_char_simple=args.assume_char_simple,
                                     char_simple_source=source)
            build = nonabelian_v_build(data)
            _print_checks(build.checks)
            name = f"coro2-{args.v_group}-m{args.m}"
            meta = {"name": name,
                    "provenance": (f"coro2 V={args.v_group} m={args.m} "
                                   f"u0={args.u0} k={build.k}")}
            _emit(name, build.solution, build.brace, build.x_set, out_dir,
                  args.format, meta)
        elif args.family == "byott":
            build = byott_build(args.p, args.q)
            _print_checks(build.checks)
            name = f"byott-p{args.p}-q{args.q}"
            meta = {"name": name, "provenance": f"byott p={args.p} q={args.q}",
                    "m_matrix": build.m_matrix.tolist()}
            _emit(name, build.solution, build.brace, build.x_set, out_dir,
                  args.format, meta)
        elif args.family == "lyubashenko":
            solution = lyubashenko_build(args.n, args.a, args.b)
            lyu = classify_lyubashenko(solution)
            _print_checks([constructions.HypothesisCheck(
                "commuting translations", True, f"x+{args.a} and x+{args.b} on Z_{args.n}")])
            print(f"classification: simple={lyu.is_simple}")
            name = f"lyubashenko-n{args.n}-a{args.a}-b{args.b}"
            _emit(name, solution, None, None, out_dir, args.format,
                  {"name": name,
                   "provenance": f"lyubashenko n={args.n} a={args.a} b={args.b}"})
        else:
            params = {}
            for item in args.param or []:
                if "=" not in item:
                    raise ValidationError(f"--param needs key=value, got {item!r}")
                key, _, value = item.partition("=")
                params[key] = int(value) if value.lstrip("-").isdigit() else value
            result = build_example(args.name, **params)
            checks = getattr(result, "checks", ())
            _print_checks(checks)
            solution = result if isinstance(result, FinSolution) else result.solution
            brace = getattr(result, "brace", None)
            x_set = getattr(result, "x_set", None)
            pieces = "-".join(f"{k}{_slug(v)}" for k, v in sorted(params.items()))
            name = f"example-{args.name}" + (f"-{pieces}" if pieces else "")
            meta = {"name": name,
                    "provenance": f"example {args.name} " + json.dumps(params, sort_keys=True)}
            _emit(name, solution, brace, x_set, out_dir, args.format, meta)
        return EXIT_PASS
    except ConstructionRejected as e:
        if e.checks:
            _print_checks(e.checks)
        print(f"REJECTED {e}")
        return EXIT_FAIL
    except ValidationError as e:
        print(f"FAIL {e}")
        return EXIT_FAIL
    except (Undecided, CapExceeded) as e:
        print(f"UNDECIDED {e}")
        return EXIT_UNDECIDED


# ---------------------------------------------------------------------------
# corpus battery


def _lemma_identity_failures(s: FinSolution) -> Optional[str]:
    """sigma_b must equal lam_b o q o rho_b o q^{-1} for every b."""
    q = np.array(diagonal_map(s), dtype=np.int32)
    qinv = np.empty(s.n, dtype=np.int32)
    qinv[q] = np.arange(s.n, dtype=np.int32)
    sig = sigma_table(s)
    for b in range(s.n):
        rhs = q[s.rho[b, qinv]]
        if not np.array_equal(sig[b], s.lam[b, rhs]):
            return f"sigma identity fails at b={b}"
    return None


def _battery_solution(s: FinSolution) -> list[str]:
    failures = []
    bad = _lemma_identity_failures(s)
    if bad:
        failures.append(bad)
    if s.n <= 12:
        lyu = classify_lyubashenko(s)
        brute = is_simple_bruteforce(s)
        if lyu.is_lyubashenko:
            if s.n > 1 and bool(lyu.is_simple) != brute:
                failures.append(
                    f"classification says simple={lyu.is_simple}, brute force says {brute}")
        else:
            rep = simplicity_by_min_ideal(s)
            if bool(rep.verdict) != brute:
                failures.append(
                    f"minimal-ideal criterion says {rep.verdict}, brute force says {brute}")
    return failures


def _battery_brace(b: SkewBrace, x_set) -> list[str]:
    failures = []
    brace_invariants(b)
    if x_set is not None:
        try:
            restricted_solution(b, x_set)
        except ValidationError as e:
            failures.append(f"X subset: {e}")
    return failures


def _check_file(path: Path) -> tuple[str, list[str]]:
    try:
        text = path.read_text(encoding="utf-8")
        doc = json.loads(text)
        if not isinstance(doc, dict):
            return path.name, ["top level must be a JSON object"]
        kind = document_kind(doc)
        if kind == "solution":
            s = parse_solution_document(doc)
            failures = _battery_solution(s)
        else:
            b, x_set = parse_brace_document(doc)
            failures = _battery_brace(b, x_set)
        if canonical_json(doc) != text:
            failures.append("not in canonical serialization")
        return path.name, failures
    except json.JSONDecodeError as e:
        return path.name, [f"invalid JSON at line {e.lineno}: {e.msg}"]
    except (ValidationError, Undecided, CapExceeded) as e:
        return path.name, [str(e)]


def cmd_corpus(args) -> int:
    directory = Path(args.dir)
    if not directory.is_dir():
        print(f"FAIL not a directory: {directory}")
        return EXIT_FAIL
    files = sorted(directory.glob("*.json"))
    if not files:
        print("0 objects")
        return EXIT_PASS
    workers = max(1, min(8, len(files)))
    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_check_file, files))
    failing = [(name, fails) for name, fails in results if fails]
    if args.json:
        doc = {"objects": len(results), "failures": len(failing),
               "failing": {name: fails for name, fails in failing}}
        print(canonical_json(doc), end="")
    else:
        print(f"{len(results)} objects, {len(failing)} failures")
        for name, fails in failing:
            for failure in fails:
                print(f"  {name}: {failure}")
    return EXIT_FAIL if failing else EXIT_PASS


# ---------------------------------------------------------------------------
# argument wiring


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ybe",
        description="Verify, analyze, and construct Yang-Baxter solutions and skew braces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="validate a solution or brace file")
    p_verify.add_argument("file")
    p_verify.set_defaults(func=cmd_verify)

    p_analyze = sub.add_parser("analyze", help="profile and simplicity report")
    p_analyze.add_argument("file")
    p_analyze.add_argument("--simple", action="store_true",
                           help="only the simplicity section")
    p_analyze.add_argument("--profile", action="store_true",
                           help="only the structural profile")
    p_analyze.add_argument("--brace-invariants", action="store_true",
                           help="only the brace invariant summary")
    p_analyze.add_argument("--criterion", default="brute",
                           choices=["brute", "simpleNL", "simpleGEN", "both"])
    p_analyze.add_argument("--json", action="store_true")
    p_analyze.set_defaults(func=cmd_analyze)

    p_construct = sub.add_parser("construct", help="build a family member")
    fam = p_construct.add_subparsers(dest="family", required=True)

    f_coro1 = fam.add_parser("coro1", help="abelian carrier family")
    f_coro1.add_argument("--p", type=int, required=True)
    f_coro1.add_argument("--n", type=int, required=True)
    f_coro1.add_argument("--k", type=int, required=True)
    f_coro1.add_argument("--A", required=True,
                         help="row-major matrix entries, comma separated")
    f_coro1.add_argument("--A2", required=True)
    f_coro1.add_argument("--u0", required=True, help="vector entries")

    f_coro2 = fam.add_parser("coro2", help="non-abelian carrier family")
    f_coro2.add_argument("--v-group", required=True,
                         help="carrier group name, e.g. a5 or d5")
    f_coro2.add_argument("--m", type=int, required=True)
    f_coro2.add_argument("--A", required=True,
                         help="permutation images or conj:<element>")
    f_coro2.add_argument("--A2", required=True)
    f_coro2.add_argument("--u0", type=int, default=0)
    f_coro2.add_argument("--assume-char-simple", action="store_true")

    f_byott = fam.add_parser("byott", help="holomorph pair family")
    f_byott.add_argument("--p", type=int, required=True)
    f_byott.add_argument("--q", type=int, required=True)

    f_lyu = fam.add_parser("lyubashenko", help="translation solution")
    f_lyu.add_argument("--n", type=int, required=True)
    f_lyu.add_argument("--a", type=int, default=1)
    f_lyu.add_argument("--b", type=int, default=0)

    f_example = fam.add_parser("example", help="named registry entry")
    f_example.add_argument("--name", required=True,
                           choices=sorted(constructions.EXAMPLES))
    f_example.add_argument("--param", action="append",
                           help="key=value, repeatable")

    for f in (f_coro1, f_coro2, f_byott, f_lyu, f_example):
        f.add_argument("--out", default=".", help="output directory")
        f.add_argument("--format", default="json", choices=["json", "gap"])
    p_construct.set_defaults(func=cmd_construct)

    p_corpus = sub.add_parser("corpus", help="run the battery over a directory")
    p_corpus.add_argument("--dir", required=True)
    p_corpus.add_argument("--check", default="all", choices=["all"])
    p_corpus.add_argument("--json", action="store_true")
    p_corpus.set_defaults(func=cmd_corpus)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
