"""Command-line front end.  Exit codes: 0 success, 1 negative verdict, 2 error."""
from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor

from .decomposition import base_graph, decompose
from .forms import (FormError, GramMatrix, QuadraticScheme, balanced_companion, is_companion,
                    make_expansion, quasiminimal_reduce)
from .formfile import FormFileError, form_to_data, read_form_file
from .indecomposability import (oracle_crosscheck, predict_bilinear_tensor,
                                predict_quadratic_tensor)
from .isometry import (IsometryError, PreconditionError, isometry_search, matching_summand,
                       multiplicities, witt_cancel)
from .modules import FreeModule, unique_base_guarantee, verify_base
from .semiring import ScalarParseError, SemiringMismatch, axioms_check, from_descriptor
from .tensor import tensor_bilinear, tensor_quadratic

DEFAULT_SEED = 20240601


class CliError(Exception):
    pass


class Report:
    def __init__(self, command, result, text, warnings=(), status=0):
        self.command = command
        self.result = result
        self.text = text
        self.warnings = list(warnings)
        self.status = status

    def render(self, fmt: str) -> str:
        if fmt == "json":
            body = {"command": self.command, "result": self.result, "warnings": self.warnings}
            return json.dumps(body, indent=2, ensure_ascii=False) + "\n"
        lines = list(self.text)
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines) + "\n"


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("SEMIFORM_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise CliError(f"SEMIFORM_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def _load(path):
    return read_form_file(path)


def _fmt_rows(f: GramMatrix) -> list:
    return [[f.ring.format(a) for a in row] for row in f.rows]


def _sampled_warning(ring):
    return [] if ring.elements() is not None else ["companion check sampled, not exhaustive"]


def _units(args, ring):
    if getattr(args, "units", None) is None:
        return None
    return [ring.coerce(t.strip()) for t in args.units.split(";") if t.strip()]


def _indices(spec: str, n: int, name: str):
    try:
        out = sorted({int(t) - 1 for t in spec.split(",") if t.strip()})
    except ValueError:
        raise CliError(f"{name} must be a comma-separated list of 1-based indices") from None
    if any(not 0 <= i < n for i in out):
        raise CliError(f"{name} has an index outside 1..{n}")
    return out


def _companion(args, doc):
    choice = getattr(args, "companion", None)
    if choice in (None, "file"):
        if doc.companion is None:
            if choice is None:
                raise CliError("no companion given: add \"companion\" to the form file or pass --companion balanced")
            raise CliError("--companion file needs a \"companion\" entry in the form file")
        return doc.companion
    if choice == "balanced":
        return balanced_companion(doc.form)
    comp = _load(choice)
    if comp.kind != "bilinear":
        raise CliError("--companion file must hold a bilinear form")
    return comp.form


def _quadratic(doc, what="form"):
    if doc.kind != "quadratic":
        raise CliError(f"{what} must be quadratic")
    return doc.form


def _bilinear(doc, what="form"):
    if doc.kind != "bilinear":
        raise CliError(f"{what} must be bilinear")
    return doc.form


# -- commands --------------------------------------------------------------


def cmd_decompose(args):
    doc = _load(args.file)
    f = doc.form
    p = decompose(f)
    g = base_graph(f)
    name = "beta" if doc.kind == "bilinear" else "alpha"
    edges = [{"edge": [i + 1, j + 1], "coefficient": f.ring.format(g.witness[(i, j)])}
             for i, j in g.sorted_edges()]
    text = [f"semiring: {f.ring.name}", f"kind: {doc.kind}", f"rank: {f.rank}",
            f"components: {len(p)}", f"blocks: {p}"]
    text += [f"edge ({e['edge'][0]},{e['edge'][1]}) {name}={f.ring.format_str(g.witness[tuple(x - 1 for x in e['edge'])])}"
             for e in edges]
    result = {"semiring": f.ring.descriptor(), "kind": doc.kind, "blocks": p.one_based(), "edges": edges}
    return Report("decompose", result, text)


def cmd_companions(args):
    doc = _load(args.file)
    q = _quadratic(doc)
    b = balanced_companion(q)
    bf = quasiminimal_reduce(q, b, validate=False)
    chk = is_companion(q, bf, rng=random.Random(_seed(args)))
    result = {"balanced": _fmt_rows(b), "quasiminimal": _fmt_rows(bf),
              "quasiminimal_is_companion": chk.holds, "exhaustive": chk.exhaustive}
    text = [f"balanced companion: {b}", f"quasiminimal companion b_f: {bf}",
            f"b_f companion check: {'holds' if chk.holds else 'refuted'}"
            + (" (exhaustive)" if chk.exhaustive else f" ({chk.checked} sampled pairs)")]
    return Report("companions", result, text, _sampled_warning(q.ring), 0 if chk.holds else 1)


def cmd_expand(args):
    doc = _load(args.file)
    q = _quadratic(doc)
    b = _companion(args, doc) if (args.companion or doc.companion) else balanced_companion(q)
    e = make_expansion(q, b)
    rows = [[q.ring.format(a) for a in row] for row in e.rows]
    text = ["triangular expansion:"] + ["  " + " ".join(q.ring.format_str(a) for a in row) for row in e.rows]
    return Report("expand", {"expansion": rows, "companion": _fmt_rows(b)}, text)


def _form_report(name, f, companion=None):
    data = form_to_data(f, companion)
    return Report(name, data, [json.dumps(data, ensure_ascii=False)])


def cmd_tensor(args):
    a, b = _load(args.left), _load(args.right)
    return _form_report("tensor", tensor_bilinear(_bilinear(a, "left"), _bilinear(b, "right")))


def cmd_tensor_q(args):
    g, qd = _load(args.gamma), _load(args.q)
    q = _quadratic(qd, "second form")
    b = _companion(args, qd)
    t = tensor_quadratic(_bilinear(g, "gamma"), q, b)
    return _form_report("tensor-q", t, tensor_bilinear(g.form, b))


def cmd_predict(args):
    a, c = _load(args.left), _load(args.right)
    if args.kind == "bb":
        b1, b2 = _bilinear(a, "first form"), _bilinear(c, "second form")
        pred = predict_bilinear_tensor(b1, b2)
        actual = tensor_bilinear(b1, b2) if args.verify else None
        m = b2.rank
    else:
        gamma, q = _bilinear(a, "gamma"), _quadratic(c, "second form")
        b = _companion(args, c)
        pred = predict_quadratic_tensor(gamma, q, b)
        actual = tensor_quadratic(gamma, q, b) if args.verify else None
        m = q.rank
    blocks = [[[p // m + 1, p % m + 1] for p in blk] for blk in pred.blocks]
    result = {"components": pred.count, "blocks": blocks, "reason": pred.reason}
    text = [f"predicted components: {pred.count} ({pred.reason})"]
    text += ["  block: " + " ".join(f"({i},{k})" for i, k in blk) for blk in blocks]
    status = 0
    if actual is not None:
        cc = oracle_crosscheck(pred, actual)
        result["oracle"] = {"match": cc.match, "actual_blocks": cc.actual.one_based(),
                            "predicted_blocks": cc.predicted.one_based()}
        text.append(f"oracle: {'match' if cc.match else 'MISMATCH'} ({len(cc.actual)} components)")
        if not cc.match:
            text.append(f"  predicted {cc.predicted}")
            text.append(f"  actual    {cc.actual}")
            status = 1
    return Report("predict", result, text, status=status)


def cmd_isometry(args):
    a, b = _load(args.left), _load(args.right)
    w = isometry_search(a.form, b.form, _units(args, a.ring))
    if w is None:
        return Report("isometry", {"isometric": False}, ["not isometric"], status=1)
    result = {"isometric": True, "permutation": w.cycles(), "perm": [p + 1 for p in w.perm],
              "units": w.unit_literals()}
    text = ["isometric", f"permutation: {w.cycles()}",
            "units: " + " ".join(a.ring.format_str(u) for u in w.units)]
    return Report("isometry", result, text)


def _literal(f):
    data = form_to_data(f)
    data.pop("semiring")
    return data


def cmd_multiplicities(args):
    doc = _load(args.file)
    m = multiplicities(doc.form, _units(args, doc.ring))
    classes = [{"representative": _literal(c.representative), "count": c.count,
                "blocks": [[i + 1 for i in b] for b in c.blocks]} for c in m.classes]
    text = [f"{len(m.classes)} isometry classes"]
    text += [f"  {c.count} x {c.representative}  blocks "
             + " ".join("{" + ",".join(str(i + 1) for i in b) + "}" for b in c.blocks)
             for c in m.classes]
    return Report("multiplicities", {"classes": classes}, text)


def cmd_cancel(args):
    v, vp = _load(args.v), _load(args.v_prime)
    units = _units(args, v.ring)
    w1 = _indices(args.summand, v.rank, "--summand")
    if args.summand_prime:
        w1p = _indices(args.summand_prime, vp.rank, "--summand-prime")
    else:
        w1p = list(matching_summand(v.form, w1, vp.form, units))
    verdict = witt_cancel(v.form, vp.form, w1, w1p, units)

    def ledger(rows):
        return [{"representative": _literal(r.representative), "V": r.in_v, "W1": r.in_w1,
                 "W2": r.in_w2} for r in rows]

    result = {"cancels": verdict.holds, "summand": [i + 1 for i in w1],
              "summand_prime": [i + 1 for i in w1p],
              "complement": [i + 1 for i in verdict.complement],
              "complement_prime": [i + 1 for i in verdict.complement_prime],
              "ledger": ledger(verdict.ledger), "ledger_prime": ledger(verdict.ledger_prime)}
    text = [f"W2 ~ W2': {'yes' if verdict.holds else 'NO'}",
            f"W1 = {{{','.join(str(i + 1) for i in w1)}}}  W1' = {{{','.join(str(i + 1) for i in w1p)}}}",
            f"W2 = {{{','.join(str(i + 1) for i in verdict.complement)}}}  "
            f"W2' = {{{','.join(str(i + 1) for i in verdict.complement_prime)}}}",
            "ledger m(V) = m(W1) + m(W2):"]
    text += [f"  {r.representative}: {r.in_v} = {r.in_w1} + {r.in_w2}" for r in verdict.ledger]
    return Report("cancel", result, text, status=0 if verdict.holds else 1)


def _descriptor(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return {"kind": text}


def cmd_check_semiring(args):
    try:
        s = from_descriptor(_descriptor(args.semiring))
    except ValueError as exc:
        raise CliError(str(exc)) from None
    sample = None
    if args.sample:
        sample = [t.strip() for t in args.sample.split(";") if t.strip()]
    rep = axioms_check(s, sample)
    verdicts = {}
    text = [f"semiring: {s.name}", f"sample size: {rep.sample_size}"
            + (" (exhaustive)" if rep.exhaustive else "")]
    for name, chk in rep.verdicts.items():
        wit = None if chk.witness is None else [s.format(a) for a in chk.witness]
        verdicts[name] = {"holds": chk.holds, "witness": wit}
        text.append(f"  {name}: {'holds' if chk.holds else 'refuted'}"
                    + ("" if wit is None else f" witness {wit}"))
    flags = {f: getattr(s, f) for f in ("is_antiring", "is_entire", "is_indecomposable", "has_nql", "frobenius")}
    text.append("declared: " + ", ".join(f"{k}={v}" for k, v in flags.items()))
    text.append("unique base: " + unique_base_guarantee(s).value)
    if rep.inconsistent:
        text.append("inconsistent flags: " + ", ".join(rep.inconsistent))
    result = {"semiring": s.descriptor(), "sample_size": rep.sample_size, "exhaustive": rep.exhaustive,
              "verdicts": verdicts, "flags": flags, "unique_base": unique_base_guarantee(s).value,
              "inconsistent": rep.inconsistent}
    return Report("check-semiring", result, text, status=1 if rep.inconsistent else 0)


def cmd_check_base(args):
    with open(args.file, encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise CliError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    try:
        ring = from_descriptor(data.get("semiring"))
        vectors = data["vectors"]
        module = FreeModule(ring, len(vectors))
        cands = [module.vector(v) for v in vectors]
        sample = data.get("sample")
    except (KeyError, TypeError) as exc:
        raise CliError(f"base file needs 'semiring' and 'vectors' ({exc})") from None
    rep = verify_base(module, cands, sample)
    chk = rep.is_base
    result = {"is_base": chk.holds, "exhaustive": chk.exhaustive,
              "projectively_standard": rep.projectively_standard}
    text = [f"is base: {'yes' if chk.holds else 'refuted'}" + (" (exhaustive)" if chk.exhaustive else " (on sample)"),
            f"projectively equal to the standard base: {'yes' if rep.projectively_standard else 'no'}"]
    if chk.witness is not None:
        target, reps = chk.witness
        result["witness"] = {"vector": [ring.format(a) for a in target.coeffs], "representations": len(reps)}
        text.append(f"witness: {target} has {len(reps)} representations")
    return Report("check-base", result, text, status=0 if chk.holds else 1)


def _suite_instance(job):
    from .random_forms import random_indecomposable_gram, random_scheme
    from .decomposition import check_refinement_maximal, verify_orthogonality
    from .semiring import BOOL, MAXPLUS, NAT
    family, seed = job
    rng = random.Random(seed)
    if family == "decompose":
        ring = rng.choice([BOOL, MAXPLUS])
        q = random_scheme(ring, rng.randint(2, 4), rng)
        p = decompose(q)
        ok = verify_orthogonality(q, p, rng=rng).holds and check_refinement_maximal(q, p).holds
        return family, seed, ok
    ring = rng.choice([BOOL, NAT])
    b1 = random_indecomposable_gram(ring, rng.randint(1, 4), rng)
    b2 = random_indecomposable_gram(ring, rng.randint(1, 4), rng)
    ok = oracle_crosscheck(predict_bilinear_tensor(b1, b2), tensor_bilinear(b1, b2)).match
    return family, seed, ok


def cmd_verify_suite(args):
    seed = _seed(args)
    jobs = [(fam, seed * 1000 + k) for fam in ("decompose", "predict") for k in range(args.instances)]
    if args.workers > 1:
        with ProcessPoolExecutor(max_workers=args.workers) as pool:
            results = list(pool.map(_suite_instance, jobs, chunksize=8))
    else:
        results = [_suite_instance(j) for j in jobs]
    failures = [[fam, s] for fam, s, ok in results if not ok]
    by_family = {}
    for fam, _, ok in results:
        passed, total = by_family.get(fam, (0, 0))
        by_family[fam] = (passed + ok, total + 1)
    text = [f"{fam}: {p}/{t} passed" for fam, (p, t) in by_family.items()]
    text += [f"  failure: {fam} seed {s}" for fam, s in failures]
    result = {"seed": seed, "families": {k: {"passed": p, "total": t} for k, (p, t) in by_family.items()},
              "failures": failures}
    return Report("verify-suite", result, text, status=1 if failures else 0)


# -- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized checks (default: $SEMIFORM_SEED or a fixed seed)")

    parser = argparse.ArgumentParser(prog="semiform", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, **kw):
        p = sub.add_parser(name, parents=[common], help=help_text, description=help_text, **kw)
        p.set_defaults(func=func)
        return p

    p = add("decompose", cmd_decompose, "orthogonal decomposition with edge witnesses")
    p.add_argument("file")
    p = add("companions", cmd_companions, "balanced and quasiminimal companions of a quadratic form")
    p.add_argument("file")
    p = add("expand", cmd_expand, "triangular expansion of a quadratic pair")
    p.add_argument("file")
    p.add_argument("--companion", help="'balanced', 'file' or a path to a bilinear form file")
    p = add("tensor", cmd_tensor, "tensor product of two bilinear forms")
    p.add_argument("left")
    p.add_argument("right")
    p = add("tensor-q", cmd_tensor_q, "tensor product of a bilinear form and a quadratic pair")
    p.add_argument("gamma")
    p.add_argument("q")
    p.add_argument("--companion", help="'balanced', 'file' or a path to a bilinear form file")
    p = add("predict", cmd_predict, "predict the components of a tensor product")
    p.add_argument("--kind", choices=("bb", "bq"), required=True)
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--verify", action="store_true", help="decompose the actual tensor and compare")
    p.add_argument("--companion", help="'balanced', 'file' or a path to a bilinear form file")
    p = add("isometry", cmd_isometry, "search for an isometry between two forms")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--units", help="semicolon-separated unit candidates")
    p = add("multiplicities", cmd_multiplicities, "isometry classes of the components and their counts")
    p.add_argument("file")
    p.add_argument("--units", help="semicolon-separated unit candidates")
    p = add("cancel", cmd_cancel, "Witt cancellation of a common orthogonal summand")
    p.add_argument("v")
    p.add_argument("v_prime")
    p.add_argument("--summand", required=True, help="1-based indices of W1 in V, e.g. 1,2")
    p.add_argument("--summand-prime", help="1-based indices of W1' in V' (default: chosen to match W1)")
    p.add_argument("--units", help="semicolon-separated unit candidates")
    p = add("check-semiring", cmd_check_semiring, "check semiring laws and declared flags")
    p.add_argument("semiring", help="descriptor: a kind such as 'maxplus' or a JSON object")
    p.add_argument("--sample", help="semicolon-separated scalar literals")
    p = add("check-base", cmd_check_base, "check that candidate vectors form a base")
    p.add_argument("file", help="JSON with 'semiring', 'vectors' and optional 'sample'")
    p = add("verify-suite", cmd_verify_suite, "run randomized oracle cross-checks")
    p.add_argument("--instances", type=int, default=50)
    p.add_argument("--workers", type=int, default=1)
    return parser


_ERRORS = (CliError, FormFileError, FormError, PreconditionError, IsometryError, SemiringMismatch,
           ScalarParseError, OSError, ValueError)


def run_command(argv):
    """Parse and run; returns (report or None, exit code, error message)."""
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except _ERRORS as exc:
        kind = "precondition failed" if isinstance(exc, PreconditionError) else "error"
        return None, 2, f"{kind}: {exc}", args
    return report, report.status, None, args


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        report, code, err, args = run_command(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)
    if err is not None:
        if args.format == "json":
            sys.stdout.write(json.dumps({"command": args.command, "error": err}, indent=2) + "\n")
        print(err, file=sys.stderr)
        return code
    sys.stdout.write(report.render(args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
