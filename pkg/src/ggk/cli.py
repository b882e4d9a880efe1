"""
Command-line interface.  Every command prints JSON (``--text`` for a human
readable form) and exits with 0 on success, 1 when a check reports
witnesses, and 2 on usage, schema or input errors.

GGK_SEED is reserved and unused: every computation is deterministic.
"""

import argparse
import json
import os
import sys
import tempfile

from . import forms, groupoid
from .fan import FanError, minimal_galleries, ray_reduction, recognize_arrangement, verify_chamber_decomposition
from .model import ModelError, generate, load_model
from .svg import render_svg


class CliError(Exception):
    pass


def _write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ggk-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(args, payload, text=None):
    if args.text and text is not None:
        out = text.rstrip("\n") + "\n"
    else:
        out = json.dumps(payload, indent=1, sort_keys=True) + "\n"
    sys.stdout.write(out)


def _report(args, report):
    lines = ["%s: %s" % (report.check, report.status)]
    lines += ["  " + json.dumps(w, sort_keys=True) for w in report.witnesses]
    _emit(args, report.to_dict(), "\n".join(lines))
    return 0 if report.ok else 1


def _model(args):
    if not args.model:
        raise CliError("-m/--model is required")
    return load_model(args.model)


def _ray_label(model, label, ref):
    if label not in model.indecomposables:
        raise CliError("unknown indecomposable %r" % label)
    return model.indices_wrt(ref)[label]


def _decomposition_dict(S):
    return {"dim": S.ambient_dim,
            "chambers": [{"label": str(l), "rays": [list(g) for g in C.generators]}
                         for l, C in zip(S.labels, S.chambers)]}


# -- commands ---------------------------------------------------------------

def cmd_generate(args):
    params = {"a_n": ("n", args.n), "dihedral": ("m", args.m), "sigma_swap": ("c", args.c)}[args.kind]
    if params[1] is None:
        raise CliError("generate %s needs --%s" % (args.kind, params[0]))
    try:
        model = generate(args.kind, **{params[0]: params[1]})
    except (ValueError, KeyError) as exc:
        raise CliError(str(exc)) from None
    text = model.dumps()
    if args.out:
        _write_atomic(args.out, text)
        _emit(args, {"written": args.out, "maximal_rigid": len(model.maximal_rigid),
                     "indecomposables": len(model.indecomposables)},
              "wrote %s (%d maximal rigid, %d indecomposables)"
              % (args.out, len(model.maximal_rigid), len(model.indecomposables)))
    else:
        sys.stdout.write(text)
    return 0


def cmd_fan(args):
    model = _model(args)
    ref = args.ref or model.reference
    S = model.decomposition(ref)
    if args.action == "verify":
        report = verify_chamber_decomposition(S)
        report.model = model.name or None
        return _report(args, report)
    if args.action == "recognize":
        report = verify_chamber_decomposition(S)
        if not report.ok:
            return _report(args, report)
        rec = recognize_arrangement(S)
        payload = {"check": "recognize", "model": model.name or None,
                   "status": "ok" if rec.is_arrangement else "fail",
                   "is_arrangement": rec.is_arrangement}
        if rec.is_arrangement:
            payload["hyperplanes"] = [list(n) for n in rec.arrangement.normals]
            text = "arrangement of %d hyperplanes: %s" % (
                len(rec.arrangement), " ".join(str(n) for n in rec.arrangement.normals))
        else:
            w = dict(rec.witness)
            idx = model.indices_wrt(ref)
            if "ray" in w:
                w["objects"] = sorted(k for k, v in idx.items() if list(v) == w["ray"])
            payload["witnesses"] = [w]
            text = "not an arrangement: %s" % json.dumps(w, sort_keys=True)
        _emit(args, payload, text)
        return 0 if rec.is_arrangement else 1
    if args.action == "reduce":
        if not args.ray:
            raise CliError("fan reduce needs --ray")
        R = ray_reduction(S, _ray_label(model, args.ray, ref))
        report = verify_chamber_decomposition(R)
        payload = dict(_decomposition_dict(R), status=report.status, witnesses=report.witnesses)
        text = "%d chambers in R^%d, %s" % (len(R.chambers), R.ambient_dim, report.status)
        _emit(args, payload, text)
        return 0 if report.ok else 1
    if args.action == "export":
        payload = _decomposition_dict(S)
        text = "\n".join("%s: %s" % (c["label"], " ".join(str(tuple(r)) for r in c["rays"]))
                         for c in payload["chambers"])
        _emit(args, payload, text)
        return 0
    raise CliError("unknown fan action %r" % args.action)


def cmd_paths(args):
    model = _model(args)
    Q = groupoid.build_quiver(model)
    for v in (args.source, args.target):
        if v not in model.maximal_rigid:
            raise CliError("unknown vertex %r" % v)
    if args.green:
        words = groupoid.green_paths(args.source, args.target, model)
    else:
        words = [Q.path(g) for g in minimal_galleries(model.decomposition(), args.source, args.target)]
    payload = {"from": args.source, "to": args.target, "green": bool(args.green),
               "paths": [{"arrows": w.to_list(Q), "vertices": w.vertices(Q)} for w in words]}
    text = "\n".join(" -> ".join(w.vertices(Q)) for w in words)
    _emit(args, payload, text)
    return 0


def _base(args, model):
    base = args.source or model.reference
    if base not in model.maximal_rigid:
        raise CliError("unknown vertex %r" % base)
    return base


def cmd_groupoid(args):
    model = _model(args)
    P = groupoid.green_presentation(model)
    Q = P.quiver
    if args.action == "presentation":
        _emit(args, P.to_dict(), P.to_text())
        return 0
    if args.action == "vertex-group":
        at = args.at or model.reference
        G = groupoid.vertex_group(P, at)
        E = groupoid.tietze_eliminate(G)
        B = groupoid.braid_form(E)
        payload = {"at": at, "presentation": G.to_dict(), "reduced": E.to_dict(),
                   "braid": B.to_dict() if B else None, "log": (B or E).log}
        text = "%s\nreduced: %s\nbraid form: %s" % (G.to_text(), E.to_text(), B.to_text() if B else "not found")
        _emit(args, payload, text)
        return 0
    if args.action == "normal-form":
        if args.word is None:
            raise CliError("normal-form needs --word")
        w = groupoid.parse_word(args.word, _base(args, model), Q)
        segs = groupoid.normal_form(w, model)
        payload = {"segments": [s.to_list(Q) for s in segs],
                   "vertices": [s.vertices(Q) for s in segs]}
        _emit(args, payload, "\n".join(" -> ".join(s.vertices(Q)) for s in segs))
        return 0
    if args.action == "word-eq":
        if args.w1 is None or args.w2 is None:
            raise CliError("word-eq needs --w1 and --w2")
        base = _base(args, model)
        w1, w2 = groupoid.parse_word(args.w1, base, Q), groupoid.parse_word(args.w2, base, Q)
        verdict = groupoid.words_equal_bounded(w1, w2, P, args.depth)
        _emit(args, {"result": verdict, "depth": args.depth}, verdict)
        return 0
    raise CliError("unknown groupoid action %r" % args.action)


def cmd_check(args):
    model = _model(args)
    if args.which == "forms":
        return _report(args, forms.check_theorem_b_forms(model))
    if args.which == "invariance":
        return _report(args, forms.check_invariance(model))
    if args.which == "antisymmetry":
        return _report(args, forms.check_antisymmetry(model))
    if args.which == "congruence":
        if args.source or args.target:
            if not (args.source and args.target):
                raise CliError("congruence needs both --from and --to, or neither")
            return _report(args, forms.check_congruence(model, args.source, args.target))
        return _report(args, forms.check_all_congruences(model))
    if args.which == "middle-terms":
        return _report(args, forms.check_middle_terms(model))
    raise CliError("unknown check %r" % args.which)


def cmd_render(args):
    model = _model(args)
    text = render_svg(model, args.ref)
    if args.out:
        _write_atomic(args.out, text)
        _emit(args, {"written": args.out}, "wrote %s" % args.out)
    else:
        sys.stdout.write(text)
    return 0


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", "--model", help="FanModel JSON file")
    common.add_argument("-o", "--out", help="output file")
    common.add_argument("--text", action="store_true", help="human-readable output")
    common.add_argument("--ref", help="maximal rigid label to use as reference")

    p = argparse.ArgumentParser(prog="ggk", description="g-vector fans and green groupoids")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", parents=[common], help="write a model")
    g.add_argument("kind", choices=["a_n", "dihedral", "sigma_swap"])
    g.add_argument("--n", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--c", type=int)
    g.set_defaults(func=cmd_generate)

    f = sub.add_parser("fan", parents=[common], help="verify, recognize, reduce or export a fan")
    f.add_argument("action", choices=["verify", "recognize", "reduce", "export"])
    f.add_argument("--ray", help="indecomposable label for reduce")
    f.set_defaults(func=cmd_fan)

    pa = sub.add_parser("paths", parents=[common], help="minimal or green paths")
    pa.add_argument("--from", dest="source", required=True)
    pa.add_argument("--to", dest="target", required=True)
    pa.add_argument("--green", action="store_true")
    pa.set_defaults(func=cmd_paths)

    gr = sub.add_parser("groupoid", parents=[common], help="green groupoid computations")
    gr.add_argument("action", choices=["presentation", "vertex-group", "normal-form", "word-eq"])
    gr.add_argument("--at", help="vertex for vertex-group")
    gr.add_argument("--from", dest="source", help="base vertex of --word/--w1/--w2")
    gr.add_argument("--word", help='arrow names in traversal order, e.g. "x1 x3^-1"')
    gr.add_argument("--w1")
    gr.add_argument("--w2")
    gr.add_argument("--depth", type=int, default=8)
    gr.set_defaults(func=cmd_groupoid)

    c = sub.add_parser("check", parents=[common], help="form and index checks")
    c.add_argument("which", choices=["forms", "invariance", "antisymmetry", "congruence", "middle-terms"])
    c.add_argument("--from", dest="source")
    c.add_argument("--to", dest="target")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("render", parents=[common], help="SVG of a 2-D fan")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, ModelError, FanError, groupoid.GroupoidError, forms.FormsError,
            ValueError, KeyError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write("ggk: error: %s\n" % msg)
        return 2


if __name__ == "__main__":
    sys.exit(main())
