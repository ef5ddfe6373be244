"""Command-line front end (``equiloc``).

Exit status: 0 on success, 2 for malformed input (bad JSON, schema
violations, unparsable flags), 3 when the input is well-formed but rejected
mathematically (the message starts with the error class name).
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from . import coadjoint, equivalence, io
from .errors import EquilocError
from .expsum import ExpSum, Frequency, to_json, to_latex, to_text
from .polytope import check_delzant, face_type
from .rational import Q, format_scalar, scalar_to_json
from .toric import kappa_toric, moment_shift, s_class, type_signature

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_MATH = 3


class UsageError(Exception):
    pass


def _vector(text: str | None, name: str) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x != "")
    except ValueError:
        raise UsageError(f"{name}: expected comma-separated integers, got {text!r}") from None


def _vec_text(v) -> str:
    return "(" + ", ".join(format_scalar(c) for c in v) + ")"


# input assembly

def _model_dict(args) -> dict:
    kind = args.model
    model: dict = {"kind": kind}
    if kind == "simplex":
        if args.n is None:
            raise UsageError("--n is required for the simplex model")
        model["n"] = args.n
    if kind == "hirzebruch":
        if args.k is None:
            raise UsageError("--k is required for the hirzebruch model")
        model["k"] = args.k
    if kind == "pl_bundle":
        model["a"] = list(_vector(args.a, "--a") or ())
        if not model["a"]:
            raise UsageError("--a is required for the pl_bundle model")
    for key in ("sigma", "tau"):
        value = getattr(args, key)
        if value is not None:
            model[key] = value
        elif args.param_mode or (kind == "simplex" and key == "sigma"):
            model[key] = key if args.param_mode else "1"
        elif not (kind == "simplex" and key == "tau") and not getattr(args, "incommensurable", False):
            raise UsageError(f"--{key} is required for the {kind} model")
    return model


def load_polytope(args):
    if args.file:
        data = io.load_json_file(args.file)
        return io.polytope_from_json(data, parametric=args.param_mode), data.get("vector")
    if not args.model:
        raise UsageError("give --file or --model")
    data = {"model": _model_dict(args)}
    return io.polytope_from_json(data, parametric=args.param_mode), None


def load_orbit(args):
    if args.file:
        data = io.load_json_file(args.file)
        return io.orbit_from_json(data), data.get("vector")
    if not args.spectrum:
        raise UsageError("give --file or --spectrum")
    spectrum = [x for x in args.spectrum.replace(" ", "").split(",") if x]
    data = {"orbit": {"n": len(spectrum), "spectrum": spectrum}}
    return io.orbit_from_json(data), None


def _first_vector(args, file_vector):
    v = _vector(args.vector, "--vector")
    if v is None and file_vector is not None:
        v = tuple(file_vector)
    if v is None:
        raise UsageError("--vector is required")
    return v


def _second_vector(args):
    v = _vector(args.vector2, "--vector2")
    if v is None:
        raise UsageError("--vector2 is required")
    return v


# rendering

def render_sum(s: ExpSum, fmt: str, prefactor: Frequency | None = None, extra: dict | None = None) -> str:
    if fmt == "latex":
        if prefactor is not None and not all(f.basis == prefactor.basis for f in s.frequencies()):
            prefactor = None
        return to_latex(s, prefactor)
    if fmt == "json":
        data = to_json(s)
        if extra:
            data.update(extra)
        return json.dumps(data, sort_keys=True)
    return to_text(s)


def render_verdict(v: equivalence.Verdict, fmt: str) -> str:
    data = v.to_json()
    if fmt == "json":
        return json.dumps(data, sort_keys=True)
    lines = [f"status: {data['status']}", f"witness: {json.dumps(data['witness'], sort_keys=True)}",
             f"tests_run: {', '.join(data['tests_run'])}", f"relation: {data['relation']}"]
    for key, value in sorted(data["details"].items()):
        lines.append(f"{key}: {json.dumps(value, sort_keys=True)}")
    return "\n".join(lines)


# commands

def cmd_check(args) -> str:
    p, _ = load_polytope(args)
    report = check_delzant(p)
    if args.format == "json":
        return json.dumps({
            "n": p.n,
            "vertices": [[scalar_to_json(c) for c in v] for v in p.vertices],
            "frames": [[list(r) for r in f] for f in p.frames],
            "delzant": report.ok,
            "violations": report.violations,
            "volume": scalar_to_json(p.volume()),
            "center_of_mass": [scalar_to_json(c) for c in p.center_of_mass()],
        }, sort_keys=True)
    lines = [f"dimension: {p.n}", f"delzant: {'pass' if report.ok else 'fail'}"]
    for v, f in zip(p.vertices, p.frames):
        lines.append(f"vertex {_vec_text(v)}  edges {' '.join(_vec_text(r) for r in f)}")
    lines.append(f"volume: {format_scalar(p.volume())}")
    lines.append(f"center_of_mass: {_vec_text(p.center_of_mass())}")
    return "\n".join(lines)


def cmd_s_class(args) -> str:
    p, fv = load_polytope(args)
    x = _first_vector(args, fv)
    s = s_class(p, x)
    q = moment_shift(p, x)
    basis = ("1",) + p.symbols
    return render_sum(s, args.format, Frequency.of(q, basis),
                      {"q": scalar_to_json(q), "type": face_type(p, x), "vector": list(x)})


def cmd_compare(args) -> str:
    p, fv = load_polytope(args)
    x = _first_vector(args, fv)
    y = _second_vector(args)
    return render_verdict(equivalence.necessary_tests(p, x, y), args.format)


def cmd_classify(args) -> str:
    p, fv = load_polytope(args)
    x = _first_vector(args, fv)
    sig = type_signature(p, x)
    q, cross = kappa_toric(p, x)
    data = {
        "vector": list(x),
        "type": sig.s,
        "profile": [[str(f), d] for f, d in sig.profile],
        "q": scalar_to_json(q),
        "q_series": scalar_to_json(cross),
    }
    if args.model == "hirzebruch" and not args.file and not args.param_mode:
        data["subtype"] = equivalence.hirzebruch_subtype(args.k, Q(args.sigma), Q(args.tau), x)
    if args.format == "json":
        return json.dumps(data, sort_keys=True, ensure_ascii=False)
    lines = [f"type: {sig.s}", f"q: {format_scalar(q)} (series: {format_scalar(cross)})"]
    if "subtype" in data:
        lines.append(f"subtype: {data['subtype']}")
    lines += [f"  e^{{{f} u}}: degree {d}" for f, d in sig.profile]
    return "\n".join(lines)


def cmd_decide(args) -> str:
    x = _vector(args.vector, "--vector")
    y = _second_vector(args)
    if x is None:
        raise UsageError("--vector is required")
    fmt = args.format
    if args.model == "s2xs2" and not args.file:
        if args.incommensurable:
            v = equivalence.s2xs2_decide(None, None, x, y, mode="incommensurable")
        else:
            if args.sigma is None or args.tau is None:
                raise UsageError("--sigma and --tau are required unless --incommensurable")
            v = equivalence.s2xs2_decide(Q(args.sigma), Q(args.tau), x, y, mode="concrete")
        return render_verdict(v, fmt)
    if args.model == "hirzebruch" and not args.file and args.k != 0:
        if args.sigma is None or args.tau is None:
            raise UsageError("--sigma and --tau are required")
        v = equivalence.hirzebruch_decide(args.k, Q(args.sigma), Q(args.tau), x, y)
        return render_verdict(v, fmt)
    p, _ = load_polytope(args)
    return render_verdict(equivalence.necessary_tests(p, x, y), fmt)


def cmd_orbit_s_class(args) -> str:
    spec, fv = load_orbit(args)
    x = _first_vector(args, fv)
    kappa = coadjoint.kappa_orbit(spec, x)
    s = coadjoint.s_class_orbit(spec, x)
    return render_sum(s, args.format, Frequency.of(kappa), {"kappa": scalar_to_json(kappa), "vector": list(x)})


def orbit_compare(spec, x, y) -> equivalence.Verdict:
    x, y = coadjoint.SuVector(tuple(x)), coadjoint.SuVector(tuple(y))
    if spec.blocks in ((1, spec.n - 1), (spec.n - 1, 1)):
        return coadjoint.cpn_decide(spec, x, y)
    run: list[str] = []
    details: dict = {}
    weyl = coadjoint.weyl_orbit_test(x, y)
    run += weyl.tests_run
    if weyl.status == equivalence.EQUIVALENT:
        return equivalence.Verdict(equivalence.EQUIVALENT, weyl.witness, run)
    s_equal = coadjoint.s_class_orbit(spec, x) == coadjoint.s_class_orbit(spec, y)
    run.append("s_class_orbit")
    if not s_equal:
        return equivalence.Verdict(equivalence.NOT_EQUIVALENT, "S-inequality", run)
    if x.regular and y.regular:
        tests = [coadjoint.orbit_value_tests]
        if len(spec.blocks) == 2 and 1 < spec.blocks[0] < spec.n:
            tests.append(coadjoint.grassmann_necessary)
        if all(b == 1 for b in spec.blocks):
            tests.append(coadjoint.flag_necessary)
        for test in tests:
            v = test(spec, x, y)
            run += v.tests_run
            details.update(v.details)
            if v.status == equivalence.NOT_EQUIVALENT:
                return equivalence.Verdict(equivalence.NOT_EQUIVALENT, v.witness, run, details)
    return equivalence.Verdict(equivalence.INCONCLUSIVE, None, run, details)


def cmd_orbit_compare(args) -> str:
    spec, fv = load_orbit(args)
    x = _first_vector(args, fv)
    y = _second_vector(args)
    return render_verdict(orbit_compare(spec, x, y), args.format)


# sweep

def _grid(config: dict, dim: int) -> list[tuple[int, ...]]:
    if "vectors" in config:
        return [tuple(v) for v in config["vectors"]]
    lo, hi = config.get("range", [-1, 1])
    vecs = [v for v in itertools.product(range(lo, hi + 1), repeat=dim) if any(v)]
    if config.get("trace_free"):
        vecs = [v for v in vecs if sum(v) == 0]
    return vecs


def _sweep_row(job):
    config, index, x, y = job
    try:
        test = config["test"]
        if test == "orbit-compare":
            spec = io.orbit_from_json({"orbit": config["orbit"]})
            v = orbit_compare(spec, x, y)
        else:
            model = config.get("model")
            if test == "decide" and model and model["kind"] == "s2xs2":
                if config.get("incommensurable"):
                    v = equivalence.s2xs2_decide(None, None, x, y, mode="incommensurable")
                else:
                    v = equivalence.s2xs2_decide(Q(model["sigma"]), Q(model["tau"]), x, y)
            elif test == "decide" and model and model["kind"] == "hirzebruch" and model["k"] != 0:
                v = equivalence.hirzebruch_decide(model["k"], Q(model["sigma"]), Q(model["tau"]), x, y)
            else:
                p = _sweep_polytope(config)
                if test == "s-equal":
                    v = equivalence.compare_s(p, x, y)
                else:
                    v = equivalence.necessary_tests(p, x, y)
        row = {"index": index, "x": list(x), "y": list(y), "status": v.status,
               "witness": v.to_json()["witness"]}
    except EquilocError as exc:
        row = {"index": index, "x": list(x), "y": list(y), "error": exc.name, "message": str(exc)}
    return row


def _sweep_polytope(config):
    if "model" in config:
        return io.polytope_from_json({"model": config["model"]})
    return io.polytope_from_json(config["manifold"])


def cmd_sweep(args) -> str:
    if not args.config:
        raise UsageError("--config is required")
    config = io.validate_sweep(io.load_json_file(args.config))
    if config["test"] == "orbit-compare":
        if "orbit" not in config:
            raise io.SchemaViolation(["$: orbit-compare sweeps need an 'orbit' entry"])
        dim = config["orbit"]["n"]
    else:
        if "model" not in config and "manifold" not in config:
            raise io.SchemaViolation(["$: toric sweeps need a 'model' or 'manifold' entry"])
        if "model" in config and config["model"]["kind"] in ("hirzebruch", "s2xs2", "product_of_segments"):
            dim = 2
        else:
            dim = _sweep_polytope(config).n
    vecs = _grid(config, dim)
    jobs = [(config, i, x, y) for i, (x, y) in enumerate(itertools.product(vecs, vecs))]
    workers = config.get("workers", 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_row, jobs, chunksize=64))
    else:
        rows = [_sweep_row(j) for j in jobs]
    rows.sort(key=lambda r: r["index"])
    return "\n".join(json.dumps(r, sort_keys=True) for r in rows)


COMMANDS = {
    "check": cmd_check,
    "s-class": cmd_s_class,
    "compare": cmd_compare,
    "classify": cmd_classify,
    "decide": cmd_decide,
    "orbit-s-class": cmd_orbit_s_class,
    "orbit-compare": cmd_orbit_compare,
    "sweep": cmd_sweep,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equiloc",
        description="Exact localization invariants of Hamiltonian circle actions.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_format="text"):
        p.add_argument("--format", choices=["text", "latex", "json"], default=default_format)

    def toric(p):
        p.add_argument("--file", "--manifold", dest="file", help="polytope JSON document")
        p.add_argument("--model", choices=["simplex", "hirzebruch", "pl_bundle", "s2xs2",
                                           "product_of_segments"])
        p.add_argument("--n", type=int, help="simplex dimension")
        p.add_argument("--k", type=int, help="Hirzebruch twist")
        p.add_argument("--a", help="pl_bundle twists, comma-separated")
        p.add_argument("--sigma")
        p.add_argument("--tau")
        p.add_argument("--param-mode", action="store_true",
                       help="treat sigma and tau as independent symbols")

    def orbit(p):
        p.add_argument("--file", dest="file", help="orbit JSON document")
        p.add_argument("--spectrum", help="weakly decreasing spectrum, comma-separated")

    for name in ("check", "s-class", "compare", "classify", "decide"):
        p = sub.add_parser(name)
        toric(p)
        common(p, "json" if name == "decide" else "text")
        if name != "check":
            p.add_argument("--vector", "--b", dest="vector")
        if name in ("compare", "decide"):
            p.add_argument("--vector2", "--b2", dest="vector2")
        if name == "decide":
            p.add_argument("--incommensurable", action="store_true")
    for name in ("orbit-s-class", "orbit-compare"):
        p = sub.add_parser(name)
        orbit(p)
        common(p)
        p.add_argument("--vector", dest="vector")
        if name == "orbit-compare":
            p.add_argument("--vector2", dest="vector2")
    p = sub.add_parser("sweep")
    p.add_argument("--config", required=True, help="sweep JSON configuration")
    common(p)
    return parser


VECTOR_FLAGS = {"--vector", "--b", "--vector2", "--b2", "--a", "--spectrum", "--sigma", "--tau", "--k"}


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Rewrite ``--b2 -1,2`` as ``--b2=-1,2`` so argparse does not read an option."""
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in VECTOR_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(token)
            elif nxt.startswith("-") and len(nxt) > 1 and (nxt[1].isdigit() or nxt[1] == ","):
                out.append(f"{token}={nxt}")
            else:
                out += [token, nxt]
        else:
            out.append(token)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    args = parser.parse_args(_attach_negative_values(argv))
    if not hasattr(args, "param_mode"):
        args.param_mode = False
    try:
        out = COMMANDS[args.command](args)
    except io.SchemaViolation as exc:
        for line in exc.diagnostics:
            print(f"schema error: {line}", file=sys.stderr)
        return EXIT_SCHEMA
    except (UsageError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except EquilocError as exc:
        print(f"{exc.name}: {exc}", file=sys.stderr)
        return EXIT_MATH
    print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
