"""Command-line interface: ``twostokes <command> ...``.

Failures exit non-zero and print one JSON object ``{"error": category,
"message": text}`` on stderr.
"""

import argparse
import json
import sys
from pathlib import Path

from . import formats, region, states, tomography
from .errors import ParseError, TwoStokesError
from .measures import classify, two_photon_measures
from .plot import emit_svg_scatter
from .stokes import stokes_from_density2


class CliError(Exception):
    def __init__(self, category, message, code=1):
        super().__init__(message)
        self.category = category
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", f"{self.prog}: {message}", code=2)


def _jones(text):
    try:
        h, v = text.split(",")
        return states.JonesVector(complex(h.strip()), complex(v.strip()))
    except ValueError as exc:
        if isinstance(exc, TwoStokesError):
            raise
        raise ParseError(f"cannot read Jones vector {text!r}; expected 'h,v'") from None


def _read(path):
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError("io", f"{path}: {exc.strerror}") from None


def _emit(text, path):
    if path:
        try:
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError("io", f"{path}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


def _load_state(args):
    return formats.parse_state(
        _read(args.input), validate=not args.no_validate, normalize=args.normalize
    )


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-").replace("lam", "lambda") for n in missing)
        raise CliError("usage", f"--kind {args.kind} requires {flags}", code=2)


# state make


def cmd_state_make(args):
    kind = args.kind
    if kind == "product":
        _need(args, "jones1", "jones2")
        st = states.product_pure(_jones(args.jones1), _jones(args.jones2))
    elif kind == "bell":
        st = states.bell(args.bell)
    elif kind == "werner":
        _need(args, "lam")
        if args.jones1 and args.jones2:
            psi = states.product_pure(_jones(args.jones1), _jones(args.jones2))
        else:
            psi = states.bell(args.bell)
        st = states.werner(psi, args.lam)
    elif kind == "mixture2":
        _need(args, "jones1", "jones2", "jones3", "jones4", "lam")
        a, b, c, d = (_jones(getattr(args, f"jones{k}")) for k in range(1, 5))
        st = states.two_product_mixture(a, b, c, d, args.lam)
    else:
        spec = states.RandomSpec(args.ensemble, rank=args.rank, terms=args.terms, seed=args.seed)
        st = states.random_state(spec)
    _emit(formats.serialize_state(st), args.output)


# stokes / measures


def _table(S):
    lines = ["     j=0           j=1           j=2           j=3"]
    for i in range(4):
        lines.append(f"i={i} " + " ".join(f"{v:+.10f}" for v in S[i]))
    return "\n".join(lines) + "\n"


def cmd_stokes(args):
    S = stokes_from_density2(_load_state(args))
    sys.stdout.write(_table(S))
    if args.output:
        _emit(formats.serialize_tensor(S), args.output)


def cmd_measures(args):
    text = _read(args.input)
    if formats.is_tensor_document(text):
        S = formats.parse_tensor(text)
    else:
        S = stokes_from_density2(
            formats.parse_state(text, validate=not args.no_validate, normalize=args.normalize)
        )
    m = two_photon_measures(S)
    c = classify(S)
    rows = [
        ("P1", m.p1),
        ("P2", m.p2),
        ("Pbar^2", m.pbar_sq),
        ("P12^2 (signed)", m.p12_sq_signed),
        ("P12", m.p12),
        ("Pm", m.pm),
        ("purity", m.purity),
    ]
    out = [f"{name:<15} {value:.12f}" for name, value in rows]
    out.append(
        "class           "
        + " ".join(
            f"{k}={str(getattr(c, k)).lower()}"
            for k in ("is_pure", "is_product_pure", "is_max_entangled", "witness_entangled")
        )
    )
    sys.stdout.write("\n".join(out) + "\n")


# tomography


def cmd_tomo_simulate(args):
    st = _load_state(args)
    scheme = tomography.canonical_scheme()
    if args.noise == "poisson":
        if args.pairs is None:
            raise CliError("usage", "--noise poisson requires --pairs", code=2)
        noise = tomography.PoissonNoise(args.pairs, args.seed)
    else:
        noise = None
    records = tomography.simulate(st, scheme, noise)
    _emit(formats.write_records(records, scheme), args.output)


def cmd_tomo_invert(args):
    records, scheme = formats.read_records(_read(args.input))
    result = tomography.invert(records, scheme)
    lines = [
        f"condition_estimate {result.condition_estimate:.12g}",
        f"max_residual {result.max_residual:.6e}",
        f"physical {str(result.physical).lower()}",
        f"min_eigenvalue {result.report.min_eigenvalue:.12g}",
    ]
    if result.flux_estimate is not None:
        lines.append(f"flux_estimate {result.flux_estimate:.12g}")
    sys.stdout.write("\n".join(lines) + "\n")
    if args.output:
        _emit(formats.serialize_tensor(result.tensor), args.output)
    else:
        sys.stdout.write(_table(result.tensor))


# region


def cmd_region(args):
    family = args.family
    if family == "vertices":
        datasets = [region.RegionDataset(region.polygon_vertices(), "vertices")]
    elif family == "werner":
        if args.input:
            psi = formats.parse_state(_read(args.input))
        else:
            psi = states.bell(args.bell)
        datasets = [region.werner_sweep(psi, args.steps)]
    elif family == "segment":
        kind = args.kind or "AE"
        if kind == "all":
            datasets = [region.segment_sweep(k, args.steps) for k in region.SEGMENTS]
        else:
            datasets = [region.segment_sweep(kind, args.steps)]
    else:
        spec = states.RandomSpec(args.kind or "ginibre-mixed", rank=args.rank, terms=args.terms, seed=args.seed)
        datasets = [region.random_cloud(args.n, spec)]
    _emit(formats.write_dataset(datasets), args.output)
    if args.svg:
        _emit(emit_svg_scatter(datasets, title=f"region: {family}"), args.svg)


def _add_state_input(p):
    p.add_argument("--in", dest="input", required=True, help="state JSON file")
    p.add_argument("--no-validate", action="store_true", help="accept non-physical matrices")
    p.add_argument("--normalize", action="store_true", help="divide by the trace before validating")


def build_parser():
    parser = _Parser(prog="twostokes", description="Two-photon Stokes parameter toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    state = sub.add_parser("state", help="construct states")
    state_sub = state.add_subparsers(dest="action", required=True, parser_class=_Parser)
    make = state_sub.add_parser("make", help="write a state JSON file")
    make.add_argument("--kind", required=True, choices=["product", "bell", "werner", "mixture2", "random"])
    for k in range(1, 5):
        make.add_argument(f"--jones{k}", metavar="h,v")
    make.add_argument("--bell", default="phi+", choices=["phi+", "phi-", "psi+", "psi-"])
    make.add_argument("--lambda", dest="lam", type=float)
    make.add_argument("--ensemble", default="ginibre-mixed", choices=list(states.RANDOM_KINDS))
    make.add_argument("--rank", type=int, default=4)
    make.add_argument("--terms", type=int, default=2)
    make.add_argument("--seed", type=int, default=0)
    make.add_argument("-o", "--output")
    make.set_defaults(func=cmd_state_make)

    p = sub.add_parser("stokes", help="print the 4x4 Stokes table of a state")
    _add_state_input(p)
    p.add_argument("-o", "--output", help="tensor JSON file")
    p.set_defaults(func=cmd_stokes)

    p = sub.add_parser("measures", help="degrees of polarization and classification")
    p.add_argument("--in", dest="input", required=True, help="state or tensor JSON file")
    p.add_argument("--no-validate", action="store_true")
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_measures)

    tomo = sub.add_parser("tomo", help="coincidence tomography")
    tomo_sub = tomo.add_subparsers(dest="action", required=True, parser_class=_Parser)
    p = tomo_sub.add_parser("simulate", help="records for the 16-setting scheme")
    _add_state_input(p)
    p.add_argument("--noise", choices=["none", "poisson"], default="none")
    p.add_argument("--pairs", type=float, help="expected pairs per setting")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tomo_simulate)
    p = tomo_sub.add_parser("invert", help="linear inversion of a records file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_tomo_invert)

    p = sub.add_parser("region", help="datasets for the (P12^2, Pbar^2) plane")
    p.add_argument("family", choices=["vertices", "werner", "segment", "cloud"])
    p.add_argument("--steps", type=int, default=21)
    p.add_argument("--n", type=int, default=1000)
    p.add_argument("--kind", help="segment: AE|DE|AC_classical|all; cloud: " + "|".join(states.RANDOM_KINDS))
    p.add_argument("--bell", default="phi+", choices=["phi+", "phi-", "psi+", "psi-"])
    p.add_argument("--in", dest="input", help="pure state JSON for the Werner sweep")
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--terms", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_region)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        args.func(args)
    except CliError as exc:
        return _fail(exc.category, str(exc), exc.code)
    except TwoStokesError as exc:
        return _fail(exc.category, str(exc), 1)
    except ValueError as exc:
        return _fail("value", str(exc), 1)
    return 0


def _fail(category, message, code):
    sys.stderr.write(json.dumps({"error": category, "message": message}) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
