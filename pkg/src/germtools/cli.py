"""Command-line front end.

Subcommands: ``report`` (full analysis of one germ file), ``compare``
(invariant-profile comparison of two germs), ``family`` (Whitney criterion
over parameter samples), ``corpus`` (run the built-in inventory against its
frozen expectations).  Output is human-readable text or, with ``--json``,
a deterministic JSON document.  Exit codes: 0 clean, 1 input error,
2 inconsistency or corpus failure.

Germ files are line oriented::

    # lines starting with '#' are comments
    label: C5
    vars: x y
    map: (x, y^2, x*y^3 - x^5*y)
    param: t          # optional: makes this a one-parameter family
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from .exactpoly import PolyParseError, parse_poly
from .germs import FamilyGerm, MapGerm
from .report import analyze, document, encode_number, render_text, to_json
from .transversal import whitney_family_check, zariski_compare, zariski_profile

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_INCONSISTENT = 2


class GermFileError(ValueError):
    pass


@dataclass(frozen=True)
class GermFile:
    label: str | None
    vars: tuple[str, str]
    exprs: tuple[str, str, str]
    param: str | None

    def to_germ(self) -> MapGerm:
        comps = [parse_poly(e, self.vars) for e in self.exprs]
        return MapGerm(comps[0], comps[1], comps[2], label=self.label)

    def to_family(self) -> FamilyGerm:
        if self.param is None:
            raise GermFileError("germ file declares no parameter")
        vs = self.vars + (self.param,)
        comps = [parse_poly(e, vs) for e in self.exprs]
        return FamilyGerm(comps[0], comps[1], comps[2], self.param, label=self.label)


def _split_triple(text: str) -> tuple[str, str, str]:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise GermFileError("map must be a parenthesised triple (f1, f2, f3)")
    inner = text[1:-1]
    parts: list[str] = []
    depth = 0
    current = []
    for ch in inner:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise GermFileError("unbalanced parentheses in map")
        if ch == "," and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    if len(parts) != 3:
        raise GermFileError(f"map needs exactly three coordinates, found {len(parts)}")
    return tuple(p.strip() for p in parts)  # type: ignore[return-value]


def parse_germ_file(path: Path) -> GermFile:
    try:
        text = path.read_text()
    except OSError as exc:
        raise GermFileError(f"cannot read {path}: {exc}") from exc
    fields: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise GermFileError(f"{path}:{lineno}: expected 'key: value'")
        key, value = line.split(":", 1)
        key = key.strip().lower()
        if key in fields:
            raise GermFileError(f"{path}:{lineno}: duplicate key {key!r}")
        fields[key] = value.strip()
    for required in ("vars", "map"):
        if required not in fields:
            raise GermFileError(f"{path}: missing '{required}:' line")
    vars_ = tuple(fields["vars"].split())
    if len(vars_) != 2 or len(set(vars_)) != 2:
        raise GermFileError(f"{path}: 'vars' must list two distinct names")
    exprs = _split_triple(fields["map"])
    param = fields.get("param")
    if param is not None and (len(param.split()) != 1 or param in vars_):
        raise GermFileError(f"{path}: bad parameter name {param!r}")
    return GermFile(label=fields.get("label"), vars=vars_,  # type: ignore[arg-type]
                    exprs=exprs, param=param)


def _parse_samples(text: str) -> list[Fraction]:
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        try:
            out.append(Fraction(piece))
        except (ValueError, ZeroDivisionError) as exc:
            raise GermFileError(f"bad sample value {piece!r}: {exc}") from exc
    if not out:
        raise GermFileError("no samples supplied")
    return out


def cmd_report(args) -> int:
    gf = parse_germ_file(Path(args.file))
    if gf.param is not None:
        print("note: file declares a parameter; analysing it as a plain germ "
              "requires removing 'param:' (use the 'family' command instead)",
              file=sys.stderr)
        return EXIT_INPUT
    f = gf.to_germ()
    result = analyze(f, seed=args.seed, max_order=args.max_colength)
    doc = document(result, seed=args.seed, max_order=args.max_colength)
    print(to_json(doc) if args.json else render_text(doc))
    return EXIT_INCONSISTENT if doc["inconsistencies"] else EXIT_OK


def cmd_compare(args) -> int:
    fa = parse_germ_file(Path(args.file_a)).to_germ()
    fb = parse_germ_file(Path(args.file_b)).to_germ()
    pa = zariski_profile(fa, max_order=args.max_colength)
    pb = zariski_profile(fb, max_order=args.max_colength)
    cmp_ = zariski_compare(fa, fb, max_order=args.max_colength)
    doc = {
        "germ_a": {"label": fa.label, "map": [str(c) for c in fa.components]},
        "germ_b": {"label": fb.label, "map": [str(c) for c in fb.components]},
        "profile_a": _profile_doc(pa),
        "profile_b": _profile_doc(pb),
        "comparison": {
            "weights_match": cmp_.weights_match,
            "lambda_degree_match": cmp_.lambda_degree_match,
            "intersection_tables_match": cmp_.intersection_tables_match,
            "C_T_match": cmp_.c_t_match,
            "degrees_equal": cmp_.degrees_equal,
            "multiplicities_equal": cmp_.multiplicities_equal,
            "profiles_match": cmp_.profiles_match,
        },
        "version": __version__,
        "seed": args.seed,
    }
    if args.json:
        print(to_json(doc))
    else:
        print(f"A: {fa.label or fa} -> profile {_profile_doc(pa)}")
        print(f"B: {fb.label or fb} -> profile {_profile_doc(pb)}")
        for key, value in doc["comparison"].items():
            print(f"  {key}: {value}")
    return EXIT_OK


def _profile_doc(p) -> dict:
    return {
        "weights": list(p.weights),
        "degrees": list(p.degrees),
        "lambda_degree": p.lambda_degree,
        "intersections": list(p.intersections),
        "C": encode_number(p.C),
        "T": encode_number(p.T),
        "mult_image": encode_number(p.mult_image),
    }


def cmd_family(args) -> int:
    gf = parse_germ_file(Path(args.file))
    fam = gf.to_family()
    samples = _parse_samples(args.samples)
    check = whitney_family_check(fam, samples, seed=args.seed,
                                 max_order=args.max_colength)
    doc = {
        "family": {"label": fam.label, "param": fam.param,
                   "map": [str(c) for c in (fam.f1, fam.f2, fam.f3)]},
        "samples": [
            {
                "t": encode_number(s.t),
                "fd": s.verdict.value,
                "mu_W": s.mu_w,
                "m_image": encode_number(s.m_image),
                "inconsistencies": list(s.inconsistencies),
            }
            for s in check.samples
        ],
        "mu_W_constant": check.mu_w_constant,
        "m_image_constant": check.m_image_constant,
        "whitney_equisingular_on_samples": check.whitney_on_samples,
        "version": __version__,
        "seed": args.seed,
    }
    if args.json:
        print(to_json(doc))
    else:
        name = fam.label or "family"
        print(f"{name} in parameter {fam.param}:")
        for s in doc["samples"]:
            print(f"  t={s['t']}: {s['fd']}  mu_W={s['mu_W']}  m={s['m_image']}")
        print(f"  mu_W constant on samples: {check.mu_w_constant}")
        print(f"  image multiplicity constant on samples: {check.m_image_constant}")
    bad = any(s.inconsistencies for s in check.samples)
    return EXIT_INCONSISTENT if bad else EXIT_OK


def cmd_corpus(args) -> int:
    from .corpus import run_corpus
    rows = run_corpus(seed=args.seed, max_order=args.max_colength)
    ok = all(r.passed for r in rows)
    if args.json:
        doc = {
            "results": [
                {"label": r.label, "passed": r.passed, "failures": list(r.failures)}
                for r in rows
            ],
            "passed": ok,
            "version": __version__,
            "seed": args.seed,
        }
        print(to_json(doc))
    else:
        width = max(len(r.label) for r in rows)
        for r in rows:
            print(f"{r.label:{width}s}  {'pass' if r.passed else 'FAIL'}")
            for msg in r.failures:
                print(f"    {msg}")
        print(f"{sum(r.passed for r in rows)}/{len(rows)} corpus germs pass")
    return EXIT_OK if ok else EXIT_INCONSISTENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="germtools",
        description="Exact invariants of corank-1 quasihomogeneous map germs "
                    "from the plane to 3-space")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for generic projections and planes (default 0)")
        p.add_argument("--max-colength", type=int, default=64,
                       help="truncation bound for local dimension computations")

    p_report = sub.add_parser("report", help="full invariant report for one germ")
    p_report.add_argument("file")
    common(p_report)
    p_report.set_defaults(func=cmd_report)

    p_cmp = sub.add_parser("compare", help="compare the invariant profiles of two germs")
    p_cmp.add_argument("file_a")
    p_cmp.add_argument("file_b")
    common(p_cmp)
    p_cmp.set_defaults(func=cmd_compare)

    p_fam = sub.add_parser("family", help="Whitney criterion over parameter samples")
    p_fam.add_argument("file")
    p_fam.add_argument("--samples", required=True,
                       help="comma-separated rational parameter values")
    common(p_fam)
    p_fam.set_defaults(func=cmd_family)

    p_corpus = sub.add_parser("corpus", help="run the built-in golden corpus")
    common(p_corpus)
    p_corpus.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    from .doublepoint import InconsistencyError
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (GermFileError, PolyParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InconsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return EXIT_INCONSISTENT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
