"""Command-line interface: figure-style outputs as CSV/JSON/SVG.

Subcommands: moments, section, zeros, curve, analyze, bessel, szego,
cvw-constant, watson, stray.  Exit codes: 0 success, 2 configuration
error, 3 numerical non-convergence.

Configuration comes from an optional flat key=value file (--config) with
command-line flags taking precedence.  Complex values are written in the
locale-free form `re+imi`, e.g. `-0.5+1i`.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import __version__
from .analysis import (InsufficientDataError, ZeroRecord, admissible_indices,
                       classify_zeros, maxdist, rate_fit, stray_scan)
from .curves import (bessel_limit_curve, distance_to_curve,
                     sample_limit_curve, szego_curve)
from .integrand import IntegrandSpec, bessel_spec, hyp1f1_spec, named_spec
from .moments import (WatsonProblem, moment, moment_closed_form, watson_check)
from .roots import aberth_roots
from .sections import bessel_section, build_section, exp_section, hyp1f1_section
from .specfun import NonConvergenceError, first_erfc_zero_upper


class ConfigError(ValueError):
    pass


def parse_complex(s: str) -> complex:
    """Parse `re+imi` notation: '1', '-0.5', '2i', '-0.5+1i', '1-i'."""
    s = str(s).strip().replace(" ", "")
    if not s:
        raise ConfigError("empty complex literal")
    if not s.endswith(("i", "j")):
        try:
            return complex(float(s), 0.0)
        except ValueError as e:
            raise ConfigError(f"bad complex literal {s!r}") from e
    body = s[:-1]
    split = -1
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "eE":
            split = pos
            break
    if split < 0:
        re_part, im_part = "0", body
    else:
        re_part, im_part = body[:split], body[split:]
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    try:
        return complex(float(re_part or "0"), float(im_part))
    except ValueError as e:
        raise ConfigError(f"bad complex literal {s!r}") from e


def format_complex(z: complex) -> str:
    z = complex(z)
    return f"{z.real:.17g}{z.imag:+.17g}i"


def _parse_degree_list(s: str) -> list[int]:
    """'40:160:20' (start:stop:step, inclusive) or '40,80,160'."""
    s = str(s).strip()
    if ":" in s:
        parts = s.split(":")
        if len(parts) not in (2, 3):
            raise ConfigError(f"bad degree range {s!r}")
        start, stop = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
        if step <= 0 or stop < start:
            raise ConfigError(f"bad degree range {s!r}")
        return list(range(start, stop + 1, step))
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as e:
        raise ConfigError(f"bad degree list {s!r}") from e


def _resolve_spec(args) -> IntegrandSpec:
    if getattr(args, "spec", None):
        try:
            return named_spec(args.spec)
        except (KeyError, ValueError) as e:
            raise ConfigError(str(e)) from e
    if getattr(args, "a", None) is not None:
        g = tuple(parse_complex(t) for t in str(args.g).split(",")) if args.g else (1,)
        try:
            return IntegrandSpec(float(args.a), float(args.b),
                                 parse_complex(args.mu), parse_complex(args.nu),
                                 g=g, name="custom")
        except ValueError as e:
            raise ConfigError(str(e)) from e
    raise ConfigError("no integrand given: use --spec or --a/--b/--mu/--nu")


def _load_config(path: str) -> dict:
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                if "=" not in line:
                    raise ConfigError(f"{path}:{line_no}: expected key=value")
                key, val = line.split("=", 1)
                out[key.strip().replace("-", "_")] = val.strip()
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e}") from e
    return out


def _apply_config(args, config: dict):
    for key, val in config.items():
        if not hasattr(args, key):
            raise ConfigError(f"unknown config key {key!r}")
        if getattr(args, key) is None:
            setattr(args, key, val)
    return args


# ---------------------------------------------------------------------------
# emission
# ---------------------------------------------------------------------------

_CSV_HEADER = ["N", "re", "im", "side", "deviation", "predicted_deviation",
               "dist_to_curve", "excluded_reason"]


def emit_csv(records, path: str):
    """Zero records as RFC-4180 CSV with 17-significant-digit numbers."""
    try:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(_CSV_HEADER)
            for r in records:
                w.writerow([r.N, f"{r.z.real:.17g}", f"{r.z.imag:.17g}", r.side,
                            f"{r.deviation:.17g}", f"{r.predicted_deviation:.17g}",
                            f"{r.dist_to_curve:.17g}", r.excluded_reason])
    except OSError as e:
        raise ConfigError(f"cannot write {path}: {e}") from e


def emit_svg(curve, roots, path: str, annotations=(), timestamp: bool = True,
             size: int = 640):
    """Curve + zeros as a standalone SVG 1.1 document.

    One path for the curve polyline, one for the straight segment, one
    group of circle markers for the zeros; viewBox [-2.2/c, 2.2/c]^2.
    """
    c = curve.c
    half = 2.2 / c
    scale = size / (2 * half)

    def sx(x):
        return (x + half) * scale

    def sy(y):
        return (half - y) * scale

    def path_of(points):
        return "M " + " L ".join(f"{sx(p.real):.3f} {sy(p.imag):.3f}"
                                 for p in points) + " Z"

    lines = ['<?xml version="1.0" encoding="UTF-8"?>']
    if timestamp:
        lines.append(f"<!-- generated {time.strftime('%Y-%m-%dT%H:%M:%S')} -->")
    lines.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size}" height="{size}" viewBox="0 0 {size} {size}">')
    lines.append(f'<path d="{path_of(curve.samples)}" fill="none" '
                 'stroke="black" stroke-width="1.2"/>')
    if curve.has_segment:
        p, q = curve.seg_start, curve.seg_end
        lines.append(f'<path d="M {sx(p.real):.3f} {sy(p.imag):.3f} '
                     f'L {sx(q.real):.3f} {sy(q.imag):.3f}" fill="none" '
                     'stroke="black" stroke-width="1.2"/>')
    if len(roots):
        lines.append('<g fill="crimson" stroke="none">')
        for z in roots:
            lines.append(f'<circle cx="{sx(z.real):.3f}" cy="{sy(z.imag):.3f}" r="2.4"/>')
        lines.append("</g>")
    for note in annotations:
        lines.append(f"<!-- {note} -->")
    lines.append("</svg>")
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as e:
        raise ConfigError(f"cannot write {path}: {e}") from e


def _config_echo(args) -> dict:
    out = {}
    for key, val in sorted(vars(args).items()):
        if key in ("func", "config") or val is None:
            continue
        out[key] = val if isinstance(val, (int, float, str, bool, list)) else str(val)
    return out


def _write_manifest(args, outputs: list[str]):
    path = getattr(args, "manifest", None)
    if path is None and outputs:
        path = outputs[0] + ".manifest.json"
    if path is None:
        return
    doc = {"version": __version__, "command": args.command,
           "config": _config_echo(args), "outputs": outputs}
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# per-degree pipeline (module level so worker pools can pickle it)
# ---------------------------------------------------------------------------

def _pipeline_one_degree(spec: IntegrandSpec, N: int, curve_samples: int,
                         delta: float):
    curve = sample_limit_curve(spec, curve_samples)
    section = build_section(spec, N)
    rs = aberth_roots(section)
    return classify_zeros(rs, spec, N, curve, delta)


def _family_zeros(args, spec_name_required=True):
    """Zeros of one section for the zeros/stray subcommands.

    Returns (records, roots_for_svg, curve) in the output frame: for the
    Bessel family the coordinates are rotated onto D(J), where the sides
    'left'/'right' mean the upper/lower half-plane.
    """
    family = args.family or "spec"
    n = int(args.n)
    if family == "exp":
        sec = exp_section(n)
        rs = aberth_roots(sec)
        curve = szego_curve(int(args.curve_samples))
        records = []
        for z in rs.roots:
            d = distance_to_curve(z, curve)
            mod = curve.right_modulus(z)  # |z e^{1-z}|, the single curve equation
            records.append(ZeroRecord(n, complex(z), "right" if z.real > 0 else "left",
                                      mod - 1.0, 0.0, d, ""))
        return records, rs.roots, curve
    if family == "bessel":
        alpha = parse_complex(args.alpha or "0")
        spec = bessel_spec(alpha)
        curve_f = sample_limit_curve(spec, int(args.curve_samples))
        pair = bessel_section(alpha, n)
        rs = aberth_roots(pair.section)
        # section zeros live in the D(J) frame; classify in the integrand frame
        zs_f = 1j * rs.roots
        records_f = classify_zeros(zs_f, spec, n, curve_f, args.delta_margin)
        curve_j = bessel_limit_curve(int(args.curve_samples))
        records = [type(r)(r.N, complex(-1j * r.z), r.side, r.deviation,
                           r.predicted_deviation, r.dist_to_curve,
                           r.excluded_reason) for r in records_f]
        return records, rs.roots, curve_j
    if family == "hyp1f1":
        b = parse_complex(args.bparam or "2.5")
        spec = hyp1f1_spec(b)
        curve = sample_limit_curve(spec, int(args.curve_samples))
        sec = hyp1f1_section(b, n)
        rs = aberth_roots(sec)
        records = classify_zeros(rs, spec, n, curve, args.delta_margin)
        return records, rs.roots, curve
    spec = _resolve_spec(args)
    curve = sample_limit_curve(spec, int(args.curve_samples))
    records = _pipeline_one_degree(spec, n, int(args.curve_samples),
                                   args.delta_margin)
    return records, np.array([r.z for r in records]), curve


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_cvw_constant(args):
    res = first_erfc_zero_upper()
    print(f"{res.cvw_constant:.10f}")
    if args.verbose:
        print(f"t1 = {format_complex(res.t1)}  |erfc(t1)| = {res.residual:.3e}")
    _write_manifest(args, [])
    return 0


def _cmd_moments(args):
    spec = _resolve_spec(args)
    ks = _parse_degree_list(args.k)
    rows = []
    for k in ks:
        mv = moment(spec, k)
        cf = moment_closed_form(spec, k)
        rows.append((k, mv.value, mv.est_abs_error, cf, abs(mv.value - cf)))
    out = args.out
    outputs = []
    if out:
        with open(out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "re", "im", "est_abs_error",
                        "closed_re", "closed_im", "abs_diff"])
            for k, v, e, cf, d in rows:
                w.writerow([k, f"{v.real:.17g}", f"{v.imag:.17g}", f"{e:.17g}",
                            f"{cf.real:.17g}", f"{cf.imag:.17g}", f"{d:.17g}"])
        outputs.append(out)
    else:
        for k, v, e, cf, d in rows:
            print(f"m_{k} = {format_complex(v)}  (est_err {e:.2e}, "
                  f"closed-form diff {d:.2e})")
    _write_manifest(args, outputs)
    return 0


def _cmd_section(args):
    spec = _resolve_spec(args)
    n = int(args.n)
    sec = build_section(spec, n)
    outputs = []
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["k", "re", "im", "scale_exponent"])
            for k, c in enumerate(sec.coeffs):
                w.writerow([k, f"{c.real:.17g}", f"{c.imag:.17g}", sec.scale_exponent])
        outputs.append(args.out)
    else:
        print(f"degree {sec.n}, scale 2^{sec.scale_exponent}, "
              f"max |coeff| = {np.max(np.abs(sec.coeffs)):.6f}")
    _write_manifest(args, outputs)
    return 0


def _cmd_zeros(args):
    records, roots, curve = _family_zeros(args)
    outputs = []
    if args.out:
        emit_csv(records, args.out)
        outputs.append(args.out)
    if args.svg:
        emit_svg(curve, roots, args.svg, timestamp=not args.no_timestamp)
        outputs.append(args.svg)
    if not outputs:
        for r in records[:10]:
            print(f"N={r.N} z={format_complex(r.z)} side={r.side} "
                  f"dev={r.deviation:+.5f}")
        if len(records) > 10:
            print(f"... {len(records)} zeros total")
    _write_manifest(args, outputs)
    return 0


def _cmd_curve(args):
    fam = args.family or "spec"
    if fam == "bessel":
        curve = bessel_limit_curve(int(args.curve_samples))
    elif fam in ("szego", "exp"):
        curve = szego_curve(int(args.curve_samples))
    else:
        curve = sample_limit_curve(_resolve_spec(args), int(args.curve_samples))
    outputs = []
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["re", "im"])
            for p in curve.samples:
                w.writerow([f"{p.real:.17g}", f"{p.imag:.17g}"])
        outputs.append(args.out)
    if args.svg:
        emit_svg(curve, np.zeros(0, dtype=complex), args.svg,
                 timestamp=not args.no_timestamp)
        outputs.append(args.svg)
    _write_manifest(args, outputs)
    return 0


def _cmd_analyze(args):
    spec = _resolve_spec(args)
    degrees = _parse_degree_list(args.n)
    eps = float(args.epsilon_ncond if args.epsilon_ncond is not None else 0.25)
    adm = admissible_indices(spec, min(degrees), max(degrees), eps)
    use = [n for n in degrees if n in set(adm.indices)]
    if not use:
        raise ConfigError("no admissible degrees in the requested range")
    jobs = int(args.jobs) if args.jobs else (os.cpu_count() or 1)
    cs = int(args.curve_samples)
    delta = args.delta_margin
    records = []
    if jobs > 1 and len(use) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_pipeline_one_degree, spec, n, cs, delta)
                    for n in use]
            for f in futs:
                records.extend(f.result())
    else:
        for n in use:
            records.extend(_pipeline_one_degree(spec, n, cs, delta))

    report = {"spec": spec.name or "custom", "degrees": use,
              "epsilon_ncond": eps, "xi": spec.xi,
              "per_degree": {}, "fits": {}}
    curve = sample_limit_curve(spec, cs)
    for n in use:
        recs = [r for r in records if r.N == n]
        inc = [r for r in recs if not r.excluded]
        report["per_degree"][str(n)] = {
            "zeros": len(recs),
            "included": len(inc),
            "maxdist_included": max((r.dist_to_curve for r in inc), default=None),
            "mean_dev_left": _mean([r.deviation for r in inc if r.side == "left"]),
            "mean_dev_right": _mean([r.deviation for r in inc if r.side == "right"]),
        }
    for side in ("left", "right"):
        try:
            fit = rate_fit(records, spec, side)
            report["fits"][side] = {
                "slope": fit.slope, "intercept": fit.intercept,
                "theoretical_slope": fit.theoretical_slope,
                "residual_rms": fit.residual_rms,
                "sample_count": fit.sample_count,
            }
        except InsufficientDataError:
            report["fits"][side] = None
    outputs = []
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        outputs.append(args.report)
    if args.out:
        emit_csv(sorted(records, key=lambda r: (r.N, r.z.real, r.z.imag)), args.out)
        outputs.append(args.out)
    if not outputs:
        print(json.dumps(report["fits"], indent=2, sort_keys=True))
    _write_manifest(args, outputs)
    return 0


def _mean(vals):
    return float(np.mean(vals)) if vals else None


def _cmd_bessel(args):
    alpha = parse_complex(args.alpha or "0")
    degrees = _parse_degree_list(args.n)
    curve = bessel_limit_curve(int(args.curve_samples))
    report = {"alpha": format_complex(alpha), "maxdist": {}, "ek_bound": {},
              "even_rule": {}}
    for n in degrees:
        pair = bessel_section(alpha, n)
        rs = aberth_roots(pair.section)
        report["maxdist"][str(n)] = maxdist(rs.roots, curve)
        zeta = aberth_roots(pair.pn)
        bound = 1.0 + 2.0 * alpha.real / n
        worst = float(np.max(np.abs(zeta.roots))) if len(zeta.roots) else 0.0
        report["ek_bound"][str(n)] = {"bound": bound, "max_root_modulus": worst,
                                      "holds": bool(worst <= bound + 1e-9)}
    spec = bessel_spec(alpha)
    adm = admissible_indices(spec, 2, max(degrees))
    odd_excluded = all(n % 2 == 0 for n in adm.indices)
    report["even_rule"] = {"all_admissible_even": odd_excluded,
                           "admissible_up_to_20": [n for n in adm.indices if n <= 20]}
    outputs = []
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        outputs.append(args.report)
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    _write_manifest(args, outputs)
    return 0


def _cmd_szego(args):
    degrees = _parse_degree_list(args.n)
    delta = float(args.delta if args.delta is not None else 0.5)
    curve = szego_curve(int(args.curve_samples))
    report = {"delta": delta, "rows": []}
    for n in degrees:
        rs = aberth_roots(exp_section(n))
        md = maxdist(rs.roots, curve, exclude_center=1.0 + 0.0j,
                     exclude_radius=delta)
        report["rows"].append({"n": n, "maxdist": md,
                               "maxdist_n_over_logn": md * n / math.log(n)})
    outputs = []
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        outputs.append(args.report)
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    _write_manifest(args, outputs)
    return 0


def _cmd_watson(args):
    sigma = parse_complex(args.sigma)
    h = tuple(parse_complex(t) for t in str(args.h).split(",")) if args.h else (1,)
    prob = WatsonProblem(sigma, float(args.T), h, args.side)
    if ":" in str(args.lambdas):
        lo, hi_, cnt = str(args.lambdas).split(":")
        lams = list(np.geomspace(float(lo), float(hi_), int(cnt)))
    else:
        lams = [float(t) for t in str(args.lambdas).split(",")]
    rows = watson_check(prob, lams)
    outputs = []
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["lambda", "numeric_re", "numeric_im",
                        "leading_re", "leading_im", "scaled_error"])
            for r in rows:
                w.writerow([f"{r.lam:.17g}", f"{r.numeric.real:.17g}",
                            f"{r.numeric.imag:.17g}", f"{r.leading.real:.17g}",
                            f"{r.leading.imag:.17g}", f"{r.scaled_error:.17g}"])
        outputs.append(args.out)
    else:
        for r in rows:
            print(f"lambda={r.lam:10.2f}  scaled_error={r.scaled_error:.6e}")
    _write_manifest(args, outputs)
    return 0


def _cmd_stray(args):
    degrees = _parse_degree_list(args.n)
    tol_curve = float(args.tol_curve if args.tol_curve is not None else 0.1)
    tol_cluster = float(args.tol_cluster if args.tol_cluster is not None else 0.05)
    fam = args.family or "spec"
    if fam == "bessel":
        alpha = parse_complex(args.alpha or "0")
        spec = bessel_spec(alpha)
        curve = sample_limit_curve(spec, int(args.curve_samples))
        roots_by_n = {}
        for n in degrees:
            pair = bessel_section(alpha, n)
            roots_by_n[n] = 1j * aberth_roots(pair.section).roots
    else:
        spec = _resolve_spec(args)
        curve = sample_limit_curve(spec, int(args.curve_samples))
        roots_by_n = {n: aberth_roots(build_section(spec, n)).roots
                      for n in degrees}
    cands = stray_scan(roots_by_n, curve, spec, tol_curve, tol_cluster)
    report = {"tol_curve": tol_curve, "tol_cluster": tol_cluster,
              "degrees": degrees,
              "candidates": [{"point": format_complex(c.point), "in_E": c.in_E}
                             for c in cands]}
    outputs = []
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
            fh.write("\n")
        outputs.append(args.report)
    else:
        print(json.dumps(report, indent=2, sort_keys=True))
    _write_manifest(args, outputs)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_spec_opts(p):
    p.add_argument("--spec", help="named integrand: fig2, fig3, uniform, "
                                  "bessel(a), hyp1f1(b)")
    p.add_argument("--a", help="left endpoint a >= 0")
    p.add_argument("--b", help="right endpoint b >= 0")
    p.add_argument("--mu", help="left endpoint exponent (re+imi)")
    p.add_argument("--nu", help="right endpoint exponent (re+imi)")
    p.add_argument("--g", help="smooth polynomial factor, comma list, low first")


def _add_common(p):
    p.add_argument("--config", help="flat key=value config file")
    p.add_argument("--manifest", help="path for the JSON run manifest")
    p.add_argument("--curve-samples", dest="curve_samples", default=None,
                   help="polyline sample count (default 2048)")
    p.add_argument("--delta-margin", dest="delta_margin", type=float,
                   default=None, help="exclusion margin (default 0.1/c)")
    p.add_argument("--no-timestamp", action="store_true",
                   help="omit the timestamp comment from SVG output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="sectionzeros",
        description="Zeros of sections of exponential-integral functions: "
                    "limit curves, approach rates, special cases.")
    ap.add_argument("--version", action="version", version=__version__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cvw-constant", help="first erfc zero constant Re+Im")
    p.add_argument("--verbose", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_cvw_constant)

    p = sub.add_parser("moments", help="quadrature vs closed-form moments")
    _add_spec_opts(p)
    p.add_argument("--k", required=True, help="indices, e.g. 0:10 or 0,1,5")
    p.add_argument("--out", help="CSV output path")
    _add_common(p)
    p.set_defaults(func=_cmd_moments)

    p = sub.add_parser("section", help="normalized section coefficients")
    _add_spec_opts(p)
    p.add_argument("--n", required=True, help="section degree")
    p.add_argument("--out", help="CSV output path")
    _add_common(p)
    p.set_defaults(func=_cmd_section)

    p = sub.add_parser("zeros", help="zeros of one normalized section")
    _add_spec_opts(p)
    p.add_argument("--family", choices=["exp", "bessel", "hyp1f1", "spec"],
                   help="named family (default: use --spec)")
    p.add_argument("--alpha", help="Bessel order (re+imi)")
    p.add_argument("--bparam", help="hyp1f1 parameter b (re+imi)")
    p.add_argument("--n", required=True, help="section degree")
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--svg", help="SVG output path")
    _add_common(p)
    p.set_defaults(func=_cmd_zeros)

    p = sub.add_parser("curve", help="sample a limit curve")
    _add_spec_opts(p)
    p.add_argument("--family", choices=["bessel", "szego", "exp", "spec"])
    p.add_argument("--out", help="CSV output path")
    p.add_argument("--svg", help="SVG output path")
    _add_common(p)
    p.set_defaults(func=_cmd_curve)

    p = sub.add_parser("analyze", help="multi-degree rate analysis")
    _add_spec_opts(p)
    p.add_argument("--n", required=True, help="degrees, e.g. 40:160:20")
    p.add_argument("--epsilon-ncond", dest="epsilon_ncond", type=float,
                   help="admissibility threshold factor (default 0.25)")
    p.add_argument("--jobs", help="worker processes (default: cpu count)")
    p.add_argument("--report", help="JSON report path")
    p.add_argument("--out", help="per-zero CSV path")
    _add_common(p)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("bessel", help="Bessel-section diagnostics")
    p.add_argument("--alpha", help="Bessel order (re+imi), default 0")
    p.add_argument("--n", required=True, help="even degrees, e.g. 40,80,160")
    p.add_argument("--report", help="JSON report path")
    _add_common(p)
    p.set_defaults(func=_cmd_bessel)

    p = sub.add_parser("szego", help="exp-section maxdist to the Szego curve")
    p.add_argument("--n", required=True, help="degrees, e.g. 20,40,80,160")
    p.add_argument("--delta", type=float, help="exclusion ball radius at z=1")
    p.add_argument("--report", help="JSON report path")
    _add_common(p)
    p.set_defaults(func=_cmd_szego)

    p = sub.add_parser("watson", help="endpoint asymptotics check")
    p.add_argument("--sigma", required=True, help="endpoint exponent (re+imi)")
    p.add_argument("--T", default="1", help="integration endpoint T > 0")
    p.add_argument("--h", help="smooth factor coefficients, comma list")
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--lambdas", required=True,
                   help="comma list or geometric range lo:hi:count")
    p.add_argument("--out", help="CSV output path")
    _add_common(p)
    p.set_defaults(func=_cmd_watson)

    p = sub.add_parser("stray", help="scan for persistent off-curve zeros")
    _add_spec_opts(p)
    p.add_argument("--family", choices=["bessel", "spec"])
    p.add_argument("--alpha", help="Bessel order (re+imi)")
    p.add_argument("--n", required=True, help="degrees, e.g. 40,80,160")
    p.add_argument("--tol-curve", dest="tol_curve", type=float)
    p.add_argument("--tol-cluster", dest="tol_cluster", type=float)
    p.add_argument("--report", help="JSON report path")
    _add_common(p)
    p.set_defaults(func=_cmd_stray)

    return ap


def run(argv=None) -> int:
    """Entry point returning a process exit code."""
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if getattr(args, "config", None):
            _apply_config(args, _load_config(args.config))
        if getattr(args, "curve_samples", None) is None:
            args.curve_samples = 2048
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except NonConvergenceError as e:
        print(f"numerical error: {e}", file=sys.stderr)
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
