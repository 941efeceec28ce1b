"""Command-line front end for the exact exterior-form Clifford engine.

Six subcommands drive the library end to end: ``check-algebra`` replays
the product-level property suite over one or all supported signatures,
``build-rep`` constructs and verifies a matrix representation together
with its admissible pairings, ``verify-fierz`` runs the case-appropriate
quadratic identity suite on seeded random spinors, ``classify`` reports
the class of a single spinor (or of a hand-injected covariant set),
``census`` buckets seeded random spinors by covariant zero pattern, and
``appendix-check`` replays the twelve closed-form product expansions.

Every report embeds the tool version, signature, metric, volume sign,
pairing hash and seed; identical configurations produce byte-identical
output.  Exit status 0 means no oracle-level check failed (flagged
reduced-row mismatches are reports, not failures), 1 means an oracle or
structural check failed, and 2 means the invocation itself was invalid.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass

from .bilinear import Pairing, admissible_pairings, b_eval, standard_pairing
from .errors import (
    DimensionMismatch,
    FormParseError,
    NotASpinor,
    StructureError,
    UnsupportedSignature,
)
from .exterior import (
    Form,
    Metric,
    Signature,
    rational_from_str,
    rational_to_str,
)
from .fierz import check_fierz, covariant, fundamental_identity_holds, reconstruct_check
from .graf import (
    graf_product,
    hodge,
    in_truncation_regime,
    lower_projection,
    projector_pm,
    truncated_product,
    volume_form,
    volume_square_sign,
)
from .matrixrep import CASE_ALMOST_COMPLEX, MainSubalgebra, build_rep, build_structure
from .classify import (
    CLASS_NAMES_12,
    CLASS_NAMES_90,
    Covariants12,
    Covariants90,
    appendix_check,
    census,
    check_reduced_12,
    check_reduced_90,
    class_report,
    classify_12,
    classify_90,
    covariants_12,
    covariants_90,
    majorana_project,
)

TOOL_NAME = "grafclifford"
DEFAULT_MAX_DIM = 12

FIERZ_SIGNATURES = (Signature(1, 2), Signature(9, 0), Signature(0, 4))
CENSUS_SIGNATURES = (Signature(1, 2), Signature(9, 0))
APPENDIX_SIGNATURE = Signature(9, 0)


@dataclass(frozen=True)
class RunConfig:
    """Resolved invocation: everything a subcommand needs, no globals."""

    signature: Signature | None
    metric: Metric | None
    volume_sign: int
    seed: int
    samples: int
    trials: int
    out: str | None
    fmt: str


def _max_dim() -> int:
    raw = os.environ.get("GRAF_MAX_DIM", "")
    if not raw:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise UnsupportedSignature(f"GRAF_MAX_DIM must be an integer, got {raw!r}") from exc
    if value < 0:
        raise UnsupportedSignature("GRAF_MAX_DIM must be non-negative")
    return value


def _parse_signature(text: str) -> Signature:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"signature must look like 'p,q', got {text!r}")
    try:
        p, q = (int(part) for part in parts)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"signature parts must be integers: {text!r}") from exc
    if p < 0 or q < 0:
        raise argparse.ArgumentTypeError("signature parts must be non-negative")
    return Signature(p, q)


def _provenance(
    signature: Signature | None,
    metric: Metric | None,
    volume_sign: int | None,
    pairing_hash: str | None,
    seed: int | None,
) -> dict:
    from . import __version__

    return {
        "tool": TOOL_NAME,
        "version": __version__,
        "signature": None if signature is None else [signature.p, signature.q],
        "metric": None if metric is None else metric.to_json_obj(),
        "volume_sign": volume_sign,
        "pairing_hash": pairing_hash,
        "seed": seed,
    }


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, dict):
        for key in sorted(obj):
            value = obj[key]
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {json.dumps(value, sort_keys=True)}")
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}-")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {json.dumps(value, sort_keys=True)}")
    else:
        lines.append(f"{pad}{json.dumps(obj, sort_keys=True)}")
    return lines


def _emit(report: dict, cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        payload = json.dumps(report, sort_keys=True, separators=(",", ":")) + "\n"
    else:
        payload = "\n".join(_render_text(report)) + "\n"
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as handle:
            handle.write(payload)
    else:
        sys.stdout.write(payload)


# -- check-algebra -----------------------------------------------------------------------


def _random_form(rng: random.Random, sig: Signature, box: int = 4, terms: int = 5) -> Form:
    size = 1 << sig.n
    chosen = rng.sample(range(size), min(terms, size))
    return Form.from_mask_dict(sig, {m: rng.randint(-box, box) for m in chosen})


def _first_failure(report: dict, prop: str, sig: Signature, detail: dict) -> None:
    failures = report.setdefault("failures", {})
    failures.setdefault(prop, {"signature": [sig.p, sig.q], **detail})


def _check_signature_properties(sig: Signature, trials: int, seed: int, report: dict) -> bool:
    met = Metric.standard(sig)
    rng = random.Random(f"{seed}:{sig.p},{sig.q}")
    ok = True

    for i in range(1, sig.n + 1):
        for j in range(1, sig.n + 1):
            ei = Form.blade(sig, (i,))
            ej = Form.blade(sig, (j,))
            anti = graf_product(ei, ej, met) + graf_product(ej, ei, met)
            expected = Form.unit(sig).scale(2 * met.entry(i, j))
            if anti != expected:
                ok = False
                _first_failure(report, "clifford-relation", sig, {"i": i, "j": j})

    vol = volume_form(sig)
    square = graf_product(vol, vol, met)
    sign = volume_square_sign(sig.p, sig.q)
    if square != Form.unit(sig).scale(sign):
        ok = False
        _first_failure(report, "volume-square", sig, {"expected": sign})

    for t in range(trials):
        f, g, h = (_random_form(rng, sig) for _ in range(3))
        left = graf_product(graf_product(f, g, met), h, met)
        right = graf_product(f, graf_product(g, h, met), met)
        if left != right:
            ok = False
            _first_failure(
                report,
                "associativity",
                sig,
                {"trial": t, "f": f.to_text(), "g": g.to_text(), "h": h.to_text()},
            )
        if sig.n % 2 == 1 and graf_product(vol, f, met) != graf_product(f, vol, met):
            ok = False
            _first_failure(report, "volume-centrality", sig, {"trial": t, "f": f.to_text()})
        if hodge(f, met) != graf_product(f, vol, met):
            ok = False
            _first_failure(report, "hodge-definition", sig, {"trial": t, "f": f.to_text()})
        if hodge(hodge(f, met), met) != f.scale(sign):
            ok = False
            _first_failure(report, "hodge-square", sig, {"trial": t, "f": f.to_text()})

    if in_truncation_regime(sig):
        for t in range(trials):
            f, g = (_random_form(rng, sig) for _ in range(2))
            for s in (1, -1):
                pf = projector_pm(f, s, met)
                if projector_pm(pf, s, met) != pf:
                    ok = False
                    _first_failure(report, "projector-idempotency", sig, {"trial": t, "sign": s})
                rebuilt = projector_pm(lower_projection(pf).scale(2), s, met)
                if rebuilt != pf:
                    ok = False
                    _first_failure(report, "truncation-reconstruction", sig, {"trial": t, "sign": s})
            tp = truncated_product(f, g, 1, met)
            if projector_pm(tp, 1, met) != graf_product(
                projector_pm(f, 1, met), projector_pm(g, 1, met), met
            ):
                ok = False
                _first_failure(report, "truncated-intertwining", sig, {"trial": t})
    return ok


def cmd_check_algebra(cfg: RunConfig) -> tuple[int, dict]:
    cap = _max_dim()
    if cfg.signature is not None:
        sigs = [_require_signature(cfg)]
        trials = cfg.trials if cfg.trials else 25
    else:
        bound = min(9, cap)
        sigs = [Signature(p, n - p) for n in range(bound + 1) for p in range(n, -1, -1)]
        trials = cfg.trials if cfg.trials else 5
    report: dict = {
        "provenance": _provenance(cfg.signature, cfg.metric, None, None, cfg.seed),
        "trials_per_signature": trials,
        "signatures_checked": len(sigs),
        "volume_square_table": [],
    }
    all_ok = True
    for sig in sigs:
        all_ok &= _check_signature_properties(sig, trials, cfg.seed, report)
        report["volume_square_table"].append([sig.p, sig.q, volume_square_sign(sig.p, sig.q)])
    report["passed"] = all_ok
    return (0 if all_ok else 1), report


# -- build-rep ---------------------------------------------------------------------------


def _build_all(sig: Signature, volume_sign: int, metric: Metric | None):
    rep = build_rep(sig, volume_sign, metric)
    structure = build_structure(rep)
    pairings = admissible_pairings(rep, structure)
    return rep, structure, pairings


def _structure_obj(structure: MainSubalgebra) -> dict:
    return {
        "case": structure.case,
        "has_complex_structure": structure.J is not None,
        "has_real_structure": structure.D is not None,
        "has_quaternion_triple": structure.H is not None,
        "d_square_sign": structure.d_square_sign,
    }


def _pairing_obj(pairing: Pairing) -> dict:
    return {
        "hash": pairing.content_hash(),
        "sigma": pairing.sigma,
        "tau": pairing.tau,
        "isotropy": pairing.isotropy,
        "gram": [[rational_to_str(v) for v in row] for row in pairing.gram],
    }


def cmd_build_rep(cfg: RunConfig) -> tuple[int, dict]:
    sig = _require_signature(cfg)
    rep, structure, pairings = _build_all(sig, cfg.volume_sign, cfg.metric)
    preferred = standard_pairing(rep, structure)
    report = {
        "provenance": _provenance(
            sig, rep.metric, rep.volume_sign, preferred.content_hash(), cfg.seed
        ),
        "representation": rep.to_json_obj(),
        "structure": _structure_obj(structure),
        "pairings": [_pairing_obj(p) for p in pairings],
        "passed": True,
    }
    return 0, report


# -- verify-fierz ------------------------------------------------------------------------


def _random_vec(rng: random.Random, dim: int, box: int = 5) -> tuple:
    return tuple(rng.randint(-box, box) for _ in range(dim))


def _residual_obj(result) -> dict:
    return result.to_json_obj()


def cmd_verify_fierz(cfg: RunConfig) -> tuple[int, dict]:
    sig = _require_signature(cfg)
    if sig not in FIERZ_SIGNATURES:
        raise UnsupportedSignature(
            "built-in quadratic-identity suites cover signatures (1,2), (9,0) and (0,4)"
        )
    rep, structure, _ = _build_all(sig, cfg.volume_sign, cfg.metric)
    pairing = standard_pairing(rep, structure)
    rng = random.Random(cfg.seed)
    samples = cfg.samples if cfg.samples else 20
    dim = rep.abs.rep_dim

    def draw() -> tuple:
        vec = _random_vec(rng, dim)
        if structure.case == CASE_ALMOST_COMPLEX:
            return majorana_project(rep, structure, vec)
        return vec

    fundamental_fails = reconstruction_fails = fierz_fails = 0
    first_fierz_failure = None
    for _ in range(samples):
        a1, b1, a2, b2 = draw(), draw(), draw(), draw()
        if not fundamental_identity_holds(pairing, a1, b1, a2, b2):
            fundamental_fails += 1
        for alpha, beta in ((a1, b1), (a2, b2)):
            cov = covariant(rep, structure, pairing, alpha, beta)
            if not reconstruct_check(rep, structure, pairing, cov, alpha, beta):
                reconstruction_fails += 1
        verdict = check_fierz(rep, structure, pairing, a1, b1, a2, b2)
        if not verdict.passed:
            fierz_fails += 1
            if first_fierz_failure is None:
                first_fierz_failure = verdict.to_json_obj()

    report: dict = {
        "provenance": _provenance(sig, rep.metric, rep.volume_sign, pairing.content_hash(), cfg.seed),
        "case": structure.case,
        "samples": samples,
        "oracles": {
            "fundamental_identity_failures": fundamental_fails,
            "reconstruction_failures": reconstruction_fails,
            "fierz_failures": fierz_fails,
        },
    }
    if first_fierz_failure is not None:
        report["first_fierz_failure"] = first_fierz_failure

    master_fails = 0
    flagged_rows: dict[str, int] = {}
    flagged_example = None
    if sig == Signature(1, 2) or sig == Signature(9, 0):
        rng2 = random.Random(cfg.seed + 1)
        for _ in range(samples):
            if sig == Signature(1, 2):
                alpha = majorana_project(rep, structure, _random_vec(rng2, dim))
                cov = covariants_12(rep, structure, pairing, alpha)
                verdict = check_reduced_12(cov, b_eval(pairing, alpha, alpha))
            else:
                alpha = _random_vec(rng2, dim)
                cov = covariants_90(rep, pairing, alpha)
                verdict = check_reduced_90(cov, b_eval(pairing, alpha, alpha))
            if not verdict.master.passed:
                master_fails += 1
            for name in verdict.flagged:
                flagged_rows[name] = flagged_rows.get(name, 0) + 1
                if flagged_example is None:
                    row = next(r for r in verdict.rows if r.identity == name)
                    flagged_example = _residual_obj(row)
        report["reduced"] = {
            "master_failures": master_fails,
            "flagged_row_counts": flagged_rows,
        }
        if flagged_example is not None:
            report["reduced"]["first_flagged_row"] = flagged_example

    oracle_ok = (
        fundamental_fails == 0
        and reconstruction_fails == 0
        and fierz_fails == 0
        and master_fails == 0
    )
    report["passed"] = oracle_ok
    return (0 if oracle_ok else 1), report


# -- classify ----------------------------------------------------------------------------


def _load_json_file(path: str):
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise FormParseError(f"cannot read spinor file {path!r}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise FormParseError(f"spinor file {path!r} is not valid JSON: {exc}") from exc


def _parse_vector(obj) -> tuple:
    entries = []
    for item in obj:
        if isinstance(item, bool) or not isinstance(item, (int, str)):
            raise FormParseError(f"spinor entries must be integers or rational strings, got {item!r}")
        entries.append(rational_from_str(item) if isinstance(item, str) else item)
    return tuple(entries)


def _parse_scalar(obj, default):
    if obj is None:
        return default
    if isinstance(obj, bool) or not isinstance(obj, (int, str)):
        raise FormParseError(f"scalar must be an integer or rational string, got {obj!r}")
    return rational_from_str(obj) if isinstance(obj, str) else obj


def _classify_injected(sig: Signature, payload: dict, cfg: RunConfig) -> tuple[int, dict]:
    fields = payload["covariants"]
    if not isinstance(fields, dict):
        raise FormParseError("covariants must be an object of named forms")

    def load_form(name: str, grade: int) -> Form:
        if name not in fields:
            return Form.zero(sig)
        form = Form.from_json_obj(sig, fields[name])
        if any(k != grade for k in form.grades()):
            raise FormParseError(f"covariant {name!r} must be homogeneous of grade {grade}")
        return form

    if sig == Signature(9, 0):
        cov = Covariants90(load_form("psi0", 0), load_form("psi1", 1), load_form("psi4", 4))
        scalar = _parse_scalar(payload.get("scalar"), cov.psi0.scalar_part())
        verdict = check_reduced_90(cov, scalar)
        names = CLASS_NAMES_90
        index = classify_90(cov, scalar)
        parts = {"psi0": cov.psi0, "psi1": cov.psi1, "psi4": cov.psi4}
    elif sig == Signature(1, 2):
        cov = Covariants12(load_form("phi0", 0), load_form("phi2", 2))
        scalar = _parse_scalar(payload.get("scalar"), cov.phi0.scalar_part())
        verdict = check_reduced_12(cov, scalar)
        names = CLASS_NAMES_12
        index = classify_12(cov, scalar)
        parts = {"phi0": cov.phi0, "phi2": cov.phi2}
    else:
        raise UnsupportedSignature("covariant injection covers signatures (1,2) and (9,0)")

    report = {
        "provenance": _provenance(sig, Metric.standard(sig), cfg.volume_sign, None, cfg.seed),
        "mode": "covariant-injection",
        "scalar": rational_to_str(scalar),
        "class_index": index,
        "class_pattern": names[index],
        "covariants": {name: form.to_json_obj() for name, form in parts.items()},
        "verdict": verdict.to_json_obj(),
        "passed": True,
    }
    return 0, report


def cmd_classify(cfg: RunConfig, spinor_path: str) -> tuple[int, dict]:
    sig = _require_signature(cfg)
    payload = _load_json_file(spinor_path)
    if isinstance(payload, dict) and "covariants" in payload:
        return _classify_injected(sig, payload, cfg)
    if not isinstance(payload, list):
        raise FormParseError(
            "spinor file must be a JSON array of rationals or an object with 'covariants'"
        )
    vec = _parse_vector(payload)
    rep, structure, _ = _build_all(sig, cfg.volume_sign, cfg.metric)
    pairing = standard_pairing(rep, structure)
    if len(vec) != rep.abs.rep_dim:
        raise DimensionMismatch(
            f"spinor has {len(vec)} entries; the representation needs {rep.abs.rep_dim}"
        )
    result = class_report(rep, structure, pairing, vec)
    report = {
        "provenance": _provenance(sig, rep.metric, rep.volume_sign, pairing.content_hash(), cfg.seed),
        "mode": "spinor",
        "report": result.to_json_obj(),
        "passed": True,
    }
    return 0, report


# -- census ------------------------------------------------------------------------------


def cmd_census(cfg: RunConfig) -> tuple[int, dict]:
    sig = _require_signature(cfg)
    if sig not in CENSUS_SIGNATURES:
        raise UnsupportedSignature("census covers signatures (1,2) and (9,0)")
    rep = build_rep(sig, cfg.volume_sign, cfg.metric)
    structure = build_structure(rep)
    pairing = standard_pairing(rep, structure)
    result = census(sig, cfg.samples, cfg.seed, volume_sign=cfg.volume_sign)
    report = {
        "provenance": _provenance(sig, rep.metric, rep.volume_sign, pairing.content_hash(), cfg.seed),
        "census": result.to_json_obj(),
        "passed": True,
    }
    return 0, report


# -- appendix-check ----------------------------------------------------------------------


def cmd_appendix_check(cfg: RunConfig) -> tuple[int, dict]:
    sig = cfg.signature if cfg.signature is not None else APPENDIX_SIGNATURE
    if sig != APPENDIX_SIGNATURE:
        raise UnsupportedSignature("the product-expansion battery is defined on signature (9,0)")
    verdict = appendix_check(sig, cfg.trials, cfg.seed)
    report = {
        "provenance": _provenance(sig, Metric.standard(sig), cfg.volume_sign, None, cfg.seed),
        "battery": verdict.to_json_obj(),
        "passed": verdict.passed,
    }
    return (0 if verdict.passed else 1), report


# -- entry point -------------------------------------------------------------------------


def _require_signature(cfg: RunConfig) -> Signature:
    if cfg.signature is None:
        raise UnsupportedSignature("this subcommand requires --signature p,q")
    cap = _max_dim()
    if cfg.signature.n > cap:
        raise UnsupportedSignature(
            f"dimension {cfg.signature.n} exceeds the GRAF_MAX_DIM cap of {cap}"
        )
    return cfg.signature


def _add_common_flags(sub: argparse.ArgumentParser, samples_default: int, trials_default: int) -> None:
    sub.add_argument("--signature", type=_parse_signature, default=None, metavar="p,q")
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--samples", type=int, default=samples_default, metavar="N")
    sub.add_argument("--trials", type=int, default=trials_default, metavar="N")
    sub.add_argument("--volume-sign", choices=("+", "-"), default="+")
    sub.add_argument("--format", choices=("json", "text"), default="json", dest="fmt")
    sub.add_argument("--out", default=None, metavar="PATH")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=TOOL_NAME,
        description="Exact arithmetic engine for Clifford algebra on exterior forms.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    specs = (
        ("check-algebra", "replay the product-level property suite", 0, 0),
        ("build-rep", "construct and verify a matrix representation", 0, 0),
        ("verify-fierz", "run the quadratic identity suite on seeded spinors", 20, 0),
        ("classify", "classify one spinor or covariant set from a JSON file", 0, 0),
        ("census", "bucket seeded random spinors by covariant pattern", 1000, 0),
        ("appendix-check", "replay the twelve product expansions", 0, 100),
    )
    for name, help_text, samples_default, trials_default in specs:
        sub = commands.add_parser(name, help=help_text)
        _add_common_flags(sub, samples_default, trials_default)
        if name == "classify":
            sub.add_argument("spinor_file", metavar="SPINOR_FILE")
    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        signature=args.signature,
        metric=None,
        volume_sign=1 if args.volume_sign == "+" else -1,
        seed=args.seed,
        samples=args.samples,
        trials=args.trials,
        out=args.out,
        fmt=args.fmt,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = _config_from_args(args)
    try:
        if args.command == "check-algebra":
            status, report = cmd_check_algebra(cfg)
        elif args.command == "build-rep":
            status, report = cmd_build_rep(cfg)
        elif args.command == "verify-fierz":
            status, report = cmd_verify_fierz(cfg)
        elif args.command == "classify":
            status, report = cmd_classify(cfg, args.spinor_file)
        elif args.command == "census":
            status, report = cmd_census(cfg)
        else:
            status, report = cmd_appendix_check(cfg)
    except (FormParseError, DimensionMismatch, UnsupportedSignature) as exc:
        print(f"{TOOL_NAME}: error: {exc}", file=sys.stderr)
        return 2
    except (NotASpinor, StructureError) as exc:
        _emit(
            {
                "provenance": _provenance(cfg.signature, None, None, None, cfg.seed),
                "error": str(exc),
                "passed": False,
            },
            cfg,
        )
        return 1
    _emit(report, cfg)
    return status


if __name__ == "__main__":
    sys.exit(main())
