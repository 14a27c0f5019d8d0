"""Command-line front end: eval, verify and report subcommands.

Exit codes: 0 success; 1 usage or config problems; 2 domain/pole errors;
3 convergence errors; 4 verification runs containing failed or errored
records.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .catalog import build_case, family_names
from .errors import (
    DivergenceError,
    DomainError,
    EvaluationError,
    MaxTermsError,
    NonConvergenceError,
    PoleError,
)
from .identities import (
    BinomialGen,
    GegenbauerGen,
    HumbertGen,
    WrightSpec,
    closed_form_lauricella,
    closed_form_theorem1,
    closed_form_theorem2,
    closed_form_theorem3,
    closed_form_theorem4,
    generating_integral_closed_form,
    t1_spec,
    t2_spec,
    t3_spec,
    t4_spec,
    tn_spec,
)
from .multivar import appell_f1, appell_f3, gegenbauer, humbert_phi2, lauricella_fd
from .quadrature import QuadraturePolicy, evaluate_integral_direct, tanh_sinh_integrate
from .scalars import beta_fn, gamma_fn, log_gamma, pochhammer
from .series import SeriesPolicy, SeriesResult, hyper_pfq, mittag_leffler, wright_psi, \
    wright_psi_normalized
from .verify import ConfigError, GridConfig, load_report, report_json_text, \
    report_to_csv, run_verification, summarize, write_report

# Greek spellings accepted on the command line for convenience.
_KEY_ALIASES = {
    "α": "alpha", "β": "beta", "γ": "gamma", "λ": "lam",
    "lambda": "lam", "ν": "nu", "μ": "mu", "δ": "delta",
    "ω": "omega", "α₁": "alpha1", "α₂": "alpha2",
    "x₁": "x1", "x₂": "x2", "β₁": "beta1", "β₂": "beta2",
}


def _parse_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        return text


def _parse_kv(args: list[str]) -> dict:
    out = {}
    for item in args:
        if "=" not in item:
            raise DomainError(f"expected key=value, got {item!r}")
        key, _, value = item.partition("=")
        key = _KEY_ALIASES.get(key.strip(), key.strip())
        out[key] = _parse_value(value.strip())
    return out


def _as_complex(value) -> complex:
    if isinstance(value, list) and len(value) == 2:
        return complex(value[0], value[1])
    return complex(value)


def _as_pairs(value) -> list[tuple[float, float]]:
    return [(float(a), float(w)) for a, w in value]


def _fmt_complex(z: complex) -> str:
    if z.imag == 0.0:
        return repr(z.real)
    return f"{z.real!r}{z.imag:+}j"


def _print_series(name: str, result: SeriesResult) -> None:
    print(f"{name} value={_fmt_complex(result.value)} "
          f"tail={result.tail_estimate:.3e} terms={result.terms_used}")


def _print_scalar(name: str, value: float) -> None:
    print(f"{name} value={value!r}")


def _make_generator(kv: dict):
    kind = kv.pop("gen", "binomial")
    if kind == "binomial":
        return BinomialGen(float(kv.pop("a")), float(kv.pop("x", 1.0)))
    if kind == "gegenbauer":
        return GegenbauerGen(float(kv.pop("a")), float(kv.pop("x", 1.0)))
    if kind == "humbert":
        return HumbertGen(float(kv.pop("a")), float(kv.pop("b")), float(kv.pop("x")))
    raise DomainError(f"unknown generator kind {kind!r}")


def _euler_spec_from_kv(kv: dict):
    family = kv.pop("family", "t1")
    lam = float(kv.pop("lam"))
    p = _as_complex(kv.pop("p", 0.0))
    if family == "t1":
        return t1_spec(kv["alpha"], kv["beta"], kv["alpha1"], kv["alpha2"],
                       kv["x1"], kv["x2"], lam, p)
    if family == "t2":
        return t2_spec(kv["alpha"], kv["beta"], kv["alpha1"], kv["alpha2"],
                       kv["x1"], kv["x2"], lam, p)
    if family == "t3":
        return t3_spec(kv["alpha"], kv["beta"], kv["gamma"], kv.get("a", 0.0),
                       kv.get("b", 1.0), kv["u"], kv["v"], lam, p)
    if family == "t4":
        return t4_spec(kv["alpha"], kv["beta"], kv.get("a", 0.0), kv.get("b", 1.0),
                       kv["nu"], kv["mu"], lam, p)
    if family == "tn":
        return tn_spec(kv["alpha"], kv["beta"], kv["alphas"], kv["xs"], lam, p)
    raise DomainError(f"unknown integral family {family!r}")


def _eval_dispatch(name: str, kv: dict, policy: SeriesPolicy) -> None:
    if name in ("wright_psi", "wright_psi_normalized"):
        spec = WrightSpec(_as_pairs(kv["upper"]), _as_pairs(kv.get("lower", [])))
        fn = wright_psi if name == "wright_psi" else wright_psi_normalized
        _print_series(name, fn(spec, _as_complex(kv["z"]), policy))
    elif name == "pfq":
        _print_series(name, hyper_pfq([float(v) for v in kv.get("num", [])],
                                      [float(v) for v in kv.get("den", [])],
                                      _as_complex(kv["z"]), policy))
    elif name == "mittag_leffler":
        _print_series(name, mittag_leffler(float(kv["lam"]), _as_complex(kv["z"]), policy))
    elif name == "appell_f1":
        _print_series(name, appell_f1(kv["alpha"], kv["beta1"], kv["beta2"], kv["gamma"],
                                      _as_complex(kv["x"]), _as_complex(kv["y"]), policy))
    elif name == "appell_f3":
        _print_series(name, appell_f3(kv["alpha1"], kv["alpha2"], kv["beta1"], kv["beta2"],
                                      kv["gamma"], _as_complex(kv["x"]),
                                      _as_complex(kv["y"]), policy))
    elif name == "humbert_phi2":
        _print_series(name, humbert_phi2(kv["b1"], kv["b2"], kv["c"],
                                         _as_complex(kv["x"]), _as_complex(kv["y"]), policy))
    elif name == "lauricella_fd":
        _print_series(name, lauricella_fd(kv["alpha"], kv["alphas"], kv["gamma"],
                                          [_as_complex(x) for x in kv["xs"]], policy))
    elif name == "gegenbauer":
        _print_scalar(name, gegenbauer(int(kv["n"]), float(kv["a"]), float(kv["x"])))
    elif name == "beta":
        _print_scalar(name, beta_fn(float(kv["x"]), float(kv["y"])))
    elif name == "gamma":
        _print_scalar(name, gamma_fn(float(kv["x"])))
    elif name == "log_gamma":
        _print_scalar(name, log_gamma(float(kv["x"])))
    elif name == "pochhammer":
        _print_scalar(name, pochhammer(float(kv["a"]), int(kv["n"])))
    elif name == "theorem1":
        _print_series(name, closed_form_theorem1(kv["alpha"], kv["beta"], kv["alpha1"],
                                                 kv["alpha2"], kv["x1"], kv["x2"],
                                                 kv["lam"], _as_complex(kv["p"]), policy))
    elif name == "theorem2":
        _print_series(name, closed_form_theorem2(kv["alpha"], kv["beta"], kv["alpha1"],
                                                 kv["alpha2"], kv["x1"], kv["x2"],
                                                 kv["lam"], _as_complex(kv["p"]), policy))
    elif name == "theorem3":
        _print_series(name, closed_form_theorem3(kv["alpha"], kv["beta"], kv["gamma"],
                                                 kv.get("a", 0.0), kv.get("b", 1.0),
                                                 kv["u"], kv["v"], kv["lam"],
                                                 _as_complex(kv["p"]), policy))
    elif name == "theorem4":
        _print_series(name, closed_form_theorem4(kv["alpha"], kv["beta"], kv.get("a", 0.0),
                                                 kv.get("b", 1.0), kv["nu"], kv["mu"],
                                                 kv["lam"], _as_complex(kv["p"]), policy))
    elif name == "lauricella_closed":
        _print_series(name, closed_form_lauricella(kv["alpha"], kv["beta"], kv["alphas"],
                                                   kv["xs"], kv["lam"],
                                                   _as_complex(kv["p"]), policy))
    elif name == "generating":
        gen = _make_generator(kv)
        factors = list(zip(kv.get("alphas", []), kv.get("xs", [])))
        _print_series(name, generating_integral_closed_form(
            gen, kv["r"], kv["s"], kv["delta"], kv["omega"], kv["lam"],
            _as_complex(kv.get("p", 0.0)), _as_complex(kv.get("t", 0.0)),
            factors, policy))
    elif name == "integral_direct":
        spec = _euler_spec_from_kv(kv)
        result = evaluate_integral_direct(spec, QuadraturePolicy(), policy)
        print(f"{name} value={_fmt_complex(result.value)} "
              f"err={result.err_estimate:.3e} evals={result.evaluations}")
    else:
        raise KeyError(name)


EVAL_FUNCTIONS = [
    "wright_psi", "wright_psi_normalized", "pfq", "mittag_leffler",
    "appell_f1", "appell_f3", "humbert_phi2", "lauricella_fd", "gegenbauer",
    "beta", "gamma", "log_gamma", "pochhammer",
    "theorem1", "theorem2", "theorem3", "theorem4", "lauricella_closed",
    "generating", "integral_direct",
]


def _cmd_eval(args) -> int:
    if args.function not in EVAL_FUNCTIONS:
        print(f"unknown function {args.function!r}; choose one of: "
              + ", ".join(EVAL_FUNCTIONS), file=sys.stderr)
        return 1
    try:
        kv = _parse_kv(args.params)
        policy = SeriesPolicy.from_env()
        _eval_dispatch(args.function, kv, policy)
        return 0
    except (DomainError, PoleError) as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return 2
    except (DivergenceError, MaxTermsError, NonConvergenceError, EvaluationError) as exc:
        print(f"convergence error: {exc}", file=sys.stderr)
        return 3
    except (KeyError, TypeError, ValueError) as exc:
        print(f"argument error: {exc}", file=sys.stderr)
        return 1


def _cmd_verify(args) -> int:
    try:
        cfg = GridConfig.from_file(args.config) if args.config else GridConfig()
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 1
    if args.seed is not None:
        cfg.seed = args.seed
    if args.tolerance is not None:
        cfg.tolerance = args.tolerance
    if args.case:
        cfg.cases = list(args.case)
    if args.jobs is not None:
        cfg.jobs = args.jobs
    if args.format is not None:
        cfg.fmt = args.format
    report = run_verification(cfg)
    write_report(report, args.out, cfg.fmt)
    line, code = summarize(report)
    print(f"{line} -> {args.out}")
    return code


def _cmd_report(args) -> int:
    try:
        report = load_report(args.report)
    except (OSError, ValueError) as exc:
        print(f"report error: {exc}", file=sys.stderr)
        return 1
    text = report_json_text(report) if args.format == "json" else report_to_csv(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wrightlab",
        description="Evaluate special-function series and verify integral identities "
                    "against a quadrature oracle.")
    parser.add_argument("--version", action="version", version=f"wrightlab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one registered function")
    p_eval.add_argument("function")
    p_eval.add_argument("params", nargs="*", metavar="key=value")
    p_eval.set_defaults(func=_cmd_eval)

    p_verify = sub.add_parser("verify", help="dual evaluate identity cases over a grid")
    p_verify.add_argument("--config", default=None, help="JSON grid config path")
    p_verify.add_argument("--out", default="wrightlab-report.json")
    p_verify.add_argument("--format", choices=["json", "csv"], default=None)
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--tolerance", type=float, default=None)
    p_verify.add_argument("--case", action="append", metavar="PATTERN",
                          help="case name pattern; repeatable")
    p_verify.add_argument("--jobs", type=int, default=None)
    p_verify.set_defaults(func=_cmd_verify)

    p_report = sub.add_parser("report", help="convert a report between json and csv")
    p_report.add_argument("report")
    p_report.add_argument("--format", choices=["json", "csv"], required=True)
    p_report.add_argument("--out", default=None)
    p_report.set_defaults(func=_cmd_report)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
