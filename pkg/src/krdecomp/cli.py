"""krdecomp command line: info, decompose, verify, selftest."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .division import verify_covering
from .errors import CertificateError, DimensionError, DomainError, FormatError, ResourceError
from .formats import check_against_monoid, load_certificate, load_input, save_certificate
from .fuzz import run_fuzz
from .pipeline import SPLIT_STRATEGIES, krohn_rhodes
from .report import build_report, format_text
from .tmonoid import MonoidAction, group_of_units
from .wreath import DEFAULT_STATE_CAP

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
COMMANDS = ("info", "decompose", "verify", "selftest")


@dataclass
class RunConfig:
    command: str
    input_path: str | None = None
    output_format: str = "text"
    split_strategy: str = "first-nonunit"
    state_cap: int = DEFAULT_STATE_CAP
    seed: int = 0
    certificate_path: str | None = None
    monoid_path: str | None = None
    count: int = 200

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.state_cap < 1:
            raise ValueError("state_cap must be at least 1")


def _emit(data: dict, text: str, fmt: str) -> str:
    return json.dumps(data, indent=2) if fmt == "json" else text


def _info(cfg):
    m = load_input(cfg.input_path)
    if isinstance(m, MonoidAction):
        k = len(m)
        units = sum(1 for a in range(k) if any(m.table[a][b] == m.identity == m.table[b][a] for b in range(k)))
        idem = sum(1 for a in range(k) if m.table[a][a] == a)
        faithful = m.is_faithful()
    else:
        units = len(group_of_units(m))
        idem = len(m.idempotents())
        faithful = True
    data = {"states": m.n_states, "elements": len(m), "units": units,
            "idempotents": idem, "faithful": faithful, "generators": list(m.generator_names)}
    text = (f"|X| = {m.n_states}\n|M| = {len(m)}\nunits: {units}\nidempotents: {idem}\n"
            f"faithful: {'yes' if faithful else 'no'}\ngenerators: {', '.join(data['generators'])}")
    return EXIT_OK, _emit(data, text, cfg.output_format)


def _decompose(cfg):
    m = load_input(cfg.input_path)
    seq = krohn_rhodes(m, cfg.split_strategy, cap=cfg.state_cap)
    report = build_report(m, seq)
    if cfg.certificate_path:
        save_certificate(seq.total_certificate, cfg.certificate_path)
        report["certificate"] = cfg.certificate_path
    status = EXIT_OK if seq.verification.ok else EXIT_VERIFY
    return status, _emit(report, format_text(report), cfg.output_format)


def _verify(cfg):
    try:
        cert = load_certificate(cfg.input_path, cap=cfg.state_cap)
        rep = verify_covering(cert)
        witness = rep.witness
    except CertificateError as exc:
        rep, witness = None, getattr(exc, "witness", None) or str(exc)
    mismatch = None
    if cfg.monoid_path and rep is not None and rep.ok:
        m = load_input(cfg.monoid_path)
        mismatch = check_against_monoid(cert, m)
    ok = rep is not None and rep.ok and mismatch is None
    data = {"ok": ok, "witness": None}
    if not ok:
        w = witness if witness is not None else mismatch
        if hasattr(w, "state"):
            data["witness"] = {"state": w.state, "generator": w.generator, "expected": w.expected,
                               "actual": w.actual, "reason": w.reason}
        else:
            data["witness"] = str(w)
    else:
        data.update(states=rep.states, generators=rep.generators)
    if ok:
        text = f"certificate OK: {rep.generators} generator covers checked over {rep.states} states"
    else:
        text = f"certificate FAILED: {witness if witness is not None else mismatch}"
    return (EXIT_OK if ok else EXIT_VERIFY), _emit(data, text, cfg.output_format)


def _selftest(cfg):
    res = run_fuzz(cfg.count, cfg.seed, cfg.split_strategy)
    data = {"cases": res.cases, "certified": res.certified, "failures": [msg for _, msg in res.failures]}
    text = (f"fuzz: {res.cases} random monoids, {res.certified} certified end to end, "
            f"{len(res.failures)} failures")
    for tm, msg in res.failures[:5]:
        text += f"\n  {tm.generator_maps}: {msg}"
    return (EXIT_OK if res.ok else EXIT_VERIFY), _emit(data, text, cfg.output_format)


def run(cfg: RunConfig) -> tuple:
    """Execute one command; returns ``(exit_status, output_text)``."""
    handler = {"info": _info, "decompose": _decompose, "verify": _verify, "selftest": _selftest}[cfg.command]
    try:
        return handler(cfg)
    except ResourceError as exc:
        return EXIT_RESOURCE, f"resource limit: {exc}"
    except (FormatError, DomainError, DimensionError) as exc:
        return EXIT_INPUT, f"input error: {exc}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krdecomp",
                                     description="Krohn-Rhodes decomposition via local divisors")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--split-strategy", choices=SPLIT_STRATEGIES, default="first-nonunit")
    common.add_argument("--state-cap", type=int, default=DEFAULT_STATE_CAP,
                        help="largest flat product space to build (default: %(default)s)")
    common.add_argument("--seed", type=int, default=0)
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("info", parents=[common], help="sizes, units, idempotents, faithfulness")
    p.add_argument("input")
    p = sub.add_parser("decompose", parents=[common], help="factor into U2 and simple groups")
    p.add_argument("input")
    p.add_argument("--certificate", "-o", help="write the composed certificate here (JSON)")
    p = sub.add_parser("verify", parents=[common], help="re-check a certificate file")
    p.add_argument("input", help="certificate JSON")
    p.add_argument("--monoid", help="monoid JSON the certificate must cover")
    p = sub.add_parser("selftest", parents=[common], help="fuzz random small monoids")
    p.add_argument("--count", type=int, default=200)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.state_cap < 1:
        print("input error: --state-cap must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    cfg = RunConfig(args.command, getattr(args, "input", None), args.format, args.split_strategy,
                    args.state_cap, args.seed, getattr(args, "certificate", None),
                    getattr(args, "monoid", None), getattr(args, "count", 200))
    status, out = run(cfg)
    print(out, file=sys.stdout if status in (EXIT_OK, EXIT_VERIFY) else sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
