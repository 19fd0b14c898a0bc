"""Command-line surface.

    modcert certify <file> [--json out] [--assume FLAG]... [--corpus DIR]
    modcert local --prime {5,7} <file> [--json out]
    modcert sstest <file> [--json out]
    modcert group-audit [--json out]
    modcert serve [--host H] [--port P]

All subcommands accept --url to run against an HTTP service instead of
the in-process engine.  Exit codes: 0 for Modular or a successful
report, 2 for Inconclusive, 1 for any error.  The environment variable
MODCERT_LBOUND overrides the default Frobenius search bound.
"""

from __future__ import annotations

import argparse
import json
import pathlib
import sys

from .certify import certify, local_modularity_analysis
from .curvefile import ASSUME_FLAGS, CurveFileError, load_curve_file
from .grouptheory import audit_borel, exceptional_threshold
from .sstest import semistabilization_report


class _Parser(argparse.ArgumentParser):
    # usage errors exit 1 (argparse's default of 2 collides with Inconclusive)
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="modcert", description=__doc__.splitlines()[0])
    parser.add_argument("--url", help="base URL of a running modcert service")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_cert = sub.add_parser("certify", help="decide modularity, emit a certificate")
    p_cert.add_argument("file", nargs="?", help="curve file (JSON)")
    p_cert.add_argument("--corpus", help="certify every .json file in a directory")
    p_cert.add_argument("--json", dest="json_out", help="write the certificate here")
    p_cert.add_argument(
        "--assume",
        action="append",
        default=[],
        choices=sorted(ASSUME_FLAGS),
        help="add an assumption flag (repeatable)",
    )
    p_cert.add_argument("--l-bound", type=int, default=None, help="Frobenius search bound")
    p_cert.set_defaults(func=cmd_certify)

    p_local = sub.add_parser("local", help="local analysis above one prime")
    p_local.add_argument("--prime", type=int, choices=(5, 7), required=True)
    p_local.add_argument("file", help="curve file (JSON)")
    p_local.add_argument("--json", dest="json_out")
    p_local.add_argument("--l-bound", type=int, default=None)
    p_local.set_defaults(func=cmd_local)

    p_ss = sub.add_parser("sstest", help="reduction above 3 and the twist search")
    p_ss.add_argument("file", help="curve file (JSON)")
    p_ss.add_argument("--json", dest="json_out")
    p_ss.set_defaults(func=cmd_sstest)

    p_audit = sub.add_parser("group-audit", help="Borel/PGL2 audit constants")
    p_audit.add_argument("--json", dest="json_out")
    p_audit.set_defaults(func=cmd_group_audit)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8400)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def _write_json(args, text: str):
    if getattr(args, "json_out", None):
        pathlib.Path(args.json_out).write_text(text, encoding="utf-8")


def _verdict_exit(verdict: str) -> int:
    return 2 if verdict in ("Inconclusive", "NoTwistFound") else 0


# ---------------------------------------------------------------------------
# Remote mode


def _remote(args, method: str, route: str, body=None):
    import httpx

    url = args.url.rstrip("/") + route
    with httpx.Client(timeout=120.0) as client:
        resp = client.get(url) if method == "GET" else client.post(url, json=body)
    if resp.status_code != 200:
        raise RuntimeError(f"service error {resp.status_code}: {resp.text}")
    payload = resp.json()
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    print(text, end="")
    _write_json(args, text)
    return _verdict_exit(payload.get("verdict", ""))


def _file_body(args, extra=None) -> dict:
    body = json.loads(pathlib.Path(args.file).read_text(encoding="utf-8"))
    flags = list(body.get("assume", [])) + list(getattr(args, "assume", []) or [])
    if flags:
        body["assume"] = flags
    if getattr(args, "l_bound", None):
        body["l_bound"] = args.l_bound
    if extra:
        body.update(extra)
    return body


# ---------------------------------------------------------------------------
# certify


def _render_certificate(cert) -> str:
    lines = [f"verdict: {cert.verdict}"]
    for i, step in enumerate(cert.steps, start=1):
        lines.append(f"  {i}. {step.claim}")
        lines.append(f"     cite: {step.citation}")
        for h in step.hypotheses:
            lines.append(f"     [{h.status}] {h.description}")
    if cert.assumptions:
        lines.append("assumptions:")
        lines.extend(f"  - {a}" for a in cert.assumptions)
    return "\n".join(lines) + "\n"


def cmd_certify(args) -> int:
    if args.corpus and args.file:
        raise CurveFileError("certify: give either a file or --corpus, not both")
    if args.corpus:
        return _run_corpus(args)
    if not args.file:
        raise CurveFileError("certify: a curve file is required")
    if args.url:
        return _remote(args, "POST", "/certify", _file_body(args))
    parsed = load_curve_file(args.file)
    flags = parsed.assume + tuple(args.assume)
    cert = certify(parsed.source, assume=flags, l_bound=args.l_bound)
    print(_render_certificate(cert), end="")
    _write_json(args, cert.to_json())
    return _verdict_exit(cert.verdict)


def _run_corpus(args) -> int:
    root = pathlib.Path(args.corpus)
    files = sorted(root.glob("*.json"))
    if not files:
        raise CurveFileError(f"corpus: no .json files under {root}")
    rows, worst = [], 0
    for path in files:
        try:
            parsed = load_curve_file(path)
            flags = parsed.assume + tuple(args.assume)
            cert = certify(parsed.source, assume=flags, l_bound=args.l_bound)
            detail = cert.steps[-1].claim if cert.steps else ""
            rows.append((path.name, cert.verdict, detail))
            worst = max(worst, _verdict_exit(cert.verdict))
        except Exception as exc:  # isolate per-file failures
            rows.append((path.name, "Error", str(exc)))
            worst = 1
    name_w = max(len(r[0]) for r in rows)
    verdict_w = max(len(r[1]) for r in rows)
    for name, verdict, detail in rows:
        print(f"{name:<{name_w}}  {verdict:<{verdict_w}}  {detail[:72]}")
    counts = {}
    for _, verdict, _ in rows:
        counts[verdict] = counts.get(verdict, 0) + 1
    summary = ", ".join(f"{v}: {counts[v]}" for v in sorted(counts))
    print(f"-- {len(rows)} files ({summary})")
    return worst


# ---------------------------------------------------------------------------
# local


_CASE_TEXT = {
    "exceptional-1": (
        "Exceptional Case 1: v(j) ≡ 1 (mod 3), potentially good "
        "supersingular reduction"
    ),
    "exceptional-2": (
        "Exceptional Case 2: v(j) ≡ 2 (mod 3), potentially good "
        "ordinary reduction"
    ),
}


def _render_local(report) -> str:
    lines = [f"local analysis above p={report.p}"]
    st = report.irreducibility
    if st is not None:
        suffix = " (assumed)" if st.assumed else f" [{st.method}]" if st.method else ""
        lines.append(f"mod-{report.p} representation: {st.kind}{suffix}")
    for entry in report.entries:
        inv = entry.invariants
        lines.append(
            f"{entry.label}: Kodaira {inv.kodaira.symbol}, v(disc)={inv.v_disc}, "
            f"class {inv.reduction.value}"
        )
        if entry.descriptor is not None:
            desc = entry.descriptor
            bound = "wild (contains the p-group)" if desc.contains_p_group else str(desc.bound)
            lines.append(
                f"  inertia: {desc.kind}, projective bound {bound} "
                f"(threshold {exceptional_threshold(report.p)})"
            )
        if entry.outcome in _CASE_TEXT:
            lines.append(f"  {_CASE_TEXT[entry.outcome]}  [v(j) = {inv.v_j}]")
        elif entry.outcome == "chain":
            lines.append("  modularity chain applies at this place")
        elif entry.outcome == "cm":
            lines.append("  j = 0: complex multiplication route")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def cmd_local(args) -> int:
    if args.url:
        return _remote(args, "POST", "/local", _file_body(args, {"prime": args.prime}))
    parsed = load_curve_file(args.file)
    report = local_modularity_analysis(
        parsed.source, args.prime, assume=parsed.assume, l_bound=args.l_bound
    )
    print(_render_local(report), end="")
    _write_json(args, report.to_json())
    return 0


# ---------------------------------------------------------------------------
# sstest


def _render_sstest(report) -> str:
    lines = ["reduction above 3:"]
    for entry in report.entries:
        lines.append(
            f"  {entry['label']}: Kodaira {entry['kodaira']} ({entry['reduction']})"
        )
    if report.verdict == "NoTwistFound":
        lines.append("no semistabilizing twist among the candidates")
    else:
        lines.append(f"semistabilizing twist: d = {json.dumps(report.twist['d'])}")
        for entry in report.twist["entries"]:
            lines.append(f"  {entry['label']}: Kodaira {entry['kodaira']} after twisting")
    lines.append(f"verdict: {report.verdict}")
    return "\n".join(lines) + "\n"


def cmd_sstest(args) -> int:
    if args.url:
        return _remote(args, "POST", "/sstest", _file_body(args))
    parsed = load_curve_file(args.file)
    report = semistabilization_report(parsed.source)
    print(_render_sstest(report), end="")
    _write_json(args, report.to_json())
    return _verdict_exit(report.verdict)


# ---------------------------------------------------------------------------
# group-audit / serve


def cmd_group_audit(args) -> int:
    if args.url:
        return _remote(args, "GET", "/group-audit")
    audit = audit_borel()
    text = (
        f"|B(F_5)| = {audit.borel_order_5}\n"
        f"|B(F_7)| = {audit.borel_order_7}\n"
        f"gcd(|B(F_5)|, |B(F_7)|) = {audit.gcd_value}\n"
        f"cyclic order-4 subgroups of B(F_7): {audit.order4_cyclic_count_in_B7}\n"
        f"|PGL_2(F_5)| = {audit.pgl_orders[5]}, |PGL_2(F_7)| = {audit.pgl_orders[7]}\n"
        f"exceptional-image thresholds: p=5 -> {audit.threshold_5}, p=7 -> {audit.threshold_7}\n"
    )
    print(text, end="")
    _write_json(args, json.dumps(audit.as_dict(), indent=2, sort_keys=True) + "\n")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return 0


# ---------------------------------------------------------------------------


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CurveFileError as exc:
        print(f"modcert: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"modcert: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"modcert: error: {exc}", file=sys.stderr)
        return 1


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
