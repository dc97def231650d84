"""Command-line front door: a thin client of the HTTP service.

By default requests are dispatched in-process through the ASGI app (no
server needed); ``--url`` points the same client at a running service.
Exit codes: 0 for any completed computation (including mathematically
negative verdicts), 1 for domain errors, 2 for parse errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Optional

import httpx


def _call(endpoint: str, payload: dict, url: Optional[str]) -> tuple[int, dict]:
    if url is not None:
        resp = httpx.post(url.rstrip("/") + endpoint, json=payload, timeout=600.0)
        return resp.status_code, resp.json()

    async def run():
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://monocone.local") as client:
            resp = await client.post(endpoint, json=payload, timeout=600.0)
            return resp.status_code, resp.json()

    return asyncio.run(run())


def _emit(doc: dict, mode: str, text_lines) -> None:
    if mode == "json":
        sys.stdout.write(json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n")
    else:
        for line in text_lines(doc):
            sys.stdout.write(line + "\n")


def _finish(status: int, doc: dict, mode: str, text_lines) -> int:
    if status == 200:
        _emit(doc, mode, text_lines)
        return 0
    if status == 422:
        pos = doc.get("position")
        where = f" (at position {pos})" if pos is not None else ""
        sys.stderr.write(f"parse error: {doc.get('message', '')}{where}\n")
        return 2
    name = doc.get("error", "error")
    message = doc.get("message", "")
    witness = doc.get("witness")
    extra = f" witness={json.dumps(witness, sort_keys=True)}" if witness is not None else ""
    sys.stderr.write(f"{name}: {message}{extra}\n")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="monocone",
        description="Exact toolkit for affine semigroups, monomial ideals, and regularity criteria",
    )
    parser.add_argument("--output", choices=("text", "json"), default="text")
    parser.add_argument("--url", default=None, help="base URL of a running service (default: in-process)")
    parser.add_argument("--bound", type=int, default=None, help="override box/power bounds globally")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb in ("betti", "pd", "cd"):
        p = sub.add_parser(verb)
        p.add_argument("--vars", required=True)
        p.add_argument("--ideal", required=True)

    for verb in ("regseq", "paramseq"):
        p = sub.add_parser(verb)
        p.add_argument("--vars", required=True)
        p.add_argument("--seq", required=True)

    p = sub.add_parser("classify")
    p.add_argument("--cone", required=True)

    p = sub.add_parser("normalize")
    p.add_argument("--gens", required=True, help="';'-separated pairs, e.g. '(1,0);(1,2)'")

    p = sub.add_parser("reject-pair")
    p.add_argument("--tag", required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)

    p = sub.add_parser("lazard-resolve")
    p.add_argument("--betas", required=True)
    p.add_argument("--alpha", default=None)
    p.add_argument("--support", required=True, help="JSON: {\"threshold\": t, \"exceptions\": [...]}")

    p = sub.add_parser("direct-system")
    p.add_argument("--points", required=True)
    p.add_argument("--support", required=True)
    p.add_argument("--depth", type=int, required=True)

    p = sub.add_parser("semigroup-check")
    p.add_argument("--semigroup", required=True, help="JSON document")
    p.add_argument("--property", required=True)
    p.add_argument("--vector", default=None, help="comma-separated integers")
    p.add_argument("--sup", default=None, help="JSON document of the supersemigroup")

    return parser


def _json_arg(raw: str, what: str) -> dict:
    try:
        return json.loads(raw)
    except json.JSONDecodeError as e:
        sys.stderr.write(f"parse error: bad JSON for {what}: {e}\n")
        raise SystemExit(2)


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    mode = args.output
    url = args.url
    bound = args.bound

    if args.verb in ("betti", "pd", "cd"):
        payload = {"variables": args.vars, "ideal": args.ideal, "cap": bound}
        if args.verb == "betti":
            return _finish(*_call("/betti", payload, url), mode,
                           lambda d: [f"betti total: {','.join(str(x) for x in d['total'])}", f"pd: {d['pd']}"])
        if args.verb == "pd":
            return _finish(*_call("/pd", payload, url), mode, lambda d: [f"pd: {d['pd']}"])
        return _finish(*_call("/cd", payload, url), mode, lambda d: [f"cd: {d['cd']}"])

    if args.verb == "regseq":
        payload = {"variables": args.vars, "sequence": args.seq, "cap": bound}

        def lines(d):
            out = [
                f"oracle_regular: {d['oracle_regular']}",
                f"pd_criterion: {d['pd_criterion']}",
                f"star_condition: {d['star_condition']}",
                f"discrepancy: {d['discrepancy']}",
                f"weak_proregularity: {d['weak_proregularity']}",
            ]
            if d.get("witness"):
                out.append(
                    f"witness: step {d['witness']['index']}, exponents {d['witness']['monomial_exponents']}"
                )
            for row in d["subset_pds"]:
                out.append(f"subset {row['subset']}: pd {row['pd']}")
            return out

        return _finish(*_call("/regseq", payload, url), mode, lines)

    if args.verb == "paramseq":
        payload = {"variables": args.vars, "sequence": args.seq}
        return _finish(
            *_call("/paramseq", payload, url), mode,
            lambda d: [
                f"parameter_sequence: {d['parameter_sequence']}",
                f"prefix_heights: {','.join(str(h) for h in d['prefix_heights'])}",
            ],
        )

    if args.verb == "classify":
        payload = {"cone": args.cone, "box_radius": bound}
        return _finish(
            *_call("/classify", payload, url), mode,
            lambda d: [f"tag: {d['tag']}", f"map: {d['map']}", f"scale: {d['scale']}"],
        )

    if args.verb == "normalize":
        pairs = []
        try:
            for chunk in args.gens.split(";"):
                chunk = chunk.strip().strip("()")
                a, b = chunk.split(",")
                pairs.append([int(a), int(b)])
        except ValueError:
            sys.stderr.write("parse error: --gens expects ';'-separated pairs like '(1,0);(1,2)'\n")
            return 2
        payload = {"generators": pairs}
        return _finish(
            *_call("/normalize", payload, url), mode,
            lambda d: [f"t: {d['t']}", f"phi: {d['phi']}", f"checks: {d['checks']}"],
        )

    if args.verb == "reject-pair":
        payload = {"tag": args.tag, "f": args.f, "g": args.g, "power_bound": bound}
        return _finish(
            *_call("/reject-pair", payload, url), mode,
            lambda d: [f"certificate: {tuple(d['certificate'])}", f"powers: {d['powers']}"],
        )

    if args.verb == "lazard-resolve":
        payload = {
            "betas": args.betas,
            "alpha": args.alpha,
            "support": _json_arg(args.support, "--support"),
        }

        def lines(d):
            out = [f"family size: {len(d['members'])}"]
            for m in d["members"]:
                out.append(f"member: ({','.join(m['prefix'])}|{m['tail']})")
            for row in d["coordinates"]:
                out.append(f"coords: {row['coordinates']}")
            return out

        return _finish(*_call("/lazard-resolve", payload, url), mode, lines)

    if args.verb == "direct-system":
        payload = {
            "points": args.points,
            "support": _json_arg(args.support, "--support"),
            "depth": args.depth,
        }

        def lines(d):
            out = []
            for i, fam in enumerate(d["families"], start=1):
                out.append(f"stage {i}: {len(fam['members'])} members")
            for i, t in enumerate(d["transitions"], start=1):
                out.append(f"transition {i}->{i + 1}: {t}")
            return out

        return _finish(*_call("/direct-system", payload, url), mode, lines)

    if args.verb == "semigroup-check":
        try:
            vector = [int(x) for x in args.vector.split(",")] if args.vector else None
        except ValueError:
            sys.stderr.write("parse error: --vector expects comma-separated integers\n")
            return 2
        payload = {
            "semigroup": _json_arg(args.semigroup, "--semigroup"),
            "property": getattr(args, "property"),
            "vector": vector,
            "sup": _json_arg(args.sup, "--sup") if args.sup else None,
        }
        return _finish(
            *_call("/semigroup-check", payload, url), mode,
            lambda d: [f"{d['property']}: {json.dumps(d['result'], sort_keys=True)}"],
        )

    raise AssertionError("unreachable")


if __name__ == "__main__":
    sys.exit(main())
