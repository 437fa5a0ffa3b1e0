"""Command-line frontend.

Commands call the HTTP service: by default an in-process instance (no socket
involved), or a remote one when --server is given, so the CLI exercises the
same wire formats either way.  Words are comma-free strings when colors are
single characters ("rbrb"), comma-separated otherwise ("red,blue").  Output
is canonical JSON (sorted keys) or, with --format text, a short human
rendering.  Exit codes: 0 for computed results (including exists=false),
2 for usage or parse errors, 3 for internal invariant violations.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from typing import Optional

import httpx

from .service import create_app


def parse_word(text: str) -> list[str]:
    if text == "":
        return []
    if "," in text:
        return [part for part in (p.strip() for p in text.split(",")) if part]
    return list(text)


def ring_doc(shorthand: str) -> dict:
    if shorthand in ("q", "z", "qdelta"):
        return {"type": shorthand}
    if shorthand.startswith("fp:"):
        try:
            return {"type": "fp", "p": int(shorthand[3:])}
        except ValueError:
            raise CLIError(f"bad prime in ring shorthand {shorthand!r}")
    raise CLIError(f"unknown ring {shorthand!r} (use q, z, qdelta, or fp:<p>)")


class CLIError(Exception):
    pass


def build_realization(args, letters) -> dict:
    if getattr(args, "realization", None):
        if args.ring or args.cartan or args.alphabet:
            raise CLIError("--realization cannot be combined with --ring/--cartan/--alphabet")
        try:
            with open(args.realization) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CLIError(f"cannot read realization file: {exc}")
        if not isinstance(doc, dict) or {"alphabet", "cartan", "ring"} - set(doc):
            raise CLIError("realization file needs alphabet, cartan, and ring fields")
        return doc
    ring = ring_doc(args.ring or "qdelta")
    cartan_kind = args.cartan or ("sym-delta" if ring["type"] == "qdelta" else "-2")
    alphabet = parse_word(args.alphabet) if args.alphabet else sorted(set(letters))
    missing = [c for c in letters if c not in alphabet]
    if missing:
        raise CLIError(f"letters {missing} not in alphabet {alphabet}")
    if cartan_kind == "sym-delta":
        if ring["type"] != "qdelta":
            raise CLIError("--cartan sym-delta needs --ring qdelta")
        entry = "-delta"
    else:
        try:
            entry = str(int(cartan_kind))
        except ValueError:
            raise CLIError(f"unknown cartan {cartan_kind!r} (use -2, an integer, or sym-delta)")
    cartan = {
        f"{s},{t}": entry for s in alphabet for t in alphabet if s != t
    }
    return {"alphabet": alphabet, "cartan": cartan, "ring": ring}


def _request(args, method: str, path: str, payload: Optional[dict]) -> httpx.Response:
    if args.server:
        with httpx.Client(base_url=args.server, timeout=120.0) as client:
            return client.request(method, path, json=payload)

    async def go():
        transport = httpx.ASGITransport(app=create_app())
        async with httpx.AsyncClient(transport=transport, base_url="http://colortl") as client:
            return await client.request(method, path, json=payload)

    return asyncio.run(go())


# ---------------------------------------------------------------------------
# Text renderings.


def _text_jw(doc) -> str:
    word = "".join(doc["source"])
    if not doc["exists"]:
        return f"JW({word}) does not exist; obstruction: {json.dumps(doc['obstruction'], sort_keys=True)}"
    lines = [f"JW({word}):"]
    for term in doc["terms"]:
        pairs = " ".join("-".join(p) for p in term["matching"]["pairs"])
        lines.append(f"  ({term['coeff']}) * [{pairs or 'empty'}]")
    return "\n".join(lines)


def _text_hecke(doc) -> str:
    from .hecke import he_from_json, he_str

    return he_str(he_from_json(doc))


def _text_verdict(doc) -> str:
    word = "".join(doc["word"])
    if doc["holds"]:
        return f"{word}: holds"
    parts = [f"{word}: fails"]
    for w in doc["witnesses"]:
        parts.append(
            f"  run {w['run']}: [{w['k']} over {w['m']}]_({','.join(w['pair'])}) = {w['value']}"
        )
    return "\n".join(parts)


def _text_decompose(doc) -> str:
    if not doc["exists"]:
        return f"no decomposition; obstruction: {json.dumps(doc['obstruction'], sort_keys=True)}"
    bits = [
        f"{label.replace(',', '') or '1'}:{count}"
        for label, count in sorted(doc["multiplicities"].items())
    ]
    return " ".join(bits)


def _text_check(doc) -> str:
    word = "".join(doc["word"])
    tl = doc["tl"]
    tl_part = (
        "skipped (" + doc.get("tag", "degenerate") + ")"
        if tl is None
        else "{" + ", ".join("".join(w) for w in tl["labels"]) + "}"
    )
    hecke_part = "{" + ", ".join("".join(w) for w in doc["hecke"]["labels"]) + "}"
    status = "match" if doc["match"] else "MISMATCH"
    return f"{word} * {doc['letter']} [{doc['case']}]: tl={tl_part} hecke={hecke_part} -> {status}"


_TEXT = {
    "jw": _text_jw,
    "verdict": _text_verdict,
    "decompose": _text_decompose,
    "check": _text_check,
}


def _emit(args, command: str, doc) -> None:
    if args.format == "json":
        print(json.dumps(doc, sort_keys=True))
        return
    if command == "count":
        print(doc["count"])
    elif command == "failing-primes":
        print(" ".join(str(p) for p in doc["primes"]) if doc["primes"] else "(none)")
    elif command in ("hecke-kl", "hecke-mult"):
        print(_text_hecke(doc))
    elif command in _TEXT:
        print(_TEXT[command](doc))
    else:
        print(json.dumps(doc, sort_keys=True))


# ---------------------------------------------------------------------------
# Argument parsing.


def _add_realization_flags(p: argparse.ArgumentParser):
    p.add_argument("--ring", help="q | z | qdelta | fp:<p> (default qdelta)")
    p.add_argument("--cartan", help="-2 | <integer> | sym-delta")
    p.add_argument("--alphabet", help="colors, like a word (default: letters of the word)")
    p.add_argument("--realization", help="path to a realization JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="colortl",
        description="Colored crossingless matchings, top projectors, and the Hecke algebra.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--server", help="base URL of a running service (default: in-process)"
    )
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument(
        "--verbose", action="store_true", help="log the request to stderr"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_parser(name: str, **kwargs) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kwargs)

    p_jw = add_parser("jw", help="compute a top projector")
    p_jw.add_argument("--word", required=True)
    p_jw.add_argument(
        "--method", choices=("recursive", "descriptive", "oracle"), default="recursive"
    )
    _add_realization_flags(p_jw)

    p_count = add_parser("count", help="count colorable matchings between two words")
    p_count.add_argument("--bottom", required=True)
    p_count.add_argument("--top", required=True)

    p_hecke = sub.add_parser("hecke", help="Hecke algebra computations")
    hsub = p_hecke.add_subparsers(dest="hecke_command", required=True)
    p_kl = hsub.add_parser("kl", parents=[common], help="KL basis element in the standard basis")
    p_kl.add_argument("--word", required=True)
    p_mult = hsub.add_parser("mult", parents=[common], help="KL expansion of b_x * b_s")
    p_mult.add_argument("--left", required=True)
    p_mult.add_argument("--by", required=True)

    p_verdict = add_parser("verdict", help="does [B_w] = b_w over the realization?")
    p_verdict.add_argument("--word", required=True)
    _add_realization_flags(p_verdict)

    p_fp = add_parser("failing-primes", help="primes where the verdict fails (entries -2)")
    p_fp.add_argument("--word", required=True)
    p_fp.add_argument("--max-prime", type=int, default=13)

    p_dec = add_parser("decompose", help="summand multiplicities of a word's object")
    p_dec.add_argument("--word", required=True)
    _add_realization_flags(p_dec)

    p_check = add_parser("check", help="cross-check one product-rule step")
    p_check.add_argument("--word", required=True)
    p_check.add_argument("--letter", required=True)
    _add_realization_flags(p_check)

    p_serve = add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)

    p_acc = sub.add_parser(
        "acceptance", help="run the acceptance suite (needs a source checkout)"
    )
    p_acc.add_argument("--path", help="explicit path to the acceptance test file")

    return parser


def _payload(args) -> tuple[str, dict]:
    if args.command == "jw":
        word = parse_word(args.word)
        return "/jw", {
            "word": word,
            "realization": build_realization(args, word),
            "method": args.method,
        }
    if args.command == "count":
        return "/count", {"bottom": parse_word(args.bottom), "top": parse_word(args.top)}
    if args.command == "hecke":
        if args.hecke_command == "kl":
            return "/hecke/kl", {"word": parse_word(args.word)}
        return "/hecke/mult", {"left": parse_word(args.left), "by": args.by}
    if args.command == "verdict":
        word = parse_word(args.word)
        return "/verdict", {"word": word, "realization": build_realization(args, word)}
    if args.command == "failing-primes":
        return "/failing-primes", {
            "word": parse_word(args.word),
            "max_prime": args.max_prime,
        }
    if args.command == "decompose":
        word = parse_word(args.word)
        return "/decompose", {"word": word, "realization": build_realization(args, word)}
    if args.command == "check":
        word = parse_word(args.word)
        letters = word + [args.letter]
        return "/check", {
            "word": word,
            "letter": args.letter,
            "realization": build_realization(args, letters),
        }
    raise CLIError(f"unknown command {args.command!r}")


def _run_acceptance(args) -> int:
    import pathlib
    import subprocess

    target = args.path
    if target is None:
        here = pathlib.Path.cwd()
        for base in (here, *here.parents):
            candidate = base / "tests" / "test_acceptance.py"
            if candidate.exists():
                target = str(candidate)
                break
    if target is None:
        print(
            "error: cannot find tests/test_acceptance.py; "
            "run from a source checkout or pass --path",
            file=sys.stderr,
        )
        return 2
    return subprocess.call([sys.executable, "-m", "pytest", "-v", target])


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        uvicorn.run("colortl.service:app", host=args.host, port=args.port)
        return 0

    if args.command == "acceptance":
        return _run_acceptance(args)

    command = args.command
    if command == "hecke":
        command = f"hecke-{args.hecke_command}"

    try:
        path, payload = _payload(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.verbose:
        print(f"POST {path} {json.dumps(payload, sort_keys=True)}", file=sys.stderr)

    try:
        response = _request(args, "POST", path, payload)
    except httpx.HTTPError as exc:
        print(f"error: cannot reach the service: {exc}", file=sys.stderr)
        return 3

    if response.status_code >= 500:
        print(f"error: {response.text}", file=sys.stderr)
        return 3
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail")
        except ValueError:
            detail = response.text
        print(f"error: {detail}", file=sys.stderr)
        return 2
    _emit(args, command, response.json())
    return 0


if __name__ == "__main__":
    sys.exit(main())
