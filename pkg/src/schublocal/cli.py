"""Command-line front end: single queries, batch sweeps, reports.

Subcommands: roots, bruhat, comin, tangent, restrict, mult, hilbert, scan,
report.  Machine output is JSON (JSON-lines for scans); `--format text`
renders queries the way the worked examples are usually presented, with
r-sequences and boxed-position subexpression lists.

Exit codes: 0 success, 2 parse error, 3 precondition violation (for
example x not >= w, or a point that is not cominuscule), 4 internal
consistency failure.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Sequence

from . import __version__
from .evalmap import HilbertSeries, InternalConsistencyError, hilbert_series, multiplicity
from .localize import (
    NotReducedError,
    billey_restriction,
    enumerate_subexpressions,
    gw_restriction,
    root_sequence,
)
from .rootsys import CartanMatrixError, Root
from .schub import (
    BruhatPreconditionError,
    NotCominusculeError,
    Variant,
    comin_certificate,
    curve_weights,
    max_parabolic,
    zariski_weights_typeA,
)
from .weyl import MixedGroupError, WeylElement, WeylGroup, bruhat_leq, group

SCAN_RANK_CAP = 6
CACHE_FORMAT = 1

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_INTERNAL = 4


class ParseFailure(ValueError):
    pass


@dataclass(frozen=True)
class Query:
    """A parsed single-pair query; serializes into the report's query block."""

    command: str
    type_label: str
    variant: Variant
    w: dict[str, list[int]] | None
    x: dict[str, list[int]] | None
    word: list[int] | None = None
    terms: int = 12
    ring: str | None = None

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "command": self.command,
            "type": self.type_label,
            "variant": self.variant.value,
        }
        if self.w is not None:
            out["w"] = self.w
        if self.x is not None:
            out["x"] = self.x
        if self.word is not None:
            out["word"] = self.word
        out["terms"] = self.terms
        if self.ring is not None:
            out["ring"] = self.ring
        return out

    @classmethod
    def from_json(cls, blob: dict[str, Any]) -> "Query":
        return cls(
            command=blob["command"],
            type_label=blob["type"],
            variant=Variant(blob["variant"]),
            w=blob.get("w"),
            x=blob.get("x"),
            word=blob.get("word"),
            terms=blob.get("terms", 12),
            ring=blob.get("ring"),
        )


def _parse_tokens(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ParseFailure(f"cannot parse integers from {text!r}") from exc


def parse_element_spec(g: WeylGroup, text: str) -> dict[str, list[int]]:
    """Parse "5 6 3 4 1 2", "word:1 2 1" or "oneline:2 1" into a spec dict.

    Without a prefix, a permutation of 1..rank+1 is read as one-line form
    (type A); anything whose letters lie in 1..rank is read as a word.
    The two readings never overlap: a one-line form must contain rank+1.
    """
    text = text.strip()
    forced = None
    if ":" in text:
        prefix, _, rest = text.partition(":")
        prefix = prefix.strip().lower()
        if prefix not in ("word", "oneline"):
            raise ParseFailure(f"unknown element prefix {prefix!r}")
        forced, text = prefix, rest
    tokens = _parse_tokens(text)
    if not tokens:
        raise ParseFailure("empty element")
    n = g.rank + 1
    is_perm = sorted(tokens) == list(range(1, n + 1))
    if forced == "oneline" or (forced is None and g.is_type_a and is_perm):
        if not g.is_type_a:
            raise ParseFailure("one-line notation needs a type A group")
        if not is_perm:
            raise ParseFailure(f"{tokens} is not a permutation of 1..{n}")
        return {"one_line": tokens}
    if all(1 <= t <= g.rank for t in tokens):
        return {"word": tokens}
    raise ParseFailure(
        f"{tokens} is neither a word over 1..{g.rank} nor a permutation of 1..{n}"
    )


def element_from_spec(g: WeylGroup, spec: dict[str, list[int]]) -> WeylElement:
    if "one_line" in spec:
        return g.from_one_line(spec["one_line"])
    return g.from_word(spec["word"])


def describe_element(w: WeylElement) -> dict[str, Any]:
    out: dict[str, Any] = {"word": list(w.word()), "length": w.length()}
    if w.group.is_type_a:
        out["one_line"] = list(w.one_line())
    return out


def _root_json(g: WeylGroup, root: Root) -> dict[str, Any]:
    out: dict[str, Any] = {"coords": list(root)}
    from .rootsys import typeA_epsilon

    if g.is_type_a:
        eps = typeA_epsilon(root)
        if eps:
            out["epsilon"] = f"e{eps[0]}-e{eps[1]}"
    return out


def _covector_json(cov) -> list[str]:
    return [str(c) for c in cov]


def _hilbert_json(h: HilbertSeries) -> dict[str, Any]:
    out: dict[str, Any] = {
        "numerator": list(h.numerator),
        "denominator_power": h.dim,
        "variable": h.var,
        "canonical": h.canonical_str(),
        "taylor_prefix": list(h.taylor_prefix),
        "hilbert_polynomial": [str(c) for c in h.hilbert_poly],
        "partial_fractions": [{"order": i, "coefficient": c} for i, c in h.partial_fractions],
        "multiplicity": h.multiplicity,
    }
    if h.var == "u":
        out["u_scale"] = h.scale
    if h.warnings:
        out["warnings"] = list(h.warnings)
    return out


# ---------------------------------------------------------------------------
# subcommand implementations; each returns the result block of the report


def cmd_roots(g: WeylGroup, query: Query) -> dict[str, Any]:
    roots = g.positive_roots
    return {
        "rank": g.rank,
        "count": len(roots),
        "positive_roots": [_root_json(g, r) for r in roots],
    }


def cmd_bruhat(g: WeylGroup, query: Query, w: WeylElement, x: WeylElement) -> dict[str, Any]:
    return {
        "w": describe_element(w),
        "x": describe_element(x),
        "x_leq_w": bruhat_leq(x, w),
        "w_leq_x": bruhat_leq(w, x),
    }


def cmd_comin(g: WeylGroup, query: Query, w: WeylElement, x: WeylElement) -> dict[str, Any]:
    cert = comin_certificate(w, x, query.variant)
    out: dict[str, Any] = {
        "feasible": cert.feasible,
        "exactness": cert.exactness,
        "slice_weights": [_root_json(g, r) for r in cert.slice_weights],
    }
    if cert.covector is not None:
        out["certificate"] = _covector_json(cert.covector)
    if cert.witness is not None:
        out["witness"] = [_root_json(g, r) for r in cert.witness]
    return out


def cmd_tangent(g: WeylGroup, query: Query, w: WeylElement, x: WeylElement) -> dict[str, Any]:
    S = curve_weights(w, x, query.variant)
    if query.variant == Variant.OPPOSITE:
        dim_variety = g.n_positive - w.length()
    else:
        dim_variety = w.length()
    out: dict[str, Any] = {
        "curve_weights": [_root_json(g, r) for r in S],
        "curve_weight_count": len(S),
        "dim_variety": dim_variety,
    }
    if g.is_type_a:
        R = zariski_weights_typeA(w, x, query.variant)
        out["zariski_weights"] = [_root_json(g, r) for r in R]
        out["dim_tangent"] = len(R)
        out["smooth"] = len(R) == dim_variety
        if out["smooth"]:
            out["multiplicity"] = 1
    else:
        out["note"] = "Zariski tangent weights are computed in type A only"
    return out


def cmd_restrict(g: WeylGroup, query: Query, w: WeylElement, x: WeylElement) -> dict[str, Any]:
    word = tuple(query.word) if query.word else x.word()
    rs = root_sequence(g, word)
    out: dict[str, Any] = {
        "word": list(word),
        "root_sequence": [_root_json(g, r) for r in rs.roots],
    }
    ring = query.ring or "both"
    if ring in ("chow", "both"):
        subs = list(enumerate_subexpressions(g, word, w, "reduced"))
        cls = billey_restriction(w, x, word if query.word else None, query.variant)
        out["chow"] = {
            "subexpressions": [list(s) for s in subs],
            "count": len(subs),
            "terms": _chow_terms(cls),
            "degree": w.length(),
        }
    if ring in ("k", "both"):
        subs = list(enumerate_subexpressions(g, word, w, "hecke"))
        kcls = gw_restriction(w, x, word if query.word else None, query.variant)
        out["k"] = {
            "subexpressions": [list(s) for s in subs],
            "count": len(subs),
            "terms": _k_terms(kcls),
        }
    return out


def _chow_terms(cls) -> list[dict[str, Any]]:
    items = sorted(cls.terms.items())
    return [{"exponents": list(e), "coefficient": c} for e, c in items]


def _k_terms(cls) -> list[dict[str, Any]]:
    items = sorted(cls.terms.items())
    return [{"weight": list(lam), "coefficient": c} for lam, c in items]


def cmd_mult(g: WeylGroup, query: Query, w: WeylElement, x: WeylElement) -> dict[str, Any]:
    cert = comin_certificate(w, x, query.variant)
    if not cert.feasible:
        raise NotCominusculeError(cert)
    value = multiplicity(
        w, x, query.variant, word=tuple(query.word) if query.word else None
    )
    out = {
        "multiplicity": value,
        "exactness": cert.exactness,
        "certificate": _covector_json(cert.covector),
    }
    return out


def cmd_hilbert(g: WeylGroup, query: Query, w: WeylElement, x: WeylElement) -> dict[str, Any]:
    h = hilbert_series(
        w, x, query.variant, terms=query.terms,
        word=tuple(query.word) if query.word else None,
    )
    m = multiplicity(w, x, query.variant)
    out = _hilbert_json(h)
    out["multiplicity_cross_check"] = {
        "chow_path": m,
        "k_path": h.multiplicity,
        "agree": m == h.multiplicity,
    }
    return out


# ---------------------------------------------------------------------------
# scan: sweep all valid (w, x) pairs of a group


def scan_record(
    g: WeylGroup,
    w: WeylElement,
    x: WeylElement,
    variant: Variant,
    with_mult: bool,
) -> dict[str, Any]:
    cert = comin_certificate(w, x, variant)
    rec: dict[str, Any] = {
        "w": list(w.one_line()) if g.is_type_a else list(w.word()),
        "x": list(x.one_line()) if g.is_type_a else list(x.word()),
        "lw": w.length(),
        "lx": x.length(),
        "feasible": cert.feasible,
        "exact": cert.exactness,
    }
    if g.is_type_a:
        R = zariski_weights_typeA(w, x, variant)
        dim_variety = g.n_positive - w.length() if variant == Variant.OPPOSITE else w.length()
        rec["smooth"] = len(R) == dim_variety
    if with_mult and cert.feasible:
        rec["mult"] = multiplicity(w, x, variant)
    return rec


_WORKER: dict[str, Any] = {}


def _scan_worker_init(label: str, variant_value: str, with_mult: bool) -> None:
    _WORKER["group"] = group(label)
    _WORKER["variant"] = Variant(variant_value)
    _WORKER["with_mult"] = with_mult
    _WORKER["elements"] = list(_WORKER["group"].elements())


def _scan_worker(batch: list[tuple[int, int]]) -> list[str]:
    g = _WORKER["group"]
    els = _WORKER["elements"]
    out = []
    for wi, xi in batch:
        rec = scan_record(g, els[wi], els[xi], _WORKER["variant"], _WORKER["with_mult"])
        out.append(json.dumps(rec))
    return out


def _scan_fingerprint(args: argparse.Namespace) -> str:
    return json.dumps(
        {
            "tool": __version__,
            "type": args.type.upper(),
            "variant": args.variant,
            "with_mult": bool(args.with_mult),
            "parabolic": args.parabolic or "",
        }
    )


def run_scan(args: argparse.Namespace) -> int:
    g = group(args.type)
    if g.rank > (args.cap or SCAN_RANK_CAP):
        print(
            f"error: rank {g.rank} exceeds the scan cap {args.cap or SCAN_RANK_CAP}"
            " (raise with --cap)",
            file=sys.stderr,
        )
        return EXIT_PRECONDITION
    variant = Variant(args.variant)
    _load_cache(g, args.cache)

    els = list(g.elements())
    restrict_j = None
    if args.parabolic:
        restrict_j = frozenset(_parse_tokens(args.parabolic))
    index_pairs = []
    for wi, w in enumerate(els):
        if restrict_j is not None and max_parabolic(w, variant) != restrict_j:
            continue
        for xi, x in enumerate(els):
            ok = bruhat_leq(w, x) if variant == Variant.OPPOSITE else bruhat_leq(x, w)
            if ok:
                index_pairs.append((wi, xi))

    out_path = Path(args.out) if args.out else None
    cursor_path = Path(str(out_path) + ".cursor") if out_path else None
    fingerprint = _scan_fingerprint(args)
    start = 0
    if out_path and cursor_path and cursor_path.exists() and out_path.exists():
        try:
            cur = json.loads(cursor_path.read_text())
            if cur.get("fingerprint") == fingerprint:
                start = int(cur.get("done", 0))
        except (ValueError, OSError):
            start = 0
    todo = index_pairs[start:]
    if args.limit is not None:
        todo = todo[: args.limit]

    sink = open(out_path, "a" if start else "w") if out_path else sys.stdout
    done = start
    try:
        if args.jobs > 1:
            chunk = 64
            batches = [todo[i : i + chunk] for i in range(0, len(todo), chunk)]
            with ProcessPoolExecutor(
                max_workers=args.jobs,
                initializer=_scan_worker_init,
                initargs=(g.datum.label, variant.value, bool(args.with_mult)),
            ) as pool:
                for lines in pool.map(_scan_worker, batches):
                    for line in lines:
                        print(line, file=sink)
                    done += len(lines)
                    _write_cursor(cursor_path, fingerprint, done)
        else:
            for wi, xi in todo:
                rec = scan_record(g, els[wi], els[xi], variant, bool(args.with_mult))
                print(json.dumps(rec), file=sink)
                done += 1
                if done % 50 == 0:
                    _write_cursor(cursor_path, fingerprint, done)
        _write_cursor(cursor_path, fingerprint, done)
    finally:
        if sink is not sys.stdout:
            sink.close()
    _save_cache(g, args.cache)
    return EXIT_OK


def _write_cursor(cursor_path: Path | None, fingerprint: str, done: int) -> None:
    if cursor_path is None:
        return
    cursor_path.write_text(json.dumps({"fingerprint": fingerprint, "done": done}))


def _load_cache(g: WeylGroup, path: str | None) -> None:
    if not path or not Path(path).exists():
        return
    try:
        blob = json.loads(Path(path).read_text())
    except (ValueError, OSError):
        return
    if blob.get("format") != CACHE_FORMAT or blob.get("version") != __version__:
        return
    if blob.get("type") != g.datum.label:
        return
    for key, words in blob.get("reduced_words", {}).items():
        el = g.from_word(_parse_tokens(key)) if key else g.identity
        g._rw_cache[el.images] = tuple(tuple(w) for w in words)


def _save_cache(g: WeylGroup, path: str | None) -> None:
    if not path:
        return
    entries = {}
    for images, words in g._rw_cache.items():
        el = WeylElement(g, images)
        key = " ".join(map(str, el.word()))
        entries[key] = [list(w) for w in words]
    blob = {
        "format": CACHE_FORMAT,
        "version": __version__,
        "type": g.datum.label,
        "reduced_words": entries,
    }
    Path(path).write_text(json.dumps(blob))


# ---------------------------------------------------------------------------
# text rendering


def render_text(report: dict[str, Any]) -> str:
    command = report["command"]
    result = report["result"]
    lines = [f"# {command} ({report['query']['type']}, {report['query']['variant']})"]
    if command == "roots":
        lines.append(f"{result['count']} positive roots:")
        for r in result["positive_roots"]:
            lines.append("  " + _root_text(r))
    elif command == "bruhat":
        lines.append(f"x <= w : {result['x_leq_w']}")
        lines.append(f"w <= x : {result['w_leq_x']}")
    elif command == "comin":
        lines.append(f"feasible : {result['feasible']}  ({result['exactness']})")
        if "certificate" in result:
            lines.append("certificate pairings v: (" + ", ".join(result["certificate"]) + ")")
        lines.append("slice weights:")
        for r in result["slice_weights"]:
            lines.append("  " + _root_text(r))
        if "witness" in result:
            lines.append("obstruction triple (a, b, a+b):")
            for r in result["witness"]:
                lines.append("  " + _root_text(r))
    elif command == "tangent":
        lines.append(f"curve weights ({result['curve_weight_count']}):")
        for r in result["curve_weights"]:
            lines.append("  " + _root_text(r))
        if "zariski_weights" in result:
            lines.append(f"Zariski tangent weights ({result['dim_tangent']}):")
            for r in result["zariski_weights"]:
                lines.append("  " + _root_text(r))
            verdict = "smooth" if result["smooth"] else "singular"
            lines.append(
                f"dim tangent = {result['dim_tangent']} vs dim variety ="
                f" {result['dim_variety']}: {verdict}"
            )
    elif command == "restrict":
        lines.append("r-sequence:")
        for j, r in enumerate(result["root_sequence"], 1):
            lines.append(f"  r({j}) = " + _root_text(r))
        for ring in ("chow", "k"):
            if ring in result:
                block = result[ring]
                lines.append(f"{ring}: {block['count']} subexpressions")
                for s in block["subexpressions"]:
                    lines.append("  positions " + ",".join(map(str, s)))
    elif command == "mult":
        lines.append(f"multiplicity = {result['multiplicity']}  ({result['exactness']})")
    elif command == "hilbert":
        lines.append(f"H = {result['canonical']}")
        pf = " + ".join(
            f"{t['coefficient']}/(t-1)^{t['order']}" for t in result["partial_fractions"]
        )
        lines.append(f"  = {pf}")
        lines.append("taylor prefix: " + ", ".join(map(str, result["taylor_prefix"])))
        lines.append(
            "hilbert polynomial coefficients (k^0, k^1, ...): "
            + ", ".join(result["hilbert_polynomial"])
        )
        lines.append(f"multiplicity = {result['multiplicity']}")
    else:
        lines.append(json.dumps(result, indent=2))
    return "\n".join(lines)


def _root_text(r: dict[str, Any]) -> str:
    base = "[" + ",".join(map(str, r["coords"])) + "]"
    return f"{base} {r['epsilon']}" if "epsilon" in r else base


# ---------------------------------------------------------------------------
# argument parsing and dispatch


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="schublocal",
        description="Local invariants of Schubert varieties at torus-fixed points",
    )
    parser.add_argument("--version", action="version", version=f"schublocal {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, elements: bool = True) -> None:
        p.add_argument("--type", required=True, help="group type label, e.g. A5")
        p.add_argument(
            "--variant",
            choices=[v.value for v in Variant],
            default=Variant.OPPOSITE.value,
        )
        p.add_argument("--format", choices=["json", "text"], default="json")
        if elements:
            p.add_argument("--w", required=True, help="one-line form or word")
            p.add_argument("--x", required=True, help="one-line form or word")

    p = sub.add_parser("roots", help="positive roots of a type")
    common(p, elements=False)

    p = sub.add_parser("bruhat", help="Bruhat comparison of two elements")
    common(p)

    p = sub.add_parser("comin", help="cominuscule-point certificate")
    common(p)

    p = sub.add_parser("tangent", help="curve and Zariski tangent weights")
    common(p)

    p = sub.add_parser("restrict", help="restriction of Schubert classes to the fixed point")
    common(p)
    p.add_argument("--word", help="explicit reduced word for x")
    p.add_argument("--ring", choices=["chow", "k", "both"], default="both")

    p = sub.add_parser("mult", help="multiplicity at a cominuscule point")
    common(p)
    p.add_argument("--word", help="explicit reduced word for x")

    p = sub.add_parser("hilbert", help="Hilbert series at a cominuscule point")
    common(p)
    p.add_argument("--word", help="explicit reduced word for x")
    p.add_argument("--terms", type=int, default=12, help="Taylor prefix length")

    p = sub.add_parser("scan", help="sweep all (w, x) pairs of a type")
    common(p, elements=False)
    p.add_argument("--out", help="JSON-lines output path (default stdout)")
    p.add_argument("--cache", help="reduced-word memo cache file")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--with-mult", action="store_true", help="compute multiplicities")
    p.add_argument("--parabolic", help="restrict to w with this maximal parabolic, e.g. '1,3'")
    p.add_argument("--limit", type=int, help="stop after this many records (resumable)")
    p.add_argument("--cap", type=int, help=f"override the rank cap (default {SCAN_RANK_CAP})")

    p = sub.add_parser("report", help="render figures and a CSV summary from a scan")
    p.add_argument("--in", dest="inp", required=True, help="scan JSON-lines file")
    p.add_argument("--outdir", required=True, help="output directory")
    return parser


SINGLE_COMMANDS = {
    "bruhat": cmd_bruhat,
    "comin": cmd_comin,
    "tangent": cmd_tangent,
    "restrict": cmd_restrict,
    "mult": cmd_mult,
    "hilbert": cmd_hilbert,
}


def _query_from_args(args: argparse.Namespace, g: WeylGroup) -> Query:
    w_spec = parse_element_spec(g, args.w) if getattr(args, "w", None) else None
    x_spec = parse_element_spec(g, args.x) if getattr(args, "x", None) else None
    word = _parse_tokens(args.word) if getattr(args, "word", None) else None
    return Query(
        command=args.command,
        type_label=g.datum.label,
        variant=Variant(args.variant),
        w=w_spec,
        x=x_spec,
        word=word,
        terms=getattr(args, "terms", 12),
        ring=getattr(args, "ring", None),
    )


def run_query(query: Query) -> dict[str, Any]:
    """Execute a parsed query and assemble the report dictionary."""
    g = group(query.type_label)
    t0 = time.perf_counter()
    if query.command == "roots":
        result = cmd_roots(g, query)
    else:
        w = element_from_spec(g, query.w)
        x = element_from_spec(g, query.x)
        result = SINGLE_COMMANDS[query.command](g, query, w, x)
    elapsed_ms = round((time.perf_counter() - t0) * 1000, 3)
    return {
        "tool": "schublocal",
        "version": __version__,
        "command": query.command,
        "query": query.to_json(),
        "result": result,
        "elapsed_ms": elapsed_ms,
    }


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "scan":
            return run_scan(args)
        if args.command == "report":
            from .reportfig import render_report

            render_report(Path(args.inp), Path(args.outdir))
            return EXIT_OK
        g = group(args.type)
        query = _query_from_args(args, g)
        report = run_query(query)
        if args.format == "text":
            print(render_text(report))
        else:
            print(json.dumps(report, indent=2))
        return EXIT_OK
    except (BruhatPreconditionError, NotCominusculeError, NotImplementedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except InternalConsistencyError as exc:
        print(f"internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ParseFailure, CartanMatrixError, MixedGroupError, NotReducedError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
