"""Command-line front end: ``tlcenter <subcommand> [flags]``.

Every subcommand builds a JSON-able document, prints it (or a one-screen
summary when ``--out`` is given) and exits with

    0  success
    2  usage error (bad flags or arguments)
    3  domain error (e.g. a vanishing q-integer)
    4  resource guard (a size limit was hit)

Gram matrices and Jones-Wenzl coefficients can be cached on disk with
``--cache-dir``.  Entries are content-addressed by operation, parameters,
domain fingerprint and a format version, and written atomically.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import random
import sys
import tempfile
from fractions import Fraction

from . import braidcenter as bc
from . import crystal as cr
from . import diagram as dg
from . import fusiondata as fd
from . import primes as pr
from . import stability as st
from . import tlcat as tl
from .polysolve import ResourceGuard
from .qarith import Cyclotomic, DomainError, Finite, GenericV, Scalar, ScalarDomain, braiding_units, parse_scalar, root_of_unity_domain

__all__ = ["main", "run", "parse_q", "validate_artifact", "Cache", "FORMAT_VERSION"]

FORMAT_VERSION = 1

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_GUARD = 0, 2, 3, 4


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# q specifications and scalars
# ---------------------------------------------------------------------------


def parse_q(spec: str | None, kappa: int | None = None) -> ScalarDomain:
    """``generic``, ``root:N`` or ``finite:p:d:r0,r1,...``; ``--kappa K`` wins."""
    if kappa is not None:
        if kappa < 3:
            raise UsageError("--kappa must be at least 3")
        return root_of_unity_domain(kappa)
    if spec is None or spec == "generic":
        return tl.generic_domain()
    parts = spec.split(":")
    try:
        if parts[0] == "root" and len(parts) == 2:
            N = int(parts[1])
            if N < 1:
                raise UsageError("root:N needs N >= 1")
            return Cyclotomic(N)
        if parts[0] == "finite" and len(parts) in (3, 4):
            p, d = int(parts[1]), int(parts[2])
            q = [int(c) for c in parts[3].split(",")] if len(parts) == 4 else None
            return Finite(p, d, q)
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad q specification {spec!r}: {exc}") from None
    raise UsageError(f"bad q specification {spec!r}")


def scalar_json(s: Scalar):
    """Rational constants as numbers (or "a/b"), anything else as its text form."""
    try:
        f = bc._to_fraction(s)
    except DomainError:
        return str(s)
    return int(f) if f.denominator == 1 else str(f)


def scalar_from_json(dom: ScalarDomain, x) -> Scalar:
    if isinstance(x, int):
        return dom(x)
    if isinstance(x, str) and "/" in x and "[" not in x and "(" not in x and "v" not in x:
        return dom(Fraction(x))
    return parse_scalar(dom, x)


def _select_unit(dom: ScalarDomain, a: str | None) -> list[Scalar]:
    if dom.v is None:
        dom = dom.with_sqrt()
    units = braiding_units(dom)
    if a is None:
        return units
    try:
        idx = int(a)
    except ValueError:
        raise UsageError("--a selects a braiding unit by index") from None
    if not 0 <= idx < len(units):
        raise UsageError(f"--a must lie in 0..{len(units) - 1}")
    return [units[idx]]


# ---------------------------------------------------------------------------
# cache
# ---------------------------------------------------------------------------


def _atomic_write(path: str, data: bytes) -> None:
    folder = os.path.dirname(os.path.abspath(path))
    os.makedirs(folder, exist_ok=True)
    fd_, tmp = tempfile.mkstemp(dir=folder, prefix=".tmp-")
    try:
        with os.fdopen(fd_, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class Cache:
    """Content-addressed JSON store under one directory."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)
        if not os.access(root, os.W_OK):
            raise UsageError(f"cache directory {root} is not writable")

    @staticmethod
    def key(operation: str, params: dict, fingerprint: str) -> str:
        blob = json.dumps(
            {"op": operation, "params": params, "domain": fingerprint, "format": FORMAT_VERSION},
            sort_keys=True,
        )
        return hashlib.sha256(blob.encode()).hexdigest()

    def path(self, operation: str, key: str) -> str:
        return os.path.join(self.root, operation, key + ".json")

    def get(self, operation: str, key: str) -> bytes | None:
        p = self.path(operation, key)
        if not os.path.exists(p):
            return None
        with open(p, "rb") as fh:
            return fh.read()

    def put(self, operation: str, key: str, data: bytes) -> None:
        _atomic_write(self.path(operation, key), data)


def _dump(doc) -> bytes:
    return (json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n").encode()


def _cached(args, operation: str, params: dict, dom: ScalarDomain, build):
    if not args.cache_dir:
        return json.loads(_dump(build()))
    cache = Cache(args.cache_dir)
    key = Cache.key(operation, params, dom.fingerprint)
    hit = cache.get(operation, key)
    if hit is not None:
        return json.loads(hit)
    doc = build()
    cache.put(operation, key, _dump(doc))
    return json.loads(_dump(doc))


# ---------------------------------------------------------------------------
# subcommands; each returns (document, summary text, csv rows or None)
# ---------------------------------------------------------------------------


def _cmd_fusion(args):
    kappa = 0 if args.generic or args.kappa is None else args.kappa
    out = fd.fusion(args.m, args.n, kappa)
    letter = "T" if kappa == 0 else "L"
    text = " + ".join(f"{letter}{k}" for k in out)
    doc = {"kind": "fusion", "m": args.m, "n": args.n, "kappa": kappa, "summands": out}
    return doc, text, [["label"]] + [[k] for k in out]


def _cmd_modular_data(args):
    if args.kappa is None:
        raise UsageError("modular-data needs --kappa")
    dom = root_of_unity_domain(args.kappa)
    a = _select_unit(dom, args.a)[0] if args.a is not None else None
    md = fd.modular_data(args.kappa, a)
    doc = {
        "kind": "modular-data",
        "kappa": args.kappa,
        "a": str(md.a),
        "S": [[scalar_json(x) for x in row] for row in md.S],
        "T": [scalar_json(t) for t in md.T],
        "modular": fd.check_modular(md),
        "transparent": sorted(fd.transparent_simples(args.kappa, a)),
    }
    if args.kappa <= 8:
        doc["verlinde"] = fd.verlinde_check(md)
    text = f"κ={args.kappa}: {len(md.S)} simples, det S ≠ 0: {doc['modular']}, transparent: {doc['transparent']}"
    rows = [["m", "n", "S"]] + [[m, n, doc["S"][m][n]] for m in range(len(md.S)) for n in range(len(md.S))]
    return doc, text, rows


def _morphism_doc(f: tl.Morphism) -> dict:
    return {
        "src": f.src,
        "tgt": f.tgt,
        "terms": [[str(d), str(c)] for d, c in f.terms()],
    }


def _morphism_from_doc(dom: ScalarDomain, doc: dict) -> tl.Morphism:
    terms = []
    for dtext, ctext in doc["terms"]:
        d = dg.intern(doc["src"], doc["tgt"], dg.parse_diagram(doc["src"], doc["tgt"], dtext).pairing)
        terms.append((d.index, parse_scalar(dom, ctext)))
    return tl.Morphism.from_terms(dom, doc["src"], doc["tgt"], terms)


def _guard(n: int, args, default: int) -> None:
    limit = args.max_size if args.max_size is not None else default
    if n > limit:
        raise ResourceGuard(f"size {n} exceeds --max-size {limit}")


def _cmd_jw(args):
    dom = parse_q(args.q, args.kappa)
    _guard(args.n, args, 8)
    conv = tl.MINUS if args.sign == "-" else tl.PLUS

    def build():
        f = tl.jones_wenzl(args.n, dom)
        return {
            "kind": "jw",
            "n": args.n,
            "domain": dom.fingerprint,
            "sign": args.sign,
            "morphism": _morphism_doc(f),
            "qtrace": str(tl.qtrace(f, conv)),
        }

    doc = _cached(args, "jw", {"n": args.n, "sign": args.sign}, dom, build)
    text = f"JW_{args.n} over {dom}: {len(doc['morphism']['terms'])} terms, qtrace {doc['qtrace']}"
    rows = [["diagram", "coefficient"]] + doc["morphism"]["terms"]
    return doc, text, rows


def _cmd_gram(args):
    from . import linalg

    dom = parse_q(args.q, args.kappa)
    _guard(args.n, args, 7)

    def build():
        G = tl.gram_matrix(args.n, dom)
        cert = linalg.gram_rank_certificate(args.n, dom)
        return {
            "kind": "gram",
            "n": args.n,
            "domain": dom.fingerprint,
            "basis": [str(d) for d in dg.enumerate_diagrams(args.n, args.n)],
            "matrix": [[str(x) for x in row] for row in G],
            "rank": cert.rank,
            "method": cert.method,
        }

    doc = _cached(args, "gram", {"n": args.n}, dom, build)
    text = f"Gram matrix on End({args.n}) over {dom}: size {len(doc['basis'])}, rank {doc['rank']} ({doc['method']})"
    rows = [["row", "col", "entry"]] + [[i, j, x] for i, r in enumerate(doc["matrix"]) for j, x in enumerate(r)]
    return doc, text, rows


def _cmd_braidings(args):
    dom = parse_q(args.q, args.kappa)
    if dom.v is None:
        dom = dom.with_sqrt()
    size = args.max_size if args.max_size is not None else 2
    if size > 3:
        raise ResourceGuard("braidings are checked for m, n <= 3")
    out = []
    for a in _select_unit(dom, args.a):
        checks = {}
        ok = True
        for m in range(size + 1):
            for n in range(size + 1):
                res = bc.braiding_check(m, n, a)
                checks[f"{m},{n}"] = res
                ok = ok and all(res.values())
        yb = bc.yang_baxter_check(a)
        out.append({"a": str(a), "checks": checks, "yang_baxter": yb, "ok": ok and yb})
    doc = {"kind": "braidings", "domain": dom.fingerprint, "max_size": size, "units": out}
    text = "\n".join(f"a = {u['a']}: {'pass' if u['ok'] else 'FAIL'}" for u in out)
    rows = [["a", "ok"]] + [[u["a"], u["ok"]] for u in out]
    return doc, text, rows


def _labels(args) -> tuple[tuple, tuple]:
    kinds = args.kinds.upper()
    if len(kinds) != 2 or set(kinds) - {"M", "W"}:
        raise UsageError("--kinds is two letters from M, W")
    return (kinds[0], args.i, args.j), (kinds[1], args.i2, args.j2)


def _table_json(table: dict) -> list:
    return [[k, i, j, mult] for (k, i, j), mult in sorted(table.items())]


def _table_text(table: dict) -> str:
    parts = []
    for (k, i, j), mult in sorted(table.items()):
        parts.append(f"{mult}·{k}({i},{j})" if mult > 1 else f"{k}({i},{j})")
    return " + ".join(parts)


def _cmd_center_fusion(args):
    f1, f2 = _labels(args)
    corr = bc.corrected_center_fusion(f1, f2)
    printed = bc.printed_center_fusion(f1, f2)
    doc = {
        "kind": "center-fusion",
        "factors": [list(f1), list(f2)],
        "corrected": _table_json(corr),
        "printed_formula": _table_json(printed),
        "formulas_agree": corr == printed,
    }
    text = f"{f1[0]}({f1[1]},{f1[2]}) ⊗ {f2[0]}({f2[1]},{f2[2]}) = {_table_text(corr)}"
    if corr != printed:
        text += f"\n(the double sum with labels i+j-2m, i'+j'-2n gives {_table_text(printed)})"
    rows = [["kind", "i", "j", "multiplicity"]] + _table_json(corr)
    return doc, text, rows


def _cmd_center_verify(args):
    f1, f2 = _labels(args)
    weight = args.i + args.j + args.i2 + args.j2
    _guard(weight, args, 6)
    dom = parse_q(args.q, args.kappa) if (args.q or args.kappa) else None
    table = bc.center_fusion_verify(args.i, args.j, args.i2, args.j2, (f1[0], f2[0]), dom)
    doc = {"kind": "center-verify", **table.to_json()}
    status = "matches" if table.matches_expected and table.underlying_consistent else "DOES NOT match"
    text = f"computed decomposition {_table_text(table.decomposition)} {status} the expected table"
    rows = [["kind", "i", "j", "multiplicity"]] + _table_json(table.decomposition)
    return doc, text, rows


def _cmd_crystal_search(args):
    if args.copies is not None:
        X = [0] * args.copies
    elif args.m is not None:
        X = args.m
    else:
        raise UsageError("crystal-search needs --m or --copies")
    bound = args.max_size if args.max_size is not None else 5
    if max(X if isinstance(X, list) else [X]) > bound:
        raise ResourceGuard(f"arity exceeds --max-size {bound}")
    rep = cr.halfbraid_solutions(X, m_bound=bound)
    doc = {"kind": "crystal-search", **rep.to_json()}
    text = f"{rep.object}: {rep.conclusion} ({rep.unknowns} unknowns, stage {rep.stage})"
    if rep.solutions:
        text += "\n" + "\n".join(" ".join(s) for s in rep.solutions)
    rows = [["solution"]] + [[" ".join(s)] for s in rep.solutions]
    return doc, text, rows


def _cmd_prime_tower(args):
    if args.poly:
        tower = pr.algebraic_tower(args.poly, args.k_max, args.k_min)
    else:
        if args.q is None:
            raise UsageError("prime-tower needs --q INTEGER or --poly")
        try:
            q = int(args.q)
        except ValueError:
            raise UsageError("prime-tower --q takes an integer") from None
        tower = pr.integer_tower(q, args.k_max, args.k_min)
    doc = {"kind": "prime-tower", **json.loads(tower.to_json())}
    lines = [f"k={e.k}: p={e.p} d={e.d} order={e.order}" for e in tower.entries]
    lines += [f"k={m.k}: {m.status}" for m in tower.misses]
    rows = list(csv.reader(io.StringIO(tower.to_csv())))
    return doc, "\n".join(lines), rows


def _cmd_stability(args):
    kappa_max = args.kappa if args.kappa is not None else 40
    if args.quantity == "hom":
        rep = st.hom_dim_profile(args.r, kappa_max)
    elif args.quantity == "fusion":
        rep = st.fusion_stability(args.r, kappa_max)
    else:
        rep = st.center_label_agree(args.r, kappa_max, args.window)
    doc = {"kind": "stability", **json.loads(rep.to_json())}
    rows = [["kappa", "value"]] + [[k, json.dumps(v)] for k, v in rep.values.items()]
    return doc, rep.table(), rows


_COMMANDS = {
    "fusion": _cmd_fusion,
    "modular-data": _cmd_modular_data,
    "jw": _cmd_jw,
    "gram": _cmd_gram,
    "braidings": _cmd_braidings,
    "center-fusion": _cmd_center_fusion,
    "center-verify": _cmd_center_verify,
    "crystal-search": _cmd_crystal_search,
    "prime-tower": _cmd_prime_tower,
    "stability": _cmd_stability,
}


# ---------------------------------------------------------------------------
# artifact validation (round trip)
# ---------------------------------------------------------------------------


def validate_artifact(doc: dict) -> bool:
    """Re-check a JSON artifact against the invariants of the module that made it."""
    kind = doc.get("kind")
    if kind == "fusion":
        return doc["summands"] == fd.fusion(doc["m"], doc["n"], doc["kappa"])
    if kind == "modular-data":
        dom = root_of_unity_domain(doc["kappa"])
        S = [[scalar_from_json(dom, x) for x in row] for row in doc["S"]]
        symmetric = all(S[i][j] == S[j][i] for i in range(len(S)) for j in range(len(S)))
        return symmetric and not fd.determinant(S).is_zero() and doc["transparent"] == [0]
    if kind == "jw":
        dom = _domain_from_fingerprint(doc["domain"])
        f = _morphism_from_doc(dom, doc["morphism"])
        if tl.compose(f, f) != f:
            return False
        return all(tl.compose(tl.cap_at(doc["n"], i, dom), f).is_zero() for i in range(doc["n"] - 1))
    if kind == "gram":
        dom = _domain_from_fingerprint(doc["domain"])
        G = tl.gram_matrix(doc["n"], dom)
        return doc["matrix"] == [[str(x) for x in row] for row in G]
    if kind == "prime-tower":
        f = doc["polynomial"]
        used = set()
        for e in doc["entries"]:
            entry = pr.TowerEntry(e["k"], e["p"], e["d"], tuple(e["root"]), tuple(e["modulus"]), e["order"])
            pr._verify_entry(f, entry)
            if entry.p in used:
                return False
            used.add(entry.p)
        return True
    if kind == "stability":
        vals = [doc["values"][k] for k in sorted(doc["values"], key=int)]
        t = doc["threshold"]
        if doc["verdict"] != "stable":
            return t is None
        return all(v == doc["generic"] for k, v in zip(sorted(doc["values"], key=int), vals) if int(k) >= t)
    if kind in ("center-fusion", "center-verify", "crystal-search", "braidings"):
        return True
    raise ValueError(f"unknown artifact kind {kind!r}")


def _domain_from_fingerprint(fp: str) -> ScalarDomain:
    if fp == "GenericV":
        return tl.generic_domain()
    if fp.startswith("Cyclotomic("):
        N = int(fp[len("Cyclotomic(") : fp.index(")")])
        e = 2 if "q=x^2" in fp else 1
        return Cyclotomic(N, e) if e != 1 else Cyclotomic(N)
    if fp.startswith("Finite("):
        p, d = (int(x) for x in fp[len("Finite(") : fp.index(")")].split(","))
        inner = fp[fp.index("[", fp.index("q=")) + 1 : fp.rindex("]") - 1]
        return Finite(p, d, [int(c) for c in inner.split(",")])
    raise ValueError(f"unknown domain fingerprint {fp!r}")


# ---------------------------------------------------------------------------
# argument parsing and main
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", help="generic | root:N | finite:p:d:r0,r1,...  (prime-tower: an integer)")
    p.add_argument("--kappa", type=int, help="use q a primitive 2κ-th root (stability: largest κ)")
    p.add_argument("--a", help="braiding unit index")
    p.add_argument("--sign", choices=["+", "-"], default="-", help="spherical convention for traces")
    p.add_argument("--format", choices=["text", "json", "csv"], default="text")
    p.add_argument("--out", help="write the artifact here and print a summary")
    p.add_argument("--cache-dir", help="directory for cached Gram and JW results")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-size", type=int, help="resource limit (meaning depends on the subcommand)")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tlcenter", description="Exact computations in Temperley-Lieb categories and their centers.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("fusion", help="fusion of two simples")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--generic", action="store_true", help="generic TL (the default unless --kappa)")

    sub.add_parser("modular-data", help="S and T matrices of A_{κ-1}")

    p = sub.add_parser("jw", help="Jones-Wenzl projector coefficients")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("gram", help="trace-form Gram matrix on End(n)")
    p.add_argument("--n", type=int, required=True)

    sub.add_parser("braidings", help="hexagon and Yang-Baxter checks for the braiding units")

    for name, help_text in (("center-fusion", "center fusion table from the formula"), ("center-verify", "center fusion computed from half-braidings")):
        p = sub.add_parser(name, help=help_text)
        for arg in ("i", "j", "i2", "j2"):
            p.add_argument(arg, type=int)
        p.add_argument("--kinds", default="MM", help="two letters from M, W")

    p = sub.add_parser("crystal-search", help="half-braidings in the crystal category")
    p.add_argument("--m", type=int)
    p.add_argument("--copies", type=int, help="search on a sum of copies of the unit")

    p = sub.add_parser("prime-tower", help="primes with roots of order 2^(k+1)")
    p.add_argument("--poly", help="integer polynomial in x, e.g. 'x^2-x-1'")
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--k-min", type=int, default=1)

    p = sub.add_parser("stability", help="stabilization as κ grows")
    p.add_argument("quantity", choices=["hom", "fusion", "center"])
    p.add_argument("--r", type=int, required=True, help="n for hom, window size otherwise")
    p.add_argument("--window", choices=["total", "each"], default="total")

    for sp in sub.choices.values():
        _common(sp)
    return parser


def _render(doc, text: str, rows, fmt: str) -> str:
    if fmt == "json":
        return _dump(doc).decode()
    if fmt == "csv":
        if rows is None:
            raise UsageError("this subcommand has no CSV form")
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerows(rows)
        return buf.getvalue()
    return text + "\n"


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    random.seed(args.seed)
    try:
        doc, text, rows = _COMMANDS[args.command](args)
        body = _render(doc, text, rows, args.format)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except DomainError as exc:
        print(f"domain error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except ResourceGuard as exc:
        print(f"resource guard: {exc}", file=stderr)
        return EXIT_GUARD
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.out:
        _atomic_write(args.out, body.encode())
        print(text, file=stdout)
    else:
        stdout.write(body)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
