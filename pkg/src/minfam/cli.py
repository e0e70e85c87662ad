"""Command-line front end.

Exit codes: 0 success, 1 domain error, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import kernels
from .adjoint import (
    PolarizedSurface,
    adjoint_chain,
    conical_classify,
    minimal_family_degree,
    nef_threshold,
    pmz_certificate,
)
from .classes import (
    effective_roots,
    enumerate_conic,
    enumerate_exceptional,
    enumerate_roots,
    irreducible_exceptional,
    naive_class_sets,
    t2_families,
)
from .errors import MinfamError, ParseError
from .families import INFINITE, DelPezzoPair, family_report, minimal_family_count
from .lattice import PicardLattice
from .subsystems import RootSubsystem, count_labels, dynkin_type, enumerate_labels, format_label, parse_label

WHICH = ("roots", "exceptional", "conic", "effective", "irreducible", "t2")


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(2)


def _parse_q(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"cannot parse q = {text!r}", text, 0) from None


def _surface(args):
    lat = PicardLattice.parse(args.basis)
    sub = parse_label(args.label or "", lat)
    return lat, sub


def _pair(args) -> DelPezzoPair:
    lat, sub = _surface(args)
    return DelPezzoPair(lat, _parse_q(args.q), sub)


def _polarized(args) -> PolarizedSurface:
    lat, sub = _surface(args)
    if args.d is None:
        pair = DelPezzoPair(lat, _parse_q(args.q), sub)
        return PolarizedSurface.of_pair(pair)
    return PolarizedSurface(lat, sub, lat.parse_class(args.d))


def _vec(c):
    return list(c.coeffs)


def _frac(q) -> str:
    return str(Fraction(q))


def _count_value(v):
    if v is INFINITE:
        return "infinite"
    return v


# -- commands --------------------------------------------------------------------

class _Surf:
    def __init__(self, lat, sub):
        self.lattice, self.sub = lat, sub


def cmd_enumerate(args) -> dict:
    lat, sub = _surface(args)
    surf = _Surf(lat, sub)
    fn = {
        "roots": lambda: enumerate_roots(lat),
        "exceptional": lambda: enumerate_exceptional(lat),
        "conic": lambda: enumerate_conic(lat),
        "effective": lambda: effective_roots(sub),
        "irreducible": lambda: irreducible_exceptional(surf),
        "t2": lambda: t2_families(surf),
    }[args.which]
    classes = fn()
    out = {
        "command": "enumerate",
        "basis": str(lat),
        "label": format_label(sub),
        "which": args.which,
        "count": len(classes),
        "classes": [_vec(c) for c in classes],
        "display": [str(c) for c in classes],
    }
    if args.oracle:
        if args.which not in ("roots", "exceptional", "conic"):
            raise ParseError("--oracle applies to roots, exceptional and conic only", args.which, 0)
        naive = getattr(naive_class_sets(lat), args.which)
        out["oracle"] = {"count": len(naive), "match": list(naive) == list(classes)}
        if not out["oracle"]["match"]:
            out["_fail"] = f"oracle mismatch: main {len(classes)}, oracle {len(naive)}"
    return out


def _report_dict(pair, rep) -> dict:
    mfc = minimal_family_count(rep)
    return {
        "command": "families",
        "basis": str(pair.lattice),
        "label": format_label(pair.sub),
        "degree": rep.degree,
        "q": _frac(rep.q),
        "dynkin": str(rep.dynkin),
        "counts": {k: _count_value(v) for k, v in rep.counts().items()},
        "t5": rep.t5,
        "classes": {"t0": [_vec(c) for c in rep.t0_classes], "t2": [_vec(c) for c in rep.t2_classes]},
        "minimal_family_count": {
            "value": _count_value(mfc.value),
            "lower_bound": mfc.lower_bound,
            "note": mfc.note,
        },
        "notes": list(rep.notes),
    }


def cmd_families(args) -> dict:
    pair = _pair(args)
    return _report_dict(pair, family_report(pair))


def _chain_dict(chain) -> list:
    out = []
    for st in chain.steps:
        out.append({
            "basis": str(st.surface.lattice),
            "label": format_label(st.surface.sub),
            "d": _vec(st.surface.d),
            "contracted": [_vec(c) for c in st.contracted],
        })
    t = chain.terminal
    out.append({"basis": str(t.lattice), "label": format_label(t.sub), "d": _vec(t.d), "contracted": []})
    return out


def _kind_dict(kind) -> dict:
    return {
        "kind": kind.kind,
        "q": _frac(kind.q) if kind.q is not None else None,
        "fiber": _vec(kind.fiber) if kind.fiber is not None else None,
    }


def cmd_adjoint(args) -> dict:
    s = _polarized(args)
    chain = adjoint_chain(s)
    return {
        "command": "adjoint",
        "basis": str(s.lattice),
        "label": format_label(s.sub),
        "d": _vec(s.d),
        "nef_threshold": _frac(nef_threshold(s)),
        "chain": _chain_dict(chain),
        "length": chain.length,
        "terminal": _kind_dict(chain.kind),
        "v": minimal_family_degree(chain),
    }


def cmd_conical(args) -> dict:
    s = _polarized(args)
    res = conical_classify(s)
    return {
        "command": "conical",
        "basis": str(s.lattice),
        "label": format_label(s.sub),
        "d": _vec(s.d),
        "nef_threshold": _frac(res.t),
        "conical_row": {
            "row": res.row.row,
            "t": _frac(res.row.t),
            "dsq": res.dsq,
            "type": res.row.kind,
            "dim": res.dim,
            "description": res.row.description,
            "conic_class": _vec(res.conic_class),
        },
    }


def cmd_pmz(args) -> dict:
    pair = _pair(args)
    cert = pmz_certificate(pair)
    return {
        "command": "pmz",
        "basis": str(pair.lattice),
        "label": format_label(pair.sub),
        "degree": pair.lattice.degree,
        "q": _frac(pair.q),
        "certificate": {
            "status": cert.status,
            "f1": _vec(cert.f1) if cert.f1 is not None else None,
            "f2": _vec(cert.f2) if cert.f2 is not None else None,
            "v": cert.v,
        },
    }


def cmd_labels(args) -> dict:
    lat = PicardLattice.parse(args.basis)
    if args.list:
        subs = enumerate_labels(lat, args.max_size)
        return {
            "command": "labels",
            "basis": str(lat),
            "count": len(subs),
            "labels": [{"label": format_label(s), "dynkin": str(dynkin_type(s))} for s in subs],
        }
    return {"command": "labels", "basis": str(lat), "count": count_labels(lat), "backend": kernels.BACKEND}


# -- text rendering ----------------------------------------------------------------

def _fmt_vec(lat, v) -> str:
    from .lattice import DivisorClass

    return str(DivisorClass(tuple(v), lat))


def render_text(out: dict) -> str:
    cmd = out["command"]
    lines = []
    head = f"basis: {out['basis']}"
    if out.get("label") is not None:
        head += f"  label: {out['label'] or '(empty)'}"
    lines.append(head)
    lat = PicardLattice.parse(out["basis"])
    if cmd == "enumerate":
        lines.extend(f"  {s}" for s in out["display"])
        lines.append(f"{out['which']}: {out['count']} classes")
        if "oracle" in out:
            o = out["oracle"]
            lines.append(f"oracle: {o['count']} classes, {'match' if o['match'] else 'MISMATCH'}")
    elif cmd == "families":
        lines.append(f"degree: {out['degree']}  q: {out['q']}  dynkin: {out['dynkin']}")
        for k, v in out["counts"].items():
            if v is not None:
                lines.append(f"{k.upper()}: {v}")
        if out["t5"]:
            lines.append(f"T5: {out['t5']}")
        m = out["minimal_family_count"]
        lines.append(f"minimal families: {'>= ' if m['lower_bound'] else ''}{m['value']}"
                     + (f" ({m['note']})" if m["note"] else ""))
        for key in ("t0", "t2"):
            if out["classes"][key]:
                lines.append(f"{key.upper()} classes:")
                lines.extend(f"  {_fmt_vec(lat, v)}" for v in out["classes"][key])
    elif cmd == "adjoint":
        lines.append(f"d: {_fmt_vec(lat, out['d'])}  nef threshold: {out['nef_threshold']}")
        for i, st in enumerate(out["chain"]):
            slat = PicardLattice.parse(st["basis"])
            con = ", ".join(_fmt_vec(slat, v) for v in st["contracted"]) or "-"
            lines.append(f"  {i}: {st['basis']}  d = {_fmt_vec(slat, st['d'])}  contracted: {con}")
        t = out["terminal"]
        term_lat = PicardLattice.parse(out["chain"][-1]["basis"])
        kind = f"DP q={t['q']}" if t["kind"] == "DP" else f"GR fiber={_fmt_vec(term_lat, t['fiber'])}"
        lines.append(f"chain length: {out['length']}  terminal: {kind}")
        lines.append(f"v = {out['v']}")
    elif cmd == "conical":
        r = out["conical_row"]
        lines.append(f"d: {_fmt_vec(lat, out['d'])}  t = {r['t']}  D^2 = {r['dsq']}  type {r['type']}")
        lines.append(f"row {r['row']}: {r['description']} (dim {r['dim']})")
    elif cmd == "pmz":
        c = out["certificate"]
        lines.append(f"degree: {out['degree']}  q: {out['q']}")
        if c["status"] == "pair":
            lines.append(f"f1 = {_fmt_vec(lat, c['f1'])}  f2 = {_fmt_vec(lat, c['f2'])}  v = {c['v']}")
        else:
            lines.append(c["status"])
    elif cmd == "labels":
        if "labels" in out:
            lines.extend(f"  {x['label'] or '(empty)'}  {x['dynkin']}" for x in out["labels"])
        lines.append(f"labels: {out['count']}")
    return "\n".join(lines) + "\n"


# -- entry point -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="minfam", description="Minimal families of rational curves on weak del Pezzo pairs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def common(sp, q=True, d=False):
        sp.add_argument("--basis", required=True, help="B0..B8 or P0..P2 (B(5) also accepted)")
        sp.add_argument("--label", default="", help="simple roots, e.g. '1123,45' or 'v:0,1,-1,0'")
        if q:
            sp.add_argument("--q", default="1", help="multiplier of -K: 1, 1/2, 1/3 or 2/3")
        if d:
            sp.add_argument("--d", default=None, help="class as basis coordinates, e.g. '6,' or '1,0'")
        sp.add_argument("--format", choices=("text", "json"), default="text")

    e = sub.add_parser("enumerate", help="list class sets")
    common(e, q=False)
    e.add_argument("--which", choices=WHICH, required=True)
    e.add_argument("--oracle", action="store_true", help="cross-check against the naive box enumerator")
    common(sub.add_parser("families", help="family report of a del Pezzo pair"))
    common(sub.add_parser("adjoint", help="adjoint chain of a polarized surface"), d=True)
    common(sub.add_parser("conical", help="conical-surface table row"), d=True)
    common(sub.add_parser("pmz", help="two families meeting once and the bidegree"))
    lb = sub.add_parser("labels", help="count or list simple systems up to permutation")
    lb.add_argument("--basis", required=True)
    lb.add_argument("--list", action="store_true")
    lb.add_argument("--max-size", type=int, default=-1)
    lb.add_argument("--format", choices=("text", "json"), default="text")
    return p


COMMANDS = {
    "enumerate": cmd_enumerate,
    "families": cmd_families,
    "adjoint": cmd_adjoint,
    "conical": cmd_conical,
    "pmz": cmd_pmz,
    "labels": cmd_labels,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        out = COMMANDS[args.command](args)
    except ParseError as exc:
        print(f"minfam: parse error: {exc}", file=sys.stderr)
        return 2
    except MinfamError as exc:
        print(f"minfam: error: {exc}", file=sys.stderr)
        return 1
    fail = out.pop("_fail", None)
    if args.format == "json":
        sys.stdout.write(json.dumps(out, sort_keys=True) + "\n")
    else:
        sys.stdout.write(render_text(out))
    if fail:
        print(f"minfam: error: {fail}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
