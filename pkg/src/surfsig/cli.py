"""``surfsig`` command line.

Exit codes: 0 success, 1 negative verdict, 2 undetermined, 3 input error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import epi as epi_mod
from .classes import conjugacy_classes, count_product_solutions
from .eichler import fixed_point_profile, surface_character
from .errors import InputError, NoWitness, SurfsigError
from .groups import FiniteGroup, build_psl2, load_permutation_group, order_census
from .signature import classify, get_model, parse_signature
from .spectrum import reachable_genera, stable_upper_genus, table_header, table_rows
from .subgroups import maximal_subgroups

EXIT_OK, EXIT_NEGATIVE, EXIT_UNDETERMINED, EXIT_INPUT = 0, 1, 2, 3


@dataclass
class Result:
    payload: dict
    code: int = EXIT_OK
    plain: list[str] = field(default_factory=list)
    rows: list[list] | None = None  # csv rendering, header first


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"surfsig: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def load_group(selector: str) -> FiniteGroup:
    """``psl2:<p>`` or a path to a permutation-group file."""
    s = selector.strip()
    if s.lower().startswith("psl2:") or s.lower().startswith("psl2_"):
        try:
            p = int(s[5:])
        except ValueError:
            raise InputError(f"bad group selector {selector!r}") from None
        return build_psl2(p)
    path = Path(s)
    if not path.is_file():
        raise InputError(f"group selector {selector!r} is neither psl2:<p> nor a readable file")
    return load_permutation_group(path)


def _model_id(selector: str) -> str:
    return get_model(selector.strip().lower()).group_id


# -- commands ------------------------------------------------------------------

def cmd_group_info(a) -> Result:
    G = load_group(a.group)
    census = order_census(G)
    payload = {"group": G.name, "order": G.order, "order_census": {str(k): v for k, v in sorted(census.items())}}
    plain = [f"group {G.name}", f"order {G.order}"] + [f"elements of order {k}: {v}" for k, v in sorted(census.items())]
    rows = [["element_order", "count"]] + [[k, v] for k, v in sorted(census.items())]
    return Result(payload, plain=plain, rows=rows)


def cmd_classes(a) -> Result:
    G = load_group(a.group)
    T = conjugacy_classes(G)
    items = []
    for cid, c in enumerate(T.classes):
        items.append({
            "label": c.label,
            "element_order": c.element_order,
            "size": c.size,
            "centralizer_order": T.centralizer_order(cid),
            "representative": int(c.rep),
            "inverse_class": T.classes[T.inverse_class(cid)].label,
        })
    plain = [f"{d['label']:>5} order {d['element_order']:>3} size {d['size']:>5} centralizer {d['centralizer_order']:>5}" for d in items]
    header = ["label", "element_order", "size", "centralizer_order", "representative", "inverse_class"]
    rows = [header] + [[d[k] for k in header] for d in items]
    return Result({"group": G.name, "classes": items}, plain=plain, rows=rows)


def cmd_coeff(a) -> Result:
    G = load_group(a.group)
    T = conjugacy_classes(G)
    try:
        cs = [T.class_id(lbl) for lbl in a.labels]
    except KeyError as e:
        raise InputError(f"unknown class label {e.args[0]!r}; known: {' '.join(T.labels)}") from None
    if len(cs) < 2:
        raise InputError("coeff needs at least two class labels")
    total = count_product_solutions(T, cs)
    last = cs[-1]
    per_element = total // T.size(last)
    payload = {
        "group": G.name,
        "classes": list(a.labels),
        "total": total,
        "per_element": per_element,
    }
    plain = [f"total {total}", f"per fixed last factor {per_element}"]
    return Result(payload, plain=plain, rows=[["total", "per_element"], [total, per_element]])


def cmd_maximal(a) -> Result:
    G = load_group(a.group)
    ms = maximal_subgroups(G)
    items = [m.to_json() for m in ms]
    plain = [f"order {m.order}: {m.copies} copies" for m in ms]
    rows = [["order", "copies"]] + [[m.order, m.copies] for m in ms]
    return Result({"group": G.name, "maximal": items}, plain=plain, rows=rows)


def cmd_classify(a) -> Result:
    gid = _model_id(a.group)
    sig = parse_signature(a.signature)
    c = classify(gid, sig)
    payload = {"group": gid, "signature": sig.to_json()} | c.to_json()
    verdict = "admissible" if c.admissible else f"rejected {c.reason}"
    return Result(payload, EXIT_OK if c.admissible else EXIT_NEGATIVE, [f"{sig} {verdict} genus {c.genus}"])


def cmd_epi(a) -> Result:
    G = load_group(a.group)
    sig = parse_signature(a.signature)
    out = epi_mod.exists_epimorphism(G, sig, a.budget, jobs=a.jobs)
    payload = {"group": G.name, "signature": sig.to_json()} | out.to_json(G, a.elements)
    code = {epi_mod.FOUND: EXIT_OK, epi_mod.NOT_FOUND: EXIT_NEGATIVE}.get(out.verdict, EXIT_UNDETERMINED)
    plain = [f"{sig} {out.verdict} nodes {out.nodes_explored}"]
    if out.witness is not None:
        w = out.witness.to_json(G, a.elements)
        plain += [f"alpha {w['alpha']}", f"beta {w['beta']}", f"c {w['c']}"]
    return Result(payload, code, plain)


def cmd_spectrum(a) -> Result:
    gid = _model_id(a.group)
    r = reachable_genera(gid, a.max)
    plain = [
        f"minimum genus {r.minimum_genus}",
        f"reachable genera up to {a.max}: {len(r.reachable)}",
        f"gaps: {' '.join(map(str, r.gaps))}",
    ]
    if r.stable_upper_genus is not None:
        plain.append(f"stable upper genus {r.stable_upper_genus}")
    reach = set(r.reachable)
    rows = [["genus", "reachable"]] + [[g, int(g in reach)] for g in range(a.max + 1)]
    return Result(r.to_json(), plain=plain, rows=rows)


def cmd_stable_genus(a) -> Result:
    gid = _model_id(a.group)
    cert = stable_upper_genus(gid)
    payload = {"group": gid} | cert.to_json()
    rows = [["stable_upper_genus", "last_gap"], [cert.stable_upper_genus, cert.last_gap]]
    return Result(payload, plain=[str(cert.stable_upper_genus)], rows=rows)


def cmd_table(a) -> Result:
    gid = _model_id(a.group)
    if a.to < a.from_:
        raise InputError("--to must be >= --from")
    header = table_header(gid)
    body = table_rows(gid, a.from_, a.to)
    payload = {"group": gid, "columns": header, "rows": [list(r) for r in body]}
    plain = [" ".join(str(v) for v in r) for r in body]
    return Result(payload, plain=plain, rows=[header] + [list(r) for r in body])


def cmd_eichler(a) -> Result:
    G = load_group(a.group)
    T = conjugacy_classes(G)
    sig = parse_signature(a.signature)
    out = epi_mod.exists_epimorphism(G, sig, a.budget, jobs=a.jobs)
    if out.verdict != epi_mod.FOUND:
        code = EXIT_NEGATIVE if out.verdict == epi_mod.NOT_FOUND else EXIT_UNDETERMINED
        return Result({"group": G.name, "signature": sig.to_json(), "verdict": out.verdict}, code, [f"{sig} {out.verdict}"])
    ch = surface_character(G, T, sig, out.witness)
    body = ch.to_json(T)
    if a.class_label:
        try:
            cid = T.class_id(a.class_label)
        except KeyError:
            raise InputError(f"unknown class label {a.class_label!r}") from None
        body["values"] = [v for v in body["values"] if v["class"] == a.class_label]
        rep = T.classes[cid].rep
        if rep != G.identity:
            prof = fixed_point_profile(G, T, sig, out.witness, rep)
            body["fixed_points"] = {str(u): n for u, n in sorted(prof.counts.items())}
    payload = {"group": G.name, "signature": sig.to_json()} | body
    plain = [f"degree {ch.degree}"] + [f"{v['class']:>5} re {v['re']}" for v in body["values"]]
    rows = [["class", "re"]] + [[v["class"], v["re"]] for v in body["values"]]
    return Result(payload, plain=plain, rows=rows)


# -- parsing --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("plain", "json", "csv"), default=None, help="default plain; csv for table")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for searches")

    p = _Parser(prog="surfsig", description="Finite group actions on surfaces: signatures, epimorphisms, spectra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("group", help="group facts")
    gsub = g.add_subparsers(dest="group_command", required=True, parser_class=_Parser)
    gi = gsub.add_parser("info", parents=[common], help="order and element-order census")
    gi.add_argument("group")
    gi.set_defaults(func=cmd_group_info)

    c = sub.add_parser("classes", parents=[common], help="conjugacy classes")
    c.add_argument("group")
    c.set_defaults(func=cmd_classes)

    c = sub.add_parser("coeff", parents=[common], help="product-one solution count over classes")
    c.add_argument("group")
    c.add_argument("labels", nargs="+")
    c.set_defaults(func=cmd_coeff)

    c = sub.add_parser("maximal", parents=[common], help="maximal subgroups with copy counts")
    c.add_argument("group")
    c.set_defaults(func=cmd_maximal)

    c = sub.add_parser("classify", parents=[common], help="closed-form admissibility")
    c.add_argument("group")
    c.add_argument("signature")
    c.set_defaults(func=cmd_classify)

    for name, func, help_ in (
        ("epi", cmd_epi, "search for a surface-kernel epimorphism"),
        ("eichler", cmd_eichler, "Eichler trace of a found action"),
    ):
        c = sub.add_parser(name, parents=[common], help=help_)
        c.add_argument("group")
        c.add_argument("signature")
        c.add_argument("--budget", type=int, default=epi_mod.DEFAULT_BUDGET)
        if name == "epi":
            c.add_argument("--elements", choices=("index", "matrix"), default="index")
        else:
            c.add_argument("--class", dest="class_label", default=None)
        c.set_defaults(func=func)

    c = sub.add_parser("spectrum", parents=[common], help="reachable genera and gaps")
    c.add_argument("group")
    c.add_argument("--max", type=int, required=True)
    c.set_defaults(func=cmd_spectrum)

    c = sub.add_parser("stable-genus", parents=[common], help="stable upper genus")
    c.add_argument("group")
    c.set_defaults(func=cmd_stable_genus)

    c = sub.add_parser("table", parents=[common], help="genus to signature table")
    c.add_argument("group")
    c.add_argument("--from", dest="from_", type=int, required=True)
    c.add_argument("--to", type=int, required=True)
    c.set_defaults(func=cmd_table, default_format="csv")
    return p


def render(res: Result, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(res.payload, sort_keys=True, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if res.rows is not None:
            w.writerows(res.rows)
        else:
            w.writerow(["key", "value"])
            for k, v in sorted(res.payload.items()):
                w.writerow([k, json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v])
        return buf.getvalue()
    return "\n".join(res.plain) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_INPUT
    try:
        res = args.func(args)
    except (SurfsigError, ValueError) as e:
        if isinstance(e, NoWitness):
            print(f"surfsig: {e}", file=sys.stderr)
            return EXIT_NEGATIVE
        print(f"surfsig: {e}", file=sys.stderr)
        return EXIT_INPUT
    fmt = args.format or getattr(args, "default_format", "plain")
    sys.stdout.write(render(res, fmt))
    return res.code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
