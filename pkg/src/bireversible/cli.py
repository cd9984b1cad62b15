"""Command-line front end over the ``.aut`` and ``.sqc`` formats.

Exit status: 0 on success, 1 when a required property does not hold,
2 on bad input.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from . import automata as au
from . import complexes as cx
from . import tree
from .analysis import freeness_certificate, growth_table, infinite_order_witness
from .errors import BireversibleError, FormatError
from .fixtures import all_fixtures
from .quaternions import build_lattice_complex
from .complexes import TILDE
from .words import BAR, format_word, parse_word


class Report:
    def __init__(self, porcelain=False):
        self.porcelain = porcelain
        self.lines = []

    def add(self, key, value):
        self.lines.append(f"{key}:{value}" if self.porcelain else f"{key}: {value}")

    def text(self, line):
        self.lines.append(line)

    def render(self):
        return "\n".join(self.lines) + "\n"


def yn(flag):
    return "yes" if flag else "no"


def read_text(path):
    if path in (None, "-"):
        return sys.stdin.read(), "<stdin>"
    return Path(path).read_text(), str(path)


def load_automaton(path):
    text, src = read_text(path)
    return au.parse_aut(text, src)


def load_complex_or_automaton(path):
    text, src = read_text(path)
    first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()), "")
    if first.startswith("alphabet:"):
        return cx.build_sigma(au.parse_aut(text, src))
    return cx.parse_sqc(text, src)


def emit(args, text):
    if getattr(args, "output", None):
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


def parse_pairs(text, a):
    """``"q1:q2,..."`` into an index involution; unlisted states pair with ``name^-`` or ``name~``."""
    names = a.state_labels
    pairing = [None] * a.state_count
    if text:
        for col, item in enumerate(text.split(","), 1):
            left, sep, right = item.strip().partition(":")
            if not sep or left not in names or right not in names:
                raise FormatError(f"bad pair {item.strip()!r}", 1, col, "--pairs")
            i, j = names.index(left), names.index(right)
            pairing[i], pairing[j] = j, i
    for i, n in enumerate(names):
        if pairing[i] is None:
            candidates = [n + BAR, n + TILDE]
            for mark in (BAR, TILDE):
                if n.endswith(mark):
                    candidates = [n[: -len(mark)]]
            partner = next((m for m in candidates if m in names), None)
            if partner is None:
                raise FormatError(f"no inverse given for state {n!r}", 1, 1, "--pairs")
            pairing[i] = names.index(partner)
    return tuple(pairing)


def parse_mixed(text, a):
    """A word over letters and states of ``a`` as directed edges of its complex."""
    lookup = {}
    for i, n in enumerate(a.letter_labels):
        lookup[n] = cx.h(i)
    for i, n in enumerate(a.state_labels):
        if n in lookup:
            raise FormatError(f"name {n!r} is both a letter and a state", 1, 1, "--word")
        lookup[n] = cx.v(i)
    out, pos = [], 0
    for tok in text.split():
        col = text.index(tok, pos) + 1
        pos = col + len(tok) - 1
        if tok in lookup:
            out.append(lookup[tok])
        elif tok.endswith(BAR) and tok[: -len(BAR)] in lookup:
            out.append(lookup[tok[: -len(BAR)]].inverse())
        else:
            raise FormatError(f"unknown symbol {tok!r}", 1, col, "--word")
    return tuple(out)


def edge_word(c, w):
    return " ".join(c.edge_name(e) for e in w)


# -- subcommands -------------------------------------------------------------------


def cmd_check(args):
    a = load_automaton(args.path)
    r = Report(args.porcelain)
    props = {
        "invertible": au.is_invertible(a),
        "reversible": au.is_reversible(a),
        "bireversible": au.is_bireversible(a),
    }
    for k, val in props.items():
        r.add(k, yn(val))
    orbit = au.eight_orbit(a)
    r.add("orbit", f"{sum(m.defined for m in orbit.members)}/8 defined, {len(orbit.distinct)} distinct")
    for m in orbit.members:
        r.add(f"orbit[{m.word or '-'}]", "defined" if m.defined else f"undefined ({m.reason})")
    emit(args, r.render())
    if args.require and not props[args.require]:
        return 1
    return 0


def cmd_dual(args):
    emit(args, au.format_aut(au.dual(load_automaton(args.path))))
    return 0


def cmd_invert(args):
    emit(args, au.format_aut(au.inverse(load_automaton(args.path))))
    return 0


def cmd_complex(args):
    emit(args, cx.format_sqc(cx.build_sigma(load_automaton(args.path))))
    return 0


def cmd_link(args):
    c = load_complex_or_automaton(args.path)
    lk = cx.link(c)
    r = Report(args.porcelain)
    hg = lk.horizontal_germs
    if not args.porcelain:
        width = max(len(c.edge_name(g)) for g in lk.vertical_germs + hg)
        r.text(" " * width + " | " + " ".join(c.edge_name(g).rjust(width) for g in hg))
        for vg in lk.vertical_germs:
            row = " ".join(str(lk.count(vg, g)).rjust(width) for g in hg)
            r.text(c.edge_name(vg).rjust(width) + " | " + row)
    for g in lk.vertical_germs + hg:
        r.add(f"degree[{c.edge_name(g)}]", lk.degree(g))
    bad = lk.bad_pairs()
    for vg, g, k in bad:
        r.add("failing", f"({c.edge_name(g)}, {c.edge_name(vg)}) has {k} edges")
    nv, nh = lk.shape
    r.add("complete_bipartite", yn(not bad) + (f" K_{{{nh},{nv}}}" if not bad else ""))
    if c.directed:
        r.add("minimal_link", yn(cx.satisfies_minimal_link(c)))
    emit(args, r.render())
    return 1 if args.require and bad else 0


def cmd_from_complex(args):
    text, src = read_text(args.path)
    c = cx.parse_sqc(text, src)
    a = cx.automaton_from_directed(c) if args.mode == "directed" else cx.automaton_from_vht(c)
    emit(args, au.format_aut(a))
    return 0


def cmd_act(args):
    a = load_automaton(args.path)
    qw = parse_word(args.states, a.state_labels, "--states")
    xw = parse_word(args.word, a.letter_labels, "--word")
    if all(s.sign == 1 for s in xw):
        img = tree.apply_word(a, qw, xw)
    else:
        img = tree.act_on_signed(a, qw, xw)
    emit(args, format_word(img, a.letter_labels) + "\n")
    return 0


def cmd_rect(args):
    a = load_automaton(args.path)
    qw = parse_word(args.states, a.state_labels, "--states")
    xw = parse_word(args.word, a.letter_labels, "--word")
    rect = tree.rectangle(a, qw, xw)
    r = Report(args.porcelain)
    lines = [format_word(rect.top, a.letter_labels)]
    rows = list(rect.cells)
    for i, row in enumerate(reversed(rows)):
        left = format_word((row[0][1],), a.state_labels) if row else format_word((rect.left[i],), a.state_labels)
        lines.append(f"{left} | " + " ".join(format_word((c[0],), a.letter_labels) for c in row))
    if not args.porcelain:
        for ln in lines:
            r.text(ln)
    r.add("bottom", format_word(rect.bottom, a.letter_labels))
    r.add("left", format_word(rect.left, a.state_labels))
    r.add("top", format_word(rect.top, a.letter_labels))
    r.add("right", format_word(rect.right, a.state_labels))
    emit(args, r.render())
    return 0


def cmd_trivial(args):
    a = load_automaton(args.path)
    qw = parse_word(args.word, a.state_labels, "--word")
    res = tree.triviality(a, qw)
    if res.trivial:
        line = f"trivial; {res.reachable} composed states"
    else:
        w = list(res.witness)
        w += [0] * max(0, args.depth - len(w))
        img = tree.apply_word(a, qw, w)
        sep = "" if all(len(n) == 1 for n in a.letter_labels) else " "
        show = lambda ws: sep.join(a.letter_labels[x] for x in ws)  # noqa: E731
        line = f"nontrivial; witness input {show(w)} -> {show(img)}"
    emit(args, line + "\n")
    if args.require and not res.trivial:
        return 1
    return 0


def cmd_normal_form(args):
    a = load_automaton(args.path)
    w = parse_mixed(args.word, a)
    hpart, vpart = cx.normal_form(a, w)
    c = cx.build_sigma(a)
    r = Report(args.porcelain)
    r.add("horizontal", edge_word(c, hpart))
    r.add("vertical", edge_word(c, vpart))
    r.add("trivial", yn(not hpart and not vpart))
    emit(args, r.render())
    return 0


def cmd_height(args):
    a = load_automaton(args.path)
    w = parse_mixed(args.word, a)
    wit = infinite_order_witness(a, w)
    r = Report(args.porcelain)
    r.add("height", f"({wit.height.horizontal}, {wit.height.vertical})")
    r.add("infinite_order", wit.verdict)
    emit(args, r.render())
    return 0


def cmd_lattice(args):
    c = build_lattice_complex(args.p, args.l)
    if args.emit == "complex":
        emit(args, cx.format_sqc(c))
    else:
        emit(args, au.format_aut(cx.automaton_from_vht(c)))
    return 0


def cmd_free_cert(args):
    a = load_automaton(args.automaton)
    pairing = parse_pairs(args.pairs, a)
    t0 = time.perf_counter()
    cert = freeness_certificate(a, args.max_len, pairing)
    wall = time.perf_counter() - t0
    r = Report(args.porcelain)
    r.add("automaton", cert.automaton_id)
    r.add("generators", a.state_count)
    r.add("pairing", ",".join(f"{a.state_labels[i]}:{a.state_labels[j]}" for i, j in enumerate(pairing) if i <= j))
    r.add("max_length", cert.max_length)
    r.add("words_by_length", " ".join(str(n) for n in cert.checked_by_length))
    r.add("words_checked", cert.words_checked)
    r.add("verdict", cert.verdict)
    if cert.relation is not None:
        r.add("relation", format_word(cert.relation, a.state_labels))
    r.text("-- timing")
    r.add("wall_seconds", f"{wall:.3f}")
    emit(args, r.render())
    return 1 if args.require and not cert.holds else 0


def cmd_growth(args):
    a = load_automaton(args.path)
    pairing = parse_pairs(args.pairs, a) if args.pairs is not None else None
    table = growth_table(a, args.max_len, args.depth, pairing, exact=args.exact)
    r = Report(args.porcelain)
    r.add("depth", table.depth)
    r.add("words", "reduced" if table.reduced else "all")
    r.add("exact", yn(table.exact))
    for k, n in enumerate(table.counts, 1):
        r.add(f"length[{k}]", n)
    emit(args, r.render())
    return 0


def cmd_examples(args):
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, a in all_fixtures().items():
        (out / f"{name}.aut").write_text(au.format_aut(a))
    c = build_lattice_complex(5, 13)
    (out / "lattice_5_13.sqc").write_text(cx.format_sqc(c))
    (out / "lattice_5_13.aut").write_text(au.format_aut(cx.automaton_from_vht(c)))
    for p in sorted(out.iterdir()):
        print(p)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(prog="bireversible", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help, path=True, output=False):
        p = sub.add_parser(name, help=help)
        if path:
            p.add_argument("path", nargs="?", default="-", help="input file, '-' for stdin")
        if output:
            p.add_argument("-o", "--output", help="write here instead of stdout")
        p.add_argument("--porcelain", action="store_true", help="key:value lines only")
        p.set_defaults(func=func)
        return p

    p = add("check", cmd_check, "property verdicts and the eight relatives")
    p.add_argument("--require", choices=["invertible", "reversible", "bireversible"])
    add("dual", cmd_dual, "dual automaton", output=True)
    add("invert", cmd_invert, "inverse automaton", output=True)
    add("complex", cmd_complex, "square complex of an automaton", output=True)
    p = add("link", cmd_link, "link of the vertex")
    p.add_argument("--require", action="store_true", help="exit 1 unless complete bipartite")
    p = add("from-complex", cmd_from_complex, "automaton of a complex", output=True)
    p.add_argument("--mode", choices=["directed", "vht"], default="directed")
    for name, func, text in (("act", cmd_act, "apply a state word"), ("rect", cmd_rect, "fill a rectangle")):
        p = add(name, func, text, output=name == "act")
        p.add_argument("--states", required=True)
        p.add_argument("--word", required=True)
    p = add("trivial", cmd_trivial, "does a state word act trivially")
    p.add_argument("--word", required=True)
    p.add_argument("--depth", type=int, default=3, help="pad the witness to this length")
    p.add_argument("--require", action="store_true", help="exit 1 unless trivial")
    p = add("normal-form", cmd_normal_form, "normal form in the fundamental group")
    p.add_argument("--word", required=True)
    p = add("height", cmd_height, "height of a path word")
    p.add_argument("--word", required=True)
    p = add("lattice", cmd_lattice, "complex or automaton from two primes", path=False, output=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--emit", choices=["complex", "automaton"], default="complex")
    p = add("free-cert", cmd_free_cert, "bounded freeness certificate", path=False)
    p.add_argument("--automaton", required=True)
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--pairs", default="")
    p.add_argument("--require", action="store_true", help="exit 1 if a relation is found")
    p = add("growth", cmd_growth, "distinct maps per word length")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--depth", type=int)
    p.add_argument("--pairs", help="count reduced words only, with this pairing")
    p.add_argument("--exact", action="store_true")
    p = add("examples", cmd_examples, "write bundled fixtures", path=False)
    p.add_argument("--dir", default="fixtures")
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (BireversibleError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(run())
