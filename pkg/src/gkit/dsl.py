"""Instance files: a small declarative language for groupoids, actions and checks.

Example::

    groupoid K = pairs {k1, k2}
    groupoid H = eqrel over {a, b, c} classes {{a, b}, {c}}
    groupoid KH = product(K, H)
    subgroupoid M of KH = wide arrows {((k1,k2),(a,b))} close
    check mackey K H G M L

Newlines only matter for ``check`` lines, whose arguments end at the end
of the line.  ``#`` starts a comment.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Iterator

from .actions import GroupoidAction, Side
from .bisets import Biset, double_coset_biset, regular_biset
from .common import tuple_label
from .errors import (
    ArityError,
    DSLSyntaxError,
    DuplicateName,
    GkitError,
    MalformedParams,
    UnresolvedReference,
)
from .groupoid import FiniteGroupoid, Subgroupoid, build_groupoid, cyclic_group, opposite, product

ATOM_RE = re.compile(r"[A-Za-z0-9_*^'.+]+")
TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>->)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<atom>[A-Za-z0-9_*^'.+]+)
  | (?P<punct>[{}(),=:])
""", re.VERBOSE)

CHECK_ARITY = {"validate": 1, "orbits": 1, "cosets": 3, "tensor": 3, "mackey": 5}
BISET_ARITY = {"regular": 1, "doublecoset": 3, "quotient": 1}


@dataclass(frozen=True)
class Token:
    kind: str  # atom | string | punct | eof
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = TOKEN_RE.match(text, pos)
        if m is None:
            raise DSLSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        s = m.group()
        if kind == "nl":
            line, col = line + 1, 1
        else:
            if kind == "string":
                out.append(Token("atom", json.loads(s), line, col))
            elif kind in ("atom", "punct", "arrow"):
                out.append(Token("punct" if kind == "arrow" else kind, s, line, col))
            col += len(s)
        pos = m.end()
    out.append(Token("eof", "", line, col))
    return out


# ---------------------------------------------------------------------------
# declarations


@dataclass(frozen=True)
class Span:
    line: int
    col: int


@dataclass(frozen=True)
class GroupoidDecl:
    name: str
    builder: str
    params: tuple
    span: Span = field(default=Span(0, 0), compare=False)


@dataclass(frozen=True)
class SubgroupoidDecl:
    name: str
    parent: str
    wide: bool
    arrows: tuple[str, ...]
    close: bool
    span: Span = field(default=Span(0, 0), compare=False)


@dataclass(frozen=True)
class ActionDecl:
    name: str
    side: str
    groupoid: str
    carrier: tuple[str, ...]
    structure: tuple[tuple[str, str], ...]
    act: tuple[tuple[tuple[str, str], str], ...]
    span: Span = field(default=Span(0, 0), compare=False)


@dataclass(frozen=True)
class BisetDecl:
    name: str
    kind: str  # regular | doublecoset | quotient | explicit
    args: tuple[str, ...]
    tables: tuple = ()
    span: Span = field(default=Span(0, 0), compare=False)


@dataclass(frozen=True)
class CheckDecl:
    kind: str
    args: tuple[str, ...]
    span: Span = field(default=Span(0, 0), compare=False)


@dataclass(frozen=True)
class InstanceSpec:
    declarations: tuple

    def names(self) -> list[str]:
        return [d.name for d in self.declarations if not isinstance(d, CheckDecl)]

    def get(self, name: str):
        for d in self.declarations:
            if not isinstance(d, CheckDecl) and d.name == name:
                return d
        raise KeyError(name)

    @property
    def checks(self) -> list[CheckDecl]:
        return [d for d in self.declarations if isinstance(d, CheckDecl)]


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self.kinds: dict[str, str] = {}

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, *expected: str, tok: Token | None = None):
        t = tok or self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise DSLSyntaxError(f"{msg}, found {found}", t.line, t.col, expected)

    def next(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def accept(self, text: str) -> bool:
        if self.tok.kind != "eof" and self.tok.text == text and self.tok.kind in ("punct", "atom"):
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> Token:
        if not self.accept(text):
            self.error("syntax error", repr(text))
        return self.toks[self.i - 1]

    def atom(self, what: str = "name") -> str:
        if self.tok.kind != "atom":
            self.error("syntax error", what)
        return self.next().text

    def ref(self, kind: str | tuple[str, ...]) -> str:
        t = self.tok
        name = self.atom("name")
        kinds = (kind,) if isinstance(kind, str) else kind
        if name not in self.kinds:
            raise UnresolvedReference(f"undeclared name {name!r}", t.line, t.col)
        if self.kinds[name] not in kinds:
            raise UnresolvedReference(f"{name!r} is a {self.kinds[name]}, expected {' or '.join(kinds)}",
                                      t.line, t.col)
        return name

    def label(self) -> str:
        """An atom, or a parenthesized tuple of labels (rendered like product labels)."""
        if self.accept("("):
            parts = [self.label()]
            while self.accept(","):
                parts.append(self.label())
            self.expect(")")
            return tuple_label(*parts)
        return self.atom("label")

    def label_set(self) -> tuple[str, ...]:
        self.expect("{")
        out: list[str] = []
        if not self.accept("}"):
            out.append(self.label())
            while self.accept(","):
                out.append(self.label())
            self.expect("}")
        return tuple(out)

    def set_of_sets(self) -> tuple[tuple[str, ...], ...]:
        self.expect("{")
        out = []
        if not self.accept("}"):
            out.append(self.label_set())
            while self.accept(","):
                out.append(self.label_set())
            self.expect("}")
        return tuple(out)

    def bindings(self, keyed_pairs: bool) -> tuple:
        """``{k: v, ...}`` where keys are labels, or ``(a, b)`` pairs when ``keyed_pairs``."""
        self.expect("{")
        out = []
        if self.accept("}"):
            return ()
        while True:
            if keyed_pairs:
                self.expect("(")
                a = self.label()
                self.expect(",")
                b = self.label()
                self.expect(")")
                key = (a, b)
            else:
                key = self.label()
            self.expect(":")
            out.append((key, self.label()))
            if self.accept("}"):
                return tuple(out)
            self.expect(",")

    def declare(self, name: str, kind: str, tok: Token):
        if name in self.kinds:
            raise DuplicateName(f"{name!r} declared twice", tok.line, tok.col)
        self.kinds[name] = kind

    # declarations ---------------------------------------------------------
    def parse(self) -> InstanceSpec:
        decls = []
        while self.tok.kind != "eof":
            t = self.tok
            if self.accept("groupoid"):
                decls.append(self.groupoid(t))
            elif self.accept("subgroupoid"):
                decls.append(self.subgroupoid(t))
            elif self.accept("action"):
                decls.append(self.action(t))
            elif self.accept("biset"):
                decls.append(self.biset(t))
            elif self.accept("check"):
                decls.append(self.check(t))
            else:
                self.error("expected a declaration", "'groupoid'", "'subgroupoid'", "'action'", "'biset'", "'check'")
        return InstanceSpec(tuple(decls))

    def groupoid(self, t0: Token) -> GroupoidDecl:
        nt = self.tok
        name = self.atom()
        self.expect("=")
        span = Span(t0.line, t0.col)
        kw = self.tok
        if self.accept("trivial") or self.accept("pairs"):
            decl = GroupoidDecl(name, kw.text, (("objects", self.label_set()),), span)
        elif self.accept("eqrel"):
            self.expect("over")
            objs = self.label_set()
            self.expect("classes")
            decl = GroupoidDecl(name, "eqrel", (("objects", objs), ("classes", self.set_of_sets())), span)
        elif self.accept("group"):
            self.expect("cyclic")
            t = self.tok
            n = self.atom("integer")
            if not n.isdigit() or int(n) < 1:
                raise DSLSyntaxError("cyclic group order must be a positive integer", t.line, t.col, ("integer",))
            decl = GroupoidDecl(name, "cyclic", (("order", int(n)),), span)
        elif self.accept("product"):
            args = self.name_args(("groupoid",), 2, "product")
            decl = GroupoidDecl(name, "product", (("left", args[0]), ("right", args[1])), span)
        elif self.accept("opposite"):
            args = self.name_args(("groupoid",), 1, "opposite")
            decl = GroupoidDecl(name, "opposite", (("groupoid", args[0]),), span)
        elif self.accept("table"):
            decl = GroupoidDecl(name, "table", self.table(), span)
        else:
            self.error("unknown groupoid builder", "'trivial'", "'pairs'", "'eqrel'", "'group'",
                       "'product'", "'opposite'", "'table'")
        self.declare(name, "groupoid", nt)
        return decl

    def name_args(self, kinds, arity: int, what: str) -> tuple[str, ...]:
        t = self.expect("(")
        args = []
        if not self.accept(")"):
            args.append(self.ref(kinds))
            while self.accept(","):
                args.append(self.ref(kinds))
            self.expect(")")
        if len(args) != arity:
            raise ArityError(f"{what} takes {arity} argument(s), got {len(args)}", t.line, t.col)
        return tuple(args)

    def table(self) -> tuple:
        self.expect("{")
        self.expect("objects")
        objs = self.label_set()
        self.expect("arrows")
        self.expect("{")
        arrows = []
        if not self.accept("}"):
            while True:
                lab = self.label()
                self.expect(":")
                s = self.label()
                self.expect("->")
                t = self.label()
                arrows.append((lab, s, t))
                if self.accept("}"):
                    break
                self.expect(",")
        self.expect("ident")
        ident = self.bindings(False)
        self.expect("inv")
        inv = self.bindings(False)
        self.expect("comp")
        comp = self.bindings(True)
        self.expect("}")
        return (("objects", objs), ("arrows", tuple(arrows)), ("ident", ident), ("inv", inv), ("comp", comp))

    def subgroupoid(self, t0: Token) -> SubgroupoidDecl:
        nt = self.tok
        name = self.atom()
        self.expect("of")
        parent = self.ref("groupoid")
        self.expect("=")
        wide = self.accept("wide")
        self.expect("arrows")
        arrows = self.label_set()
        close = self.accept("close")
        self.declare(name, "subgroupoid", nt)
        return SubgroupoidDecl(name, parent, wide, arrows, close, Span(t0.line, t0.col))

    def action(self, t0: Token) -> ActionDecl:
        nt = self.tok
        name = self.atom()
        if self.accept("left"):
            side = "left"
        elif self.accept("right"):
            side = "right"
        else:
            self.error("syntax error", "'left'", "'right'")
        self.expect("of")
        grp = self.ref("groupoid")
        self.expect("{")
        self.expect("carrier")
        carrier = self.label_set()
        self.expect("map")
        structure = self.bindings(False)
        self.expect("act")
        act = self.bindings(True)
        self.expect("}")
        self.declare(name, "action", nt)
        return ActionDecl(name, side, grp, carrier, structure, act, Span(t0.line, t0.col))

    def biset(self, t0: Token) -> BisetDecl:
        nt = self.tok
        name = self.atom()
        span = Span(t0.line, t0.col)
        if self.accept("over"):
            self.expect("(")
            H = self.ref("groupoid")
            self.expect(",")
            G = self.ref("groupoid")
            self.expect(")")
            self.expect("{")
            self.expect("carrier")
            carrier = self.label_set()
            self.expect("theta")
            theta = self.bindings(False)
            self.expect("sigma")
            sigma = self.bindings(False)
            self.expect("left")
            left = self.bindings(True)
            self.expect("right")
            right = self.bindings(True)
            self.expect("}")
            decl = BisetDecl(name, "explicit", (H, G),
                             (("carrier", carrier), ("theta", theta), ("sigma", sigma),
                              ("left", left), ("right", right)), span)
        else:
            self.expect("=")
            kw = self.tok
            kind = self.atom("biset constructor")
            if kind not in BISET_ARITY:
                self.error("unknown biset constructor", "'regular'", "'doublecoset'", "'quotient'", tok=kw)
            kinds = {"regular": ("groupoid",), "quotient": ("subgroupoid",),
                     "doublecoset": ("groupoid", "subgroupoid")}[kind]
            args = self.name_args(kinds, BISET_ARITY[kind], kind)
            decl = BisetDecl(name, kind, args, (), span)
        self.declare(name, "biset", nt)
        return decl

    def check(self, t0: Token) -> CheckDecl:
        line = t0.line
        kw = self.tok
        kind = self.atom("check kind")
        if kind not in CHECK_ARITY:
            self.error("unknown check", *(repr(k) for k in CHECK_ARITY), tok=kw)
        toks = []
        while self.tok.kind != "eof" and self.tok.line == line:
            toks.append(self.next())
        if kind == "cosets" and toks and toks[-1].text in ("left", "right"):
            side = toks.pop().text
        elif kind == "cosets":
            side = None
        if kind == "cosets" and side is None:
            if len(toks) == 2:
                raise DSLSyntaxError("cosets check needs a side", t0.line, t0.col, ("'left'", "'right'"))
        want = CHECK_ARITY[kind] - (1 if kind == "cosets" else 0)
        if len(toks) != want:
            raise ArityError(f"check {kind} takes {want} name(s), got {len(toks)}", t0.line, t0.col)
        allowed = {
            "validate": [("groupoid", "subgroupoid", "action", "biset")],
            "orbits": [("action", "biset")],
            "cosets": [("groupoid",), ("subgroupoid",)],
            "tensor": [("biset",), ("groupoid",), ("biset",)],
            "mackey": [("groupoid",)] * 3 + [("subgroupoid",)] * 2,
        }[kind]
        args = []
        for t, kinds in zip(toks, allowed):
            if t.kind != "atom":
                raise DSLSyntaxError(f"expected a name, found {t.text!r}", t.line, t.col, ("name",))
            if t.text not in self.kinds:
                raise UnresolvedReference(f"undeclared name {t.text!r}", t.line, t.col)
            if self.kinds[t.text] not in kinds:
                raise UnresolvedReference(f"{t.text!r} is a {self.kinds[t.text]}, expected {' or '.join(kinds)}",
                                          t.line, t.col)
            args.append(t.text)
        if kind == "cosets":
            args.append(side)
        return CheckDecl(kind, tuple(args), Span(t0.line, t0.col))


def parse_spec(text: str) -> InstanceSpec:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printer


def _fmt_label(lab: str) -> str:
    if ATOM_RE.fullmatch(lab):
        return lab
    try:
        p = _Parser(lab)
        if p.tok.text == "(":
            if p.label() == lab and p.tok.kind == "eof":
                return lab
    except GkitError:
        pass
    return json.dumps(lab)


def _fmt_set(labels) -> str:
    return "{" + ", ".join(_fmt_label(x) for x in labels) + "}"


def _fmt_bind(pairs, keyed: bool) -> str:
    items = []
    for key, val in pairs:
        k = f"({_fmt_label(key[0])}, {_fmt_label(key[1])})" if keyed else _fmt_label(key)
        items.append(f"{k}: {_fmt_label(val)}")
    return "{" + ", ".join(items) + "}"


def format_spec(spec: InstanceSpec) -> str:
    """Canonical text; parsing it gives back an equal :class:`InstanceSpec`."""
    lines: list[str] = []
    for d in spec.declarations:
        if isinstance(d, GroupoidDecl):
            p = dict(d.params)
            if d.builder in ("trivial", "pairs"):
                body = f"{d.builder} {_fmt_set(p['objects'])}"
            elif d.builder == "eqrel":
                cls = "{" + ", ".join(_fmt_set(c) for c in p["classes"]) + "}"
                body = f"eqrel over {_fmt_set(p['objects'])} classes {cls}"
            elif d.builder == "cyclic":
                body = f"group cyclic {p['order']}"
            elif d.builder == "product":
                body = f"product({p['left']}, {p['right']})"
            elif d.builder == "opposite":
                body = f"opposite({p['groupoid']})"
            else:
                arrows = ", ".join(f"{_fmt_label(a)}: {_fmt_label(s)} -> {_fmt_label(t)}" for a, s, t in p["arrows"])
                body = ("table {\n"
                        f"  objects {_fmt_set(p['objects'])}\n"
                        f"  arrows {{{arrows}}}\n"
                        f"  ident {_fmt_bind(p['ident'], False)}\n"
                        f"  inv {_fmt_bind(p['inv'], False)}\n"
                        f"  comp {_fmt_bind(p['comp'], True)}\n"
                        "}")
            lines.append(f"groupoid {d.name} = {body}")
        elif isinstance(d, SubgroupoidDecl):
            wide = "wide " if d.wide else ""
            close = " close" if d.close else ""
            lines.append(f"subgroupoid {d.name} of {d.parent} = {wide}arrows {_fmt_set(d.arrows)}{close}")
        elif isinstance(d, ActionDecl):
            lines.append(f"action {d.name} {d.side} of {d.groupoid} {{\n"
                         f"  carrier {_fmt_set(d.carrier)}\n"
                         f"  map {_fmt_bind(d.structure, False)}\n"
                         f"  act {_fmt_bind(d.act, True)}\n}}")
        elif isinstance(d, BisetDecl):
            if d.kind == "explicit":
                t = dict(d.tables)
                lines.append(f"biset {d.name} over ({d.args[0]}, {d.args[1]}) {{\n"
                             f"  carrier {_fmt_set(t['carrier'])}\n"
                             f"  theta {_fmt_bind(t['theta'], False)}\n"
                             f"  sigma {_fmt_bind(t['sigma'], False)}\n"
                             f"  left {_fmt_bind(t['left'], True)}\n"
                             f"  right {_fmt_bind(t['right'], True)}\n}}")
            else:
                lines.append(f"biset {d.name} = {d.kind}({', '.join(d.args)})")
        else:
            lines.append(f"check {d.kind} {' '.join(d.args)}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class Environment:
    spec: InstanceSpec
    objects: dict[str, object]

    def __getitem__(self, name: str):
        try:
            return self.objects[name]
        except KeyError:
            raise UnresolvedReference(f"undeclared name {name!r}") from None

    def groupoid(self, name: str) -> FiniteGroupoid:
        return self._typed(name, FiniteGroupoid, "groupoid")

    def subgroupoid(self, name: str) -> Subgroupoid:
        return self._typed(name, Subgroupoid, "subgroupoid")

    def action(self, name: str) -> GroupoidAction:
        return self._typed(name, GroupoidAction, "action")

    def biset(self, name: str) -> Biset:
        return self._typed(name, Biset, "biset")

    def _typed(self, name, cls, what):
        obj = self[name]
        if not isinstance(obj, cls):
            raise UnresolvedReference(f"{name!r} is not a {what}")
        return obj


def _explicit_groupoid(name: str, p: dict) -> FiniteGroupoid:
    objs = tuple(p["objects"])
    oidx = {o: i for i, o in enumerate(objs)}
    arrows = tuple(a for a, _, _ in p["arrows"])
    aidx = {a: i for i, a in enumerate(arrows)}
    try:
        src = tuple(oidx[s] for _, s, _ in p["arrows"])
        tgt = tuple(oidx[t] for _, _, t in p["arrows"])
        ident_map = dict(p["ident"])
        ident = tuple(aidx[ident_map[o]] for o in objs)
        inv_map = dict(p["inv"])
        inv = tuple(aidx[inv_map[a]] for a in arrows)
        comp = {(aidx[a], aidx[b]): aidx[c] for (a, b), c in p["comp"]}
    except KeyError as exc:
        raise MalformedParams(f"table for {name} mentions or misses {exc.args[0]!r}") from None
    return FiniteGroupoid(objs, arrows, src, tgt, ident, inv, comp, name=name)


def evaluate(spec: InstanceSpec) -> Environment:
    """Build every declared object.  Tables are not validated here."""
    env: dict[str, object] = {}
    for d in spec.declarations:
        if isinstance(d, GroupoidDecl):
            p = dict(d.params)
            if d.builder == "product":
                env[d.name] = product(env[p["left"]], env[p["right"]])
            elif d.builder == "opposite":
                env[d.name] = opposite(env[p["groupoid"]])
            elif d.builder == "cyclic":
                env[d.name] = cyclic_group(p["order"], name=d.name)
            elif d.builder == "table":
                env[d.name] = _explicit_groupoid(d.name, p)
            else:
                env[d.name] = build_groupoid(d.builder, name=d.name, **p)
        elif isinstance(d, SubgroupoidDecl):
            env[d.name] = Subgroupoid.from_labels(env[d.parent], d.arrows, wide=d.wide, close=d.close, name=d.name)
        elif isinstance(d, ActionDecl):
            env[d.name] = GroupoidAction.from_labels(d.side, env[d.groupoid], d.carrier, dict(d.structure),
                                                     dict(d.act), fill_identities=True, name=d.name)
        elif isinstance(d, BisetDecl):
            env[d.name] = _eval_biset(d, env)
    return Environment(spec, env)


def _eval_biset(d: BisetDecl, env: dict) -> Biset:
    from .mackey import left_quotient_biset

    if d.kind == "regular":
        return regular_biset(env[d.args[0]])
    if d.kind == "doublecoset":
        return double_coset_biset(env[d.args[0]], env[d.args[1]], env[d.args[2]])
    if d.kind == "quotient":
        return left_quotient_biset(env[d.args[0]])
    t = dict(d.tables)
    return Biset.from_labels(env[d.args[0]], env[d.args[1]], t["carrier"], dict(t["theta"]), dict(t["sigma"]),
                             dict(t["left"]), dict(t["right"]), fill_identities=True, name=d.name)


def load(text: str) -> Environment:
    return evaluate(parse_spec(text))


def iter_entities(env: Environment) -> Iterator[tuple[str, object]]:
    for name in env.spec.names():
        yield name, env.objects[name]
