"""Serializing results: JSON envelopes, DOT graphs, plain text and figures."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .actions import GroupoidAction, orbits, stabilizer
from .bisets import Biset, double_orbits
from .common import Partition, ValidationReport
from .cosets import CosetSpace
from .errors import UnsupportedFormat
from .groupoid import FiniteGroupoid, Subgroupoid
from .mackey import MackeyReport
from .tensor import TensorProductBiset

FORMATS = ("json", "dot", "text")

REPORT_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "gkit report",
    "type": "object",
    "required": ["tool", "version", "command", "inputs", "result", "timings_ms"],
    "additionalProperties": False,
    "properties": {
        "tool": {"const": "gkit"},
        "version": {"type": "string"},
        "command": {"enum": ["validate", "orbits", "cosets", "tensor", "mackey", "random"]},
        "seed": {"type": "integer"},
        "inputs": {"type": "object"},
        "result": {"type": ["object", "array"]},
        "verdict": {"type": "boolean"},
        "timings_ms": {"type": "object", "additionalProperties": {"type": "number"}},
    },
    "$defs": {
        "validation": {
            "type": "object",
            "required": ["ok", "violation_count", "violations", "info"],
            "properties": {
                "ok": {"type": "boolean"},
                "violation_count": {"type": "integer", "minimum": 0},
                "violations": {"type": "array", "items": {
                    "type": "object", "required": ["axiom", "message", "witness"]}},
                "info": {"type": "object"},
            },
        },
        "mackey": {
            "type": "object",
            "required": ["verdict", "lhs_size", "rhs_size", "summands", "checks", "sizes"],
            "properties": {
                "verdict": {"type": "boolean"},
                "lhs_size": {"type": "integer", "minimum": 0},
                "rhs_size": {"type": "integer", "minimum": 0},
                "summands": {"type": "array", "items": {
                    "type": "object", "required": ["label", "size", "denominator"]}},
                "checks": {"type": "object", "additionalProperties": {"type": "boolean"}},
                "sizes": {"type": "object"},
            },
        },
    },
}


@dataclass
class Report:
    """Top-level envelope written by every CLI command."""

    command: str
    inputs: dict
    result: Any
    seed: int | None = None
    verdict: bool | None = None
    timings_ms: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        out: dict = {"tool": "gkit", "version": __version__, "command": self.command}
        if self.seed is not None:
            out["seed"] = self.seed
        out["inputs"] = self.inputs
        out["result"] = to_result(self.result)
        if self.verdict is not None:
            out["verdict"] = self.verdict
        out["timings_ms"] = dict(self.timings_ms)
        return out


# ---------------------------------------------------------------------------
# result shapes


def groupoid_summary(G: FiniteGroupoid) -> dict:
    return {
        "name": G.name,
        "objects": list(G.objects),
        "arrows": [{"label": G.arrows[a], "source": G.objects[G.src[a]], "target": G.objects[G.tgt[a]]}
                   for a in range(G.n_arrows)],
    }


def subgroupoid_summary(S: Subgroupoid) -> dict:
    P = S.parent
    return {"name": S.name, "parent": P.name, "wide": S.wide,
            "objects": [P.objects[o] for o in sorted(S.objs)], "arrows": [P.arrows[a] for a in sorted(S.arrs)]}


def partition_result(p: Partition, labels=None) -> list:
    return p.labelled(labels) if labels is not None else [list(b) for b in p.blocks]


def orbits_result(a: GroupoidAction | Biset) -> dict:
    if isinstance(a, Biset):
        part = double_orbits(a)
        return {"kind": "biset", "count": len(part), "orbits": partition_result(part, a.carrier)}
    part, reps = orbits(a)
    G = a.groupoid
    return {
        "kind": "action",
        "side": a.side.value,
        "count": len(part),
        "orbits": partition_result(part, a.carrier),
        "stabilizers": [{"rep": a.carrier[r], "object": G.objects[a.structure[r]],
                         "arrows": [G.arrows[g] for g in sorted(stabilizer(a, r).arrows)]} for r in reps],
    }


def coset_result(space: CosetSpace) -> dict:
    G = space.groupoid
    return {
        "side": space.side.value,
        "groupoid": G.name,
        "sub": space.sub.name,
        "raw_pairs": len(space.raw),
        "count": len(space),
        "classes": [{"label": space.action.carrier[c], "object": G.objects[space.action.structure[c]],
                     "members": [space.raw_label(p) for p in cls.members]}
                    for c, cls in enumerate(space.classes)],
    }


def tensor_result(tp: TensorProductBiset) -> dict:
    X, Y = tp.left, tp.right
    return {
        "raw_pairs": len(tp.raw),
        "count": len(tp),
        "classes": [{"label": tp.result.carrier[c],
                     "members": [f"({X.carrier[x]},{Y.carrier[y]})" for x, y in cls.members]}
                    for c, cls in enumerate(tp.classes)],
    }


def mackey_result(r: MackeyReport, detail: bool = True) -> dict:
    out = {
        "verdict": r.verdict,
        "lhs_size": len(r.lhs.result.carrier),
        "rhs_size": len(r.rhs.carrier),
        "summands": [{"label": s.label, "size": len(s.biset.carrier),
                      "denominator": sorted(s.denominator.labels())} for s in r.summands],
        "checks": dict(r.checks),
        "sizes": dict(r.sizes),
    }
    if r.counterexample is not None:
        out["counterexample"] = r.counterexample
    if detail:
        lhs, rhs = r.lhs.result, r.rhs
        out["bijection"] = [[lhs.carrier[i], None if c is None else rhs.carrier[c]]
                            for i, c in enumerate(r.class_map)]
    return out


def to_result(obj) -> Any:
    if isinstance(obj, ValidationReport):
        return obj.to_dict()
    if isinstance(obj, Partition):
        return partition_result(obj)
    if isinstance(obj, CosetSpace):
        return coset_result(obj)
    if isinstance(obj, TensorProductBiset):
        return tensor_result(obj)
    if isinstance(obj, MackeyReport):
        return mackey_result(obj)
    if isinstance(obj, FiniteGroupoid):
        return groupoid_summary(obj)
    if isinstance(obj, Subgroupoid):
        return subgroupoid_summary(obj)
    if isinstance(obj, Report):
        return obj.to_dict()
    return obj


# ---------------------------------------------------------------------------
# emitters


def _dot_id(s: str) -> str:
    return json.dumps(s, ensure_ascii=False)


def groupoid_dot(G: FiniteGroupoid, identities: bool = False) -> str:
    """One node per object, one edge ``s(g) -> t(g)`` per arrow (identities optional)."""
    ids = set(G.ident)
    lines = [f"digraph {_dot_id(G.name or 'G')} {{"]
    lines += [f"  {_dot_id(o)};" for o in G.objects]
    for a in range(G.n_arrows):
        if a in ids and not identities:
            continue
        lines.append(f"  {_dot_id(G.objects[G.src[a]])} -> {_dot_id(G.objects[G.tgt[a]])} "
                     f"[label={_dot_id(G.arrows[a])}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out += _text(v, indent + 1)
            else:
                out.append(f"{pad}{k}: {_scalar(v)}")
        return out
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return [pad + ", ".join(_scalar(v) for v in obj)]
        out = []
        for v in obj:
            sub = _text(v, indent + 1)
            out.append(pad + "- " + sub[0].lstrip())
            out += sub[1:]
        return out
    return [pad + _scalar(obj)]


def _scalar(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "-"
    if isinstance(v, (list, dict)):
        return "[]" if isinstance(v, list) else "{}"
    return str(v)


def emit_report(result, fmt: str = "json", identities: bool = False) -> bytes:
    """Serialize ``result`` deterministically.

    ``dot`` accepts a groupoid, or an action drawn as its translation groupoid.
    """
    if fmt == "json":
        return (json.dumps(to_result(result), indent=2, ensure_ascii=False) + "\n").encode()
    if fmt == "dot":
        if isinstance(result, GroupoidAction):
            from .actions import translation_groupoid

            T, _ = translation_groupoid(result, check=False)
            return groupoid_dot(T, identities).encode()
        if isinstance(result, FiniteGroupoid):
            return groupoid_dot(result, identities).encode()
        raise UnsupportedFormat(f"dot output needs a groupoid or an action, not {type(result).__name__}")
    if fmt == "text":
        return ("\n".join(_text(to_result(result))) + "\n").encode()
    raise UnsupportedFormat(f"unknown format {fmt!r}; use one of {', '.join(FORMATS)}")


# ---------------------------------------------------------------------------
# figures


def plot_mackey(r: MackeyReport, path: str | Path) -> Path:
    """Bar chart of summand sizes stacked against the left-hand size."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    sizes = [len(s.biset.carrier) for s in r.summands]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    bottom = 0
    for i, s in enumerate(sizes):
        ax.bar("rhs", s, bottom=bottom, label=r.summands[i].label if len(sizes) <= 8 else None)
        bottom += s
    ax.bar("lhs", len(r.lhs.result.carrier), color="0.6")
    ax.set_ylabel("elements")
    ax.set_title(f"verdict: {'true' if r.verdict else 'false'}")
    if len(sizes) <= 8:
        ax.legend(fontsize=7, loc="upper left", bbox_to_anchor=(1, 1))
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_random(rows: list[dict], path: str | Path) -> Path:
    """Left-hand size against summand count, one point per instance."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    path = Path(path)
    fig, ax = plt.subplots(figsize=(5, 4))
    ok = [r for r in rows if r["verdict"]]
    bad = [r for r in rows if not r["verdict"]]
    for group, color, lab in ((ok, "tab:blue", "verdict true"), (bad, "tab:red", "verdict false")):
        if group:
            ax.scatter([r["sizes"]["X_orbits"] for r in group], [r["sizes"]["lhs"] for r in group],
                       s=12, c=color, label=lab)
    ax.set_xlabel("summands")
    ax.set_ylabel("|lhs|")
    ax.set_yscale("symlog")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path
