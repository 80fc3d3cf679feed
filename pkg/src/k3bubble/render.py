"""Deterministic text renderings of bubbling trees and collision trees."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from . import __version__
from .ak import DBSNode
from .exact import format_rational, format_scalar
from .pbt import PBTNode, PBTree

__all__ = [
    "TreeDocument",
    "render",
    "pbt_payload",
    "dbs_payload",
    "input_digest",
    "canonical_json",
]

TOOL = "k3bubble"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def input_digest(canonical_input) -> str:
    """SHA-256 of the canonical JSON rendering of a parsed input."""
    return "sha256:" + hashlib.sha256(canonical_json(canonical_input).encode()).hexdigest()


def _rep_text(rep) -> str:
    return "[" + ",".join(format_scalar(c) for c in rep) + "]"


def _sings_text(node: PBTNode) -> str:
    return ",".join(str(s.ade) for s in node.singularities) or "none"


def _scale_text(exponent) -> str:
    return f"|t|^(-{format_rational(exponent)})"


def pbt_line(node: PBTNode) -> str:
    return (
        f"{_rep_text(node.leading or node.rep)} @ {node.subspace.ade}, sings: {_sings_text(node)}, "
        f"k={node.order}, scale={_scale_text(node.cumulative_exponent)}"
    )


def dbs_line(node: DBSNode) -> str:
    return "{" + ",".join(map(str, node.indices)) + "}" + f" level={node.level}"


def pbt_payload(node: PBTNode) -> dict:
    return {
        "rep": [format_scalar(c) for c in node.rep],
        "leading": [format_scalar(c) for c in node.leading],
        "order": node.order,
        "cumulative_exponent": format_rational(node.cumulative_exponent),
        "ambient": str(node.subspace.ade),
        "simple_base": [list(b) for b in node.subspace.simple_base],
        "singularities": [str(s.ade) for s in node.singularities],
        "smooth": not node.singularities,
        "children": [pbt_payload(c) for c in node.children],
    }


def dbs_payload(node: DBSNode) -> dict:
    return {
        "indices": list(node.indices),
        "level": node.level,
        "children": [dbs_payload(c) for c in node.children],
    }


@dataclass
class TreeDocument:
    kind: str
    tree: dict
    metadata: dict = field(default_factory=dict)

    def to_json(self) -> str:
        doc = {"kind": self.kind, "metadata": self.metadata, "tree": self.tree}
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TreeDocument":
        doc = json.loads(text)
        for key in ("kind", "metadata", "tree"):
            if key not in doc:
                raise ValueError(f"tree document lacks {key!r}")
        return cls(kind=doc["kind"], tree=doc["tree"], metadata=doc["metadata"])


def _ascii(node, line, depth=0) -> list[str]:
    out = ["  " * depth + line(node)]
    for c in node.children:
        out.extend(_ascii(c, line, depth + 1))
    return out


def _dot(root, line, name) -> str:
    lines = [f"digraph {name} {{", "  node [shape=box];"]
    counter = [0]

    def visit(node) -> str:
        nid = f"n{counter[0]}"
        counter[0] += 1
        label = line(node).replace("\\", "\\\\").replace('"', '\\"')
        lines.append(f'  {nid} [label="{label}"];')
        for c in node.children:
            cid = visit(c)
            lines.append(f"  {nid} -> {cid};")
        return nid

    visit(root)
    lines.append("}")
    return "\n".join(lines) + "\n"


def render(tree, fmt: str = "ascii", digest: str | None = None) -> str:
    """Render a PBTree/PBTNode or DBSNode as ``ascii``, ``json`` or ``dot``."""
    if isinstance(tree, PBTree):
        tree = tree.root
    if isinstance(tree, PBTNode):
        kind, line, payload = "pbt", pbt_line, pbt_payload
    elif isinstance(tree, DBSNode):
        kind, line, payload = "dbs", dbs_line, dbs_payload
    else:
        raise TypeError(f"cannot render {type(tree).__name__}")
    if fmt == "ascii":
        return "\n".join(_ascii(tree, line)) + "\n"
    if fmt == "dot":
        return _dot(tree, line, kind)
    if fmt == "json":
        meta = {"tool": TOOL, "version": __version__}
        if digest is not None:
            meta["input_digest"] = digest
        return TreeDocument(kind=kind, tree=payload(tree), metadata=meta).to_json()
    raise ValueError(f"unknown format {fmt!r}")
