"""Text and DOT renderings of Dynkin diagrams."""

from __future__ import annotations

from typing import Iterable

from .gcm import GCM

_PLAIN, _WHITE, _BLACK = "○", "○", "●"
_SYMMETRIC = {1: "—", 2: "=", 3: "≡"}
# arrow points at the shorter root
_LEFT = {2: "<=", 3: "<≡"}
_RIGHT = {2: "=>", 3: "≡>"}


def bond(gcm: GCM, i: int, j: int) -> str | None:
    """Bond symbol between vertex positions i < j, read left to right."""
    a, b = abs(gcm.entries[i][j]), abs(gcm.entries[j][i])
    if a == 0:
        return None
    if a * b > 3:
        return f"({a},{b})"
    if a == b:
        return _SYMMETRIC[a]
    # |a_ij| > |a_ji| means alpha_i is the shorter root
    return _LEFT[a] if a > b else _RIGHT[b]


def _marks(gcm: GCM, J: Iterable | None) -> dict[str, str]:
    if J is None:
        return {lab: _PLAIN for lab in gcm.labels}
    J = {str(x) for x in J}
    return {lab: _WHITE if lab in J else _BLACK for lab in gcm.labels}


def render_text(gcm: GCM, J: Iterable | None = None) -> str:
    marks = _marks(gcm, J)
    lines = ["nodes: " + " ".join(f"{marks[lab]}{lab}" for lab in gcm.labels)]
    edges = []
    for i in range(gcm.n):
        for j in range(i + 1, gcm.n):
            sym = bond(gcm, i, j)
            if sym is not None:
                edges.append(f"  {gcm.labels[i]} {sym} {gcm.labels[j]}")
    lines.append("edges:" if edges else "edges: none")
    lines.extend(edges)
    return "\n".join(lines) + "\n"


def render_dot(gcm: GCM, J: Iterable | None = None) -> str:
    marks = _marks(gcm, J)
    out = ["graph dynkin {", "  node [shape=circle, fixedsize=true, width=0.3, fontsize=9];"]
    for lab in gcm.labels:
        fill = "black" if marks[lab] == _BLACK else "white"
        font = "white" if fill == "black" else "black"
        out.append(f'  "{lab}" [label="{lab}", style=filled, fillcolor={fill}, fontcolor={font}];')
    for i in range(gcm.n):
        for j in range(i + 1, gcm.n):
            sym = bond(gcm, i, j)
            if sym is None:
                continue
            attrs = []
            if sym.startswith("("):
                attrs.append(f'label="{sym}"')
            else:
                mult = 3 if "≡" in sym else 2 if "=" in sym else 1
                if mult > 1:
                    attrs.append('color="' + ":".join(["black"] * mult) + '"')
                if "<" in sym:
                    attrs += ["dir=back", "arrowtail=normal"]
                elif ">" in sym:
                    attrs += ["dir=forward", "arrowhead=normal"]
            suffix = f" [{', '.join(attrs)}]" if attrs else ""
            out.append(f'  "{gcm.labels[i]}" -- "{gcm.labels[j]}"{suffix};')
    out.append("}")
    return "\n".join(out) + "\n"


def render_diagram(gcm: GCM, J: Iterable | None = None) -> tuple[str, str]:
    """(text, dot) renderings; J vertices are drawn white and the rest black."""
    return render_text(gcm, J), render_dot(gcm, J)
