"""Static SVG Venn diagrams for two- and three-variable diagram documents.

Pure string templating with fixed coordinates and fixed number formatting,
so identical documents render to byte-identical SVG.
"""

from __future__ import annotations

from .core import DomainError

# cell label anchor per atom subset (keys are sorted index tuples)
_CELL_XY = {
    2: {
        (1,): (170, 225),
        (2,): (470, 225),
        (1, 2): (320, 225),
    },
    3: {
        (1,): (225, 155),
        (2,): (455, 155),
        (3,): (340, 375),
        (1, 2): (340, 140),
        (1, 3): (258, 272),
        (2, 3): (422, 272),
        (1, 2, 3): (340, 225),
    },
}

_CIRCLES = {
    2: [(250, 225, 145), (390, 225, 145)],
    3: [(275, 190, 135), (405, 190, 135), (340, 300, 135)],
}

_FILLS = ["#4878a8", "#a85454", "#54a868"]


def render_venn(document: dict) -> str:
    """Render a diagram document (as produced by the CLI) to SVG text.

    Each Venn cell is labeled with its atom subset and its value to six
    significant digits.  Only n = 2 and n = 3 are drawable.
    """
    meta = document.get("metadata", {})
    generators = meta.get("generators", [])
    n = int(meta.get("n", len(generators)))
    if n not in (2, 3):
        raise DomainError(f"rendering supports n=2,3 only, got n={n}")
    atoms = document.get("atoms", [])
    if len(atoms) != (1 << n) - 1:
        raise DomainError(f"document has {len(atoms)} atoms, expected {(1 << n) - 1}")

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" width="640" height="480" '
        'viewBox="0 0 640 480" font-family="monospace">',
        '<rect width="640" height="480" fill="white"/>',
    ]
    title = meta.get("instance", "diagram")
    lines.append(f'<text x="20" y="28" font-size="16">{_esc(str(title))} information diagram</text>')
    for i, (cx, cy, r) in enumerate(_CIRCLES[n]):
        fill = _FILLS[i % len(_FILLS)]
        lines.append(
            f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{fill}" fill-opacity="0.16" '
            'stroke="black" stroke-width="1.5"/>'
        )
    for i, name in enumerate(generators[:n]):
        lines.append(
            f'<text x="20" y="{452 - 18 * (n - 1 - i)}" font-size="12">'
            f'{i + 1}: {_esc(str(name))}</text>'
        )
    for entry in atoms:
        subset = tuple(entry["subset"])
        value = float(entry["eta"])
        if subset not in _CELL_XY[n]:
            raise DomainError(f"unexpected atom subset {list(subset)} for n={n}")
        x, y = _CELL_XY[n][subset]
        label = "".join(str(i) for i in subset)
        lines.append(
            f'<text x="{x}" y="{y}" font-size="12" text-anchor="middle">{label}</text>'
        )
        lines.append(
            f'<text x="{x}" y="{y + 14}" font-size="12" text-anchor="middle">'
            f'{format(value, ".6g")}</text>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _esc(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
