"""Static reports: a colored object table and a cluster x dimension matrix.

Both are single files with inline styles and no scripts, so they archive and
diff cleanly. Rendering is deterministic: fixed palette, fixed sort orders,
shortest round-trip number formatting.

Overlap rule for the table: each object is drawn once, tinted with its
primary cluster (the lowest-index cluster containing it); further
memberships go to a trailing "also in" cell. Relevance bars follow the
primary cluster's dimensions.
"""

from __future__ import annotations

from html import escape
from typing import Optional, Sequence

from .errors import ValidationError
from .formats import atomic_write_text, fmt_float
from .model import Clustering, Dataset

# 12-color qualitative cycle (ColorBrewer "Paired", reordered dark-first);
# cluster i gets PALETTE[i % 12]
PALETTE: tuple[tuple[int, int, int], ...] = (
    (31, 120, 180), (51, 160, 44), (227, 26, 28), (255, 127, 0),
    (106, 61, 154), (177, 89, 40), (166, 206, 227), (178, 223, 138),
    (251, 154, 153), (253, 191, 111), (202, 178, 214), (255, 255, 153),
)

UNCLUSTERED_GRAY = (200, 200, 200)


def hex_color(rgb: tuple[int, int, int]) -> str:
    return "#{:02x}{:02x}{:02x}".format(*rgb)


def parse_color(text: str) -> tuple[int, int, int]:
    t = text.strip().lstrip("#")
    if len(t) != 6:
        raise ValidationError(f"color {text!r} is not of the form #rrggbb")
    try:
        return int(t[0:2], 16), int(t[2:4], 16), int(t[4:6], 16)
    except ValueError:
        raise ValidationError(f"color {text!r} is not of the form #rrggbb") from None


def color_assignment(n_clusters: int, palette: Optional[Sequence] = None) -> list[tuple[int, int, int]]:
    pal = list(palette) if palette else list(PALETTE)
    return [tuple(pal[i % len(pal)]) for i in range(n_clusters)]


def _tint(rgb, alpha: float = 0.25) -> str:
    # blend toward white; the row stays readable and the color stays recognisable
    r, g, b = (round(255 - (255 - c) * alpha) for c in rgb)
    return hex_color((r, g, b))


_STYLE = """body{font-family:sans-serif;font-size:13px}
table{border-collapse:collapse}
th,td{border:1px solid #ccc;padding:2px 6px;text-align:right}
th{background:#f0f0f0}
td.also{text-align:left}
span.bar{display:inline-block;width:4px;height:12px;margin-left:4px;vertical-align:middle}
tr.section th{text-align:left;background:#e8e8e8}"""


def primary_memberships(clustering: Clustering) -> dict[int, list[int]]:
    """object id -> ascending list of cluster indices containing it."""
    out: dict[int, list[int]] = {}
    for idx, cl in enumerate(clustering.clusters):
        for o in cl.objects:
            out.setdefault(o, []).append(idx)
    return out


def render_colored_table(data: Dataset, clustering: Clustering,
                         colors: Optional[Sequence] = None, show_unclustered: bool = True,
                         title: str = "Subspace clusters") -> str:
    if (clustering.n_ref, clustering.d_ref) != (data.n, data.d):
        raise ValidationError(
            f"clustering is for n={clustering.n_ref}, d={clustering.d_ref}; data has n={data.n}, d={data.d}")
    cols = color_assignment(len(clustering), colors)
    member = primary_memberships(clustering)
    out = ["<!DOCTYPE html>", "<html>", "<head>", '<meta charset="utf-8">',
           f"<title>{escape(title)}</title>", f"<style>\n{_STYLE}\n</style>", "</head>", "<body>",
           f"<h1>{escape(title)}</h1>",
           f"<p>{data.n} objects, {data.d} dimensions, {len(clustering)} clusters</p>"]
    if len(clustering) == 0:
        out.append('<p class="notice">no clusters</p>')

    header = "".join(f"<th>{escape(name)}</th>" for name in data.dim_names)
    out.append("<table>")
    out.append(f"<tr><th>object</th><th>cluster</th>{header}<th>also in</th></tr>")

    ordered = sorted(member, key=lambda o: (member[o][0], o))
    current = None
    for o in ordered:
        idxs = member[o]
        prim = idxs[0]
        if prim != current:
            current = prim
            cl = clustering[prim]
            out.append(f'<tr class="section"><th colspan="{data.d + 3}">cluster {prim}: '
                       f'{len(cl.objects)} objects, dims {{{", ".join(escape(data.dim_names[j]) for j in cl.sorted_dims())}}}'
                       f"</th></tr>")
        rgb = cols[prim]
        dims = clustering[prim].dims
        cells = []
        for j in range(data.d):
            value = escape(fmt_float(data.rows[o, j]))
            if j in dims:
                cells.append(f'<td data-dim="{j}">{value}<span class="bar" style="background:{hex_color(rgb)}"></span></td>')
            else:
                cells.append(f'<td data-dim="{j}">{value}</td>')
        also = ", ".join(str(i) for i in idxs[1:])
        out.append(f'<tr class="obj" data-object="{o}" data-cluster="{prim}" style="background:{_tint(rgb)}">'
                   f"<td>{o}</td><td>{prim}</td>{''.join(cells)}<td class=\"also\">{also}</td></tr>")

    if show_unclustered:
        rest = [o for o in range(data.n) if o not in member]
        if rest:
            out.append(f'<tr class="section"><th colspan="{data.d + 3}">unclustered: {len(rest)} objects</th></tr>')
            gray = hex_color(UNCLUSTERED_GRAY)
            for o in rest:
                cells = "".join(f'<td data-dim="{j}">{escape(fmt_float(data.rows[o, j]))}</td>' for j in range(data.d))
                out.append(f'<tr class="noise" data-object="{o}" style="background:{gray}">'
                           f"<td>{o}</td><td></td>{cells}<td class=\"also\"></td></tr>")
    out.append("</table>")
    out.extend(["</body>", "</html>"])
    return "\n".join(out) + "\n"


def emit_colored_table(data: Dataset, clustering: Clustering, colors: Optional[Sequence], out,
                       show_unclustered: bool = True) -> None:
    atomic_write_text(out, render_colored_table(data, clustering, colors, show_unclustered))


CELL = 22
LABEL_W = 150
HEAD_H = 90


def render_subspace_matrix(clustering: Clustering, dim_names: Optional[Sequence[str]] = None,
                           colors: Optional[Sequence] = None) -> str:
    """SVG grid: one row per cluster, one column per dimension, filled where relevant."""
    d = clustering.d_ref
    names = list(dim_names) if dim_names is not None else [f"dim_{j}" for j in range(d)]
    if len(names) != d:
        raise ValidationError(f"{len(names)} dimension names for d={d}")
    cols = color_assignment(len(clustering), colors)
    width = LABEL_W + CELL * d + 10
    height = HEAD_H + CELL * max(1, len(clustering)) + 10
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" '
           f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">']
    for j, name in enumerate(names):
        x = LABEL_W + CELL * j + CELL // 2
        out.append(f'<text x="{x}" y="{HEAD_H - 6}" transform="rotate(-60 {x} {HEAD_H - 6})">{escape(name)}</text>')
    if len(clustering) == 0:
        out.append(f'<text x="4" y="{HEAD_H + 15}">no clusters</text>')
    for i, cl in enumerate(clustering.clusters):
        y = HEAD_H + CELL * i
        out.append(f'<text x="4" y="{y + 15}">cluster {i} ({len(cl.objects)})</text>')
        for j in range(d):
            x = LABEL_W + CELL * j
            on = j in cl.dims
            fill = hex_color(cols[i]) if on else "#ffffff"
            out.append(f'<rect class="{"on" if on else "off"}" data-cluster="{i}" data-dim="{j}" '
                       f'x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#999999"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_subspace_matrix(clustering: Clustering, dim_names: Optional[Sequence[str]], out,
                         colors: Optional[Sequence] = None) -> None:
    atomic_write_text(out, render_subspace_matrix(clustering, dim_names, colors))
