"""SVG rendering of two-dimensional fans."""

import math

from .fan import angular_order

R = 100.0


def _pt(v, scale=R):
    n = math.hypot(v[0], v[1])
    # SVG y axis points down
    return scale * v[0] / n, -scale * v[1] / n


def render_svg(model, ref=None):
    """
    Return an SVG document for the fan of ``model`` seen from ``ref``.

    The positive chamber (the reference) and the negative chamber (spanned
    by the negated reference rays, when present) are filled.
    """
    if model.dim != 2:
        raise ValueError("SVG rendering is 2-D only")
    ref = ref or model.reference
    idx = model.indices_wrt(ref)
    S = model.decomposition(ref)
    positive = S.chamber(ref).generators
    negative = tuple(sorted(tuple(-x for x in g) for g in positive))
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           'viewBox="-160 -160 320 320" width="320" height="320">',
           '<rect x="-160" y="-160" width="320" height="320" fill="white"/>']
    for label, C in zip(S.labels, S.chambers):
        kind = "positive" if C.generators == positive else ("negative" if C.generators == negative else None)
        if kind:
            a, b = (_pt(g, 0.9 * R) for g in C.generators)
            colour = "#cfe8cf" if kind == "positive" else "#f3d0d0"
            out.append('<path class="%s" d="M 0 0 L %.3f %.3f L %.3f %.3f Z" fill="%s"/>'
                       % (kind, a[0], a[1], b[0], b[1], colour))
    names = {}
    for label, v in idx.items():
        names.setdefault(v, []).append(label)
    for v in angular_order(list(names)):
        x, y = _pt(v)
        lx, ly = _pt(v, 1.25 * R)
        out.append('<line x1="0" y1="0" x2="%.3f" y2="%.3f" stroke="black" stroke-width="1.5"/>' % (x, y))
        out.append('<text x="%.3f" y="%.3f" font-size="10" text-anchor="middle">%s (%d,%d)</text>'
                   % (lx, ly, "/".join(names[v]), v[0], v[1]))
    for label, C in zip(S.labels, S.chambers):
        a, b = C.generators
        mx, my = _pt(a, 1.0)[0] + _pt(b, 1.0)[0], _pt(a, 1.0)[1] + _pt(b, 1.0)[1]
        n = math.hypot(mx, my) or 1.0
        out.append('<text x="%.3f" y="%.3f" font-size="8" fill="#333" text-anchor="middle">%s</text>'
                   % (0.6 * R * mx / n, 0.6 * R * my / n, label))
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_svg(model, path, ref=None):
    text = render_svg(model, ref)
    with open(path, "w") as fh:
        fh.write(text)
    return text
