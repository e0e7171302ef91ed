"""Minimal SVG 1.1 writer for figures of planar images."""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape

import numpy as np


@dataclass
class Figure:
    """Collects planar shapes and maps their bounding box onto a square
    canvas of ``size`` pixels (y axis pointing up)."""

    size: int = 600
    margin: float = 0.05
    items: list = field(default_factory=list)

    def polyline(self, q, stroke: str = "black", width: float = 1.0, closed: bool = False):
        q = np.asarray(q, dtype=float)
        if len(q):
            self.items.append(("line", q, stroke, width, closed))

    def dots(self, q, fill: str = "red", r: float = 2.5):
        q = np.asarray(q, dtype=float).reshape(-1, 2)
        if len(q):
            self.items.append(("dots", q, fill, r))

    def label(self, q, text: str, fill: str = "black"):
        self.items.append(("text", np.asarray(q, dtype=float).reshape(1, 2), text, fill))

    def _transform(self):
        pts = np.vstack([it[1] for it in self.items]) if self.items else np.zeros((1, 2))
        pts = pts[np.all(np.isfinite(pts), axis=1)]
        lo, hi = pts.min(axis=0), pts.max(axis=0)
        span = float(max(hi - lo)) or 1.0
        pad = self.margin * span
        lo = lo - pad
        scale = self.size / (span + 2 * pad)

        def f(q):
            return np.column_stack([(q[:, 0] - lo[0]) * scale,
                                    self.size - (q[:, 1] - lo[1]) * scale])
        return f

    def render(self) -> str:
        f = self._transform()
        out = ['<?xml version="1.0" encoding="UTF-8"?>',
               f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
               f'width="{self.size}" height="{self.size}" viewBox="0 0 {self.size} {self.size}">',
               f'<rect width="{self.size}" height="{self.size}" fill="white"/>']
        for it in self.items:
            q = f(it[1])
            if it[0] == "line":
                pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in q if np.isfinite(x) and np.isfinite(y))
                tag = "polygon" if it[4] else "polyline"
                out.append(f'<{tag} points="{pts}" fill="none" stroke="{it[2]}" '
                           f'stroke-width="{it[3]}"/>')
            elif it[0] == "dots":
                for x, y in q:
                    out.append(f'<circle cx="{x:.3f}" cy="{y:.3f}" r="{it[3]}" fill="{it[2]}"/>')
            else:
                x, y = q[0]
                out.append(f'<text x="{x:.3f}" y="{y:.3f}" font-size="12" '
                           f'fill="{it[3]}">{escape(it[2])}</text>')
        out.append("</svg>")
        return "\n".join(out) + "\n"

    def save(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.render())
