"""Image polylines (rings and rays) of a map, CSV export, and crossing checks."""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .catalog import MapEntry


@dataclass(frozen=True)
class Polyline:
    pid: int
    kind: str  # "ring", "ray" or "boundary"
    index: int
    param: np.ndarray  # radius along a ray, angle along a ring
    points: np.ndarray  # complex image points


def image_polylines(f: MapEntry, rings: int = 8, rays: int = 16, samples: int = 99,
                    ring_samples: int = 361, r_max: float = 0.98) -> list[Polyline]:
    """Images of ``rings`` concentric circles and ``rays`` radii out to ``r_max``."""
    r_max = min(r_max, f.max_radius)
    out = []
    theta = np.linspace(0.0, 2 * np.pi, ring_samples)
    for i in range(1, rings + 1):
        r = r_max * i / rings
        out.append(Polyline(len(out), "ring", i, theta, f.jet(r * np.exp(1j * theta)).f0))
    tau = np.linspace(0.0, r_max, samples)
    for j in range(rays):
        a = 2 * np.pi * j / rays
        out.append(Polyline(len(out), "ray", j, tau, f.jet(tau * np.exp(1j * a)).f0))
    return out


def boundary_curve(f: MapEntry, r: float = 0.98, n: int = 721) -> Polyline:
    r = min(r, f.max_radius)
    theta = np.linspace(0.0, 2 * np.pi, n)
    return Polyline(0, "boundary", 0, theta, f.jet(r * np.exp(1j * theta)).f0)


def write_polylines_csv(path, polylines, fmt: str = ".15g") -> Path:
    path = Path(path)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["polyline_id", "kind", "index", "param", "x", "y"])
        for pl in polylines:
            for t, p in zip(pl.param, pl.points):
                w.writerow([pl.pid, pl.kind, pl.index, format(float(t), fmt),
                            format(float(p.real), fmt), format(float(p.imag), fmt)])
    return path


def read_polylines_csv(path) -> dict[int, dict]:
    """Inverse of ``write_polylines_csv``: id -> {kind, index, param, points}."""
    lines: dict[int, dict] = {}
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            d = lines.setdefault(int(row["polyline_id"]),
                                 {"kind": row["kind"], "index": int(row["index"]),
                                  "param": [], "points": []})
            d["param"].append(float(row["param"]))
            d["points"].append(complex(float(row["x"]), float(row["y"])))
    for d in lines.values():
        d["param"] = np.array(d["param"])
        d["points"] = np.array(d["points"])
    return lines


def _orient(a, b, c):
    return np.sign((b.real - a.real) * (c.imag - a.imag) - (b.imag - a.imag) * (c.real - a.real))


def _crossing_matrix(p, q):
    """Proper crossings between segments of polylines ``p`` and ``q``."""
    p1, p2 = p[:-1, None], p[1:, None]
    q1, q2 = q[None, :-1], q[None, 1:]
    o1, o2 = _orient(p1, p2, q1), _orient(p1, p2, q2)
    o3, o4 = _orient(q1, q2, p1), _orient(q1, q2, p2)
    return (o1 * o2 < 0) & (o3 * o4 < 0)


def self_intersections(points) -> int:
    """Number of crossing pairs of non-adjacent segments within one polyline."""
    p = np.asarray(points, dtype=complex)
    m = _crossing_matrix(p, p)
    n = m.shape[0]
    i, j = np.triu_indices(n, k=2)
    return int(np.count_nonzero(m[i, j]))


def mutual_intersections(a, b) -> int:
    """Crossing pairs between two polylines (shared endpoints do not count)."""
    return int(np.count_nonzero(_crossing_matrix(np.asarray(a, complex), np.asarray(b, complex))))


def ray_crossings(polylines) -> dict:
    rays = [pl for pl in polylines if pl.kind == "ray"]
    own = {pl.pid: self_intersections(pl.points) for pl in rays}
    mutual = 0
    for i in range(len(rays)):
        for j in range(i + 1, len(rays)):
            mutual += mutual_intersections(rays[i].points, rays[j].points)
    return {"self": own, "mutual": mutual,
            "simple": all(v == 0 for v in own.values()) and mutual == 0}
