"""Planar cut-and-project sets from the A4 root lattice.

A lattice point ``(a, b, c, d)`` projects to ``(a + tau b) v + (c + tau d) u``
in the physical plane and to ``(a + tau' b) v* + (c + tau' d) u*`` in the
internal plane.  We fix ``v = v* = (1, 0)``, ``u`` at angle 4pi/5 and ``u*``
at angle 2pi/5, so both planes are Z[tau]-modules with basis ``{1, z}`` where
``z`` is a primitive fifth (resp. tenth) root of unity; squared norms are then
exact elements of Q(sqrt5):

    |x + y u|^2  = x^2 + y^2 - tau x y
    |X + Y u*|^2 = X^2 + Y^2 + (tau - 1) X Y

Voronoi cells are built per site by clipping against bisectors of nearby
sites.  A cell is kept only when it is certified complete: every vertex w
satisfies ``|w| + |w - x| <= R`` for the phys radius R of the generated
region, so no unseen point could cut it.
"""

from __future__ import annotations

import itertools
import json
import logging
import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import mpmath
import numpy as np
from scipy.spatial import cKDTree

from .quadfield import TAU, TAU_CONJ, DecimalParam, QuadReal, RealParam, as_real

log = logging.getLogger(__name__)

__all__ = [
    "A4Point",
    "PlanarConfig",
    "PlanarSet",
    "VoronoiTile",
    "TileClass",
    "BoundaryWarning",
    "UnsaturatedBoxError",
    "generate_planar",
    "rotation_matrix",
    "tenfold_check",
    "voronoi",
    "area_audit",
    "classify_tiles",
    "tile_signature",
    "render_svg",
    "tiles_to_json",
    "planar_aperiodicity_witness",
    "radius_scan",
]

SQRT5 = QuadReal(0, 1, 5)
# cos(4pi/5) = -tau/2, cos(2pi/5) = (tau - 1)/2
COS_PHYS = -TAU / 2
COS_STAR = (TAU - 1) / 2
_ANG_PHYS = 4 * math.pi / 5
_ANG_STAR = 2 * math.pi / 5
_TAU_F = float(TAU)
_TAUC_F = float(TAU_CONJ)
QUANT = 1e-6


class BoundaryWarning(UserWarning):
    """A lattice point projects within the guard band of the window boundary."""


class UnsaturatedBoxError(ValueError):
    """The coordinate box cannot contain every point of the requested region."""


class A4Point(NamedTuple):
    a: int
    b: int
    c: int
    d: int

    def phys_coords(self) -> tuple[QuadReal, QuadReal]:
        """Coefficients of ``v`` and ``u``."""
        return self.a + TAU * self.b, self.c + TAU * self.d

    def star_coords(self) -> tuple[QuadReal, QuadReal]:
        """Coefficients of ``v*`` and ``u*``."""
        return self.a + TAU_CONJ * self.b, self.c + TAU_CONJ * self.d

    def phys(self) -> np.ndarray:
        x = self.a + _TAU_F * self.b
        y = self.c + _TAU_F * self.d
        return np.array([x + y * math.cos(_ANG_PHYS), y * math.sin(_ANG_PHYS)])

    def star(self) -> np.ndarray:
        X = self.a + _TAUC_F * self.b
        Y = self.c + _TAUC_F * self.d
        return np.array([X + Y * math.cos(_ANG_STAR), Y * math.sin(_ANG_STAR)])

    def phys_norm2(self) -> QuadReal:
        x, y = self.phys_coords()
        return x * x + y * y + 2 * COS_PHYS * x * y

    def star_norm2(self) -> QuadReal:
        X, Y = self.star_coords()
        return X * X + Y * Y + 2 * COS_STAR * X * Y

    def __add__(self, other: tuple) -> A4Point:  # type: ignore[override]
        return A4Point(*(s + o for s, o in zip(self, other)))

    def __sub__(self, other: tuple) -> A4Point:
        return A4Point(*(s - o for s, o in zip(self, other)))


def _to_real(x: object) -> RealParam:
    if isinstance(x, float):
        return DecimalParam(x, rad=0)
    return as_real(x)


@dataclass(frozen=True)
class PlanarConfig:
    """Disc window in the internal plane plus the phys region to generate.

    ``radius`` and ``phys_radius`` may be exact (QuadReal, int, Fraction) or
    floats.  ``box`` optionally caps ``|a|, |b|, |c|, |d|``; it must be at
    least :meth:`required_box`.
    """

    radius: RealParam
    phys_radius: RealParam = 20
    center: tuple[RealParam, RealParam] = (0, 0)
    box: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "radius", _to_real(self.radius))
        object.__setattr__(self, "phys_radius", _to_real(self.phys_radius))
        object.__setattr__(self, "center", tuple(_to_real(c) for c in self.center))
        if not self.radius > 0 or not self.phys_radius > 0:
            raise ValueError("radii must be positive")
        if self.box is not None and self.box < self.required_box():
            raise UnsaturatedBoxError(
                f"box {self.box} is smaller than the required {self.required_box()} for this region"
            )

    @property
    def centered(self) -> bool:
        return all(isinstance(c, QuadReal) and c == 0 for c in self.center)

    def _coord_bounds(self) -> tuple[float, float]:
        # a vector of norm r has basis coefficients bounded by r / sin(angle)
        cx, cy = (float(c) for c in self.center)
        star_reach = float(self.radius) + math.hypot(cx, cy)
        P = float(self.phys_radius) / math.sin(_ANG_PHYS) + 1e-9
        S = star_reach / math.sin(_ANG_STAR) + 1e-9
        return P, S

    def required_box(self) -> int:
        """Bound on ``|a|,|b|,|c|,|d|`` from inverting the two projections."""
        P, S = self._coord_bounds()
        b = (P + S) / math.sqrt(5)
        return math.ceil(max(b, P + _TAU_F * b, S - _TAUC_F * b))


def _pairs(P: float, S: float, box: int | None) -> list[tuple[int, int]]:
    """Integer pairs with ``|m + tau n| <= P`` and ``|m + tau' n| <= S``."""
    nmax = math.floor((P + S) / math.sqrt(5)) + 1
    out = []
    for n in range(-nmax, nmax + 1):
        lo = max(-P - _TAU_F * n, -S - _TAUC_F * n)
        hi = min(P - _TAU_F * n, S - _TAUC_F * n)
        for m in range(math.floor(lo) - 1, math.ceil(hi) + 2):
            if abs(m + _TAU_F * n) <= P and abs(m + _TAUC_F * n) <= S:
                if box is None or (abs(m) <= box and abs(n) <= box):
                    out.append((m, n))
    return out


def _certified_leq(value_f: float, bound_f: float, exact: callable) -> bool:
    """``value <= bound``, falling back to exact arithmetic near equality."""
    slack = 1e-9 * max(1.0, abs(bound_f))
    if value_f < bound_f - slack:
        return True
    if value_f > bound_f + slack:
        return False
    return exact()


@dataclass
class PlanarSet:
    config: PlanarConfig
    points: list[A4Point]
    phys: np.ndarray
    guard_hits: int = 0

    def __len__(self) -> int:
        return len(self.points)

    @property
    def index(self) -> dict[A4Point, int]:
        return {p: i for i, p in enumerate(self.points)}


def _in_window(pt: A4Point, cfg: PlanarConfig, guard: float) -> tuple[bool, bool]:
    """(inside, near_boundary) for the disc window."""
    r = cfg.radius
    if cfg.centered and isinstance(r, QuadReal):
        X = pt.a + _TAUC_F * pt.b
        Y = pt.c + _TAUC_F * pt.d
        n2f = X * X + Y * Y + 2 * float(COS_STAR) * X * Y
        r2 = r * r
        ok = _certified_leq(n2f, float(r2), lambda: pt.star_norm2() <= r2)
        return ok, False
    cy = cfg.center[1]
    if isinstance(r, QuadReal) and isinstance(cfg.center[0], QuadReal) and isinstance(cy, QuadReal) and cy == 0:
        cx = cfg.center[0]
        X = pt.a + _TAUC_F * pt.b - float(cx)
        Y = pt.c + _TAUC_F * pt.d
        n2f = X * X + Y * Y + 2 * float(COS_STAR) * X * Y
        r2 = r * r

        def exact() -> bool:
            Xe, Ye = pt.star_coords()
            Xe = Xe - cx
            return Xe * Xe + Ye * Ye + 2 * COS_STAR * Xe * Ye <= r2

        return _certified_leq(n2f, float(r2), exact), False
    # numeric path at 128 bits with a guard band
    with mpmath.workprec(128):
        t = (1 + mpmath.sqrt(5)) / 2
        tc = 1 - t
        X = pt.a + tc * pt.b
        Y = pt.c + tc * pt.d
        sx = X + Y * mpmath.cos(2 * mpmath.pi / 5) - cfg.center[0].to_mpf()
        sy = Y * mpmath.sin(2 * mpmath.pi / 5) - cfg.center[1].to_mpf()
        dist = mpmath.sqrt(sx * sx + sy * sy)
        R = cfg.radius.to_mpf()
        return bool(dist <= R), bool(abs(dist - R) < guard)


def generate_planar(cfg: PlanarConfig, guard: float = 1e-12) -> PlanarSet:
    """All lattice points with star image in the window and phys image within ``phys_radius``.

    Points are ordered by (phys norm, angle) for reproducibility.
    """
    P, S = cfg._coord_bounds()
    pairs_ab = _pairs(P, S, cfg.box)
    pairs_cd = pairs_ab  # same constraints on both coordinate pairs
    R = cfg.phys_radius
    R2f = float(R) ** 2
    exact_R = isinstance(R, QuadReal)
    pts: list[A4Point] = []
    hits = 0
    cp = float(COS_PHYS)
    for (a, b), (c, d) in itertools.product(pairs_ab, pairs_cd):
        pt = A4Point(a, b, c, d)
        x = a + _TAU_F * b
        y = c + _TAU_F * d
        n2 = x * x + y * y + 2 * cp * x * y
        if exact_R:
            if not _certified_leq(n2, R2f, lambda: pt.phys_norm2() <= R * R):
                continue
        elif n2 > R2f:
            continue
        inside, near = _in_window(pt, cfg, guard)
        hits += near
        if inside:
            pts.append(pt)
    if hits:
        warnings.warn(f"{hits} points lie within {guard} of the window boundary", BoundaryWarning, stacklevel=2)
    phys = np.array([p.phys() for p in pts]).reshape(-1, 2)
    order = np.lexsort((np.round(np.arctan2(phys[:, 1], phys[:, 0]), 12), np.round(np.hypot(phys[:, 0], phys[:, 1]), 12)))
    pts = [pts[i] for i in order]
    return PlanarSet(cfg, pts, phys[order], hits)


# -- symmetry ----------------------------------------------------------------


def _zmul(x: tuple[QuadReal, QuadReal], y: tuple[QuadReal, QuadReal]) -> tuple[QuadReal, QuadReal]:
    """Product in Z[tau][z] with ``z^2 = -tau z - 1``."""
    p1, q1 = x
    p2, q2 = y
    qq = q1 * q2
    return p1 * p2 - qq, p1 * q2 + q1 * p2 - TAU * qq


def rotation_matrix() -> np.ndarray:
    """Integer matrix R with ``phys(R x) = e^{i pi/5} phys(x)``.

    Rotation by pi/5 is multiplication by ``tau + z``; each basis vector's
    image is decomposed back into the Z-basis ``{1, tau, z, tau z}``.
    """
    rot = (TAU, QuadReal(1))
    basis = [A4Point(1, 0, 0, 0), A4Point(0, 1, 0, 0), A4Point(0, 0, 1, 0), A4Point(0, 0, 0, 1)]
    cols = []
    for e in basis:
        p, q = _zmul(e.phys_coords(), rot)
        ab, cd = p.in_ring(TAU), q.in_ring(TAU)
        if ab is None or cd is None:
            raise ArithmeticError("rotation does not preserve the lattice")
        cols.append([ab[0], ab[1], cd[0], cd[1]])
    R = np.array(cols, dtype=np.int64).T
    if not np.array_equal(np.linalg.matrix_power(R, 10), np.eye(4, dtype=np.int64)):
        raise ArithmeticError("rotation matrix does not have order 10")
    return R


def tenfold_check(ps: PlanarSet) -> bool:
    """Whether rotating every point by pi/5 stays inside the generated set.

    The phys region is a centered disc, so it is rotation invariant and no
    margin is needed.
    """
    R = rotation_matrix()
    have = set(ps.points)
    for pt in ps.points:
        if A4Point(*(int(v) for v in R @ np.array(pt))) not in have:
            return False
    return True


# -- Voronoi ------------------------------------------------------------------


@dataclass
class VoronoiTile:
    site: int
    center: np.ndarray
    vertices: np.ndarray
    signature: tuple = field(default=())

    @property
    def area(self) -> float:
        return _polygon_area(self.vertices)


def _polygon_area(v: np.ndarray) -> float:
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _clip(poly: np.ndarray, normal: np.ndarray, offset: float) -> np.ndarray:
    """Keep the part of a convex polygon with ``normal . p <= offset``."""
    s = poly @ normal - offset
    inside = s <= 0
    if inside.all():
        return poly
    if not inside.any():
        return poly[:0]
    out = []
    n = len(poly)
    for i in range(n):
        j = (i + 1) % n
        if inside[i]:
            out.append(poly[i])
        if inside[i] != inside[j]:
            t = s[i] / (s[i] - s[j])
            out.append(poly[i] + t * (poly[j] - poly[i]))
    return np.array(out)


def _dedupe(poly: np.ndarray, tol: float = 1e-10) -> tuple[np.ndarray, int]:
    keep = []
    merged = 0
    for p in poly:
        if keep and np.hypot(*(p - keep[-1])) < tol:
            merged += 1
            continue
        keep.append(p)
    if len(keep) > 1 and np.hypot(*(keep[0] - keep[-1])) < tol:
        keep.pop()
        merged += 1
    return np.array(keep), merged


@dataclass
class VoronoiResult:
    tiles: list[VoronoiTile]
    degenerate_vertices: int
    region_radius: float


def voronoi(points: np.ndarray, region_radius: float | None = None, k_start: int = 12) -> VoronoiResult:
    """Certified Voronoi cells of the sites lying deep enough in the region.

    ``region_radius`` is the radius of the origin-centred disc in which the
    point set is known to be complete; by default the largest site norm.
    Cells of sites near the rim are dropped unless provably unaffected by
    points outside.  Vertices closer than 1e-10 (cocircular sites) are
    merged and counted in ``degenerate_vertices``.
    """
    pts = np.asarray(points, dtype=float)
    if len(pts) < 4:
        raise ValueError("need at least four sites")
    norms = np.hypot(pts[:, 0], pts[:, 1])
    R = float(region_radius) if region_radius is not None else float(norms.max())
    tree = cKDTree(pts)
    nn = tree.query(pts, k=2)[0][:, 1]
    big = 4 * float(nn.max()) + 1.0
    tiles = []
    degenerate = 0
    for i, x in enumerate(pts):
        if norms[i] > R:
            continue
        k = min(k_start, len(pts))
        used: set[int] = set()
        poly = x + big * np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0]])
        while True:
            if k < len(pts):
                _, idx = tree.query(x, k=k)
                cand = [int(j) for j in np.atleast_1d(idx)]
            else:
                cand = list(range(len(pts)))
            for j in cand:
                if j == i or j in used:
                    continue
                used.add(j)
                y = pts[j]
                poly = _clip(poly, y - x, 0.5 * (y @ y - x @ x))
            reach = float(np.max(np.hypot(*(poly - x).T)))
            within = tree.query_ball_point(x, 2 * reach + 1e-9)
            if all(j in used or j == i for j in within):
                break
            k = max(2 * k, len(within) + 1)
        poly, merged = _dedupe(poly)
        if len(poly) < 3:
            continue
        # the cell is final if no point beyond the region could cut it
        vd = np.hypot(*(poly - x).T)
        if np.any(np.hypot(poly[:, 0], poly[:, 1]) + vd > R):
            continue
        degenerate += merged
        tiles.append(VoronoiTile(i, x.copy(), poly))
    if degenerate:
        log.info("merged %d coincident Voronoi vertices (cocircular sites)", degenerate)
    return VoronoiResult(tiles, degenerate, R)


def area_audit(tiles: Sequence[VoronoiTile], region_radius: float, grid: float = 1e-9) -> dict[str, float]:
    """Gaps and overlaps of the tiles inside the disc of ``region_radius``.

    The disc is approximated by a fine polygon; the same polygon is used on
    both sides of the comparison, so the approximation cancels.  Every site
    whose cell meets the disc must have a tile for the audit to be meaningful.
    Coordinates are snapped to a ``grid`` so that shared edges computed
    independently by neighbouring cells are noded together by the overlay;
    without it thin cells can fail to merge and show up as spurious gaps.
    """
    from shapely import set_precision
    from shapely.geometry import Point, Polygon
    from shapely.ops import unary_union

    region = set_precision(Point(0.0, 0.0).buffer(region_radius, quad_segs=256), grid)
    pieces = [set_precision(Polygon(t.vertices), grid).intersection(region) for t in tiles]
    pieces = [p for p in pieces if not p.is_empty]
    covered = unary_union(pieces).area
    total = sum(p.area for p in pieces)
    gap = region.area - covered
    overlap = total - covered
    return {
        "region_area": region.area,
        "tile_area": total,
        "gap": gap,
        "overlap": overlap,
        "defect": (abs(gap) + abs(overlap)) / region.area,
    }


# -- classification -------------------------------------------------------------


def _q(x: float) -> int:
    return int(round(x / QUANT))


def tile_signature(vertices: np.ndarray) -> tuple:
    """Key identifying a polygon up to translation and rotation by multiples of pi/10.

    The cyclic sequence of (edge length, interior angle) pairs is rotated to
    its lexicographic minimum; the direction of the first edge, reduced mod
    pi/10, pins down the orientation class.  Symmetric polygons take the
    smallest direction over all minimal starting edges.
    """
    v = np.asarray(vertices, dtype=float)
    if _polygon_area(v) < 0:
        v = v[::-1]
    n = len(v)
    edges = np.roll(v, -1, axis=0) - v
    lengths = np.hypot(edges[:, 0], edges[:, 1])
    dirs = np.arctan2(edges[:, 1], edges[:, 0])
    # interior angle at vertex i+1, between edge i and edge i+1
    turn = (np.roll(dirs, -1) - dirs) % (2 * math.pi)
    angles = math.pi - turn
    seq = [(_q(lengths[i]), _q(angles[i])) for i in range(n)]
    rots = [tuple(seq[i:] + seq[:i]) for i in range(n)]
    best = min(rots)
    step = math.pi / 10
    offsets = []
    for i in range(n):
        if rots[i] == best:
            off = _q(dirs[i] % step)
            offsets.append(0 if off >= _q(step) else off)
    return (best, min(offsets))


def shape_key(signature: tuple) -> tuple:
    """Congruence key ignoring orientation."""
    return signature[0]


@dataclass
class TileClass:
    count: int
    representative: VoronoiTile
    orientations: set = field(default_factory=set)


def classify_tiles(tiles: Iterable[VoronoiTile], with_orientation: bool = False) -> dict[tuple, TileClass]:
    """Group tiles by shape.

    With ``with_orientation`` the key also carries the orientation class
    mod pi/10, so a shape and its copy rotated by a non-multiple of pi/10
    land in different classes.  Without it, the rotated copies by pi/10 j
    are merged into one class, which is the counting convention used for
    basic tile types; ``orientations`` then records which directions occur.
    """
    out: dict[tuple, TileClass] = {}
    for t in tiles:
        if not t.signature:
            t.signature = tile_signature(t.vertices)
        key = t.signature if with_orientation else shape_key(t.signature)
        cls = out.get(key)
        if cls is None:
            cls = out[key] = TileClass(0, t)
        cls.count += 1
        cls.orientations.add(t.signature[1])
    return out


def tiles_to_json(classes: dict[tuple, TileClass]) -> str:
    rows = []
    for key in sorted(classes):
        cls = classes[key]
        rows.append(
            {
                "signature": json.loads(json.dumps(key)),
                "count": cls.count,
                "representative_vertices": np.round(cls.representative.vertices - cls.representative.center, 9).tolist(),
            }
        )
    return json.dumps(rows, indent=2)


# -- aperiodicity -------------------------------------------------------------------


def planar_aperiodicity_witness(ps: PlanarSet, candidates: int = 200) -> dict[tuple[int, ...], tuple[int, ...]]:
    """For each short translation t between points, a point x with x + t outside the set.

    Only points x with ``|x| + |t| <= R`` are tested, so a miss is genuine.
    Returns the map t -> x; the set is aperiodic on this evidence when every
    candidate got a witness.
    """
    R = float(ps.config.phys_radius)
    have = set(ps.points)
    origin = A4Point(0, 0, 0, 0)
    if origin not in have:
        raise ValueError("the witness search expects the origin in the set")
    norms = np.hypot(ps.phys[:, 0], ps.phys[:, 1])
    cands = [p for p in ps.points if p != origin][:candidates]
    out: dict[tuple[int, ...], tuple[int, ...]] = {}
    for t in cands:
        tn = float(np.hypot(*t.phys()))
        for i in np.argsort(norms, kind="stable"):
            if norms[i] + tn > R:
                break
            x = ps.points[i]
            if x + t not in have:
                out[tuple(t)] = tuple(x)
                break
    return out


# -- scanning ---------------------------------------------------------------


def radius_scan(radii: Iterable[RealParam], phys_radius: RealParam = 12) -> list[dict[str, object]]:
    """Number of tile shapes for several window radii at a fixed phys region."""
    rows = []
    for r in radii:
        ps = generate_planar(PlanarConfig(r, phys_radius))
        vr = voronoi(ps.phys, float(ps.config.phys_radius))
        classes = classify_tiles(vr.tiles)
        rows.append({"radius": str(r), "points": len(ps), "tiles": len(vr.tiles), "classes": len(classes)})
        log.info("radius %s: %d points, %d tiles, %d classes", r, len(ps), len(vr.tiles), len(classes))
    return rows


# -- rendering -------------------------------------------------------------------

_PALETTE = ["#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff"]


def _fmt(x: float) -> str:
    s = f"{x:.4f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def render_svg(
    points: np.ndarray | None = None,
    tiles: Sequence[VoronoiTile] | None = None,
    scale: float = 20.0,
    point_radius: float = 0.12,
    color_by_class: bool = True,
) -> str:
    """Deterministic SVG 1.1 document; y grows upward in the drawing."""
    pts = np.zeros((0, 2)) if points is None else np.asarray(points, dtype=float).reshape(-1, 2)
    tiles = list(tiles or [])
    coords = [pts] + [t.vertices for t in tiles]
    allc = np.vstack(coords) if any(len(c) for c in coords) else np.zeros((0, 2))
    if len(allc):
        lo = allc.min(axis=0) - 1
        hi = allc.max(axis=0) + 1
    else:
        lo, hi = np.zeros(2), np.ones(2)
    w, h = (hi - lo) * scale
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(w)}" height="{_fmt(h)}" '
        f'viewBox="0 0 {_fmt(w)} {_fmt(h)}">',
    ]

    def tx(p: np.ndarray) -> tuple[str, str]:
        return _fmt((p[0] - lo[0]) * scale), _fmt((hi[1] - p[1]) * scale)

    if tiles:
        colors: dict[tuple, str] = {}
        for t in tiles:
            if not t.signature:
                t.signature = tile_signature(t.vertices)
        for key in sorted({shape_key(t.signature) for t in tiles}):
            colors[key] = _PALETTE[len(colors) % len(_PALETTE)]
        lines.append('<g stroke="#000000" stroke-width="0.5">')
        for t in tiles:
            fill = colors[shape_key(t.signature)] if color_by_class else "none"
            d = " ".join(",".join(tx(p)) for p in t.vertices)
            lines.append(f'<polygon points="{d}" fill="{fill}" fill-opacity="0.6"/>')
        lines.append("</g>")
    if len(pts):
        lines.append('<g fill="#000000">')
        r = _fmt(point_radius * scale)
        for p in pts:
            x, y = tx(p)
            lines.append(f'<circle cx="{x}" cy="{y}" r="{r}"/>')
        lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
