"""A tenfold-symmetric planar quasicrystal and its Voronoi tiles.

Points (a + b tau) v + (c + d tau) u of the plane are kept when the
conjugate point falls in a disc.  The script checks the symmetry, builds
the Voronoi cells, sorts them into shapes and writes an SVG picture.

    python demos/04_planar_tiling.py [out.svg]
"""
import sys
from fractions import Fraction

from aperiodica.planar import (
    PlanarConfig,
    area_audit,
    classify_tiles,
    generate_planar,
    render_svg,
    rotation_matrix,
    tenfold_check,
    voronoi,
)

out = sys.argv[1] if len(sys.argv) > 1 else "planar_tiling.svg"
radius = Fraction(43, 50)

print("rotation by pi/5 on the lattice coordinates:")
print(rotation_matrix())

for R in (12, 24):
    ps = generate_planar(PlanarConfig(radius, R))
    vr = voronoi(ps.phys, R)
    classes = classify_tiles(vr.tiles)
    audit = area_audit(vr.tiles, R / 2)
    print(f"\nphys radius {R}: {len(ps)} points, {len(vr.tiles)} complete cells")
    print("  tenfold symmetric:", tenfold_check(ps))
    print(f"  area defect on the inner disc: {audit['defect']:.1e}")
    print(f"  {len(classes)} tile shapes:")
    for key, cls in sorted(classes.items(), key=lambda kv: -kv[1].count):
        n = len(cls.representative.vertices)
        print(f"    {n}-gon  area {cls.representative.area:.4f}  count {cls.count:4d}")

# an off-centre window breaks the symmetry
shifted = generate_planar(PlanarConfig(radius, 12, center=(Fraction(3, 10), 0)))
print("\nwindow centre moved to (0.3, 0): tenfold symmetric:", tenfold_check(shifted))

ps = generate_planar(PlanarConfig(radius, 12))
with open(out, "w", encoding="utf-8") as fh:
    fh.write(render_svg(ps.phys, voronoi(ps.phys, 12).tiles))
print("wrote", out)
