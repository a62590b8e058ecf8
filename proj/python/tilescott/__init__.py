"""Bicolored tilings, alternating path diagrams and the Scott map."""

try:
    from ._tilescott import (
        all_black_disk, antigon, canonical_code, equivalent, exchange,
        fan_triangulation, flip, flip_class_size, inv_scott, is_postnikov,
        labels, normalize, perm, random_tiling, reduce, render_svg,
        rhombic_hexagon, scott, tiling_type, validate, white_polygon,
    )
except ImportError:  # running against an in-tree build
    from _tilescott import (
        all_black_disk, antigon, canonical_code, equivalent, exchange,
        fan_triangulation, flip, flip_class_size, inv_scott, is_postnikov,
        labels, normalize, perm, random_tiling, reduce, render_svg,
        rhombic_hexagon, scott, tiling_type, validate, white_polygon,
    )

__all__ = [
    "all_black_disk", "antigon", "canonical_code", "equivalent", "exchange",
    "fan_triangulation", "flip", "flip_class_size", "inv_scott", "is_postnikov",
    "labels", "normalize", "perm", "random_tiling", "reduce", "render_svg",
    "rhombic_hexagon", "scott", "tiling_type", "validate", "white_polygon",
]
