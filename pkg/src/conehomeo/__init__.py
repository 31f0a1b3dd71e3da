"""Exact constructions of vertex-swapping homeomorphisms between interlaced cone charts."""

from .ambient import AbstractCone, OpenSquare, Suspension
from .base import BaseGraph, BaseIso, BasePoint, PLBaseFunction
from .charts import (PlanarConvexChart, RadialOffsetChart, chart_eval, chart_invert, identity_chart,
                     is_k_interlaced, make_offset_chart, recenter_chart)
from .exact import INF, Q, Rational, fmt
from .homeo import compose, homeo_eval, homeo_inv_eval
from .moves import move_in_cone, radial_slide, reroute_path, strong_n_extend, to_vertex
from .paths import PLPath
from .pl import PLHomeo, pl_compose, pl_eval, pl_invert, pl_make
from .promotion import alternate_lemma1, promote, vertex_swap_chart
from .swindle import build_lemma1_homeo, classify_region, compute_r
from .verify import verify_generic_homeo, verify_lemma1, verify_limit_chart, verify_promotion

__version__ = "0.1.0"
