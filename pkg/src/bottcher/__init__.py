"""Newton-polygon classification and numerical Bottcher coordinates for
holomorphic skew products f(z, w) = (p(z), q(z, w)) with a superattracting
fixed point at the origin.

The library classifies the dominant monomial of q from the Newton polygon
and the order of p, constructs the invariant wedge on which that monomial
controls f, verifies the dominance numerically, builds branched-covering
lifts with single-vertex polygons, evaluates the conjugacy to the monomial
normal form on the wedge, and computes the closed-form preimage and basin
regions of the monomial map.
"""

__version__ = "0.1.0"

from .basin import (BasinDescriptor, ExponentRegion, PowerBound, VRegion,
                    basin_descriptor, exponent_iterate, exponent_step,
                    orbit_membership, preimage_region, rasterize_csv,
                    validate_extension_region, wedge_region)
from .coordinates import (Bottcher1DResult, BottcherResult, ContractionReport,
                          DeckSymmetry, LogPoint, MonomialMap, approximant,
                          approximant_via_lift, bottcher_1d, bottcher_evaluate,
                          contraction_exponent, d1_contraction_check,
                          deck_symmetries, injectivity_region, lift_increments,
                          log_lift_step, monomial_map)
from .errors import (BottcherError, BranchDomainError, DivisibilityFailure,
                     DivisionNearZero, EmptyBand, EmptyRegion, GuardError,
                     InclusionViolation, InputError, NoContraction,
                     NoConvergence, NonIntegralExponent, WeightOutsideInterval)
from .exact import INF, NEG_INF, ExtRat, ext_json, is_inf, pow_abs
from .lift import (CoveringSpec, LiftedMap, OriginTypeReport, cover_w,
                   cover_z, lifted_origin_type, semiconjugacy_defect)
from .mapfile import MapSpec, load_map, parse_map
from .newton import (Case, Classification, NewtonPolygon, RationalInterval,
                     WeightIntervals, alpha0, classify, classify_map,
                     d1_boundary_conflict, newton_polygon,
                     second_stage_interval, shear_horizontal, shear_vertical,
                     staircase_vertices, weight_intervals)
from .poly import (BiPoly, SkewProduct, UniPoly, bi_poly, substitute_exponents,
                   uni_poly, validate_germ_form)
from .region import (DominanceReport, WedgeRegion, dominance_report, eta,
                     export_samples_csv, find_accepted_radius, poly_eta,
                     poly_eta_log, sample, verify_dominance, wedge_for, zeta,
                     zeta_log)
