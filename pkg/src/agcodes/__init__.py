"""Exact algebraic-geometry codes on P^r and (P^1)^r over finite fields."""

__version__ = "0.1.0"

from .gf import GF, FiniteField, FieldElement, FieldError, field_construct, trace_to_subfield
from .poly import MultiPoly, RationalFunction, NotRegularError
from .parse import ParseError, parse_expression, parse_poly
from .series import TruncatedSeries, series_expand, series_invert
from .geom import (PROD, PROJ, Chart, ChartError, Divisor, GeometryError, Hypersurface,
                   LocalFrame, NotProperError, Variety, VarietyPoint, choose_chart,
                   intersection_scheme, is_transversal_at)
from .forms import DifferentialForm
from .residue import (ResidueContext, find_param_representation, residue_wrt_divisors,
                      verify_residue_theorem)
from .rectify import (RectifierReport, check_rectifying, construct_rectifier, crt_glue,
                      local_rectifier)
from .codes import (LinearCode, code_dual, code_kronecker, differential_code_plain,
                    differential_code_rectified, eta_construct, find_divisors_through_points,
                    find_rescaling, functional_as_strict_differential, functional_code,
                    omega_space_basis, product_code_check, rr_space_basis,
                    strict_differential_as_functional)
