"""Heckoid orbifolds and groups: Farey combinatorics, orbit reduction,
epimorphisms from 2-bridge link groups, small cancellation, and parabolic
representations."""

from .errors import (DegenerateDomain, DomainError, HeckoidError, IterationCapExceeded,
                     NoGeometricCandidate, NotDecomposable, NumericalError,
                     OddIndexUnsupported, RootFindingFailed)
from .farey import (INF, MobiusMap, PositiveCF, SignedCF, Slope, enumerate_slopes, eval_cf,
                    farey_neighbor, farey_neighbors, to_positive_cf)
from .kernels import BACKEND
from .orbits import (FundamentalDomain, LoopClass, LoopTag, classify_loop, enumerate_template_slopes,
                     fundamental_domain, orbit_bfs_oracle, parabolic_generator, reduce_slope,
                     same_orbit)
from .epi import RileyFamilyParams, admits_epimorphism, enumerate_epi_sources, riley_family
from .words import check_small_cancellation, required_subword_check, u_word
from .representation import (complex_length, heckoid_roots, mcshane_sum, orbit_trace_check,
                             select_geometric_root, trace_poly)

__version__ = "0.1.0"
