"""Finite spatial constraint systems.

Build and validate finite lattices and space functions, compute Heyting
implication, derive extrusion functions (right inverses), compute the
distributed space of an agent group by brute force or by divide-and-conquer
recursions, and take agent/join/group projections.
"""

from ._kernels import available_backends, backend_name, use_backend
from .distributed import (DeltaResult, agent_projection, count_space_functions,
                          delta_empty, delta_function, delta_oracle,
                          delta_part, delta_table, finite_witness,
                          group_projection, join_projection)
from .errors import (CarrierMismatchError, EnumerationCapError,
                     ExtrusionLawError, FrameRequiredError,
                     NotMeetPreservingError, NotSurjectiveError, SchemaError,
                     SpatialCSError, UnknownAgentError, UnknownElementError)
from .extrusion import (ExtrusionFunction, external_extrusion, extrusion_inf,
                        extrusion_sup, has_right_inverse_precheck,
                        is_surjective, preserves_meets, verify_extrusion_law)
from .instances import (AumannModel, aumann_model, aumann_scs,
                        distributed_knowledge, event_index, knowledge,
                        m2_scs, m3_lattice, n5_lattice, powerset_lattice)
from .lattice import (Lattice, ValidationReport, Violation, build_lattice,
                      heyting_implies, is_distributive, join, leq, meet)
from .scs import (SCS, SpaceFunction, apply_space, build_scs, canonical_group,
                  check_space_axioms, enumerate_space_functions, fn_join,
                  fn_leq, lambda_bot, lambda_top, space_function)

__version__ = "0.1.0"

__all__ = [
    "AumannModel", "CarrierMismatchError", "DeltaResult",
    "EnumerationCapError", "ExtrusionFunction", "ExtrusionLawError",
    "FrameRequiredError", "Lattice", "NotMeetPreservingError",
    "NotSurjectiveError", "SCS", "SchemaError", "SpaceFunction",
    "SpatialCSError", "UnknownAgentError", "UnknownElementError",
    "ValidationReport", "Violation",
    "agent_projection", "apply_space", "aumann_model", "aumann_scs",
    "available_backends", "backend_name", "build_lattice", "build_scs",
    "canonical_group", "check_space_axioms", "count_space_functions",
    "delta_empty", "delta_function", "delta_oracle", "delta_part",
    "delta_table", "distributed_knowledge", "enumerate_space_functions",
    "event_index", "external_extrusion", "extrusion_inf", "extrusion_sup",
    "finite_witness", "fn_join", "fn_leq", "group_projection",
    "has_right_inverse_precheck", "heyting_implies", "is_distributive",
    "is_surjective", "join", "join_projection", "knowledge", "lambda_bot",
    "lambda_top", "leq", "m2_scs", "m3_lattice", "meet", "n5_lattice",
    "powerset_lattice", "preserves_meets", "space_function", "use_backend",
    "verify_extrusion_law",
]
