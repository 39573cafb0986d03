"""Companion skeletons, certified digraph isomorphism and reaction-system equivalence."""
from .core_sets import (CompanionPartition, FaithfulCorrespondence, SetFamily,
                        companion_partition, find_faithful_correspondence,
                        intersection_closure, iter_faithful_correspondences,
                        mask_of, elements_of, neighborhood, region_size_signature)
from .errors import (DomainError, ParseError, PreconditionError, ResourceError,
                     RxnSkelError, SynthesisError)
from .graphs import (Digraph, OneOutGraph, brute_force_isomorphic, in_set,
                     is_isomorphism, out_family, weak_components)
from .lattice import (MainSkeleton, PowersetPoset, cone_companions, cone_family,
                      embed_as_cone_graph, main_skeleton_graph, up_cone)
from .reaction_systems import (Reaction, ReactionSystem, equivalent,
                               is_transition_graph, main_skeleton, res_table,
                               result, result_family, rs_from_one_out_graph,
                               swap_states, transition_graph,
                               validate_state_sequence, zero_context_graph)
from .skeletons import (Skeleton, are_companions, build_isomorphism,
                        certify_isomorphic, companion_edge_swap,
                        graph_of_skeleton, skeleton_of_graph)

__version__ = "0.1.0"
