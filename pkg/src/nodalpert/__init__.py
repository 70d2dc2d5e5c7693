"""Nodal domains, Urschel numbers and perturbation certificates for generalized Laplacians."""

from .graph import Graph, connected_components, neighbors, parse_graph, format_graph
from .spectral import (GeneralizedLaplacian, NotGeneralizedLaplacian, Spectrum, EigGroup,
                       classical_laplacian, eig_sym, group_eigenvalues, shifted_pseudoinverse,
                       sym_matrix)
from .nodal import sign_pattern, snd, wnd, urschel_profile, UrschelProfile
from .urschel import UrschelClassification, classify_subspace, classify_vector
from .perturb_simple import (PerturbDirection, SigningCertificate, certify_simple,
                             first_order_correction, perturbation_image_basis,
                             realize_urschel_pattern)
from .perturb_multi import (SplitBasis, reduce_to_small, split_group, splitting_diagonal,
                            verify_multi_bounds)
from .oracle import VerificationReport, verify_instance

__version__ = "0.1.0"
