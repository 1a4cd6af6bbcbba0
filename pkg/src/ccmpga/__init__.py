"""Exact principal geodesic analysis on the sphere and the hyperboloid.

Points are ambient numpy arrays; a manifold object (:class:`Sphere`,
:class:`Hyperboloid`) supplies the geometry::

    >>> import numpy as np
    >>> from ccmpga import Sphere, ccm_epga
    >>> M = Sphere(2)
    >>> X = M.random_point(np.random.default_rng(0), scale=0.3)[None, :]
"""

from .errors import (ConvergenceError, ConvexityWarning, DomainError,
                     InvalidArgumentError, NumericalFailure)
from .manifolds import Hyperboloid, Sphere, make_manifold, minkowski_inner
from .frechet import MeanConfig, frechet_mean, frechet_variance
from .projection import (GeodesicSubspace, ProjectionResult, descend_codim1, project,
                         project_hyperboloid, project_sphere)
from .pga import (METHODS, DirectionSearchConfig, PgaResult, average_projection_error,
                  ccm_epga, exact_pga_baseline, numerical_projection, run_pga,
                  subspace_projection_error, tangent_pca)
from .reconstruction import ReconstructionStep, reconstruct, reconstruct_step
from .infogeo import (DiagonalGaussian, HalfPlanePoint, IwasawaCoords, UnivariateGaussian,
                      diag_gaussian_to_half_planes, fisher_matrix_univariate,
                      fisher_rao_vs_hyperbolic_check, half_plane_distance,
                      half_plane_to_hyperboloid, hyperboloid_to_half_plane,
                      iwasawa_compose, iwasawa_decompose, spd_embed, spd_unembed,
                      to_half_plane)
from .datasets import DatasetSpec, gen_dataset
from .experiment import run_compare

__version__ = "0.1.0"
