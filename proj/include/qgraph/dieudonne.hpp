#pragma once

#include <vector>

#include "qgraph/model.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

inline constexpr double kDefaultRankTol = 1e-10;

struct Inertia {
    int positive = 0;
    int negative = 0;
    int zero = 0;

    friend bool operator==(const Inertia&, const Inertia&) = default;
};

/// Symmetric solutions of H^T P = P H.
struct PseudometricBasis {
    /// Real symmetric, Frobenius-orthonormal.
    std::vector<RealMatrix> solutions;
    std::vector<double> residuals;
    std::vector<Inertia> inertias;
    double rank_tol = kDefaultRankTol;

    /// Dimension of the full (not necessarily symmetric) kernel.
    int kernel_dimension = 0;
    /// Full kernel basis, reshaped to N x N, Frobenius-orthonormal.
    std::vector<RealMatrix> kernel;
    /// Singular values of the operator, descending.
    Eigen::VectorXd singular_values;
    /// Smallest nonzero singular value over largest zero one; infinite when
    /// the zero ones vanish exactly or there is no kernel.
    double spectral_gap = 0.0;
};

/// Matrix of P -> H^T P - P H on column-stacked P:
/// kron(I, H^T) - kron(H^T, I). For complex H the left factor uses H^dagger.
RealMatrix dieudonne_operator(const RealMatrix& h);
ComplexMatrix dieudonne_operator(const ComplexMatrix& h);

/// Kernel of the Dieudonne operator by dense SVD. Singular values at or below
/// rank_tol * sigma_max count as zero. Each kernel matrix is symmetrized and
/// the symmetric parts are re-orthonormalized into `solutions`.
///
/// The operator is N^2 x N^2, so this is meant for N up to about 60.
PseudometricBasis kernel_basis(const RealMatrix& h, double rank_tol = kDefaultRankTol);

/// Sum over eigenvalue clusters of multiplicity^2 (intertwiner count of a
/// diagonalizable matrix). Throws DomainError if the spectrum is not real.
int predicted_kernel_dimension(const SpectrumReport& s);

/// ||H^T P - P H||_F / (||H||_F ||P||_F), or 0 when P = 0.
double residual(const RealMatrix& h, const RealMatrix& p);

/// Relative distance of P from the span of the basis solutions:
/// ||P - proj(P)||_F / ||P||_F.
double projection_residual(const PseudometricBasis& basis, const RealMatrix& p);
/// Same, against the full kernel.
double kernel_projection_residual(const PseudometricBasis& basis, const RealMatrix& p);

/// Eigenvalue sign counts of a symmetric matrix; |lambda| <= tol counts as zero.
/// Throws StructureError if max |P - P^T| exceeds tol.
Inertia inertia(const RealMatrix& p, double tol = 1e-10);

}  // namespace qgraph
