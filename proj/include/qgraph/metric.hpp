#pragma once

#include <optional>

#include "qgraph/model.hpp"

namespace qgraph {

/// A candidate metric together with its positivity verdict.
struct MetricResult {
    RealMatrix theta;
    bool positive_definite = false;
    double min_eigenvalue = 0.0;
    std::optional<double> alpha;
};

/// Dyson map Omega (principal square root of the metric) and the Hermitian
/// image Omega H Omega^{-1}.
struct DysonPair {
    RealMatrix omega;
    RealMatrix hermitized;
};

struct PositivityReport {
    bool positive = false;
    double min_eigenvalue = 0.0;
};

struct AlphaInterval {
    double lo = -0.5;
    double hi = 0.5;
    bool hi_unbounded = false;
};

/// Intertwining residuals above this make `hermitize` refuse the metric.
inline constexpr double kMaxIntertwiningResidual = 1e-8;

/// Closed-form indefinite pseudometric of H(g,h;z) for L = 1, N = 2K+2.
/// Nonzero entries (one-based): P[K+1,K+2] = P[K+2,K+1] = 2,
/// P[K+1,K+1] = P[K+2,K+2] = g+h, P[2..K] = (2+g-h-hg-g^2)/(1+g),
/// P[K+3..2K+1] = (2+h-g-gh-h^2)/(1+h), and the wedge endpoints scaled by
/// (1-z)/(1+z) relative to their neighbours.
RealMatrix closed_form_pseudometric(int K, const Couplings& c);

/// Diagonal metric of H(g,g;z), N = 2K+2L: 1-g on the wedge sites, 1+g on
/// the loop sites, (1-z)(1-g)/(1+z) on the two endpoints.
RealMatrix diagonal_metric(int K, int L, double g, double z);

/// The same K=2 metric written in its unsimplified form, with
/// (1+g-(1+g)g)/(1+g) in place of 1-g.
RealMatrix metric_k2_byhand(double g, double z);

/// Theta(alpha) = Theta_diag + alpha * P for the K=2, g=h loop.
MetricResult theta_family_k2(double g, double z, double alpha);

/// Open alpha interval (-1/2, (1+g)/(2(1-g))) on which Theta(alpha) is
/// positive definite. Needs |g| < 1.
AlphaInterval alpha_interval(double g);

/// Smallest eigenvalue of the symmetrized matrix; positive when it exceeds
/// 1e-12 * ||M||_2. Throws StructureError if M is asymmetric beyond
/// sym_tol (relative to its largest entry).
PositivityReport is_positive_definite(const RealMatrix& m, double sym_tol = 1e-12);

/// Principal (symmetric positive-definite) square root of theta.
RealMatrix dyson_map(const RealMatrix& theta);

/// Omega = sqrt(theta) and Omega H Omega^{-1}. Refuses indefinite metrics and
/// metrics whose intertwining residual exceeds kMaxIntertwiningResidual.
DysonPair hermitize(const RealMatrix& h, const RealMatrix& theta);

/// ||M - M^T||_F / max(1, ||M||_F).
double hermiticity_defect(const RealMatrix& m);

}  // namespace qgraph
