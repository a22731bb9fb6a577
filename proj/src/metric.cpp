#include "qgraph/metric.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qgraph/dieudonne.hpp"
#include "qgraph/error.hpp"

namespace qgraph {

namespace {

constexpr double kPositivityRelTol = 1e-12;
constexpr double kUnboundedAlpha = 1e12;

void require_not_pole(double v, const char* name, const char* where) {
    if (v == -1.0 || !std::isfinite(v)) {
        throw DomainError(std::string(where) + ": singular denominator 1+" + name);
    }
}

struct SymmetricRoots {
    RealMatrix root;
    RealMatrix inverse_root;
};

SymmetricRoots symmetric_roots(const RealMatrix& theta, const char* where) {
    const auto pos = is_positive_definite(theta);
    if (!pos.positive) {
        std::ostringstream msg;
        msg << where << ": metric is not positive definite (min eigenvalue " << pos.min_eigenvalue << ")";
        throw StructureError(msg.str());
    }
    const RealMatrix sym = 0.5 * (theta + theta.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym);
    if (solver.info() != Eigen::Success) throw ComputationError(std::string(where) + ": eigensolver failed");
    const auto& v = solver.eigenvectors();
    const Eigen::VectorXd s = solver.eigenvalues().cwiseSqrt();
    SymmetricRoots out;
    out.root = v * s.asDiagonal() * v.transpose();
    out.inverse_root = v * s.cwiseInverse().asDiagonal() * v.transpose();
    return out;
}

}  // namespace

RealMatrix closed_form_pseudometric(int K, const Couplings& c) {
    GraphSpec::loop(K, 1).validate();
    require_not_pole(c.g, "g", "closed_form_pseudometric");
    require_not_pole(c.h, "h", "closed_form_pseudometric");
    require_not_pole(c.z, "z", "closed_form_pseudometric");
    const double g = c.g;
    const double h = c.h;
    const double left = (2.0 + g - h - h * g - g * g) / (1.0 + g);
    const double right = (2.0 + h - g - g * h - h * h) / (1.0 + h);
    const double ratio = (1.0 - c.z) / (1.0 + c.z);

    const LoopLayout at{K, 1};
    RealMatrix p = RealMatrix::Zero(at.dimension(), at.dimension());
    const int up = at.upper(0);
    const int down = at.lower(0);
    p(up, down) = 2.0;
    p(down, up) = 2.0;
    p(up, up) = g + h;
    p(down, down) = g + h;
    for (int i = 1; i <= at.left_hub(); ++i) p(i, i) = left;
    for (int i = at.right_hub(); i < at.right_end(); ++i) p(i, i) = right;
    p(at.left_end(), at.left_end()) = ratio * left;
    p(at.right_end(), at.right_end()) = ratio * right;
    return p;
}

RealMatrix diagonal_metric(int K, int L, double g, double z) {
    GraphSpec::loop(K, L).validate();
    require_not_pole(z, "z", "diagonal_metric");
    const LoopLayout at{K, L};
    Eigen::VectorXd d = Eigen::VectorXd::Constant(at.dimension(), 1.0 - g);
    d.segment(at.upper(0), 2 * L).setConstant(1.0 + g);
    const double end = (1.0 - z) * (1.0 - g) / (1.0 + z);
    d(at.left_end()) = end;
    d(at.right_end()) = end;
    return d.asDiagonal();
}

RealMatrix metric_k2_byhand(double g, double z) {
    require_not_pole(g, "g", "metric_k2_byhand");
    require_not_pole(z, "z", "metric_k2_byhand");
    const double wedge = (1.0 + g - (1.0 + g) * g) / (1.0 + g);
    const double end = ((1.0 + g - (1.0 + g) * g) * (1.0 - z)) / ((1.0 + g) * (1.0 + z));
    Eigen::VectorXd d(6);
    d << end, wedge, 1.0 + g, 1.0 + g, wedge, end;
    return d.asDiagonal();
}

MetricResult theta_family_k2(double g, double z, double alpha) {
    require_not_pole(g, "g", "theta_family_k2");
    require_not_pole(z, "z", "theta_family_k2");
    MetricResult out;
    out.theta = diagonal_metric(2, 1, g, z) + alpha * closed_form_pseudometric(2, {g, g, z});
    const auto pos = is_positive_definite(out.theta);
    out.positive_definite = pos.positive;
    out.min_eigenvalue = pos.min_eigenvalue;
    out.alpha = alpha;
    return out;
}

AlphaInterval alpha_interval(double g) {
    if (!(std::abs(g) < 1.0)) {
        throw DomainError("alpha_interval: needs |g| < 1, got g = " + std::to_string(g));
    }
    AlphaInterval out;
    out.lo = -0.5;
    out.hi = (1.0 + g) / (2.0 * (1.0 - g));
    out.hi_unbounded = !(out.hi < kUnboundedAlpha);
    return out;
}

PositivityReport is_positive_definite(const RealMatrix& m, double sym_tol) {
    if (m.rows() != m.cols()) throw SizeError("is_positive_definite: matrix is not square");
    if (m.rows() == 0) throw SizeError("is_positive_definite: empty matrix");
    if (!m.allFinite()) throw StructureError("is_positive_definite: non-finite entries");
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (asym > sym_tol * scale) {
        std::ostringstream msg;
        msg << "is_positive_definite: matrix is not symmetric (max |M - M^T| = " << asym << ")";
        throw StructureError(msg.str());
    }
    const RealMatrix sym = 0.5 * (m + m.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ComputationError("is_positive_definite: eigensolver failed");
    const auto& ev = solver.eigenvalues();
    const double norm2 = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
    PositivityReport out;
    out.min_eigenvalue = ev(0);
    out.positive = ev(0) > kPositivityRelTol * norm2;
    return out;
}

RealMatrix dyson_map(const RealMatrix& theta) {
    return symmetric_roots(theta, "dyson_map").root;
}

DysonPair hermitize(const RealMatrix& h, const RealMatrix& theta) {
    if (h.rows() != h.cols() || theta.rows() != h.rows() || theta.cols() != h.cols()) {
        throw SizeError("hermitize: H and theta must be square of equal size");
    }
    const auto roots = symmetric_roots(theta, "hermitize");
    const double res = residual(h, theta);
    if (res > kMaxIntertwiningResidual) {
        std::ostringstream msg;
        msg << "hermitize: theta does not intertwine H (relative residual " << res << " > "
            << kMaxIntertwiningResidual << ")";
        throw StructureError(msg.str());
    }
    DysonPair out;
    out.omega = roots.root;
    out.hermitized = roots.root * h * roots.inverse_root;
    return out;
}

double hermiticity_defect(const RealMatrix& m) {
    if (m.rows() != m.cols()) throw SizeError("hermiticity_defect: matrix is not square");
    return (m - m.transpose()).norm() / std::max(1.0, m.norm());
}

}  // namespace qgraph
