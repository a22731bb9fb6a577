#include "qgraph/dieudonne.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

// Symmetric parts of exact kernel vectors are rank deficient only up to
// rounding, far below this relative cut.
constexpr double kSymmetricRankTol = 1e-8;

template <class Matrix>
Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void require_square(const RealMatrix& m, const char* what) {
    if (m.rows() != m.cols()) throw SizeError(std::string(what) + ": matrix is not square");
}

// Orthonormal basis of the column span of `columns`, dropping directions
// whose singular value is below rel_tol * sigma_max.
RealMatrix orthonormal_span(const RealMatrix& columns, double rel_tol) {
    if (columns.cols() == 0) return columns;
    Eigen::JacobiSVD<RealMatrix> svd(columns, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    if (sv.size() == 0 || sv(0) == 0.0) return RealMatrix(columns.rows(), 0);
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > rel_tol * sv(0)) ++rank;
    return svd.matrixU().leftCols(rank);
}

}  // namespace

RealMatrix dieudonne_operator(const RealMatrix& h) {
    require_square(h, "dieudonne_operator");
    const RealMatrix id = RealMatrix::Identity(h.rows(), h.cols());
    const RealMatrix ht = h.transpose();
    return kron(id, ht) - kron(ht, id);
}

ComplexMatrix dieudonne_operator(const ComplexMatrix& h) {
    if (h.rows() != h.cols()) throw SizeError("dieudonne_operator: matrix is not square");
    const ComplexMatrix id = ComplexMatrix::Identity(h.rows(), h.cols());
    return kron(id, ComplexMatrix(h.adjoint())) - kron(ComplexMatrix(h.transpose()), id);
}

PseudometricBasis kernel_basis(const RealMatrix& h, double rank_tol) {
    require_square(h, "kernel_basis");
    if (!(rank_tol > 0.0)) throw DomainError("kernel_basis: rank_tol must be positive");
    const Eigen::Index n = h.rows();

    PseudometricBasis out;
    out.rank_tol = rank_tol;
    if (n == 0) return out;

    const RealMatrix op = dieudonne_operator(h);
    Eigen::BDCSVD<RealMatrix> svd(op, Eigen::ComputeFullV);
    out.singular_values = svd.singularValues();
    const auto& sv = out.singular_values;
    const double cut = rank_tol * sv(0);

    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > cut) ++rank;
    const Eigen::Index nullity = sv.size() - rank;
    out.kernel_dimension = static_cast<int>(nullity);
    if (nullity == 0) {
        out.spectral_gap = std::numeric_limits<double>::infinity();
    } else if (rank == 0 || sv(rank) == 0.0) {
        out.spectral_gap = std::numeric_limits<double>::infinity();
    } else {
        out.spectral_gap = sv(rank - 1) / sv(rank);
    }

    RealMatrix sym_parts(n * n, nullity);
    for (Eigen::Index k = 0; k < nullity; ++k) {
        const Eigen::VectorXd v = svd.matrixV().col(rank + k);
        const RealMatrix p = Eigen::Map<const RealMatrix>(v.data(), n, n);
        out.kernel.push_back(p);
        const RealMatrix s = 0.5 * (p + p.transpose());
        sym_parts.col(k) = Eigen::Map<const Eigen::VectorXd>(s.data(), n * n);
    }

    const RealMatrix basis = orthonormal_span(sym_parts, kSymmetricRankTol);
    for (Eigen::Index k = 0; k < basis.cols(); ++k) {
        RealMatrix s = Eigen::Map<const RealMatrix>(basis.col(k).data(), n, n);
        s = 0.5 * (s + s.transpose()).eval();
        s /= s.norm();
        out.residuals.push_back(residual(h, s));
        out.inertias.push_back(inertia(s, 1e-10));
        out.solutions.push_back(std::move(s));
    }
    return out;
}

int predicted_kernel_dimension(const SpectrumReport& s) {
    if (!s.all_real) {
        throw DomainError("predicted_kernel_dimension: spectrum has complex eigenvalues (max |Im| = " +
                          std::to_string(s.max_abs_imag) + "); the count only holds for real spectra");
    }
    int total = 0;
    for (const auto& c : s.clusters) total += c.count * c.count;
    return total;
}

double residual(const RealMatrix& h, const RealMatrix& p) {
    if (h.rows() != h.cols() || p.rows() != p.cols() || h.rows() != p.rows()) {
        throw SizeError("residual: H and P must be square of equal size");
    }
    const double pn = p.norm();
    const double hn = h.norm();
    if (pn == 0.0 || hn == 0.0) return 0.0;
    return (h.transpose() * p - p * h).norm() / (hn * pn);
}

namespace {

double span_residual(const std::vector<RealMatrix>& basis, const RealMatrix& p) {
    const double pn = p.norm();
    if (pn == 0.0) return 0.0;
    RealMatrix rest = p;
    for (const auto& b : basis) {
        if (b.rows() != p.rows() || b.cols() != p.cols()) throw SizeError("projection_residual: size mismatch");
        rest -= (b.cwiseProduct(p)).sum() * b;
    }
    return rest.norm() / pn;
}

}  // namespace

double projection_residual(const PseudometricBasis& basis, const RealMatrix& p) {
    return span_residual(basis.solutions, p);
}

double kernel_projection_residual(const PseudometricBasis& basis, const RealMatrix& p) {
    return span_residual(basis.kernel, p);
}

Inertia inertia(const RealMatrix& p, double tol) {
    if (p.rows() != p.cols()) throw SizeError("inertia: matrix is not square");
    const double asym = p.rows() == 0 ? 0.0 : (p - p.transpose()).cwiseAbs().maxCoeff();
    if (asym > tol) {
        throw StructureError("inertia: matrix is not symmetric (max |P - P^T| = " + std::to_string(asym) + ")");
    }
    Inertia out;
    if (p.rows() == 0) return out;
    const RealMatrix sym = 0.5 * (p + p.transpose());
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ComputationError("inertia: symmetric eigensolver failed");
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        const double v = solver.eigenvalues()(i);
        if (v > tol) ++out.positive;
        else if (v < -tol) ++out.negative;
        else ++out.zero;
    }
    return out;
}

}  // namespace qgraph
