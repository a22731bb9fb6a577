#include <doctest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "qgraph/dieudonne.hpp"
#include "qgraph/error.hpp"
#include "qgraph/metric.hpp"
#include "qgraph/model.hpp"

using namespace qgraph;

namespace {

// Nullity by full-pivot LU, independent of the SVD route.
int lu_nullity(const RealMatrix& op, double threshold) {
    Eigen::FullPivLU<RealMatrix> lu(op);
    lu.setThreshold(threshold);
    return static_cast<int>(op.cols() - lu.rank());
}

RealMatrix random_matrix(std::mt19937_64& rng, int n) {
    std::normal_distribution<double> nd;
    RealMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = nd(rng);
    return m;
}

Eigen::VectorXd vec(const RealMatrix& m) { return Eigen::Map<const Eigen::VectorXd>(m.data(), m.size()); }

}  // namespace

TEST_CASE("dieudonne_operator acts as P -> H^T P - P H") {
    CHECK(dieudonne_operator(RealMatrix(RealMatrix::Identity(4, 4))).cwiseAbs().maxCoeff() == 0.0);

    std::mt19937_64 rng(3);
    RealMatrix s = random_matrix(rng, 5);
    s = (s + s.transpose()).eval();
    CHECK((dieudonne_operator(s) * vec(s)).norm() < 1e-12);

    const auto h = build_loop_hamiltonian(2, 1, {0.2, 0.1, 0.3});
    const auto op = dieudonne_operator(h);
    CHECK(op.rows() == 36);
    CHECK(op.cols() == 36);
    for (int t = 0; t < 5; ++t) {
        const RealMatrix p = random_matrix(rng, 6);
        const RealMatrix direct = h.transpose() * p - p * h;
        CHECK((op * vec(p) - vec(direct)).norm() < 1e-12);
    }
    CHECK(lu_nullity(op, 1e-10) == 8);

    ComplexMatrix hc = ComplexMatrix::Random(4, 4);
    ComplexMatrix pc = ComplexMatrix::Random(4, 4);
    const ComplexMatrix opc = dieudonne_operator(hc);
    const ComplexMatrix direct = hc.adjoint() * pc - pc * hc;
    const Eigen::VectorXcd lhs = opc * Eigen::Map<const Eigen::VectorXcd>(pc.data(), 16);
    CHECK((lhs - Eigen::Map<const Eigen::VectorXcd>(direct.data(), 16)).norm() < 1e-12);

    CHECK_THROWS_AS(dieudonne_operator(RealMatrix(2, 3)), SizeError);
}

TEST_CASE("kernel of a symmetric matrix with simple spectrum") {
    std::mt19937_64 rng(17);
    RealMatrix s = random_matrix(rng, 5);
    s = (s + s.transpose()).eval();
    const auto basis = kernel_basis(s);
    CHECK(basis.kernel_dimension == 5);
    CHECK(basis.solutions.size() == 5);

    Eigen::SelfAdjointEigenSolver<RealMatrix> es(s);
    for (int k = 0; k < 5; ++k) {
        const RealMatrix projector = es.eigenvectors().col(k) * es.eigenvectors().col(k).transpose();
        CHECK(projection_residual(basis, projector) < 1e-10);
    }
    CHECK(projection_residual(basis, RealMatrix(RealMatrix::Identity(5, 5))) < 1e-10);
}

TEST_CASE("kernel of the K=2 loop") {
    const Couplings c{0.2, 0.1, 0.3};
    const auto h = build_loop_hamiltonian(2, 1, c);
    const auto basis = kernel_basis(h);
    CHECK(basis.kernel_dimension == 8);
    // symmetric intertwiners: 4 simple levels + 3 from the doublet
    CHECK(basis.solutions.size() == 7);
    CHECK(basis.spectral_gap > 1e3);
    CHECK(basis.singular_values.size() == 36);
    CHECK(projection_residual(basis, closed_form_pseudometric(2, c)) < 1e-10);
    CHECK(kernel_projection_residual(basis, closed_form_pseudometric(2, c)) < 1e-10);
    CHECK(projection_residual(basis, RealMatrix(RealMatrix::Identity(6, 6))) > 0.1);

    CHECK_THROWS_AS(kernel_basis(h, 0.0), DomainError);
}

TEST_CASE("predicted_kernel_dimension") {
    CHECK(predicted_kernel_dimension(make_spectrum_report({1, 2, 3, 4, 5, 6})) == 6);
    CHECK(predicted_kernel_dimension(eigenvalues(build_loop_hamiltonian(2, 1, {0.2, 0.1, 0.3}))) == 8);
    CHECK(predicted_kernel_dimension(make_spectrum_report({1, 1, 1, 2, 3, 4})) == 12);
    CHECK_THROWS_AS(predicted_kernel_dimension(make_spectrum_report({cdouble(1, 1), cdouble(1, -1)})), DomainError);
}

TEST_CASE("residual") {
    std::mt19937_64 rng(23);
    RealMatrix s = random_matrix(rng, 4);
    s = (s + s.transpose()).eval();
    CHECK(residual(s, RealMatrix::Identity(4, 4)) == 0.0);

    const Couplings c{0.2, 0.1, 0.3};
    const auto h = build_loop_hamiltonian(2, 1, c);
    CHECK(residual(h, closed_form_pseudometric(2, c)) < 1e-13);
    CHECK(residual(h, RealMatrix::Identity(6, 6)) > 0.01);
    CHECK(residual(h, RealMatrix::Zero(6, 6)) == 0.0);
    CHECK_THROWS_AS(residual(h, RealMatrix::Identity(4, 4)), SizeError);
}

TEST_CASE("inertia") {
    CHECK(inertia(RealMatrix::Identity(6, 6)) == Inertia{6, 0, 0});
    // diag(2,2,2,2) plus the block [[0,2],[2,0]] with eigenvalues +-2
    CHECK(inertia(closed_form_pseudometric(2, {0, 0, 0})) == Inertia{5, 1, 0});
    RealMatrix d(2, 2);
    d << 1, 0, 0, -1;
    CHECK(inertia(d) == Inertia{1, 1, 0});
    RealMatrix singular = RealMatrix::Zero(3, 3);
    singular(0, 0) = 1;
    CHECK(inertia(singular) == Inertia{1, 0, 2});
    RealMatrix asym(2, 2);
    asym << 1, 1, 0, 1;
    CHECK_THROWS_AS(inertia(asym), StructureError);
}

TEST_CASE("kernel basis properties inside the real domain") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    int checked = 0;
    while (checked < 24) {
        const int K = 2 + checked % 3;
        const Couplings c{u(rng), u(rng), u(rng)};
        const auto h = build_loop_hamiltonian(K, 1, c);
        const auto spec = eigenvalues(h);
        if (!spec.all_real) continue;
        ++checked;
        const auto basis = kernel_basis(h);
        INFO("K=" << K << " g=" << c.g << " h=" << c.h << " z=" << c.z);
        CHECK(basis.kernel_dimension == predicted_kernel_dimension(spec));
        CHECK(lu_nullity(dieudonne_operator(h), 1e-10) == basis.kernel_dimension);
        CHECK(basis.spectral_gap > 1e3);
        for (std::size_t i = 0; i < basis.solutions.size(); ++i) {
            const auto& s = basis.solutions[i];
            CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(basis.residuals[i] < 10 * basis.rank_tol);
            for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(s.cwiseProduct(basis.solutions[j]).sum()) < 1e-10);
        }
        for (const auto& p : basis.kernel) CHECK(residual(h, p.transpose()) < 10 * basis.rank_tol);
        CHECK(projection_residual(basis, closed_form_pseudometric(K, c)) < 1e-10);
    }
}
