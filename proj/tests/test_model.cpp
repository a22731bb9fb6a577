#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "qgraph/error.hpp"
#include "qgraph/model.hpp"

using namespace qgraph;

namespace {

// Hand-typed from the published 6x6, 8x8 and 10x10 displays (one-based rows).
RealMatrix reference_k2(double g, double h, double z) {
    RealMatrix m(6, 6);
    m << 2, -1 - z, 0, 0, 0, 0,
        -1 + z, 3, -1 - g, -1 - h, 0, 0,
        0, -1 + g, 2, 0, -1 + h, 0,
        0, -1 + h, 0, 2, -1 + g, 0,
        0, 0, -1 - h, -1 - g, 3, -1 + z,
        0, 0, 0, 0, -1 - z, 2;
    return m;
}

RealMatrix reference_k3(double g, double z) {
    RealMatrix m(8, 8);
    m << 2, -1 - z, 0, 0, 0, 0, 0, 0,
        -1 + z, 2, -1, 0, 0, 0, 0, 0,
        0, -1, 3, -1 - g, -1 - g, 0, 0, 0,
        0, 0, -1 + g, 2, 0, -1 + g, 0, 0,
        0, 0, -1 + g, 0, 2, -1 + g, 0, 0,
        0, 0, 0, -1 - g, -1 - g, 3, -1, 0,
        0, 0, 0, 0, 0, -1, 2, -1 + z,
        0, 0, 0, 0, 0, 0, -1 - z, 2;
    return m;
}

RealMatrix reference_k4(double g, double z) {
    RealMatrix m(10, 10);
    m << 2, -1 - z, 0, 0, 0, 0, 0, 0, 0, 0,
        -1 + z, 2, -1, 0, 0, 0, 0, 0, 0, 0,
        0, -1, 2, -1, 0, 0, 0, 0, 0, 0,
        0, 0, -1, 3, -1 - g, -1 - g, 0, 0, 0, 0,
        0, 0, 0, -1 + g, 2, 0, -1 + g, 0, 0, 0,
        0, 0, 0, -1 + g, 0, 2, -1 + g, 0, 0, 0,
        0, 0, 0, 0, -1 - g, -1 - g, 3, -1, 0, 0,
        0, 0, 0, 0, 0, 0, -1, 2, -1, 0,
        0, 0, 0, 0, 0, 0, 0, -1, 2, -1 + z,
        0, 0, 0, 0, 0, 0, 0, 0, -1 - z, 2;
    return m;
}

int count_bonds(const RealMatrix& m) {
    int bonds = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != 0.0) ++bonds;
    return bonds;
}

}  // namespace

TEST_CASE("validate_couplings") {
    auto r = validate_couplings({0, 0, 0});
    CHECK(r.valid);
    CHECK(r.errors.empty());
    CHECK(r.warnings.empty());

    r = validate_couplings({-1, 0, 0});
    CHECK_FALSE(r.valid);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].find("1+g") != std::string::npos);

    r = validate_couplings({1.2, 1.2, 0});
    CHECK(r.valid);
    CHECK(r.warnings.size() == 2);

    r = validate_couplings({0, 0, -1});
    CHECK_FALSE(r.valid);
}

TEST_CASE("free chain") {
    CHECK(build_free_chain(1) == RealMatrix::Constant(1, 1, 2.0));
    CHECK_THROWS_AS(build_free_chain(0), SizeError);

    for (int n : {3, 5, 8}) {
        const auto m = build_free_chain(n);
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(m);
        for (int k = 1; k <= n; ++k) {
            const double expected = 2.0 - 2.0 * std::cos(k * std::numbers::pi / (n + 1));
            CHECK(es.eigenvalues()(k - 1) == doctest::Approx(expected).epsilon(1e-12));
        }
    }

    const auto m5 = build_free_chain(5);
    CHECK(m5 == m5.transpose());
    Eigen::VectorXd rows = m5.rowwise().sum();
    Eigen::VectorXd expected(5);
    expected << 1, 0, 0, 0, 1;
    CHECK(rows == expected);
}

TEST_CASE("star lattice") {
    for (int K = 1; K <= 4; ++K) CHECK(build_star_lattice(2, K) == build_free_chain(2 * K + 1));

    const auto t = build_star_lattice(3, 1);
    REQUIRE(t.rows() == 4);
    CHECK(t(1, 1) == 3.0);
    CHECK(count_bonds(t) == 3);
    CHECK(t == t.transpose());

    const auto t2 = build_star_lattice(3, 2);
    CHECK(t2.rows() == 7);
    CHECK(t2 == t2.transpose());
    CHECK(count_bonds(t2) == 6);
    CHECK(t2.diagonal().maxCoeff() == 3.0);
    CHECK((t2.diagonal().array() == 2.0).count() == 6);

    const auto t5 = build_star_lattice(5, 3);
    CHECK(t5.rows() == 16);
    CHECK(count_bonds(t5) == 15);

    CHECK_THROWS_AS(build_star_lattice(1, 2), SizeError);
    CHECK_THROWS_AS(build_star_lattice(3, 0), SizeError);
}

TEST_CASE("loop Hamiltonian reproduces the published matrices") {
    for (auto [g, h, z] : {std::tuple{0.2, 0.1, 0.3}, {-0.7, 0.4, 0.9}, {1.5, -2.0, 0.25}}) {
        CHECK(build_loop_hamiltonian(2, 1, {g, h, z}) == reference_k2(g, h, z));
    }
    CHECK(build_loop_hamiltonian(3, 1, {0.2, 0.2, 0.1}) == reference_k3(0.2, 0.1));
    CHECK(build_loop_hamiltonian(3, 1, {-0.6, -0.6, 0.7}) == reference_k3(-0.6, 0.7));
    CHECK(build_loop_hamiltonian(4, 1, {0.35, 0.35, -0.45}) == reference_k4(0.35, -0.45));

    const auto free = build_loop_hamiltonian(2, 1, {0, 0, 0});
    CHECK(free == free.transpose());

    CHECK(build_loop_hamiltonian(GraphSpec::loop(3, 2), {0.1, 0.2, 0.3}).rows() == 10);
    CHECK_THROWS_AS(build_loop_hamiltonian(1, 1, {}), SizeError);
    CHECK_THROWS_AS(build_loop_hamiltonian(2, 0, {}), SizeError);
    CHECK_THROWS_AS(build_loop_hamiltonian(GraphSpec::chain(3), {}), SizeError);
}

TEST_CASE("loop Hamiltonian structure properties") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> coupling(-0.9, 0.9);
    std::uniform_int_distribution<int> size(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
        const int K = size(rng) + 1;
        const int L = size(rng);
        const Couplings c{coupling(rng), coupling(rng), coupling(rng)};
        const auto m = build_loop_hamiltonian(K, L, c);
        const LoopLayout at{K, L};
        REQUIRE(m.rows() == 2 * K + 2 * L);
        CHECK(GraphSpec::loop(K, L).dimension() == 2 * K + 2 * L);

        // coupled bonds, as (row with -1-c, partner, c)
        const std::vector<std::tuple<int, int, double>> coupled{
            {at.left_end(), at.left_end() + 1, c.z},   {at.right_end(), at.right_end() - 1, c.z},
            {at.left_hub(), at.upper(0), c.g},         {at.left_hub(), at.lower(0), c.h},
            {at.right_hub(), at.upper(L - 1), c.h},    {at.right_hub(), at.lower(L - 1), c.g}};
        RealMatrix asym = m - m.transpose();
        for (auto [a, b, cv] : coupled) {
            CHECK(m(a, b) == -1.0 - cv);
            CHECK(m(b, a) == -1.0 + cv);
            CHECK(0.5 * (m(a, b) + m(b, a)) == doctest::Approx(-1.0));
            asym(a, b) = 0.0;
            asym(b, a) = 0.0;
        }
        CHECK(asym.cwiseAbs().maxCoeff() == 0.0);

        const auto free = build_loop_hamiltonian(K, L, {0, 0, 0});
        CHECK(free == free.transpose());
        for (int i = 0; i < free.rows(); ++i) {
            const int degree = static_cast<int>((free.row(i).array() == -1.0).count());
            if (i == at.left_end() || i == at.right_end()) {
                CHECK(degree == 1);
                CHECK(free(i, i) == 2.0);
            } else {
                CHECK(free(i, i) == degree);
            }
        }
    }
}

TEST_CASE("graph spec helpers") {
    CHECK(GraphSpec::chain(4).dimension() == 4);
    CHECK(GraphSpec::star(3, 2).dimension() == 7);
    CHECK(GraphSpec::loop(3, 2).dimension() == 10);
    CHECK(graph_kind_from_string(to_string(GraphKind::Star)) == GraphKind::Star);
    CHECK_THROWS_AS(graph_kind_from_string("tree"), SizeError);
    const auto c = Couplings::from_gamma_delta(0.3, -0.1, 0.5);
    CHECK(c.g == doctest::Approx(0.2));
    CHECK(c.h == doctest::Approx(0.4));
    CHECK(c.gamma() == doctest::Approx(0.3));
    CHECK(c.delta() == doctest::Approx(-0.1));
}
