#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgraph {

using cdouble = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

enum class GraphKind { Chain, Star, Loop };

std::string to_string(GraphKind kind);
GraphKind graph_kind_from_string(const std::string& name);

/// Declarative description of a lattice.
///
/// Chain: `n_points` sites with Dirichlet ends.
/// Star: `q` arms of `arm_len` sites around one hub.
/// Loop: two outer wedges of `K` sites each (the innermost one is the hub)
/// joined through an upper and a lower branch of `L` sites each.
struct GraphSpec {
    GraphKind kind = GraphKind::Chain;
    int n_points = 1;
    int q = 2;
    int arm_len = 1;
    int K = 2;
    int L = 1;

    static GraphSpec chain(int n_points);
    static GraphSpec star(int q, int arm_len);
    static GraphSpec loop(int K, int L);

    /// Matrix dimension; throws SizeError if the graph description is malformed.
    [[nodiscard]] int dimension() const;
    void validate() const;
};

/// Non-Hermitian couplings of the loop Hamiltonian.
struct Couplings {
    double g = 0.0;
    double h = 0.0;
    double z = 0.0;

    [[nodiscard]] double gamma() const { return 0.5 * (g + h); }
    [[nodiscard]] double delta() const { return 0.5 * (g - h); }

    static Couplings from_gamma_delta(double gamma, double delta, double z) {
        return {gamma + delta, gamma - delta, z};
    }
};

struct ValidationReport {
    bool valid = true;
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

/// Reports poles of the closed-form metrics (g, h or z equal to -1) as errors
/// and couplings outside the |c| < 1 box as warnings.
ValidationReport validate_couplings(const Couplings& c);

/// Dirichlet discrete Laplacian, tridiag(-1, 2, -1).
RealMatrix build_free_chain(int n_points);

/// Free Laplacian on a q-pointed star. The first arm is listed from its tip
/// inward, then the hub, then the remaining arms one after another, each
/// ordered outward. With q = 2 this is exactly the free chain of 2*arm_len+1
/// sites.
RealMatrix build_star_lattice(int q, int arm_len);

/// Loop Hamiltonian H(g,h;z) of dimension 2K+2L.
///
/// Site order: x_{-K} .. x_{-1}, U_1 .. U_L, D_1 .. D_L, x_1 .. x_K.
/// The hubs x_{-1} and x_1 carry diagonal 3, every other site 2. A bond
/// with coupling c stores -1-c in the row of the hub (or of the wedge
/// endpoint, for z) and -1+c in the row of its partner. The left hub binds
/// U_1 with g and D_1 with h, the right hub binds U_L with h and D_L with g.
/// For L >= 2 the bonds inside the branches are plain.
RealMatrix build_loop_hamiltonian(int K, int L, const Couplings& c);
RealMatrix build_loop_hamiltonian(const GraphSpec& spec, const Couplings& c);

/// Builds the free Laplacian of a chain or star, or the loop Hamiltonian.
RealMatrix build_graph(const GraphSpec& spec, const Couplings& c = {});

/// Zero-based positions of the distinguished loop sites.
struct LoopLayout {
    int K;
    int L;
    [[nodiscard]] int dimension() const { return 2 * K + 2 * L; }
    [[nodiscard]] int left_end() const { return 0; }
    [[nodiscard]] int left_hub() const { return K - 1; }
    [[nodiscard]] int upper(int i) const { return K + i; }
    [[nodiscard]] int lower(int i) const { return K + L + i; }
    [[nodiscard]] int right_hub() const { return K + 2 * L; }
    [[nodiscard]] int right_end() const { return 2 * K + 2 * L - 1; }
};

}  // namespace qgraph
