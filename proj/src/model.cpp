#include "qgraph/model.hpp"

#include <cmath>
#include <sstream>

#include "qgraph/error.hpp"

namespace qgraph {

std::string to_string(GraphKind kind) {
    switch (kind) {
        case GraphKind::Chain: return "chain";
        case GraphKind::Star: return "star";
        case GraphKind::Loop: return "loop";
    }
    return "unknown";
}

GraphKind graph_kind_from_string(const std::string& name) {
    if (name == "chain") return GraphKind::Chain;
    if (name == "star") return GraphKind::Star;
    if (name == "loop") return GraphKind::Loop;
    throw SizeError("unknown graph kind '" + name + "'");
}

GraphSpec GraphSpec::chain(int n_points) {
    GraphSpec s;
    s.kind = GraphKind::Chain;
    s.n_points = n_points;
    return s;
}

GraphSpec GraphSpec::star(int q, int arm_len) {
    GraphSpec s;
    s.kind = GraphKind::Star;
    s.q = q;
    s.arm_len = arm_len;
    return s;
}

GraphSpec GraphSpec::loop(int K, int L) {
    GraphSpec s;
    s.kind = GraphKind::Loop;
    s.K = K;
    s.L = L;
    return s;
}

void GraphSpec::validate() const {
    switch (kind) {
        case GraphKind::Chain:
            if (n_points < 1) throw SizeError("chain needs n_points >= 1, got " + std::to_string(n_points));
            break;
        case GraphKind::Star:
            if (q < 2) throw SizeError("star needs q >= 2 arms, got " + std::to_string(q));
            if (arm_len < 1) throw SizeError("star needs arm_len >= 1, got " + std::to_string(arm_len));
            break;
        case GraphKind::Loop:
            if (K < 2) throw SizeError("loop needs K >= 2, got " + std::to_string(K));
            if (L < 1) throw SizeError("loop needs L >= 1, got " + std::to_string(L));
            break;
    }
}

int GraphSpec::dimension() const {
    validate();
    switch (kind) {
        case GraphKind::Chain: return n_points;
        case GraphKind::Star: return q * arm_len + 1;
        case GraphKind::Loop: return 2 * K + 2 * L;
    }
    return 0;
}

ValidationReport validate_couplings(const Couplings& c) {
    ValidationReport report;
    const auto check = [&](const char* name, double v) {
        if (!std::isfinite(v)) {
            report.valid = false;
            report.errors.push_back(std::string(name) + " is not finite");
            return;
        }
        if (v == -1.0) {
            report.valid = false;
            report.errors.push_back(std::string("singular denominator 1+") + name);
        } else if (std::abs(v) >= 1.0) {
            std::ostringstream msg;
            msg << "|" << name << "| = " << std::abs(v) << " outside guaranteed-positivity box |" << name << "| < 1";
            report.warnings.push_back(msg.str());
        }
    };
    check("g", c.g);
    check("h", c.h);
    check("z", c.z);
    return report;
}

RealMatrix build_free_chain(int n_points) {
    GraphSpec::chain(n_points).validate();
    RealMatrix m = RealMatrix::Zero(n_points, n_points);
    for (int i = 0; i < n_points; ++i) {
        m(i, i) = 2.0;
        if (i + 1 < n_points) {
            m(i, i + 1) = -1.0;
            m(i + 1, i) = -1.0;
        }
    }
    return m;
}

RealMatrix build_star_lattice(int q, int arm_len) {
    const int n = GraphSpec::star(q, arm_len).dimension();
    RealMatrix m = RealMatrix::Zero(n, n);
    const int hub = arm_len;
    m.diagonal().setConstant(2.0);
    m(hub, hub) = std::max(q, 2);

    const auto bond = [&](int a, int b) {
        m(a, b) = -1.0;
        m(b, a) = -1.0;
    };
    // first arm: sites 0 .. arm_len-1, tip first
    for (int i = 0; i + 1 < arm_len; ++i) bond(i, i + 1);
    bond(arm_len - 1, hub);
    for (int a = 1; a < q; ++a) {
        const int first = hub + 1 + (a - 1) * arm_len;
        bond(hub, first);
        for (int i = 0; i + 1 < arm_len; ++i) bond(first + i, first + i + 1);
    }
    return m;
}

RealMatrix build_loop_hamiltonian(int K, int L, const Couplings& c) {
    GraphSpec::loop(K, L).validate();
    if (!std::isfinite(c.g) || !std::isfinite(c.h) || !std::isfinite(c.z)) {
        throw DomainError("loop Hamiltonian needs finite couplings");
    }
    const LoopLayout at{K, L};
    const int n = at.dimension();
    RealMatrix m = RealMatrix::Zero(n, n);
    m.diagonal().setConstant(2.0);
    m(at.left_hub(), at.left_hub()) = 3.0;
    m(at.right_hub(), at.right_hub()) = 3.0;

    // (-1-c) in row `a`, (-1+c) in row `b`
    const auto bond = [&](int a, int b, double coupling) {
        m(a, b) = -1.0 - coupling;
        m(b, a) = -1.0 + coupling;
    };

    bond(at.left_end(), at.left_end() + 1, c.z);
    for (int i = 1; i + 1 < K; ++i) bond(i, i + 1, 0.0);
    bond(at.right_end(), at.right_end() - 1, c.z);
    for (int i = at.right_hub(); i + 1 < at.right_end(); ++i) bond(i, i + 1, 0.0);

    bond(at.left_hub(), at.upper(0), c.g);
    bond(at.left_hub(), at.lower(0), c.h);
    bond(at.right_hub(), at.upper(L - 1), c.h);
    bond(at.right_hub(), at.lower(L - 1), c.g);
    for (int i = 0; i + 1 < L; ++i) {
        bond(at.upper(i), at.upper(i + 1), 0.0);
        bond(at.lower(i), at.lower(i + 1), 0.0);
    }
    return m;
}

RealMatrix build_loop_hamiltonian(const GraphSpec& spec, const Couplings& c) {
    if (spec.kind != GraphKind::Loop) throw SizeError("build_loop_hamiltonian needs a loop graph");
    return build_loop_hamiltonian(spec.K, spec.L, c);
}

RealMatrix build_graph(const GraphSpec& spec, const Couplings& c) {
    switch (spec.kind) {
        case GraphKind::Chain: return build_free_chain(spec.n_points);
        case GraphKind::Star: return build_star_lattice(spec.q, spec.arm_len);
        case GraphKind::Loop: return build_loop_hamiltonian(spec.K, spec.L, c);
    }
    throw SizeError("unknown graph kind");
}

}  // namespace qgraph
