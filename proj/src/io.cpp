#include "qgraph/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "qgraph/error.hpp"

namespace qgraph::io {

namespace {

void require_finite(double v, const char* where) {
    if (!std::isfinite(v)) throw StructureError(std::string(where) + ": non-finite value cannot be serialized");
}

json meta_to_json(const MatrixMeta& meta) {
    json j = json::object();
    if (meta.graph) j["graph"] = graph_to_json(*meta.graph);
    if (meta.couplings) j["couplings"] = couplings_to_json(*meta.couplings);
    return j;
}

MatrixMeta meta_from_json(const json& j) {
    MatrixMeta meta;
    if (!j.is_object()) return meta;
    if (j.contains("graph") && !j["graph"].is_null()) meta.graph = graph_from_json(j["graph"]);
    if (j.contains("couplings") && !j["couplings"].is_null()) meta.couplings = couplings_from_json(j["couplings"]);
    return meta;
}

}  // namespace

RealMatrix ParsedMatrix::real() const {
    if (is_complex && values.imag().cwiseAbs().maxCoeff() != 0.0) {
        throw StructureError("expected a real matrix, got nonzero imaginary parts");
    }
    return values.real();
}

json graph_to_json(const GraphSpec& g) {
    json j;
    j["kind"] = to_string(g.kind);
    switch (g.kind) {
        case GraphKind::Chain: j["n_points"] = g.n_points; break;
        case GraphKind::Star:
            j["q"] = g.q;
            j["arm_len"] = g.arm_len;
            break;
        case GraphKind::Loop:
            j["K"] = g.K;
            j["L"] = g.L;
            break;
    }
    return j;
}

GraphSpec graph_from_json(const json& j) {
    const auto kind = graph_kind_from_string(j.at("kind").get<std::string>());
    switch (kind) {
        case GraphKind::Chain: return GraphSpec::chain(j.at("n_points").get<int>());
        case GraphKind::Star: return GraphSpec::star(j.at("q").get<int>(), j.at("arm_len").get<int>());
        case GraphKind::Loop: return GraphSpec::loop(j.at("K").get<int>(), j.at("L").get<int>());
    }
    throw StructureError("unknown graph kind");
}

json couplings_to_json(const Couplings& c) { return {{"g", c.g}, {"h", c.h}, {"z", c.z}}; }

Couplings couplings_from_json(const json& j) {
    return {j.value("g", 0.0), j.value("h", 0.0), j.value("z", 0.0)};
}

json matrix_to_json(const RealMatrix& m, const MatrixMeta& meta) {
    if (m.rows() != m.cols()) throw SizeError("matrix_to_json: matrix is not square");
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            require_finite(m(i, k), "matrix_to_json");
            data.push_back(m(i, k));
        }
    }
    return {{"n", m.rows()}, {"complex", false}, {"data", std::move(data)}, {"meta", meta_to_json(meta)}};
}

json matrix_to_json(const ComplexMatrix& m, const MatrixMeta& meta) {
    if (m.rows() != m.cols()) throw SizeError("matrix_to_json: matrix is not square");
    json data = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            require_finite(m(i, k).real(), "matrix_to_json");
            require_finite(m(i, k).imag(), "matrix_to_json");
            data.push_back(m(i, k).real());
            data.push_back(m(i, k).imag());
        }
    }
    return {{"n", m.rows()}, {"complex", true}, {"data", std::move(data)}, {"meta", meta_to_json(meta)}};
}

ParsedMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw StructureError("matrix JSON must be an object");
    const auto n = j.at("n").get<long long>();
    if (n < 0) throw SizeError("matrix JSON: negative dimension");
    ParsedMatrix out;
    out.is_complex = j.value("complex", false);
    const auto& data = j.at("data");
    if (!data.is_array()) throw StructureError("matrix JSON: 'data' must be an array");
    const auto width = static_cast<std::size_t>(out.is_complex ? 2 : 1);
    const auto expected = static_cast<std::size_t>(n * n) * width;
    if (data.size() != expected) {
        throw SizeError("matrix JSON: expected " + std::to_string(expected) + " numbers, got " +
                        std::to_string(data.size()));
    }
    out.values.resize(n, n);
    std::size_t pos = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const double re = data[pos++].get<double>();
            const double im = out.is_complex ? data[pos++].get<double>() : 0.0;
            out.values(i, k) = {re, im};
        }
    }
    if (j.contains("meta")) out.meta = meta_from_json(j["meta"]);
    return out;
}

json spectrum_to_json(const SpectrumReport& s) {
    json ev = json::array();
    for (const auto& v : s.eigenvalues) ev.push_back({v.real(), v.imag()});
    json clusters = json::array();
    for (const auto& c : s.clusters) clusters.push_back({c.value.real(), c.value.imag(), c.count});
    return {{"eigenvalues", std::move(ev)}, {"all_real", s.all_real}, {"tol", s.tol}, {"clusters", std::move(clusters)}};
}

SpectrumReport spectrum_from_json(const json& j) {
    SpectrumReport s;
    s.tol = j.at("tol").get<double>();
    s.all_real = j.at("all_real").get<bool>();
    for (const auto& v : j.at("eigenvalues")) s.eigenvalues.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
    for (const auto& v : s.eigenvalues) s.max_abs_imag = std::max(s.max_abs_imag, std::abs(v.imag()));
    for (const auto& c : j.at("clusters")) {
        s.clusters.push_back({{c.at(0).get<double>(), c.at(1).get<double>()}, c.at(2).get<int>()});
    }
    return s;
}

json basis_to_json(const PseudometricBasis& b, const MatrixMeta& meta) {
    json solutions = json::array();
    for (std::size_t i = 0; i < b.solutions.size(); ++i) {
        json m = matrix_to_json(b.solutions[i], meta);
        m["residual"] = b.residuals[i];
        const auto& in = b.inertias[i];
        m["inertia"] = {in.positive, in.negative, in.zero};
        solutions.push_back(std::move(m));
    }
    json gap = std::isfinite(b.spectral_gap) ? json(b.spectral_gap) : json(nullptr);
    return {{"rank_tol", b.rank_tol},
            {"kernel_dimension", b.kernel_dimension},
            {"symmetric_dimension", b.solutions.size()},
            {"spectral_gap", std::move(gap)},
            {"solutions", std::move(solutions)}};
}

json metric_to_json(const MetricResult& m, const MatrixMeta& meta) {
    json j = matrix_to_json(m.theta, meta);
    j["positive_definite"] = m.positive_definite;
    j["min_eigenvalue"] = m.min_eigenvalue;
    j["alpha"] = m.alpha ? json(*m.alpha) : json(nullptr);
    return j;
}

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_scan_csv(const DomainScan& scan, std::ostream& out) {
    out << kScanCsvHeader << '\n';
    for (const auto& p : scan.points) {
        const auto& c = p.couplings;
        out << format_double(c.g) << ',' << format_double(c.h) << ',' << format_double(c.z) << ','
            << format_double(c.gamma()) << ',' << format_double(c.delta()) << ',' << (p.all_real ? 1 : 0) << ','
            << format_double(p.max_abs_imag) << ',';
        if (p.metric_positive) out << (*p.metric_positive ? 1 : 0);
        out << '\n';
    }
}

}  // namespace qgraph::io
