#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "qgraph/dieudonne.hpp"
#include "qgraph/metric.hpp"
#include "qgraph/model.hpp"
#include "qgraph/scan.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph::io {

using json = nlohmann::json;

/// Optional provenance attached to a serialized matrix.
struct MatrixMeta {
    std::optional<GraphSpec> graph;
    std::optional<Couplings> couplings;
};

/// A matrix read back from JSON. `is_complex` mirrors the "complex" flag.
struct ParsedMatrix {
    ComplexMatrix values;
    bool is_complex = false;
    MatrixMeta meta;

    /// Real part; throws StructureError if the matrix was stored as complex
    /// with a nonzero imaginary part.
    [[nodiscard]] RealMatrix real() const;
};

json graph_to_json(const GraphSpec& g);
GraphSpec graph_from_json(const json& j);
json couplings_to_json(const Couplings& c);
Couplings couplings_from_json(const json& j);

/// {"n": N, "complex": false, "data": [row-major], "meta": {...}}
json matrix_to_json(const RealMatrix& m, const MatrixMeta& meta = {});
/// Complex data is stored as flat [re, im] pairs in row-major order.
json matrix_to_json(const ComplexMatrix& m, const MatrixMeta& meta = {});
ParsedMatrix matrix_from_json(const json& j);

/// {"eigenvalues": [[re, im], ...], "all_real": b, "tol": t, "clusters": [[re, im, count], ...]}
json spectrum_to_json(const SpectrumReport& s);
SpectrumReport spectrum_from_json(const json& j);

/// Kernel summary plus one matrix object per symmetric solution, each with
/// "residual" and "inertia" ([pos, neg, zero]) fields.
json basis_to_json(const PseudometricBasis& b, const MatrixMeta& meta = {});

/// Matrix object extended with "positive_definite", "min_eigenvalue" and "alpha".
json metric_to_json(const MetricResult& m, const MatrixMeta& meta = {});

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

inline constexpr const char* kScanCsvHeader = "g,h,z,gamma,delta,all_real,max_abs_imag,metric_positive";

/// One line per grid point, in grid order, under kScanCsvHeader.
void write_scan_csv(const DomainScan& scan, std::ostream& out);

}  // namespace qgraph::io
