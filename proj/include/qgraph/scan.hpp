#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/model.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

enum class Param { G, H, Z, Gamma, Delta };

std::string to_string(Param p);
Param param_from_string(const std::string& name);

/// Inclusive uniform grid: `steps` points from `min` to `max`.
struct Axis {
    Param param = Param::G;
    double min = 0.0;
    double max = 0.0;
    int steps = 1;

    [[nodiscard]] double value(int i) const;
};

struct ScanRequest {
    int K = 2;
    int L = 1;
    std::vector<Axis> axes;
    /// Values of the parameters that are not scanned; missing ones are 0.
    std::map<Param, double> fixed;
    double tol = kDefaultRealityTol;
    std::size_t max_points = 2'000'000;
    /// Worker threads; 0 picks the hardware concurrency.
    unsigned threads = 0;
};

struct ScanPoint {
    Couplings couplings;
    bool all_real = false;
    double max_abs_imag = 0.0;
    /// Only set on the g = h slice.
    std::optional<bool> metric_positive;
};

/// Points are stored with the first axis varying slowest.
struct DomainScan {
    ScanRequest request;
    std::vector<ScanPoint> points;
};

/// Resolves the (g,h,z) of one grid point. Parameters come either from
/// {g, h} or from {gamma, delta}; mixing the two bases is rejected.
Couplings resolve_couplings(const ScanRequest& req, const std::vector<double>& axis_values);

void validate_scan_request(const ScanRequest& req);

/// Reality verdict at every grid point. Grid points are evaluated in
/// parallel; the result does not depend on scheduling.
DomainScan scan_reality_domain(const ScanRequest& req);

/// Reality and metric verdict at a single point.
ScanPoint evaluate_point(int K, int L, const Couplings& c, double tol = kDefaultRealityTol);

/// True iff 21 - 16 gamma^2 - 4 z^2 >= 0 and 5 - 16 delta^2 - 4 z^2 >= 0.
bool analytic_domain_k2(const Couplings& c);

/// Smaller of the two radicands of the K=2 closed-form spectrum.
double min_radicand_k2(const Couplings& c);

/// Straight line through coupling space, origin + t * direction.
struct Ray {
    Couplings origin;
    double dg = 0.0;
    double dh = 0.0;
    double dz = 0.0;

    /// Unit step along one parameter; gamma and delta move g and h together.
    static Ray along(Param p, const Couplings& origin = {});
    [[nodiscard]] Couplings at(double t) const;
};

/// Bisects the ray parameter at which the spectrum stops being real. The
/// bracket is [0, t_max]; the origin must be inside the real domain and
/// t_max outside, otherwise a ComputationError reports no crossing.
double boundary_bisect(int K, int L, const Ray& ray, double tol = 1e-9, double t_max = 4.0,
                       double reality_tol = kDefaultRealityTol);

}  // namespace qgraph
