#include "qgraph/scan.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "qgraph/error.hpp"
#include "qgraph/metric.hpp"

namespace qgraph {

std::string to_string(Param p) {
    switch (p) {
        case Param::G: return "g";
        case Param::H: return "h";
        case Param::Z: return "z";
        case Param::Gamma: return "gamma";
        case Param::Delta: return "delta";
    }
    return "?";
}

Param param_from_string(const std::string& name) {
    if (name == "g") return Param::G;
    if (name == "h") return Param::H;
    if (name == "z") return Param::Z;
    if (name == "gamma") return Param::Gamma;
    if (name == "delta") return Param::Delta;
    throw DomainError("unknown parameter '" + name + "' (expected g, h, z, gamma or delta)");
}

double Axis::value(int i) const {
    if (steps == 1) return min;
    return min + (max - min) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

namespace {

bool is_gamma_delta(Param p) { return p == Param::Gamma || p == Param::Delta; }
bool is_g_h(Param p) { return p == Param::G || p == Param::H; }

// |g - h| below this counts as the g = h slice
constexpr double kSliceTol = 1e-12;

}  // namespace

void validate_scan_request(const ScanRequest& req) {
    GraphSpec::loop(req.K, req.L).validate();
    if (req.axes.empty() || req.axes.size() > 3) throw DomainError("scan needs between 1 and 3 axes");
    if (!(req.tol > 0.0)) throw DomainError("scan tolerance must be positive");

    std::vector<Param> named;
    std::size_t total = 1;
    for (const auto& a : req.axes) {
        if (a.steps < 1) throw DomainError("axis " + to_string(a.param) + " needs at least one step");
        if (!std::isfinite(a.min) || !std::isfinite(a.max)) throw DomainError("axis bounds must be finite");
        if (std::find(named.begin(), named.end(), a.param) != named.end()) {
            throw DomainError("parameter " + to_string(a.param) + " appears on two axes");
        }
        named.push_back(a.param);
        total *= static_cast<std::size_t>(a.steps);
        if (total > req.max_points) {
            throw DomainError("scan grid too large: more than " + std::to_string(req.max_points) + " points");
        }
    }
    for (const auto& [p, v] : req.fixed) {
        if (std::find(named.begin(), named.end(), p) != named.end()) {
            throw DomainError("parameter " + to_string(p) + " is both scanned and fixed");
        }
        if (!std::isfinite(v)) throw DomainError("fixed value of " + to_string(p) + " must be finite");
        named.push_back(p);
    }
    const bool gd = std::any_of(named.begin(), named.end(), is_gamma_delta);
    const bool gh = std::any_of(named.begin(), named.end(), is_g_h);
    if (gd && gh) throw DomainError("cannot mix g/h with gamma/delta in one scan");
}

Couplings resolve_couplings(const ScanRequest& req, const std::vector<double>& axis_values) {
    std::map<Param, double> v = req.fixed;
    for (std::size_t i = 0; i < req.axes.size(); ++i) v[req.axes[i].param] = axis_values.at(i);
    const auto get = [&](Param p) {
        const auto it = v.find(p);
        return it == v.end() ? 0.0 : it->second;
    };
    if (v.count(Param::Gamma) || v.count(Param::Delta)) {
        return Couplings::from_gamma_delta(get(Param::Gamma), get(Param::Delta), get(Param::Z));
    }
    return {get(Param::G), get(Param::H), get(Param::Z)};
}

ScanPoint evaluate_point(int K, int L, const Couplings& c, double tol) {
    ScanPoint pt;
    pt.couplings = c;
    const auto spec = eigenvalues(build_loop_hamiltonian(K, L, c), tol);
    pt.all_real = spec.all_real;
    pt.max_abs_imag = spec.max_abs_imag;
    if (std::abs(c.g - c.h) <= kSliceTol) {
        if (c.z == -1.0) {
            pt.metric_positive = false;
        } else {
            pt.metric_positive = is_positive_definite(diagonal_metric(K, L, 0.5 * (c.g + c.h), c.z)).positive;
        }
    }
    return pt;
}

DomainScan scan_reality_domain(const ScanRequest& req) {
    validate_scan_request(req);
    std::size_t total = 1;
    for (const auto& a : req.axes) total *= static_cast<std::size_t>(a.steps);

    DomainScan out;
    out.request = req;
    out.points.resize(total);

    const auto point_at = [&](std::size_t index) {
        std::vector<double> values(req.axes.size());
        for (std::size_t k = req.axes.size(); k-- > 0;) {
            const auto steps = static_cast<std::size_t>(req.axes[k].steps);
            values[k] = req.axes[k].value(static_cast<int>(index % steps));
            index /= steps;
        }
        return values;
    };

    unsigned workers = req.threads != 0 ? req.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        try {
            for (std::size_t i = next++; i < total; i = next++) {
                out.points[i] = evaluate_point(req.K, req.L, resolve_couplings(req, point_at(i)), req.tol);
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = total;
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

double min_radicand_k2(const Couplings& c) {
    const double gamma = c.gamma();
    const double delta = c.delta();
    return std::min(21.0 - 16.0 * gamma * gamma - 4.0 * c.z * c.z, 5.0 - 16.0 * delta * delta - 4.0 * c.z * c.z);
}

bool analytic_domain_k2(const Couplings& c) { return min_radicand_k2(c) >= 0.0; }

Ray Ray::along(Param p, const Couplings& origin) {
    Ray r;
    r.origin = origin;
    switch (p) {
        case Param::G: r.dg = 1.0; break;
        case Param::H: r.dh = 1.0; break;
        case Param::Z: r.dz = 1.0; break;
        case Param::Gamma: r.dg = 1.0; r.dh = 1.0; break;
        case Param::Delta: r.dg = 1.0; r.dh = -1.0; break;
    }
    return r;
}

Couplings Ray::at(double t) const {
    return {origin.g + t * dg, origin.h + t * dh, origin.z + t * dz};
}

double boundary_bisect(int K, int L, const Ray& ray, double tol, double t_max, double reality_tol) {
    if (!(tol > 0.0) || !(t_max > 0.0)) throw DomainError("boundary_bisect: tol and t_max must be positive");
    const auto real_at = [&](double t) { return eigenvalues(build_loop_hamiltonian(K, L, ray.at(t)), reality_tol).all_real; };
    if (!real_at(0.0)) throw ComputationError("boundary_bisect: ray origin is outside the real domain");
    if (real_at(t_max)) {
        throw ComputationError("boundary_bisect: no crossing in [0, " + std::to_string(t_max) + "]");
    }
    double lo = 0.0;
    double hi = t_max;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (real_at(mid)) lo = mid;
        else hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qgraph
