#include "qgraph/verify.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "qgraph/dieudonne.hpp"
#include "qgraph/metric.hpp"
#include "qgraph/model.hpp"
#include "qgraph/scan.hpp"
#include "qgraph/spectral.hpp"

namespace qgraph {

namespace {

class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double operator()() { return dist_(rng_); }
    Couplings couplings() {
        const double g = (*this)();
        const double h = (*this)();
        const double z = (*this)();
        return {g, h, z};
    }

private:
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> dist_{-0.9, 0.9};
};

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

// Largest/smallest t where pred holds, given pred(inside) && !pred(outside).
double bisect(const std::function<bool(double)>& pred, double inside, double outside, double tol) {
    while (std::abs(outside - inside) > tol) {
        const double mid = 0.5 * (inside + outside);
        (pred(mid) ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
}

CheckResult make(std::string name, bool ok, const std::string& detail) {
    return {std::move(name), ok, detail};
}

std::string sci(double v) {
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << v;
    return os.str();
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
    std::vector<CheckResult> out;
    const int k_max = std::max(2, opts.k_max);

    {
        Sampler sample(opts.seed);
        double worst = 0.0;
        bool indefinite = true;
        for (int K = 2; K <= k_max; ++K) {
            for (int s = 0; s < opts.samples; ++s) {
                const auto c = sample.couplings();
                const auto p = closed_form_pseudometric(K, c);
                worst = std::max(worst, residual(build_loop_hamiltonian(K, 1, c), p));
                indefinite = indefinite && inertia(p).negative >= 1;
            }
        }
        out.push_back(make("pseudometric residual", worst < 1e-12, "max relative residual " + sci(worst)));
        out.push_back(make("pseudometric indefinite", indefinite, "every sample has a negative eigenvalue"));
    }

    {
        Sampler sample(opts.seed + 1);
        double worst = 0.0;
        double worst_defect = 0.0;
        double worst_match = 0.0;
        for (int K = 2; K <= k_max; ++K) {
            for (int L = 1; L <= 3; ++L) {
                for (int s = 0; s < opts.samples; ++s) {
                    const double g = sample();
                    const double z = sample();
                    const auto h = build_loop_hamiltonian(K, L, {g, g, z});
                    const auto theta = diagonal_metric(K, L, g, z);
                    worst = std::max(worst, residual(h, theta));
                    const auto pair = hermitize(h, theta);
                    worst_defect = std::max(worst_defect, hermiticity_defect(pair.hermitized));
                    worst_match = std::max(worst_match,
                                           spectra_match(eigenvalues(h), eigenvalues(pair.hermitized), 1e-10).distance);
                }
            }
        }
        out.push_back(make("diagonal metric residual", worst < 1e-12, "max relative residual " + sci(worst)));
        out.push_back(make("hermitization", worst_defect < 1e-10 && worst_match < 1e-10,
                           "max defect " + sci(worst_defect) + ", max spectral distance " + sci(worst_match)));
    }

    {
        bool all_positive = true;
        for (int K = 2; K <= k_max; ++K) {
            for (int L = 1; L <= 3; ++L) {
                for (double g : linspace(-0.99, 0.99, 21)) {
                    for (double z : linspace(-0.99, 0.99, 21)) {
                        all_positive = all_positive && is_positive_definite(diagonal_metric(K, L, g, z)).positive;
                    }
                }
            }
        }
        out.push_back(make("diagonal metric positivity", all_positive, "21x21 grid over |g|, |z| <= 0.99"));
    }

    {
        Sampler sample(opts.seed + 2);
        double worst = 0.0;
        for (int s = 0; s < 4 * opts.samples; ++s) {
            const auto c = sample.couplings();
            worst = std::max(worst,
                             spectra_match(eigenvalues(build_loop_hamiltonian(2, 1, c)), closed_form_spectrum_k2(c), 1e-10)
                                 .distance);
        }
        out.push_back(make("K=2 closed-form spectrum", worst < 1e-10, "max distance " + sci(worst)));
    }

    {
        double worst = 0.0;
        for (double g : {-0.8, -0.4, 0.0, 0.4, 0.8}) {
            for (double z : {-0.8, 0.0, 0.8}) {
                const auto expected = alpha_interval(g);
                const auto positive = [&](double a) { return theta_family_k2(g, z, a).positive_definite; };
                const double lo = bisect(positive, 0.0, -10.0, 1e-9);
                const double hi = bisect(positive, 0.0, 10.0 + expected.hi, 1e-9);
                worst = std::max({worst, std::abs(lo - expected.lo), std::abs(hi - expected.hi)});
            }
        }
        out.push_back(make("alpha interval", worst < 1e-6, "max endpoint error " + sci(worst)));
    }

    {
        const double tg = boundary_bisect(2, 1, Ray::along(Param::Gamma), 1e-9);
        const double td = boundary_bisect(2, 1, Ray::along(Param::Delta), 1e-9);
        const double eg = std::abs(tg - std::sqrt(21.0) / 4.0);
        const double ed = std::abs(td - std::sqrt(5.0) / 4.0);
        out.push_back(make("exceptional-point boundary", eg < 1e-6 && ed < 1e-6,
                           "gamma_max error " + sci(eg) + ", delta_max error " + sci(ed)));
    }

    {
        int counterexamples = 0;
        int positive_points = 0;
        for (int K = 2; K <= k_max; ++K) {
            for (double g : linspace(-0.99, 0.99, 31)) {
                for (double z : linspace(-0.99, 0.99, 31)) {
                    const auto pt = evaluate_point(K, 1, {g, g, z});
                    if (pt.metric_positive.value_or(false)) {
                        ++positive_points;
                        if (!pt.all_real) ++counterexamples;
                    }
                }
            }
        }
        out.push_back(make("positive metric implies real spectrum", counterexamples == 0,
                           std::to_string(counterexamples) + " counterexamples among " +
                               std::to_string(positive_points) + " positive-metric points"));
    }

    {
        Sampler sample(opts.seed + 3);
        bool ok = true;
        std::ostringstream detail;
        for (int K = 2; K <= std::min(k_max, 4); ++K) {
            int done = 0;
            while (done < 5) {
                const auto c = sample.couplings();
                const auto h = build_loop_hamiltonian(K, 1, c);
                const auto spec = eigenvalues(h);
                if (!spec.all_real) continue;
                ++done;
                const auto basis = kernel_basis(h);
                const bool dim_ok = basis.kernel_dimension == predicted_kernel_dimension(spec);
                const bool p_ok = projection_residual(basis, closed_form_pseudometric(K, c)) < 1e-10;
                ok = ok && dim_ok && p_ok;
                if (done == 1) detail << (K > 2 ? "; " : "") << "K=" << K << " dim " << basis.kernel_dimension;
            }
        }
        out.push_back(make("kernel completeness", ok, detail.str()));
    }
    return out;
}

}  // namespace qgraph
