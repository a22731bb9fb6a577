#include "qgraph/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qgraph/error.hpp"

namespace qgraph {

namespace {

double scale_of(const std::vector<cdouble>& values) {
    double s = 1.0;
    for (const auto& v : values) s = std::max(s, std::abs(v));
    return s;
}

// Lexicographic (Re, Im) order, where real parts closer than `eps` count as
// equal so that conjugate pairs always come out with the negative imaginary
// part first.
void sort_eigenvalues(std::vector<cdouble>& values, double eps) {
    std::sort(values.begin(), values.end(), [](cdouble a, cdouble b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::size_t start = 0;
    while (start < values.size()) {
        std::size_t stop = start + 1;
        while (stop < values.size() && values[stop].real() - values[stop - 1].real() <= eps) ++stop;
        std::sort(values.begin() + static_cast<std::ptrdiff_t>(start), values.begin() + static_cast<std::ptrdiff_t>(stop),
                  [](cdouble a, cdouble b) { return a.imag() < b.imag(); });
        start = stop;
    }
}

std::string describe(Eigen::Index rows, Eigen::Index cols) {
    std::ostringstream os;
    os << rows << "x" << cols << " matrix";
    return os.str();
}

template <class Matrix>
void check_input(const Matrix& m) {
    if (m.rows() != m.cols()) throw SizeError("eigenvalues: non-square " + describe(m.rows(), m.cols()));
    if (!m.allFinite()) throw StructureError("eigenvalues: non-finite entries in " + describe(m.rows(), m.cols()));
}

}  // namespace

SpectrumReport make_spectrum_report(std::vector<cdouble> values, double tol) {
    SpectrumReport r;
    r.tol = tol;
    const double scale = scale_of(values);
    sort_eigenvalues(values, tol * scale);
    r.eigenvalues = std::move(values);

    r.max_abs_imag = 0.0;
    for (const auto& v : r.eigenvalues) r.max_abs_imag = std::max(r.max_abs_imag, std::abs(v.imag()));
    r.all_real = r.max_abs_imag <= tol * scale;

    for (const auto& v : r.eigenvalues) {
        if (!r.clusters.empty()) {
            auto& last = r.clusters.back();
            const cdouble first = last.value;
            if (std::abs(v - first) <= tol * std::max(1.0, std::abs(v))) {
                ++last.count;
                continue;
            }
        }
        r.clusters.push_back({v, 1});
    }
    // replace the anchor by the cluster mean
    std::size_t i = 0;
    for (auto& cl : r.clusters) {
        cdouble sum = 0.0;
        for (int k = 0; k < cl.count; ++k) sum += r.eigenvalues[i++];
        cl.value = sum / static_cast<double>(cl.count);
    }
    return r;
}

SpectrumReport eigenvalues(const RealMatrix& m, double tol) {
    check_input(m);
    if (m.rows() == 0) return make_spectrum_report({}, tol);
    Eigen::EigenSolver<RealMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ComputationError("eigenvalues: real Schur iteration did not converge for " + describe(m.rows(), m.cols()));
    }
    const auto& ev = solver.eigenvalues();
    std::vector<cdouble> values(ev.begin(), ev.end());

    // A real eigenvalue sitting in a 2x2 Jordan block is only resolved to
    // sqrt(rounding), and the solver may return it as a conjugate pair.
    // Pairs that close to the real axis are reported as real.
    const double scale = scale_of(values);
    const double defect_band = std::sqrt(tol) * scale;
    for (auto& v : values) {
        if (std::abs(v.imag()) > tol * scale && std::abs(v.imag()) <= defect_band) v = {v.real(), 0.0};
    }
    return make_spectrum_report(std::move(values), tol);
}

SpectrumReport eigenvalues(const ComplexMatrix& m, double tol) {
    check_input(m);
    if (m.rows() == 0) return make_spectrum_report({}, tol);
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw ComputationError("eigenvalues: complex Schur iteration did not converge for " + describe(m.rows(), m.cols()));
    }
    const auto& ev = solver.eigenvalues();
    return make_spectrum_report(std::vector<cdouble>(ev.begin(), ev.end()), tol);
}

SpectrumReport closed_form_spectrum_k2(const Couplings& c, double tol) {
    const double gamma = c.gamma();
    const double delta = c.delta();
    const cdouble outer = std::sqrt(cdouble(21.0 - 16.0 * gamma * gamma - 4.0 * c.z * c.z, 0.0));
    const cdouble inner = std::sqrt(cdouble(5.0 - 16.0 * delta * delta - 4.0 * c.z * c.z, 0.0));
    return make_spectrum_report({2.0, 2.0, 2.5 + 0.5 * outer, 2.5 - 0.5 * outer, 2.5 + 0.5 * inner, 2.5 - 0.5 * inner},
                                tol);
}

MatchReport spectra_match(const SpectrumReport& a, const SpectrumReport& b, double tol) {
    if (a.size() != b.size()) {
        throw SizeError("spectra_match: lengths differ (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
    }
    MatchReport r;
    r.tol = tol;
    for (std::size_t i = 0; i < a.size(); ++i) {
        r.distance = std::max(r.distance, std::abs(a.eigenvalues[i] - b.eigenvalues[i]));
    }
    r.pass = r.distance == 0.0 || r.distance < tol;
    return r;
}

}  // namespace qgraph
