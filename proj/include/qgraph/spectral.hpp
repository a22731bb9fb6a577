#pragma once

#include <vector>

#include "qgraph/model.hpp"

namespace qgraph {

inline constexpr double kDefaultRealityTol = 1e-9;

struct EigenCluster {
    cdouble value;  // mean of the members
    int count = 0;
};

/// Eigenvalues sorted by real part, then imaginary part, with a reality
/// verdict and the multiplicity clusters.
///
/// `all_real` holds iff max |Im| <= tol * max(1, max |lambda|). Two
/// eigenvalues belong to the same cluster when they lie within
/// tol * max(1, |lambda|) of the cluster's first member.
struct SpectrumReport {
    std::vector<cdouble> eigenvalues;
    bool all_real = true;
    double tol = kDefaultRealityTol;
    double max_abs_imag = 0.0;
    std::vector<EigenCluster> clusters;

    [[nodiscard]] std::size_t size() const { return eigenvalues.size(); }
};

/// Sorts, classifies and clusters an arbitrary list of eigenvalues.
SpectrumReport make_spectrum_report(std::vector<cdouble> values, double tol = kDefaultRealityTol);

/// Dense eigenvalues of a general real matrix (real Schur form).
///
/// Conjugate pairs with |Im| <= sqrt(tol) * max(1, max |lambda|) are taken as
/// a defective real eigenvalue split by rounding and reported with zero
/// imaginary part. Genuine complex pairs that close to the real axis lie
/// within rounding distance of an exceptional point and are not resolved.
SpectrumReport eigenvalues(const RealMatrix& m, double tol = kDefaultRealityTol);
SpectrumReport eigenvalues(const ComplexMatrix& m, double tol = kDefaultRealityTol);

/// Analytic spectrum of the K=2, L=1 loop:
/// {2, 2, 5/2 +- sqrt(21 - 16 gamma^2 - 4 z^2)/2, 5/2 +- sqrt(5 - 16 delta^2 - 4 z^2)/2},
/// with complex square roots when a radicand is negative.
SpectrumReport closed_form_spectrum_k2(const Couplings& c, double tol = kDefaultRealityTol);

struct MatchReport {
    double distance = 0.0;  // max |a_i - b_i| over the pairing
    bool pass = true;
    double tol = 0.0;
};

/// Pairs two spectra in sorted order and reports the largest pairwise gap.
/// Throws SizeError on length mismatch.
MatchReport spectra_match(const SpectrumReport& a, const SpectrumReport& b, double tol);

}  // namespace qgraph
