#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "fusionwalk/dimension.hpp"
#include "fusionwalk/fusion_ring.hpp"
#include "fusionwalk/measure.hpp"

namespace fusionwalk {

/**
 * @brief Row-stochastic transition kernel p(s,t) of the random walk driven by a
 * measure and a dimension function.
 *
 * On truncated rings a row whose fusion products leave the window carries the
 * missing mass in `leak` and is flagged incomplete; complete rows have leak 0
 * by construction.
 */
struct Kernel {
    Eigen::SparseMatrix<double, Eigen::RowMajor> p;
    Eigen::VectorXd leak;
    Eigen::VectorXd dims;               // the dimension values used
    std::vector<char> row_complete;

    int size() const { return static_cast<int>(p.rows()); }
    bool leak_free() const;
};

/// p(s,t) = sum_r mu(r) m^t_{rs} d(t) / (d(r) d(s)).
Kernel kernel(const FusionRing& ring, const DimensionFunction& d, const Measure& mu);

/// (nu * mu)(t) = sum_{s,r} nu(s) mu(r) m^t_{sr} d(t) / (d(s) d(r)).
/// Throws TruncationOverflow when a needed product leaves the window.
Measure convolve(const FusionRing& ring, const DimensionFunction& d, const Measure& nu,
                 const Measure& mu);

/// Markov operator applied to a function on the basis: (Pf)(s) = sum_t p(s,t) f(t).
/// `reliable` marks rows without leak.
struct AppliedFunction {
    Eigen::VectorXd values;
    std::vector<char> reliable;
};
AppliedFunction apply_p(const Kernel& k, const Eigen::VectorXd& f);

/// Support growth of mu, mu^2, ... ; Yes when the cumulative union covers the
/// interior (finite rings: the whole basis) at some depth, No when the union
/// stabilizes strictly smaller on a finite ring.
struct GeneratingResult {
    enum class Status { Yes, NoWithinDepth, NoFinite } status;
    int depth = 0;                 // covering depth for Yes, stabilization depth for NoFinite
    std::vector<Index> covered;    // cumulative support union
};
GeneratingResult is_generating(const FusionRing& ring, const Measure& mu, int max_depth = 64);

/// sup_t |sum_s d(s)^2 p(s,t) - d(t)^2| / d(t)^2 over complete columns;
/// the stationarity defect of m = sum_s d(s)^2 delta_s.
double stationary_check(const FusionRing& ring, const DimensionFunction& d, const Measure& mu);

/// Orthonormal basis of { f : Pf = f } for a finite leak-free kernel,
/// via SVD of (P - I) with singular-value threshold 1e-9.
struct HarmonicBasis {
    Eigen::MatrixXd vectors;  // columns orthonormal
    int dimension() const { return static_cast<int>(vectors.cols()); }
};
HarmonicBasis harmonic_space(const Kernel& k);

/// Cesàro averages A_j f = j^{-1} sum_{i<j} P^i f for j = 1..n. Diagnostic
/// only; entries fed by leaking rows within the horizon are unreliable, so
/// callers on truncated rings keep n inside the leak-free region.
std::vector<Eigen::VectorXd> cesaro_mean(const Kernel& k, const Eigen::VectorXd& f, int n);

/// delta_m = sup over interior s of || p^m(s,.) - p^{m+k}(s,.) ||_1, m = 1..m_max.
/// A total-variation proxy for the 0-2 law convergence of the walk.
std::vector<double> zero_two_diagnostic(const FusionRing& ring, const DimensionFunction& d,
                                        const Measure& mu, int m_max, int k);

/// Reproducible walk: steps drawn by inverse CDF over the declared basis order
/// from a caller-seeded generator. Throws TruncationOverflow on a leaking row.
std::vector<Index> sample_path(const Kernel& k, Index start, int length, std::uint64_t seed);

}  // namespace fusionwalk
