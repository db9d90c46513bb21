#pragma once

#include <string>
#include <vector>

#include <Eigen/Core>

#include "fusionwalk/dimension.hpp"
#include "fusionwalk/gamma.hpp"
#include "fusionwalk/measure.hpp"

namespace fusionwalk {

/**
 * @brief Certified lower bound on the spectral norm of a fusion operator.
 *
 * The bound is the square root of a Rayleigh quotient of Gamma'^T Gamma' at the
 * witness vector, where Gamma' keeps only window columns whose products are
 * complete. Truncation can only shrink the norm of a nonnegative matrix, so
 * the bound is sound for the untruncated operator, and bounds from nested
 * windows are monotone.
 *
 * For radial certificates (free-group benchmark) the witness is stored in
 * spherical coordinates: entry k is the common value on the sphere of radius k,
 * and `window` holds the sphere sizes instead of basis indices.
 */
struct NormCertificate {
    std::string object_desc;
    std::string window_id;
    double lower_bound = 0.0;
    double residual = 0.0;        // relative movement of the Rayleigh quotient at stop
    Eigen::VectorXd witness;      // unit vector on the window columns
    std::vector<Index> window;    // column indices into the ring basis (or sphere sizes)
    bool radial = false;
    int iterations = 0;
};

/// All basis labels whose products with every summand of `object` are complete.
std::vector<Index> complete_window(const FusionRing& ring, const FormalSum& object);

/// Power iteration for the largest singular value of the column-truncated
/// fusion operator, started from the all-ones vector. Throws EmptyWindow /
/// TruncationOverflow on bad windows.
NormCertificate gamma_norm_lower(const FusionRing& ring, const FormalSum& object,
                                 const std::vector<Index>& window, double tol = 1e-12,
                                 int max_iter = 100000);

/// Recompute the certificate's Rayleigh quotient from its witness; used to
/// re-verify certificates independently of the iteration that produced them.
double certificate_rayleigh(const FusionRing& ring, const NormCertificate& cert);

enum class VerdictKind { AmenableEvidence, NonamenableCertificate, Inconclusive };

struct Verdict {
    VerdictKind kind = VerdictKind::Inconclusive;
    double dimension = 0.0;   // d(U)
    double gap = 0.0;         // d(U) - best lower bound
    double movement = 0.0;    // last change of the bound across the schedule
    NormCertificate certificate;
    std::vector<std::pair<int, double>> history;  // (window size, bound)
};

/// Compare the truncated-norm bounds against d(U) across a window schedule.
/// Windows are prefixes of the declared basis order intersected with the
/// complete-column set; an empty schedule means doubling sizes until the bound
/// moves less than 1e-4 between consecutive windows.
Verdict amenability_verdict(const FusionRing& ring, const DimensionFunction& d,
                            const FormalSum& object, std::vector<int> window_schedule = {},
                            double gap_tol = 1e-3);

/// Kesten-style contrast case: norm certificate for the sum of the 2*rank free
/// generators and their inverses. Exploits radial symmetry of the Cayley ball,
/// so the window can extend far beyond the stored ring; windows double from
/// `radius` until the bound settles.
NormCertificate free_group_benchmark(int rank, int radius);

/// Rayleigh quotient of a radial certificate, recomputed from scratch.
double radial_certificate_rayleigh(int rank, const NormCertificate& cert);

/// Følner-style diagnostic: |A_n(P_s f)(e) - A_n(f)(e)| for indicator test
/// functions f and generators s, across Cesàro horizons. Numeric evidence
/// only, never a proof.
struct ProbeRow {
    Index generator;
    Index function_label;  // indicator location
    int horizon;
    double difference;
};
struct ProbeReport {
    std::vector<ProbeRow> rows;
};
ProbeReport weak_amenability_probe(const FusionRing& ring, const DimensionFunction& d,
                                   const Measure& mu, const std::vector<int>& horizons,
                                   std::vector<Index> test_functions = {},
                                   std::vector<Index> generators = {});

}  // namespace fusionwalk
