#pragma once

#include <Eigen/Core>

#include "fusionwalk/fusion_ring.hpp"

namespace fusionwalk {

/**
 * @brief A candidate dimension function: one strictly positive real per basis label.
 *
 * Whether it actually is a dimension function (multiplicative, dual-invariant,
 * d(e) = 1) is decided by check_dimension_function.
 */
class DimensionFunction {
public:
    DimensionFunction() = default;
    explicit DimensionFunction(Eigen::VectorXd values) : values_(std::move(values)) {}

    double at(Index s) const { return values_(s); }
    double operator()(Index s) const { return values_(s); }
    Eigen::Index size() const { return values_.size(); }
    const Eigen::VectorXd& values() const { return values_; }

    /// d extended additively to a formal combination.
    double of(const FormalSum& u) const {
        double acc = 0.0;
        for (const auto& [s, m] : u.terms()) acc += static_cast<double>(m) * values_(s);
        return acc;
    }

    static DimensionFunction constant(int n, double v = 1.0) {
        return DimensionFunction(Eigen::VectorXd::Constant(n, v));
    }

private:
    Eigen::VectorXd values_;
};

/// List every failure of positivity, d(e)=1, d(s)=d(s̄), and multiplicativity
/// |d(r)d(s) − Σ_t m^t_{rs} d(t)| > tol over complete window pairs.
ValidationReport check_dimension_function(const FusionRing& ring, const DimensionFunction& d,
                                          double tol = 1e-9);

/// Perron–Frobenius dimensions of a finite connected ring: the positive
/// eigenvector of the fusion operator of the sum of all basis objects,
/// normalized so that d(e) = 1. Throws NotFinite / NotConnected.
DimensionFunction fp_dimensions(const FusionRing& ring);

}  // namespace fusionwalk
