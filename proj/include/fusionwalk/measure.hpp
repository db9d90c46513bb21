#pragma once

#include <map>

#include "fusionwalk/fusion_ring.hpp"

namespace fusionwalk {

/**
 * @brief Finitely supported probability measure on the ring basis.
 *
 * Weights are kept sparse; construction validates nonnegativity and that the
 * total mass is 1 within 1e-12.
 */
class Measure {
public:
    Measure() = default;

    /// Validating constructor; throws ValidationError on bad weights.
    static Measure from_weights(std::map<Index, double> weights);

    static Measure delta(Index s) { return from_weights({{s, 1.0}}); }
    static Measure uniform(const std::vector<Index>& support);

    const std::map<Index, double>& weights() const { return w_; }
    double at(Index s) const {
        auto it = w_.find(s);
        return it == w_.end() ? 0.0 : it->second;
    }

private:
    std::map<Index, double> w_;
};

/// mu(s) == mu(s̄) for all s, compared exactly.
bool is_symmetric(const Measure& mu, const FusionRing& ring);

}  // namespace fusionwalk
