#include "fusionwalk/measure.hpp"

#include <cmath>

namespace fusionwalk {

Measure Measure::from_weights(std::map<Index, double> weights) {
    double sum = 0.0;
    for (auto it = weights.begin(); it != weights.end();) {
        if (it->second < 0.0) throw ValidationError("negative measure weight");
        if (it->second == 0.0) {
            it = weights.erase(it);
            continue;
        }
        sum += it->second;
        ++it;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("measure weights sum to " + std::to_string(sum) + ", expected 1");
    Measure mu;
    mu.w_ = std::move(weights);
    return mu;
}

Measure Measure::uniform(const std::vector<Index>& support) {
    if (support.empty()) throw ValidationError("uniform measure needs nonempty support");
    std::map<Index, double> w;
    for (Index s : support) w[s] = 0.0;
    const double p = 1.0 / static_cast<double>(w.size());
    for (auto& [s, v] : w) v = p;
    return from_weights(std::move(w));
}

bool is_symmetric(const Measure& mu, const FusionRing& ring) {
    for (const auto& [s, w] : mu.weights())
        if (mu.at(ring.dual(s)) != w) return false;
    return true;
}

}  // namespace fusionwalk
