#include "fusionwalk/gamma.hpp"

#include <vector>

namespace fusionwalk {

FusionOperator gamma_matrix(const FusionRing& ring, const FormalSum& object) {
    const int n = ring.size();
    FusionOperator op;
    op.object = object;
    op.column_complete.assign(static_cast<std::size_t>(n), 1);

    std::vector<Eigen::Triplet<double>> triplets;
    for (Index x = 0; x < n; ++x) {
        for (const auto& [u, mult] : object.terms()) {
            const auto pr = ring.product(x, u);
            if (!pr.complete) op.column_complete[static_cast<std::size_t>(x)] = 0;
            for (const auto& term : pr.terms)
                triplets.emplace_back(term.t, x, static_cast<double>(mult * term.m));
        }
    }
    op.matrix.resize(n, n);
    op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    return op;
}

}  // namespace fusionwalk
