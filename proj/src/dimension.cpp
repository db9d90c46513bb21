#include "fusionwalk/dimension.hpp"

#include <cmath>
#include <queue>
#include <sstream>

#include <Eigen/Dense>

#include "fusionwalk/gamma.hpp"

namespace fusionwalk {

ValidationReport check_dimension_function(const FusionRing& ring, const DimensionFunction& d,
                                          double tol) {
    ValidationReport report;
    const int n = ring.size();
    if (d.size() != n) {
        report.violations.push_back({"domain", {}, "dimension values missing for part of the window"});
        return report;
    }

    auto violate = [&](std::string rule, std::vector<Index> where, const std::string& detail) {
        report.violations.push_back({std::move(rule), std::move(where), detail});
    };

    for (Index s = 0; s < n; ++s) {
        if (!std::isfinite(d.at(s)))
            violate("finiteness", {s}, "d(" + ring.label(s) + ") is not finite");
        else if (!(d.at(s) > 0.0))
            violate("positivity", {s}, "d(" + ring.label(s) + ") <= 0");
        if (!(std::abs(d.at(s) - d.at(ring.dual(s))) <= tol))
            violate("dual", {s}, "d(" + ring.label(s) + ") != d(dual)");
    }
    if (std::abs(d.at(ring.unit()) - 1.0) > tol)
        violate("unit", {ring.unit()}, "d(e) != 1");

    for (Index r = 0; r < n; ++r) {
        if (ring.truncated() && !ring.interior(r)) continue;
        for (Index s = 0; s < n; ++s) {
            if (ring.truncated() && !ring.interior(s)) continue;
            const auto pr = ring.product(r, s);
            if (!pr.complete) continue;
            ++report.checked_pairs;
            double sum = 0.0;
            for (const auto& term : pr.terms) sum += static_cast<double>(term.m) * d.at(term.t);
            const double defect = std::abs(d.at(r) * d.at(s) - sum);
            if (!(defect <= tol)) {
                std::ostringstream os;
                os << "multiplicativity defect " << defect << " at (" << ring.label(r) << ", "
                   << ring.label(s) << ")";
                violate("multiplicativity", {r, s}, os.str());
            }
        }
    }
    return report;
}

DimensionFunction fp_dimensions(const FusionRing& ring) {
    if (ring.truncated()) throw NotFinite("Perron dimensions need a finite ring");
    const int n = ring.size();

    FormalSum all;
    for (Index s = 0; s < n; ++s) all.add(s, 1);
    const FusionOperator gamma = gamma_matrix(ring, all);
    Eigen::MatrixXd g = Eigen::MatrixXd(gamma.matrix);

    // connectivity of the fusion graph
    {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::queue<Index> q;
        q.push(ring.unit());
        seen[static_cast<std::size_t>(ring.unit())] = 1;
        while (!q.empty()) {
            const Index x = q.front();
            q.pop();
            for (Index y = 0; y < n; ++y) {
                if (!seen[static_cast<std::size_t>(y)] && (g(y, x) > 0 || g(x, y) > 0)) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    q.push(y);
                }
            }
        }
        for (char c : seen)
            if (!c) throw NotConnected("fusion graph of the basis sum is disconnected");
    }

    // The operator of the full basis sum is symmetric for a valid ring; the
    // symmetrization is a no-op there and harmless otherwise.
    Eigen::MatrixXd sym = 0.5 * (g + g.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym);
    Eigen::VectorXd v = es.eigenvectors().col(n - 1);
    if (v(ring.unit()) < 0) v = -v;
    if (!(v(ring.unit()) > 0)) throw NotConnected("Perron eigenvector vanishes at the unit");
    v /= v(ring.unit());
    return DimensionFunction(std::move(v));
}

}  // namespace fusionwalk
