#include "fusionwalk/walk.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <Eigen/Dense>
#include <Eigen/SVD>

namespace fusionwalk {

bool Kernel::leak_free() const {
    return std::all_of(row_complete.begin(), row_complete.end(), [](char c) { return c != 0; });
}

Kernel kernel(const FusionRing& ring, const DimensionFunction& d, const Measure& mu) {
    const int n = ring.size();
    if (d.size() != n) throw DimensionMismatch("dimension function does not cover the window");

    Kernel k;
    k.dims = d.values();
    k.leak = Eigen::VectorXd::Zero(n);
    k.row_complete.assign(static_cast<std::size_t>(n), 1);

    std::vector<Eigen::Triplet<double>> triplets;
    for (Index s = 0; s < n; ++s) {
        bool complete = true;
        double row_sum = 0.0;
        for (const auto& [r, w] : mu.weights()) {
            const auto pr = ring.product(r, s);
            complete = complete && pr.complete;
            const double scale = w / (d.at(r) * d.at(s));
            for (const auto& term : pr.terms) {
                const double p = scale * static_cast<double>(term.m) * d.at(term.t);
                triplets.emplace_back(s, term.t, p);
                row_sum += p;
            }
        }
        k.row_complete[static_cast<std::size_t>(s)] = complete ? 1 : 0;
        if (!complete) k.leak(s) = std::max(0.0, 1.0 - row_sum);
    }
    k.p.resize(n, n);
    k.p.setFromTriplets(triplets.begin(), triplets.end());
    return k;
}

Measure convolve(const FusionRing& ring, const DimensionFunction& d, const Measure& nu,
                 const Measure& mu) {
    if (d.size() != ring.size()) throw DimensionMismatch("dimension function does not cover the window");
    std::map<Index, double> out;
    for (const auto& [s, ws] : nu.weights()) {
        for (const auto& [r, wr] : mu.weights()) {
            const auto pr = ring.product(s, r);
            if (!pr.complete)
                throw TruncationOverflow("convolution support leaves the window at (" +
                                         ring.label(s) + ", " + ring.label(r) + ")");
            const double scale = ws * wr / (d.at(s) * d.at(r));
            for (const auto& term : pr.terms)
                out[term.t] += scale * static_cast<double>(term.m) * d.at(term.t);
        }
    }
    return Measure::from_weights(std::move(out));
}

AppliedFunction apply_p(const Kernel& k, const Eigen::VectorXd& f) {
    AppliedFunction out;
    out.values = k.p * f;
    out.reliable = k.row_complete;
    return out;
}

GeneratingResult is_generating(const FusionRing& ring, const Measure& mu, int max_depth) {
    const int n = ring.size();
    GeneratingResult res;
    std::set<Index> covered;
    std::set<Index> frontier;  // support of mu^depth
    for (const auto& [s, w] : mu.weights()) frontier.insert(s);

    auto covers_target = [&](const std::set<Index>& c) {
        for (Index s = 0; s < n; ++s) {
            if (ring.truncated() && !ring.interior(s)) continue;
            if (!c.count(s)) return false;
        }
        return true;
    };

    // the frontier determines all later supports, so a repeated frontier means
    // the cumulative union is final
    std::set<std::set<Index>> seen;
    bool all_complete = true;
    for (int depth = 1; depth <= max_depth; ++depth) {
        covered.insert(frontier.begin(), frontier.end());
        if (covers_target(covered)) {
            res.status = GeneratingResult::Status::Yes;
            res.depth = depth;
            res.covered.assign(covered.begin(), covered.end());
            return res;
        }
        seen.insert(frontier);
        std::set<Index> next;
        for (Index s : frontier) {
            for (const auto& [r, w] : mu.weights()) {
                const auto pr = ring.product(s, r);
                all_complete = all_complete && pr.complete;
                for (const auto& term : pr.terms) next.insert(term.t);
            }
        }
        if (next.empty() || seen.count(next)) {
            res.depth = depth;
            res.covered.assign(covered.begin(), covered.end());
            res.status = (!ring.truncated() && all_complete) ? GeneratingResult::Status::NoFinite
                                                             : GeneratingResult::Status::NoWithinDepth;
            return res;
        }
        frontier = std::move(next);
    }
    res.status = GeneratingResult::Status::NoWithinDepth;
    res.depth = max_depth;
    res.covered.assign(covered.begin(), covered.end());
    return res;
}

double stationary_check(const FusionRing& ring, const DimensionFunction& d, const Measure& mu) {
    const int n = ring.size();
    if (d.size() != n) throw DimensionMismatch("dimension function does not cover the window");

    double residual = 0.0;
    for (Index t = 0; t < n; ++t) {
        // enumerate the states s that can reach t in one step; the column is
        // complete only when every such s lies inside the window
        bool complete = true;
        double acc = 0.0;
        for (const auto& [r, w] : mu.weights()) {
            const auto sources = ring.product(ring.dual(r), t);
            if (!sources.complete) {
                complete = false;
                break;
            }
            for (const auto& src : sources.terms) {
                const Index s = src.t;
                const Count m = ring.coeff(r, s, t);
                acc += d.at(s) * d.at(s) * w * static_cast<double>(m) * d.at(t) /
                       (d.at(r) * d.at(s));
            }
        }
        if (!complete) continue;
        const double target = d.at(t) * d.at(t);
        residual = std::max(residual, std::abs(acc - target) / target);
    }
    return residual;
}

HarmonicBasis harmonic_space(const Kernel& k) {
    if (!k.leak_free()) throw NotFinite("harmonic space needs a finite, leak-free kernel");
    const int n = k.size();
    Eigen::MatrixXd shifted = Eigen::MatrixXd(k.p) - Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    int null_dim = 0;
    for (int i = n - 1; i >= 0 && sv(i) <= 1e-9; --i) ++null_dim;
    HarmonicBasis basis;
    basis.vectors = svd.matrixV().rightCols(null_dim);
    return basis;
}

std::vector<Eigen::VectorXd> cesaro_mean(const Kernel& k, const Eigen::VectorXd& f, int n) {
    std::vector<Eigen::VectorXd> averages;
    averages.reserve(static_cast<std::size_t>(std::max(n, 0)));
    Eigen::VectorXd iterate = f;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(f.size());
    for (int j = 1; j <= n; ++j) {
        sum += iterate;
        averages.push_back(sum / static_cast<double>(j));
        if (j < n) iterate = k.p * iterate;
    }
    return averages;
}

std::vector<double> zero_two_diagnostic(const FusionRing& ring, const DimensionFunction& d,
                                        const Measure& mu, int m_max, int k) {
    const Kernel K = kernel(ring, d, mu);
    const int n = K.size();
    const Eigen::MatrixXd P = Eigen::MatrixXd(K.p);

    // row s of P^m is trustworthy iff s is complete and every state reachable
    // from s stays trustworthy one power down
    std::vector<char> reliable(static_cast<std::size_t>(n), 1);
    auto step_reliability = [&]() {
        std::vector<char> next(static_cast<std::size_t>(n), 1);
        for (Index s = 0; s < n; ++s) {
            if (!K.row_complete[static_cast<std::size_t>(s)]) {
                next[static_cast<std::size_t>(s)] = 0;
                continue;
            }
            for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(K.p, s); it; ++it) {
                if (it.value() > 0.0 && !reliable[static_cast<std::size_t>(it.col())]) {
                    next[static_cast<std::size_t>(s)] = 0;
                    break;
                }
            }
        }
        reliable = std::move(next);
    };

    std::vector<Eigen::MatrixXd> powers;
    powers.reserve(static_cast<std::size_t>(m_max + k + 1));
    powers.push_back(Eigen::MatrixXd::Identity(n, n));
    for (int m = 1; m <= m_max + k; ++m) {
        powers.push_back(powers.back() * P);
        step_reliability();
    }
    for (Index s = 0; s < n; ++s) {
        if (ring.truncated() && !ring.interior(s)) continue;
        if (!reliable[static_cast<std::size_t>(s)])
            throw TruncationOverflow("0-2 diagnostic horizon leaks through the window at '" +
                                     ring.label(s) + "'");
    }

    std::vector<double> deltas;
    deltas.reserve(static_cast<std::size_t>(m_max));
    for (int m = 1; m <= m_max; ++m) {
        double worst = 0.0;
        for (Index s = 0; s < n; ++s) {
            if (ring.truncated() && !ring.interior(s)) continue;
            worst = std::max(worst,
                             (powers[static_cast<std::size_t>(m)].row(s) -
                              powers[static_cast<std::size_t>(m + k)].row(s))
                                 .cwiseAbs()
                                 .sum());
        }
        deltas.push_back(worst);
    }
    return deltas;
}

std::vector<Index> sample_path(const Kernel& k, Index start, int length, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };

    std::vector<Index> path;
    path.reserve(static_cast<std::size_t>(length) + 1);
    path.push_back(start);
    Index state = start;
    for (int step = 0; step < length; ++step) {
        if (!k.row_complete[static_cast<std::size_t>(state)])
            throw TruncationOverflow("sampled path hit a leaking row");
        const double u = uniform01();
        double acc = 0.0;
        Index chosen = -1;
        for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(k.p, state); it; ++it) {
            if (it.value() <= 0.0) continue;
            acc += it.value();
            chosen = static_cast<Index>(it.col());
            if (u < acc) break;
        }
        if (chosen < 0) throw TruncationOverflow("sampled path hit an empty row");
        state = chosen;
        path.push_back(state);
    }
    return path;
}

}  // namespace fusionwalk
