#pragma once

// shared helpers for the test suites: seeded generators, random measures,
// random inclusions/states, and a chi-square quantile oracle

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "fusionwalk/entropy.hpp"
#include "fusionwalk/fusion_ring.hpp"
#include "fusionwalk/measure.hpp"

namespace testutil {

using fusionwalk::BlockState;
using fusionwalk::FusionRing;
using fusionwalk::Inclusion;
using fusionwalk::Index;
using fusionwalk::Measure;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

/// random probability measure supported on `support_size` distinct labels
inline Measure random_measure(const FusionRing& ring, std::mt19937_64& g, int support_size = 0) {
    const int n = ring.size();
    if (support_size <= 0 || support_size > n)
        support_size = 1 + static_cast<int>(g() % static_cast<std::uint64_t>(n));
    std::vector<Index> labels(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i;
    std::shuffle(labels.begin(), labels.end(), g);
    std::map<Index, double> w;
    double total = 0.0;
    for (int i = 0; i < support_size; ++i) {
        const double x = -std::log(uniform01(g) + 1e-300);
        w[labels[static_cast<std::size_t>(i)]] = x;
        total += x;
    }
    for (auto& [s, v] : w) v /= total;
    // renormalize exactly enough for the 1e-12 gate
    double sum = 0.0;
    for (const auto& [s, v] : w) sum += v;
    for (auto& [s, v] : w) v /= sum;
    return Measure::from_weights(std::move(w));
}

// ---------------------------------------------------------------- chi-square

/// regularized lower incomplete gamma P(a, x)
inline double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p domain");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        // series
        double sum = 1.0 / a, term = sum, ap = a;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if (std::abs(term) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q(a, x), modified Lentz
    double b = x + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < 1e-300) d = 1e-300;
        c = b + an / c;
        if (std::abs(c) < 1e-300) c = 1e-300;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

/// chi-square CDF and quantile
inline double chi2_cdf(double x, int df) { return gamma_p(df / 2.0, x / 2.0); }

inline double chi2_quantile(double p, int df) {
    double lo = 0.0, hi = 1.0;
    while (chi2_cdf(hi, df) < p) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (chi2_cdf(mid, df) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ----------------------------------------------------------------- inclusions

inline Inclusion random_inclusion(std::mt19937_64& g, int max_blocks = 4, int max_dim = 6) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const int K = 1 + static_cast<int>(g() % static_cast<std::uint64_t>(max_blocks));
        const int L = 1 + static_cast<int>(g() % static_cast<std::uint64_t>(max_blocks));
        Inclusion inc;
        inc.sub_dims.resize(static_cast<std::size_t>(K));
        for (auto& n : inc.sub_dims) n = 1 + static_cast<int>(g() % 2);
        inc.mult.resize(K, L);
        for (int k = 0; k < K; ++k)
            for (int l = 0; l < L; ++l) inc.mult(k, l) = static_cast<int>(g() % 3);
        bool ok = true;
        inc.amb_dims.assign(static_cast<std::size_t>(L), 0);
        for (int l = 0; l < L && ok; ++l) {
            int m = 0;
            for (int k = 0; k < K; ++k) m += inc.mult(k, l) * inc.sub_dims[static_cast<std::size_t>(k)];
            ok = m >= 1 && m <= max_dim;
            inc.amb_dims[static_cast<std::size_t>(l)] = m;
        }
        for (int k = 0; k < K && ok; ++k) {
            bool nonzero = false;
            for (int l = 0; l < L; ++l) nonzero = nonzero || inc.mult(k, l) > 0;
            ok = nonzero;
        }
        if (!ok) continue;
        inc.validate();
        return inc;
    }
    throw std::runtime_error("failed to draw a random inclusion");
}

inline Eigen::MatrixXd random_psd(int n, std::mt19937_64& g) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = gauss(g);
    return a * a.transpose();
}

inline BlockState random_state(const std::vector<int>& dims, std::mt19937_64& g) {
    BlockState psi;
    for (int m : dims) psi.blocks.push_back(random_psd(m, g));
    double total = psi.total();
    for (auto& q : psi.blocks) q /= total;
    // second pass for the 1e-12 mass gate
    total = psi.total();
    for (auto& q : psi.blocks) q /= total;
    return psi;
}

inline Eigen::MatrixXd matrix_sqrt(const Eigen::MatrixXd& q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    return es.eigenvectors() *
           es.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal() *
           es.eigenvectors().transpose();
}

/// random positive functionals summing exactly to phi:
/// phi_i = sqrt(Q) W_i sqrt(Q) with PSD W_i summing to the identity
inline std::vector<BlockState> random_decomposition(const BlockState& phi, int parts,
                                                    std::mt19937_64& g) {
    std::vector<BlockState> out(static_cast<std::size_t>(parts));
    for (std::size_t l = 0; l < phi.blocks.size(); ++l) {
        const int m = static_cast<int>(phi.blocks[l].rows());
        std::vector<Eigen::MatrixXd> v;
        Eigen::MatrixXd total = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < parts; ++i) {
            v.push_back(random_psd(m, g) + 0.05 * Eigen::MatrixXd::Identity(m, m));
            total += v.back();
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(total);
        const Eigen::MatrixXd tinvsqrt = es.eigenvectors() *
                                         es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                                         es.eigenvectors().transpose();
        const Eigen::MatrixXd qs = matrix_sqrt(phi.blocks[l]);
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < parts; ++i) {
            Eigen::MatrixXd w = tinvsqrt * v[static_cast<std::size_t>(i)] * tinvsqrt;
            Eigen::MatrixXd part;
            if (i + 1 == parts) {
                part = phi.blocks[l] - acc;  // exact closure of the sum
            } else {
                part = qs * w * qs;
                acc += part;
            }
            part = 0.5 * (part + part.transpose());
            out[static_cast<std::size_t>(i)].blocks.push_back(std::move(part));
        }
    }
    return out;
}

}  // namespace testutil
