#include "fusionwalk/amenability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include <Eigen/SparseCore>

#include "fusionwalk/walk.hpp"

namespace fusionwalk {

namespace {

std::string describe(const FusionRing& ring, const FormalSum& object) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [s, m] : object.terms()) {
        if (!first) os << " + ";
        first = false;
        if (m != 1) os << m << "*";
        os << ring.label(s);
    }
    return first ? "0" : os.str();
}

// columns of Gamma restricted to `window`, rows over the full stored basis
Eigen::SparseMatrix<double> truncated_columns(const FusionRing& ring, const FormalSum& object,
                                              const std::vector<Index>& window) {
    std::vector<Eigen::Triplet<double>> triplets;
    for (int j = 0; j < static_cast<int>(window.size()); ++j) {
        const Index x = window[static_cast<std::size_t>(j)];
        for (const auto& [u, mult] : object.terms()) {
            const auto pr = ring.product(x, u);
            if (!pr.complete)
                throw TruncationOverflow("norm window contains the incomplete column '" +
                                         ring.label(x) + "'");
            for (const auto& term : pr.terms)
                triplets.emplace_back(term.t, j, static_cast<double>(mult * term.m));
        }
    }
    Eigen::SparseMatrix<double> gamma(ring.size(), static_cast<int>(window.size()));
    gamma.setFromTriplets(triplets.begin(), triplets.end());
    return gamma;
}

struct PowerResult {
    double rayleigh = 0.0;
    double residual = 0.0;
    int iterations = 0;
    Eigen::VectorXd witness;
};

// power iteration for the top eigenvalue of Op^T Op, deterministic all-ones start
template <typename ApplyGram>
PowerResult power_iterate(Eigen::Index dim, ApplyGram&& gram, double tol, int max_iter) {
    PowerResult out;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(dim);
    v /= v.norm();
    double prev = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        Eigen::VectorXd w = gram(v);
        const double rayleigh = v.dot(w);
        out.iterations = it;
        out.residual = std::abs(rayleigh - prev) / std::max(1.0, std::abs(rayleigh));
        prev = rayleigh;
        out.rayleigh = rayleigh;
        out.witness = v;
        const double norm = w.norm();
        if (norm == 0.0) break;
        v = w / norm;
        if (it > 1 && out.residual < tol) break;
    }
    return out;
}

}  // namespace

std::vector<Index> complete_window(const FusionRing& ring, const FormalSum& object) {
    std::vector<Index> window;
    for (Index x = 0; x < ring.size(); ++x) {
        bool ok = true;
        for (const auto& [u, mult] : object.terms())
            if (!ring.product_complete(x, u)) {
                ok = false;
                break;
            }
        if (ok) window.push_back(x);
    }
    return window;
}

NormCertificate gamma_norm_lower(const FusionRing& ring, const FormalSum& object,
                                 const std::vector<Index>& window, double tol, int max_iter) {
    if (window.empty()) throw EmptyWindow("norm certificate needs a nonempty window");
    const Eigen::SparseMatrix<double> gamma = truncated_columns(ring, object, window);
    const Eigen::SparseMatrix<double> gamma_t = gamma.transpose();

    const PowerResult pr = power_iterate(
        gamma.cols(), [&](const Eigen::VectorXd& v) { return (gamma_t * (gamma * v)).eval(); }, tol,
        max_iter);

    NormCertificate cert;
    cert.object_desc = describe(ring, object);
    cert.window = window;
    cert.window_id = "columns:" + std::to_string(window.size());
    cert.lower_bound = std::sqrt(std::max(0.0, pr.rayleigh));
    cert.residual = pr.residual;
    cert.witness = pr.witness;
    cert.iterations = pr.iterations;
    return cert;
}

double certificate_rayleigh(const FusionRing& ring, const NormCertificate& cert) {
    FormalSum object;
    {
        // reparse the object description emitted by describe()
        std::istringstream is(cert.object_desc);
        std::string token;
        while (is >> token) {
            if (token == "+") continue;
            Count mult = 1;
            auto star = token.find('*');
            std::string label = token;
            if (star != std::string::npos) {
                mult = std::stoll(token.substr(0, star));
                label = token.substr(star + 1);
            }
            const auto idx = ring.find(label);
            if (!idx) throw InvalidSpec("certificate object label '" + label + "' not in ring");
            object.add(*idx, mult);
        }
    }
    const Eigen::SparseMatrix<double> gamma = truncated_columns(ring, object, cert.window);
    const double norm2 = cert.witness.squaredNorm();
    if (norm2 == 0.0) throw ZeroMatrix("certificate witness is zero");
    return (gamma * cert.witness).squaredNorm() / norm2;
}

Verdict amenability_verdict(const FusionRing& ring, const DimensionFunction& d,
                            const FormalSum& object, std::vector<int> window_schedule,
                            double gap_tol) {
    const std::vector<Index> full = complete_window(ring, object);
    if (full.empty()) throw EmptyWindow("no complete columns for the requested object");

    if (window_schedule.empty()) {
        if (!ring.truncated()) {
            window_schedule.push_back(static_cast<int>(full.size()));
        } else {
            for (int w = 64; w < static_cast<int>(full.size()); w *= 2) window_schedule.push_back(w);
            window_schedule.push_back(static_cast<int>(full.size()));
        }
    }

    Verdict verdict;
    verdict.dimension = d.of(object);

    constexpr double kMovementTol = 1e-4;
    double prev_bound = -1.0;
    bool have_prev = false;
    for (int w : window_schedule) {
        const int size = std::min<int>(std::max(w, 1), static_cast<int>(full.size()));
        std::vector<Index> window(full.begin(), full.begin() + size);
        NormCertificate cert = gamma_norm_lower(ring, object, window, 1e-10, 50000);
        verdict.history.emplace_back(size, cert.lower_bound);
        verdict.movement = have_prev ? std::abs(cert.lower_bound - prev_bound)
                                     : std::numeric_limits<double>::infinity();
        prev_bound = cert.lower_bound;
        have_prev = true;
        verdict.certificate = std::move(cert);
        verdict.gap = verdict.dimension - verdict.certificate.lower_bound;

        if (verdict.certificate.lower_bound >= verdict.dimension - gap_tol) {
            verdict.kind = VerdictKind::AmenableEvidence;
            return verdict;
        }
        const bool exhausted = size == static_cast<int>(full.size()) && !ring.truncated();
        const bool settled = verdict.movement < kMovementTol;
        if (exhausted || settled) {
            verdict.kind = VerdictKind::NonamenableCertificate;
            return verdict;
        }
    }
    verdict.kind = VerdictKind::Inconclusive;
    return verdict;
}

namespace {

// Symmetrized spherical reduction of Gamma_S^T Gamma_S on the Cayley ball of a
// free group: columns supported on the ball of radius L, rows exact. Spheres
// grow by factor c = 2*rank - 1, so vectors are stored per level and windows
// can exceed any materializable ball.
Eigen::VectorXd radial_gram_apply(int rank, const Eigen::VectorXd& v) {
    const int L = static_cast<int>(v.size()) - 1;
    const double c0 = 2.0 * rank;
    const double c = 2.0 * rank - 1.0;
    Eigen::VectorXd w = Eigen::VectorXd::Zero(L + 1);
    for (int k = 0; k <= L; ++k) {
        double diag = c0;
        if (k == 1) diag += c0 - 1.0;
        if (k >= 2) diag += c - 1.0;
        w(k) += diag * v(k);
        if (k + 2 <= L) {
            const double coupling = (k == 0) ? std::sqrt(c0 * c) : c;
            w(k) += coupling * v(k + 2);
            w(k + 2) += coupling * v(k);
        }
    }
    return w;
}

}  // namespace

NormCertificate free_group_benchmark(int rank, int radius) {
    if (rank < 1) throw InvalidSpec("free_group_benchmark rank must be >= 1");
    if (radius < 4) throw InvalidSpec("free_group_benchmark radius must be >= 4");

    constexpr double kMovementTol = 1e-4;
    int max_levels = 16384;
    if (const char* env = std::getenv("FUSIONWALK_MAX_WINDOW")) {
        const long long cap = std::atoll(env);
        if (cap > 0) max_levels = static_cast<int>(std::min<long long>(max_levels, cap));
    }
    if (radius > max_levels)
        throw InvalidSpec("benchmark radius exceeds FUSIONWALK_MAX_WINDOW");

    NormCertificate cert;
    cert.radial = true;
    {
        std::ostringstream os;
        for (int i = 0; i < rank; ++i)
            os << (i ? " + " : "") << static_cast<char>('a' + i) << " + "
               << static_cast<char>('A' + i);
        cert.object_desc = os.str();
    }

    double prev = -1.0;
    for (int L = radius; L <= max_levels; L *= 2) {
        const PowerResult pr = power_iterate(
            L + 1, [&](const Eigen::VectorXd& v) { return radial_gram_apply(rank, v); }, 1e-12,
            400000);
        cert.lower_bound = std::sqrt(std::max(0.0, pr.rayleigh));
        cert.residual = pr.residual;
        cert.witness = pr.witness;
        cert.iterations = pr.iterations;
        cert.window_id = "radial-ball:" + std::to_string(L);
        cert.window = {L};
        if (prev >= 0.0 && std::abs(cert.lower_bound - prev) < kMovementTol) break;
        prev = cert.lower_bound;
    }
    return cert;
}

double radial_certificate_rayleigh(int rank, const NormCertificate& cert) {
    const double norm2 = cert.witness.squaredNorm();
    if (norm2 == 0.0) throw ZeroMatrix("certificate witness is zero");
    return cert.witness.dot(radial_gram_apply(rank, cert.witness)) / norm2;
}

ProbeReport weak_amenability_probe(const FusionRing& ring, const DimensionFunction& d,
                                   const Measure& mu, const std::vector<int>& horizons,
                                   std::vector<Index> test_functions,
                                   std::vector<Index> generators) {
    if (test_functions.empty()) test_functions.push_back(ring.unit());
    if (generators.empty())
        for (const auto& [s, w] : mu.weights()) generators.push_back(s);

    const Kernel K = kernel(ring, d, mu);
    const int n = K.size();
    const Index e = ring.unit();
    const int max_horizon = horizons.empty() ? 0 : *std::max_element(horizons.begin(), horizons.end());

    ProbeReport report;
    for (Index f_label : test_functions) {
        Eigen::VectorXd f = Eigen::VectorXd::Zero(n);
        f(f_label) = 1.0;

        for (Index s : generators) {
            const Kernel Ks = kernel(ring, d, Measure::delta(s));
            Eigen::VectorXd g = Ks.p * f;

            // reliability masks: a value is trusted only if no leaking row fed it
            std::vector<char> rel_f(static_cast<std::size_t>(n), 1);
            std::vector<char> rel_g = Ks.row_complete;

            Eigen::VectorXd it_f = f, it_g = g;
            double sum_f = 0.0, sum_g = 0.0;
            int steps = 0;
            auto advance = [&](Eigen::VectorXd& vec, std::vector<char>& rel) {
                vec = K.p * vec;
                std::vector<char> next(static_cast<std::size_t>(n), 1);
                for (Index x = 0; x < n; ++x) {
                    if (!K.row_complete[static_cast<std::size_t>(x)]) {
                        next[static_cast<std::size_t>(x)] = 0;
                        continue;
                    }
                    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(K.p, x); it;
                         ++it)
                        if (it.value() > 0.0 && !rel[static_cast<std::size_t>(it.col())]) {
                            next[static_cast<std::size_t>(x)] = 0;
                            break;
                        }
                }
                rel = std::move(next);
            };

            for (int horizon : horizons) {
                while (steps < horizon) {
                    if (!rel_f[static_cast<std::size_t>(e)] || !rel_g[static_cast<std::size_t>(e)])
                        throw TruncationOverflow("probe horizon leaks through the window");
                    sum_f += it_f(e);
                    sum_g += it_g(e);
                    ++steps;
                    if (steps < max_horizon) {
                        advance(it_f, rel_f);
                        advance(it_g, rel_g);
                    }
                }
                const double a_f = sum_f / static_cast<double>(horizon);
                const double a_g = sum_g / static_cast<double>(horizon);
                report.rows.push_back({s, f_label, horizon, std::abs(a_g - a_f)});
            }
        }
    }
    return report;
}

}  // namespace fusionwalk
