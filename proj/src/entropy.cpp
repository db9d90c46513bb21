#include "fusionwalk/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace fusionwalk {

namespace {

constexpr double kEigenFloor = 1e-14;  // eigenvalues below this count as 0
constexpr double kMassFloor = 1e-12;   // mass below this cannot force +infinity

double eta(double t) { return t > 0.0 ? -t * std::log(t) : 0.0; }

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(const Eigen::MatrixXd& q) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    if (es.info() != Eigen::Success) throw ValidationError("eigendecomposition failed");
    return es;
}

}  // namespace

void Inclusion::validate() const {
    const int K = sub_blocks(), L = amb_blocks();
    if (K == 0 || L == 0) throw ValidationError("inclusion needs at least one block on each side");
    if (mult.rows() != K || mult.cols() != L) throw ValidationError("multiplicity matrix shape mismatch");
    for (int k = 0; k < K; ++k)
        if (sub_dims[static_cast<std::size_t>(k)] < 1) throw ValidationError("subalgebra block dims must be >= 1");
    for (int l = 0; l < L; ++l)
        if (amb_dims[static_cast<std::size_t>(l)] < 1) throw ValidationError("ambient block dims must be >= 1");

    for (int k = 0; k < K; ++k) {
        bool nonzero = false;
        for (int l = 0; l < L; ++l) {
            if (mult(k, l) < 0) throw ValidationError("negative multiplicity");
            nonzero = nonzero || mult(k, l) > 0;
        }
        if (!nonzero) throw ValidationError("multiplicity matrix has an all-zero row");
    }
    for (int l = 0; l < L; ++l) {
        int col = 0;
        for (int k = 0; k < K; ++k) col += mult(k, l) * sub_dims[static_cast<std::size_t>(k)];
        if (col == 0) throw ValidationError("multiplicity matrix has an all-zero column");
        if (col != amb_dims[static_cast<std::size_t>(l)])
            throw ValidationError("unital consistency fails: sum_k a_kl n_k != m_l at column " +
                                  std::to_string(l));
    }
}

Inclusion Inclusion::scalar_in_mat(int n) {
    Inclusion inc;
    inc.sub_dims = {1};
    inc.amb_dims = {n};
    inc.mult = Eigen::MatrixXi::Constant(1, 1, n);
    inc.validate();
    return inc;
}

Inclusion Inclusion::diagonal_in_mat2() {
    Inclusion inc;
    inc.sub_dims = {1, 1};
    inc.amb_dims = {2};
    inc.mult = Eigen::MatrixXi::Constant(2, 1, 1);
    inc.validate();
    return inc;
}

Inclusion Inclusion::identity(std::vector<int> dims) {
    Inclusion inc;
    inc.sub_dims = dims;
    inc.amb_dims = std::move(dims);
    const int K = inc.sub_blocks();
    inc.mult = Eigen::MatrixXi::Identity(K, K);
    inc.validate();
    return inc;
}

double BlockState::total() const {
    double t = 0.0;
    for (const auto& q : blocks) t += q.trace();
    return t;
}

BlockState BlockState::trace_state(const std::vector<int>& dims) {
    double full = 0.0;
    for (int m : dims) full += m;
    BlockState psi;
    for (int m : dims) psi.blocks.push_back(Eigen::MatrixXd::Identity(m, m) / full);
    return psi;
}

void BlockState::validate(const std::vector<int>& dims, bool require_state) const {
    if (blocks.size() != dims.size()) throw ValidationError("state block count mismatch");
    for (std::size_t l = 0; l < blocks.size(); ++l) {
        const auto& q = blocks[l];
        const int m = dims[l];
        if (q.rows() != m || q.cols() != m) throw ValidationError("state block shape mismatch");
        if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-10)
            throw ValidationError("state block is not symmetric");
        const auto es = eig(0.5 * (q + q.transpose()));
        if (es.eigenvalues().minCoeff() < -1e-10)
            throw ValidationError("state block is not positive semidefinite");
    }
    if (require_state && std::abs(total() - 1.0) > 1e-12)
        throw ValidationError("state mass is not 1");
}

Eigen::MatrixXd block_masses(const Inclusion& inc, const BlockState& psi) {
    const int K = inc.sub_blocks(), L = inc.amb_blocks();
    if (static_cast<int>(psi.blocks.size()) != L) throw ShapeMismatch("state does not live on the ambient algebra");
    Eigen::MatrixXd masses = Eigen::MatrixXd::Zero(K, L);
    for (int l = 0; l < L; ++l) {
        const auto& q = psi.blocks[static_cast<std::size_t>(l)];
        int offset = 0;
        for (int k = 0; k < K; ++k) {
            const int a = inc.mult(k, l);
            if (a == 0) continue;
            const int span = inc.sub_dims[static_cast<std::size_t>(k)] * a;
            masses(k, l) = q.block(offset, offset, span, span).trace();
            offset += span;
        }
        if (offset != inc.amb_dims[static_cast<std::size_t>(l)])
            throw ShapeMismatch("inclusion is not unital on block " + std::to_string(l));
    }
    return masses;
}

double rel_entropy(const BlockState& phi, const BlockState& psi) {
    if (phi.blocks.size() != psi.blocks.size()) throw ShapeMismatch("states on different algebras");

    double value = 0.0;
    double escaped_mass = 0.0;
    for (std::size_t l = 0; l < phi.blocks.size(); ++l) {
        const auto& qp = phi.blocks[l];
        const auto& qs = psi.blocks[l];
        if (qp.rows() != qs.rows()) throw ShapeMismatch("block shapes differ");

        const auto ep = eig(qp);
        const auto es = eig(qs);
        const auto& p = ep.eigenvalues();
        const auto& q = es.eigenvalues();
        const Eigen::MatrixXd overlap = ep.eigenvectors().transpose() * es.eigenvectors();

        for (int i = 0; i < p.size(); ++i) {
            if (p(i) <= kEigenFloor) continue;
            value += p(i) * std::log(p(i));
            for (int j = 0; j < q.size(); ++j) {
                const double w = overlap(i, j) * overlap(i, j);
                if (q(j) <= kEigenFloor)
                    escaped_mass += p(i) * w;
                else
                    value -= p(i) * w * std::log(q(j));
            }
        }
    }
    if (escaped_mass > kMassFloor) return std::numeric_limits<double>::infinity();
    return value;
}

double vn_entropy(const BlockState& psi) {
    double s = 0.0;
    for (const auto& q : psi.blocks) {
        const auto es = eig(q);
        for (int i = 0; i < es.eigenvalues().size(); ++i) {
            const double lambda = es.eigenvalues()(i);
            if (lambda > kEigenFloor) s += eta(lambda);
        }
    }
    return s;
}

BlockState restrict_state(const Inclusion& inc, const BlockState& psi) {
    const int K = inc.sub_blocks(), L = inc.amb_blocks();
    if (static_cast<int>(psi.blocks.size()) != L) throw ShapeMismatch("state does not live on the ambient algebra");

    BlockState out;
    for (int k = 0; k < K; ++k) {
        const int n = inc.sub_dims[static_cast<std::size_t>(k)];
        out.blocks.push_back(Eigen::MatrixXd::Zero(n, n));
    }
    for (int l = 0; l < L; ++l) {
        const auto& q = psi.blocks[static_cast<std::size_t>(l)];
        if (q.rows() != inc.amb_dims[static_cast<std::size_t>(l)]) throw ShapeMismatch("state block shape mismatch");
        int offset = 0;
        for (int k = 0; k < K; ++k) {
            const int a = inc.mult(k, l);
            if (a == 0) continue;
            const int n = inc.sub_dims[static_cast<std::size_t>(k)];
            auto& target = out.blocks[static_cast<std::size_t>(k)];
            // partial trace over the multiplicity factor of Mat_n (x) Mat_a
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int alpha = 0; alpha < a; ++alpha)
                        target(i, j) += q(offset + i * a + alpha, offset + j * a + alpha);
            offset += n * a;
        }
    }
    return out;
}

double h_bound_blocks(const Inclusion& inc, const Eigen::MatrixXd& masses) {
    const int K = inc.sub_blocks(), L = inc.amb_blocks();
    if (masses.rows() != K || masses.cols() != L) throw ShapeMismatch("mass matrix shape mismatch");
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l)
            if (masses(k, l) > 0.0 && inc.mult(k, l) == 0)
                throw SupportViolation("mass off the support of the multiplicity matrix at (" +
                                       std::to_string(k) + "," + std::to_string(l) + ")");

    const Eigen::VectorXd z = masses.rowwise().sum();
    const Eigen::VectorXd w = masses.colwise().sum();
    double bound = 0.0;
    for (int k = 0; k < K; ++k)
        for (int l = 0; l < L; ++l) {
            const double m = masses(k, l);
            if (m <= 0.0) continue;
            const double a = inc.mult(k, l);
            const double cap = std::min(a, static_cast<double>(inc.sub_dims[static_cast<std::size_t>(k)]));
            bound += m * std::log(z(k) * w(l) * a * cap / (m * m));
        }
    return bound;
}

GapBounds entropy_gap_bounds(const Inclusion& inc, const BlockState& psi) {
    const Eigen::MatrixXd masses = block_masses(inc, psi);
    const Eigen::VectorXd z = masses.rowwise().sum();
    const Eigen::VectorXd w = masses.colwise().sum();

    GapBounds out;
    for (int k = 0; k < inc.sub_blocks(); ++k)
        for (int l = 0; l < inc.amb_blocks(); ++l) {
            const double m = masses(k, l);
            if (m <= 0.0) continue;
            const double a = inc.mult(k, l);
            const double cap = std::min(a, static_cast<double>(inc.sub_dims[static_cast<std::size_t>(k)]));
            out.lower -= m * std::log(w(l) * cap / m);
            out.upper += m * std::log(z(k) * a / m);
        }
    out.gap = vn_entropy(psi) - vn_entropy(restrict_state(inc, psi));
    return out;
}

double decomposition_defect(const Inclusion& inc, const BlockState& phi,
                            const std::vector<BlockState>& parts) {
    if (parts.empty()) throw ValidationError("decomposition needs at least one part");
    // parts must sum to phi
    for (std::size_t l = 0; l < phi.blocks.size(); ++l) {
        Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(phi.blocks[l].rows(), phi.blocks[l].cols());
        for (const auto& part : parts) sum += part.blocks[l];
        if ((sum - phi.blocks[l]).cwiseAbs().maxCoeff() > 1e-10)
            throw ValidationError("decomposition does not sum to the state");
    }

    const BlockState phi_n = restrict_state(inc, phi);
    double attained = 0.0;
    for (const auto& part : parts) {
        attained += rel_entropy(part, phi);
        attained -= rel_entropy(restrict_state(inc, part), phi_n);
    }
    return h_bound_blocks(inc, block_masses(inc, phi)) - attained;
}

double f_simplex(const Eigen::MatrixXd& A, const SimplexPoint& xi) {
    if (A.rows() != xi.xi.rows() || A.cols() != xi.xi.cols())
        throw ShapeMismatch("simplex point shape mismatch");
    const Eigen::VectorXd r = xi.marginal_rows();
    const Eigen::VectorXd c = xi.marginal_cols();
    double value = 0.0;
    for (int k = 0; k < A.rows(); ++k)
        for (int l = 0; l < A.cols(); ++l) {
            const double x = xi.xi(k, l);
            if (x < 0.0) throw SupportViolation("negative simplex coordinate");
            if (x == 0.0) continue;
            if (A(k, l) == 0.0)
                throw SupportViolation("simplex mass off the support of A at (" +
                                       std::to_string(k) + "," + std::to_string(l) + ")");
            value += x * std::log(r(k) * c(l) * A(k, l) * A(k, l) / (x * x));
        }
    return value;
}

double inclusion_norm(const Eigen::MatrixXd& A, double tol) {
    if (A.size() == 0 || A.cwiseAbs().maxCoeff() == 0.0) throw ZeroMatrix("norm of a zero matrix");
    const Eigen::MatrixXd gram = A.transpose() * A;
    Eigen::VectorXd v = Eigen::VectorXd::Ones(A.cols());
    v /= v.norm();
    double rayleigh = 0.0, prev = -1.0;
    for (int it = 0; it < 1000000; ++it) {
        Eigen::VectorXd w = gram * v;
        rayleigh = v.dot(w);
        if (it > 0 && std::abs(rayleigh - prev) < tol * std::max(1.0, rayleigh)) break;
        prev = rayleigh;
        const double n = w.norm();
        if (n == 0.0) break;
        v = w / n;
    }
    return std::sqrt(std::max(0.0, rayleigh));
}

namespace {

// connected components of the bipartite support graph of A, as (rows, cols)
std::vector<std::pair<std::vector<int>, std::vector<int>>> support_components(const Eigen::MatrixXd& A) {
    const int K = static_cast<int>(A.rows()), L = static_cast<int>(A.cols());
    std::vector<int> row_comp(static_cast<std::size_t>(K), -1), col_comp(static_cast<std::size_t>(L), -1);
    int comps = 0;
    for (int k0 = 0; k0 < K; ++k0) {
        if (row_comp[static_cast<std::size_t>(k0)] >= 0) continue;
        bool has_edge = false;
        for (int l = 0; l < L; ++l) has_edge = has_edge || A(k0, l) != 0.0;
        if (!has_edge) continue;
        const int c = comps++;
        std::vector<int> stack_rows{k0};
        row_comp[static_cast<std::size_t>(k0)] = c;
        while (!stack_rows.empty()) {
            const int k = stack_rows.back();
            stack_rows.pop_back();
            for (int l = 0; l < L; ++l) {
                if (A(k, l) == 0.0 || col_comp[static_cast<std::size_t>(l)] >= 0) continue;
                col_comp[static_cast<std::size_t>(l)] = c;
                for (int k2 = 0; k2 < K; ++k2)
                    if (A(k2, l) != 0.0 && row_comp[static_cast<std::size_t>(k2)] < 0) {
                        row_comp[static_cast<std::size_t>(k2)] = c;
                        stack_rows.push_back(k2);
                    }
            }
        }
    }
    std::vector<std::pair<std::vector<int>, std::vector<int>>> out(static_cast<std::size_t>(comps));
    for (int k = 0; k < K; ++k)
        if (row_comp[static_cast<std::size_t>(k)] >= 0) out[static_cast<std::size_t>(row_comp[static_cast<std::size_t>(k)])].first.push_back(k);
    for (int l = 0; l < L; ++l)
        if (col_comp[static_cast<std::size_t>(l)] >= 0) out[static_cast<std::size_t>(col_comp[static_cast<std::size_t>(l)])].second.push_back(l);
    return out;
}

}  // namespace

std::pair<SimplexPoint, double> f_maximizer(const Eigen::MatrixXd& A) {
    if (A.size() == 0 || A.cwiseAbs().maxCoeff() == 0.0) throw ZeroMatrix("maximizer of a zero matrix");

    const auto components = support_components(A);
    double best_norm = -1.0;
    Eigen::MatrixXd best_sub;
    std::vector<int> best_rows, best_cols;
    for (const auto& [rows, cols] : components) {
        Eigen::MatrixXd sub(rows.size(), cols.size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < cols.size(); ++j)
                sub(static_cast<int>(i), static_cast<int>(j)) = A(rows[i], cols[j]);
        const double norm = inclusion_norm(sub, 1e-15);
        if (norm > best_norm) {
            best_norm = norm;
            best_sub = sub;
            best_rows = rows;
            best_cols = cols;
        }
    }

    // Perron vector of A^T A on the best component
    const Eigen::MatrixXd gram = best_sub.transpose() * best_sub;
    Eigen::VectorXd w = Eigen::VectorXd::Ones(best_sub.cols());
    w /= w.norm();
    double prev = -1.0;
    for (int it = 0; it < 1000000; ++it) {
        Eigen::VectorXd next = gram * w;
        const double rayleigh = w.dot(next);
        const double n = next.norm();
        if (n == 0.0) break;
        w = next / n;
        if (it > 0 && std::abs(rayleigh - prev) < 1e-15 * std::max(1.0, rayleigh)) break;
        prev = rayleigh;
    }
    w = w.cwiseAbs();

    const Eigen::VectorXd aw = best_sub * w;
    const double norm2 = best_norm * best_norm;
    SimplexPoint xi;
    xi.xi = Eigen::MatrixXd::Zero(A.rows(), A.cols());
    for (std::size_t i = 0; i < best_rows.size(); ++i)
        for (std::size_t j = 0; j < best_cols.size(); ++j)
            xi.xi(best_rows[i], best_cols[j]) =
                best_sub(static_cast<int>(i), static_cast<int>(j)) * aw(static_cast<int>(i)) *
                w(static_cast<int>(j)) / norm2;
    return {xi, f_simplex(A, xi)};
}

TwoLogCheck two_log_norm_check(const Inclusion& inc, const Eigen::MatrixXd& masses) {
    TwoLogCheck out;
    out.block_bound = h_bound_blocks(inc, masses);
    SimplexPoint xi;
    xi.xi = masses;
    const Eigen::MatrixXd A = inc.mult.cast<double>();
    out.f_value = f_simplex(A, xi);
    out.two_log_norm = 2.0 * std::log(inclusion_norm(A));
    out.ok = out.f_value <= out.two_log_norm + 1e-9;
    return out;
}

}  // namespace fusionwalk
