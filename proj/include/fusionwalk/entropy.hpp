#pragma once

#include <vector>

#include <Eigen/Core>

#include "fusionwalk/errors.hpp"

namespace fusionwalk {

/// Finite multi-matrix algebra, a direct sum of full matrix blocks.
struct MultiMatrixAlgebra {
    std::vector<int> block_dims;

    int blocks() const { return static_cast<int>(block_dims.size()); }
};

/**
 * @brief Unital inclusion N ⊂ M of multi-matrix algebras.
 *
 * Block k of N sits inside block l of M with multiplicity mult(k,l); unitality
 * forces sum_k mult(k,l) * sub_dims[k] == amb_dims[l] for every l.
 */
struct Inclusion {
    std::vector<int> sub_dims;   // n_k
    std::vector<int> amb_dims;   // m_l
    Eigen::MatrixXi mult;        // K x L, a_{kl} >= 0

    int sub_blocks() const { return static_cast<int>(sub_dims.size()); }
    int amb_blocks() const { return static_cast<int>(amb_dims.size()); }

    /// Throws ValidationError on inconsistent data.
    void validate() const;

    static Inclusion scalar_in_mat(int n);       // C ⊂ Mat_n
    static Inclusion diagonal_in_mat2();         // C^2 ⊂ Mat_2
    static Inclusion identity(std::vector<int> dims);
};

/**
 * @brief State (or positive functional) on a multi-matrix algebra, as one
 * density block per matrix block relative to the canonical trace.
 */
struct BlockState {
    std::vector<Eigen::MatrixXd> blocks;  // symmetric PSD, sizes m_l x m_l

    double total() const;                                   // sum of block traces
    static BlockState trace_state(const std::vector<int>& dims);

    /// Throws ValidationError unless blocks are symmetric PSD (1e-10) and,
    /// when `require_state`, total mass is 1 within 1e-12.
    void validate(const std::vector<int>& dims, bool require_state = true) const;
};

/// Mass matrix phi(z_k w_l): trace of the (k,l) diagonal sub-block under the
/// canonical embedding M w_l ≅ ⊕_k Mat_{n_k} ⊗ Mat_{a_{kl}}.
Eigen::MatrixXd block_masses(const Inclusion& inc, const BlockState& psi);

/// Point of the simplex over the support Omega = { (k,l) : a_{kl} != 0 }.
struct SimplexPoint {
    Eigen::MatrixXd xi;  // K x L, zero off-support

    Eigen::VectorXd marginal_rows() const { return xi.rowwise().sum(); }
    Eigen::VectorXd marginal_cols() const { return xi.colwise().sum(); }
};

/// Relative entropy S(phi, psi) = Tr(Q_phi (log Q_phi - log Q_psi)) in nats;
/// +infinity when psi fails to dominate the support of phi.
double rel_entropy(const BlockState& phi, const BlockState& psi);

/// Von Neumann entropy S(psi) = -Tr(Q_psi log Q_psi) in nats.
double vn_entropy(const BlockState& psi);

/// Restriction of a state along the inclusion: partial trace over the
/// multiplicity factor of each (k,l) sub-block, summed over l.
BlockState restrict_state(const Inclusion& inc, const BlockState& psi);

/// Block upper bound on the relative entropy of the inclusion at the given
/// masses: sum_{k,l} m_kl log[ phi(z_k) phi(w_l) a_kl min(a_kl, n_k) / m_kl^2 ].
double h_bound_blocks(const Inclusion& inc, const Eigen::MatrixXd& masses);

struct GapBounds {
    double lower = 0.0;
    double gap = 0.0;    // S(psi) - S(psi|_N), computed independently
    double upper = 0.0;
};

/// Two-sided bound on the entropy drop under restriction, plus the drop itself.
GapBounds entropy_gap_bounds(const Inclusion& inc, const BlockState& psi);

/// h_bound_blocks(phi) minus sum_i ( S(phi_i, phi) - S(phi_i|_N, phi|_N) ) for a
/// finite decomposition phi = sum_i phi_i; nonnegative up to roundoff.
double decomposition_defect(const Inclusion& inc, const BlockState& phi,
                            const std::vector<BlockState>& parts);

/// f(xi) = sum_{k,l} xi_kl log[ xi^(1)_k xi^(2)_l a_kl^2 / xi_kl^2 ], with
/// 0 log(...) = 0. Throws SupportViolation for mass off the support of A.
double f_simplex(const Eigen::MatrixXd& A, const SimplexPoint& xi);

/// Largest singular value of A by power iteration on A^T A.
double inclusion_norm(const Eigen::MatrixXd& A, double tol = 1e-12);

/// The maximizer xi*_kl = ||A||^-2 a_kl (Aw)_k w_l built from the Perron vector
/// w of A^T A, together with f(xi*) = 2 log ||A||. Disconnected support graphs
/// are maximized per component.
std::pair<SimplexPoint, double> f_maximizer(const Eigen::MatrixXd& A);

struct TwoLogCheck {
    double block_bound = 0.0;    // h_bound_blocks at the masses
    double f_value = 0.0;        // f at xi = masses
    double two_log_norm = 0.0;   // 2 log ||A||
    bool ok = false;             // f_value <= two_log_norm + 1e-9
};

/// Compare the block bound and the simplex function at the given masses
/// against 2 log ||A||.
TwoLogCheck two_log_norm_check(const Inclusion& inc, const Eigen::MatrixXd& masses);

}  // namespace fusionwalk
