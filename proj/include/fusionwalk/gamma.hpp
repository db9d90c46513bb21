#pragma once

#include <Eigen/SparseCore>

#include "fusionwalk/fusion_ring.hpp"

namespace fusionwalk {

/**
 * @brief The fusion operator of an object U: right multiplication by U on the basis.
 *
 * Entry (y, x) is sum over s of mult_U(s) * m^y_{xs}, an exact nonnegative
 * integer (stored in doubles, which are exact in this range). Column x of a
 * truncated ring is flagged incomplete when the product of x with some summand
 * of U leaves the window; its stored entries are then only the in-window part.
 */
struct FusionOperator {
    FormalSum object;
    Eigen::SparseMatrix<double> matrix;   // size n x n over the stored basis
    std::vector<char> column_complete;
};

/// Assemble the fusion operator of a formal object over the whole stored basis.
FusionOperator gamma_matrix(const FusionRing& ring, const FormalSum& object);

}  // namespace fusionwalk
