#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fusionwalk/dimension.hpp"
#include "fusionwalk/fusion_ring.hpp"

namespace fusionwalk {

/**
 * @brief Recipe for one of the standard example rings.
 *
 * Families:
 *  - group_table:     finite group ring from an explicit multiplication table
 *  - free_group:      ball of a free group ring (truncated)
 *  - integer_lattice: box window of the group ring of Z^rank (truncated)
 *  - su2_rep:         SU(2) representation ring, spins doubled, cut at `cutoff` (truncated)
 *  - verlinde_su2:    level-k Verlinde ring of SU(2) (finite)
 *  - product:         product ring of two specs
 */
struct FamilySpec {
    enum class Tag { group_table, free_group, integer_lattice, su2_rep, verlinde_su2, product };

    Tag tag = Tag::verlinde_su2;
    int level = 1;    // verlinde_su2
    int cutoff = 1;   // su2_rep, doubled-spin units
    int rank = 1;     // free_group, integer_lattice
    int radius = 4;   // free_group ball radius
    int window = 1;   // integer_lattice half-width
    std::vector<std::string> group_labels;        // group_table
    std::vector<std::vector<int>> group_table;    // group_table, table[i][j] = index of g_i g_j
    std::shared_ptr<FamilySpec> left, right;      // product

    static FamilySpec verlinde(int k);
    static FamilySpec su2(int cutoff);
    static FamilySpec free_group(int rank, int radius);
    static FamilySpec lattice(int rank, int window);
    static FamilySpec group(std::vector<std::string> labels, std::vector<std::vector<int>> table);
    static FamilySpec cyclic(int n);
    static FamilySpec klein4();
    static FamilySpec s3();
    static FamilySpec product_of(FamilySpec a, FamilySpec b);
};

/// Build the ring described by the spec. Throws InvalidSpec on bad parameters
/// and respects the FUSIONWALK_MAX_WINDOW cap on truncated window sizes.
FusionRing build(const FamilySpec& spec);

/// Classical dimensions d(n) = n + 1 on a doubled-spin SU(2) window.
DimensionFunction su2_classical_dims(const FusionRing& ring);

/// Quantum dimensions d(n) = [n+1]_q = (q^{n+1} - q^{-(n+1)})/(q - q^{-1}), q != 1.
DimensionFunction su2_quantum_dims(const FusionRing& ring, double q);

/// The finite rings used throughout the test and acceptance corpora.
std::vector<std::pair<std::string, FusionRing>> builtin_finite_rings();

}  // namespace fusionwalk
