#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fusionwalk/entropy.hpp"
#include "fusionwalk/fusion_ring.hpp"
#include "fusionwalk/measure.hpp"

namespace fusionwalk::io {

inline constexpr const char* kVersion = "0.1.0";

// JSON schemas:
//   ring:      { "basis": [...], "unit": l, "dual": {l: l}, "coeffs": [{"r","s","t","m"}], "interior": [...]? }
//   measure:   { "weights": { label: weight } }
//   inclusion: { "n": [...], "m": [...], "A": [[...]],
//                "state": { "densities": [[[...]]] } | { "masses": [[...]] } }

FusionRing parse_ring(const std::filesystem::path& path);
/// Schema parse only; axiom violations are left for validate_ring to report.
FusionRing parse_ring_unvalidated(const std::filesystem::path& path);
Measure parse_measure(const std::filesystem::path& path, const FusionRing& ring);

struct InclusionInput {
    Inclusion inclusion;
    bool has_state = false;
    BlockState state;        // when densities were given
    bool has_masses = false;
    Eigen::MatrixXd masses;  // when masses were given (or derived from the state)
};
InclusionInput parse_inclusion(const std::filesystem::path& path);

std::string emit_ring(const FusionRing& ring);
std::string emit_measure(const Measure& mu, const FusionRing& ring);

/// Command dispatcher behind the CLI binary. Returns the process exit code:
/// 0 success, 2 validation/parse failure, 3 truncation overflow.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fusionwalk::io
