#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fusionwalk/errors.hpp"

namespace fusionwalk {

using Index = int;
using Count = std::int64_t;

/// One term of a basis product: multiplicity m of basis element t.
struct ProductTerm {
    Index t;
    Count m;
};

/// Product of two basis elements, restricted to the stored window.
/// `complete` is false when part of the true product falls outside the window;
/// in that case `terms` holds only the in-window part.
struct ProductResult {
    std::vector<ProductTerm> terms;  // sorted by t
    bool complete = true;
};

/**
 * @brief Formal nonnegative-integer combination of basis elements.
 *
 * Coefficients are exact 64-bit integers; the zero combination is allowed.
 */
class FormalSum {
public:
    FormalSum() = default;

    static FormalSum basis(Index s) {
        FormalSum u;
        u.add(s, 1);
        return u;
    }

    void add(Index s, Count m) {
        if (m == 0) return;
        auto it = terms_.find(s);
        if (it == terms_.end()) {
            terms_.emplace(s, m);
        } else {
            it->second += m;
            if (it->second == 0) terms_.erase(it);
        }
    }

    const std::map<Index, Count>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }
    Count coeff(Index s) const {
        auto it = terms_.find(s);
        return it == terms_.end() ? 0 : it->second;
    }

    bool operator==(const FormalSum& other) const { return terms_ == other.terms_; }

private:
    std::map<Index, Count> terms_;
};

/// A single violated ring axiom, with the offending basis indices.
struct Violation {
    std::string rule;            // "unit", "duality", "frobenius", "associativity", ...
    std::vector<Index> where;    // offending tuple, in rule-specific order
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::size_t checked_pairs = 0;
    std::size_t checked_triples = 0;
    bool ok() const { return violations.empty(); }
};

/**
 * @brief A fusion ring presented on an ordered basis with explicit unit and dual.
 *
 * The ring may be a finite window into an infinite ring; in that case
 * `truncated()` is true and an interior subset marks the labels on which all
 * products are guaranteed to stay inside the window.  Products are served
 * through an internal provider, either an explicit table or a family rule,
 * so large windows never require a dense product table.
 *
 * Instances are immutable after construction and cheap to copy; all queries
 * are safe to call concurrently.
 */
class FusionRing {
public:
    using ProductFn = std::function<ProductResult(Index, Index)>;

    /// Build from explicit structure constants. Triples are (r, s, t, m) with
    /// labels resolved against `labels`; omitted triples mean m = 0.
    static FusionRing from_table(std::vector<std::string> labels, const std::string& unit,
                                 const std::map<std::string, std::string>& dual,
                                 const std::vector<std::tuple<std::string, std::string, std::string, Count>>& triples,
                                 const std::optional<std::vector<std::string>>& interior = std::nullopt,
                                 std::string family = "table");

    /// Build from a product rule (used by ring families with large windows).
    static FusionRing from_rule(std::vector<std::string> labels, Index unit, std::vector<Index> dual,
                                ProductFn product, std::vector<char> interior, bool truncated,
                                std::string family);

    int size() const { return static_cast<int>(d_->labels.size()); }
    const std::vector<std::string>& labels() const { return d_->labels; }
    const std::string& label(Index s) const { return d_->labels.at(static_cast<std::size_t>(s)); }
    std::optional<Index> find(std::string_view label) const;

    Index unit() const { return d_->unit; }
    Index dual(Index s) const { return d_->dual.at(static_cast<std::size_t>(s)); }

    bool truncated() const { return d_->truncated; }
    bool interior(Index s) const { return d_->interior.at(static_cast<std::size_t>(s)) != 0; }
    const std::vector<char>& interior_mask() const { return d_->interior; }

    const std::string& family() const { return d_->family; }

    /// Product [U_r]·[U_s] restricted to the window, with a completeness flag.
    ProductResult product(Index r, Index s) const { return d_->product(r, s); }

    /// Structure constant m^t_{rs} as stored in the window.
    Count coeff(Index r, Index s, Index t) const;

    /// True when the whole product of r and s is known to stay in the window.
    bool product_complete(Index r, Index s) const { return product(r, s).complete; }

private:
    struct Data {
        std::vector<std::string> labels;
        std::map<std::string, Index, std::less<>> index;
        Index unit = 0;
        std::vector<Index> dual;
        std::vector<char> interior;
        bool truncated = false;
        std::string family;
        ProductFn product;
    };

    explicit FusionRing(std::shared_ptr<const Data> d) : d_(std::move(d)) {}

    std::shared_ptr<const Data> d_;
};

/// Check the ring axioms (unit law, duality, Frobenius symmetry, associativity,
/// integrality) on all windows where products are complete. Violations are
/// returned as data, never thrown.
ValidationReport validate_ring(const FusionRing& ring);

/// Bilinear extension of the basis product. Throws TruncationOverflow when a
/// needed product is incomplete in the window.
FormalSum multiply(const FusionRing& ring, const FormalSum& a, const FormalSum& b);

}  // namespace fusionwalk
