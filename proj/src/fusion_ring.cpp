#include "fusionwalk/fusion_ring.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace fusionwalk {

namespace {

std::uint64_t pair_key(Index r, Index s) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(r)) << 32) |
           static_cast<std::uint32_t>(s);
}

void sort_terms(std::vector<ProductTerm>& terms) {
    std::sort(terms.begin(), terms.end(), [](const ProductTerm& a, const ProductTerm& b) {
        return a.t < b.t;
    });
}

}  // namespace

FusionRing FusionRing::from_table(std::vector<std::string> labels, const std::string& unit,
                                  const std::map<std::string, std::string>& dual,
                                  const std::vector<std::tuple<std::string, std::string, std::string, Count>>& triples,
                                  const std::optional<std::vector<std::string>>& interior,
                                  std::string family) {
    auto d = std::make_shared<Data>();
    d->labels = std::move(labels);
    d->family = std::move(family);
    for (Index i = 0; i < static_cast<Index>(d->labels.size()); ++i) {
        if (!d->index.emplace(d->labels[static_cast<std::size_t>(i)], i).second)
            throw InvalidSpec("duplicate basis label '" + d->labels[static_cast<std::size_t>(i)] + "'");
    }
    auto resolve = [&](const std::string& l) -> Index {
        auto it = d->index.find(l);
        if (it == d->index.end()) throw InvalidSpec("unknown label '" + l + "'");
        return it->second;
    };

    d->unit = resolve(unit);
    d->dual.assign(d->labels.size(), -1);
    for (const auto& [from, to] : dual) d->dual[static_cast<std::size_t>(resolve(from))] = resolve(to);
    for (std::size_t i = 0; i < d->dual.size(); ++i)
        if (d->dual[i] < 0) throw InvalidSpec("dual map misses label '" + d->labels[i] + "'");

    d->truncated = interior.has_value();
    d->interior.assign(d->labels.size(), d->truncated ? 0 : 1);
    if (interior)
        for (const auto& l : *interior) d->interior[static_cast<std::size_t>(resolve(l))] = 1;

    auto table = std::make_shared<std::unordered_map<std::uint64_t, std::vector<ProductTerm>>>();
    for (const auto& [r, s, t, m] : triples) {
        if (m < 0) throw InvalidSpec("negative structure constant");
        if (m == 0) continue;
        (*table)[pair_key(resolve(r), resolve(s))].push_back({resolve(t), m});
    }
    for (auto& [key, terms] : *table) {
        sort_terms(terms);
        for (std::size_t i = 1; i < terms.size(); ++i)
            if (terms[i].t == terms[i - 1].t) throw InvalidSpec("duplicate coefficient triple");
    }

    const bool truncated = d->truncated;
    const auto interior_mask = d->interior;
    d->product = [table, truncated, interior_mask](Index r, Index s) -> ProductResult {
        ProductResult out;
        auto it = table->find(pair_key(r, s));
        if (it != table->end()) out.terms = it->second;
        out.complete = !truncated || (interior_mask[static_cast<std::size_t>(r)] &&
                                      interior_mask[static_cast<std::size_t>(s)]);
        return out;
    };
    return FusionRing(std::move(d));
}

FusionRing FusionRing::from_rule(std::vector<std::string> labels, Index unit, std::vector<Index> dual,
                                 ProductFn product, std::vector<char> interior, bool truncated,
                                 std::string family) {
    auto d = std::make_shared<Data>();
    d->labels = std::move(labels);
    for (Index i = 0; i < static_cast<Index>(d->labels.size()); ++i)
        if (!d->index.emplace(d->labels[static_cast<std::size_t>(i)], i).second)
            throw InvalidSpec("duplicate basis label '" + d->labels[static_cast<std::size_t>(i)] + "'");
    d->unit = unit;
    d->dual = std::move(dual);
    d->interior = std::move(interior);
    d->truncated = truncated;
    d->family = std::move(family);
    d->product = std::move(product);
    return FusionRing(std::move(d));
}

std::optional<Index> FusionRing::find(std::string_view label) const {
    auto it = d_->index.find(label);
    if (it == d_->index.end()) return std::nullopt;
    return it->second;
}

Count FusionRing::coeff(Index r, Index s, Index t) const {
    const auto pr = product(r, s);
    for (const auto& term : pr.terms)
        if (term.t == t) return term.m;
    return 0;
}

namespace {

std::string tuple_str(const FusionRing& ring, const std::vector<Index>& where) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < where.size(); ++i)
        os << (i ? ", " : "") << ring.label(where[i]);
    os << ")";
    return os.str();
}

}  // namespace

ValidationReport validate_ring(const FusionRing& ring) {
    ValidationReport report;
    const int n = ring.size();
    const Index e = ring.unit();

    auto violate = [&](std::string rule, std::vector<Index> where, std::string detail) {
        report.violations.push_back({std::move(rule), where, detail + " at " + tuple_str(ring, where)});
    };

    // Unit law: e*s = s and s*e = s wherever the products are complete.
    for (Index s = 0; s < n; ++s) {
        for (bool left : {true, false}) {
            const auto pr = left ? ring.product(e, s) : ring.product(s, e);
            if (!pr.complete) continue;
            ++report.checked_pairs;
            const bool ok = pr.terms.size() == 1 && pr.terms[0].t == s && pr.terms[0].m == 1;
            if (!ok) violate("unit", {left ? e : s, left ? s : e}, "product with unit is not the identity");
        }
    }

    // Duality and Frobenius symmetry on complete pairs.
    for (Index r = 0; r < n; ++r) {
        for (Index s = 0; s < n; ++s) {
            const auto pr = ring.product(r, s);
            if (!pr.complete) continue;
            ++report.checked_pairs;
            const Count unit_coeff = [&] {
                for (const auto& term : pr.terms)
                    if (term.t == e) return term.m;
                return Count{0};
            }();
            const Count expected = (s == ring.dual(r)) ? 1 : 0;
            if (unit_coeff != expected)
                violate("duality", {r, s}, "m^e_{rs} != [s == dual(r)]");
            for (const auto& term : pr.terms) {
                if (term.m < 0) violate("integrality", {r, s, term.t}, "negative coefficient");
                const auto mirror = ring.product(ring.dual(s), ring.dual(r));
                if (!mirror.complete) continue;
                Count mm = 0;
                const Index td = ring.dual(term.t);
                for (const auto& mt : mirror.terms)
                    if (mt.t == td) mm = mt.m;
                if (mm != term.m)
                    violate("frobenius", {r, s, term.t}, "m^t_{rs} != m^{dual t}_{dual s, dual r}");
            }
        }
    }

    // Associativity on triples whose intermediate products stay in the window.
    for (Index r = 0; r < n; ++r) {
        if (ring.truncated() && !ring.interior(r)) continue;
        for (Index s = 0; s < n; ++s) {
            if (ring.truncated() && !ring.interior(s)) continue;
            const auto rs = ring.product(r, s);
            if (!rs.complete) continue;
            for (Index t = 0; t < n; ++t) {
                if (ring.truncated() && !ring.interior(t)) continue;
                const auto st = ring.product(s, t);
                if (!st.complete) continue;

                std::map<Index, Count> lhs, rhs;
                bool checkable = true;
                for (const auto& u : rs.terms) {
                    const auto ut = ring.product(u.t, t);
                    if (!ut.complete) { checkable = false; break; }
                    for (const auto& v : ut.terms) lhs[v.t] += u.m * v.m;
                }
                if (!checkable) continue;
                for (const auto& u : st.terms) {
                    const auto ru = ring.product(r, u.t);
                    if (!ru.complete) { checkable = false; break; }
                    for (const auto& v : ru.terms) rhs[v.t] += u.m * v.m;
                }
                if (!checkable) continue;
                ++report.checked_triples;
                if (lhs != rhs) violate("associativity", {r, s, t}, "(rs)t != r(st)");
            }
        }
    }

    return report;
}

FormalSum multiply(const FusionRing& ring, const FormalSum& a, const FormalSum& b) {
    FormalSum out;
    for (const auto& [r, mr] : a.terms()) {
        for (const auto& [s, ms] : b.terms()) {
            const auto pr = ring.product(r, s);
            if (!pr.complete)
                throw TruncationOverflow("product of '" + ring.label(r) + "' and '" + ring.label(s) +
                                         "' leaves the window");
            for (const auto& term : pr.terms) out.add(term.t, mr * ms * term.m);
        }
    }
    return out;
}

}  // namespace fusionwalk
