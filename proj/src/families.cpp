#include "fusionwalk/families.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <string>
#include <unordered_map>

namespace fusionwalk {

namespace {

std::size_t max_window_cap() {
    if (const char* env = std::getenv("FUSIONWALK_MAX_WINDOW")) {
        const long long v = std::atoll(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 2'000'000;
}

void check_cap(std::size_t window_size, const std::string& what) {
    if (window_size > max_window_cap())
        throw InvalidSpec(what + " window of " + std::to_string(window_size) +
                          " labels exceeds FUSIONWALK_MAX_WINDOW");
}

FusionRing build_group(const std::vector<std::string>& labels,
                       const std::vector<std::vector<int>>& table) {
    const int n = static_cast<int>(labels.size());
    if (n == 0) throw InvalidSpec("empty group table");
    if (static_cast<int>(table.size()) != n)
        throw InvalidSpec("group table is not square");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n) throw InvalidSpec("group table is not square");
        for (int v : row)
            if (v < 0 || v >= n) throw InvalidSpec("group table entry out of range");
    }

    int unit = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) ok = table[static_cast<std::size_t>(e)][static_cast<std::size_t>(i)] == i &&
                                               table[static_cast<std::size_t>(i)][static_cast<std::size_t>(e)] == i;
        if (ok) { unit = e; break; }
    }
    if (unit < 0) throw InvalidSpec("group table has no identity element");

    std::vector<Index> inv(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            if (table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == unit) inv[static_cast<std::size_t>(i)] = j;
        if (inv[static_cast<std::size_t>(i)] < 0) throw InvalidSpec("group table element has no inverse");
    }
    if (n <= 64) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    const int a = table[static_cast<std::size_t>(table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])][static_cast<std::size_t>(k)];
                    const int b = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(table[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)])];
                    if (a != b) throw InvalidSpec("group table is not associative");
                }
    }

    auto tbl = std::make_shared<std::vector<std::vector<int>>>(table);
    auto product = [tbl](Index r, Index s) -> ProductResult {
        return {{{(*tbl)[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)], 1}}, true};
    };
    return FusionRing::from_rule(labels, unit, inv, std::move(product),
                                 std::vector<char>(static_cast<std::size_t>(n), 1), false, "group_table");
}

// reduced words over a..(rank letters), inverses as capitals
std::string reduce_concat(const std::string& w, const std::string& v) {
    std::string out = w;
    for (char c : v) {
        if (!out.empty() && out.back() != c &&
            std::toupper(static_cast<unsigned char>(out.back())) ==
                std::toupper(static_cast<unsigned char>(c)))
            out.pop_back();
        else
            out.push_back(c);
    }
    return out;
}

std::string invert_word(const std::string& w) {
    std::string out;
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
        const char c = *it;
        out.push_back(std::isupper(static_cast<unsigned char>(c))
                          ? static_cast<char>(std::tolower(static_cast<unsigned char>(c)))
                          : static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    return out;
}

FusionRing build_free_group(int rank, int radius) {
    if (rank < 1 || rank > 3) throw InvalidSpec("free_group rank must be in 1..3");
    if (radius < 1) throw InvalidSpec("free_group radius must be >= 1");

    std::vector<std::string> letters;
    for (int i = 0; i < rank; ++i) {
        letters.push_back(std::string(1, static_cast<char>('a' + i)));
        letters.push_back(std::string(1, static_cast<char>('A' + i)));
    }

    std::vector<std::string> words{""};
    std::vector<std::string> frontier{""};
    for (int len = 1; len <= radius; ++len) {
        std::vector<std::string> next;
        for (const auto& w : frontier)
            for (const auto& g : letters) {
                const std::string u = reduce_concat(w, g);
                if (static_cast<int>(u.size()) == len) next.push_back(u);
            }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        words.insert(words.end(), next.begin(), next.end());
        frontier = std::move(next);
        check_cap(words.size(), "free_group");
    }

    std::vector<std::string> labels;
    labels.reserve(words.size());
    for (const auto& w : words) labels.push_back(w.empty() ? "e" : w);

    auto word_of = std::make_shared<std::vector<std::string>>(std::move(words));
    auto index = std::make_shared<std::unordered_map<std::string, Index>>();
    for (Index i = 0; i < static_cast<Index>(word_of->size()); ++i)
        index->emplace((*word_of)[static_cast<std::size_t>(i)], i);

    std::vector<Index> dual(word_of->size());
    for (Index i = 0; i < static_cast<Index>(word_of->size()); ++i)
        dual[static_cast<std::size_t>(i)] = index->at(invert_word((*word_of)[static_cast<std::size_t>(i)]));

    std::vector<char> interior(word_of->size());
    for (std::size_t i = 0; i < word_of->size(); ++i)
        interior[i] = static_cast<int>((*word_of)[i].size()) <= radius / 2 ? 1 : 0;

    auto product = [word_of, index](Index r, Index s) -> ProductResult {
        const std::string w =
            reduce_concat((*word_of)[static_cast<std::size_t>(r)], (*word_of)[static_cast<std::size_t>(s)]);
        auto it = index->find(w);
        if (it == index->end()) return {{}, false};
        return {{{it->second, 1}}, true};
    };
    return FusionRing::from_rule(std::move(labels), 0, std::move(dual), std::move(product),
                                 std::move(interior), true, "free_group");
}

FusionRing build_lattice(int rank, int window) {
    if (rank < 1 || rank > 4) throw InvalidSpec("integer_lattice rank must be in 1..4");
    if (window < 1) throw InvalidSpec("integer_lattice window must be >= 1");

    const int side = 2 * window + 1;
    std::size_t count = 1;
    for (int i = 0; i < rank; ++i) count *= static_cast<std::size_t>(side);
    check_cap(count, "integer_lattice");

    std::vector<std::vector<int>> points;
    points.reserve(count);
    std::vector<int> p(static_cast<std::size_t>(rank), -window);
    while (true) {
        points.push_back(p);
        int i = rank - 1;
        while (i >= 0 && p[static_cast<std::size_t>(i)] == window) {
            p[static_cast<std::size_t>(i)] = -window;
            --i;
        }
        if (i < 0) break;
        ++p[static_cast<std::size_t>(i)];
    }
    std::sort(points.begin(), points.end(), [](const auto& a, const auto& b) {
        int na = 0, nb = 0;
        for (int v : a) na = std::max(na, std::abs(v));
        for (int v : b) nb = std::max(nb, std::abs(v));
        if (na != nb) return na < nb;
        return a < b;
    });

    auto label_of = [](const std::vector<int>& q) {
        std::string l;
        for (std::size_t i = 0; i < q.size(); ++i) {
            if (i) l += ",";
            l += std::to_string(q[i]);
        }
        return l;
    };

    std::vector<std::string> labels;
    labels.reserve(points.size());
    for (const auto& q : points) labels.push_back(label_of(q));

    auto pts = std::make_shared<std::vector<std::vector<int>>>(std::move(points));
    auto index = std::make_shared<std::unordered_map<std::string, Index>>();
    for (Index i = 0; i < static_cast<Index>(pts->size()); ++i) index->emplace(labels[static_cast<std::size_t>(i)], i);

    Index unit = index->at(label_of(std::vector<int>(static_cast<std::size_t>(rank), 0)));
    std::vector<Index> dual(pts->size());
    std::vector<char> interior(pts->size());
    for (Index i = 0; i < static_cast<Index>(pts->size()); ++i) {
        std::vector<int> neg = (*pts)[static_cast<std::size_t>(i)];
        int norm = 0;
        for (auto& v : neg) {
            norm = std::max(norm, std::abs(v));
            v = -v;
        }
        dual[static_cast<std::size_t>(i)] = index->at(label_of(neg));
        interior[static_cast<std::size_t>(i)] = norm <= window / 2 ? 1 : 0;
    }

    const int w = window;
    auto product = [pts, index, w, label_of](Index r, Index s) -> ProductResult {
        std::vector<int> sum = (*pts)[static_cast<std::size_t>(r)];
        const auto& q = (*pts)[static_cast<std::size_t>(s)];
        int norm = 0;
        for (std::size_t i = 0; i < sum.size(); ++i) {
            sum[i] += q[i];
            norm = std::max(norm, std::abs(sum[i]));
        }
        if (norm > w) return {{}, false};
        return {{{index->at(label_of(sum)), 1}}, true};
    };
    return FusionRing::from_rule(std::move(labels), unit, std::move(dual), std::move(product),
                                 std::move(interior), true, "integer_lattice");
}

FusionRing build_su2(int cutoff) {
    if (cutoff < 1) throw InvalidSpec("su2_rep cutoff must be >= 1");
    check_cap(static_cast<std::size_t>(cutoff) + 1, "su2_rep");

    std::vector<std::string> labels;
    std::vector<Index> dual;
    std::vector<char> interior;
    for (int i = 0; i <= cutoff; ++i) {
        labels.push_back(std::to_string(i));
        dual.push_back(i);
        interior.push_back(i <= cutoff / 2 ? 1 : 0);
    }
    const int c = cutoff;
    auto product = [c](Index r, Index s) -> ProductResult {
        ProductResult out;
        out.complete = r + s <= c;
        for (int t = std::abs(r - s); t <= std::min(r + s, c); t += 2) out.terms.push_back({t, 1});
        return out;
    };
    return FusionRing::from_rule(std::move(labels), 0, std::move(dual), std::move(product),
                                 std::move(interior), true, "su2_rep");
}

FusionRing build_verlinde(int k) {
    if (k < 1) throw InvalidSpec("verlinde_su2 level must be >= 1");

    std::vector<std::string> labels;
    std::vector<Index> dual;
    for (int i = 0; i <= k; ++i) {
        labels.push_back(std::to_string(i));
        dual.push_back(i);
    }
    auto product = [k](Index r, Index s) -> ProductResult {
        ProductResult out;
        for (int t = std::abs(r - s); t <= std::min(r + s, 2 * k - r - s); t += 2)
            out.terms.push_back({t, 1});
        return out;
    };
    return FusionRing::from_rule(std::move(labels), 0, std::move(dual), std::move(product),
                                 std::vector<char>(static_cast<std::size_t>(k) + 1, 1), false,
                                 "verlinde_su2");
}

FusionRing build_product(const FusionRing& a, const FusionRing& b) {
    const int na = a.size(), nb = b.size();
    check_cap(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb), "product");

    std::vector<std::string> labels;
    std::vector<Index> dual;
    std::vector<char> interior;
    labels.reserve(static_cast<std::size_t>(na) * static_cast<std::size_t>(nb));
    for (Index i = 0; i < na; ++i)
        for (Index j = 0; j < nb; ++j) {
            labels.push_back(a.label(i) + "|" + b.label(j));
            dual.push_back(a.dual(i) * nb + b.dual(j));
            interior.push_back(a.interior(i) && b.interior(j) ? 1 : 0);
        }

    auto ra = std::make_shared<FusionRing>(a);
    auto rb = std::make_shared<FusionRing>(b);
    auto product = [ra, rb, nb](Index r, Index s) -> ProductResult {
        const auto pa = ra->product(r / nb, s / nb);
        const auto pb = rb->product(r % nb, s % nb);
        ProductResult out;
        out.complete = pa.complete && pb.complete;
        for (const auto& ta : pa.terms)
            for (const auto& tb : pb.terms) out.terms.push_back({ta.t * nb + tb.t, ta.m * tb.m});
        std::sort(out.terms.begin(), out.terms.end(),
                  [](const ProductTerm& x, const ProductTerm& y) { return x.t < y.t; });
        return out;
    };
    const Index unit = a.unit() * nb + b.unit();
    return FusionRing::from_rule(std::move(labels), unit, std::move(dual), std::move(product),
                                 std::move(interior), a.truncated() || b.truncated(), "product");
}

}  // namespace

FamilySpec FamilySpec::verlinde(int k) {
    FamilySpec s;
    s.tag = Tag::verlinde_su2;
    s.level = k;
    return s;
}

FamilySpec FamilySpec::su2(int cutoff) {
    FamilySpec s;
    s.tag = Tag::su2_rep;
    s.cutoff = cutoff;
    return s;
}

FamilySpec FamilySpec::free_group(int rank, int radius) {
    FamilySpec s;
    s.tag = Tag::free_group;
    s.rank = rank;
    s.radius = radius;
    return s;
}

FamilySpec FamilySpec::lattice(int rank, int window) {
    FamilySpec s;
    s.tag = Tag::integer_lattice;
    s.rank = rank;
    s.window = window;
    return s;
}

FamilySpec FamilySpec::group(std::vector<std::string> labels, std::vector<std::vector<int>> table) {
    FamilySpec s;
    s.tag = Tag::group_table;
    s.group_labels = std::move(labels);
    s.group_table = std::move(table);
    return s;
}

FamilySpec FamilySpec::cyclic(int n) {
    if (n < 1) throw InvalidSpec("cyclic group order must be >= 1");
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
        for (int j = 0; j < n; ++j) table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = (i + j) % n;
    }
    return group(std::move(labels), std::move(table));
}

FamilySpec FamilySpec::klein4() { return product_of(cyclic(2), cyclic(2)); }

FamilySpec FamilySpec::s3() {
    // permutations of {0,1,2}: e, r = (012), r2, s = (01), sr, sr2
    const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    const std::vector<std::string> labels = {"e", "r", "rr", "s", "sr", "rs"};
    auto find = [&](const std::array<int, 3>& p) {
        for (std::size_t i = 0; i < perms.size(); ++i)
            if (perms[i] == p) return static_cast<int>(i);
        return -1;
    };
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) {
            std::array<int, 3> comp{};
            for (int x = 0; x < 3; ++x)
                comp[static_cast<std::size_t>(x)] =
                    perms[i][static_cast<std::size_t>(perms[j][static_cast<std::size_t>(x)])];
            table[i][j] = find(comp);
        }
    return group(labels, std::move(table));
}

FamilySpec FamilySpec::product_of(FamilySpec a, FamilySpec b) {
    FamilySpec s;
    s.tag = Tag::product;
    s.left = std::make_shared<FamilySpec>(std::move(a));
    s.right = std::make_shared<FamilySpec>(std::move(b));
    return s;
}

FusionRing build(const FamilySpec& spec) {
    switch (spec.tag) {
        case FamilySpec::Tag::group_table:
            return build_group(spec.group_labels, spec.group_table);
        case FamilySpec::Tag::free_group:
            return build_free_group(spec.rank, spec.radius);
        case FamilySpec::Tag::integer_lattice:
            return build_lattice(spec.rank, spec.window);
        case FamilySpec::Tag::su2_rep:
            return build_su2(spec.cutoff);
        case FamilySpec::Tag::verlinde_su2:
            return build_verlinde(spec.level);
        case FamilySpec::Tag::product:
            if (!spec.left || !spec.right) throw InvalidSpec("product spec misses a factor");
            return build_product(build(*spec.left), build(*spec.right));
    }
    throw InvalidSpec("unknown family tag");
}

DimensionFunction su2_classical_dims(const FusionRing& ring) {
    Eigen::VectorXd v(ring.size());
    for (Index i = 0; i < ring.size(); ++i)
        v(i) = static_cast<double>(std::stoi(ring.label(i))) + 1.0;
    return DimensionFunction(std::move(v));
}

DimensionFunction su2_quantum_dims(const FusionRing& ring, double q) {
    if (!(q > 0.0) || q == 1.0) throw InvalidSpec("quantum parameter q must be positive and != 1");
    Eigen::VectorXd v(ring.size());
    for (Index i = 0; i < ring.size(); ++i) {
        const double n = static_cast<double>(std::stoi(ring.label(i))) + 1.0;
        v(i) = (std::pow(q, n) - std::pow(q, -n)) / (q - 1.0 / q);
    }
    return DimensionFunction(std::move(v));
}

std::vector<std::pair<std::string, FusionRing>> builtin_finite_rings() {
    std::vector<std::pair<std::string, FusionRing>> rings;
    for (int k = 1; k <= 8; ++k)
        rings.emplace_back("verlinde_su2(" + std::to_string(k) + ")", build(FamilySpec::verlinde(k)));
    for (int n : {2, 3, 4, 5})
        rings.emplace_back("Z" + std::to_string(n), build(FamilySpec::cyclic(n)));
    rings.emplace_back("Z2xZ2", build(FamilySpec::klein4()));
    rings.emplace_back("S3", build(FamilySpec::s3()));
    rings.emplace_back("Z2xVerlinde2",
                       build(FamilySpec::product_of(FamilySpec::cyclic(2), FamilySpec::verlinde(2))));
    return rings;
}

}  // namespace fusionwalk
