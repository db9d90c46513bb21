#include "fusionwalk/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace fusionwalk::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json load_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return j;
}

FusionRing ring_from_json(const json& j, const std::string& origin) {
    try {
        if (!j.contains("basis") || !j.contains("unit") || !j.contains("dual"))
            throw ParseError(origin + ": ring file needs basis, unit, dual");
        std::vector<std::string> basis = j.at("basis").get<std::vector<std::string>>();
        const std::string unit = j.at("unit").get<std::string>();
        std::map<std::string, std::string> dual;
        for (const auto& [from, to] : j.at("dual").items()) dual[from] = to.get<std::string>();

        std::vector<std::tuple<std::string, std::string, std::string, Count>> triples;
        if (j.contains("coeffs"))
            for (const auto& c : j.at("coeffs"))
                triples.emplace_back(c.at("r").get<std::string>(), c.at("s").get<std::string>(),
                                     c.at("t").get<std::string>(), c.at("m").get<Count>());

        std::optional<std::vector<std::string>> interior;
        if (j.contains("interior")) interior = j.at("interior").get<std::vector<std::string>>();
        return FusionRing::from_table(std::move(basis), unit, dual, triples, interior);
    } catch (const json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    } catch (const InvalidSpec& e) {
        throw ParseError(origin + ": " + e.what());
    }
}

}  // namespace

FusionRing parse_ring(const std::filesystem::path& path) {
    const FusionRing ring = ring_from_json(load_json(path), path.string());
    const ValidationReport report = validate_ring(ring);
    if (!report.ok())
        throw ValidationError(path.string() + ": " + report.violations.front().rule + " violation; " +
                              report.violations.front().detail);
    return ring;
}

FusionRing parse_ring_unvalidated(const std::filesystem::path& path) {
    return ring_from_json(load_json(path), path.string());
}

Measure parse_measure(const std::filesystem::path& path, const FusionRing& ring) {
    const json j = load_json(path);
    if (!j.contains("weights")) throw ParseError(path.string() + ": measure file needs weights");
    std::map<Index, double> weights;
    for (const auto& [label, w] : j.at("weights").items()) {
        const auto idx = ring.find(label);
        if (!idx) throw ParseError(path.string() + ": unknown label '" + label + "'");
        weights[*idx] = w.get<double>();
    }
    return Measure::from_weights(std::move(weights));
}

InclusionInput parse_inclusion(const std::filesystem::path& path) {
    const json j = load_json(path);
    InclusionInput input;
    try {
        input.inclusion.sub_dims = j.at("n").get<std::vector<int>>();
        input.inclusion.amb_dims = j.at("m").get<std::vector<int>>();
        const auto rows = j.at("A").get<std::vector<std::vector<int>>>();
        const int K = static_cast<int>(input.inclusion.sub_dims.size());
        const int L = static_cast<int>(input.inclusion.amb_dims.size());
        input.inclusion.mult.resize(K, L);
        if (static_cast<int>(rows.size()) != K) throw ParseError(path.string() + ": A has wrong row count");
        for (int k = 0; k < K; ++k) {
            if (static_cast<int>(rows[static_cast<std::size_t>(k)].size()) != L)
                throw ParseError(path.string() + ": A has ragged rows");
            for (int l = 0; l < L; ++l) input.inclusion.mult(k, l) = rows[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)];
        }
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    input.inclusion.validate();

    if (j.contains("state")) {
        const auto& st = j.at("state");
        if (st.contains("densities")) {
            for (const auto& block : st.at("densities")) {
                const auto rows = block.get<std::vector<std::vector<double>>>();
                Eigen::MatrixXd q(rows.size(), rows.empty() ? 0 : rows[0].size());
                for (std::size_t i = 0; i < rows.size(); ++i) {
                    if (rows[i].size() != rows[0].size())
                        throw ParseError(path.string() + ": ragged density block");
                    for (std::size_t c = 0; c < rows[i].size(); ++c)
                        q(static_cast<int>(i), static_cast<int>(c)) = rows[i][c];
                }
                input.state.blocks.push_back(std::move(q));
            }
            input.state.validate(input.inclusion.amb_dims);
            input.has_state = true;
            input.masses = block_masses(input.inclusion, input.state);
            input.has_masses = true;
        } else if (st.contains("masses")) {
            const auto rows = st.at("masses").get<std::vector<std::vector<double>>>();
            input.masses.resize(input.inclusion.sub_blocks(), input.inclusion.amb_blocks());
            if (static_cast<int>(rows.size()) != input.inclusion.sub_blocks())
                throw ParseError(path.string() + ": masses has wrong row count");
            for (int k = 0; k < input.inclusion.sub_blocks(); ++k)
                for (int l = 0; l < input.inclusion.amb_blocks(); ++l)
                    input.masses(k, l) = rows[static_cast<std::size_t>(k)].at(static_cast<std::size_t>(l));
            input.has_masses = true;
        } else {
            throw ParseError(path.string() + ": state needs densities or masses");
        }
    }
    return input;
}

std::string emit_ring(const FusionRing& ring) {
    ordered_json j;
    j["basis"] = ring.labels();
    j["unit"] = ring.label(ring.unit());
    ordered_json dual = ordered_json::object();
    for (Index s = 0; s < ring.size(); ++s) dual[ring.label(s)] = ring.label(ring.dual(s));
    j["dual"] = dual;

    ordered_json coeffs = ordered_json::array();
    for (Index r = 0; r < ring.size(); ++r)
        for (Index s = 0; s < ring.size(); ++s) {
            const auto pr = ring.product(r, s);
            for (const auto& term : pr.terms) {
                ordered_json c;
                c["r"] = ring.label(r);
                c["s"] = ring.label(s);
                c["t"] = ring.label(term.t);
                c["m"] = term.m;
                coeffs.push_back(std::move(c));
            }
        }
    j["coeffs"] = std::move(coeffs);

    if (ring.truncated()) {
        ordered_json interior = ordered_json::array();
        for (Index s = 0; s < ring.size(); ++s)
            if (ring.interior(s)) interior.push_back(ring.label(s));
        j["interior"] = std::move(interior);
    }
    return j.dump(2);
}

std::string emit_measure(const Measure& mu, const FusionRing& ring) {
    ordered_json weights = ordered_json::object();
    for (const auto& [s, w] : mu.weights()) weights[ring.label(s)] = w;
    ordered_json j;
    j["weights"] = std::move(weights);
    return j.dump(2);
}

}  // namespace fusionwalk::io
