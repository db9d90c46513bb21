#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fusionwalk/amenability.hpp"
#include "fusionwalk/families.hpp"
#include "fusionwalk/io.hpp"
#include "fusionwalk/walk.hpp"

namespace fusionwalk::io {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// ---------------------------------------------------------------- reporting

struct ReportContext {
    std::string command;
    std::vector<std::filesystem::path> inputs;
    ordered_json results = ordered_json::object();
    std::vector<std::string> warnings;
};

std::string fnv1a_digest(const std::vector<std::filesystem::path>& inputs) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const char* data, std::size_t len) {
        for (std::size_t i = 0; i < len; ++i) {
            h ^= static_cast<unsigned char>(data[i]);
            h *= 1099511628211ull;
        }
    };
    for (const auto& path : inputs) {
        std::ifstream in(path, std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        const std::string content = buf.str();
        mix(path.string().c_str(), path.string().size());
        mix(content.c_str(), content.size());
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << h;
    return os.str();
}

void write_report(const ReportContext& ctx, const std::string& out_path, std::ostream& out) {
    ordered_json report;
    report["command"] = ctx.command;
    report["inputs_digest"] = fnv1a_digest(ctx.inputs);
    report["results"] = ctx.results;
    report["warnings"] = ctx.warnings;
    report["version"] = kVersion;
    const std::string text = report.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream file(out_path);
        if (!file) throw ParseError("cannot write '" + out_path + "'");
        file << text;
    } else {
        out << text;
    }
}

void write_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream file(path);
    if (!file) throw ParseError("cannot write '" + path + "'");
    file.precision(17);
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) file << (j ? "," : "") << m(i, j);
        file << "\n";
    }
}

// ---------------------------------------------------------------- ring input

FamilySpec spec_from_json(const json& j);

FamilySpec spec_from_fields(const std::string& family, const std::map<std::string, std::string>& kv) {
    auto geti = [&kv](const std::string& key, std::optional<int> fallback = std::nullopt) {
        auto it = kv.find(key);
        if (it == kv.end()) {
            if (fallback) return *fallback;
            throw InvalidSpec("family parameter '" + key + "' is required");
        }
        return std::stoi(it->second);
    };

    if (family == "verlinde_su2") return FamilySpec::verlinde(geti("k"));
    if (family == "su2_rep") return FamilySpec::su2(geti("cutoff"));
    if (family == "free_group") return FamilySpec::free_group(geti("rank"), geti("radius"));
    if (family == "integer_lattice") return FamilySpec::lattice(geti("rank"), geti("window"));
    if (family == "group_table") {
        auto it = kv.find("group");
        if (it == kv.end()) throw InvalidSpec("group_table needs group=cyclic|klein4|s3");
        if (it->second == "cyclic") return FamilySpec::cyclic(geti("order"));
        if (it->second == "klein4") return FamilySpec::klein4();
        if (it->second == "s3") return FamilySpec::s3();
        throw InvalidSpec("unknown named group '" + it->second + "'");
    }
    if (family == "product") {
        auto left = kv.find("left");
        auto right = kv.find("right");
        if (left == kv.end() || right == kv.end() || left->second.empty() ||
            right->second.empty() || left->second[0] != '@' || right->second[0] != '@')
            throw InvalidSpec("product needs left=@spec.json,right=@spec.json");
        std::ifstream lf(left->second.substr(1)), rf(right->second.substr(1));
        if (!lf || !rf) throw InvalidSpec("cannot open product factor spec");
        json lj, rj;
        lf >> lj;
        rf >> rj;
        return FamilySpec::product_of(spec_from_json(lj), spec_from_json(rj));
    }
    throw InvalidSpec("unknown family '" + family + "'");
}

FamilySpec spec_from_json(const json& j) {
    std::map<std::string, std::string> kv;
    std::string family = j.at("family").get<std::string>();
    if (family == "group_table" && j.contains("labels")) {
        return FamilySpec::group(j.at("labels").get<std::vector<std::string>>(),
                                 j.at("table").get<std::vector<std::vector<int>>>());
    }
    if (family == "product") {
        return FamilySpec::product_of(spec_from_json(j.at("left")), spec_from_json(j.at("right")));
    }
    for (const auto& [key, value] : j.items()) {
        if (key == "family") continue;
        if (value.is_number_integer())
            kv[key] = std::to_string(value.get<int>());
        else if (value.is_string())
            kv[key] = value.get<std::string>();
    }
    return spec_from_fields(family, kv);
}

std::map<std::string, std::string> parse_params(const std::string& params) {
    std::map<std::string, std::string> kv;
    std::istringstream is(params);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string::npos) throw InvalidSpec("family parameter '" + item + "' is not key=value");
        kv[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return kv;
}

struct RingOptions {
    std::string ring_path;
    std::string family;
    std::string params;
};

FusionRing load_ring(const RingOptions& opts, ReportContext& ctx) {
    if (!opts.family.empty()) return build(spec_from_fields(opts.family, parse_params(opts.params)));
    if (opts.ring_path.empty()) throw InvalidSpec("either --ring or --family is required");
    ctx.inputs.push_back(opts.ring_path);
    return parse_ring(opts.ring_path);
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    json j;
    in >> j;
    return j;
}

DimensionFunction dims_for(const FusionRing& ring, const std::string& spec, ReportContext& ctx) {
    if (spec.empty() || spec == "fp") return fp_dimensions(ring);
    if (spec == "ones") return DimensionFunction::constant(ring.size());
    if (spec == "classical") return su2_classical_dims(ring);
    if (spec.rfind("q:", 0) == 0) return su2_quantum_dims(ring, std::stod(spec.substr(2)));
    ctx.inputs.push_back(spec);
    const json j = load_json_file(spec);
    Eigen::VectorXd values(ring.size());
    values.setConstant(-1.0);
    for (const auto& [label, v] : j.at("values").items()) {
        const auto idx = ring.find(label);
        if (!idx) throw ParseError("dimension file label '" + label + "' not in ring");
        values(*idx) = v.get<double>();
    }
    if ((values.array() < 0.0).any()) throw ParseError("dimension file misses labels");
    return DimensionFunction(std::move(values));
}

// Full multiplicativity sweep on small rings; cheap per-label checks plus a
// warning on large windows, where the sweep is quadratic in the interior.
void require_valid_dims(const FusionRing& ring, const DimensionFunction& d, double tol,
                        ReportContext& ctx) {
    if (ring.size() <= 512) {
        const ValidationReport report = check_dimension_function(ring, d, tol);
        if (!report.ok())
            throw ValidationError("dimension function fails: " + report.violations.front().detail);
        return;
    }
    ctx.warnings.push_back(
        "window too large for the full multiplicativity check; "
        "only finiteness/positivity/unit/dual were verified");
    for (Index s = 0; s < ring.size(); ++s) {
        if (!std::isfinite(d.at(s)) || !(d.at(s) > 0.0))
            throw ValidationError("dimension function fails finiteness or positivity at '" +
                                  ring.label(s) + "'");
        if (!(std::abs(d.at(s) - d.at(ring.dual(s))) <= tol))
            throw ValidationError("dimension function fails duality at '" + ring.label(s) + "'");
    }
    if (!(std::abs(d.at(ring.unit()) - 1.0) <= tol))
        throw ValidationError("dimension function fails d(e) = 1");
}

FormalSum object_from(const FusionRing& ring, const std::vector<std::string>& tokens) {
    FormalSum object;
    for (const auto& token : tokens) {
        std::string label = token;
        Count mult = 1;
        const auto colon = token.rfind(':');
        if (colon != std::string::npos) {
            label = token.substr(0, colon);
            mult = std::stoll(token.substr(colon + 1));
        }
        const auto idx = ring.find(label);
        if (!idx) throw InvalidSpec("object label '" + label + "' not in ring");
        object.add(*idx, mult);
    }
    if (object.empty()) throw InvalidSpec("object must be a nonzero combination");
    return object;
}

ordered_json report_violations(const ValidationReport& report) {
    ordered_json out = ordered_json::array();
    for (const auto& v : report.violations) {
        ordered_json item;
        item["rule"] = v.rule;
        item["detail"] = v.detail;
        out.push_back(std::move(item));
    }
    return out;
}

ordered_json certificate_json(const NormCertificate& cert) {
    ordered_json out;
    out["object"] = cert.object_desc;
    out["window"] = cert.window_id;
    out["lower_bound"] = cert.lower_bound;
    out["residual"] = cert.residual;
    out["iterations"] = cert.iterations;
    out["radial"] = cert.radial;
    return out;
}

void warn_leaks(const Kernel& kernel, const FusionRing& ring, ReportContext& ctx) {
    int leaking = 0;
    for (Index s = 0; s < kernel.size(); ++s)
        if (!kernel.row_complete[static_cast<std::size_t>(s)]) ++leaking;
    if (leaking > 0)
        ctx.warnings.push_back(std::to_string(leaking) +
                               " kernel rows leak mass outside the window of " + ring.family());
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fusion rings, their random walks, and inclusion entropy bounds"};
    app.require_subcommand(1);

    RingOptions ring_opts;
    std::string dims_spec = "fp";
    std::vector<std::string> measure_paths;
    std::vector<std::string> object_tokens;
    std::string inclusion_path, out_path, csv_path, schedule_str, start_label;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    int steps = 16, lag = 1, length = 16, window = 0, rank = 2, radius = 12, max_depth = 64;
    bool zero_two = false;

    auto add_ring_flags = [&](CLI::App* cmd) {
        cmd->add_option("--ring", ring_opts.ring_path, "fusion ring JSON file");
        cmd->add_option("--family", ring_opts.family, "ring family instead of --ring");
        cmd->add_option("--params", ring_opts.params, "family parameters, key=value comma list");
    };
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out_path, "write the JSON report here instead of stdout");
        cmd->add_option("--tol", tol, "numeric tolerance");
    };

    // ring ------------------------------------------------------------------
    auto* ring_cmd = app.add_subcommand("ring", "build, validate, inspect fusion rings");
    ring_cmd->require_subcommand(1);
    auto* ring_build = ring_cmd->add_subcommand("build", "construct a family ring and emit JSON");
    add_ring_flags(ring_build);
    add_common(ring_build);
    auto* ring_validate = ring_cmd->add_subcommand("validate", "check the ring axioms");
    add_ring_flags(ring_validate);
    add_common(ring_validate);
    auto* ring_info = ring_cmd->add_subcommand("info", "basic facts about a ring");
    add_ring_flags(ring_info);
    add_common(ring_info);

    // walk ------------------------------------------------------------------
    auto* walk_cmd = app.add_subcommand("walk", "random walks on the ring basis");
    walk_cmd->require_subcommand(1);
    auto* walk_kernel = walk_cmd->add_subcommand("kernel", "transition kernel of a measure");
    auto* walk_convolve = walk_cmd->add_subcommand("convolve", "convolution of two measures");
    auto* walk_harmonic = walk_cmd->add_subcommand("harmonic", "bounded harmonic functions");
    auto* walk_diagnose = walk_cmd->add_subcommand("diagnose", "walk convergence diagnostics");
    auto* walk_sample = walk_cmd->add_subcommand("sample", "draw a reproducible path");
    for (auto* cmd : {walk_kernel, walk_convolve, walk_harmonic, walk_diagnose, walk_sample}) {
        add_ring_flags(cmd);
        add_common(cmd);
        cmd->add_option("--dims", dims_spec, "fp | ones | classical | q:<val> | dims JSON file");
        cmd->add_option("--measure", measure_paths, "measure JSON file (repeat for convolve)");
    }
    walk_kernel->add_option("--csv", csv_path, "write the dense kernel as CSV");
    walk_diagnose->add_flag("--zero-two", zero_two, "total-variation 0-2 diagnostic");
    walk_diagnose->add_option("--steps", steps, "horizons m = 1..steps");
    walk_diagnose->add_option("--lag", lag, "power offset k");
    walk_diagnose->add_option("--depth", max_depth, "support BFS depth cap");
    walk_sample->add_option("--start", start_label, "starting label (default: unit)");
    walk_sample->add_option("--length", length, "number of steps");
    walk_sample->add_option("--seed", seed, "generator seed");

    // amen ------------------------------------------------------------------
    auto* amen_cmd = app.add_subcommand("amen", "spectral amenability certificates");
    amen_cmd->require_subcommand(1);
    auto* amen_check = amen_cmd->add_subcommand("check", "verdict for a dimension function");
    add_ring_flags(amen_check);
    add_common(amen_check);
    amen_check->add_option("--dims", dims_spec, "fp | ones | classical | q:<val> | dims JSON file");
    amen_check->add_option("--object", object_tokens, "object as label or label:mult, repeatable");
    amen_check->add_option("--schedule", schedule_str, "comma list of window sizes");
    amen_check->add_option("--window", window, "single window size shortcut");
    auto* amen_bench = amen_cmd->add_subcommand("benchmark", "free-group Kesten contrast case");
    add_common(amen_bench);
    amen_bench->add_option("--rank", rank, "free rank");
    amen_bench->add_option("--radius", radius, "starting ball radius");

    // entropy ---------------------------------------------------------------
    auto* entropy_cmd = app.add_subcommand("entropy", "multi-matrix inclusion entropy bounds");
    entropy_cmd->require_subcommand(1);
    auto* e_bound = entropy_cmd->add_subcommand("bound", "block bound at the state masses");
    auto* e_gap = entropy_cmd->add_subcommand("gap", "entropy drop and its sandwich bounds");
    auto* e_max = entropy_cmd->add_subcommand("maximize", "simplex maximizer and 2 log ||A||");
    auto* e_check = entropy_cmd->add_subcommand("check", "simplex bound against 2 log ||A||");
    auto* e_defect = entropy_cmd->add_subcommand("defect", "decomposition defect of given parts");
    for (auto* cmd : {e_bound, e_gap, e_max, e_check, e_defect}) {
        add_common(cmd);
        cmd->add_option("--inclusion", inclusion_path, "inclusion JSON file")->required();
    }

    std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 wants reversed args
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    ReportContext ctx;
    {
        std::ostringstream cmd;
        for (std::size_t i = 0; i < args.size(); ++i) cmd << (i ? " " : "") << args[i];
        ctx.command = cmd.str();
    }

    try {
        if (ring_build->parsed()) {
            const FusionRing ring = load_ring(ring_opts, ctx);
            const std::string text = emit_ring(ring);
            if (!out_path.empty()) {
                std::ofstream file(out_path);
                file << text << "\n";
            } else {
                out << text << "\n";
            }
            return 0;
        }
        if (ring_validate->parsed()) {
            const FusionRing ring = [&] {
                if (!ring_opts.family.empty()) return load_ring(ring_opts, ctx);
                if (ring_opts.ring_path.empty())
                    throw InvalidSpec("either --ring or --family is required");
                ctx.inputs.push_back(ring_opts.ring_path);
                return parse_ring_unvalidated(ring_opts.ring_path);
            }();
            const ValidationReport report = validate_ring(ring);
            ctx.results["ok"] = report.ok();
            ctx.results["checked_pairs"] = report.checked_pairs;
            ctx.results["checked_triples"] = report.checked_triples;
            ctx.results["violations"] = report_violations(report);
            write_report(ctx, out_path, out);
            return report.ok() ? 0 : 2;
        }
        if (ring_info->parsed()) {
            const FusionRing ring = load_ring(ring_opts, ctx);
            ctx.results["size"] = ring.size();
            ctx.results["unit"] = ring.label(ring.unit());
            ctx.results["truncated"] = ring.truncated();
            int interior = 0;
            for (Index s = 0; s < ring.size(); ++s) interior += ring.interior(s) ? 1 : 0;
            ctx.results["interior_size"] = interior;
            ctx.results["family"] = ring.family();
            write_report(ctx, out_path, out);
            return 0;
        }

        if (walk_kernel->parsed() || walk_convolve->parsed() || walk_harmonic->parsed() ||
            walk_diagnose->parsed() || walk_sample->parsed()) {
            const FusionRing ring = load_ring(ring_opts, ctx);
            const DimensionFunction d = dims_for(ring, dims_spec, ctx);
            require_valid_dims(ring, d, tol, ctx);
            if (measure_paths.empty()) throw InvalidSpec("--measure is required");
            std::vector<Measure> measures;
            for (const auto& path : measure_paths) {
                ctx.inputs.push_back(path);
                measures.push_back(parse_measure(path, ring));
            }

            if (walk_kernel->parsed()) {
                const Kernel k = kernel(ring, d, measures.front());
                warn_leaks(k, ring, ctx);
                ordered_json rows = ordered_json::array();
                for (Index s = 0; s < k.size(); ++s) {
                    ordered_json row;
                    row["state"] = ring.label(s);
                    row["complete"] = static_cast<bool>(k.row_complete[static_cast<std::size_t>(s)]);
                    row["leak"] = k.leak(s);
                    ordered_json entries = ordered_json::object();
                    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(k.p, s); it;
                         ++it)
                        entries[ring.label(static_cast<Index>(it.col()))] = it.value();
                    row["p"] = std::move(entries);
                    rows.push_back(std::move(row));
                }
                ctx.results["kernel"] = std::move(rows);
                if (!csv_path.empty()) write_csv(csv_path, Eigen::MatrixXd(k.p));
            } else if (walk_convolve->parsed()) {
                if (measures.size() != 2) throw InvalidSpec("convolve needs exactly two --measure files");
                const Measure conv = convolve(ring, d, measures[0], measures[1]);
                ordered_json weights = ordered_json::object();
                for (const auto& [s, w] : conv.weights()) weights[ring.label(s)] = w;
                ctx.results["convolution"] = std::move(weights);
            } else if (walk_harmonic->parsed()) {
                const Kernel k = kernel(ring, d, measures.front());
                warn_leaks(k, ring, ctx);
                const HarmonicBasis basis = harmonic_space(k);
                ctx.results["dimension"] = basis.dimension();
                ordered_json vectors = ordered_json::array();
                for (int c = 0; c < basis.dimension(); ++c) {
                    ordered_json v = ordered_json::array();
                    for (Index s = 0; s < ring.size(); ++s) v.push_back(basis.vectors(s, c));
                    vectors.push_back(std::move(v));
                }
                ctx.results["basis"] = std::move(vectors);
            } else if (walk_diagnose->parsed()) {
                warn_leaks(kernel(ring, d, measures.front()), ring, ctx);
                if (zero_two) {
                    const auto deltas = zero_two_diagnostic(ring, d, measures.front(), steps, lag);
                    ctx.results["zero_two"] = deltas;
                }
                const auto gen = is_generating(ring, measures.front(), max_depth);
                ctx.results["generating"] =
                    gen.status == GeneratingResult::Status::Yes
                        ? "yes"
                        : (gen.status == GeneratingResult::Status::NoFinite ? "no" : "unknown-within-depth");
                ctx.results["generating_depth"] = gen.depth;
                ctx.results["symmetric"] = is_symmetric(measures.front(), ring);
                ctx.results["stationary_residual"] = stationary_check(ring, d, measures.front());
            } else {
                const Kernel k = kernel(ring, d, measures.front());
                warn_leaks(k, ring, ctx);
                Index start = ring.unit();
                if (!start_label.empty()) {
                    const auto idx = ring.find(start_label);
                    if (!idx) throw InvalidSpec("start label '" + start_label + "' not in ring");
                    start = *idx;
                }
                const auto path = sample_path(k, start, length, seed);
                ordered_json labels = ordered_json::array();
                for (Index s : path) labels.push_back(ring.label(s));
                ctx.results["path"] = std::move(labels);
                ctx.results["seed"] = seed;
            }
            write_report(ctx, out_path, out);
            return 0;
        }

        if (amen_check->parsed()) {
            const FusionRing ring = load_ring(ring_opts, ctx);
            const DimensionFunction d = dims_for(ring, dims_spec, ctx);
            require_valid_dims(ring, d, tol, ctx);
            FormalSum object = object_tokens.empty() ? FormalSum::basis(ring.unit())
                                                     : object_from(ring, object_tokens);
            std::vector<int> schedule;
            if (window > 0) schedule.push_back(window);
            if (!schedule_str.empty()) {
                std::istringstream is(schedule_str);
                std::string item;
                while (std::getline(is, item, ',')) schedule.push_back(std::stoi(item));
            }
            const Verdict verdict = amenability_verdict(ring, d, object, schedule);
            ctx.results["kind"] = verdict.kind == VerdictKind::AmenableEvidence
                                      ? "AmenableEvidence"
                                      : (verdict.kind == VerdictKind::NonamenableCertificate
                                             ? "NonamenableCertificate"
                                             : "Inconclusive");
            ctx.results["dimension"] = verdict.dimension;
            ctx.results["gap"] = verdict.gap;
            ctx.results["movement"] = verdict.movement;
            ordered_json hist = ordered_json::array();
            for (const auto& [w, b] : verdict.history) {
                ordered_json h;
                h["window"] = w;
                h["lower_bound"] = b;
                hist.push_back(std::move(h));
            }
            ctx.results["history"] = std::move(hist);
            ctx.results["certificate"] = certificate_json(verdict.certificate);
            if (verdict.kind == VerdictKind::Inconclusive)
                ctx.warnings.push_back("verdict is inconclusive; enlarge the window schedule");
            write_report(ctx, out_path, out);
            return 0;
        }
        if (amen_bench->parsed()) {
            const NormCertificate cert = free_group_benchmark(rank, radius);
            ctx.results["certificate"] = certificate_json(cert);
            ctx.results["dimension"] = 2.0 * rank;
            ctx.results["gap"] = 2.0 * rank - cert.lower_bound;
            write_report(ctx, out_path, out);
            return 0;
        }

        if (e_bound->parsed() || e_gap->parsed() || e_max->parsed() || e_check->parsed() ||
            e_defect->parsed()) {
            ctx.inputs.push_back(inclusion_path);
            const InclusionInput input = parse_inclusion(inclusion_path);
            const Eigen::MatrixXd A = input.inclusion.mult.cast<double>();

            if (e_bound->parsed()) {
                if (!input.has_masses) throw ValidationError("entropy bound needs a state or masses");
                ctx.results["h_bound"] = h_bound_blocks(input.inclusion, input.masses);
            } else if (e_gap->parsed()) {
                if (!input.has_state) throw ValidationError("entropy gap needs density blocks");
                const GapBounds gb = entropy_gap_bounds(input.inclusion, input.state);
                ctx.results["lower"] = gb.lower;
                ctx.results["gap"] = gb.gap;
                ctx.results["upper"] = gb.upper;
                ctx.results["ok"] = gb.lower - 1e-8 <= gb.gap && gb.gap <= gb.upper + 1e-8;
            } else if (e_max->parsed()) {
                const auto [xi, value] = f_maximizer(A);
                ctx.results["value"] = value;
                ctx.results["two_log_norm"] = 2.0 * std::log(inclusion_norm(A));
                ordered_json rows = ordered_json::array();
                for (int k = 0; k < xi.xi.rows(); ++k) {
                    ordered_json row = ordered_json::array();
                    for (int l = 0; l < xi.xi.cols(); ++l) row.push_back(xi.xi(k, l));
                    rows.push_back(std::move(row));
                }
                ctx.results["xi"] = std::move(rows);
            } else if (e_check->parsed()) {
                if (!input.has_masses) throw ValidationError("entropy check needs a state or masses");
                const TwoLogCheck check = two_log_norm_check(input.inclusion, input.masses);
                ctx.results["block_bound"] = check.block_bound;
                ctx.results["f_value"] = check.f_value;
                ctx.results["two_log_norm"] = check.two_log_norm;
                ctx.results["ok"] = check.ok;
            } else {
                if (!input.has_state) throw ValidationError("entropy defect needs density blocks");
                const json j = load_json_file(inclusion_path);
                if (!j.contains("parts")) throw ValidationError("entropy defect needs a parts list");
                std::vector<BlockState> parts;
                for (const auto& part : j.at("parts")) {
                    BlockState state;
                    for (const auto& block : part.at("densities")) {
                        const auto rows = block.get<std::vector<std::vector<double>>>();
                        Eigen::MatrixXd q(rows.size(), rows.empty() ? 0 : rows[0].size());
                        for (std::size_t i = 0; i < rows.size(); ++i)
                            for (std::size_t c = 0; c < rows[i].size(); ++c)
                                q(static_cast<int>(i), static_cast<int>(c)) = rows[i][c];
                        state.blocks.push_back(std::move(q));
                    }
                    state.validate(input.inclusion.amb_dims, false);
                    parts.push_back(std::move(state));
                }
                ctx.results["defect"] = decomposition_defect(input.inclusion, input.state, parts);
            }
            write_report(ctx, out_path, out);
            return 0;
        }
        err << "error: no command executed\n";
        return 2;
    } catch (const TruncationOverflow& e) {
        err << "truncation overflow: " << e.what() << "\n";
        return 3;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const InvalidSpec& e) {
        err << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const NotFinite& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const NotConnected& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const DimensionMismatch& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ShapeMismatch& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const SupportViolation& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const EmptyWindow& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ZeroMatrix& e) {
        err << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace fusionwalk::io
