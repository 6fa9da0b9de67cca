#include "groth/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "groth/coherent.hpp"
#include "groth/experiments.hpp"
#include "groth/forms.hpp"
#include "groth/json_io.hpp"
#include "groth/norm_factors.hpp"

namespace groth::cli {

using nlohmann::json;

CliConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("missing config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed config JSON: ") + e.what());
    }
    if (!doc.is_object()) throw InputError("config: expected a JSON object");
    CliConfig cfg;
    for (const auto& [key, value] : doc.items()) {
        if (key == "seed") {
            if (!value.is_number_unsigned()) throw InputError("config: seed must be a non-negative integer");
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "starts") {
            if (!value.is_number_integer() || value.get<long long>() < 1) throw InputError("config: starts must be >= 1");
            cfg.starts = value.get<int>();
        } else if (key == "tolerances") {
            if (!value.is_object()) throw InputError("config: tolerances must be an object");
            for (const auto& [name, tol] : value.items()) {
                if (name != "phase_tolerance" && name != "power_relative_tolerance" && name != "power_max_iterations") {
                    throw InputError("config: unknown tolerance '" + name + "'");
                }
                if (!tol.is_number() || !(tol.get<double>() > 0.0)) {
                    throw InputError("config: tolerance '" + name + "' must be positive");
                }
                cfg.tolerances[name] = tol.get<double>();
            }
        } else if (key == "output_path") {
            if (!value.is_string()) throw InputError("config: output_path must be a string");
            cfg.output_path = value.get<std::string>();
        } else {
            throw InputError("config: unknown key '" + key + "'");
        }
    }
    return cfg;
}

namespace {

// Values as written on the command line, before merging with --config.
struct Options {
    std::string config_path;
    std::string matrix_path;
    std::string out_path;
    std::string check = "all";
    std::string ensemble = "random_normal";
    std::string scaling = "certified";
    std::uint64_t seed = 0;
    int starts = 64;
    int samples = 100;
    std::size_t dim = 3;
    double lambda = 0.2;
};

struct Resolved {
    CliConfig config;
    OptimizerConfig optimizer() const {
        OptimizerConfig c{.starts = config.starts, .seed = config.seed};
        if (auto it = config.tolerances.find("phase_tolerance"); it != config.tolerances.end())
            c.phase_tolerance = it->second;
        return c;
    }
    PowerIterationOptions power() const {
        PowerIterationOptions p;
        if (auto it = config.tolerances.find("power_relative_tolerance"); it != config.tolerances.end())
            p.relative_tolerance = it->second;
        if (auto it = config.tolerances.find("power_max_iterations"); it != config.tolerances.end())
            p.max_iterations = static_cast<int>(it->second);
        return p;
    }
};

void emit(std::ostream& out, const json& doc) { out << doc.dump(2) << '\n'; }

json with_seed(json doc, std::uint64_t seed) {
    doc["seed"] = seed;
    return doc;
}

void require_matrix_option(const std::string& path) {
    if (path.empty()) throw InputError("--matrix FILE is required");
}

json cmd_norms(const Options& o, const Resolved& r) {
    require_matrix_option(o.matrix_path);
    return with_seed(to_json(norm_report(parse_matrix_file(o.matrix_path))), r.config.seed);
}

json cmd_classify(const Options& o, const Resolved& r) {
    require_matrix_option(o.matrix_path);
    const Matrix m = parse_matrix_file(o.matrix_path);
    return to_json(classify(m, r.optimizer()));
}

json cmd_gbound(const Options& o, const Resolved& r) {
    require_matrix_option(o.matrix_path);
    const Matrix m = parse_matrix_file(o.matrix_path);
    require_square(m, "gbound");
    const double smax = largest_singular_value(m, r.power());
    const double gp = static_cast<double>(m.rows()) * smax;
    const double l1 = norm_entrywise_l1(m);
    return {{"dim", m.rows()},
            {"s_max", smax},
            {"g_prime", gp},
            {"l1_norm", l1},
            {"g_upper", std::min(l1, gp)},
            {"seed", r.config.seed}};
}

json cmd_phases(const Options& o, const Resolved& r) {
    require_matrix_option(o.matrix_path);
    return with_seed(to_json(phase_system_solvable(parse_matrix_file(o.matrix_path))), r.config.seed);
}

json cmd_states(const Options& o, const Resolved& r) {
    const StateFamily family = build_family(o.dim);
    json doc = {{"dim", o.dim}, {"size", family.size()}, {"conjectural", family.conjectural()},
                {"check", o.check}, {"seed", r.config.seed}};
    const bool all = o.check == "all";
    if (!all && o.check != "resolution" && o.check != "isotropy" && o.check != "permutation" && o.check != "none") {
        throw InputError("--check must be one of all, resolution, isotropy, permutation, none");
    }
    if (all || o.check == "resolution") doc["resolution_residual"] = resolution_check(family);
    if (all || o.check == "isotropy") doc["isotropy"] = to_json(isotropy_check(family));
    if (all || o.check == "permutation") {
        if (o.dim <= kMaxPermutationCheckDim) {
            doc["permutation"] = to_json(permutation_invariance_check(family));
        } else if (o.check == "permutation") {
            permutation_invariance_check(family);  // throws the enumeration-limit error
        } else {
            doc["permutation"] = nullptr;
        }
    }
    if (o.check == "none") doc["states"] = to_json(family)["states"];
    return doc;
}

json cmd_projector(const Options& o, const Resolved& r) {
    const std::string path = !o.out_path.empty() ? o.out_path : r.config.output_path.value_or("");
    if (path.empty()) throw InputError("--out FILE is required");
    const OverlapProjector p = build_projector(build_family(o.dim));
    write_matrix_file(path, p.matrix);
    const auto eig = hermitian_eig(p.matrix);
    json mult = json::array();
    for (const auto& [value, count] : eigenvalue_multiplicities(eig.eigenvalues)) mult.push_back({value, count});
    return {{"dim", o.dim}, {"size", p.dim_big}, {"rank", p.rank}, {"eigenvalue_multiplicities", mult},
            {"out", path}, {"seed", r.config.seed}};
}

json cmd_h6(const Options& o, const Resolved& r) { return to_json(run_h6(o.lambda, r.optimizer())); }

json cmd_h12(const Options& o, const CLI::Option* lambda_opt, const Resolved& r) {
    double lambda = o.lambda;
    if (lambda_opt->count() == 0) lambda = 1.0 / g_lower(coherent_projector(4), r.optimizer()).best_value;
    return to_json(run_h12(lambda, r.optimizer()));
}

json cmd_g6(const Resolved& r) {
    json doc = to_json(certify_g_pi6(r.config.starts, r.config.seed));
    doc["seed"] = r.config.seed;
    doc["starts"] = r.config.starts;
    return doc;
}

json cmd_bounded(const Options& o, const Resolved& r) {
    return to_json(run_bounded_demo(o.dim, o.samples, r.config.seed));
}

json cmd_rarity(const Options& o, const Resolved& r) {
    RarityConfig cfg;
    cfg.ensemble = parse_ensemble(o.ensemble);
    cfg.scaling = parse_scaling(o.scaling);
    cfg.samples = o.samples;
    cfg.seed = r.config.seed;
    cfg.starts = r.config.starts;
    const std::string path = !o.out_path.empty() ? o.out_path : r.config.output_path.value_or("");
    std::ofstream jsonl;
    if (!path.empty()) {
        jsonl.open(path, std::ios::app);
        if (!jsonl) throw InputError("cannot open output file: " + path);
    }
    const RarityStats stats = run_rarity(cfg, [&](const json& rec) {
        if (jsonl.is_open()) jsonl << rec.dump() << '\n';
    });
    json doc = to_json(stats);
    doc["out"] = path.empty() ? json(nullptr) : json(path);
    return doc;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Numerical toolkit for classical and quantum bilinear forms on complex matrices", "groth"};
    app.require_subcommand(1);
    app.add_option("--config", o.config_path, "JSON file with seed, starts, tolerances, output_path");

    auto add_seed = [&](CLI::App* sub) { return sub->add_option("--seed", o.seed, "RNG seed (default 0)"); };
    auto add_starts = [&](CLI::App* sub) {
        return sub->add_option("--starts", o.starts, "multistart count (default 64)")->check(CLI::PositiveNumber);
    };

    std::vector<CLI::Option*> seed_opts, starts_opts;
    auto* norms = app.add_subcommand("norms", "row-norm normalization report");
    norms->add_option("--matrix", o.matrix_path, "matrix JSON file")->required();

    auto* classify_cmd = app.add_subcommand("classify", "bracket g, compute g' and membership in G_d and G'_d");
    classify_cmd->add_option("--matrix", o.matrix_path, "matrix JSON file")->required();
    seed_opts.push_back(add_seed(classify_cmd));
    starts_opts.push_back(add_starts(classify_cmd));

    auto* gbound = app.add_subcommand("gbound", "closed-form bounds: g', l1 norm, g_upper");
    gbound->add_option("--matrix", o.matrix_path, "matrix JSON file")->required();

    auto* phases = app.add_subcommand("phases", "solvability of the phase system phi_ij = chi_i + psi_j");
    phases->add_option("--matrix", o.matrix_path, "matrix JSON file")->required();

    auto* states = app.add_subcommand("states", "coherent-state family checks");
    states->add_option("--dim", o.dim, "dimension d >= 2")->required();
    states->add_option("--check", o.check, "all | resolution | isotropy | permutation | none");

    auto* projector = app.add_subcommand("projector", "write the overlap projector of the family");
    projector->add_option("--dim", o.dim, "dimension d >= 2")->required();
    projector->add_option("--out", o.out_path, "output matrix JSON file");

    auto* experiment = app.add_subcommand("experiment", "reproducible experiments");
    experiment->require_subcommand(1);
    auto* h6 = experiment->add_subcommand("h6", "theta = lambda Pi_6 with the closed-form quantum value");
    h6->add_option("--lambda", o.lambda, "scale in (0, 1/5]");
    seed_opts.push_back(add_seed(h6));
    starts_opts.push_back(add_starts(h6));
    auto* h12 = experiment->add_subcommand("h12", "theta = lambda Pi_12 with the closed-form quantum value");
    auto* h12_lambda = h12->add_option("--lambda", o.lambda, "scale in (0, 1/g_lower(Pi_12)], default the maximum");
    seed_opts.push_back(add_seed(h12));
    starts_opts.push_back(add_starts(h12));
    auto* g6 = experiment->add_subcommand("g6", "two independent maximizations of the classical form of Pi_6");
    seed_opts.push_back(add_seed(g6));
    starts_opts.push_back(add_starts(g6));
    auto* bounded = experiment->add_subcommand("bounded", "|Tr(rho U)| <= 1 on random pairs and displacements");
    bounded->add_option("--dim", o.dim, "dimension d >= 2");
    bounded->add_option("--samples", o.samples, "number of samples")->check(CLI::PositiveNumber);
    seed_opts.push_back(add_seed(bounded));
    auto* rarity = experiment->add_subcommand("rarity", "sampling study of the Grothendieck region");
    rarity->add_option("--ensemble", o.ensemble, "scaled_projector | random_normal | random_general");
    rarity->add_option("--samples", o.samples, "number of samples")->check(CLI::PositiveNumber);
    rarity->add_option("--scaling", o.scaling, "certified (M / g_upper) | estimated (M / g_lower)");
    rarity->add_option("--out", o.out_path, "JSONL file, one record appended per sample");
    seed_opts.push_back(add_seed(rarity));
    starts_opts.push_back(add_starts(rarity));

    std::vector<std::string> argv_storage{"groth"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& a : argv_storage) argv.push_back(a.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run 'groth --help' for usage\n";
        return kExitInput;
    }

    try {
        Resolved r;
        if (!o.config_path.empty()) r.config = load_config(o.config_path);
        for (const auto* opt : seed_opts)
            if (opt->count() > 0) r.config.seed = o.seed;
        for (const auto* opt : starts_opts)
            if (opt->count() > 0) r.config.starts = o.starts;

        json doc;
        if (norms->parsed()) doc = cmd_norms(o, r);
        else if (classify_cmd->parsed()) doc = cmd_classify(o, r);
        else if (gbound->parsed()) doc = cmd_gbound(o, r);
        else if (phases->parsed()) doc = cmd_phases(o, r);
        else if (states->parsed()) doc = cmd_states(o, r);
        else if (projector->parsed()) doc = cmd_projector(o, r);
        else if (h6->parsed()) doc = cmd_h6(o, r);
        else if (h12->parsed()) doc = cmd_h12(o, h12_lambda, r);
        else if (g6->parsed()) doc = cmd_g6(r);
        else if (bounded->parsed()) doc = cmd_bounded(o, r);
        else if (rarity->parsed()) doc = cmd_rarity(o, r);
        emit(out, doc);
        return kExitOk;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const ConvergenceError& e) {
        err << "convergence error: " << e.what() << " (last iterate " << e.last_iterate() << ")\n";
        return kExitConvergence;
    } catch (const std::logic_error& e) {
        err << "internal consistency error: " << e.what() << '\n';
        return kExitConvergence;
    }
}

}  // namespace groth::cli
