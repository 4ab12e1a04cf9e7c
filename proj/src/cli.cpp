#include "anneal/cli.hpp"

#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "anneal/divergences.hpp"
#include "anneal/errors.hpp"
#include "anneal/parametric.hpp"
#include "anneal/sampler.hpp"
#include "anneal/verify.hpp"

namespace anneal {

namespace {

using Json = nlohmann::ordered_json;

void require_keys(const Json& obj, const std::vector<std::string>& allowed,
                  const std::string& context) {
    if (!obj.is_object()) throw config_error(context + " must be a JSON object");
    for (const auto& item : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), item.key()) == allowed.end())
            throw config_error("unknown key '" + item.key() + "' in " + context);
    }
}

Support parse_support(const Json& j) {
    require_keys(j, {"kind", "lo", "hi", "n"}, "support");
    const std::string kind = j.at("kind");
    if (kind == "grid") return Support::grid(j.at("lo"), j.at("hi"), j.at("n"));
    if (kind == "discrete") return Support::discrete(j.at("n"));
    throw config_error("support kind must be 'grid' or 'discrete'");
}

DensitySpec parse_density_spec(const Json& j) {
    DensitySpec spec;
    const std::string family = j.at("family");
    spec.scale = j.value("scale", 1.0);
    if (family == "gaussian") {
        require_keys(j, {"family", "mean", "stddev", "scale"}, "gaussian spec");
        spec.family = GaussianSpec{j.at("mean"), j.at("stddev")};
    } else if (family == "gaussian_mixture") {
        require_keys(j, {"family", "components", "scale"}, "gaussian_mixture spec");
        GaussianMixtureSpec mix;
        for (const auto& c : j.at("components")) {
            require_keys(c, {"weight", "mean", "stddev"}, "mixture component");
            mix.components.push_back({c.at("weight"), c.at("mean"), c.at("stddev")});
        }
        spec.family = std::move(mix);
    } else if (family == "student_t") {
        require_keys(j, {"family", "dof", "loc", "sigma", "scale"}, "student_t spec");
        spec.family = StudentTSpec{j.at("dof"), j.value("loc", 0.0), j.value("sigma", 1.0)};
    } else if (family == "discrete_table") {
        require_keys(j, {"family", "values", "scale"}, "discrete_table spec");
        spec.family = DiscreteTableSpec{j.at("values").get<std::vector<double>>()};
    } else {
        throw config_error("unknown density family '" + family + "'");
    }
    return spec;
}

RepresentationFn parse_rho(const Json& j) {
    require_keys(j, {"kind", "q", "lambda"}, "representation");
    const std::string kind = j.at("kind");
    if (kind == "identity") return RepresentationFn::identity();
    if (kind == "log") return RepresentationFn::log();
    if (kind == "log_q") return RepresentationFn::log_q(j.at("q"));
    if (kind == "log_one_minus_lambda")
        return RepresentationFn::log_one_minus_lambda(j.at("lambda"));
    throw config_error("unknown representation kind '" + kind + "'");
}

struct EndpointSetup {
    Density p0;
    Density p1;
};

EndpointSetup parse_endpoints(const Json& cfg) {
    const Support support = parse_support(cfg.at("support"));
    return {materialize(parse_density_spec(cfg.at("p0")), support),
            materialize(parse_density_spec(cfg.at("p1")), support)};
}

Json support_json(const Support& s) {
    if (s.kind == SupportKind::grid)
        return Json{{"kind", "grid"}, {"lo", s.lo}, {"hi", s.hi}, {"n", s.n}};
    return Json{{"kind", "discrete"}, {"n", s.n}};
}

Json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw config_error(std::string("config is not valid JSON: ") + e.what());
    }
    return j;
}

void write_output(const std::string& out_path, const std::string& content,
                  std::ostream& fallback) {
    if (out_path.empty()) {
        fallback << content;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw config_error("cannot open output file '" + out_path + "'");
    out << content;
}

// --- subcommands -----------------------------------------------------------

int cmd_path(const Json& cfg, const std::string& out_path, std::ostream& out) {
    require_keys(cfg, {"p0", "p1", "support", "rho", "betas", "beta_count", "normalize"},
                 "path config");
    EndpointSetup ep = parse_endpoints(cfg);
    const RepresentationFn rho = parse_rho(cfg.at("rho"));
    const bool normalize_out = cfg.value("normalize", false);

    std::vector<double> betas;
    if (cfg.contains("betas")) {
        betas = cfg.at("betas").get<std::vector<double>>();
    } else {
        const std::size_t count = cfg.value("beta_count", std::size_t{11});
        if (count < 2) throw config_error("beta_count must be >= 2");
        for (std::size_t i = 0; i < count; ++i)
            betas.push_back(static_cast<double>(i) / static_cast<double>(count - 1));
    }

    const AnnealingPath path = make_path(ep.p0, ep.p1, rho);
    std::ostringstream csv;
    csv << (normalize_out ? "beta,x,value,normalized\n" : "beta,x,value\n");
    for (double beta : betas) {
        Density d;
        try {
            d = evaluate(path, beta);
        } catch (const std::exception& e) {
            throw domain_error("path evaluation failed at beta=" + format_double(beta) +
                               ": " + e.what());
        }
        std::optional<Density> dn;
        if (normalize_out) dn = normalize(d);
        for (std::size_t i = 0; i < d.size(); ++i) {
            csv << format_double(beta) << ',' << format_double(d.x(i)) << ','
                << format_double(d.values[i]);
            if (normalize_out) csv << ',' << format_double(dn->values[i]);
            csv << '\n';
        }
    }
    write_output(out_path, csv.str(), out);
    return 0;
}

DivergenceKind parse_kind(const Json& j) {
    const std::string kind = j.at("kind");
    if (kind == "kl_unnormalized") {
        require_keys(j, {"kind"}, "divergence kind");
        return KLUnnormalized{};
    }
    if (kind == "kl_normalized") {
        require_keys(j, {"kind"}, "divergence kind");
        return KLNormalized{};
    }
    if (kind == "amari_alpha") {
        require_keys(j, {"kind", "alpha"}, "divergence kind");
        return AmariAlpha{j.at("alpha")};
    }
    if (kind == "renyi") {
        require_keys(j, {"kind", "alpha"}, "divergence kind");
        return Renyi{j.at("alpha")};
    }
    if (kind == "jensen_shannon") {
        require_keys(j, {"kind", "beta"}, "divergence kind");
        return JensenShannon{j.at("beta")};
    }
    if (kind == "beta") {
        require_keys(j, {"kind", "order"}, "divergence kind");
        return BetaDivergence{j.at("order")};
    }
    if (kind == "cichocki_amari") {
        require_keys(j, {"kind", "q", "lambda"}, "divergence kind");
        return CichockiAmari{j.at("q"), j.at("lambda")};
    }
    if (kind == "zhang_ab") {
        require_keys(j, {"kind", "beta", "q"}, "divergence kind");
        return ZhangAB{j.at("beta"), j.at("q")};
    }
    if (kind == "rho_tau_generic") {
        require_keys(j, {"kind", "rho", "tau"}, "divergence kind");
        return RhoTauGeneric{make_pair(parse_rho(j.at("rho")), parse_rho(j.at("tau")))};
    }
    throw config_error("unknown divergence kind '" + kind + "'");
}

int cmd_divergence(const Json& cfg, bool crosscheck, const std::string& out_path,
                   std::ostream& out) {
    require_keys(cfg, {"p0", "p1", "support", "kinds"}, "divergence config");
    EndpointSetup ep = parse_endpoints(cfg);

    Json results = Json::array();
    for (const auto& kj : cfg.at("kinds")) {
        const DivergenceKind kind = parse_kind(kj);
        DivergenceDiagnostics diag;
        const double value = named_divergence(kind, ep.p0, ep.p1, &diag);
        Json entry;
        entry["kind"] = kind_name(kind);
        Json params = Json::object();
        for (const auto& [k, v] : kind_params(kind)) params[k] = v;
        entry["params"] = params;
        entry["value"] = value;
        entry["diagnostics"] = {{"masses", {{"a", diag.mass_a}, {"b", diag.mass_b}}},
                                {"grid", support_json(diag.support)}};
        if (crosscheck) {
            if (const auto* z = std::get_if<ZhangAB>(&kind)) {
                // Normalizer route: mixture of Z_q values along the q-path.
                const QExpFamily fam = make_lr_family(ep.p0, ep.p1, z->q);
                const double z0 = z_q(fam, 0.0);
                const double z1 = z_q(fam, 1.0);
                const double zb = z_q(fam, z->beta);
                const double via_z = ((1.0 - z->beta) * z0 + z->beta * z1 - zb) /
                                     (z->beta * (1.0 - z->beta) * z->q);
                entry["crosscheck"] = {{"normalizer_formula", via_z},
                                       {"abs_diff", std::abs(via_z - value)}};
            }
        }
        results.push_back(entry);
    }
    write_output(out_path, results.dump(2) + "\n", out);
    return 0;
}

int cmd_family(const Json& cfg, const std::string& out_path, std::ostream& out) {
    require_keys(cfg, {"p0", "p1", "support", "q", "thetas"}, "family config");
    EndpointSetup ep = parse_endpoints(cfg);
    const double q = cfg.at("q");
    const QExpFamily fam = make_lr_family(ep.p0, ep.p1, q);

    Json results = Json::array();
    for (const auto& tj : cfg.at("thetas")) {
        const double theta = tj.get<double>();
        const double z = z_q(fam, theta);
        results.push_back(Json{{"q", q},
                               {"theta", theta},
                               {"Z_q", z},
                               {"logZ", std::log(z)}});
    }
    write_output(out_path, results.dump(2) + "\n", out);
    return 0;
}

int cmd_ais(const Json& cfg, std::uint64_t seed_override, bool has_seed_override,
            const std::string& trace_path, const std::string& out_path,
            std::ostream& out) {
    require_keys(cfg, {"p0", "p1", "support", "rho", "schedule", "kernel", "chains", "seed"},
                 "ais config");
    EndpointSetup ep = parse_endpoints(cfg);
    AisConfig ais;
    ais.path = make_path(ep.p0, ep.p1, parse_rho(cfg.at("rho")));

    const Json& sj = cfg.at("schedule");
    require_keys(sj, {"T", "betas"}, "schedule");
    if (sj.contains("betas")) {
        ais.schedule = Schedule::of(sj.at("betas").get<std::vector<double>>());
    } else {
        ais.schedule = Schedule::linear(sj.at("T").get<std::size_t>());
    }

    const Json& kj = cfg.at("kernel");
    require_keys(kj, {"type", "step", "sweeps"}, "kernel");
    const std::string ktype = kj.at("type");
    if (ktype == "exact_resample") {
        ais.kernel = ExactResample{};
    } else if (ktype == "random_walk_mh") {
        ais.kernel = RandomWalkMH{kj.value("step", 0.5), kj.value("sweeps", 1)};
    } else {
        throw config_error("unknown kernel type '" + ktype + "'");
    }

    const auto chains = cfg.at("chains").get<long long>();
    if (chains < 1) throw config_error("ais needs chains >= 1");
    ais.chains = static_cast<std::size_t>(chains);
    ais.seed = has_seed_override ? seed_override : cfg.value("seed", std::uint64_t{0});

    const AisResult result = run_ais(ais, !trace_path.empty());

    Json report;
    report["ratio_estimate"] = result.ratio_estimate;
    report["log_ratio_estimate"] = result.log_ratio_estimate;
    report["ess"] = result.ess;
    report["K"] = ais.chains;
    report["T"] = ais.schedule.steps();
    report["acceptance_rates"] = result.acceptance_rates;
    report["seed"] = ais.seed;
    write_output(out_path, report.dump(2) + "\n", out);

    if (!trace_path.empty()) {
        std::ostringstream csv;
        csv << "chain,t,log_w\n";
        for (std::size_t k = 0; k < result.trace.size(); ++k) {
            for (std::size_t t = 0; t < result.trace[k].size(); ++t) {
                csv << k << ',' << (t + 1) << ',' << format_double(result.trace[k][t])
                    << '\n';
            }
        }
        std::ofstream tf(trace_path, std::ios::binary);
        if (!tf) throw config_error("cannot open trace file '" + trace_path + "'");
        tf << csv.str();
    }
    return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, double tol_scale,
               const std::string& out_path, std::ostream& out) {
    std::vector<SuiteReport> reports;
    if (suite == "all") {
        reports = run_all_suites(seed, tol_scale);
    } else if (suite == "theorem1") {
        reports = {run_suite_theorem1(seed + 1, tol_scale)};
    } else if (suite == "theorem2") {
        reports = {run_suite_theorem2(tol_scale)};
    } else if (suite == "theorem3") {
        reports = {run_suite_theorem3(seed + 3, tol_scale)};
    } else if (suite == "zoo") {
        reports = {run_suite_zoo(seed + 4, tol_scale)};
    } else if (suite == "limits") {
        reports = {run_suite_limits(seed + 5, tol_scale)};
    } else {
        throw config_error("unknown suite '" + suite + "'");
    }

    bool all_pass = true;
    Json out_json;
    out_json["suites"] = Json::array();
    for (const SuiteReport& r : reports) {
        Json checks = Json::array();
        for (const CheckResult& c : r.checks) {
            checks.push_back(Json{{"name", c.name},
                                  {"pass", c.pass},
                                  {"measured", c.measured},
                                  {"tolerance", c.tolerance},
                                  {"detail", c.detail}});
        }
        out_json["suites"].push_back(
            Json{{"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}});
        all_pass = all_pass && r.pass();
    }
    out_json["pass"] = all_pass;
    write_output(out_path, out_json.dump(2) + "\n", out);
    return all_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"annealing paths, rho-tau Bregman divergences, and AIS"};
    app.require_subcommand(1);

    std::string config_path, out_path, trace_path, suite = "all";
    std::uint64_t seed = 0;
    bool has_seed = false;
    double tol_scale = 1.0;
    bool crosscheck = false;

    auto add_common = [&](CLI::App* cmd, bool needs_config) {
        auto* copt = cmd->add_option("--config", config_path, "JSON config file");
        if (needs_config) copt->required();
        cmd->add_option("--out", out_path, "output file (default: stdout)");
    };

    auto* path_cmd = app.add_subcommand("path", "sweep an annealing path to CSV");
    add_common(path_cmd, true);
    auto* div_cmd = app.add_subcommand("divergence", "evaluate named divergences to JSON");
    add_common(div_cmd, true);
    div_cmd->add_flag("--crosscheck", crosscheck,
                      "cross-check zhang_ab against the normalizer formula");
    auto* fam_cmd = app.add_subcommand("family", "likelihood-ratio family normalizers");
    add_common(fam_cmd, true);
    auto* ais_cmd = app.add_subcommand("ais", "annealed importance sampling");
    add_common(ais_cmd, true);
    ais_cmd->add_option("--seed", seed, "override the config seed")
        ->each([&](const std::string&) { has_seed = true; });
    ais_cmd->add_option("--trace", trace_path, "write a chain,t,log_w CSV");
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    add_common(verify_cmd, false);
    verify_cmd->add_option("--suite", suite,
                           "theorem1|theorem2|theorem3|zoo|limits|all");
    verify_cmd->add_option("--seed", seed, "suite RNG seed")
        ->each([&](const std::string&) { has_seed = true; });
    verify_cmd->add_option("--tol", tol_scale, "tolerance scale factor");

    std::vector<std::string> argv(args.rbegin(), args.rend());  // CLI11 wants reversed args
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (path_cmd->parsed()) return cmd_path(load_config(config_path), out_path, out);
        if (div_cmd->parsed())
            return cmd_divergence(load_config(config_path), crosscheck, out_path, out);
        if (fam_cmd->parsed()) return cmd_family(load_config(config_path), out_path, out);
        if (ais_cmd->parsed())
            return cmd_ais(load_config(config_path), seed, has_seed, trace_path, out_path,
                           out);
        if (verify_cmd->parsed()) {
            return cmd_verify(suite, has_seed ? seed : 7000, tol_scale, out_path, out);
        }
        err << "config error: no subcommand\n";
        return 2;
    } catch (const config_error& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "numeric error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace anneal
