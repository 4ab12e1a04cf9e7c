#include <optional>

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anneal/divergences.hpp"
#include "anneal/errors.hpp"
#include "anneal/parametric.hpp"
#include "anneal/sampler.hpp"
#include "anneal/verify.hpp"

namespace py = pybind11;
using namespace anneal;

namespace {

RepresentationFn rep_from_name(const std::string& kind, double param) {
    if (kind == "identity") return RepresentationFn::identity();
    if (kind == "log") return RepresentationFn::log();
    if (kind == "log_q") return RepresentationFn::log_q(param);
    if (kind == "log_one_minus_lambda") return RepresentationFn::log_one_minus_lambda(param);
    throw anneal::domain_error("unknown representation kind '" + kind + "'");
}

DivergenceKind kind_from_name(const std::string& name, const py::dict& params,
                              std::optional<RhoTauPair> pair) {
    auto get = [&](const char* key) { return params[key].cast<double>(); };
    if (name == "kl_unnormalized") return KLUnnormalized{};
    if (name == "kl_normalized") return KLNormalized{};
    if (name == "amari_alpha") return AmariAlpha{get("alpha")};
    if (name == "renyi") return Renyi{get("alpha")};
    if (name == "jensen_shannon") return JensenShannon{get("beta")};
    if (name == "beta") return BetaDivergence{get("order")};
    if (name == "cichocki_amari") return CichockiAmari{get("q"), get("lambda")};
    if (name == "zhang_ab") return ZhangAB{get("beta"), get("q")};
    if (name == "rho_tau_generic" && pair) return RhoTauGeneric{*pair};
    throw anneal::domain_error("unknown divergence kind '" + name + "'");
}

py::dict suite_to_dict(const SuiteReport& r) {
    py::dict d;
    d["suite"] = r.suite;
    d["pass"] = r.pass();
    py::list checks;
    for (const CheckResult& c : r.checks) {
        py::dict cd;
        cd["name"] = c.name;
        cd["pass"] = c.pass;
        cd["measured"] = c.measured;
        cd["tolerance"] = c.tolerance;
        checks.append(cd);
    }
    d["checks"] = checks;
    return d;
}

}  // namespace

PYBIND11_MODULE(annealpaths, m) {
    m.doc() = "annealing paths via quasi-arithmetic means, rho-tau Bregman "
              "divergences, and annealed importance sampling";

    py::register_exception<anneal::domain_error>(m, "DomainError");
    py::register_exception<anneal::overflow_error>(m, "OverflowValueError");
    py::register_exception<anneal::config_error>(m, "ConfigError");

    m.def("q_log", &q_log, py::arg("u"), py::arg("q"));
    m.def("q_exp", &q_exp, py::arg("t"), py::arg("q"));

    py::class_<RepresentationFn>(m, "Representation")
        .def_static("identity", &RepresentationFn::identity)
        .def_static("log", &RepresentationFn::log)
        .def_static("log_q", &RepresentationFn::log_q, py::arg("q"))
        .def_static("log_one_minus_lambda", &RepresentationFn::log_one_minus_lambda,
                    py::arg("lam"))
        .def("affine", &RepresentationFn::affine, py::arg("c"), py::arg("a"))
        .def("apply", &RepresentationFn::apply, py::arg("u"))
        .def("inverse", &RepresentationFn::inverse, py::arg("y"))
        .def("d1", &RepresentationFn::d1, py::arg("u"))
        .def("d2", &RepresentationFn::d2, py::arg("u"))
        .def("__repr__", &RepresentationFn::describe);

    py::class_<Density>(m, "Density")
        .def_static("on_grid", &Density::on_grid, py::arg("lo"), py::arg("hi"),
                    py::arg("values"))
        .def_static("on_discrete", &Density::on_discrete, py::arg("values"))
        .def_property_readonly("values",
                               [](const Density& d) { return d.values; })
        .def_property_readonly("weights",
                               [](const Density& d) { return d.weights; })
        .def_property_readonly("xs", [](const Density& d) {
            std::vector<double> xs(d.size());
            for (std::size_t i = 0; i < d.size(); ++i) xs[i] = d.x(i);
            return xs;
        })
        .def("__len__", &Density::size);

    m.def("gaussian_density",
          [](double mean, double stddev, double scale, double lo, double hi, std::size_t n) {
              return materialize({GaussianSpec{mean, stddev}, scale},
                                 Support::grid(lo, hi, n));
          },
          py::arg("mean"), py::arg("stddev"), py::arg("scale") = 1.0, py::arg("lo") = -10.0,
          py::arg("hi") = 10.0, py::arg("n") = 2001);
    m.def("integral", &integral);
    m.def("normalize", &normalize);

    py::class_<RhoTauPair>(m, "RhoTauPair")
        .def_property_readonly("rho", &RhoTauPair::rho)
        .def_property_readonly("tau", &RhoTauPair::tau)
        .def("f", &RhoTauPair::f)
        .def("fprime", &RhoTauPair::fprime)
        .def("fstar", &RhoTauPair::fstar);
    m.def("make_pair", &make_pair, py::arg("rho"), py::arg("tau"));
    m.def("dual_pair", &dual_pair);

    m.def("quasi_arithmetic_mean",
          [](const std::vector<Density>& inputs, const std::vector<double>& weights,
             const RepresentationFn& rho) {
              return quasi_arithmetic_mean(inputs, MixtureWeights::of(weights), rho);
          },
          py::arg("inputs"), py::arg("weights"), py::arg("rho"));
    m.def("path_evaluate",
          [](const Density& p0, const Density& p1, const RepresentationFn& rho, double beta,
             bool normalize_output) {
              const auto policy = normalize_output ? NormalizationPolicy::normalize_output
                                                   : NormalizationPolicy::unnormalized;
              return evaluate(make_path(p0, p1, rho, policy), beta);
          },
          py::arg("p0"), py::arg("p1"), py::arg("rho"), py::arg("beta"),
          py::arg("normalize_output") = false);
    m.def("reparameterize_normalized_q_mixture", &reparameterize_normalized_q_mixture,
          py::arg("p0"), py::arg("p1"), py::arg("beta"), py::arg("q"));

    m.def("rho_tau_bregman", &rho_tau_bregman);
    m.def("dual_rho_tau_bregman", &dual_rho_tau_bregman);
    m.def("bregman_information",
          [](const RhoTauPair& pair, const std::vector<Density>& inputs,
             const std::vector<double>& weights) {
              const auto info =
                  bregman_information(pair, inputs, MixtureWeights::of(weights));
              py::dict d;
              d["value"] = info.value;
              d["minimizer"] = info.minimizer;
              return d;
          });
    m.def("scaled_divergence", &scaled_divergence);
    m.def("divergence",
          [](const std::string& name, const Density& a, const Density& b,
             const py::dict& params, std::optional<RhoTauPair> pair) {
              return named_divergence(kind_from_name(name, params, std::move(pair)), a, b);
          },
          py::arg("name"), py::arg("a"), py::arg("b"), py::arg("params") = py::dict(),
          py::arg("pair") = std::nullopt);

    m.def("make_lr_family", &make_lr_family, py::arg("p0"), py::arg("p1"), py::arg("q"));
    py::class_<QExpFamily>(m, "QExpFamily")
        .def_property_readonly("q", [](const QExpFamily& f) { return f.q; });
    m.def("z_q", [](const QExpFamily& fam, double beta) { return z_q(fam, beta); });
    m.def("parametric_bregman",
          [](const QExpFamily& fam, double a, double b, const std::string& gen) {
              const auto g = gen == "log_z" ? ParametricGenerator::log_z
                                            : ParametricGenerator::scaled_zq;
              return parametric_bregman(fam, a, b, g);
          },
          py::arg("family"), py::arg("beta_a"), py::arg("beta_b"),
          py::arg("generator") = "scaled_zq");

    m.def("run_ais",
          [](const Density& p0, const Density& p1, const RepresentationFn& rho,
             std::size_t steps, const std::string& kernel, double step, int sweeps,
             std::size_t chains, std::uint64_t seed) {
              AisConfig cfg;
              cfg.path = make_path(p0, p1, rho);
              cfg.schedule = Schedule::linear(steps);
              if (kernel == "exact_resample") {
                  cfg.kernel = ExactResample{};
              } else if (kernel == "random_walk_mh") {
                  cfg.kernel = RandomWalkMH{step, sweeps};
              } else {
                  throw anneal::config_error("unknown kernel '" + kernel + "'");
              }
              cfg.chains = chains;
              cfg.seed = seed;
              const AisResult r = run_ais(cfg);
              py::dict d;
              d["ratio_estimate"] = r.ratio_estimate;
              d["log_ratio_estimate"] = r.log_ratio_estimate;
              d["ess"] = r.ess;
              d["acceptance_rates"] = r.acceptance_rates;
              d["log_weights"] = r.log_weights;
              return d;
          },
          py::arg("p0"), py::arg("p1"), py::arg("rho"), py::arg("steps") = 10,
          py::arg("kernel") = "exact_resample", py::arg("step") = 0.5, py::arg("sweeps") = 1,
          py::arg("chains") = 1000, py::arg("seed") = 0);

    m.def("run_suite", [](const std::string& name, std::uint64_t seed) {
        if (name == "theorem1") return suite_to_dict(run_suite_theorem1(seed + 1));
        if (name == "theorem2") return suite_to_dict(run_suite_theorem2());
        if (name == "theorem3") return suite_to_dict(run_suite_theorem3(seed + 3));
        if (name == "zoo") return suite_to_dict(run_suite_zoo(seed + 4));
        if (name == "limits") return suite_to_dict(run_suite_limits(seed + 5));
        throw anneal::config_error("unknown suite '" + name + "'");
    }, py::arg("name"), py::arg("seed") = 7000);
}
