#pragma once

#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "anneal/deformed.hpp"
#include "anneal/density.hpp"
#include "anneal/paths.hpp"

namespace anneal {

// Decomposable rho-tau Bregman divergence
//   int f(rho(a)) - f(rho(b)) - (rho(a) - rho(b)) f'(rho(b)) dx.
double rho_tau_bregman(const RhoTauPair& pair, const Density& a, const Density& b);

// Dual divergence D_{f*}[tau(a) : tau(b)]; equals the primal with the
// arguments reversed.
double dual_rho_tau_bregman(const RhoTauPair& pair, const Density& a, const Density& b);

// int f(rho(pi(x))) dx, the decomposable generator.
double psi_f(const RhoTauPair& pair, const Density& d);

struct BregmanInfoResult {
    double value = 0.0;
    Density minimizer;
    std::vector<double> per_point_objective;
};

// Minimum expected divergence to a single representative: the minimizer is
// the quasi-arithmetic mean and the value is the Jensen gap of psi_f.
BregmanInfoResult bregman_information(const RhoTauPair& pair,
                                      std::span<const Density> inputs,
                                      const MixtureWeights& weights);

// sum_i beta_i D_f[rho(pi_i) : rho(mu)] - bregman_information(...).value;
// equals rho_tau_bregman(pair, mean, mu).
double suboptimality_gap(const RhoTauPair& pair, std::span<const Density> inputs,
                         const MixtureWeights& weights, const Density& mu);

// Representational alpha-divergence: Bregman Information scaled by
// 1/(beta (1-beta)), with Bregman-divergence limit branches at beta in {0,1}.
double scaled_divergence(const RhoTauPair& pair, const Density& p0,
                         const Density& p1, double beta);

// Threshold at which scaled_divergence switches to its limit branches.
inline constexpr double kScaledLimitEps = 1e-7;

// Named divergence zoo.
struct KLUnnormalized {};
struct KLNormalized {};
struct AmariAlpha {
    double alpha;
};
struct Renyi {
    double alpha;
};
struct JensenShannon {
    double beta;
};
struct BetaDivergence {
    double order;  // in (0, 2]; order 2 is half squared L2, order -> 0 is Itakura-Saito
};
struct CichockiAmari {
    double q;
    double lambda;
};
struct ZhangAB {
    double beta;
    double q;
};
struct RhoTauGeneric {
    RhoTauPair pair;
};

using DivergenceKind =
    std::variant<KLUnnormalized, KLNormalized, AmariAlpha, Renyi, JensenShannon,
                 BetaDivergence, CichockiAmari, ZhangAB, RhoTauGeneric>;

struct DivergenceDiagnostics {
    double mass_a = 0.0;
    double mass_b = 0.0;
    Support support;
};

double named_divergence(const DivergenceKind& kind, const Density& a, const Density& b,
                        DivergenceDiagnostics* diag = nullptr);

// Closed form int a/b - log(a/b) - 1 dx; the order->0 limit of the
// Beta divergence.
double itakura_saito(const Density& a, const Density& b);

std::string kind_name(const DivergenceKind& kind);
std::vector<std::pair<std::string, double>> kind_params(const DivergenceKind& kind);

}  // namespace anneal
