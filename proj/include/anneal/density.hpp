#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace anneal {

enum class SupportKind { grid, discrete };

// Uniform 1-D quadrature grid on [lo, hi] or a finite discrete space.
struct Support {
    SupportKind kind = SupportKind::discrete;
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 0;

    static Support grid(double lo, double hi, std::size_t n);
    static Support discrete(std::size_t n);

    double node(std::size_t i) const;
    double step() const;

    bool operator==(const Support&) const = default;
};

// Unnormalized density: nonnegative values with positive quadrature weights.
// Grid weights implement the composite trapezoid rule; discrete weights are 1.
struct Density {
    Support support;
    std::vector<double> values;
    std::vector<double> weights;

    static Density on_grid(double lo, double hi, std::vector<double> values);
    static Density on_discrete(std::vector<double> values);
    static Density with_support(const Support& s, std::vector<double> values);

    double x(std::size_t i) const { return support.node(i); }
    std::size_t size() const { return values.size(); }
};

// Throws domain_error when the invariants do not hold.
void validate(const Density& d);

double integral(const Density& d);
Density normalize(const Density& d);

// Pointwise image of the values; support and weights are the caller's.
std::vector<double> map_values(const Density& d,
                               const std::function<double(double)>& g);

// Value at an off-node point by linear interpolation (0 outside the grid).
double value_at(const Density& d, double x);

// Endpoint families for experiments.
struct GaussianSpec {
    double mean = 0.0;
    double stddev = 1.0;
};
struct GaussianMixtureSpec {
    struct Component {
        double weight, mean, stddev;
    };
    std::vector<Component> components;
};
struct StudentTSpec {
    double dof = 1.0;
    double loc = 0.0;
    double scale = 1.0;
};
struct DiscreteTableSpec {
    std::vector<double> values;
};

struct DensitySpec {
    std::variant<GaussianSpec, GaussianMixtureSpec, StudentTSpec,
                 DiscreteTableSpec>
        family;
    double scale = 1.0;
};

Density materialize(const DensitySpec& spec, const Support& support);

// Default experiment grid: Gaussian-family tails below 1e-22 at the boundary.
inline Support default_grid() { return Support::grid(-10.0, 10.0, 2001); }

// Serialization. CSV uses `x,value,weight` for grids and `index,value` for
// discrete spaces; floats are shortest-round-trip decimals.
void write_csv(const Density& d, std::ostream& out);
Density read_csv(std::istream& in);
nlohmann::json to_json(const Density& d);
Density density_from_json(const nlohmann::json& j);

// Shortest-round-trip decimal for a double.
std::string format_double(double v);

}  // namespace anneal
