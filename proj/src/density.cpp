#include "anneal/density.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "anneal/errors.hpp"

namespace anneal {

Support Support::grid(double lo, double hi, std::size_t n) {
    if (!(lo < hi) || n < 2) throw domain_error("grid support needs lo < hi and n >= 2");
    return Support{SupportKind::grid, lo, hi, n};
}

Support Support::discrete(std::size_t n) {
    if (n == 0) throw domain_error("discrete support needs n >= 1");
    return Support{SupportKind::discrete, 0.0, 0.0, n};
}

double Support::node(std::size_t i) const {
    if (kind == SupportKind::discrete) return static_cast<double>(i);
    return lo + static_cast<double>(i) * step();
}

double Support::step() const {
    if (kind == SupportKind::discrete) return 1.0;
    return (hi - lo) / static_cast<double>(n - 1);
}

namespace {

std::vector<double> make_weights(const Support& s) {
    std::vector<double> w(s.n, 1.0);
    if (s.kind == SupportKind::grid) {
        const double h = s.step();
        std::fill(w.begin(), w.end(), h);
        w.front() = 0.5 * h;
        w.back() = 0.5 * h;
    }
    return w;
}

}  // namespace

Density Density::on_grid(double lo, double hi, std::vector<double> values) {
    const std::size_t n = values.size();
    return with_support(Support::grid(lo, hi, n), std::move(values));
}

Density Density::on_discrete(std::vector<double> values) {
    const std::size_t n = values.size();
    return with_support(Support::discrete(n), std::move(values));
}

Density Density::with_support(const Support& s, std::vector<double> values) {
    if (values.size() != s.n) throw domain_error("value count does not match support");
    Density d{s, std::move(values), make_weights(s)};
    validate(d);
    return d;
}

void validate(const Density& d) {
    if (d.values.size() != d.support.n || d.weights.size() != d.support.n)
        throw domain_error("density arrays do not match support");
    bool any_positive = false;
    for (double v : d.values) {
        if (std::isnan(v) || v < 0.0) throw domain_error("density values must be >= 0");
        if (v > 0.0) any_positive = true;
    }
    if (!any_positive) throw domain_error("density must have positive mass");
    for (double w : d.weights) {
        if (!(w > 0.0)) throw domain_error("quadrature weights must be > 0");
    }
    const double mass = integral(d);
    if (!std::isfinite(mass) || !(mass > 0.0))
        throw overflow_error("density mass is not finite and positive");
}

double integral(const Density& d) {
    double acc = 0.0;
    for (std::size_t i = 0; i < d.values.size(); ++i) acc += d.weights[i] * d.values[i];
    return acc;
}

Density normalize(const Density& d) {
    const double mass = integral(d);
    if (!std::isfinite(mass) || !(mass > 0.0))
        throw overflow_error("cannot normalize: mass is zero or not finite");
    Density out = d;
    for (double& v : out.values) v /= mass;
    return out;
}

std::vector<double> map_values(const Density& d,
                               const std::function<double(double)>& g) {
    std::vector<double> out(d.values.size());
    for (std::size_t i = 0; i < d.values.size(); ++i) out[i] = g(d.values[i]);
    return out;
}

double value_at(const Density& d, double x) {
    if (d.support.kind == SupportKind::discrete) {
        const auto i = static_cast<long long>(std::llround(x));
        if (i < 0 || static_cast<std::size_t>(i) >= d.support.n) return 0.0;
        return d.values[static_cast<std::size_t>(i)];
    }
    if (x < d.support.lo || x > d.support.hi) return 0.0;
    const double h = d.support.step();
    const double t = (x - d.support.lo) / h;
    auto i = static_cast<std::size_t>(t);
    if (i >= d.support.n - 1) return d.values.back();
    const double frac = t - static_cast<double>(i);
    return d.values[i] + frac * (d.values[i + 1] - d.values[i]);
}

namespace {

double gaussian_pdf(double x, double mean, double stddev) {
    const double z = (x - mean) / stddev;
    return std::exp(-0.5 * z * z) / (stddev * std::sqrt(2.0 * M_PI));
}

double student_t_pdf(double x, double dof, double loc, double scale) {
    const double z = (x - loc) / scale;
    const double lognorm = std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
                           0.5 * std::log(dof * M_PI) - std::log(scale);
    return std::exp(lognorm - 0.5 * (dof + 1.0) * std::log1p(z * z / dof));
}

}  // namespace

Density materialize(const DensitySpec& spec, const Support& support) {
    if (!(spec.scale > 0.0)) throw domain_error("density scale must be > 0");
    std::vector<double> values(support.n, 0.0);

    if (const auto* g = std::get_if<GaussianSpec>(&spec.family)) {
        if (!(g->stddev > 0.0)) throw domain_error("gaussian stddev must be > 0");
        if (support.kind != SupportKind::grid)
            throw domain_error("gaussian families need a grid support");
        for (std::size_t i = 0; i < support.n; ++i)
            values[i] = spec.scale * gaussian_pdf(support.node(i), g->mean, g->stddev);
    } else if (const auto* m = std::get_if<GaussianMixtureSpec>(&spec.family)) {
        if (m->components.empty()) throw domain_error("mixture needs components");
        if (support.kind != SupportKind::grid)
            throw domain_error("gaussian families need a grid support");
        for (const auto& c : m->components) {
            if (!(c.weight > 0.0) || !(c.stddev > 0.0))
                throw domain_error("mixture weights and stddevs must be > 0");
        }
        for (std::size_t i = 0; i < support.n; ++i) {
            double acc = 0.0;
            for (const auto& c : m->components)
                acc += c.weight * gaussian_pdf(support.node(i), c.mean, c.stddev);
            values[i] = spec.scale * acc;
        }
    } else if (const auto* t = std::get_if<StudentTSpec>(&spec.family)) {
        if (!(t->dof > 0.0) || !(t->scale > 0.0))
            throw domain_error("student-t dof and scale must be > 0");
        if (support.kind != SupportKind::grid)
            throw domain_error("student-t families need a grid support");
        for (std::size_t i = 0; i < support.n; ++i)
            values[i] = spec.scale * student_t_pdf(support.node(i), t->dof, t->loc, t->scale);
    } else {
        const auto& table = std::get<DiscreteTableSpec>(spec.family);
        if (support.kind != SupportKind::discrete || support.n != table.values.size())
            throw domain_error("discrete table needs a matching discrete support");
        for (std::size_t i = 0; i < support.n; ++i)
            values[i] = spec.scale * table.values[i];
    }
    return Density::with_support(support, std::move(values));
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_csv(const Density& d, std::ostream& out) {
    if (d.support.kind == SupportKind::grid) {
        out << "x,value,weight\n";
        for (std::size_t i = 0; i < d.size(); ++i) {
            out << format_double(d.x(i)) << ',' << format_double(d.values[i]) << ','
                << format_double(d.weights[i]) << '\n';
        }
    } else {
        out << "index,value\n";
        for (std::size_t i = 0; i < d.size(); ++i)
            out << i << ',' << format_double(d.values[i]) << '\n';
    }
}

Density read_csv(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) throw config_error("empty density CSV");
    std::vector<double> xs, values;
    std::string line;
    const bool grid = header.rfind("x,", 0) == 0;
    if (!grid && header.rfind("index,", 0) != 0)
        throw config_error("unrecognized density CSV header: " + header);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> cells;
        while (std::getline(row, cell, ',')) cells.push_back(std::stod(cell));
        if (cells.size() < 2) throw config_error("bad density CSV row: " + line);
        xs.push_back(cells[0]);
        values.push_back(cells[1]);
    }
    if (values.empty()) throw config_error("density CSV has no rows");
    if (grid) return Density::on_grid(xs.front(), xs.back(), std::move(values));
    return Density::on_discrete(std::move(values));
}

nlohmann::json to_json(const Density& d) {
    nlohmann::json s;
    if (d.support.kind == SupportKind::grid) {
        s = {{"kind", "grid"}, {"lo", d.support.lo}, {"hi", d.support.hi}, {"n", d.support.n}};
    } else {
        s = {{"kind", "discrete"}, {"n", d.support.n}};
    }
    return nlohmann::json{{"support", s}, {"values", d.values}, {"weights", d.weights}};
}

Density density_from_json(const nlohmann::json& j) {
    const auto& s = j.at("support");
    std::vector<double> values = j.at("values").get<std::vector<double>>();
    Support sup = s.at("kind") == "grid"
                      ? Support::grid(s.at("lo"), s.at("hi"), s.at("n"))
                      : Support::discrete(s.at("n"));
    return Density::with_support(sup, std::move(values));
}

}  // namespace anneal
