#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "anneal/cli.hpp"
#include "anneal/density.hpp"
#include "doctest.h"

using namespace anneal;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("annealpath_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    fs::path file(const std::string& name) const { return path / name; }
};

std::string write_json(const TempDir& dir, const std::string& name,
                       const nlohmann::json& j) {
    const fs::path p = dir.file(name);
    std::ofstream out(p);
    out << j.dump(2);
    return p.string();
}

struct CliOutcome {
    int code;
    std::string out;
    std::string err;
};

CliOutcome run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

nlohmann::json gaussian_cfg(double mean, double stddev, double scale = 1.0) {
    return {{"family", "gaussian"}, {"mean", mean}, {"stddev", stddev}, {"scale", scale}};
}

}  // namespace

TEST_CASE("path subcommand sweeps a geometric path") {
    TempDir dir;
    nlohmann::json cfg = {
        {"p0", gaussian_cfg(0.0, 1.0)},
        {"p1", gaussian_cfg(4.0, 1.0)},
        {"support", {{"kind", "grid"}, {"lo", -10.0}, {"hi", 14.0}, {"n", 481}}},
        {"rho", {{"kind", "log"}}},
        {"betas", {0.0, 0.5, 1.0}}};
    const std::string cfg_path = write_json(dir, "path.json", cfg);
    const auto got = run({"path", "--config", cfg_path, "--out",
                          dir.file("sweep.csv").string()});
    REQUIRE(got.code == 0);

    std::ifstream in(dir.file("sweep.csv"));
    std::string header;
    std::getline(in, header);
    CHECK(header == "beta,x,value");
    std::string line;
    std::size_t rows = 0;
    double best_x = 0.0, best_v = -1.0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream row(line);
        std::string beta_s, x_s, v_s;
        std::getline(row, beta_s, ',');
        std::getline(row, x_s, ',');
        std::getline(row, v_s, ',');
        if (beta_s == "0.5" && std::stod(v_s) > best_v) {
            best_v = std::stod(v_s);
            best_x = std::stod(x_s);
        }
    }
    CHECK(rows == 3 * 481);
    // Geometric midpoint of N(0,1) and N(4,1) peaks at x = 2.
    CHECK(best_x == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("path subcommand identical endpoints emit identical blocks") {
    TempDir dir;
    nlohmann::json cfg = {
        {"p0", gaussian_cfg(1.0, 1.0)},
        {"p1", gaussian_cfg(1.0, 1.0)},
        {"support", {{"kind", "grid"}, {"lo", -8.0}, {"hi", 10.0}, {"n", 101}}},
        {"rho", {{"kind", "log"}}},
        {"betas", {0.25, 0.75}}};
    const auto got = run({"path", "--config", write_json(dir, "cfg.json", cfg)});
    REQUIRE(got.code == 0);
    std::istringstream in(got.out);
    std::string header;
    std::getline(in, header);
    std::vector<std::string> first, second;
    std::string line;
    while (std::getline(in, line)) {
        (first.size() < 101 ? first : second).push_back(line.substr(line.find(',')));
    }
    CHECK(first == second);
}

TEST_CASE("path subcommand maps numeric errors to exit 3") {
    TempDir dir;
    nlohmann::json cfg = {
        {"p0", {{"family", "discrete_table"}, {"values", {0.0, 1.0}}}},
        {"p1", {{"family", "discrete_table"}, {"values", {1.0, 1.0}}}},
        {"support", {{"kind", "discrete"}, {"n", 2}}},
        {"rho", {{"kind", "log"}}},
        {"betas", {0.5}}};
    const auto got = run({"path", "--config", write_json(dir, "cfg.json", cfg)});
    CHECK(got.code == 3);
    CHECK(got.err.find("domain") != std::string::npos);
}

TEST_CASE("config validation rejects unknown keys and bad values") {
    TempDir dir;
    nlohmann::json cfg = {
        {"p0", gaussian_cfg(0.0, 1.0)},
        {"p1", gaussian_cfg(1.0, 1.0)},
        {"support", {{"kind", "grid"}, {"lo", -8.0}, {"hi", 8.0}, {"n", 51}}},
        {"rho", {{"kind", "log"}}},
        {"surprise", 1}};
    CHECK(run({"path", "--config", write_json(dir, "cfg.json", cfg)}).code == 2);
    CHECK(run({"path", "--config", dir.file("missing.json").string()}).code == 2);
    CHECK(run({"nonsense"}).code == 2);
}

TEST_CASE("divergence subcommand emits values and crosschecks") {
    TempDir dir;
    nlohmann::json cfg = {
        {"p0", gaussian_cfg(0.0, 1.0)},
        {"p1", gaussian_cfg(0.0, 1.0)},
        {"support", {{"kind", "grid"}, {"lo", -9.0}, {"hi", 9.0}, {"n", 301}}},
        {"kinds", {{{"kind", "kl_unnormalized"}}}}};
    const auto same = run({"divergence", "--config", write_json(dir, "kl.json", cfg)});
    REQUIRE(same.code == 0);
    const auto parsed = nlohmann::json::parse(same.out);
    CHECK(parsed[0]["value"].get<double>() == 0.0);

    nlohmann::json sweep = {
        {"p0", gaussian_cfg(0.0, 1.0, 1.0)},
        {"p1", gaussian_cfg(1.0, 1.3, 2.0)},
        {"support", {{"kind", "grid"}, {"lo", -10.0}, {"hi", 10.0}, {"n", 801}}},
        {"kinds", nlohmann::json::array()}};
    for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9})
        sweep["kinds"].push_back({{"kind", "amari_alpha"}, {"alpha", alpha}});
    sweep["kinds"].push_back({{"kind", "zhang_ab"}, {"beta", 0.4}, {"q", 0.5}});
    const auto got = run({"divergence", "--config", write_json(dir, "sweep.json", sweep),
                          "--crosscheck"});
    REQUIRE(got.code == 0);
    const auto arr = nlohmann::json::parse(got.out);
    for (const auto& entry : arr) {
        CHECK(entry["value"].get<double>() >= 0.0);
        CHECK(std::isfinite(entry["value"].get<double>()));
        if (entry["kind"] == "zhang_ab")
            CHECK(entry["crosscheck"]["abs_diff"].get<double>() <= 1e-8);
    }
}

TEST_CASE("family subcommand reports normalizers") {
    TempDir dir;
    nlohmann::json cfg = {
        {"p0", gaussian_cfg(0.0, 1.0)},
        {"p1", gaussian_cfg(1.0, 1.0)},
        {"support", {{"kind", "grid"}, {"lo", -10.0}, {"hi", 11.0}, {"n", 2001}}},
        {"q", 1.0},
        {"thetas", {0.5}}};
    const auto got = run({"family", "--config", write_json(dir, "fam.json", cfg)});
    REQUIRE(got.code == 0);
    const auto arr = nlohmann::json::parse(got.out);
    CHECK(arr[0]["Z_q"].get<double>() == doctest::Approx(std::exp(-0.125)).epsilon(1e-8));
    CHECK(arr[0]["logZ"].get<double>() == doctest::Approx(-0.125).epsilon(1e-6));
}

namespace {

nlohmann::json toy_ais_cfg() {
    return {{"p0", {{"family", "discrete_table"}, {"values", {1.0, 1.0}}}},
            {"p1", {{"family", "discrete_table"}, {"values", {2.0, 6.0}}}},
            {"support", {{"kind", "discrete"}, {"n", 2}}},
            {"rho", {{"kind", "log"}}},
            {"schedule", {{"T", 10}}},
            {"kernel", {{"type", "exact_resample"}}},
            {"chains", 20000},
            {"seed", 777}};
}

}  // namespace

TEST_CASE("ais subcommand estimates the toy ratio deterministically") {
    TempDir dir;
    const std::string cfg = write_json(dir, "ais.json", toy_ais_cfg());
    const auto a = run({"ais", "--config", cfg, "--out", dir.file("a.json").string(),
                        "--trace", dir.file("trace.csv").string()});
    REQUIRE(a.code == 0);
    const auto b = run({"ais", "--config", cfg, "--out", dir.file("b.json").string()});
    REQUIRE(b.code == 0);
    CHECK(slurp(dir.file("a.json")) == slurp(dir.file("b.json")));

    const auto parsed = nlohmann::json::parse(slurp(dir.file("a.json")));
    CHECK(std::abs(parsed["ratio_estimate"].get<double>() - 4.0) < 0.2);
    CHECK(parsed["K"].get<int>() == 20000);
    CHECK(parsed["T"].get<int>() == 10);

    const std::string trace = slurp(dir.file("trace.csv"));
    CHECK(trace.rfind("chain,t,log_w\n", 0) == 0);

    nlohmann::json bad = toy_ais_cfg();
    bad["chains"] = 0;
    CHECK(run({"ais", "--config", write_json(dir, "bad.json", bad)}).code == 2);
}

TEST_CASE("verify subcommand runs suites") {
    TempDir dir;
    const auto zoo = run({"verify", "--suite", "zoo"});
    CHECK(zoo.code == 0);
    const auto parsed = nlohmann::json::parse(zoo.out);
    CHECK(parsed["pass"].get<bool>());
    CHECK(run({"verify", "--suite", "unknown"}).code == 2);

    // --tol scales every check tolerance.
    const auto strict = run({"verify", "--suite", "limits", "--tol", "0.5"});
    const auto strict_json = nlohmann::json::parse(strict.out);
    const double t0 = parsed["suites"][0]["checks"][0]["tolerance"].get<double>();
    (void)t0;
    const double base_tol =
        nlohmann::json::parse(run({"verify", "--suite", "limits"}).out)["suites"][0]
            ["checks"][0]["tolerance"].get<double>();
    const double scaled_tol =
        strict_json["suites"][0]["checks"][0]["tolerance"].get<double>();
    CHECK(scaled_tol == doctest::Approx(0.5 * base_tol));

    const auto l1 = run({"verify", "--suite", "limits", "--out",
                         dir.file("l1.json").string()});
    const auto l2 = run({"verify", "--suite", "limits", "--out",
                         dir.file("l2.json").string()});
    CHECK(l1.code == 0);
    CHECK(l2.code == 0);
    CHECK(slurp(dir.file("l1.json")) == slurp(dir.file("l2.json")));
}

TEST_CASE("installed binary behaves like the in-process cli") {
    const char* bin = std::getenv("ANNEALPATH_CLI");
    if (bin == nullptr) return;  // available under ctest
    TempDir dir;
    const std::string cfg = write_json(dir, "ais.json", toy_ais_cfg());
    const std::string out1 = dir.file("r1.json").string();
    const std::string out2 = dir.file("r2.json").string();
    const std::string cmd1 = std::string(bin) + " ais --config " + cfg + " --out " + out1;
    const std::string cmd2 = std::string(bin) + " ais --config " + cfg + " --out " + out2;
    REQUIRE(std::system(cmd1.c_str()) == 0);
    REQUIRE(std::system(cmd2.c_str()) == 0);
    CHECK(slurp(out1) == slurp(out2));
    const std::string verify_cmd =
        std::string(bin) + " verify --suite limits --out " + dir.file("v.json").string();
    CHECK(std::system(verify_cmd.c_str()) == 0);
}
