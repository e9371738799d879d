// gpylab: numerical laboratory for GPY-style prime-gap detection in
// arithmetic progressions and class-number-one quadratic fields.

#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gpylab/arith.hpp"
#include "gpylab/detector.hpp"
#include "gpylab/gaps.hpp"
#include "gpylab/primedist.hpp"
#include "gpylab/quadfield.hpp"
#include "gpylab/rational.hpp"
#include "gpylab/tuple.hpp"
#include "gpylab/weights.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResource = 3;

std::string fnv1a_hex(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Every emitted file starts with a comment echoing the resolved-config hash.
// Files are removed on scope exit unless the run commits them.
struct OutputSet {
    std::string config_echo;
    std::string hash;
    std::vector<std::string> written;
    bool committed = false;

    explicit OutputSet(const json& config) : config_echo(config.dump()) {
        hash = fnv1a_hex(config_echo);
    }

    ~OutputSet() {
        if (!committed) remove_partial();
    }

    void commit() { committed = true; }

    void write_json(const std::string& path, json j) {
        j["config"] = json::parse(config_echo);
        j["config_hash"] = hash;
        std::ofstream f(path, std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << j.dump(2) << '\n';
        written.push_back(path);
    }

    void write_csv(const std::string& path, const std::string& body) {
        std::ofstream f(path, std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open output file: " + path);
        f << "# config_hash=" << hash << '\n' << body;
        written.push_back(path);
    }

    void remove_partial() {
        for (const auto& p : written) {
            std::error_code ec;
            fs::remove(p, ec);
        }
    }
};

struct Options {
    size_t k = 3, l = 1;
    double R_exp = 0.2;
    double R_abs = 0.0;  // overrides R_exp when > 0
    uint64_t m = 4, a = 1;
    double x = 1e6;
    int64_t D = -4;
    bool assert_h1 = false;
    uint64_t q_max = 0;
    double x_max = 1e6;  // accepts 1e6-style input
    uint64_t p_max = 1000;
    uint64_t P_trunc = 1'000'000;
    double delta = 0.25;
    unsigned workers = 1;
    bool deterministic = true;
    uint64_t seed = 1;
    std::string out_prefix = "gpylab";
    std::string tuple_json;
    std::vector<double> theta_grid;
    double log_power_B = 0.0;
    bool elliott_halberstam = false;
    size_t subset_k = 3;
    size_t translate_limit = 100;
};

double resolve_R(const Options& o) {
    if (o.R_abs > 0.0) return o.R_abs;
    return std::pow(o.x, o.R_exp);
}

gpylab::Tuple resolve_tuple(const Options& o) {
    if (!o.tuple_json.empty()) return gpylab::Tuple::from_json(o.tuple_json);
    return gpylab::generate_constrained_tuple(o.k, o.m);
}

json config_json(const std::string& sub, const Options& o) {
    return json{{"subcommand", sub}, {"k", o.k},       {"l", o.l},
                {"R_exp", o.R_exp},  {"R_abs", o.R_abs}, {"m", o.m},
                {"a", o.a},          {"x", o.x},       {"D", o.D},
                {"q_max", o.q_max},  {"x_max", o.x_max}, {"p_max", o.p_max},
                {"P", o.P_trunc},    {"delta", o.delta}, {"workers", o.workers},
                {"deterministic", o.deterministic},     {"seed", o.seed},
                {"tuple", o.tuple_json},                {"log_power_B", o.log_power_B},
                {"theta_grid", o.theta_grid},           {"eh", o.elliott_halberstam},
                {"subset_k", o.subset_k}};  // output path deliberately excluded
}

int run_tuple(const Options& o) {
    OutputSet out(config_json("tuple", o));
    auto H = resolve_tuple(o);
    json j{{"tuple", json::parse(H.to_json())},
           {"k", H.k()},
           {"diameter", H.diameter()},
           {"admissible", gpylab::is_admissible(H)}};
    out.write_json(o.out_prefix + "_tuple.json", j);
    out.commit();
    std::cout << out.config_echo << '\n' << j.dump(2) << '\n';
    return kExitOk;
}

int run_weights(const Options& o) {
    OutputSet out(config_json("weights", o));
    gpylab::SieveParams params(o.k, o.l, resolve_R(o), {o.m, o.a});
    gpylab::WeightTable table(params);
    std::ostringstream csv;
    table.write_csv(csv);
    out.write_csv(o.out_prefix + "_weights.csv", csv.str());
    out.commit();
    std::cout << out.config_echo << '\n'
              << "wrote " << o.out_prefix + "_weights.csv (" << table.squarefree().size()
              << " squarefree d <= " << table.d_max() << ")\n";
    return kExitOk;
}

int run_singular_series(const Options& o) {
    OutputSet out(config_json("singular-series", o));
    auto H = resolve_tuple(o);
    auto spec1 = gpylab::RhoSpec::make_rho1(H, o.m);
    auto spec3 = gpylab::RhoSpec::make_rho3(H, o.m);
    auto ss1 = gpylab::singular_series(spec1, spec1.default_exponent(), o.P_trunc);
    auto ss3 = gpylab::singular_series(spec3, spec3.default_exponent(), o.P_trunc);
    std::ostringstream csv;
    gpylab::singular_series_csv(spec1, spec1.default_exponent(), std::min<uint64_t>(o.P_trunc, 10000), csv);
    out.write_csv(o.out_prefix + "_singular_series.csv", csv.str());
    json j{{"tuple", json::parse(H.to_json())},
           {"m", o.m},
           {"P", o.P_trunc},
           {"S_rho1", ss1.value},
           {"S_rho1_tail_bound", ss1.tail_bound},
           {"S_rho1_degenerate", ss1.degenerate},
           {"S_rho3", ss3.value},
           {"S_rho3_tail_bound", ss3.tail_bound},
           {"ratio_rho3_over_rho1", ss1.value > 0 ? ss3.value / ss1.value : 0.0},
           {"phi_m_over_m",
            double(gpylab::euler_phi(o.m)) / double(o.m)}};
    out.write_json(o.out_prefix + "_singular_series.json", j);
    out.commit();
    std::cout << out.config_echo << '\n' << j.dump(2) << '\n';
    return kExitOk;
}

int run_detect(const Options& o) {
    OutputSet out(config_json("detect", o));
    auto H = resolve_tuple(o);
    gpylab::SieveParams params(o.k, o.l, resolve_R(o), {o.m, o.a});
    unsigned workers = o.deterministic && o.workers == 0 ? 1 : std::max(1u, o.workers);
    auto rep = gpylab::ratio_report(static_cast<uint64_t>(o.x), params, H, workers, o.P_trunc);
    auto translates = gpylab::find_two_prime_translates(static_cast<uint64_t>(o.x), o.m, o.a, H,
                                                        o.translate_limit);
    json sums;
    for (auto& [h, v] : rep.sum_alpha_theta) sums[std::to_string(h)] = v;
    json j{{"x", rep.x},
           {"R", params.R},
           {"sum_alpha", rep.sum_alpha},
           {"sum_alpha_varpi", sums},
           {"h0_reference", rep.h0_reference},
           {"ratio", rep.ratio},
           {"main_terms", {rep.main1, rep.main2, rep.main3}},
           {"deviations", {rep.dev1, rep.dev2, rep.dev3}},
           {"predicted_ratio_lower", rep.predicted_ratio_lower},
           {"beta", gpylab::beta(o.k, o.l)},
           {"R_admitted_under_EH", o.elliott_halberstam
                ? params.R <= std::pow(o.x, 0.5 - 1e-9)
                : params.R <= std::pow(o.x, 0.25)},
           {"translates", translates}};
    out.write_json(o.out_prefix + "_detect.json", j);
    std::ostringstream csv;
    csv << "x,ratio,predicted_lower\n"
        << rep.x << ',' << rep.ratio << ',' << rep.predicted_ratio_lower << '\n';
    out.write_csv(o.out_prefix + "_detect.csv", csv.str());
    out.commit();
    std::cout << out.config_echo << '\n' << j.dump(2) << '\n';
    return kExitOk;
}

int run_bv_probe(const Options& o) {
    OutputSet out(config_json("bv-probe", o));
    std::vector<double> grid = o.theta_grid;
    if (grid.empty()) grid = {0.5};
    std::ostringstream curve;
    curve << "theta_prime,q_max,aggregate,normalized_A1,normalized_A2\n";
    json entries = json::array();
    for (double tp : grid) {
        auto prof = gpylab::bv_aggregate(static_cast<uint64_t>(o.x), tp, o.log_power_B);
        double logx = std::log(o.x);
        curve << tp << ',' << prof.q_max << ',' << prof.aggregate << ','
              << prof.aggregate * logx / o.x << ','
              << prof.aggregate * logx * logx / o.x << '\n';
        if (grid.size() == 1) {
            std::ostringstream eq;
            eq << "q,E\n";
            for (auto& [q, E] : prof.entries) eq << q << ',' << E << '\n';
            out.write_csv(o.out_prefix + "_bv_E.csv", eq.str());
        }
        entries.push_back({{"theta_prime", tp}, {"q_max", prof.q_max}, {"aggregate", prof.aggregate}});
    }
    out.write_csv(o.out_prefix + "_bv_curve.csv", curve.str());
    out.write_json(o.out_prefix + "_bv.json", json{{"x", o.x}, {"profiles", entries}});
    out.commit();
    std::cout << out.config_echo << '\n' << entries.dump(2) << '\n';
    return kExitOk;
}

int run_quad(const Options& o) {
    OutputSet out(config_json("quad", o));
    auto K = gpylab::validate_field(o.D, o.assert_h1);
    uint64_t x = static_cast<uint64_t>(o.x);
    uint64_t qmax = o.q_max > 0 ? o.q_max
                                : static_cast<uint64_t>(std::sqrt(double(x)) / std::log(double(x)));
    std::ostringstream csv;
    csv << "q,phi1,fogels_E\n";
    double aggregate = 0.0;
    for (uint64_t q = 1; q <= qmax; ++q) {
        auto g = gpylab::phi1(q, K);
        double E = gpylab::fogels_error(x, q, K);
        aggregate += E;
        csv << q << ',' << g.order << ',' << E << '\n';
    }
    out.write_csv(o.out_prefix + "_quad_E.csv", csv.str());
    json j{{"D", K.D},
           {"class_number", K.h},
           {"certificate", K.certificate == gpylab::ClassNumberCertificate::KnownList
                               ? "known-list"
                               : K.certificate == gpylab::ClassNumberCertificate::FormCount
                                     ? "form-count"
                                     : "asserted (unverified: real quadratic regulator not computed)"},
           {"single_ideal_class", true},  // h = 1: Fogels' class sum degenerates
           {"x", x},
           {"q_max", qmax},
           {"aggregate", aggregate}};
    out.write_json(o.out_prefix + "_quad.json", j);
    out.commit();
    std::cout << out.config_echo << '\n' << j.dump(2) << '\n';
    return kExitOk;
}

int run_gaps(const Options& o) {
    OutputSet out(config_json("gaps", o));
    gpylab::GapModel model = o.D != 0 && o.m == 1 && o.a == 0
                                 ? gpylab::GapModel::quadratic(o.D)
                                 : gpylab::GapModel::congruence(o.m, o.a);
    auto seq = gpylab::split_prime_sequence(model, static_cast<uint64_t>(o.x_max));
    auto rep = gpylab::gap_stats(seq);
    std::ostringstream gapscsv;
    gapscsv << "q_n,gap,normalized\n";
    for (size_t i = 0; i + 1 < seq.size(); ++i)
        gapscsv << seq[i] << ',' << seq[i + 1] - seq[i] << ','
                << double(seq[i + 1] - seq[i]) / std::log(double(seq[i])) << '\n';
    out.write_csv(o.out_prefix + "_gaps.csv", gapscsv.str());
    std::ostringstream mins;
    mins << "x,running_min_normalized\n";
    for (auto& [x, v] : rep.running_minima) mins << x << ',' << v << '\n';
    out.write_csv(o.out_prefix + "_running_min.csv", mins.str());
    std::ostringstream hist;
    hist << "gap,count\n";
    for (auto& [g, c] : rep.histogram) hist << g << ',' << c << '\n';
    out.write_csv(o.out_prefix + "_gap_hist.csv", hist.str());
    json j{{"x_max", o.x_max},
           {"count", seq.size()},
           {"min_gap", rep.min_gap},
           {"min_gap_at", rep.min_gap_at},
           {"min_normalized", rep.min_normalized},
           {"min_normalized_at", rep.min_normalized_at}};
    out.write_json(o.out_prefix + "_gaps.json", j);
    out.commit();
    std::cout << out.config_echo << '\n' << j.dump(2) << '\n';
    return kExitOk;
}

int run_check_identities(const Options& o) {
    OutputSet out(config_json("check-identities", o));
    using gpylab::Rational;
    std::vector<uint64_t> moduli{3, 4, 6, 12};
    size_t failures = 0, checks = 0;
    std::mt19937_64 rng(o.seed);
    for (uint64_t m : moduli) {
        for (int rep = 0; rep < 5; ++rep) {
            size_t k = 2 + rng() % 4;
            auto H = gpylab::generate_constrained_tuple(k, m);
            auto s1 = gpylab::RhoSpec::make_rho1(H, m);
            auto s3 = gpylab::RhoSpec::make_rho3(H, m);
            for (uint64_t p : gpylab::primes_up_to(o.p_max)) {
                Rational pr(static_cast<int64_t>(p));
                Rational one(1);
                Rational f3 = (one - gpylab::rho_local_rational(s3, p) / pr);
                Rational f1 = (one - gpylab::rho_local_rational(s1, p) / pr);
                // S(rho3)/S(rho1) local ratio: exponent gap is one power of (1-1/p)
                Rational ratio = f3 / f1 * (one - one / pr);
                Rational expected = (m % p == 0) ? (one - one / pr) : one;
                ++checks;
                if (!(ratio == expected)) ++failures;
            }
        }
    }
    json j{{"p_max", o.p_max}, {"checks", checks}, {"failures", failures}};
    out.write_json(o.out_prefix + "_identities.json", j);
    out.commit();
    std::cout << out.config_echo << '\n' << j.dump(2) << '\n';
    return failures == 0 ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"GPY sieve laboratory for primes in progressions and quadratic fields"};
    app.set_config("--config", "", "TOML config file; flags override file values");
    app.require_subcommand(1);

    Options o;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--k", o.k, "tuple size");
        sub->add_option("--l", o.l, "shift parameter");
        sub->add_option("--R-exp", o.R_exp, "R = x^this (Lemma scaling)");
        sub->add_option("--R", o.R_abs, "absolute R override");
        sub->add_option("--m", o.m, "modulus");
        sub->add_option("--a", o.a, "residue, gcd(a,m)=1");
        sub->add_option("--x", o.x, "range start (sums over [x,2x))");
        sub->add_option("--P", o.P_trunc, "singular-series truncation prime");
        sub->add_option("--tuple", o.tuple_json, "explicit tuple as JSON array");
        sub->add_option("--workers", o.workers, "worker threads");
        sub->add_option("--seed", o.seed, "seed for randomized checks");
        sub->add_option("--out", o.out_prefix, "output file prefix");
        sub->add_flag("--deterministic,!--fast", o.deterministic,
                      "bit-reproducible summation order (default)");
        sub->add_flag("--eh", o.elliott_halberstam,
                      "label R against theta=1 instead of theta=1/2 in reports");
    };

    auto* tuple_cmd = app.add_subcommand("tuple", "generate a constrained admissible tuple");
    auto* weights_cmd = app.add_subcommand("weights", "emit the lambda_d table");
    auto* ss_cmd = app.add_subcommand("singular-series", "Euler products and ratios");
    auto* detect_cmd = app.add_subcommand("detect", "Lemma sums, ratio, translates");
    auto* bv_cmd = app.add_subcommand("bv-probe", "error aggregates over q");
    auto* quad_cmd = app.add_subcommand("quad", "quadratic-field error scans");
    auto* gaps_cmd = app.add_subcommand("gaps", "split-prime gap statistics");
    auto* check_cmd = app.add_subcommand("check-identities", "exact per-prime identity suite");
    for (auto* sub : {tuple_cmd, weights_cmd, ss_cmd, detect_cmd, bv_cmd, quad_cmd, gaps_cmd, check_cmd})
        add_common(sub);
    detect_cmd->add_option("--translate-limit", o.translate_limit, "max translates to report");
    bv_cmd->add_option("--theta-prime-grid", o.theta_grid, "theta' grid for the probe curve");
    bv_cmd->add_option("--log-power-B", o.log_power_B, "Q = x^theta'/(log x)^B");
    quad_cmd->add_option("--discriminant,--D", o.D, "fundamental discriminant");
    quad_cmd->add_flag("--assert-class-number-one", o.assert_h1,
                       "accept a real quadratic field on user assertion");
    quad_cmd->add_option("--q-max", o.q_max, "largest modulus scanned");
    gaps_cmd->add_option("--x-max", o.x_max, "scan bound");
    gaps_cmd->add_option("--discriminant,--D", o.D, "quadratic model (with --m 1 --a 0)");
    check_cmd->add_option("--p-max", o.p_max, "largest prime tested");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (tuple_cmd->parsed()) return run_tuple(o);
        if (weights_cmd->parsed()) return run_weights(o);
        if (ss_cmd->parsed()) return run_singular_series(o);
        if (detect_cmd->parsed()) return run_detect(o);
        if (bv_cmd->parsed()) return run_bv_probe(o);
        if (quad_cmd->parsed()) return run_quad(o);
        if (gaps_cmd->parsed()) return run_gaps(o);
        if (check_cmd->parsed()) return run_check_identities(o);
    } catch (const gpylab::resource_error& e) {
        std::cerr << "resource error: " << e.what() << '\n';
        return kExitResource;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitValidation;
}
