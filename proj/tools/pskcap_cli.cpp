// SPDX-License-Identifier: Apache-2.0
//
// pskcap - capacity of hard-decision detected PSK in the low-SNR regime
// Copyright (C) 2026 The pskcap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "pskcap/channel.hpp"
#include "pskcap/lowsnr.hpp"
#include "pskcap/oracle.hpp"
#include "pskcap/parallel.hpp"
#include "pskcap/report.hpp"
#include "pskcap/tradeoff.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace pskcap;

namespace
{

const std::vector<int> kFigureOrders{2, 3, 4, 8, 16, 32};

struct Options
{
    std::string channel = "awgn";
    std::optional<double> rician_k;
    std::optional<double> d2;
    std::optional<double> gamma2;
    std::optional<std::string> fading;
    std::optional<double> fading_k;
    std::optional<double> mean_square;
    std::vector<double> magnitudes;

    std::vector<int> orders;
    std::vector<double> snr_db;
    std::optional<double> snr_min_db;
    std::optional<double> snr_max_db;
    std::optional<int> points;

    double tol = kDefaultSectorTolerance;
    std::uint64_t seed = 42;
    std::uint64_t samples = 1000000;
    std::string format = "csv";
    std::string output;
    std::string input;
};

class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

void add_channel_options(CLI::App *cmd, Options &o)
{
    cmd->add_option("--channel", o.channel, "awgn, coherent or noncoherent")
        ->check(CLI::IsMember({"awgn", "coherent", "noncoherent"}));
    cmd->add_option("--rician-k", o.rician_k, "noncoherent Rician factor |d|^2/gamma^2 (unit power)");
    cmd->add_option("--d2", o.d2, "noncoherent line-of-sight power |d|^2");
    cmd->add_option("--gamma2", o.gamma2, "noncoherent scattered power gamma^2");
    cmd->add_option("--fading", o.fading, "coherent fading law: rayleigh, rician or empirical")
        ->check(CLI::IsMember({"rayleigh", "rician", "empirical"}));
    cmd->add_option("--fading-k", o.fading_k, "coherent Rician K factor");
    cmd->add_option("--mean-square", o.mean_square, "coherent E|h|^2 (rayleigh, rician)");
    cmd->add_option("--magnitudes", o.magnitudes, "coherent empirical |h| values")->delimiter(',');
}

void add_orders(CLI::App *cmd, Options &o, bool required)
{
    auto *opt = cmd->add_option("-M,--order", o.orders, "constellation size(s)")->delimiter(',')->check(
        CLI::Range(2, 1 << 20));
    if (required)
        opt->required();
}

void add_snr_grid(CLI::App *cmd, Options &o)
{
    cmd->add_option("--snr-db", o.snr_db, "SNR values in dB")->delimiter(',');
    cmd->add_option("--snr-min-db", o.snr_min_db, "grid start in dB");
    cmd->add_option("--snr-max-db", o.snr_max_db, "grid end in dB");
    cmd->add_option("--points", o.points, "grid size");
}

void add_output(CLI::App *cmd, Options &o)
{
    cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("-o,--output", o.output, "output file (directory for multi-M CSV tradeoffs)");
}

ChannelModel build_channel(const Options &o)
{
    const bool nc_opts = o.rician_k || o.d2 || o.gamma2;
    const bool fading_opts = o.fading || o.fading_k || o.mean_square || !o.magnitudes.empty();

    if (o.channel == "awgn")
    {
        if (nc_opts || fading_opts)
            throw UsageError("AWGN channel takes no fading or Rician parameters");
        return ChannelModel::awgn();
    }
    if (o.channel == "noncoherent")
    {
        if (fading_opts)
            throw UsageError("--fading/--fading-k/--mean-square/--magnitudes apply to the coherent channel");
        if (o.rician_k && (o.d2 || o.gamma2))
            throw UsageError("give either --rician-k or --d2/--gamma2, not both");
        if (o.d2 || o.gamma2)
        {
            if (!(o.d2 && o.gamma2))
                throw UsageError("--d2 and --gamma2 must be given together");
            if (!(*o.d2 > 0.0) || !(*o.gamma2 >= 0.0))
                throw UsageError("need --d2 > 0 and --gamma2 >= 0");
            return ChannelModel::noncoherent(std::sqrt(*o.d2), *o.gamma2);
        }
        return ChannelModel::noncoherent_from_k(o.rician_k.value_or(1.0));
    }

    if (nc_opts)
        throw UsageError("--rician-k/--d2/--gamma2 apply to the noncoherent channel; use --fading-k for coherent Rician");
    const std::string law = o.fading.value_or("rayleigh");
    if (law == "rayleigh")
    {
        if (o.fading_k || !o.magnitudes.empty())
            throw UsageError("Rayleigh fading takes only --mean-square");
        return ChannelModel::coherent(FadingLaw::rayleigh(o.mean_square.value_or(1.0)));
    }
    if (law == "rician")
    {
        if (!o.fading_k)
            throw UsageError("Rician fading needs --fading-k");
        if (!o.magnitudes.empty())
            throw UsageError("--magnitudes applies to empirical fading");
        return ChannelModel::coherent(FadingLaw::rician(*o.fading_k, o.mean_square.value_or(1.0)));
    }
    if (o.fading_k || o.mean_square)
        throw UsageError("empirical fading takes only --magnitudes");
    if (o.magnitudes.empty())
        throw UsageError("empirical fading needs --magnitudes");
    return ChannelModel::coherent(FadingLaw::empirical(o.magnitudes));
}

std::vector<double> snr_grid(const Options &o, double lo_db, double hi_db, int points)
{
    const bool range = o.snr_min_db || o.snr_max_db || o.points;
    if (!o.snr_db.empty())
    {
        if (range)
            throw UsageError("give either --snr-db or --snr-min-db/--snr-max-db/--points");
        std::vector<double> out;
        for (double db : o.snr_db)
            out.push_back(from_db(db));
        return out;
    }
    lo_db = o.snr_min_db.value_or(lo_db);
    hi_db = o.snr_max_db.value_or(hi_db);
    points = o.points.value_or(points);
    if (!(lo_db < hi_db))
        throw UsageError("--snr-min-db must be below --snr-max-db");
    if (points < 2)
        throw UsageError("--points must be at least 2");
    std::vector<double> out;
    for (int i = 0; i < points; ++i)
        out.push_back(from_db(lo_db + (hi_db - lo_db) * i / (points - 1)));
    return out;
}

std::vector<double> sorted_grid(std::vector<double> grid)
{
    std::sort(grid.begin(), grid.end());
    if (std::adjacent_find(grid.begin(), grid.end()) != grid.end())
        throw UsageError("SNR values must be distinct");
    return grid;
}

// Writes to --output or stdout; throws if the file cannot be opened.
void emit(const Options &o, const std::string &text)
{
    if (o.output.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream f(o.output, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot write " + o.output);
    f << text;
    if (!f)
        throw std::runtime_error("error writing " + o.output);
}

std::string csv_line(std::initializer_list<std::string> fields)
{
    std::string line;
    for (const auto &f : fields)
    {
        if (!line.empty())
            line += ',';
        line += f;
    }
    return line + '\n';
}

std::string num(double v) { return format_number(v); }

std::string ext_string(const ExtendedReal &x) { return x.to_string(); }

json ext_json(const ExtendedReal &x) { return json_number(x.as_double()); }

int cmd_capacity(const Options &o)
{
    const auto model = build_channel(o);
    const auto grid = snr_grid(o, -20.0, 20.0, 41);
    std::vector<int> orders = o.orders;
    std::vector<double> caps(orders.size() * grid.size());
    parallel_for(caps.size(), [&](std::size_t i) {
        caps[i] = capacity(model, ModulationOrder(orders[i / grid.size()]), grid[i % grid.size()], o.tol);
    });

    if (o.format == "json")
    {
        json rows = json::array();
        for (std::size_t i = 0; i < caps.size(); ++i)
        {
            const double s = grid[i % grid.size()];
            rows.push_back({{"m", orders[i / grid.size()]},
                            {"snr", json_number(s)},
                            {"snr_db", json_number(to_db(s))},
                            {"capacity_nats", json_number(caps[i])},
                            {"capacity_bits", json_number(caps[i] * std::numbers::log2e)}});
        }
        emit(o, json{{"channel", model.describe()}, {"capacity", rows}}.dump(2) + "\n");
        return 0;
    }
    std::string out = csv_line({"m", "snr", "snr_db", "capacity_nats", "capacity_bits"});
    for (std::size_t i = 0; i < caps.size(); ++i)
    {
        const double s = grid[i % grid.size()];
        out += csv_line({std::to_string(orders[i / grid.size()]), num(s), num(to_db(s)), num(caps[i]),
                         num(caps[i] * std::numbers::log2e)});
    }
    emit(o, out);
    return 0;
}

int cmd_derivatives(const Options &o)
{
    const auto model = build_channel(o);
    json rows = json::array();
    std::string out = csv_line({"m", "phi1", "phi2", "phi3", "cdot0", "cddot0", "eb0_db", "slope", "min_eb_db",
                                "se_at_min"});
    for (int m : o.orders)
    {
        const ModulationOrder order(m);
        const auto e = derivatives_at_zero(model, order);
        const auto w = wideband_summary(model, order);
        rows.push_back({{"m", m},
                        {"phi1", json_number(e.phi1)},
                        {"phi2", json_number(e.phi2)},
                        {"phi3", json_number(e.phi3)},
                        {"cdot0", json_number(e.cdot0)},
                        {"cddot0", ext_json(e.cddot0)},
                        {"eb0_db", json_number(w.eb0_db)},
                        {"slope", json_number(w.slope)},
                        {"min_eb_db", json_number(w.min_eb_db)},
                        {"se_at_min", json_number(w.se_at_min)}});
        out += csv_line({std::to_string(m), num(e.phi1), num(e.phi2), num(e.phi3), num(e.cdot0),
                         ext_string(e.cddot0), num(w.eb0_db), num(w.slope), num(w.min_eb_db), num(w.se_at_min)});
    }
    if (o.format == "json")
        emit(o, json{{"channel", model.describe()}, {"derivatives", rows}}.dump(2) + "\n");
    else
        emit(o, out);
    return 0;
}

TradeoffReport compute_tradeoffs(const Options &o, const std::vector<int> &orders)
{
    const auto model = build_channel(o);
    const auto grid = sorted_grid(snr_grid(o, -40.0, 10.0, 101));
    TradeoffReport report{model.describe(), {}};
    report.curves.resize(orders.size());
    std::vector<TradeoffPoint> pts(orders.size() * grid.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        pts[i] = tradeoff_point(model, ModulationOrder(orders[i / grid.size()]), grid[i % grid.size()], o.tol);
    });
    for (std::size_t k = 0; k < orders.size(); ++k)
    {
        report.curves[k].m = orders[k];
        report.curves[k].points.assign(pts.begin() + k * grid.size(), pts.begin() + (k + 1) * grid.size());
    }
    return report;
}

TradeoffReport read_report(const std::string &path)
{
    std::ifstream f(path);
    if (!f)
        throw std::runtime_error("cannot read " + path);
    return tradeoff_report_from_json(json::parse(f));
}

int cmd_tradeoff(const Options &o, bool sweep)
{
    TradeoffReport report;
    if (!o.input.empty())
    {
        if (!o.orders.empty() || !o.snr_db.empty() || o.snr_min_db || o.snr_max_db || o.points)
            throw UsageError("--input replaces -M and the SNR grid");
        report = read_report(o.input);
    }
    else
    {
        std::vector<int> orders = o.orders;
        if (orders.empty())
        {
            if (!sweep)
                throw UsageError("tradeoff needs -M");
            orders = kFigureOrders;
        }
        report = compute_tradeoffs(o, orders);
    }

    if (o.format == "json")
    {
        emit(o, to_json(report).dump(2) + "\n");
        return 0;
    }

    auto csv_of = [](const TradeoffCurve &c) {
        std::ostringstream os;
        write_tradeoff_csv(os, c.points);
        return os.str();
    };
    const bool to_dir = !o.output.empty() && (report.curves.size() > 1 || fs::is_directory(o.output));
    if (!to_dir)
    {
        if (report.curves.size() != 1)
            throw UsageError("CSV output for several M needs --output DIR (one file per M), or use --format json");
        emit(o, csv_of(report.curves.front()));
        return 0;
    }
    std::error_code ec;
    fs::create_directories(o.output, ec);
    if (!fs::is_directory(o.output))
        throw std::runtime_error("cannot create directory " + o.output);
    for (const auto &c : report.curves)
    {
        const fs::path p = fs::path(o.output) / ("tradeoff_M" + std::to_string(c.m) + ".csv");
        std::ofstream f(p, std::ios::binary);
        if (!f)
            throw std::runtime_error("cannot write " + p.string());
        f << csv_of(c);
        std::cerr << "wrote " << p.string() << "\n";
    }
    return 0;
}

int cmd_crossing(const Options &o)
{
    if (o.orders.size() != 2)
        throw UsageError("crossing needs exactly two orders, e.g. -M 3,2");
    const auto model = build_channel(o);
    const ModulationOrder a(o.orders[0]);
    const ModulationOrder b(o.orders[1]);
    const auto se = crossing_bit_energy(model, a, model, b);
    const std::optional<double> eb = se ? std::optional(eb_n0_db_at_se(model, a, *se)) : std::nullopt;

    if (o.format == "json")
    {
        json j{{"channel", model.describe()}, {"m_a", a.count()}, {"m_b", b.count()}};
        j["crossing_se"] = se ? json_number(*se) : json(nullptr);
        j["eb_n0_db"] = eb ? json_number(*eb) : json(nullptr);
        emit(o, j.dump(2) + "\n");
    }
    else
        emit(o, csv_line({"m_a", "m_b", "crossing_se", "eb_n0_db"}) +
                    csv_line({std::to_string(a.count()), std::to_string(b.count()), se ? num(*se) : "none",
                              eb ? num(*eb) : "none"}));
    return 0;
}

int cmd_limits(const Options &o)
{
    const auto model = build_channel(o);
    const auto lim = asymptotic_limits(model);
    const double eb0 = 10.0 * std::log10(model.received_snr_factor() * std::numbers::ln2 / lim.cdot);
    const double slope = 2.0 * lim.cdot * lim.cdot / -lim.cddot;
    if (o.format == "json")
        emit(o, json{{"channel", model.describe()},
                     {"cdot", json_number(lim.cdot)},
                     {"cddot", json_number(lim.cddot)},
                     {"eb0_db", json_number(eb0)},
                     {"slope", json_number(slope)}}
                        .dump(2) +
                    "\n");
    else
        emit(o, csv_line({"cdot", "cddot", "eb0_db", "slope"}) + csv_line({num(lim.cdot), num(lim.cddot), num(eb0),
                                                                          num(slope)}));
    return 0;
}

struct FitCheck
{
    int m;
    std::string coefficient;
    double fitted;
    double expected;
    double tolerance;
    bool relative;
    bool pass;
};

std::vector<FitCheck> fit_checks(const ChannelModel &model, const std::vector<int> &orders)
{
    const auto grid = geometric_grid(1e-6, 1e-3, 16);
    std::vector<FitCheck> out;
    auto check = [&](int m, const char *name, double fitted, double expected, double tol, bool rel) {
        const double err = std::abs(fitted - expected);
        out.push_back({m, name, fitted, expected, tol, rel, err <= (rel ? tol * std::abs(expected) : tol)});
    };
    for (int m : orders)
    {
        const ModulationOrder order(m);
        const auto e = derivatives_at_zero(model, order);
        const auto f = fit_low_snr_coefficients(model, order, grid);
        check(m, "phi1", f.phi1, e.phi1, 1e-3, true);
        if (m == 3)
            check(m, "phi2", f.phi2, e.phi2, 2e-2, true);
        else
        {
            check(m, "phi2", f.phi2, 0.0, 1e-3, false);
            check(m, "phi3", f.phi3, e.phi3, 1e-2, true);
        }
    }
    return out;
}

int cmd_verify(const Options &o)
{
    if (o.samples < kMinMcSamples)
        throw UsageError("--samples must be at least " + std::to_string(kMinMcSamples));

    std::vector<McConfig> suite;
    std::vector<int> fit_orders;
    ChannelModel fit_model = ChannelModel::awgn();
    const bool custom = !o.orders.empty() || !o.snr_db.empty() || o.snr_min_db || o.snr_max_db || o.points ||
                        o.channel != "awgn";
    if (custom)
    {
        const auto model = build_channel(o);
        const std::vector<int> orders = o.orders.empty() ? std::vector<int>{2, 3, 8} : o.orders;
        const auto grid = o.snr_db.empty() && !(o.snr_min_db || o.snr_max_db || o.points)
                              ? std::vector<double>{1.0}
                              : snr_grid(o, 0.0, 0.0, 2);
        for (int m : orders)
            for (double s : grid)
                suite.push_back({model.describe() + " M=" + std::to_string(m) + " snr_db=" + num(to_db(s)), model,
                                 ModulationOrder(m), s});
        fit_model = model;
        fit_orders = orders;
    }
    else
    {
        suite = standard_mc_suite();
        fit_orders = {2, 3, 4, 8};
    }

    const auto mc = run_mc_suite(suite, o.samples, o.seed);
    const auto fits = fit_checks(fit_model, fit_orders);
    bool ok = mc.passed;
    for (const auto &f : fits)
        ok = ok && f.pass;

    if (o.format == "json")
    {
        json runs = json::array();
        for (const auto &run : mc.runs)
        {
            json entries = json::array();
            for (const auto &e : run.entries)
                entries.push_back({{"config", suite[e.config].label},
                                   {"symbol", e.symbol},
                                   {"estimate", json_number(e.estimate)},
                                   {"reference", json_number(e.reference)},
                                   {"sigma", json_number(e.sigma)},
                                   {"pass", e.pass}});
            runs.push_back({{"seed", run.seed}, {"failures", run.failures}, {"entries", entries}});
        }
        json fj = json::array();
        for (const auto &f : fits)
            fj.push_back({{"m", f.m},
                          {"coefficient", f.coefficient},
                          {"fitted", json_number(f.fitted)},
                          {"expected", json_number(f.expected)},
                          {"tolerance", json_number(f.tolerance)},
                          {"relative", f.relative},
                          {"pass", f.pass}});
        emit(o, json{{"samples", o.samples}, {"monte_carlo", runs}, {"fits", fj}, {"passed", ok}}.dump(2) + "\n");
    }
    else
    {
        std::string out = csv_line({"check", "seed", "config", "symbol", "estimate", "reference", "sigma", "result"});
        for (const auto &run : mc.runs)
            for (const auto &e : run.entries)
                out += csv_line({"mc", std::to_string(run.seed), suite[e.config].label, std::to_string(e.symbol),
                                 num(e.estimate), num(e.reference), num(e.sigma), e.pass ? "PASS" : "FAIL"});
        for (const auto &f : fits)
            out += csv_line({"fit", "", "M=" + std::to_string(f.m), f.coefficient, num(f.fitted), num(f.expected),
                             num(f.tolerance) + (f.relative ? " rel" : " abs"), f.pass ? "PASS" : "FAIL"});
        emit(o, out);
    }
    if (mc.runs.size() > 1)
        std::cerr << "note: first seed had " << mc.runs.front().failures << " failing entry; re-ran with seed "
                  << mc.runs.back().seed << "\n";
    if (!ok)
        std::cerr << "verification FAILED\n";
    return ok ? 0 : 2;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Capacity of hard-decision detected PSK over AWGN and fading channels"};
    app.require_subcommand(1);
    Options o;

    auto *cap = app.add_subcommand("capacity", "capacity in nats and bits over an SNR grid");
    auto *der = app.add_subcommand("derivatives", "low-SNR derivatives, zero-SE bit energy and wideband slope");
    auto *tra = app.add_subcommand("tradeoff", "spectral efficiency vs bit energy");
    auto *swe = app.add_subcommand("sweep", "tradeoff curves for M = 2,3,4,8,16,32 (default)");
    auto *cro = app.add_subcommand("crossing", "spectral efficiency where two curves cross");
    auto *ver = app.add_subcommand("verify", "Monte Carlo and fit checks against quadrature");
    auto *lim = app.add_subcommand("limits", "M -> infinity constants");

    for (auto *cmd : {cap, der, tra, swe, cro, ver, lim})
    {
        add_channel_options(cmd, o);
        add_output(cmd, o);
    }
    add_orders(cap, o, true);
    add_orders(der, o, true);
    add_orders(tra, o, false);
    add_orders(swe, o, false);
    add_orders(cro, o, true);
    add_orders(ver, o, false);
    for (auto *cmd : {cap, tra, swe, ver})
        add_snr_grid(cmd, o);
    for (auto *cmd : {cap, tra, swe, cro})
        cmd->add_option("--tol", o.tol, "per-sector quadrature tolerance")->check(CLI::PositiveNumber);
    for (auto *cmd : {tra, swe})
        cmd->add_option("--input", o.input, "re-emit a JSON report produced earlier");
    ver->add_option("--seed", o.seed, "Monte Carlo seed");
    ver->add_option("--samples", o.samples, "samples per configuration");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (cap->parsed())
            return cmd_capacity(o);
        if (der->parsed())
            return cmd_derivatives(o);
        if (tra->parsed())
            return cmd_tradeoff(o, false);
        if (swe->parsed())
            return cmd_tradeoff(o, true);
        if (cro->parsed())
            return cmd_crossing(o);
        if (ver->parsed())
            return cmd_verify(o);
        if (lim->parsed())
            return cmd_limits(o);
    }
    catch (const UsageError &e)
    {
        std::cerr << "pskcap: " << e.what() << "\n";
        return 64;
    }
    catch (const std::exception &e)
    {
        std::cerr << "pskcap: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
