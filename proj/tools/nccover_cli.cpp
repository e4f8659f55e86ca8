#include <chrono>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "experiments.hpp"

using namespace nccover;
using namespace nccover::cli;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string dashed(std::string s) {
    for (auto& c : s)
        if (c == '_') c = '-';
    return s;
}

const Param& find_param(const Experiment& e, const std::string& key) {
    for (const auto& p : e.params)
        if (p.name == key) return p;
    throw Error(ErrorCode::ConfigInvalid, "unknown key '" + key + "' for " + e.name);
}

json load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot read config " + path);
    try {
        json j = json::parse(in);
        if (!j.is_object()) throw Error(ErrorCode::ConfigInvalid, "config must be a JSON object");
        return j;
    } catch (const json::exception& ex) {
        throw Error(ErrorCode::ConfigInvalid, std::string("config parse error: ") + ex.what());
    }
}

struct Invocation {
    std::string preset, config, out, csv_dir;
    std::uint64_t seed = 1;
    std::map<std::string, std::string> flags;
};

int run(const Experiment& e, const Invocation& inv, CLI::App* sub) {
    json params = json::object();
    for (const auto& p : e.params) params[p.name] = p.fallback;
    std::uint64_t seed = inv.seed;
    if (!inv.preset.empty()) {
        for (const auto& [k, v] : e.presets.at(inv.preset).items()) params[k] = coerce(find_param(e, k), v);
    }
    if (!inv.config.empty()) {
        const json config = load_config(inv.config);
        for (const auto& [k, v] : config.items()) {
            if (k == "seed") {
                if (!v.is_number_unsigned()) throw Error(ErrorCode::ConfigInvalid, "seed must be a non-negative integer");
                if (sub->get_option("--seed")->count() == 0) seed = v.get<std::uint64_t>();
                continue;
            }
            params[k] = coerce(find_param(e, k), v);
        }
    }
    for (const auto& p : e.params)
        if (sub->get_option("--" + dashed(p.name))->count() > 0) params[p.name] = coerce_text(p, inv.flags.at(p.name));

    const auto start = std::chrono::steady_clock::now();
    Outcome o = e.run(params, seed);
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    bool pass = true;
    for (const auto& [k, v] : o.checks.items()) pass = pass && v.get<bool>();
    json report = {{"schema", 1},       {"experiment", e.name}, {"seed", seed},  {"params", params},
                   {"results", o.results}, {"checks", o.checks}, {"pass", pass}, {"wall_time_s", wall}};
    const auto written = emit_plotdata(e.name, o.series, inv.csv_dir);
    if (!written.empty()) {
        report["csv"] = json::array();
        for (const auto& w : written) report["csv"].push_back(w);
    }
    const std::string text = report.dump(2);
    std::cout << text << "\n";
    if (!inv.out.empty()) {
        std::ofstream f(inv.out);
        if (!f) throw Error(ErrorCode::ConfigInvalid, "cannot write " + inv.out);
        f << text << "\n";
    }
    return pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical checks for finite noncommutative coverings"};
    app.require_subcommand(1);
    Invocation inv;
    std::vector<std::pair<const Experiment*, CLI::App*>> subs;
    for (const auto& e : experiments()) {
        CLI::App* sub = app.add_subcommand(e.name, e.help);
        std::vector<std::string> presets;
        for (const auto& [k, v] : e.presets) presets.push_back(k);
        sub->add_option("--preset", inv.preset, "named parameter set")->check(CLI::IsMember(presets));
        sub->add_option("--seed", inv.seed, "random seed (default 1)");
        sub->add_option("--config", inv.config, "JSON object of parameters; flags take precedence");
        sub->add_option("--out", inv.out, "also write the JSON report to this file");
        sub->add_option("--csv-dir", inv.csv_dir, "directory for plot data");
        for (const auto& p : e.params)
            sub->add_option("--" + dashed(p.name), inv.flags[p.name], p.help + " [" + p.fallback.dump() + "]");
        subs.emplace_back(&e, sub);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& ex) {
        const int rc = app.exit(ex);
        return rc == 0 ? 0 : kExitConfig;
    }
    for (const auto& [e, sub] : subs) {
        if (!sub->parsed()) continue;
        try {
            return run(*e, inv, sub);
        } catch (const Error& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return ex.code() == ErrorCode::ConfigInvalid ? kExitConfig : kExitNumerical;
        } catch (const std::exception& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return kExitNumerical;
        }
    }
    return kExitConfig;
}
