#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "nccover/io.hpp"

namespace nccover::cli {

// One tunable parameter. Numbers are range checked; strings with choices are enumerated.
struct Param {
    std::string name;
    json fallback;
    double lo = 0.0, hi = 0.0;
    std::vector<std::string> choices;
    std::string help;
};

struct Series {
    std::string name;
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

struct Outcome {
    json results = json::object();
    json checks = json::object();
    std::vector<Series> series;

    void check(const std::string& name, bool ok) { checks[name] = ok; }
};

struct Experiment {
    std::string name;
    std::string help;
    std::vector<Param> params;
    std::map<std::string, json> presets;  // always includes "smoke"
    std::function<Outcome(const json& params, std::uint64_t seed)> run;
};

const std::vector<Experiment>& experiments();

// Parse a flag or config value against a parameter's type and range. Throws ConfigInvalid.
json coerce(const Param& p, const json& value);
json coerce_text(const Param& p, const std::string& text);

// Writes <dir>/<experiment>_<series>.csv for every non-empty series; returns the paths written.
std::vector<std::string> emit_plotdata(const std::string& experiment, const std::vector<Series>& series,
                                       const std::string& dir);

}  // namespace nccover::cli
