#pragma once

#include <cctype>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "alv/csv.hpp"
#include "alv/errors.hpp"
#include "alv/simulation.hpp"

namespace alv {

// Scenario files are INI-style: [section] headers, key = value lines,
// '#' or ';' comments. Unknown sections or keys are rejected; missing
// keys keep the built-in defaults, so an empty file is the default
// scenario.
//
// Sections and keys:
//   [simulation]  duration, dt, use_gyro, initial_q
//   [reference]   times (s, list), rates_deg (deg/s, list)
//   [schedule]    file (CSV path, relative to the scenario file)
//   [disturbance] f11, f12, matched - each 'none' or a list of
//                 step(t0,amp) ramp(t0,slope) sine(amp,freq_hz[,phase_rad])
//   [csm]         K, rho, epsilon
//   [dsm]         rho, epsilon, wn, wn_is_hz, resolve_period

namespace detail_ini {

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

inline double parse_num(const std::string& v, int line, const std::string& key) {
    char* end = nullptr;
    const double x = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw config_error("line " + std::to_string(line) + ": key '" + key +
                           "': not a number: '" + v + "'");
    return x;
}

inline bool parse_bool(const std::string& v, int line, const std::string& key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw config_error("line " + std::to_string(line) + ": key '" + key +
                       "': expected true/false, got '" + v + "'");
}

inline std::vector<double> parse_list(const std::string& v, int line,
                                      const std::string& key) {
    std::vector<double> out;
    std::string cur;
    auto flush = [&] {
        if (!cur.empty()) {
            out.push_back(parse_num(cur, line, key));
            cur.clear();
        }
    };
    for (char ch : v) {
        if (ch == ',' || std::isspace(static_cast<unsigned char>(ch)))
            flush();
        else
            cur.push_back(ch);
    }
    flush();
    if (out.empty())
        throw config_error("line " + std::to_string(line) + ": key '" + key +
                           "': empty list");
    return out;
}

// Primitive list: whitespace-separated name(arg,arg[,arg]) terms, or 'none'.
inline std::vector<DisturbancePrimitive> parse_primitives(const std::string& v, int line,
                                                          const std::string& key) {
    std::vector<DisturbancePrimitive> out;
    const std::string body = trim(v);
    if (body.empty() || body == "none") return out;

    std::size_t i = 0;
    while (i < body.size()) {
        while (i < body.size() && std::isspace(static_cast<unsigned char>(body[i]))) ++i;
        if (i >= body.size()) break;
        const std::size_t open = body.find('(', i);
        const std::size_t close = body.find(')', i);
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw config_error("line " + std::to_string(line) + ": key '" + key +
                               "': expected name(args) primitives");
        const std::string name = trim(body.substr(i, open - i));
        std::vector<double> args;
        std::string argstr = body.substr(open + 1, close - open - 1);
        std::stringstream ss(argstr);
        std::string tok;
        while (std::getline(ss, tok, ',')) args.push_back(parse_num(trim(tok), line, key));

        DisturbancePrimitive p;
        if (name == "step" && args.size() == 2) {
            p = {DisturbancePrimitive::Kind::Step, args[0], args[1], 0.0};
        } else if (name == "ramp" && args.size() == 2) {
            p = {DisturbancePrimitive::Kind::Ramp, args[0], args[1], 0.0};
        } else if (name == "sine" && (args.size() == 2 || args.size() == 3)) {
            p = {DisturbancePrimitive::Kind::Sine, args[0], args[1],
                 args.size() == 3 ? args[2] : 0.0};
        } else {
            throw config_error("line " + std::to_string(line) + ": key '" + key +
                               "': unknown primitive '" + name + "' or wrong arity");
        }
        out.push_back(p);
        i = close + 1;
    }
    return out;
}

}  // namespace detail_ini

inline Scenario parse_scenario_ini(std::istream& is,
                                   const std::filesystem::path& base_dir) {
    using namespace detail_ini;
    Scenario sc;  // defaults; an empty file is the default scenario
    std::vector<double> ref_times, ref_rates;
    bool have_ref_times = false, have_ref_rates = false;

    std::string section, line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t cut = line.find_first_of("#;");
        if (cut != std::string::npos) line.resize(cut);
        const std::string body = trim(line);
        if (body.empty()) continue;

        if (body.front() == '[') {
            if (body.back() != ']')
                throw config_error("line " + std::to_string(lineno) +
                                   ": malformed section header");
            section = trim(body.substr(1, body.size() - 2));
            if (section != "simulation" && section != "reference" &&
                section != "schedule" && section != "disturbance" &&
                section != "csm" && section != "dsm")
                throw config_error("line " + std::to_string(lineno) +
                                   ": unknown section [" + section + "]");
            continue;
        }

        const std::size_t eq = body.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) +
                               ": expected key = value");
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        const std::string qual = section + "." + key;

        if (qual == "simulation.duration") {
            sc.duration = parse_num(value, lineno, qual);
        } else if (qual == "simulation.dt") {
            sc.dt = parse_num(value, lineno, qual);
        } else if (qual == "simulation.use_gyro") {
            sc.use_gyro = parse_bool(value, lineno, qual);
        } else if (qual == "simulation.initial_q") {
            sc.initial_q = parse_num(value, lineno, qual);
        } else if (qual == "reference.times") {
            ref_times = parse_list(value, lineno, qual);
            have_ref_times = true;
        } else if (qual == "reference.rates_deg") {
            ref_rates = parse_list(value, lineno, qual);
            have_ref_rates = true;
        } else if (qual == "schedule.file") {
            const std::filesystem::path p =
                std::filesystem::path(value).is_absolute()
                    ? std::filesystem::path(value)
                    : base_dir / value;
            std::ifstream f(p);
            if (!f)
                throw config_error("line " + std::to_string(lineno) +
                                   ": cannot open schedule file '" + p.string() + "'");
            sc.schedule = parse_schedule_csv(f);
        } else if (qual == "disturbance.f11") {
            sc.disturbance.f11 = parse_primitives(value, lineno, qual);
        } else if (qual == "disturbance.f12") {
            sc.disturbance.f12 = parse_primitives(value, lineno, qual);
        } else if (qual == "disturbance.matched") {
            sc.disturbance.matched = parse_primitives(value, lineno, qual);
        } else if (qual == "csm.K") {
            sc.csm.K = parse_num(value, lineno, qual);
        } else if (qual == "csm.rho") {
            sc.csm.rho = parse_num(value, lineno, qual);
        } else if (qual == "csm.epsilon") {
            sc.csm.epsilon = parse_num(value, lineno, qual);
        } else if (qual == "dsm.rho") {
            sc.dsm.rho = parse_num(value, lineno, qual);
        } else if (qual == "dsm.epsilon") {
            sc.dsm.epsilon = parse_num(value, lineno, qual);
        } else if (qual == "dsm.wn") {
            sc.dsm.wn = parse_num(value, lineno, qual);
        } else if (qual == "dsm.wn_is_hz") {
            sc.dsm.wn_is_hz = parse_bool(value, lineno, qual);
        } else if (qual == "dsm.resolve_period") {
            sc.dsm.resolve_period = parse_num(value, lineno, qual);
        } else {
            throw config_error("line " + std::to_string(lineno) + ": unknown key '" +
                               qual + "'");
        }
    }

    if (have_ref_times != have_ref_rates)
        throw config_error("reference: times and rates_deg must be given together");
    if (have_ref_times) {
        if (ref_times.size() != ref_rates.size())
            throw config_error("reference: times and rates_deg differ in length");
        for (double& r : ref_rates) r *= std::numbers::pi / 180.0;
        try {
            sc.reference = ReferenceProgram(ref_times, ref_rates);
        } catch (const invalid_input& e) {
            throw config_error(e.what());
        }
    }

    validate_scenario(sc);
    return sc;
}

inline Scenario load_scenario_file(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open scenario file '" + path.string() + "'");
    return parse_scenario_ini(f, path.parent_path());
}

}  // namespace alv
