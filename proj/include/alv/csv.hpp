#pragma once

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "alv/coefficients.hpp"
#include "alv/errors.hpp"
#include "alv/simulation.hpp"

namespace alv {

// 17 significant digits round-trip any double exactly.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view s, const std::string& where) {
    std::string tmp(s);
    char* end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (end != tmp.c_str() + tmp.size() || tmp.empty())
        throw config_error(where + ": not a number: '" + tmp + "'");
    return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

inline constexpr const char* kTrajectoryHeaderCsm =
    "t,v_z,q,theta,delta,delta_c,q_meas,q_c,theta_c,e_q,e_theta,S,f11,f12";
inline constexpr const char* kTrajectoryHeaderDsm =
    "t,v_z,q,theta,delta,delta_c,q_meas,q_c,theta_c,e_q,e_theta,S,f11,f12,a2,a3,b2,residual";

inline void write_trajectory_csv(std::ostream& os, const TrajectoryLog& log) {
    const bool dsm = log.controller == ControllerKind::Dsm;
    os << (dsm ? kTrajectoryHeaderDsm : kTrajectoryHeaderCsm) << "\n";
    for (const auto& r : log.rows) {
        os << format_double(r.t) << ',' << format_double(r.v_z) << ','
           << format_double(r.q) << ',' << format_double(r.theta) << ','
           << format_double(r.delta) << ',' << format_double(r.delta_c) << ','
           << format_double(r.q_meas) << ',' << format_double(r.q_c) << ','
           << format_double(r.theta_c) << ',' << format_double(r.e_q) << ','
           << format_double(r.e_theta) << ',' << format_double(r.S) << ','
           << format_double(r.f11) << ',' << format_double(r.f12);
        if (dsm)
            os << ',' << format_double(r.a2) << ',' << format_double(r.a3) << ','
               << format_double(r.b2) << ',' << format_double(r.residual);
        os << "\n";
    }
}

inline TrajectoryLog parse_trajectory_csv(std::istream& is) {
    TrajectoryLog log;
    std::string line;
    if (!std::getline(is, line)) throw config_error("trajectory csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    bool dsm;
    if (line == kTrajectoryHeaderDsm) {
        dsm = true;
    } else if (line == kTrajectoryHeaderCsm) {
        dsm = false;
    } else {
        throw config_error("trajectory csv: unrecognized header");
    }
    log.controller = dsm ? ControllerKind::Dsm : ControllerKind::Csm;
    const std::size_t ncols = dsm ? 18 : 14;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != ncols)
            throw config_error("trajectory csv line " + std::to_string(lineno) +
                               ": expected " + std::to_string(ncols) + " fields");
        const std::string where = "trajectory csv line " + std::to_string(lineno);
        TrajectoryRow r;
        r.t = parse_double(f[0], where);
        r.v_z = parse_double(f[1], where);
        r.q = parse_double(f[2], where);
        r.theta = parse_double(f[3], where);
        r.delta = parse_double(f[4], where);
        r.delta_c = parse_double(f[5], where);
        r.q_meas = parse_double(f[6], where);
        r.q_c = parse_double(f[7], where);
        r.theta_c = parse_double(f[8], where);
        r.e_q = parse_double(f[9], where);
        r.e_theta = parse_double(f[10], where);
        r.S = parse_double(f[11], where);
        r.f11 = parse_double(f[12], where);
        r.f12 = parse_double(f[13], where);
        if (dsm) {
            r.a2 = parse_double(f[14], where);
            r.a3 = parse_double(f[15], where);
            r.b2 = parse_double(f[16], where);
            r.residual = parse_double(f[17], where);
        }
        log.rows.push_back(r);
    }
    return log;
}

inline constexpr const char* kMetricsHeader =
    "rms_e_q,max_abs_e_q,rms_e_theta,max_abs_e_theta,control_rms,"
    "reachability_violations,final_e_theta";

inline void write_metrics_csv(std::ostream& os, const Metrics& m) {
    os << kMetricsHeader << "\n"
       << format_double(m.rms_e_q) << ',' << format_double(m.max_abs_e_q) << ','
       << format_double(m.rms_e_theta) << ',' << format_double(m.max_abs_e_theta) << ','
       << format_double(m.control_rms) << ','
       << format_double(m.reachability_violations) << ','
       << format_double(m.final_e_theta) << "\n";
}

inline Metrics parse_metrics_csv(std::istream& is) {
    std::string header, line;
    if (!std::getline(is, header)) throw config_error("metrics csv: empty file");
    if (!header.empty() && header.back() == '\r') header.pop_back();
    if (header != kMetricsHeader) throw config_error("metrics csv: unrecognized header");
    if (!std::getline(is, line)) throw config_error("metrics csv: missing data row");
    const auto f = split_csv_line(line);
    if (f.size() != 7) throw config_error("metrics csv: expected 7 fields");
    Metrics m;
    m.rms_e_q = parse_double(f[0], "metrics csv");
    m.max_abs_e_q = parse_double(f[1], "metrics csv");
    m.rms_e_theta = parse_double(f[2], "metrics csv");
    m.max_abs_e_theta = parse_double(f[3], "metrics csv");
    m.control_rms = parse_double(f[4], "metrics csv");
    m.reachability_violations = parse_double(f[5], "metrics csv");
    m.final_e_theta = parse_double(f[6], "metrics csv");
    return m;
}

inline constexpr const char* kCoefficientHeader = "t,a2,a3,b2,residual,condition,accepted";

inline void write_coefficients_csv(std::ostream& os,
                                   const std::vector<DsmCoefficientRecord>& recs) {
    os << kCoefficientHeader << "\n";
    for (const auto& r : recs)
        os << format_double(r.t) << ',' << format_double(r.a2) << ','
           << format_double(r.a3) << ',' << format_double(r.b2) << ','
           << format_double(r.residual) << ',' << format_double(r.condition) << ','
           << r.accepted << "\n";
}

inline std::vector<DsmCoefficientRecord> parse_coefficients_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw config_error("coefficients csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCoefficientHeader)
        throw config_error("coefficients csv: unrecognized header");
    std::vector<DsmCoefficientRecord> out;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 7)
            throw config_error("coefficients csv line " + std::to_string(lineno) +
                               ": expected 7 fields");
        const std::string where = "coefficients csv line " + std::to_string(lineno);
        DsmCoefficientRecord r;
        r.t = parse_double(f[0], where);
        r.a2 = parse_double(f[1], where);
        r.a3 = parse_double(f[2], where);
        r.b2 = parse_double(f[3], where);
        r.residual = parse_double(f[4], where);
        r.condition = parse_double(f[5], where);
        r.accepted = static_cast<int>(parse_double(f[6], where));
        out.push_back(r);
    }
    return out;
}

// Side-by-side metric table. The ratio column is present for every row;
// it is the DSM value divided by the CSM value, written as nan when the
// CSM value is zero.
struct ComparisonRow {
    std::string metric;
    double csm = 0.0;
    double dsm = 0.0;
    double ratio = 0.0;
};

inline constexpr const char* kComparisonHeader = "metric,csm,dsm,ratio_dsm_over_csm";

inline std::vector<ComparisonRow> build_comparison(const Metrics& c, const Metrics& d) {
    auto ratio = [](double dv, double cv) {
        return cv == 0.0 ? std::numeric_limits<double>::quiet_NaN() : dv / cv;
    };
    return {
        {"rms_e_q", c.rms_e_q, d.rms_e_q, ratio(d.rms_e_q, c.rms_e_q)},
        {"max_abs_e_q", c.max_abs_e_q, d.max_abs_e_q, ratio(d.max_abs_e_q, c.max_abs_e_q)},
        {"rms_e_theta", c.rms_e_theta, d.rms_e_theta, ratio(d.rms_e_theta, c.rms_e_theta)},
        {"max_abs_e_theta", c.max_abs_e_theta, d.max_abs_e_theta,
         ratio(d.max_abs_e_theta, c.max_abs_e_theta)},
        {"control_rms", c.control_rms, d.control_rms, ratio(d.control_rms, c.control_rms)},
        {"reachability_violations", c.reachability_violations, d.reachability_violations,
         ratio(d.reachability_violations, c.reachability_violations)},
        {"final_e_theta", c.final_e_theta, d.final_e_theta,
         ratio(d.final_e_theta, c.final_e_theta)},
    };
}

inline void write_comparison_csv(std::ostream& os, const std::vector<ComparisonRow>& rows) {
    os << kComparisonHeader << "\n";
    for (const auto& r : rows)
        os << r.metric << ',' << format_double(r.csm) << ',' << format_double(r.dsm)
           << ',' << format_double(r.ratio) << "\n";
}

inline std::vector<ComparisonRow> parse_comparison_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw config_error("comparison csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kComparisonHeader)
        throw config_error("comparison csv: unrecognized header");
    std::vector<ComparisonRow> out;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 4)
            throw config_error("comparison csv line " + std::to_string(lineno) +
                               ": expected 4 fields");
        const std::string where = "comparison csv line " + std::to_string(lineno);
        out.push_back({f[0], parse_double(f[1], where), parse_double(f[2], where),
                       parse_double(f[3], where)});
    }
    return out;
}

inline constexpr const char* kScheduleHeader = "t,Z_v,Z_q,Z_theta,Z_de,M_vz,M_q,M_de";

inline void write_schedule_csv(std::ostream& os, const CoefficientSchedule& s) {
    os << kScheduleHeader << "\n";
    for (std::size_t k = 0; k < s.times.size(); ++k) {
        const PitchCoefficients& c = s.samples[k];
        os << format_double(s.times[k]) << ',' << format_double(c.Zv) << ','
           << format_double(c.Zq) << ',' << format_double(c.Zth) << ','
           << format_double(c.Zde) << ',' << format_double(c.Mvz) << ','
           << format_double(c.Mq) << ',' << format_double(c.Mde) << "\n";
    }
}

inline CoefficientSchedule parse_schedule_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw config_error("schedule csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kScheduleHeader)
        throw config_error("schedule csv: header must be '" + std::string(kScheduleHeader) +
                           "'");
    CoefficientSchedule s;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 8)
            throw config_error("schedule csv line " + std::to_string(lineno) +
                               ": expected 8 fields");
        const std::string where = "schedule csv line " + std::to_string(lineno);
        s.times.push_back(parse_double(f[0], where));
        s.samples.push_back({parse_double(f[1], where), parse_double(f[2], where),
                             parse_double(f[3], where), parse_double(f[4], where),
                             parse_double(f[5], where), parse_double(f[6], where),
                             parse_double(f[7], where)});
    }
    try {
        validate_schedule(s);
    } catch (const invalid_input& e) {
        throw config_error(std::string("schedule csv: ") + e.what());
    }
    return s;
}

}  // namespace alv
