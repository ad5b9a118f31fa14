#pragma once

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fmcw/errors.hpp"
#include "fmcw/metrics.hpp"
#include "fmcw/sar.hpp"

// Scenario files: flat INI-style text with [section] headers and key = value
// lines ('#' starts a comment). The same structure round-trips through
// serialize_scenario / parse_scenario_text.

namespace fmcw {

struct Scenario {
    // [chirp]
    double bandwidth_hz = 1e9;
    double duration_s = 1e-5;
    double amplitude = 1.0;
    // [adc]
    int upsample_factor = 35;
    double oversample = 1.0;  // f_high = oversample * bandwidth
    // [scene]
    std::vector<PointTarget> targets;
    // [trajectory]
    double center_x_m = 0.0;
    double center_y_m = 0.0;
    double radius_m = 10.0;
    std::size_t n_positions = 180;
    // [grid]
    double x_min_m = -5.0, x_max_m = 5.0;
    double y_min_m = -5.0, y_max_m = 5.0;
    std::size_t nx = 256, ny = 256;
    // [experiment]
    std::vector<double> snr_list_db{0.0, -10.0, -20.0, -30.0};
    std::vector<Architecture> architectures{
        Architecture::stretch, Architecture::matched, Architecture::proposed};
    int trials = 20;
    std::uint64_t seed = 0;

    ChirpParams params() const {
        return ChirpParams(bandwidth_hz, duration_s, amplitude);
    }
    double high_rate_hz() const { return oversample * bandwidth_hz; }
    AdcConfig adc() const { return AdcConfig(high_rate_hz(), upsample_factor); }
    Scene scene() const { return Scene{targets}; }
    Trajectory trajectory(double start_angle_rad = 0.0) const {
        return circular_trajectory(center_x_m, center_y_m, radius_m,
                                   n_positions, start_angle_rad);
    }
    ImageGrid grid() const { return ImageGrid{x_min_m, x_max_m, y_min_m, y_max_m, nx, ny}; }
    double range_cell() const { return range_cell_m(params()); }

    // Farthest pixel any trajectory position can see, with a 5% margin;
    // profiles must reach this far for backprojection to be fed everywhere.
    double max_range_m() const {
        const double cx[2] = {x_min_m, x_max_m};
        const double cy[2] = {y_min_m, y_max_m};
        double worst = 0.0;
        const Trajectory t = trajectory();
        for (const auto& [px, py] : t.positions)
            for (double gx : cx)
                for (double gy : cy)
                    worst = std::max(worst, std::hypot(px - gx, py - gy));
        for (const auto& tg : targets) {
            for (const auto& [px, py] : t.positions)
                worst = std::max(worst, std::hypot(px - tg.x_m, py - tg.y_m));
        }
        return worst * 1.05;
    }

    void validate() const {
        if (!(bandwidth_hz > 0.0)) throw config_error("chirp.bandwidth_hz must be > 0");
        if (!(duration_s > 0.0)) throw config_error("chirp.duration_s must be > 0");
        if (!(amplitude > 0.0)) throw config_error("chirp.amplitude must be > 0");
        if (upsample_factor < 1) throw config_error("adc.upsample_factor must be >= 1");
        if (!(oversample >= 1.0)) throw config_error("adc.oversample must be >= 1");
        if (!(radius_m > 0.0)) throw config_error("trajectory.radius_m must be > 0");
        if (n_positions < 1) throw config_error("trajectory.n_positions must be >= 1");
        if (!(x_max_m > x_min_m)) throw config_error("grid.x_max_m must exceed grid.x_min_m");
        if (!(y_max_m > y_min_m)) throw config_error("grid.y_max_m must exceed grid.y_min_m");
        if (nx < 2 || ny < 2) throw config_error("grid.nx and grid.ny must be >= 2");
        grid().validate(range_cell());
        if (snr_list_db.empty()) throw config_error("experiment.snr_list_db must not be empty");
        if (architectures.empty())
            throw config_error("experiment.architectures must not be empty");
        if (trials < 1) throw config_error("experiment.trials must be >= 1");
        const double k = bandwidth_hz / duration_s;
        adc().validate_against_max_delay(k, delay_for_range(max_range_m()));
    }
};

// ---------------------------------------------------------------------------
// parsing

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

inline double parse_double(const std::string& v, const std::string& field) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        if (!std::isfinite(d)) throw std::invalid_argument(v);
        return d;
    } catch (...) {
        throw config_error(field + ": cannot parse '" + v + "' as a number");
    }
}

inline long long parse_int(const std::string& v, const std::string& field) {
    try {
        std::size_t used = 0;
        const long long i = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (...) {
        throw config_error(field + ": cannot parse '" + v + "' as an integer");
    }
}

inline std::vector<std::string> split_list(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    std::stringstream ss(v);
    while (std::getline(ss, cur, ',')) out.push_back(trim(cur));
    return out;
}

}  // namespace detail

inline Scenario parse_scenario_text(const std::string& text) {
    Scenario sc;
    sc.targets.clear();
    sc.snr_list_db.clear();
    sc.architectures.clear();
    bool saw_snr = false, saw_arch = false, saw_any = false;

    std::string section;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string line = detail::trim(raw);
        if (line.empty()) continue;
        saw_any = true;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw config_error("line " + std::to_string(lineno) +
                                   ": malformed section header '" + line + "'");
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) +
                               ": expected key = value, got '" + line + "'");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        const std::string field = section.empty() ? key : section + "." + key;

        if (section == "chirp") {
            if (key == "bandwidth_hz") sc.bandwidth_hz = detail::parse_double(val, field);
            else if (key == "duration_s") sc.duration_s = detail::parse_double(val, field);
            else if (key == "amplitude") sc.amplitude = detail::parse_double(val, field);
            else throw config_error("unknown key " + field);
        } else if (section == "adc") {
            if (key == "upsample_factor") {
                const long long l = detail::parse_int(val, field);
                if (l < 1 || l > 1'000'000)
                    throw config_error(field + ": must be an integer >= 1");
                sc.upsample_factor = static_cast<int>(l);
            } else if (key == "oversample") {
                sc.oversample = detail::parse_double(val, field);
            } else throw config_error("unknown key " + field);
        } else if (section == "scene") {
            if (key == "target") {
                const auto parts = detail::split_list(val);
                if (parts.size() != 3 && parts.size() != 4)
                    throw config_error(field + ": expected 'x, y, re[, im]'");
                PointTarget t;
                t.x_m = detail::parse_double(parts[0], field + ".x");
                t.y_m = detail::parse_double(parts[1], field + ".y");
                const double re = detail::parse_double(parts[2], field + ".re");
                const double im = parts.size() == 4
                                      ? detail::parse_double(parts[3], field + ".im")
                                      : 0.0;
                t.reflectivity = {re, im};
                sc.targets.push_back(t);
            } else throw config_error("unknown key " + field);
        } else if (section == "trajectory") {
            if (key == "center_x_m") sc.center_x_m = detail::parse_double(val, field);
            else if (key == "center_y_m") sc.center_y_m = detail::parse_double(val, field);
            else if (key == "radius_m") sc.radius_m = detail::parse_double(val, field);
            else if (key == "n_positions") {
                const long long n = detail::parse_int(val, field);
                if (n < 1) throw config_error(field + ": must be >= 1");
                sc.n_positions = static_cast<std::size_t>(n);
            } else throw config_error("unknown key " + field);
        } else if (section == "grid") {
            if (key == "x_min_m") sc.x_min_m = detail::parse_double(val, field);
            else if (key == "x_max_m") sc.x_max_m = detail::parse_double(val, field);
            else if (key == "y_min_m") sc.y_min_m = detail::parse_double(val, field);
            else if (key == "y_max_m") sc.y_max_m = detail::parse_double(val, field);
            else if (key == "nx" || key == "ny") {
                const long long n = detail::parse_int(val, field);
                if (n < 2 || n > 16384) throw config_error(field + ": out of range");
                (key == "nx" ? sc.nx : sc.ny) = static_cast<std::size_t>(n);
            } else throw config_error("unknown key " + field);
        } else if (section == "experiment") {
            if (key == "snr_list_db") {
                for (const auto& s : detail::split_list(val))
                    sc.snr_list_db.push_back(detail::parse_double(s, field));
                saw_snr = true;
            } else if (key == "architectures") {
                for (const auto& s : detail::split_list(val))
                    sc.architectures.push_back(architecture_from_string(s));
                saw_arch = true;
            } else if (key == "trials") {
                const long long n = detail::parse_int(val, field);
                if (n < 1) throw config_error(field + ": must be >= 1");
                sc.trials = static_cast<int>(n);
            } else if (key == "seed") {
                sc.seed = static_cast<std::uint64_t>(detail::parse_int(val, field));
            } else throw config_error("unknown key " + field);
        } else {
            throw config_error("unknown section [" + section + "] (line " +
                               std::to_string(lineno) + ")");
        }
    }
    if (!saw_any) throw config_error("scenario file is empty");
    if (!saw_snr) sc.snr_list_db = {0.0, -10.0, -20.0, -30.0};
    if (!saw_arch)
        sc.architectures = {Architecture::stretch, Architecture::matched,
                            Architecture::proposed};
    sc.validate();
    return sc;
}

inline Scenario parse_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("cannot open scenario file '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_scenario_text(ss.str());
}

inline std::string serialize_scenario(const Scenario& sc) {
    auto num = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g", v);
        return std::string(buf);
    };
    std::ostringstream o;
    o << "[chirp]\n"
      << "bandwidth_hz = " << num(sc.bandwidth_hz) << "\n"
      << "duration_s = " << num(sc.duration_s) << "\n"
      << "amplitude = " << num(sc.amplitude) << "\n"
      << "[adc]\n"
      << "upsample_factor = " << sc.upsample_factor << "\n"
      << "oversample = " << num(sc.oversample) << "\n"
      << "[scene]\n";
    for (const auto& t : sc.targets)
        o << "target = " << num(t.x_m) << ", " << num(t.y_m) << ", "
          << num(t.reflectivity.real()) << ", " << num(t.reflectivity.imag())
          << "\n";
    o << "[trajectory]\n"
      << "center_x_m = " << num(sc.center_x_m) << "\n"
      << "center_y_m = " << num(sc.center_y_m) << "\n"
      << "radius_m = " << num(sc.radius_m) << "\n"
      << "n_positions = " << sc.n_positions << "\n"
      << "[grid]\n"
      << "x_min_m = " << num(sc.x_min_m) << "\n"
      << "x_max_m = " << num(sc.x_max_m) << "\n"
      << "y_min_m = " << num(sc.y_min_m) << "\n"
      << "y_max_m = " << num(sc.y_max_m) << "\n"
      << "nx = " << sc.nx << "\n"
      << "ny = " << sc.ny << "\n"
      << "[experiment]\n"
      << "snr_list_db = ";
    for (std::size_t i = 0; i < sc.snr_list_db.size(); ++i)
        o << (i ? ", " : "") << num(sc.snr_list_db[i]);
    o << "\narchitectures = ";
    for (std::size_t i = 0; i < sc.architectures.size(); ++i)
        o << (i ? ", " : "") << to_string(sc.architectures[i]);
    o << "\ntrials = " << sc.trials << "\n"
      << "seed = " << sc.seed << "\n";
    return o.str();
}

// FNV-1a over the canonical serialization; identifies a scenario in output
// metadata.
inline std::string scenario_hash(const Scenario& sc) {
    const std::string s = serialize_scenario(sc);
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// compression-gain experiment
//
// Compression gain is a single-chirp quantity, so it is measured on the
// profile of trajectory position 0: peak power within one range cell of the
// first target's true range over the mean bin power outside ten range
// cells, averaged over independent noise trials.

inline GainReport compression_gain_table(const Scenario& sc,
                                         const std::vector<double>& snr_list_db,
                                         const std::vector<Architecture>& archs,
                                         int trials, std::uint64_t seed,
                                         int n_threads = 1) {
    if (sc.targets.empty())
        throw config_error("compression_gain_table: scenario has no targets");
    if (trials < 1) throw config_error("compression_gain_table: trials must be >= 1");

    const ChirpParams params = sc.params();
    const AdcConfig adc = sc.adc();
    const Scene scene = sc.scene();
    const double cell = sc.range_cell();
    const double max_range = sc.max_range_m();

    Trajectory t0 = sc.trajectory();
    t0.positions.resize(1);
    const double r_true = std::hypot(t0.positions[0].first - sc.targets[0].x_m,
                                     t0.positions[0].second - sc.targets[0].y_m);

    GainReport report;
    for (const double snr : snr_list_db) {
        for (const Architecture arch : archs) {
            std::vector<double> outs(static_cast<std::size_t>(trials), 0.0);
            const std::uint64_t base =
                rng::mix(seed, rng::mix(static_cast<std::uint64_t>(arch),
                                        static_cast<std::uint64_t>(
                                            static_cast<std::int64_t>(std::llround(snr * 1000.0)))));
            parallel_for(outs.size(), n_threads, [&](std::size_t tr) {
                const std::uint64_t trial_seed = rng::mix(base, tr);
                const auto profiles = acquire(scene, t0, arch, params, adc, snr,
                                              trial_seed, max_range, 1);
                outs[tr] = profile_snr_out_db(profiles[0], r_true, cell);
            });
            double mean = 0.0;
            for (double v : outs) mean += v;
            mean /= static_cast<double>(outs.size());
            double var = 0.0;
            for (double v : outs) var += (v - mean) * (v - mean);
            var /= static_cast<double>(outs.size());

            GainRow row;
            row.snr_in_db = snr;
            row.architecture = arch;
            row.snr_out_db = mean;
            row.compression_gain_db = mean - snr;
            row.trials = trials;
            row.std_db = std::sqrt(var);
            report.rows.push_back(row);
        }
    }
    return report;
}

inline GainReport compression_gain_table(const Scenario& sc, int n_threads = 1) {
    return compression_gain_table(sc, sc.snr_list_db, sc.architectures,
                                  sc.trials, sc.seed, n_threads);
}

}  // namespace fmcw
