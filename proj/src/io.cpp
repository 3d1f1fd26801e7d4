#include "pcp/io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pcp {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

namespace {

std::string density_header(int S) {
    std::string s = "t";
    for (int i = 1; i <= S; ++i) s += ",dens_" + std::to_string(i);
    s += ",empty\n";
    return s;
}

} // namespace

std::string density_csv(const Trajectory& traj) {
    std::string s = density_header(traj.S);
    const double sites = static_cast<double>(traj.M) * static_cast<double>(traj.M);
    for (const auto& sample : traj.samples) {
        s += format_double(sample.t);
        long long occupied = 0;
        for (int i = 1; i <= traj.S; ++i) {
            const long long c = sample.counts[static_cast<std::size_t>(i - 1)];
            occupied += c;
            s += "," + format_double(static_cast<double>(c) / sites);
        }
        s += "," + format_double((sites - static_cast<double>(occupied)) / sites);
        s += "\n";
    }
    return s;
}

std::string density_csv(const MeanFieldTrajectory& traj) {
    if (traj.times.empty()) return "t,empty\n";
    const int S = static_cast<int>(traj.states.front().size());
    std::string s = density_header(S);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        s += format_double(traj.times[k]);
        double total = 0.0;
        for (int i = 0; i < S; ++i) {
            total += traj.states[k][static_cast<std::size_t>(i)];
            s += "," + format_double(traj.states[k][static_cast<std::size_t>(i)]);
        }
        s += "," + format_double(1.0 - total) + "\n";
    }
    return s;
}

std::string snapshot_text(const std::vector<std::uint8_t>& grid, int M) {
    std::string s;
    s.reserve(static_cast<std::size_t>(M) * static_cast<std::size_t>(M + 1));
    for (int r = 0; r < M; ++r) {
        for (int c = 0; c < M; ++c)
            s += static_cast<char>('0' + grid[static_cast<std::size_t>(r) *
                                                  static_cast<std::size_t>(M) +
                                              static_cast<std::size_t>(c)]);
        s += '\n';
    }
    return s;
}

std::string count_csv(const std::vector<double>& times,
                      const std::vector<std::uint64_t>& counts) {
    std::string s = "t,count\n";
    for (std::size_t k = 0; k < times.size(); ++k)
        s += format_double(times[k]) + "," + std::to_string(counts[k]) + "\n";
    return s;
}

std::string run_summary_text(const Trajectory& traj) {
    std::string s;
    auto put = [&](const std::string& k, const std::string& v) { s += k + " = " + v + "\n"; };
    put("species_count", std::to_string(traj.S));
    put("t_end", format_double(traj.t_end));
    put("absorbed", traj.absorbed ? "true" : "false");
    if (traj.absorbed) put("absorption_time", format_double(traj.absorption_time));
    put("events", std::to_string(traj.counters.events));
    put("season_boundaries_crossed", std::to_string(traj.counters.boundary_crossings));
    for (int i = 1; i <= traj.S; ++i) {
        const auto k = static_cast<std::size_t>(i - 1);
        put("deaths_" + std::to_string(i), std::to_string(traj.counters.deaths[k]));
        put("births_ok_" + std::to_string(i), std::to_string(traj.counters.births_ok[k]));
        put("births_suppressed_" + std::to_string(i),
            std::to_string(traj.counters.births_suppressed[k]));
    }
    return s;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace pcp
