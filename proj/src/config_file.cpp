#include "pcp/config_file.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <vector>

namespace pcp {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config: bad number for " + where + ": '" + v + "'");
    }
}

long long parse_int(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config: bad integer for " + where + ": '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, const std::string& where) {
    try {
        std::size_t pos = 0;
        const unsigned long long x = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("");
        return x;
    } catch (...) {
        throw ConfigError("config: bad unsigned integer for " + where + ": '" + v + "'");
    }
}

bool parse_bool(const std::string& v, const std::string& where) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: bad boolean for " + where + ": '" + v + "'");
}

std::array<double, 2> parse_pair(const std::string& v, const std::string& where) {
    const auto toks = split_ws(v);
    if (toks.size() != 2)
        throw ConfigError("config: " + where + " needs two values (season 1, season 2)");
    return {parse_double(toks[0], where), parse_double(toks[1], where)};
}

} // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    cfg.params.S = 0;

    std::set<std::string> seen;
    std::string section;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool brw_used = false;
    RunConfig::Brw brw_cfg;
    std::string init_mode;
    long long corner_row = 0;
    long long corner_col = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string at = " (line " + std::to_string(line_no) + ")";

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("config: malformed section header" + at);
            section = trim(line.substr(1, line.size() - 2));
            static const std::set<std::string> known = {"lattice", "params", "init",
                                                        "run", "coexistence", "brw"};
            if (!known.count(section)) throw ConfigError("config: unknown section [" + section + "]" + at);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("config: expected key = value" + at);
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) throw ConfigError("config: empty key or value" + at);
        if (section.empty()) throw ConfigError("config: key outside any section" + at);
        const std::string path = section + "." + key;
        if (!seen.insert(path).second) throw ConfigError("config: duplicate key " + path + at);

        if (section == "lattice") {
            if (key == "M") cfg.lattice.M = static_cast<int>(parse_int(value, path));
            else if (key == "L") cfg.lattice.L = static_cast<int>(parse_int(value, path));
            else throw ConfigError("config: unknown key " + path + at);
        } else if (section == "params") {
            if (key == "S") {
                cfg.params.S = static_cast<int>(parse_int(value, path));
                if (cfg.params.S < 1 || cfg.params.S > 9)
                    throw ConfigError("config: S must be in 1..9" + at);
                cfg.params.beta.assign(static_cast<std::size_t>(cfg.params.S), {0.0, 0.0});
                cfg.params.delta.assign(static_cast<std::size_t>(cfg.params.S), {0.0, 0.0});
            } else if (key == "D") {
                cfg.params.D = parse_double(value, path);
            } else if (key.rfind("beta_", 0) == 0 || key.rfind("delta_", 0) == 0) {
                const bool is_beta = key.rfind("beta_", 0) == 0;
                const std::string idx = key.substr(is_beta ? 5 : 6);
                const long long i = parse_int(idx, path);
                if (cfg.params.S == 0)
                    throw ConfigError("config: S must come before rate rows" + at);
                if (i < 1 || i > cfg.params.S)
                    throw ConfigError("config: species index out of range in " + key + at);
                auto& table = is_beta ? cfg.params.beta : cfg.params.delta;
                table[static_cast<std::size_t>(i - 1)] = parse_pair(value, path);
            } else {
                throw ConfigError("config: unknown key " + path + at);
            }
        } else if (section == "init") {
            if (key == "mode") init_mode = value;
            else if (key == "densities") {
                const auto toks = split_ws(value);
                cfg.init.densities.clear();
                for (const auto& t : toks) cfg.init.densities.push_back(parse_double(t, path));
            } else if (key == "species") cfg.init.species = static_cast<int>(parse_int(value, path));
            else if (key == "corner_row") corner_row = parse_int(value, path);
            else if (key == "corner_col") corner_col = parse_int(value, path);
            else if (key == "side_units") cfg.init.side_units = parse_double(value, path);
            else throw ConfigError("config: unknown key " + path + at);
        } else if (section == "run") {
            if (key == "t_end") cfg.t_end = parse_double(value, path);
            else if (key == "sample_dt") cfg.sample_dt = parse_double(value, path);
            else if (key == "snapshots") cfg.snapshots = parse_bool(value, path);
            else if (key == "box_counts") cfg.box_counts = parse_bool(value, path);
            else if (key == "seed") cfg.seed = parse_u64(value, path);
            else if (key == "meanfield_dt") cfg.meanfield_dt = parse_double(value, path);
            else throw ConfigError("config: unknown key " + path + at);
        } else if (section == "coexistence") {
            if (key == "window_start") cfg.window_start = parse_double(value, path);
            else if (key == "window_end") cfg.window_end = parse_double(value, path);
            else if (key == "threshold") cfg.threshold = parse_double(value, path);
            else throw ConfigError("config: unknown key " + path + at);
        } else if (section == "brw") {
            brw_used = true;
            if (key == "alpha") {
                const auto pair = parse_pair(value, path);
                brw_cfg.schedule.alpha1 = pair[0];
                brw_cfg.schedule.alpha2 = pair[1];
            } else if (key == "delta") brw_cfg.delta = parse_double(value, path);
            else if (key == "t_end") brw_cfg.t_end = parse_double(value, path);
            else if (key == "sample_dt") brw_cfg.sample_dt = parse_double(value, path);
            else if (key == "replicas") brw_cfg.replicas = parse_u64(value, path);
            else if (key == "kill_T") brw_cfg.kill_T = parse_double(value, path);
            else if (key == "cap") brw_cfg.cap = parse_u64(value, path);
            else if (key == "n0") brw_cfg.n0 = parse_u64(value, path);
            else if (key == "box_corner") {
                const auto pair = parse_pair(value, path);
                brw_cfg.box_corner_x = pair[0];
                brw_cfg.box_corner_y = pair[1];
            } else if (key == "box_side") brw_cfg.box_side = parse_double(value, path);
            else if (key == "walk_start") {
                const auto pair = parse_pair(value, path);
                brw_cfg.walk_start_x = pair[0];
                brw_cfg.walk_start_y = pair[1];
            } else if (key == "target_time") brw_cfg.target_time = parse_double(value, path);
            else throw ConfigError("config: unknown key " + path + at);
        }
    }

    // required keys and cross-field validation
    auto require = [&](const char* path) {
        if (!seen.count(path)) throw ConfigError(std::string("config: missing required key ") + path);
    };
    require("lattice.M");
    require("lattice.L");
    require("params.S");
    require("params.D");
    for (int i = 1; i <= cfg.params.S; ++i) {
        require(("params.beta_" + std::to_string(i)).c_str());
        require(("params.delta_" + std::to_string(i)).c_str());
    }
    require("init.mode");
    require("run.t_end");

    try {
        cfg.lattice.validate();
        cfg.params.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }

    if (init_mode == "product") cfg.init.mode = InitSpec::Mode::Product;
    else if (init_mode == "full") cfg.init.mode = InitSpec::Mode::Full;
    else if (init_mode == "box") cfg.init.mode = InitSpec::Mode::Box;
    else throw ConfigError("config: init.mode must be product, full or box");
    if (cfg.init.mode == InitSpec::Mode::Product) {
        if (cfg.init.densities.size() != static_cast<std::size_t>(cfg.params.S))
            throw ConfigError("config: init.densities needs one value per species");
        double total = 0.0;
        for (double d : cfg.init.densities) {
            if (d < 0.0) throw ConfigError("config: init densities must be >= 0");
            total += d;
        }
        if (total > 1.0 + 1e-12) throw ConfigError("config: init densities must sum to at most 1");
    } else {
        if (cfg.init.species < 1 || cfg.init.species > cfg.params.S)
            throw ConfigError("config: init.species out of range");
        if (corner_row < 0 || corner_row >= cfg.lattice.M || corner_col < 0 ||
            corner_col >= cfg.lattice.M)
            throw ConfigError("config: init corner outside the grid");
        cfg.init.corner = cfg.lattice.site_of(static_cast<int>(corner_row),
                                              static_cast<int>(corner_col));
    }
    if (!(cfg.t_end >= 0.0)) throw ConfigError("config: run.t_end must be >= 0");
    if (seen.count("run.sample_dt") && !(cfg.sample_dt > 0.0))
        throw ConfigError("config: run.sample_dt must be > 0");
    if (cfg.window_end > cfg.window_start && cfg.window_end > cfg.t_end + 1e-9)
        throw ConfigError("config: coexistence window extends past t_end");

    if (brw_used) {
        if (!seen.count("brw.alpha") || !seen.count("brw.delta") || !seen.count("brw.t_end"))
            throw ConfigError("config: [brw] needs alpha, delta and t_end");
        brw_cfg.schedule.D = cfg.params.D;
        try {
            brw_cfg.schedule.validate();
        } catch (const std::exception& e) {
            throw ConfigError(std::string("config: ") + e.what());
        }
        if (brw_cfg.delta < 0.0) throw ConfigError("config: brw.delta must be >= 0");
        if (!(brw_cfg.t_end >= 0.0)) throw ConfigError("config: brw.t_end must be >= 0");
        if (brw_cfg.replicas < 1) throw ConfigError("config: brw.replicas must be >= 1");
        cfg.brw_section = brw_cfg;
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace pcp
