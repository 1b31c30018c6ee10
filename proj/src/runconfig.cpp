#include <fstream>
#include <sstream>

#include "eislab/runconfig.hpp"

namespace eislab {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ParseError("config: cannot parse numeric value for " + key + ": '" + v + "'");
    }
}

long parse_long(const std::string& key, const std::string& v) {
    try {
        size_t used = 0;
        long x = std::stol(v, &used);
        if (used != v.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw ParseError("config: cannot parse integer value for " + key + ": '" + v + "'");
    }
}

std::vector<double> parse_grid(const std::string& key, const std::string& v) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_double(key, trim(item)));
    if (out.empty()) throw ParseError("config: empty list for " + key);
    return out;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "precision.base_bits") cfg.base_bits = parse_long(key, value);
    else if (key == "eisenstein.tol") cfg.tol = parse_double(key, value);
    else if (key == "segment.x0_num") cfg.x0_num = parse_long(key, value);
    else if (key == "segment.x0_den") cfg.x0_den = parse_long(key, value);
    else if (key == "segment.a") cfg.a = parse_double(key, value);
    else if (key == "segment.b") cfg.b = parse_double(key, value);
    else if (key == "segment.margin") cfg.margin = parse_double(key, value);
    else if (key == "grid.base") cfg.grid_base = parse_long(key, value);
    else if (key == "grid.depth") cfg.grid_depth = static_cast<int>(parse_long(key, value));
    else if (key == "scan.t_min") cfg.t_min = parse_double(key, value);
    else if (key == "scan.t_max") cfg.t_max = parse_double(key, value);
    else if (key == "scan.t_step") cfg.t_step = parse_double(key, value);
    else if (key == "moments.k") cfg.moments_k = static_cast<int>(parse_long(key, value));
    else if (key == "moments.T_grid") cfg.t_grid = parse_grid(key, value);
    else if (key == "moments.resolution") cfg.resolution = parse_double(key, value);
    else if (key == "output.path") cfg.out_path = value;
    else throw ParseError("config: unknown key '" + key + "'");
}

void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open " + path);
    std::string raw;
    long line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config: line " + std::to_string(line_no) + " is not 'key = value'");
        apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void validate_config(const RunConfig& cfg) {
    if (cfg.base_bits < 64 || cfg.base_bits > 8192)
        throw ValidationError("config: precision.base_bits must lie in [64, 8192]");
    if (!(cfg.tol > 0 && cfg.tol < 1))
        throw ValidationError("config: eisenstein.tol must lie in (0, 1)");
    if (cfg.x0_den < 1 || cfg.x0_num < 0 || cfg.x0_num >= cfg.x0_den)
        throw ValidationError("config: segment x0 must satisfy 0 <= p/q < 1");
    if (!(cfg.a > 0 && cfg.a < cfg.b))
        throw ValidationError("config: segment must satisfy 0 < a < b");
    if (cfg.margin < 0) throw ValidationError("config: segment.margin must be >= 0");
    if (cfg.grid_base != 0 && cfg.grid_base < 8)
        throw ValidationError("config: grid.base must be 0 (auto) or >= 8");
    if (cfg.grid_depth < 0 || cfg.grid_depth > 60)
        throw ValidationError("config: grid.depth must lie in [0, 60]");
    if (!(cfg.t_min > 0 && cfg.t_min <= cfg.t_max && cfg.t_step > 0))
        throw ValidationError("config: scan range must satisfy 0 < t_min <= t_max, t_step > 0");
    if (cfg.moments_k != 1 && cfg.moments_k != 2)
        throw ValidationError("config: moments.k must be 1 or 2");
    if (!(cfg.resolution > 0 && cfg.resolution <= 0.25))
        throw ValidationError("config: moments.resolution must lie in (0, 0.25]");
    for (double T : cfg.t_grid)
        if (!(T > 0)) throw ValidationError("config: moments.T_grid entries must be > 0");
}

}  // namespace eislab
