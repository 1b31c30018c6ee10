#ifndef EISLAB_RUNCONFIG_HPP
#define EISLAB_RUNCONFIG_HPP

#include <string>
#include <vector>

#include "eislab/errors.hpp"

namespace eislab {

// Run configuration shared by the CLI commands.  Sourced from a
// line-oriented `key = value` file with dotted keys and `#` comments;
// command-line flags override file values.  Unknown keys are rejected.
struct RunConfig {
    long base_bits = 64;          // precision.base_bits
    double tol = 1e-10;           // eisenstein.tol
    long x0_num = 0;              // segment.x0_num
    long x0_den = 1;              // segment.x0_den
    double a = 1.0;               // segment.a
    double b = 2.0;               // segment.b
    double margin = 0.0;          // segment.margin
    long grid_base = 0;           // grid.base (0: auto = 16 ceil(t))
    int grid_depth = 30;          // grid.depth
    double t_min = 20.0;          // scan.t_min
    double t_max = 120.0;         // scan.t_max
    double t_step = 10.0;         // scan.t_step
    int moments_k = 2;            // moments.k
    std::vector<double> t_grid = {250, 500, 1000, 2000};  // moments.T_grid
    double resolution = 0.05;     // moments.resolution
    std::string out_path;         // output.path ("" = stdout)
};

// Applies one key/value pair; throws ParseError on unknown keys or
// unparsable values.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// Reads the whole file; throws ParseError on malformed lines.
void load_config_file(RunConfig& cfg, const std::string& path);

// Range checks for every field; throws ValidationError.
void validate_config(const RunConfig& cfg);

}  // namespace eislab

#endif
