#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hamsim/campaign.hpp"

namespace hamsim {

struct CalibrationAnchor {
    std::string layout;
    double t = 0;
    double r = 0;
};

struct TimeGrid {
    double start = 0, stop = 0, step = 0;
    std::vector<double> expand() const;  // inclusive of stop (within half a step)
};

enum class OutputFormat { Csv, JsonOnly, Both };

struct RunConfig {
    int rows = 8;
    int cols = 32;
    std::vector<std::string> layouts;  // builtin names and/or file paths; empty = all builtins
    std::string catalog;               // path; empty = builtin
    std::vector<int> patterns;         // empty = all
    CountingMode counting = CountingMode::Events;
    Policy policy = Policy::Secded;
    std::uint64_t seed = 1;
    std::optional<PhysicalMode> physical;
    unsigned jobs = 0;  // 0 = hardware concurrency
    std::string out_dir = "out";
    OutputFormat format = OutputFormat::Both;
    // reliability block
    std::optional<double> lambda;
    std::optional<CalibrationAnchor> calibrate;
    TimeGrid t_grid{0, 3500, 100};
    int words = 50;
};

// `key = value` lines, `#` comments; returns pairs in file order
// (repeated keys allowed, e.g. several `layout =` lines).
std::vector<std::pair<std::string, std::string>> parse_config_file(std::istream& in);

// Applies one key/value onto the config; throws std::invalid_argument with the
// offending key on bad input. Recognized keys mirror the CLI flag names.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// parsing helpers shared with the CLI
CountingMode parse_counting(const std::string& s);
Policy parse_policy(const std::string& s);
PhysicalMode parse_physical(const std::string& s);
OutputFormat parse_format(const std::string& s);
std::vector<int> parse_id_list(const std::string& s);       // "1,5-7"
TimeGrid parse_t_grid(const std::string& s);                // "start:stop:step"
CalibrationAnchor parse_calibration(const std::string& s);  // "layout:t:R"

// Resolves a layout selection entry: builtin name first, else a file path.
LineLayout resolve_layout(const std::string& name_or_path, int cols);
PatternCatalog resolve_catalog(const std::string& path_or_empty);

}  // namespace hamsim
