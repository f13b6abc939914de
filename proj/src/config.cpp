#include "hamsim/config.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hamsim {

std::vector<double> TimeGrid::expand() const {
    if (step <= 0) throw std::invalid_argument("t-grid: step must be > 0");
    if (stop < start) throw std::invalid_argument("t-grid: stop must be >= start");
    std::vector<double> out;
    for (double t = start; t <= stop + step * 0.5; t += step) out.push_back(t);
    return out;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::pair<std::string, std::string>> parse_config_file(std::istream& in) {
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected `key = value`");
        }
        out.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return out;
}

CountingMode parse_counting(const std::string& s) {
    if (s == "events") return CountingMode::Events;
    if (s == "flips") return CountingMode::Flips;
    if (s == "placements") return CountingMode::Placements;
    throw std::invalid_argument("counting: want events|flips|placements, got '" + s + "'");
}

Policy parse_policy(const std::string& s) {
    if (s == "secded") return Policy::Secded;
    if (s == "dnc3") return Policy::Dnc3;
    if (s == "nd3") return Policy::Nd3;
    throw std::invalid_argument("policy: want secded|dnc3|nd3, got '" + s + "'");
}

PhysicalMode parse_physical(const std::string& s) {
    if (s == "plain") return PhysicalMode::Plain;
    if (s == "extended") return PhysicalMode::Extended;
    throw std::invalid_argument("physical: want plain|extended, got '" + s + "'");
}

OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::Csv;
    if (s == "json") return OutputFormat::JsonOnly;
    if (s == "both") return OutputFormat::Both;
    throw std::invalid_argument("format: want csv|json|both, got '" + s + "'");
}

std::vector<int> parse_id_list(const std::string& s) {
    std::vector<int> out;
    std::istringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        auto dash = tok.find('-');
        if (dash == std::string::npos) {
            out.push_back(std::stoi(tok));
        } else {
            int a = std::stoi(tok.substr(0, dash));
            int b = std::stoi(tok.substr(dash + 1));
            if (b < a) throw std::invalid_argument("bad id range '" + tok + "'");
            for (int i = a; i <= b; ++i) out.push_back(i);
        }
    }
    return out;
}

TimeGrid parse_t_grid(const std::string& s) {
    TimeGrid g;
    if (std::sscanf(s.c_str(), "%lf:%lf:%lf", &g.start, &g.stop, &g.step) != 3) {
        throw std::invalid_argument("t-grid: want start:stop:step, got '" + s + "'");
    }
    (void)g.expand();  // validates
    return g;
}

CalibrationAnchor parse_calibration(const std::string& s) {
    auto c1 = s.find(':');
    auto c2 = s.rfind(':');
    if (c1 == std::string::npos || c2 == c1) {
        throw std::invalid_argument("calibrate: want layout:t:R, got '" + s + "'");
    }
    CalibrationAnchor a;
    a.layout = s.substr(0, c1);
    a.t = std::stod(s.substr(c1 + 1, c2 - c1 - 1));
    a.r = std::stod(s.substr(c2 + 1));
    if (!(a.t > 0)) throw std::invalid_argument("calibrate: anchor t must be > 0");
    if (!(a.r > 0 && a.r < 1)) throw std::invalid_argument("calibrate: anchor R must be in (0,1)");
    return a;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    try {
        if (key == "rows") cfg.rows = std::stoi(value);
        else if (key == "cols") cfg.cols = std::stoi(value);
        else if (key == "layout") cfg.layouts.push_back(value);
        else if (key == "catalog") cfg.catalog = value;
        else if (key == "patterns") cfg.patterns = parse_id_list(value);
        else if (key == "counting") cfg.counting = parse_counting(value);
        else if (key == "policy") cfg.policy = parse_policy(value);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else if (key == "physical") cfg.physical = parse_physical(value);
        else if (key == "jobs") cfg.jobs = static_cast<unsigned>(std::stoul(value));
        else if (key == "out") cfg.out_dir = value;
        else if (key == "format") cfg.format = parse_format(value);
        else if (key == "lambda") cfg.lambda = std::stod(value);
        else if (key == "calibrate") cfg.calibrate = parse_calibration(value);
        else if (key == "t-grid") cfg.t_grid = parse_t_grid(value);
        else if (key == "words") cfg.words = std::stoi(value);
        else throw std::invalid_argument("unknown key");
    } catch (const std::invalid_argument& e) {
        std::string what = e.what();
        if (what.find(key) == std::string::npos && what.find(':') == std::string::npos) {
            throw std::invalid_argument("config key '" + key + "': " + what);
        }
        throw;
    }
}

LineLayout resolve_layout(const std::string& name_or_path, int cols) {
    if (auto l = find_builtin_layout(name_or_path)) {
        if (l->cols() != cols) {
            throw std::invalid_argument("layout '" + name_or_path + "' covers " +
                                        std::to_string(l->cols()) + " columns, geometry has " +
                                        std::to_string(cols));
        }
        return *l;
    }
    std::ifstream f(name_or_path);
    if (!f) {
        throw std::invalid_argument("layout '" + name_or_path +
                                    "': not a builtin name and not a readable file");
    }
    std::string name = std::filesystem::path(name_or_path).stem().string();
    return LineLayout::parse(f, name, cols);
}

PatternCatalog resolve_catalog(const std::string& path_or_empty) {
    if (path_or_empty.empty() || path_or_empty == "builtin") {
        return PatternCatalog::builtin();
    }
    std::ifstream f(path_or_empty);
    if (!f) throw std::invalid_argument("catalog '" + path_or_empty + "': cannot open file");
    return PatternCatalog::parse(f);
}

}  // namespace hamsim
