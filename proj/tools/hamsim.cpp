#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "hamsim/config.hpp"
#include "hamsim/report.hpp"

using namespace hamsim;

namespace {

struct CliState {
    RunConfig cfg;
    std::string config_path;
    // raw flag values; only applied when the flag was actually given
    std::vector<std::string> layouts;
    std::string catalog, patterns, counting, policy, physical, out, format, t_grid, calibrate;
    std::uint64_t seed = 0;
    unsigned jobs = 0;
    int rows = 0, cols = 0, words = 0;
    double lambda = 0;
    std::string results_path;  // reliability: load campaigns from a saved report
};

void add_common_flags(CLI::App* cmd, CliState& st) {
    cmd->add_option("--config", st.config_path, "config file (key = value lines)");
    cmd->add_option("--layout", st.layouts, "builtin layout name or layout file (repeatable)");
    cmd->add_option("--catalog", st.catalog, "pattern catalog file (default: builtin)");
    cmd->add_option("--patterns", st.patterns, "pattern id list, e.g. 1,5-7 (default: all)");
    cmd->add_option("--counting", st.counting, "events|flips|placements");
    cmd->add_option("--policy", st.policy, "secded|dnc3|nd3");
    cmd->add_option("--rows", st.rows, "memory lines (default 8)");
    cmd->add_option("--cols", st.cols, "bits per line (default 32)");
    cmd->add_option("--jobs", st.jobs, "worker threads (default: HAMSIM_JOBS or hardware)");
    cmd->add_option("--seed", st.seed, "seed for the physical-decoder diagnostic");
    cmd->add_option("--out", st.out, "output directory (default out)");
    cmd->add_option("--format", st.format, "csv|json|both (default both)");
}

// config file fills anything the command line left unset
void merge_config(CLI::App* cmd, CliState& st) {
    if (!st.config_path.empty()) {
        std::ifstream f(st.config_path);
        if (!f) throw std::invalid_argument("config file '" + st.config_path + "': cannot open");
        for (const auto& [k, v] : parse_config_file(f)) {
            static const std::map<std::string, std::string> key_to_flag = {
                {"layout", "--layout"},     {"catalog", "--catalog"},   {"patterns", "--patterns"},
                {"counting", "--counting"}, {"policy", "--policy"},     {"rows", "--rows"},
                {"cols", "--cols"},         {"jobs", "--jobs"},         {"seed", "--seed"},
                {"out", "--out"},           {"format", "--format"},     {"lambda", "--lambda"},
                {"calibrate", "--calibrate"}, {"t-grid", "--t-grid"},   {"words", "--words"},
                {"physical", "--physical"}};
            auto it = key_to_flag.find(k);
            bool flag_given = false;
            if (it != key_to_flag.end()) {
                if (auto* opt = cmd->get_option_no_throw(it->second)) {
                    flag_given = opt->count() > 0;
                }
            }
            if (!flag_given) apply_config_entry(st.cfg, k, v);
        }
    }
    auto given = [&](const std::string& f) {
        auto* opt = cmd->get_option_no_throw(f);
        return opt != nullptr && opt->count() > 0;
    };
    if (given("--layout")) st.cfg.layouts = st.layouts;
    if (given("--catalog")) st.cfg.catalog = st.catalog;
    if (given("--patterns")) st.cfg.patterns = parse_id_list(st.patterns);
    if (given("--counting")) st.cfg.counting = parse_counting(st.counting);
    if (given("--policy")) st.cfg.policy = parse_policy(st.policy);
    if (given("--rows")) st.cfg.rows = st.rows;
    if (given("--cols")) st.cfg.cols = st.cols;
    if (given("--jobs")) st.cfg.jobs = st.jobs;
    if (given("--seed")) st.cfg.seed = st.seed;
    if (given("--out")) st.cfg.out_dir = st.out;
    if (given("--format")) st.cfg.format = parse_format(st.format);
    if (given("--lambda")) st.cfg.lambda = st.lambda;
    if (given("--calibrate")) st.cfg.calibrate = parse_calibration(st.calibrate);
    if (given("--t-grid")) st.cfg.t_grid = parse_t_grid(st.t_grid);
    if (given("--words")) st.cfg.words = st.words;
    if (given("--physical")) st.cfg.physical = parse_physical(st.physical);

    if (st.cfg.jobs == 0) {
        if (const char* env = std::getenv("HAMSIM_JOBS")) {
            st.cfg.jobs = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
        }
    }
    if (st.cfg.jobs == 0) st.cfg.jobs = std::max(1u, std::thread::hardware_concurrency());
}

struct Prepared {
    MemoryGeometry geom;
    std::vector<LineLayout> layouts;
    PatternCatalog catalog = PatternCatalog::builtin();
};

Prepared prepare(const RunConfig& cfg) {
    Prepared p;
    p.geom = MemoryGeometry{cfg.rows, cfg.cols};
    if (p.geom.rows < 1 || p.geom.cols < 1) {
        throw std::invalid_argument("geometry: rows and cols must be >= 1");
    }
    std::vector<std::string> names = cfg.layouts;
    if (names.empty()) {
        if (cfg.cols == 32) {
            for (const auto& l : builtin_layouts()) names.push_back(l.name());
        } else {
            throw std::invalid_argument(
                "layout selection is empty and builtins need cols = 32; pass --layout");
        }
    }
    for (const auto& n : names) p.layouts.push_back(resolve_layout(n, cfg.cols));
    if (p.layouts.empty()) throw std::invalid_argument("layout selection is empty");
    p.catalog = resolve_catalog(cfg.catalog);
    return p;
}

Json config_echo(const RunConfig& cfg, const Prepared& p) {
    // everything that determines report content; jobs and paths excluded so
    // identical configurations serialize identically regardless of schedule
    Json j;
    j["geometry"] = Json{{"rows", cfg.rows}, {"cols", cfg.cols}};
    Json names = Json::array();
    for (const auto& l : p.layouts) names.push_back(l.name());
    j["layouts"] = std::move(names);
    j["catalog"] = cfg.catalog.empty() ? "builtin" : cfg.catalog;
    j["patterns"] = cfg.patterns.empty() ? Json("all") : Json(cfg.patterns);
    j["counting"] = to_string(cfg.counting);
    j["policy"] = to_string(cfg.policy);
    j["seed"] = cfg.seed;
    return j;
}

void emit(const RunConfig& cfg, const Json& report) {
    if (cfg.format != OutputFormat::Csv) write_json_report(report, cfg.out_dir);
    if (cfg.format != OutputFormat::JsonOnly) write_csv_reports(report, cfg.out_dir);
}

void print_campaign_summary(const CampaignResult& r) {
    std::cout << r.layout_name << " (" << to_string(r.counting) << "/" << to_string(r.policy)
              << ")\n";
    for (int g = 1; g <= 4; ++g) {
        if (r.group_pattern_ids(g).empty()) continue;
        Tally t = r.group_sum(g);
        Rates rt = r.group_rates(g);
        std::cout << "  G" << g << "  DC " << format_pct(rt.dc) << "%  DNC " << format_pct(rt.dnc)
                  << "%  ND " << format_pct(rt.nd) << "%   (sums " << t.dc << "/" << t.dnc << "/"
                  << t.nd << ")\n";
    }
}

int cmd_simulate(CliState& st) {
    Prepared p = prepare(st.cfg);
    CampaignOptions opts{st.cfg.counting, st.cfg.policy, st.cfg.jobs, st.cfg.patterns};
    std::vector<CampaignResult> campaigns;
    for (const auto& l : p.layouts) {
        campaigns.push_back(run_campaign(l, p.catalog, p.geom, opts));
        print_campaign_summary(campaigns.back());
    }
    std::optional<MeansResult> means;
    if (campaigns.size() > 1) means = aggregate_means(campaigns);
    std::vector<PhysicalResult> physical;
    if (st.cfg.physical) {
        for (const auto& l : p.layouts) {
            physical.push_back(run_physical(l, p.catalog, p.geom, *st.cfg.physical, st.cfg.seed));
        }
    }
    Json rep = build_report(p.layouts, campaigns, means, physical, std::nullopt,
                            config_echo(st.cfg, p));
    emit(st.cfg, rep);
    std::cout << "wrote " << st.cfg.out_dir << "/\n";
    return 0;
}

int cmd_reliability(CliState& st) {
    if (st.cfg.lambda && st.cfg.calibrate) {
        throw std::invalid_argument("give either --lambda or --calibrate, not both");
    }
    if (!st.cfg.lambda && !st.cfg.calibrate) {
        throw std::invalid_argument("reliability needs --lambda or --calibrate <layout>:<t>:<R>");
    }
    Prepared p;
    std::vector<CampaignResult> campaigns;
    if (!st.results_path.empty()) {
        std::ifstream f(st.results_path);
        if (!f) throw std::invalid_argument("results '" + st.results_path + "': cannot open");
        Json saved = Json::parse(f);
        // take geometry and layouts from the saved report, not the current flags
        p.geom = MemoryGeometry{saved.at("config").at("geometry").at("rows").get<int>(),
                                saved.at("config").at("geometry").at("cols").get<int>()};
        st.cfg.cols = p.geom.cols;
        st.cfg.rows = p.geom.rows;
        for (const auto& lj : saved.at("layouts")) {
            std::vector<LayoutBlock> blocks;
            for (const auto& bj : lj.at("blocks")) {
                blocks.push_back(LayoutBlock{make_code(bj.at("r").get<int>()),
                                             bj.at("first_col").get<int>()});
            }
            p.layouts.emplace_back(lj.at("name").get<std::string>(), std::move(blocks),
                                   lj.at("uncovered").get<std::vector<int>>(), p.geom.cols);
        }
        for (const auto& c : saved.at("campaigns")) {
            CampaignResult r;
            r.layout_name = c.at("layout").get<std::string>();
            r.counting = parse_counting(c.at("counting").get<std::string>());
            r.policy = parse_policy(c.at("policy").get<std::string>());
            r.geom = MemoryGeometry{c.at("geometry").at("rows").get<int>(),
                                    c.at("geometry").at("cols").get<int>()};
            for (const auto& pp : c.at("per_pattern")) {
                PatternTally t;
                t.id = pp.at("id").get<int>();
                t.tally.dc = pp.at("dc").get<std::uint64_t>();
                t.tally.dnc = pp.at("dnc").get<std::uint64_t>();
                t.tally.nd = pp.at("nd").get<std::uint64_t>();
                t.flips = pp.at("flips").get<std::uint64_t>();
                t.placements = pp.at("placements").get<std::uint64_t>();
                r.per_pattern.push_back(t);
            }
            campaigns.push_back(std::move(r));
        }
    } else {
        p = prepare(st.cfg);
        CampaignOptions opts{st.cfg.counting, st.cfg.policy, st.cfg.jobs, st.cfg.patterns};
        for (const auto& l : p.layouts) campaigns.push_back(run_campaign(l, p.catalog, p.geom, opts));
    }

    ReliabilityReport rel;
    rel.t_grid = st.cfg.t_grid.expand();
    std::vector<std::pair<std::string, ReliabilityInput>> inputs;
    for (const auto& c : campaigns) {
        ReliabilityInput in;
        in.n_word = st.cfg.cols;
        in.words = st.cfg.words;
        in.fc_table = fc_table_from_campaign(c);
        inputs.emplace_back(c.layout_name, in);
        rel.fc_tables.emplace_back(c.layout_name, in.fc_table);
    }
    double lambda = 0;
    if (st.cfg.lambda) {
        lambda = *st.cfg.lambda;
        if (!(lambda > 0)) throw std::invalid_argument("--lambda must be > 0");
    } else {
        const auto& a = *st.cfg.calibrate;
        auto anchor = std::find_if(inputs.begin(), inputs.end(), [&](const auto& kv) {
            auto builtin = find_builtin_layout(a.layout);
            return kv.first == a.layout || (builtin && kv.first == builtin->name());
        });
        if (anchor == inputs.end()) {
            throw std::invalid_argument("calibrate: layout '" + a.layout +
                                        "' is not among the simulated layouts");
        }
        ReliabilityInput in = anchor->second;
        in.lambda = 1;  // placeholder; calibrate_lambda sets its own
        lambda = calibrate_lambda(in, a.t, a.r);
        rel.calibrated_from = a.layout + ":" + std::to_string(a.t) + ":" + std::to_string(a.r);
        std::cout << "calibrated lambda = " << lambda << " from " << *rel.calibrated_from << "\n";
    }
    rel.lambda = lambda;
    for (auto& [name, in] : inputs) {
        in.lambda = lambda;
        validate(in);
        std::vector<double> series;
        series.reserve(rel.t_grid.size());
        for (double t : rel.t_grid) series.push_back(reliability(in, t));
        rel.series.emplace_back(name, std::move(series));
    }
    for (const auto& [name, series] : rel.series) {
        std::cout << name << "  R(" << rel.t_grid.back() << ") = " << series.back() << "\n";
    }

    std::optional<MeansResult> means;
    if (campaigns.size() > 1) means = aggregate_means(campaigns);
    Json rep = build_report(p.layouts, campaigns, means, {}, rel, config_echo(st.cfg, p));
    emit(st.cfg, rep);
    std::cout << "wrote " << st.cfg.out_dir << "/\n";
    return 0;
}

int cmd_report(const std::string& in_path, const std::string& out_dir) {
    std::ifstream f(in_path);
    if (!f) throw std::invalid_argument("report '" + in_path + "': cannot open");
    Json rep = Json::parse(f);
    write_csv_reports(rep, out_dir);
    std::cout << "wrote " << out_dir << "/\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hamsim: exhaustive bit-flip campaigns over Hamming-protected memory lines"};
    app.require_subcommand(1);

    CliState sim_st, rel_st;
    std::string rep_in, rep_out = "out";

    CLI::App* sim = app.add_subcommand("simulate", "run fault-injection campaigns");
    add_common_flags(sim, sim_st);
    sim->add_option("--physical", sim_st.physical,
                    "also run the real-decoder diagnostic (plain|extended)");

    CLI::App* rel = app.add_subcommand("reliability", "Poisson reliability model over time");
    add_common_flags(rel, rel_st);
    rel->add_option("--lambda", rel_st.lambda, "per-bit fault rate");
    rel->add_option("--calibrate", rel_st.calibrate, "solve lambda from <layout>:<t>:<R>");
    rel->add_option("--t-grid", rel_st.t_grid, "time grid start:stop:step (default 0:3500:100)");
    rel->add_option("--words", rel_st.words, "words in memory (default 50)");
    rel->add_option("--results", rel_st.results_path, "reuse campaigns from a saved report.json");

    CLI::App* repc = app.add_subcommand("report", "re-render CSV tables from a saved report.json");
    repc->add_option("--in", rep_in, "report.json path")->required();
    repc->add_option("--out", rep_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            merge_config(sim, sim_st);
            return cmd_simulate(sim_st);
        }
        if (rel->parsed()) {
            merge_config(rel, rel_st);
            if (rel_st.cfg.lambda && !(rel->get_option("--lambda")->count() > 0) &&
                rel_st.cfg.calibrate && rel->get_option("--calibrate")->count() > 0) {
                rel_st.cfg.lambda.reset();  // explicit flag beats config-file lambda
            }
            return cmd_reliability(rel_st);
        }
        if (repc->parsed()) return cmd_report(rep_in, rep_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
