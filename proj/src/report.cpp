#include "hamsim/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace hamsim {

std::string format_pct(double pct) {
    long long tenths = std::llround(pct * 10.0);
    std::string sign = tenths < 0 ? "-" : "";
    if (tenths < 0) tenths = -tenths;
    return sign + std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

namespace {

Json layout_json(const LineLayout& l) {
    Json j;
    j["name"] = l.name();
    Json blocks = Json::array();
    for (const auto& b : l.blocks()) {
        blocks.push_back(Json{{"r", b.code.r},
                              {"n", b.code.n},
                              {"k", b.code.k},
                              {"first_col", b.first_col},
                              {"last_col", b.last_col()}});
    }
    j["blocks"] = std::move(blocks);
    j["uncovered"] = l.uncovered();
    RedundancyProfile rp = redundancy_rate(l);
    j["redundancy"] = Json{{"r_total", rp.r_total}, {"n_total", rp.n_total}, {"tr", rp.tr}};
    return j;
}

Json campaign_json(const CampaignResult& r) {
    Json j;
    j["layout"] = r.layout_name;
    j["counting"] = to_string(r.counting);
    j["policy"] = to_string(r.policy);
    j["geometry"] = Json{{"rows", r.geom.rows}, {"cols", r.geom.cols}};
    Json pats = Json::array();
    for (const auto& p : r.per_pattern) {
        Rates rt = rates_of(p.tally);
        pats.push_back(Json{{"id", p.id},
                            {"group", group_of(p.id)},
                            {"dc", p.tally.dc},
                            {"dnc", p.tally.dnc},
                            {"nd", p.tally.nd},
                            {"total", p.tally.total()},
                            {"flips", p.flips},
                            {"placements", p.placements},
                            {"dc_pct", rt.dc},
                            {"dnc_pct", rt.dnc},
                            {"nd_pct", rt.nd}});
    }
    j["per_pattern"] = std::move(pats);
    Json groups = Json::array();
    for (int g = 1; g <= 4; ++g) {
        if (r.group_pattern_ids(g).empty()) continue;
        Tally sum = r.group_sum(g);
        Rates rt = r.group_rates(g);
        groups.push_back(Json{{"group", g},
                              {"patterns", r.group_pattern_ids(g).size()},
                              {"dc", sum.dc},
                              {"dnc", sum.dnc},
                              {"nd", sum.nd},
                              {"total", sum.total()},
                              {"dc_pct", rt.dc},
                              {"dnc_pct", rt.dnc},
                              {"nd_pct", rt.nd}});
    }
    j["per_group"] = std::move(groups);
    return j;
}

}  // namespace

Json build_report(const std::vector<LineLayout>& layouts,
                  const std::vector<CampaignResult>& campaigns,
                  const std::optional<MeansResult>& means,
                  const std::vector<PhysicalResult>& physical,
                  const std::optional<ReliabilityReport>& rel, const Json& config_echo) {
    Json j;
    j["config"] = config_echo;
    Json ls = Json::array();
    for (const auto& l : layouts) ls.push_back(layout_json(l));
    j["layouts"] = std::move(ls);
    Json cs = Json::array();
    for (const auto& c : campaigns) cs.push_back(campaign_json(c));
    j["campaigns"] = std::move(cs);
    if (means) {
        Json m;
        Json mg = Json::array();
        for (int g = 1; g <= 4; ++g) {
            const Rates& rt = means->per_group[g - 1];
            mg.push_back(
                Json{{"group", g}, {"dc_pct", rt.dc}, {"dnc_pct", rt.dnc}, {"nd_pct", rt.nd}});
        }
        m["per_group"] = std::move(mg);
        Json mp = Json::array();
        for (std::size_t i = 0; i < means->pattern_ids.size(); ++i) {
            const Rates& rt = means->per_pattern[i];
            mp.push_back(Json{{"id", means->pattern_ids[i]},
                              {"group", group_of(means->pattern_ids[i])},
                              {"dc_pct", rt.dc},
                              {"dnc_pct", rt.dnc},
                              {"nd_pct", rt.nd}});
        }
        m["per_pattern"] = std::move(mp);
        j["means"] = std::move(m);
    }
    if (!physical.empty()) {
        Json ph = Json::array();
        for (const auto& p : physical) {
            Json pj;
            pj["layout"] = p.layout_name;
            pj["mode"] = to_string(p.mode);
            pj["seed"] = p.seed;
            Json rows = Json::array();
            for (const auto& [id, t] : p.per_pattern) {
                rows.push_back(Json{{"id", id},
                                    {"corrected_ok", t.corrected_ok},
                                    {"miscorrected_silent", t.miscorrected_silent},
                                    {"detected_uncorrectable", t.detected_uncorrectable},
                                    {"uncovered_hit", t.uncovered_hit}});
            }
            pj["per_pattern"] = std::move(rows);
            ph.push_back(std::move(pj));
        }
        j["physical"] = std::move(ph);
    }
    if (rel) {
        Json rj;
        rj["lambda"] = rel->lambda;
        if (rel->calibrated_from) rj["calibrated_from"] = *rel->calibrated_from;
        rj["t_grid"] = rel->t_grid;
        Json fc = Json::object();
        for (const auto& [name, table] : rel->fc_tables) fc[name] = table;
        rj["fc_tables"] = std::move(fc);
        Json series = Json::object();
        for (const auto& [name, vals] : rel->series) series[name] = vals;
        rj["series"] = std::move(series);
        j["reliability"] = std::move(rj);
    }
    return j;
}

void write_json_report(const Json& report, const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::ofstream f(std::filesystem::path(out_dir) / "report.json", std::ios::binary);
    if (!f) throw std::runtime_error("cannot write report.json under " + out_dir);
    f << report.dump(2) << '\n';
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& content) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + p.string());
    f << content;
}

std::string campaign_patterns_csv(const Json& c) {
    std::string s = "pattern,group,dc,dnc,nd,total,flips,placements,dc_pct,dnc_pct,nd_pct\n";
    for (const auto& p : c.at("per_pattern")) {
        s += std::to_string(p.at("id").get<int>()) + "," + std::to_string(p.at("group").get<int>()) +
             "," + std::to_string(p.at("dc").get<std::uint64_t>()) + "," +
             std::to_string(p.at("dnc").get<std::uint64_t>()) + "," +
             std::to_string(p.at("nd").get<std::uint64_t>()) + "," +
             std::to_string(p.at("total").get<std::uint64_t>()) + "," +
             std::to_string(p.at("flips").get<std::uint64_t>()) + "," +
             std::to_string(p.at("placements").get<std::uint64_t>()) + "," +
             format_pct(p.at("dc_pct").get<double>()) + "," +
             format_pct(p.at("dnc_pct").get<double>()) + "," +
             format_pct(p.at("nd_pct").get<double>()) + "\n";
    }
    return s;
}

std::string campaign_groups_csv(const Json& c) {
    std::string s = "group,patterns,dc,dnc,nd,total,dc_pct,dnc_pct,nd_pct\n";
    for (const auto& g : c.at("per_group")) {
        s += "G" + std::to_string(g.at("group").get<int>()) + "," +
             std::to_string(g.at("patterns").get<std::uint64_t>()) + "," +
             std::to_string(g.at("dc").get<std::uint64_t>()) + "," +
             std::to_string(g.at("dnc").get<std::uint64_t>()) + "," +
             std::to_string(g.at("nd").get<std::uint64_t>()) + "," +
             std::to_string(g.at("total").get<std::uint64_t>()) + "," +
             format_pct(g.at("dc_pct").get<double>()) + "," +
             format_pct(g.at("dnc_pct").get<double>()) + "," +
             format_pct(g.at("nd_pct").get<double>()) + "\n";
    }
    return s;
}

}  // namespace

void write_csv_reports(const Json& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    fs::path dir(out_dir);

    for (const auto& c : report.at("campaigns")) {
        std::string name = c.at("layout").get<std::string>();
        write_file(dir / ("campaign_" + name + "_patterns.csv"), campaign_patterns_csv(c));
        write_file(dir / ("campaign_" + name + "_groups.csv"), campaign_groups_csv(c));
    }
    if (report.contains("means")) {
        const auto& m = report.at("means");
        std::string s = "group,dc_pct,dnc_pct,nd_pct\n";
        for (const auto& g : m.at("per_group")) {
            s += "G" + std::to_string(g.at("group").get<int>()) + "," +
                 format_pct(g.at("dc_pct").get<double>()) + "," +
                 format_pct(g.at("dnc_pct").get<double>()) + "," +
                 format_pct(g.at("nd_pct").get<double>()) + "\n";
        }
        write_file(dir / "means_groups.csv", s);
        s = "pattern,group,dc_pct,dnc_pct,nd_pct\n";
        for (const auto& p : m.at("per_pattern")) {
            s += std::to_string(p.at("id").get<int>()) + "," +
                 std::to_string(p.at("group").get<int>()) + "," +
                 format_pct(p.at("dc_pct").get<double>()) + "," +
                 format_pct(p.at("dnc_pct").get<double>()) + "," +
                 format_pct(p.at("nd_pct").get<double>()) + "\n";
        }
        write_file(dir / "means_patterns.csv", s);
    }
    if (report.contains("physical")) {
        for (const auto& p : report.at("physical")) {
            std::string s =
                "pattern,corrected_ok,miscorrected_silent,detected_uncorrectable,uncovered_hit\n";
            for (const auto& row : p.at("per_pattern")) {
                s += std::to_string(row.at("id").get<int>()) + "," +
                     std::to_string(row.at("corrected_ok").get<std::uint64_t>()) + "," +
                     std::to_string(row.at("miscorrected_silent").get<std::uint64_t>()) + "," +
                     std::to_string(row.at("detected_uncorrectable").get<std::uint64_t>()) + "," +
                     std::to_string(row.at("uncovered_hit").get<std::uint64_t>()) + "\n";
            }
            write_file(dir / ("physical_" + p.at("layout").get<std::string>() + "_" +
                              p.at("mode").get<std::string>() + ".csv"),
                       s);
        }
    }
    // redundancy table always available from the layouts section
    {
        std::string s = "layout,r_total,n_total,tr_pct\n";
        for (const auto& l : report.at("layouts")) {
            const auto& rp = l.at("redundancy");
            s += l.at("name").get<std::string>() + "," +
                 std::to_string(rp.at("r_total").get<int>()) + "," +
                 std::to_string(rp.at("n_total").get<int>()) + "," +
                 format_pct(100.0 * rp.at("tr").get<double>()) + "\n";
        }
        write_file(dir / "redundancy.csv", s);
    }
    if (report.contains("reliability")) {
        const auto& r = report.at("reliability");
        const auto& grid = r.at("t_grid");
        const auto& series = r.at("series");
        std::string s = "t";
        for (auto it = series.begin(); it != series.end(); ++it) s += "," + it.key();
        s += "\n";
        char buf[32];
        for (std::size_t i = 0; i < grid.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%g", grid[i].get<double>());
            s += buf;
            for (auto it = series.begin(); it != series.end(); ++it) {
                std::snprintf(buf, sizeof buf, "%.10g", it.value()[i].get<double>());
                s += ",";
                s += buf;
            }
            s += "\n";
        }
        write_file(dir / "reliability_series.csv", s);
    }
}

}  // namespace hamsim
