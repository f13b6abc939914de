#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hamsim/campaign.hpp"
#include "hamsim/reliability.hpp"

namespace hamsim {

using Json = nlohmann::ordered_json;

struct ReliabilityReport {
    double lambda = 0;
    std::optional<std::string> calibrated_from;  // "layout:t:R" when solved
    std::vector<double> t_grid;
    // one series per layout, aligned with layout order
    std::vector<std::pair<std::string, std::vector<double>>> series;
    std::vector<std::pair<std::string, std::vector<double>>> fc_tables;
};

// Assembles the full report document. Campaign results appear in input order;
// means cover all results. Deliberately excludes anything schedule-dependent
// (worker count, timing) so identical configs serialize byte-identically.
Json build_report(const std::vector<LineLayout>& layouts,
                  const std::vector<CampaignResult>& campaigns,
                  const std::optional<MeansResult>& means,
                  const std::vector<PhysicalResult>& physical,
                  const std::optional<ReliabilityReport>& rel, const Json& config_echo);

// Writes report.json (pretty, 2-space indent, trailing newline).
void write_json_report(const Json& report, const std::string& out_dir);

// Renders the CSV tables from a report document:
//   campaign_<layout>_patterns.csv, campaign_<layout>_groups.csv,
//   means_groups.csv, means_patterns.csv, physical_<layout>.csv,
//   reliability_series.csv, redundancy.csv
// Percentages carry one decimal (round half up); raw tallies stay exact.
void write_csv_reports(const Json& report, const std::string& out_dir);

// one-decimal half-up formatting used in the CSV layer
std::string format_pct(double pct);

}  // namespace hamsim
