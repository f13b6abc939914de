#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hamsim/layout.hpp"
#include "hamsim/patterns.hpp"

namespace hamsim {

enum class FlipClass { DC, DNC, ND };

// What one tally unit means:
//   Events      one unit per code block that saw flips (DC if it can correct,
//               DNC if it can only detect, ND if the flips are syndrome-silent)
//               plus one ND unit per flip in an uncovered column. This is the
//               accounting under which the reference per-pattern rates hold.
//   Flips       every injected flip carries its block's class (f=2 block ->
//               two DNC units, and so on).
//   Placements  one unit per placement: ND if anything went undetected, else
//               DNC if anything was uncorrectable, else DC.
enum class CountingMode { Events, Flips, Placements };

// How a covered block with f >= 2 flips is classified:
//   Secded  DNC, except syndrome-silent flip sets (column XOR zero), which are
//           ND; f = 2 is never silent for a distance-3 code.
//   Dnc3    always DNC.
//   Nd3     DNC for f = 2, ND for f >= 3.
enum class Policy { Secded, Dnc3, Nd3 };

struct Tally {
    std::uint64_t dc = 0;
    std::uint64_t dnc = 0;
    std::uint64_t nd = 0;
    std::uint64_t total() const { return dc + dnc + nd; }
    Tally& operator+=(const Tally& o) {
        dc += o.dc;
        dnc += o.dnc;
        nd += o.nd;
        return *this;
    }
    friend bool operator==(const Tally&, const Tally&) = default;
};

struct Rates {
    double dc = 0, dnc = 0, nd = 0;  // percentages
};

Rates rates_of(const Tally& t);

struct PatternTally {
    int id = 0;
    Tally tally;
    std::uint64_t flips = 0;       // surviving flips over the sweep
    std::uint64_t placements = 0;  // anchors with at least one surviving flip
};

struct CampaignOptions {
    CountingMode counting = CountingMode::Events;
    Policy policy = Policy::Secded;
    unsigned jobs = 1;                  // worker threads over the sweep
    std::vector<int> pattern_ids = {};  // empty = whole catalog
};

struct CampaignResult {
    std::string layout_name;
    MemoryGeometry geom;
    CountingMode counting = CountingMode::Events;
    Policy policy = Policy::Secded;
    std::vector<PatternTally> per_pattern;  // ascending pattern id

    const PatternTally* find_pattern(int id) const;
    std::vector<int> group_pattern_ids(int group) const;
    Tally group_sum(int group) const;
    // Group rate = unweighted mean of the member patterns' percentage rates
    // (how the reference scenario results aggregate).
    Rates group_rates(int group) const;
    Rates pattern_rates(int id) const;
};

// Per-cell classification of one placement under the given policy (the
// per-flip view; cells aligned with placement.cells).
std::vector<FlipClass> classify_placement(const LineLayout& layout, const Placement& placement,
                                          Policy policy = Policy::Secded);

// Tally of one placement under a counting mode.
Tally tally_placement(const LineLayout& layout, const Placement& placement,
                      CountingMode counting, Policy policy);

// Exhaustive sweep: every selected pattern anchored at every cell of the
// geometry. Deterministic for any jobs value.
CampaignResult run_campaign(const LineLayout& layout, const PatternCatalog& catalog,
                            const MemoryGeometry& geom, const CampaignOptions& opts = {});

// Cross-layout means (per group and per pattern) of the percentage rates.
struct MeansResult {
    std::vector<int> pattern_ids;
    std::vector<Rates> per_pattern;  // aligned with pattern_ids
    Rates per_group[4];
};
MeansResult aggregate_means(const std::vector<CampaignResult>& results);

// ---- physical-decoder diagnostic (beyond the idealized oracle) ----

enum class PhysicalMode { Plain, Extended };

struct PhysicalTally {
    std::uint64_t corrected_ok = 0;
    std::uint64_t miscorrected_silent = 0;
    std::uint64_t detected_uncorrectable = 0;
    std::uint64_t uncovered_hit = 0;
};

struct PhysicalResult {
    std::string layout_name;
    PhysicalMode mode = PhysicalMode::Plain;
    std::uint64_t seed = 0;
    std::vector<std::pair<int, PhysicalTally>> per_pattern;
};

// Encodes pseudo-random data into every line, applies each placement's flips,
// runs the real decoder per affected block and classifies by comparing the
// decoded data with the original. Deterministic for a fixed seed.
PhysicalResult run_physical(const LineLayout& layout, const PatternCatalog& catalog,
                            const MemoryGeometry& geom, PhysicalMode mode, std::uint64_t seed);

const char* to_string(CountingMode m);
const char* to_string(Policy p);
const char* to_string(PhysicalMode m);

}  // namespace hamsim
