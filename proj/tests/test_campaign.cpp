#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <map>

#include "hamsim/campaign.hpp"

using namespace hamsim;

namespace {

const MemoryGeometry kGeom{};  // 8x32

LineLayout get_layout(const std::string& name) {
    auto l = find_builtin_layout(name);
    REQUIRE(l);
    return *l;
}

Tally sweep_one(const std::string& layout, int pattern_id, CountingMode mode,
                Policy policy = Policy::Secded) {
    CampaignOptions opts;
    opts.counting = mode;
    opts.policy = policy;
    opts.pattern_ids = {pattern_id};
    CampaignResult r =
        run_campaign(get_layout(layout), PatternCatalog::builtin(), kGeom, opts);
    REQUIRE(r.per_pattern.size() == 1);
    return r.per_pattern[0].tally;
}

}  // namespace

TEST_CASE("classify_placement follows the block rule") {
    LineLayout a = get_layout("ham74a");
    LineLayout h31 = get_layout("ham3126");

    // single flip on the uncovered column
    Placement p1{{Cell{3, 32}}};
    CHECK(classify_placement(h31, p1) == std::vector<FlipClass>{FlipClass::ND});

    // two flips in one block -> both DNC
    Placement p2{{Cell{1, 3}, Cell{1, 5}}};
    CHECK(classify_placement(a, p2) == std::vector<FlipClass>{FlipClass::DNC, FlipClass::DNC});

    // adjacent columns straddling the block boundary -> both corrected
    Placement p3{{Cell{1, 7}, Cell{1, 8}}};
    CHECK(classify_placement(a, p3) == std::vector<FlipClass>{FlipClass::DC, FlipClass::DC});

    // same columns on different rows are independent codewords
    Placement p4{{Cell{1, 3}, Cell{2, 3}}};
    CHECK(classify_placement(a, p4) == std::vector<FlipClass>{FlipClass::DC, FlipClass::DC});

    // three flips whose block positions XOR to zero are silent under secded
    Placement p5{{Cell{1, 1}, Cell{1, 2}, Cell{1, 3}}};  // positions 1,2,3
    CHECK(classify_placement(h31, p5, Policy::Secded) ==
          std::vector<FlipClass>(3, FlipClass::ND));
    CHECK(classify_placement(h31, p5, Policy::Dnc3) ==
          std::vector<FlipClass>(3, FlipClass::DNC));
    Placement p6{{Cell{1, 2}, Cell{1, 3}, Cell{1, 4}}};  // 2^3^4 = 5, detected
    CHECK(classify_placement(h31, p6, Policy::Secded) ==
          std::vector<FlipClass>(3, FlipClass::DNC));
    CHECK(classify_placement(h31, p6, Policy::Nd3) == std::vector<FlipClass>(3, FlipClass::ND));
}

TEST_CASE("worked example: pattern 1 on ham74a") {
    for (CountingMode m : {CountingMode::Events, CountingMode::Flips, CountingMode::Placements}) {
        Tally t = sweep_one("ham74a", 1, m);
        CHECK(t == Tally{224, 0, 32});
    }
}

TEST_CASE("golden tallies, events counting") {
    // frozen from an independent sweep implementation
    CHECK(sweep_one("ham3126", 2, CountingMode::Events) == Tally{8, 240, 16});
    CHECK(sweep_one("ham3126", 5, CountingMode::Events) == Tally{16, 232, 16});
    CHECK(sweep_one("ham3126", 21, CountingMode::Events) == Tally{8, 232, 32});
    CHECK(sweep_one("ham74a", 21, CountingMode::Events) == Tally{56, 184, 128});
    CHECK(sweep_one("ham74a", 34, CountingMode::Events) == Tally{105, 360, 120});
    CHECK(sweep_one("ham3126", 7, CountingMode::Events) == Tally{384, 0, 13});
    CHECK(sweep_one("ham74a", 33, CountingMode::Events) == Tally{211, 161, 136});
    CHECK(sweep_one("ham151174", 32, CountingMode::Events) == Tally{214, 200, 114});
    CHECK(sweep_one("ham74b", 2, CountingMode::Events) == Tally{56, 192, 64});
}

TEST_CASE("golden tallies, flips and placements counting") {
    CHECK(sweep_one("ham3126", 2, CountingMode::Flips) == Tally{8, 480, 16});
    CHECK(sweep_one("ham3126", 21, CountingMode::Flips) == Tally{8, 688, 48});
    CHECK(sweep_one("ham74a", 33, CountingMode::Flips) == Tally{211, 434, 192});
    CHECK(sweep_one("ham3126", 21, CountingMode::Flips, Policy::Dnc3) == Tally{8, 712, 24});
    CHECK(sweep_one("ham74a", 21, CountingMode::Flips, Policy::Dnc3) == Tally{56, 592, 96});
    CHECK(sweep_one("ham3126", 21, CountingMode::Placements) == Tally{0, 224, 32});
    CHECK(sweep_one("ham74a", 34, CountingMode::Placements) == Tally{24, 192, 40});
}

TEST_CASE("full campaign conservation and G1 structure") {
    PatternCatalog cat = PatternCatalog::builtin();
    for (const auto& layout : builtin_layouts()) {
        for (CountingMode m :
             {CountingMode::Events, CountingMode::Flips, CountingMode::Placements}) {
            CampaignOptions opts;
            opts.counting = m;
            CampaignResult r = run_campaign(layout, cat, kGeom, opts);
            REQUIRE(r.per_pattern.size() == 36);
            for (const auto& p : r.per_pattern) {
                CHECK(p.tally.dc + p.tally.dnc + p.tally.nd == p.tally.total());
                if (m == CountingMode::Flips) CHECK(p.tally.total() == p.flips);
                if (m == CountingMode::Placements) CHECK(p.tally.total() == p.placements);
                CHECK(p.placements <= 256);
            }
            // G1: single flips are always corrected or uncovered
            Rates g1 = r.group_rates(1);
            CHECK(g1.dnc == 0.0);
            double unc_frac = 100.0 * static_cast<double>(layout.uncovered().size()) / 32.0;
            CHECK(g1.nd == doctest::Approx(unc_frac).epsilon(1e-12));
        }
    }
}

TEST_CASE("per-placement DNC flips always come in groups of >= 2") {
    PatternCatalog cat = PatternCatalog::builtin();
    for (const auto& layout : builtin_layouts()) {
        for (const auto& pat : cat.patterns()) {
            for (int r = 1; r <= kGeom.rows; ++r) {
                for (int c = 1; c <= kGeom.cols; ++c) {
                    Tally t = tally_placement(layout, place(pat, Cell{r, c}, kGeom),
                                              CountingMode::Flips, Policy::Secded);
                    CHECK(t.dnc != 1);
                }
            }
        }
    }
}

TEST_CASE("group DC rates do not increase from G1 to G3") {
    PatternCatalog cat = PatternCatalog::builtin();
    for (const auto& layout : builtin_layouts()) {
        CampaignResult r = run_campaign(layout, cat, kGeom, {});
        CHECK(r.group_rates(1).dc >= r.group_rates(2).dc);
        CHECK(r.group_rates(2).dc >= r.group_rates(3).dc);
    }
}

TEST_CASE("schedule independence: any jobs value gives identical tallies") {
    PatternCatalog cat = PatternCatalog::builtin();
    LineLayout layout = get_layout("ham151174");
    CampaignOptions o1, o3, o8;
    o1.jobs = 1;
    o3.jobs = 3;
    o8.jobs = 8;
    CampaignResult r1 = run_campaign(layout, cat, kGeom, o1);
    CampaignResult r3 = run_campaign(layout, cat, kGeom, o3);
    CampaignResult r8 = run_campaign(layout, cat, kGeom, o8);
    for (std::size_t i = 0; i < r1.per_pattern.size(); ++i) {
        CHECK(r1.per_pattern[i].tally == r3.per_pattern[i].tally);
        CHECK(r1.per_pattern[i].tally == r8.per_pattern[i].tally);
        CHECK(r1.per_pattern[i].flips == r3.per_pattern[i].flips);
        CHECK(r1.per_pattern[i].placements == r8.per_pattern[i].placements);
    }
}

TEST_CASE("aggregate_means over the five layouts") {
    PatternCatalog cat = PatternCatalog::builtin();
    std::vector<CampaignResult> results;
    for (const auto& l : builtin_layouts()) results.push_back(run_campaign(l, cat, kGeom, {}));
    MeansResult m = aggregate_means(results);

    // reference per-pattern means: 12.2 / 23 / 10.6
    auto mean_dc = [&](int id) {
        for (std::size_t i = 0; i < m.pattern_ids.size(); ++i) {
            if (m.pattern_ids[i] == id) return m.per_pattern[i].dc;
        }
        FAIL("pattern not found");
        return 0.0;
    };
    CHECK(mean_dc(2) == doctest::Approx(12.2025).epsilon(1e-4));
    CHECK(mean_dc(5) == doctest::Approx(23.0070).epsilon(1e-4));
    CHECK(mean_dc(21) == doctest::Approx(10.6351).epsilon(1e-4));
    CHECK(m.per_group[0].dc == doctest::Approx(91.25).epsilon(1e-9));
    CHECK(m.per_group[0].nd == doctest::Approx(8.75).epsilon(1e-9));

    // mean of identical inputs equals the input
    std::vector<CampaignResult> twice{results[0], results[0]};
    MeansResult m2 = aggregate_means(twice);
    for (std::size_t i = 0; i < m2.pattern_ids.size(); ++i) {
        Rates one = rates_of(results[0].per_pattern[i].tally);
        CHECK(m2.per_pattern[i].dc == doctest::Approx(one.dc).epsilon(1e-12));
    }
}

TEST_CASE("campaign input validation") {
    PatternCatalog cat = PatternCatalog::builtin();
    LineLayout layout = get_layout("ham74a");
    CHECK_THROWS_AS(run_campaign(layout, cat, MemoryGeometry{8, 16}, {}), std::invalid_argument);

    // mismatched pattern sets cannot be averaged
    CampaignOptions only1;
    only1.pattern_ids = {1};
    CampaignResult r1 = run_campaign(layout, cat, kGeom, only1);
    CampaignResult rall = run_campaign(layout, cat, kGeom, {});
    std::vector<CampaignResult> bad{r1, rall};
    CHECK_THROWS_AS(aggregate_means(bad), std::invalid_argument);

    // filtered result knows only its own groups
    CHECK_THROWS_AS(r1.group_rates(2), std::invalid_argument);
    CHECK(r1.group_rates(1).dc == doctest::Approx(87.5));
}

TEST_CASE("physical diagnostic: plain decoders correct singles and miscorrect doubles") {
    PatternCatalog cat = PatternCatalog::builtin();
    LineLayout h31 = get_layout("ham3126");
    LineLayout a = get_layout("ham74a");

    PhysicalResult plain = run_physical(a, cat, kGeom, PhysicalMode::Plain, 42);
    std::map<int, PhysicalTally> by_id;
    for (const auto& [id, t] : plain.per_pattern) by_id[id] = t;

    // pattern 1: every in-block flip decodes back to the original data
    CHECK(by_id[1].corrected_ok == 224);
    CHECK(by_id[1].uncovered_hit == 32);
    CHECK(by_id[1].miscorrected_silent == 0);
    CHECK(by_id[1].detected_uncorrectable == 0);

    // pattern 2 on ham3126: 240 same-block pairs miscorrect silently in plain mode
    PhysicalResult p31 = run_physical(h31, cat, kGeom, PhysicalMode::Plain, 42);
    std::map<int, PhysicalTally> h31_by_id;
    for (const auto& [id, t] : p31.per_pattern) h31_by_id[id] = t;
    CHECK(h31_by_id[2].miscorrected_silent == 240);
    CHECK(h31_by_id[2].corrected_ok == 8);
    CHECK(h31_by_id[2].uncovered_hit == 16);
    CHECK(h31_by_id[2].detected_uncorrectable == 0);

    // extended mode flags those same pairs instead of corrupting silently
    PhysicalResult ext = run_physical(h31, cat, kGeom, PhysicalMode::Extended, 42);
    std::map<int, PhysicalTally> ext_by_id;
    for (const auto& [id, t] : ext.per_pattern) ext_by_id[id] = t;
    CHECK(ext_by_id[2].detected_uncorrectable == 240);
    CHECK(ext_by_id[2].miscorrected_silent == 0);
    CHECK(ext_by_id[2].corrected_ok == 8);

    // deterministic for a fixed seed
    PhysicalResult again = run_physical(a, cat, kGeom, PhysicalMode::Plain, 42);
    for (std::size_t i = 0; i < again.per_pattern.size(); ++i) {
        CHECK(again.per_pattern[i].second.corrected_ok ==
              plain.per_pattern[i].second.corrected_ok);
        CHECK(again.per_pattern[i].second.miscorrected_silent ==
              plain.per_pattern[i].second.miscorrected_silent);
    }
}
