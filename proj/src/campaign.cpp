#include "hamsim/campaign.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <stdexcept>
#include <thread>

namespace hamsim {

Rates rates_of(const Tally& t) {
    Rates r;
    std::uint64_t tot = t.total();
    if (tot == 0) return r;
    r.dc = 100.0 * static_cast<double>(t.dc) / static_cast<double>(tot);
    r.dnc = 100.0 * static_cast<double>(t.dnc) / static_cast<double>(tot);
    r.nd = 100.0 * static_cast<double>(t.nd) / static_cast<double>(tot);
    return r;
}

namespace {

// per-placement scratch: flips grouped by (row, block)
struct BlockHit {
    int row;
    int block;
    int count;
    std::uint32_t syndrome;  // XOR of local positions
};

struct Scratch {
    std::vector<BlockHit> hits;
    int uncovered = 0;

    void gather(const LineLayout& layout, const Placement& pl) {
        hits.clear();
        uncovered = 0;
        for (const Cell& cell : pl.cells) {
            auto b = layout.block_of(cell.col);
            if (!b) {
                ++uncovered;
                continue;
            }
            std::uint32_t pos = static_cast<std::uint32_t>(layout.local_position(cell.col));
            bool merged = false;
            for (auto& h : hits) {
                if (h.row == cell.row && h.block == *b) {
                    ++h.count;
                    h.syndrome ^= pos;
                    merged = true;
                    break;
                }
            }
            if (!merged) hits.push_back(BlockHit{cell.row, *b, 1, pos});
        }
    }
};

FlipClass block_class(const BlockHit& h, Policy policy) {
    if (h.count == 1) return FlipClass::DC;
    switch (policy) {
        case Policy::Secded:
            return h.syndrome == 0 ? FlipClass::ND : FlipClass::DNC;
        case Policy::Nd3:
            return h.count >= 3 ? FlipClass::ND : FlipClass::DNC;
        case Policy::Dnc3:
        default:
            return FlipClass::DNC;
    }
}

void add_units(Tally& t, FlipClass cls, std::uint64_t units) {
    switch (cls) {
        case FlipClass::DC: t.dc += units; break;
        case FlipClass::DNC: t.dnc += units; break;
        case FlipClass::ND: t.nd += units; break;
    }
}

}  // namespace

std::vector<FlipClass> classify_placement(const LineLayout& layout, const Placement& placement,
                                          Policy policy) {
    Scratch s;
    s.gather(layout, placement);
    std::vector<FlipClass> out;
    out.reserve(placement.cells.size());
    for (const Cell& cell : placement.cells) {
        auto b = layout.block_of(cell.col);
        if (!b) {
            out.push_back(FlipClass::ND);
            continue;
        }
        for (const auto& h : s.hits) {
            if (h.row == cell.row && h.block == *b) {
                out.push_back(block_class(h, policy));
                break;
            }
        }
    }
    return out;
}

Tally tally_placement(const LineLayout& layout, const Placement& placement, CountingMode counting,
                      Policy policy) {
    Scratch s;
    s.gather(layout, placement);
    Tally t;
    t.nd += static_cast<std::uint64_t>(s.uncovered);
    for (const auto& h : s.hits) {
        FlipClass cls = block_class(h, policy);
        std::uint64_t units = counting == CountingMode::Flips
                                  ? static_cast<std::uint64_t>(h.count)
                                  : 1u;
        add_units(t, cls, units);
    }
    if (counting == CountingMode::Placements) {
        Tally one;
        if (t.nd > 0) one.nd = 1;
        else if (t.dnc > 0) one.dnc = 1;
        else if (t.dc > 0) one.dc = 1;
        return one;
    }
    return t;
}

const PatternTally* CampaignResult::find_pattern(int id) const {
    for (const auto& p : per_pattern) {
        if (p.id == id) return &p;
    }
    return nullptr;
}

std::vector<int> CampaignResult::group_pattern_ids(int group) const {
    std::vector<int> ids;
    for (const auto& p : per_pattern) {
        if (group_of(p.id) == group) ids.push_back(p.id);
    }
    return ids;
}

Tally CampaignResult::group_sum(int group) const {
    Tally t;
    for (const auto& p : per_pattern) {
        if (group_of(p.id) == group) t += p.tally;
    }
    return t;
}

Rates CampaignResult::group_rates(int group) const {
    Rates acc;
    int n = 0;
    for (const auto& p : per_pattern) {
        if (group_of(p.id) != group) continue;
        Rates r = rates_of(p.tally);
        acc.dc += r.dc;
        acc.dnc += r.dnc;
        acc.nd += r.nd;
        ++n;
    }
    if (n == 0) throw std::invalid_argument("group_rates: no patterns from group G" +
                                            std::to_string(group) + " in this result");
    acc.dc /= n;
    acc.dnc /= n;
    acc.nd /= n;
    return acc;
}

Rates CampaignResult::pattern_rates(int id) const {
    const PatternTally* p = find_pattern(id);
    if (!p) throw std::invalid_argument("pattern_rates: pattern " + std::to_string(id) +
                                        " not in this result");
    return rates_of(p->tally);
}

CampaignResult run_campaign(const LineLayout& layout, const PatternCatalog& catalog,
                            const MemoryGeometry& geom, const CampaignOptions& opts) {
    if (layout.cols() != geom.cols) {
        throw std::invalid_argument("run_campaign: layout '" + layout.name() + "' covers " +
                                    std::to_string(layout.cols()) + " columns but geometry has " +
                                    std::to_string(geom.cols));
    }
    std::vector<const ErrorPattern*> selected;
    if (opts.pattern_ids.empty()) {
        for (const auto& p : catalog.patterns()) selected.push_back(&p);
    } else {
        for (int id : opts.pattern_ids) selected.push_back(&catalog.by_id(id));
    }

    CampaignResult res;
    res.layout_name = layout.name();
    res.geom = geom;
    res.counting = opts.counting;
    res.policy = opts.policy;
    res.per_pattern.resize(selected.size());

    const std::uint64_t anchors =
        static_cast<std::uint64_t>(geom.rows) * static_cast<std::uint64_t>(geom.cols);
    const std::uint64_t work_items = anchors * selected.size();
    unsigned jobs = std::max(1u, opts.jobs);

    // Each worker sweeps a contiguous slice of the (pattern, anchor) space and
    // keeps its own per-pattern tallies; integer merges make the result
    // independent of the partitioning.
    auto worker = [&](std::uint64_t begin, std::uint64_t end, std::vector<PatternTally>& local) {
        local.assign(selected.size(), PatternTally{});
        for (std::uint64_t w = begin; w < end; ++w) {
            std::size_t pi = static_cast<std::size_t>(w / anchors);
            std::uint64_t a = w % anchors;
            Cell anchor{static_cast<int>(a / geom.cols) + 1, static_cast<int>(a % geom.cols) + 1};
            Placement pl = place(*selected[pi], anchor, geom);
            if (pl.cells.empty()) continue;
            PatternTally& pt = local[pi];
            pt.tally += tally_placement(layout, pl, opts.counting, opts.policy);
            pt.flips += static_cast<std::uint64_t>(pl.cells.size());
            pt.placements += 1;
        }
    };

    std::vector<std::vector<PatternTally>> partials(jobs);
    if (jobs == 1) {
        worker(0, work_items, partials[0]);
    } else {
        std::vector<std::thread> threads;
        std::uint64_t chunk = (work_items + jobs - 1) / jobs;
        for (unsigned j = 0; j < jobs; ++j) {
            std::uint64_t b = std::min<std::uint64_t>(work_items, j * chunk);
            std::uint64_t e = std::min<std::uint64_t>(work_items, b + chunk);
            threads.emplace_back(worker, b, e, std::ref(partials[j]));
        }
        for (auto& th : threads) th.join();
    }
    for (std::size_t pi = 0; pi < selected.size(); ++pi) {
        PatternTally& pt = res.per_pattern[pi];
        pt.id = selected[pi]->id;
        for (const auto& part : partials) {
            pt.tally += part[pi].tally;
            pt.flips += part[pi].flips;
            pt.placements += part[pi].placements;
        }
    }
    return res;
}

MeansResult aggregate_means(const std::vector<CampaignResult>& results) {
    if (results.empty()) throw std::invalid_argument("aggregate_means: no results");
    MeansResult m;
    for (const auto& p : results.front().per_pattern) m.pattern_ids.push_back(p.id);
    for (const auto& r : results) {
        if (r.per_pattern.size() != m.pattern_ids.size()) {
            throw std::invalid_argument("aggregate_means: results cover different pattern sets");
        }
        for (std::size_t i = 0; i < m.pattern_ids.size(); ++i) {
            if (r.per_pattern[i].id != m.pattern_ids[i]) {
                throw std::invalid_argument("aggregate_means: results cover different pattern sets");
            }
            if (r.per_pattern[i].flips != results.front().per_pattern[i].flips) {
                throw std::invalid_argument(
                    "aggregate_means: results come from different catalogs or geometries");
            }
        }
    }
    const double n = static_cast<double>(results.size());
    m.per_pattern.resize(m.pattern_ids.size());
    for (std::size_t i = 0; i < m.pattern_ids.size(); ++i) {
        Rates acc;
        for (const auto& r : results) {
            Rates x = rates_of(r.per_pattern[i].tally);
            acc.dc += x.dc;
            acc.dnc += x.dnc;
            acc.nd += x.nd;
        }
        m.per_pattern[i] = Rates{acc.dc / n, acc.dnc / n, acc.nd / n};
    }
    for (int g = 1; g <= 4; ++g) {
        bool have = false;
        for (int id : m.pattern_ids) {
            if (group_of(id) == g) have = true;
        }
        if (!have) continue;
        Rates acc;
        for (const auto& r : results) {
            Rates x = r.group_rates(g);
            acc.dc += x.dc;
            acc.dnc += x.dnc;
            acc.nd += x.nd;
        }
        m.per_group[g - 1] = Rates{acc.dc / n, acc.dnc / n, acc.nd / n};
    }
    return m;
}

// ---- physical diagnostic ----

PhysicalResult run_physical(const LineLayout& layout, const PatternCatalog& catalog,
                            const MemoryGeometry& geom, PhysicalMode mode, std::uint64_t seed) {
    if (layout.cols() != geom.cols) {
        throw std::invalid_argument("run_physical: layout/geometry column mismatch");
    }
    // one pseudo-random data word per (line, block), fixed for the whole run
    std::mt19937_64 rng(seed);
    const auto& blocks = layout.blocks();
    std::vector<std::vector<std::uint32_t>> original(static_cast<std::size_t>(geom.rows));
    std::vector<std::vector<std::uint32_t>> encoded(static_cast<std::size_t>(geom.rows));
    for (int row = 0; row < geom.rows; ++row) {
        for (const auto& blk : blocks) {
            std::uint32_t data =
                static_cast<std::uint32_t>(rng()) & ((blk.code.k >= 32) ? 0xffffffffu
                                                                        : ((1u << blk.code.k) - 1u));
            original[static_cast<std::size_t>(row)].push_back(data);
            std::uint32_t cw = mode == PhysicalMode::Extended ? encode_extended(blk.code, data)
                                                              : encode(blk.code, data);
            encoded[static_cast<std::size_t>(row)].push_back(cw);
        }
    }

    PhysicalResult res;
    res.layout_name = layout.name();
    res.mode = mode;
    res.seed = seed;

    for (const auto& pattern : catalog.patterns()) {
        PhysicalTally pt;
        for (int r = 1; r <= geom.rows; ++r) {
            for (int c = 1; c <= geom.cols; ++c) {
                Placement pl = place(pattern, Cell{r, c}, geom);
                if (pl.cells.empty()) continue;
                // collect flips per (row, block); uncovered hits counted directly
                struct Hit {
                    int row, block;
                    std::uint32_t mask;
                };
                std::vector<Hit> hits;
                for (const Cell& cell : pl.cells) {
                    auto b = layout.block_of(cell.col);
                    if (!b) {
                        ++pt.uncovered_hit;
                        continue;
                    }
                    std::uint32_t bit = 1u << (layout.local_position(cell.col) - 1);
                    bool merged = false;
                    for (auto& h : hits) {
                        if (h.row == cell.row && h.block == *b) {
                            h.mask |= bit;
                            merged = true;
                            break;
                        }
                    }
                    if (!merged) hits.push_back(Hit{cell.row, *b, bit});
                }
                for (const auto& h : hits) {
                    const auto& blk = blocks[static_cast<std::size_t>(h.block)];
                    std::uint32_t received =
                        encoded[static_cast<std::size_t>(h.row - 1)][static_cast<std::size_t>(h.block)] ^
                        h.mask;
                    DecodeReport rep = mode == PhysicalMode::Extended
                                           ? decode_extended(blk.code, received)
                                           : decode(blk.code, received);
                    std::uint32_t want =
                        original[static_cast<std::size_t>(h.row - 1)][static_cast<std::size_t>(h.block)];
                    if (rep.outcome == DecodeOutcome::DetectedUncorrectable) {
                        ++pt.detected_uncorrectable;
                    } else if (rep.data == want) {
                        ++pt.corrected_ok;
                    } else {
                        ++pt.miscorrected_silent;
                    }
                }
            }
        }
        res.per_pattern.emplace_back(pattern.id, pt);
    }
    return res;
}

const char* to_string(CountingMode m) {
    switch (m) {
        case CountingMode::Events: return "events";
        case CountingMode::Flips: return "flips";
        case CountingMode::Placements: return "placements";
    }
    return "?";
}

const char* to_string(Policy p) {
    switch (p) {
        case Policy::Secded: return "secded";
        case Policy::Dnc3: return "dnc3";
        case Policy::Nd3: return "nd3";
    }
    return "?";
}

const char* to_string(PhysicalMode m) {
    return m == PhysicalMode::Extended ? "extended" : "plain";
}

}  // namespace hamsim
