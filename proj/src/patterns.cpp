#include "hamsim/patterns.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace hamsim {

int group_of(int pattern_id) {
    if (pattern_id == 1) return 1;
    if (pattern_id >= 2 && pattern_id <= 11) return 2;
    if (pattern_id >= 12 && pattern_id <= 31) return 3;
    if (pattern_id >= 32 && pattern_id <= 36) return 4;
    throw std::invalid_argument("group_of: pattern id " + std::to_string(pattern_id) +
                                " out of 1..36");
}

int expected_multiplicity(int pattern_id) {
    return group_of(pattern_id);  // groups are keyed by flip count
}

PatternCatalog::PatternCatalog(std::vector<ErrorPattern> patterns)
    : patterns_(std::move(patterns)) {
    if (patterns_.size() != kCatalogSize) {
        throw std::invalid_argument("catalog: expected 36 patterns, got " +
                                    std::to_string(patterns_.size()));
    }
    for (std::size_t i = 0; i < patterns_.size(); ++i) {
        const auto& p = patterns_[i];
        int want_id = static_cast<int>(i) + 1;
        if (p.id != want_id) {
            throw std::invalid_argument("catalog: pattern " + std::to_string(p.id) +
                                        ": ids must run 1..36 ascending (expected " +
                                        std::to_string(want_id) + ")");
        }
        if (p.offsets.empty() || p.offsets.size() > 4) {
            throw std::invalid_argument("catalog: pattern " + std::to_string(p.id) +
                                        ": offset count must be 1..4");
        }
        if (static_cast<int>(p.offsets.size()) != expected_multiplicity(p.id)) {
            throw std::invalid_argument(
                "catalog: pattern " + std::to_string(p.id) + ": group G" +
                std::to_string(group_of(p.id)) + " requires " +
                std::to_string(expected_multiplicity(p.id)) + " flips, got " +
                std::to_string(p.offsets.size()));
        }
        for (const auto& o : p.offsets) {
            if (o.drow < 0 || o.drow > 2 || o.dcol < 0 || o.dcol > 2) {
                throw std::invalid_argument("catalog: pattern " + std::to_string(p.id) +
                                            ": offset (" + std::to_string(o.drow) + "," +
                                            std::to_string(o.dcol) + ") outside the 3x3 footprint");
            }
        }
        for (std::size_t a = 0; a < p.offsets.size(); ++a) {
            for (std::size_t b = a + 1; b < p.offsets.size(); ++b) {
                if (p.offsets[a] == p.offsets[b]) {
                    throw std::invalid_argument("catalog: pattern " + std::to_string(p.id) +
                                                ": duplicate offset");
                }
            }
        }
    }
}

const ErrorPattern& PatternCatalog::by_id(int id) const {
    if (id < 1 || id > kCatalogSize) {
        throw std::invalid_argument("by_id: pattern id out of range");
    }
    return patterns_[static_cast<std::size_t>(id - 1)];
}

std::vector<int> PatternCatalog::group_ids(int group) const {
    std::vector<int> out;
    for (const auto& p : patterns_) {
        if (group_of(p.id) == group) out.push_back(p.id);
    }
    return out;
}

PatternCatalog PatternCatalog::builtin() {
    // clang-format off
    static const std::vector<std::vector<Offset>> kOffsets = {
        /* 1*/ {{0,0}},
        /* 2*/ {{0,0},{0,1}},
        /* 3*/ {{0,0},{1,0}},
        /* 4*/ {{0,1},{1,0}},
        /* 5*/ {{0,0},{0,2}},
        /* 6*/ {{0,0},{2,0}},
        /* 7*/ {{1,1},{2,2}},
        /* 8*/ {{0,0},{2,2}},
        /* 9*/ {{0,2},{2,0}},
        /*10*/ {{0,0},{1,2}},
        /*11*/ {{0,0},{2,1}},
        /*12*/ {{0,0},{0,1},{1,0}},
        /*13*/ {{0,0},{0,1},{1,1}},
        /*14*/ {{0,0},{0,1},{2,0}},
        /*15*/ {{0,0},{0,1},{2,1}},
        /*16*/ {{0,0},{1,0},{1,1}},
        /*17*/ {{0,0},{2,0},{2,1}},
        /*18*/ {{0,0},{2,0},{2,2}},
        /*19*/ {{0,1},{2,0},{2,1}},
        /*20*/ {{1,0},{1,1},{2,0}},
        /*21*/ {{0,0},{0,1},{0,2}},
        /*22*/ {{1,0},{1,1},{2,1}},
        /*23*/ {{1,0},{1,2},{2,0}},
        /*24*/ {{1,0},{2,0},{2,1}},
        /*25*/ {{0,0},{1,0},{2,0}},
        /*26*/ {{0,0},{1,0},{2,1}},
        /*27*/ {{0,0},{1,0},{2,2}},
        /*28*/ {{0,0},{1,1},{2,0}},
        /*29*/ {{0,0},{1,1},{2,1}},
        /*30*/ {{0,0},{1,2},{2,0}},
        /*31*/ {{0,1},{1,0},{2,0}},
        /*32*/ {{0,0},{0,1},{0,2},{2,0}},
        /*33*/ {{1,0},{1,1},{1,2},{2,1}},
        /*34*/ {{0,0},{0,1},{1,0},{1,1}},
        /*35*/ {{0,0},{1,0},{1,1},{2,0}},
        /*36*/ {{0,0},{0,1},{2,0},{2,1}},
    };
    // clang-format on
    std::vector<ErrorPattern> pats;
    pats.reserve(kOffsets.size());
    for (std::size_t i = 0; i < kOffsets.size(); ++i) {
        pats.push_back(ErrorPattern{static_cast<int>(i) + 1, kOffsets[i]});
    }
    return PatternCatalog(std::move(pats));
}

PatternCatalog PatternCatalog::parse(std::istream& in) {
    std::vector<ErrorPattern> pats;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw != "pattern") {
            throw std::invalid_argument("catalog line " + std::to_string(lineno) +
                                        ": expected 'pattern', got '" + kw + "'");
        }
        ErrorPattern p;
        if (!(ls >> p.id)) {
            throw std::invalid_argument("catalog line " + std::to_string(lineno) + ": missing id");
        }
        std::string tok;
        while (ls >> tok) {
            auto comma = tok.find(',');
            if (comma == std::string::npos) {
                throw std::invalid_argument("catalog: pattern " + std::to_string(p.id) +
                                            ": bad offset '" + tok + "' (want <drow>,<dcol>)");
            }
            Offset o;
            try {
                o.drow = std::stoi(tok.substr(0, comma));
                o.dcol = std::stoi(tok.substr(comma + 1));
            } catch (const std::exception&) {
                throw std::invalid_argument("catalog: pattern " + std::to_string(p.id) +
                                            ": bad offset '" + tok + "'");
            }
            p.offsets.push_back(o);
        }
        pats.push_back(std::move(p));
    }
    return PatternCatalog(std::move(pats));
}

std::string PatternCatalog::to_text() const {
    std::ostringstream os;
    os << "# bit-flip pattern catalog: 1 single, 10 double, 20 triple, 5 quadruple\n";
    os << "# pattern <id> <drow>,<dcol> ...   offsets within a 3x3 footprint\n";
    for (const auto& p : patterns_) {
        os << "pattern " << p.id;
        for (const auto& o : p.offsets) os << ' ' << o.drow << ',' << o.dcol;
        os << '\n';
    }
    return os.str();
}

Placement place(const ErrorPattern& pattern, Cell anchor, const MemoryGeometry& geom) {
    if (anchor.row < 1 || anchor.row > geom.rows || anchor.col < 1 || anchor.col > geom.cols) {
        throw std::invalid_argument("place: anchor (" + std::to_string(anchor.row) + "," +
                                    std::to_string(anchor.col) + ") outside " +
                                    std::to_string(geom.rows) + "x" + std::to_string(geom.cols));
    }
    Placement pl;
    pl.cells.reserve(pattern.offsets.size());
    for (const auto& o : pattern.offsets) {
        Cell c{anchor.row + o.drow, anchor.col + o.dcol};
        if (c.row > geom.rows || c.col > geom.cols) continue;  // clipped off the edge
        pl.cells.push_back(c);
    }
    return pl;
}

}  // namespace hamsim
