#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hamsim/layout.hpp"

namespace hamsim {

struct Offset {
    int drow = 0;  // 0..2, extends downward from the anchor
    int dcol = 0;  // 0..2, extends rightward
    friend bool operator==(const Offset&, const Offset&) = default;
};

struct Cell {
    int row = 0;
    int col = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

// Spatial bit-flip pattern: a set of offsets inside a 3x3 footprint whose
// top-left corner is placed at the anchor cell.
struct ErrorPattern {
    int id = 0;
    std::vector<Offset> offsets;
};

// Scenario groups by flip multiplicity: G1 single, G2 double, G3 triple, G4 quad.
inline constexpr int kCatalogSize = 36;
int group_of(int pattern_id);                 // 1..4; throws on bad id
int expected_multiplicity(int pattern_id);    // 1, 2, 3 or 4

class PatternCatalog {
public:
    explicit PatternCatalog(std::vector<ErrorPattern> patterns);

    const std::vector<ErrorPattern>& patterns() const { return patterns_; }
    const ErrorPattern& by_id(int id) const;
    std::vector<int> group_ids(int group) const;

    // The default 36-pattern catalog: 1 single, 10 doubles, 20 triples,
    // 5 quadruples, all within a 3x3 footprint.
    static PatternCatalog builtin();

    // Text format, one pattern per line:
    //   pattern <id> <drow>,<dcol> [<drow>,<dcol> ...]
    // `#` comments; ids must run 1..36 ascending.
    static PatternCatalog parse(std::istream& in);
    std::string to_text() const;

private:
    std::vector<ErrorPattern> patterns_;
};

struct Placement {
    std::vector<Cell> cells;  // surviving flips, offset order
    int injected_count() const { return static_cast<int>(cells.size()); }
};

// Absolute cells of a pattern anchored at (row, col); flips that would fall
// outside the geometry are discarded. Anchor must lie inside the geometry.
Placement place(const ErrorPattern& pattern, Cell anchor, const MemoryGeometry& geom);

}  // namespace hamsim
