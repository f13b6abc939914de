#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hamsim/codes.hpp"

namespace hamsim {

struct MemoryGeometry {
    int rows = 8;
    int cols = 32;
};

struct LayoutBlock {
    CodeSpec code;
    int first_col = 0;  // 1-based, block covers first_col .. first_col+code.n-1
    int last_col() const { return first_col + code.n - 1; }
};

// Partition of a memory line into code blocks and uncovered columns.
class LineLayout {
public:
    LineLayout(std::string name, std::vector<LayoutBlock> blocks, std::vector<int> uncovered,
               int cols = 32);

    const std::string& name() const { return name_; }
    const std::vector<LayoutBlock>& blocks() const { return blocks_; }
    const std::vector<int>& uncovered() const { return uncovered_; }
    int cols() const { return cols_; }

    // Block index containing col, or nullopt for an uncovered column.
    // Throws std::invalid_argument if col is out of 1..cols.
    std::optional<int> block_of(int col) const;

    // 1-based position of col within its block (only valid for covered cols).
    int local_position(int col) const;

    // Text format: lines of `block <r> <first-col>` or `block <r> <c1>-<cN>`
    // and `uncovered <col> [<col> ...]` (ranges allowed); `#` comments.
    static LineLayout parse(std::istream& in, std::string name, int cols = 32);

private:
    std::string name_;
    std::vector<LayoutBlock> blocks_;
    std::vector<int> uncovered_;
    int cols_;
    std::vector<int> col_to_block_;  // -1 = uncovered
};

// The five built-in 32-column configurations:
//   ham74a   four Ham(7,4) at 1-7,8-14,15-21,22-28; uncovered 29-32
//   ham74b   four Ham(7,4) at 1-7,9-15,17-23,25-31; uncovered 8,16,24,32
//   ham1511  two Ham(15,11) at 1-15,16-30; uncovered 31-32
//   ham151174  Ham(15,11) at 1-15, Ham(7,4) at 16-22 and 23-29; uncovered 30-32
//   ham3126  one Ham(31,26) at 1-31; uncovered 32
std::vector<LineLayout> builtin_layouts();

// Lookup by short name (ham74a, ...) or display name (Ham7,4,A, ...).
std::optional<LineLayout> find_builtin_layout(const std::string& name);

}  // namespace hamsim
