#include "hamsim/layout.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace hamsim {

LineLayout::LineLayout(std::string name, std::vector<LayoutBlock> blocks,
                       std::vector<int> uncovered, int cols)
    : name_(std::move(name)), blocks_(std::move(blocks)), uncovered_(std::move(uncovered)),
      cols_(cols) {
    if (cols_ < 1) throw std::invalid_argument("layout '" + name_ + "': cols must be >= 1");
    col_to_block_.assign(static_cast<std::size_t>(cols_) + 1, -2);  // -2 = unassigned
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
        const auto& blk = blocks_[b];
        if (blk.first_col < 1 || blk.last_col() > cols_) {
            throw std::invalid_argument("layout '" + name_ + "': block out of column range");
        }
        for (int c = blk.first_col; c <= blk.last_col(); ++c) {
            if (col_to_block_[static_cast<std::size_t>(c)] != -2) {
                throw std::invalid_argument("layout '" + name_ + "': column " + std::to_string(c) +
                                            " assigned twice");
            }
            col_to_block_[static_cast<std::size_t>(c)] = static_cast<int>(b);
        }
    }
    for (int c : uncovered_) {
        if (c < 1 || c > cols_) {
            throw std::invalid_argument("layout '" + name_ + "': uncovered column " +
                                        std::to_string(c) + " out of range");
        }
        if (col_to_block_[static_cast<std::size_t>(c)] != -2) {
            throw std::invalid_argument("layout '" + name_ + "': column " + std::to_string(c) +
                                        " assigned twice");
        }
        col_to_block_[static_cast<std::size_t>(c)] = -1;
    }
    for (int c = 1; c <= cols_; ++c) {
        if (col_to_block_[static_cast<std::size_t>(c)] == -2) {
            throw std::invalid_argument("layout '" + name_ + "': column " + std::to_string(c) +
                                        " is neither covered nor listed uncovered");
        }
    }
}

std::optional<int> LineLayout::block_of(int col) const {
    if (col < 1 || col > cols_) {
        throw std::invalid_argument("block_of: column " + std::to_string(col) + " out of 1.." +
                                    std::to_string(cols_));
    }
    int b = col_to_block_[static_cast<std::size_t>(col)];
    if (b < 0) return std::nullopt;
    return b;
}

int LineLayout::local_position(int col) const {
    auto b = block_of(col);
    if (!b) throw std::invalid_argument("local_position: column " + std::to_string(col) + " is uncovered");
    return col - blocks_[static_cast<std::size_t>(*b)].first_col + 1;
}

namespace {

// accepts "5" or "5-9", appends the columns
void parse_cols(const std::string& tok, std::vector<int>& out) {
    auto dash = tok.find('-');
    if (dash == std::string::npos) {
        out.push_back(std::stoi(tok));
        return;
    }
    int a = std::stoi(tok.substr(0, dash));
    int b = std::stoi(tok.substr(dash + 1));
    if (b < a) throw std::invalid_argument("bad column range '" + tok + "'");
    for (int c = a; c <= b; ++c) out.push_back(c);
}

}  // namespace

LineLayout LineLayout::parse(std::istream& in, std::string name, int cols) {
    std::vector<LayoutBlock> blocks;
    std::vector<int> uncovered;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw)) continue;
        if (kw == "block") {
            int r = 0;
            std::string tok;
            if (!(ls >> r)) {
                throw std::invalid_argument(name + ":" + std::to_string(lineno) +
                                            ": block needs <r> <col-list>");
            }
            std::vector<int> cs;
            while (ls >> tok) parse_cols(tok, cs);
            if (cs.empty()) {
                throw std::invalid_argument(name + ":" + std::to_string(lineno) +
                                            ": block needs at least one column");
            }
            std::sort(cs.begin(), cs.end());
            CodeSpec code = make_code(r);
            if (static_cast<int>(cs.size()) != code.n) {
                throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": block r=" +
                                            std::to_string(r) + " needs " + std::to_string(code.n) +
                                            " columns, got " + std::to_string(cs.size()));
            }
            for (std::size_t i = 1; i < cs.size(); ++i) {
                if (cs[i] != cs[i - 1] + 1) {
                    throw std::invalid_argument(name + ":" + std::to_string(lineno) +
                                                ": block columns must be contiguous");
                }
            }
            blocks.push_back(LayoutBlock{std::move(code), cs.front()});
        } else if (kw == "uncovered") {
            std::string tok;
            while (ls >> tok) parse_cols(tok, uncovered);
        } else {
            throw std::invalid_argument(name + ":" + std::to_string(lineno) +
                                        ": unknown keyword '" + kw + "'");
        }
    }
    return LineLayout(std::move(name), std::move(blocks), std::move(uncovered), cols);
}

namespace {

LineLayout make_builtin(const std::string& name, int r, std::vector<int> starts,
                        std::vector<int> uncovered) {
    std::vector<LayoutBlock> blocks;
    for (int s : starts) blocks.push_back(LayoutBlock{make_code(r), s});
    return LineLayout(name, std::move(blocks), std::move(uncovered));
}

}  // namespace

std::vector<LineLayout> builtin_layouts() {
    std::vector<LineLayout> out;
    out.push_back(make_builtin("ham74a", 3, {1, 8, 15, 22}, {29, 30, 31, 32}));
    out.push_back(make_builtin("ham74b", 3, {1, 9, 17, 25}, {8, 16, 24, 32}));
    out.push_back(make_builtin("ham1511", 4, {1, 16}, {31, 32}));
    {
        std::vector<LayoutBlock> blocks;
        blocks.push_back(LayoutBlock{make_code(4), 1});
        blocks.push_back(LayoutBlock{make_code(3), 16});
        blocks.push_back(LayoutBlock{make_code(3), 23});
        out.push_back(LineLayout("ham151174", std::move(blocks), {30, 31, 32}));
    }
    out.push_back(make_builtin("ham3126", 5, {1}, {32}));
    return out;
}

std::optional<LineLayout> find_builtin_layout(const std::string& name) {
    auto norm = [](std::string s) {
        std::string o;
        for (char ch : s) {
            if (ch == ',' || ch == '_' || ch == '.' || ch == '-') continue;
            o += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
        }
        return o;
    };
    for (auto& l : builtin_layouts()) {
        if (norm(l.name()) == norm(name)) return l;
    }
    return std::nullopt;
}

}  // namespace hamsim
