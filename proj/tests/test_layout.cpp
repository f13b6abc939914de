#include <doctest.h>

#include <stdexcept>

#include <fstream>
#include <sstream>

#include "hamsim/layout.hpp"
#include "hamsim/reliability.hpp"

using namespace hamsim;

TEST_CASE("builtin layouts partition all 32 columns") {
    auto layouts = builtin_layouts();
    REQUIRE(layouts.size() == 5);

    const int want_uncovered[] = {4, 4, 2, 3, 1};
    const int want_redundancy[] = {12, 12, 8, 10, 5};
    for (std::size_t i = 0; i < layouts.size(); ++i) {
        const LineLayout& l = layouts[i];
        CHECK(l.cols() == 32);
        CHECK(static_cast<int>(l.uncovered().size()) == want_uncovered[i]);
        int covered = 0, uncovered = 0, redundancy = 0;
        for (int c = 1; c <= 32; ++c) {
            auto b = l.block_of(c);  // throws if any column were unassigned
            if (b) ++covered;
            else ++uncovered;
        }
        CHECK(covered + uncovered == 32);
        CHECK(uncovered == want_uncovered[i]);
        for (const auto& blk : l.blocks()) redundancy += blk.code.r;
        CHECK(redundancy == want_redundancy[i]);
    }
}

TEST_CASE("builtin layout column maps") {
    auto a = find_builtin_layout("ham74a");
    REQUIRE(a);
    CHECK_FALSE(a->block_of(29).has_value());  // uncovered tail
    CHECK(a->block_of(7) == 0);
    CHECK(a->block_of(8) == 1);
    CHECK(a->local_position(8) == 1);
    CHECK(a->local_position(14) == 7);
    CHECK_THROWS_AS(a->block_of(0), std::invalid_argument);
    CHECK_THROWS_AS(a->block_of(33), std::invalid_argument);

    auto h31 = find_builtin_layout("Ham31,26");  // display-style name resolves too
    REQUIRE(h31);
    CHECK(h31->block_of(31) == 0);
    CHECK_FALSE(h31->block_of(32).has_value());

    auto b = find_builtin_layout("ham74b");
    REQUIRE(b);
    CHECK_FALSE(b->block_of(8).has_value());
    CHECK(b->block_of(9) == 1);
    CHECK(b->local_position(9) == 1);
}

TEST_CASE("layout parser accepts the shipped files and matches builtins") {
    const char* files[] = {"ham74a", "ham74b", "ham1511", "ham151174", "ham3126"};
    auto builtins = builtin_layouts();
    for (std::size_t i = 0; i < 5; ++i) {
        std::ifstream f(std::string(HAMSIM_DATA_DIR) + "/layouts/" + files[i] + ".txt");
        REQUIRE(f);
        LineLayout parsed = LineLayout::parse(f, files[i]);
        CHECK(parsed.blocks().size() == builtins[i].blocks().size());
        for (int c = 1; c <= 32; ++c) CHECK(parsed.block_of(c) == builtins[i].block_of(c));
    }
}

TEST_CASE("layout validation errors") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return LineLayout::parse(in, "t");
    };
    CHECK_THROWS_AS(parse("block 3 1-7\nuncovered 8-32\nblock 3 5-11\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("block 3 1-7\n"), std::invalid_argument);          // gap
    CHECK_THROWS_AS(parse("block 3 1-6 8\nuncovered 7 9-32\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("block 3 1-8\nuncovered 9-32\n"), std::invalid_argument);  // wrong n
    CHECK_THROWS_AS(parse("bogus 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse("block 3 1-7\nuncovered 8-33\n"), std::invalid_argument);
    // a fully uncovered layout is a valid partition, just useless for ECC
    LineLayout bare = parse("uncovered 1-32\n");
    CHECK(bare.blocks().empty());
    CHECK_THROWS_AS(redundancy_rate(bare), std::invalid_argument);
}

TEST_CASE("geometry is parameterized") {
    std::istringstream in("block 3 1-7\nuncovered 8-10\n");
    LineLayout l = LineLayout::parse(in, "small", 10);
    CHECK(l.cols() == 10);
    CHECK(l.block_of(10) == std::nullopt);
}
