#include <catch2/catch_amalgamated.hpp>

#include "kolmo/joint.hpp"

using namespace kolmo;

TEST_CASE("pair encoding examples") {
    REQUIRE(bitvec_str(pair_encode({}, {})) == "0");
    REQUIRE(bitvec_str(pair_encode(bitvec_parse("1"), bitvec_parse("0"))) == "1010");
    REQUIRE(bitvec_str(pair_encode(bitvec_parse("10"), bitvec_parse("1"))) == "110101");
}

TEST_CASE("pair encoding round trips") {
    for (const auto& x : detail::all_strings_up_to(4))
        for (const auto& y : detail::all_strings_up_to(4)) {
            auto [bx, by] = pair_decode(pair_encode(x, y));
            REQUIRE(bx == x);
            REQUIRE(by == y);
        }
    REQUIRE_THROWS_AS(pair_decode(bitvec_parse("11")), std::invalid_argument);
    REQUIRE_THROWS_AS(pair_decode(bitvec_parse("1100")), std::invalid_argument);
}

TEST_CASE("too-small bounds are rejected, not silently reported") {
    SearchBounds tiny;
    tiny.max_program_bits = 9;
    tiny.budgets = {64, 128};
    REQUIRE_THROWS_AS(verify_subadditivity(1, 1, tiny), IncompleteTable);
}

TEST_CASE("subadditivity over the empty-vs-bit grid") {
    SearchBounds b;
    b.max_program_bits = 18;
    b.budgets = {200, 400};
    auto rep = verify_subadditivity(0, 1, b);
    REQUIRE(rep.rows.size() == 3);  // x = "", y in {"", "0", "1"}
    for (const auto& row : rep.rows) {
        REQUIRE(row.converged);
        REQUIRE(row.margin <= rep.max_margin);
        // x = "": the pair code is just "0" + y, one header bit of slack
        REQUIRE(row.k_x == 3);
    }
    REQUIRE(rep.max_margin <= 18);
}

TEST_CASE("telescoped chain bound at N = 1") {
    SearchBounds b;
    b.max_program_bits = 15;
    b.budgets = {200, 400};
    auto rep = recursive_list_bound(1, b, 0);
    REQUIRE(rep.terms.size() == 2);
    REQUIRE(rep.terms[0].item == "0");
    REQUIRE(rep.terms[1].item == "1");
    REQUIRE(rep.terms[0].k_cond == 6);   // OE
    REQUIRE(rep.terms[1].k_cond == 9);   // FOE (or IOE given the prefix)
    REQUIRE(rep.chain_bound == 15);
    REQUIRE(rep.k_concat.has_value());
    REQUIRE(*rep.k_concat == 12);        // OFOE prints "01"
    REQUIRE(*rep.k_concat <= rep.chain_bound);
    REQUIRE(rep.generator_bound == generator_bits(1));
}
