#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include "kolmo/paradox.hpp"

using namespace kolmo;

TEST_CASE("list contents at the smallest sizes") {
    auto l1 = generate_list(1);
    REQUIRE(l1.items.size() == 2);
    REQUIRE(bitvec_str(l1.items[0]) == "0");
    REQUIRE(bitvec_str(l1.items[1]) == "1");
    REQUIRE(bitvec_str(l1.concat) == "01");

    REQUIRE(generate_list(2).items.size() == 6);

    auto l3 = generate_list(3);
    REQUIRE(l3.items.size() == 14);
    REQUIRE(l3.concat.size() == 34);
    REQUIRE(bitvec_str(l3.items[5]) == "11");
    REQUIRE(bitvec_str(l3.items[6]) == "000");
}

TEST_CASE("list agrees with the closed forms") {
    for (std::uint64_t n = 1; n <= 16; ++n) {
        auto l = generate_list(n);
        REQUIRE(BigInt(l.items.size()) == list_count(n));
        REQUIRE(BigInt(l.concat.size()) == list_concat_length(n));
        // ordered: by length, then numerically
        for (std::size_t i = 1; i < l.items.size(); ++i) {
            const auto &a = l.items[i - 1], &b = l.items[i];
            if (a.size() == b.size())
                REQUIRE(std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()));
            else
                REQUIRE(a.size() < b.size());
        }
    }
    REQUIRE_THROWS_AS(generate_list(40), ListTooLarge);
}

TEST_CASE("random access matches the materialized list") {
    for (std::uint64_t n : {std::uint64_t(1), std::uint64_t(4), std::uint64_t(9)}) {
        auto l = generate_list(n);
        for (std::uint64_t j = 1; j <= l.items.size(); ++j)
            REQUIRE(list_item(n, j) == l.items[j - 1]);
        REQUIRE_THROWS_AS(list_item(n, 0), IndexOutOfRange);
        REQUIRE_THROWS_AS(list_item(n, l.items.size() + 1), IndexOutOfRange);
    }
}

TEST_CASE("generator length identity") {
    // the identity is static: total = k_gen + c * ceil(log2(N+1)), exactly
    for (std::uint64_t n = 1; n <= 8; ++n) {
        auto a = generator_program(n);
        REQUIRE(a.total_bits == a.k_gen + a.c_per_bit * a.n_bits);
        REQUIRE(a.total_bits == generator_bits(n));
        REQUIRE(a.n_bits == bits_of(n));
    }
    REQUIRE(generator_k_gen() == 369);
    REQUIRE(kGeneratorBitsPerDigit == 18);
}

TEST_CASE("generator execution produces the list") {
    Vm vm;
    for (std::uint64_t n = 1; n <= 4; ++n) {
        auto a = generator_program(n);
        auto out = vm.run(a.program, MachineConfig{10'000'000, {}});
        REQUIRE(out.kind == RunKind::Halted);
        REQUIRE(out.output == generate_list(n).concat);
    }
}

TEST_CASE("selectors print their item and must embed it") {
    Vm vm;
    for (std::uint64_t n = 1; n <= 6; ++n) {
        std::uint64_t count = std::uint64_t(list_count(n));
        for (std::uint64_t j = 1; j <= count; ++j) {
            BitVec s = list_item(n, j);
            Program sel = selector_program(n, j);
            auto out = vm.run(sel, MachineConfig{1000, {}});
            REQUIRE(out.kind == RunKind::Halted);
            REQUIRE(out.output == s);
            // one Output per bit, the terminal End, plus at least one Flip
            // whenever the item contains a 1
            REQUIRE(sel.bit_length() >= 3 * s.size() + kSelectorTemplateBits);
        }
    }
}

TEST_CASE("no single item is as long as the whole output") {
    // the generator's output has length (N-1) 2^(N+1) + 2, which exceeds every
    // item length (at most N) once N >= 1 -- the listed string an item
    // selector addresses is never the generator's own output
    for (std::uint64_t n = 1; n <= 20; ++n)
        REQUIRE(list_concat_length(n) > BigInt(n));
}

TEST_CASE("report invariants across three decades of N") {
    for (std::uint64_t n : {std::uint64_t(1), std::uint64_t(5), std::uint64_t(10),
                            std::uint64_t(100), std::uint64_t(567), std::uint64_t(1000)}) {
        auto r = paradox_report(n);
        REQUIRE(r.generator_bits == r.k_gen + r.c_per_bit * bits_of(n));
        REQUIRE(r.strings_in_list == list_count(n));
        REQUIRE(r.programs_bound == strings_up_to(r.generator_bits));
        BigInt deficit = r.strings_in_list - r.programs_bound;
        if (deficit > 0)
            REQUIRE(r.guaranteed_high_complexity_count == deficit);
        else
            REQUIRE(r.guaranteed_high_complexity_count == 0);
        if (n <= 6) REQUIRE(!r.selector_examples.empty());
    }
}

TEST_CASE("shipped listing matches the embedded template") {
    std::ifstream f(std::string(KOLMO_SOURCE_DIR) + "/data/generator_template.kasm",
                    std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    REQUIRE(ss.str() == std::string(kGeneratorListing));
}
