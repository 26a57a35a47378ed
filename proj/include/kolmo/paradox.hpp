#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kolmo/assembler.hpp"
#include "kolmo/counting.hpp"
#include "kolmo/machine.hpp"

// The central experiment: materialize the length-ordered list of all short
// strings, ship a machine-code generator whose length is k_gen plus a fixed
// number of bits per binary digit of N, build literal selector programs that
// must embed their target, and put the exact counts side by side.

namespace kolmo {

struct ListTooLarge : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IndexOutOfRange : std::out_of_range {
    using std::out_of_range::out_of_range;
};

/// Number of items in the list for max length N: 2^(N+1) - 2.
inline BigInt list_count(std::uint64_t n) { return strings_up_to(n); }

/// Total concatenation length: sum_{i=1..N} i 2^i = (N-1) 2^(N+1) + 2.
inline BigInt list_concat_length(std::uint64_t n) {
    return BigInt(n - 1) * (BigInt(1) << (n + 1)) + 2;
}

struct StringList {
    std::uint64_t n = 0;
    std::vector<BitVec> items;  // ordered by length, then numeric value
    BitVec concat;              // items joined without separators
};

inline constexpr std::uint64_t kDefaultListBitCap = std::uint64_t(1) << 26;

/// All nonempty strings of length <= N, length order then numeric order.
inline StringList generate_list(std::uint64_t n,
                                std::uint64_t bit_cap = kDefaultListBitCap) {
    if (n < 1) throw std::invalid_argument("generate_list: N >= 1 required");
    if (list_concat_length(n) > bit_cap)
        throw ListTooLarge("generate_list: N=" + std::to_string(n) +
                           " exceeds the materialization cap");
    StringList l;
    l.n = n;
    l.items.reserve(std::size_t(list_count(n)));
    l.concat.reserve(std::size_t(list_concat_length(n)));
    for (std::uint64_t w = 1; w <= n; ++w) {
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << w); ++v) {
            BitVec s(w);
            for (std::uint64_t i = 0; i < w; ++i) s[i] = (v >> (w - 1 - i)) & 1;
            l.concat.insert(l.concat.end(), s.begin(), s.end());
            l.items.push_back(std::move(s));
        }
    }
    return l;
}

/// The j-th list item (1-based) without materializing the list.
inline BitVec list_item(std::uint64_t n, std::uint64_t j) {
    if (j < 1 || BigInt(j) > list_count(n))
        throw IndexOutOfRange("list_item: j out of range");
    std::uint64_t w = 1;
    std::uint64_t before = 0;  // items of length < w
    while (j > before + (std::uint64_t(1) << w)) {
        before += std::uint64_t(1) << w;
        ++w;
    }
    std::uint64_t v = j - before - 1;
    BitVec s(w);
    for (std::uint64_t i = 0; i < w; ++i) s[i] = (v >> (w - 1 - i)) & 1;
    return s;
}

// ---- generator template ----
//
// Tape convention: logical pair p lives at cells (2p, 2p+1): a flag track and
// a data track. Pair 0 is home; its flag stays 0 (every flag scan terminates
// there) and its data cell is the run flag. Pairs 1.. hold a binary counter
// X, LSB at pair 1, flags marking its current width. Pairs -1.. hold the
// complemented halt countdown, flags marking its width; the splice writes its
// digits.
//
// X starts at "10". Each round prints X's digits below its leading 1 (that is
// the next list item) and increments X. When the increment grows X by a bit,
// one width is finished: the countdown advances, and its overflow clears the
// run flag, which ends the main loop. Spliced with the digits of N-1 this
// prints exactly the list for N and halts.
inline constexpr std::string_view kGeneratorListing = R"(; list generator for bitvm-v1
; init: X := "10" (pairs 1,2), run := 1, head to pair -1's flag
R
R
F           ; flag 1
R
R
F           ; flag 2
R
F           ; data 2 = 1
L
L
L
L
F           ; run = 1
L
L
L           ; at flag of pair -1
; countdown digits (complement of N-1, least significant first) go here
%N%
; head is now at the first flag past the countdown; return home
R
R
[
R
R
]
R           ; at run flag
[           ; main loop
; print X below its leading 1, walking from pair (w-1) down to pair 1
R
[
R
R
]           ; at flag w+1
L
L
L
L           ; at flag w-1
[
R
O
L
L
L
]           ; at home flag
; increment X from its LSB
R
R
R           ; at data 1
[
F
R
R
]           ; at first 0 data cell, pair q
F           ; set it
L           ; at flag q: 1 = interior carry stop, 0 = X grew
[           ; no growth: just walk to the cell past the width
R
R
[
R
R
]
R           ; at data w+1, a 0 cell
]
R           ; growth lands on data q = 1, no-growth on a 0 cell
[           ; growth: mark the new width bit, advance the countdown
L
F           ; flag q = 1
L
L
[
L
L
]           ; at home flag
R
F           ; run = 0 until the countdown advance succeeds
L
L           ; at countdown LSB data
[
F
L
L
]           ; carry; stops at a 0 data cell, pair p
L           ; flag p: 1 = still inside the countdown, 0 = overflow: halt
[           ; countdown still live: finish the advance, restore run
R
F           ; data p = 1
R
[
R
R
]           ; at home flag
R
F           ; run = 1
L
L
L           ; at flag -1
[
L
L
]           ; at the flag past the countdown, a 0 cell
]
R
R
[
R
R
]           ; back at home flag
R
R
[
R
R
]           ; at flag w+1 (new width)
R
R           ; at flag w+2, a 0 cell
]
; both paths: at the flag two pairs past the width
L
L
L
L           ; at the width's top flag
[
L
L
]           ; at home flag
R           ; at run flag
]
E
)";

inline constexpr std::uint64_t kSpliceOpsPerDigit = 6;
inline constexpr std::uint64_t kGeneratorBitsPerDigit = 3 * kSpliceOpsPerDigit;

/// Digit blocks for the countdown splice: digits of N-1, complemented,
/// least significant first, each block exactly kSpliceOpsPerDigit opcodes.
/// Blocks write one (flag, data) pair and step one pair leftward.
inline std::vector<Op> generator_splice(std::uint64_t n) {
    std::uint64_t m = n - 1;
    std::uint64_t digits = bits_of(n);  // ceil(log2(N+1))
    std::vector<Op> ops;
    ops.reserve(digits * kSpliceOpsPerDigit);
    for (std::uint64_t i = 0; i < digits; ++i) {
        bool complemented = ((m >> i) & 1) == 0;
        if (complemented) {
            // flag = 1, data = 1, move left one pair
            ops.insert(ops.end(), {Op::Flip, Op::MoveRight, Op::Flip, Op::MoveLeft,
                                   Op::MoveLeft, Op::MoveLeft});
        } else {
            // flag = 1, data stays 0, move left one pair ([F] is skipped)
            ops.insert(ops.end(), {Op::Flip, Op::MoveLeft, Op::MoveLeft,
                                   Op::LoopOpen, Op::Flip, Op::LoopClose});
        }
    }
    return ops;
}

struct GeneratorAccount {
    std::uint64_t n = 0;
    Program program;
    std::uint64_t total_bits = 0;
    std::uint64_t k_gen = 0;      // template overhead, bits
    std::uint64_t c_per_bit = 0;  // program bits per binary digit of N
    std::uint64_t n_bits = 0;     // ceil(log2(N+1))
};

inline const AsmListing& generator_listing() {
    static const AsmListing l = parse_listing(kGeneratorListing);
    return l;
}

/// Template overhead in bits: the listing without any spliced digits.
inline std::uint64_t generator_k_gen() {
    const auto& l = generator_listing();
    return 3 * (l.before_splice.size() + l.after_splice.size());
}

/// Program length for parameter N, by the length identity alone.
inline std::uint64_t generator_bits(std::uint64_t n) {
    return generator_k_gen() + kGeneratorBitsPerDigit * bits_of(n);
}

inline GeneratorAccount generator_program(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("generator_program: N >= 1 required");
    GeneratorAccount a{.n = n,
                       .program = assemble(generator_listing(), generator_splice(n)),
                       .total_bits = 0,
                       .k_gen = generator_k_gen(),
                       .c_per_bit = kGeneratorBitsPerDigit,
                       .n_bits = bits_of(n)};
    a.total_bits = a.program.bit_length();
    return a;
}

// ---- selector programs ----

/// A program whose output is exactly the j-th list item: the End template
/// plus a literal splice of the target, one Output per bit and a Flip at each
/// bit change. The address of the item is the item itself.
inline Program selector_program(std::uint64_t n, std::uint64_t j) {
    BitVec s = list_item(n, j);
    std::vector<Op> ops;
    bool cell = false;
    for (auto b : s) {
        if ((b != 0) != cell) {
            ops.push_back(Op::Flip);
            cell = !cell;
        }
        ops.push_back(Op::Output);
    }
    ops.push_back(Op::End);
    return std::get<Program>(Program::from_ops(std::move(ops)));
}

inline constexpr std::uint64_t kSelectorTemplateBits = 3;  // the End opcode

// ---- report ----

struct SelectorExample {
    std::uint64_t j = 0;
    std::string item;
    std::uint64_t selector_bits = 0;
};

struct ParadoxReport {
    std::uint64_t n = 0;
    std::uint64_t k_gen = 0;
    std::uint64_t c_per_bit = 0;
    std::uint64_t generator_bits = 0;
    BigInt strings_in_list;
    BigInt programs_bound;  // 2^(generator_bits+1) - 2
    BigInt guaranteed_high_complexity_count;
    std::vector<SelectorExample> selector_examples;
};

/// Pure arithmetic plus the length identity; no list materialization.
inline ParadoxReport paradox_report(std::uint64_t n) {
    if (n < 1) throw std::invalid_argument("paradox_report: N >= 1 required");
    ParadoxReport r;
    r.n = n;
    r.k_gen = generator_k_gen();
    r.c_per_bit = kGeneratorBitsPerDigit;
    r.generator_bits = generator_bits(n);
    r.strings_in_list = list_count(n);
    r.programs_bound = strings_up_to(r.generator_bits);
    r.guaranteed_high_complexity_count = r.strings_in_list - r.programs_bound;
    if (r.guaranteed_high_complexity_count < 0) r.guaranteed_high_complexity_count = 0;
    if (n <= 6) {
        auto count = std::uint64_t(list_count(n));
        for (std::uint64_t j : {std::uint64_t(1), count / 2, count}) {
            if (j < 1) continue;
            Program sel = selector_program(n, j);
            r.selector_examples.push_back(
                {j, bitvec_str(list_item(n, j)), sel.bit_length()});
        }
    }
    return r;
}

}  // namespace kolmo
