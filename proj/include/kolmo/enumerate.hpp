#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "kolmo/machine.hpp"

// Exhaustive enumeration of valid programs in canonical order: bit_length
// first, then numeric value of the encoding. Structural invalidity (loop
// imbalance, misplaced End) is pruned during generation, never post-filtered.

namespace kolmo {

namespace detail {

// Body opcodes in numeric order; End (7) is appended, never enumerated.
inline constexpr Op kBodyOps[7] = {Op::MoveLeft, Op::MoveRight, Op::Flip,
                                   Op::Output, Op::Input, Op::LoopOpen,
                                   Op::LoopClose};

template <class Fn>
void emit_bodies(std::vector<Op>& body, std::size_t remaining, int open, Fn&& fn) {
    if (remaining == 0) {
        if (open == 0) fn(body);
        return;
    }
    for (Op op : kBodyOps) {
        int d = open;
        if (op == Op::LoopOpen) ++d;
        if (op == Op::LoopClose) {
            if (open == 0) continue;
            --d;
        }
        if (std::size_t(d) > remaining - 1) continue;  // cannot close in time
        body.push_back(op);
        emit_bodies(body, remaining - 1, d, fn);
        body.pop_back();
    }
}

}  // namespace detail

/// Calls fn(Program) for every valid program with bit_length <= max_bits,
/// in canonical order.
template <class Fn>
void enumerate_programs(std::size_t max_bits, Fn&& fn) {
    if (max_bits < 3) return;
    std::size_t max_body = max_bits / 3 - 1;
    std::vector<Op> body;
    for (std::size_t m = 0; m <= max_body; ++m) {
        detail::emit_bodies(body, m, 0, [&](const std::vector<Op>& b) {
            std::vector<Op> ops = b;
            ops.push_back(Op::End);
            fn(std::get<Program>(Program::from_ops(std::move(ops))));
        });
    }
}

/// Enumerate only the programs whose body starts with `prefix` and has exactly
/// `body_len` opcodes. Used to partition a scan into disjoint deterministic
/// work units; the union over all prefixes of a given depth is exactly the
/// full enumeration.
template <class Fn>
void enumerate_with_prefix(const std::vector<Op>& prefix, std::size_t body_len,
                           Fn&& fn) {
    int open = 0;
    for (Op op : prefix) {
        if (op == Op::LoopOpen) ++open;
        if (op == Op::LoopClose) {
            if (open == 0) return;  // structurally dead prefix
            --open;
        }
    }
    if (prefix.size() > body_len) return;
    std::size_t remaining = body_len - prefix.size();
    if (std::size_t(open) > remaining) return;
    std::vector<Op> body = prefix;
    detail::emit_bodies(body, remaining, open, [&](const std::vector<Op>& b) {
        std::vector<Op> ops = b;
        ops.push_back(Op::End);
        fn(std::get<Program>(Program::from_ops(std::move(ops))));
    });
}

/// Number of valid bodies with exactly m opcodes (balanced sequences over
/// five neutral symbols plus bracket pairs): c_0 = 1, c_m = 5 c_{m-1} +
/// sum_{j} c_j c_{m-2-j}.
inline std::vector<std::uint64_t> valid_body_counts(std::size_t max_body) {
    std::vector<std::uint64_t> c(max_body + 1, 0);
    c[0] = 1;
    for (std::size_t m = 1; m <= max_body; ++m) {
        std::uint64_t v = 5 * c[m - 1];
        for (std::size_t j = 0; m >= 2 && j <= m - 2; ++j) v += c[j] * c[m - 2 - j];
        c[m] = v;
    }
    return c;
}

/// Number of valid programs with bit_length <= max_bits.
inline std::uint64_t count_valid_programs(std::size_t max_bits) {
    if (max_bits < 3) return 0;
    std::size_t max_body = max_bits / 3 - 1;
    auto c = valid_body_counts(max_body);
    std::uint64_t total = 0;
    for (auto v : c) total += v;
    return total;
}

}  // namespace kolmo
