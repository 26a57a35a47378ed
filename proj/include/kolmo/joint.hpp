#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "kolmo/ktable.hpp"
#include "kolmo/paradox.hpp"

// Desk-scale verification of K(x,y) <= K(x) + K(y|x): exhaustive tables over
// all short pairs, with the pair represented through a fixed unary-length
// header so it stays decodable.

namespace kolmo {

struct IncompleteTable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// 1^|x| 0 x y
inline BitVec pair_encode(const BitVec& x, const BitVec& y) {
    BitVec e;
    e.reserve(x.size() + 1 + x.size() + y.size());
    e.insert(e.end(), x.size(), 1);
    e.push_back(0);
    e.insert(e.end(), x.begin(), x.end());
    e.insert(e.end(), y.begin(), y.end());
    return e;
}

inline std::pair<BitVec, BitVec> pair_decode(const BitVec& e) {
    std::size_t nx = 0;
    while (nx < e.size() && e[nx]) ++nx;
    if (nx >= e.size() || e.size() < 2 * nx + 1)
        throw std::invalid_argument("pair_decode: malformed");
    BitVec x(e.begin() + nx + 1, e.begin() + nx + 1 + nx);
    BitVec y(e.begin() + nx + 1 + nx, e.end());
    return {x, y};
}

struct SearchBounds {
    std::uint64_t max_program_bits = 30;
    std::vector<std::uint64_t> budgets{128, 256};
    std::size_t workers = 1;
    std::size_t output_cap = kDefaultOutputCap;
};

struct SubadditivityRow {
    std::string x, y;
    std::uint64_t k_pair = 0, k_x = 0, k_y_given_x = 0;
    std::int64_t margin = 0;  // k_pair - k_x - k_y_given_x
    bool converged = false;   // all three entries converged in their sweeps
};

struct SubadditivityReport {
    std::uint64_t n_x = 0, n_y = 0;
    std::vector<SubadditivityRow> rows;
    std::int64_t max_margin = 0;
    SearchBounds bounds;
};

namespace detail {

inline std::vector<BitVec> all_strings_up_to(std::uint64_t n) {
    std::vector<BitVec> out;
    out.push_back({});
    for (std::uint64_t w = 1; w <= n; ++w)
        for (std::uint64_t v = 0; v < (std::uint64_t(1) << w); ++v) {
            BitVec s(w);
            for (std::uint64_t i = 0; i < w; ++i) s[i] = (v >> (w - 1 - i)) & 1;
            out.push_back(std::move(s));
        }
    return out;
}

inline const KEntry& require_entry(const KTable& t, const BitVec& key,
                                   const std::string& what) {
    const KEntry* e = t.find(bitvec_to_bits64(key));
    if (!e)
        throw IncompleteTable("no entry for " + what + " \"" + bitvec_str(key) +
                              "\" within search bounds");
    return *e;
}

}  // namespace detail

inline SubadditivityReport verify_subadditivity(std::uint64_t n_x, std::uint64_t n_y,
                                                const SearchBounds& bounds) {
    SubadditivityReport rep;
    rep.n_x = n_x;
    rep.n_y = n_y;
    rep.bounds = bounds;

    auto plain_sweep = budget_sweep(bounds.max_program_bits, bounds.budgets, {},
                                    bounds.workers, bounds.output_cap);
    const KTable& plain = plain_sweep.back();

    auto xs = detail::all_strings_up_to(n_x);
    auto ys = detail::all_strings_up_to(n_y);
    bool first = true;
    for (const auto& x : xs) {
        auto cond_sweep = budget_sweep(bounds.max_program_bits, bounds.budgets, x,
                                       bounds.workers, bounds.output_cap);
        const KTable& cond = cond_sweep.back();
        for (const auto& y : ys) {
            const auto& e_pair = detail::require_entry(plain, pair_encode(x, y), "pair");
            const auto& e_x = detail::require_entry(plain, x, "x");
            const auto& e_y = detail::require_entry(cond, y, "y|x");
            SubadditivityRow row;
            row.x = bitvec_str(x);
            row.y = bitvec_str(y);
            row.k_pair = e_pair.min_bits;
            row.k_x = e_x.min_bits;
            row.k_y_given_x = e_y.min_bits;
            row.margin = std::int64_t(row.k_pair) - std::int64_t(row.k_x) -
                         std::int64_t(row.k_y_given_x);
            row.converged = e_pair.converged && e_x.converged && e_y.converged;
            if (!row.converged)
                throw IncompleteTable("entry for (" + row.x + "," + row.y +
                                      ") not converged within the budget sweep");
            if (first || row.margin > rep.max_margin) rep.max_margin = row.margin;
            first = false;
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

struct ChainTerm {
    std::string item;
    std::uint64_t k_cond = 0;  // K^(item | list prefix before it)
};

struct RecursiveBoundReport {
    std::uint64_t n = 0;
    std::vector<ChainTerm> terms;
    std::int64_t pairing_overhead = 0;             // per join, measured
    std::uint64_t chain_bound = 0;                 // sum of terms + overheads
    std::optional<std::uint64_t> k_concat;         // K^(concat) when in table
    std::uint64_t generator_bound = 0;             // generator_bits(N)
};

/// Telescoped subadditivity over the list for N: sum over items of
/// K^(item | everything before it) plus a measured per-join overhead, put
/// beside K^(concat) where the table has it and beside the generator's upper
/// bound. Feasible only for tiny N; every value must come from a converged
/// table.
inline RecursiveBoundReport recursive_list_bound(std::uint64_t n,
                                                 const SearchBounds& bounds,
                                                 std::int64_t pairing_overhead) {
    RecursiveBoundReport rep;
    rep.n = n;
    rep.pairing_overhead = pairing_overhead;
    rep.generator_bound = generator_bits(n);
    StringList list = generate_list(n);

    BitVec prefix;
    std::uint64_t sum = 0;
    for (const auto& item : list.items) {
        auto sweep = budget_sweep(bounds.max_program_bits, bounds.budgets, prefix,
                                  bounds.workers, bounds.output_cap);
        const auto& e = detail::require_entry(sweep.back(), item, "item|prefix");
        if (!e.converged)
            throw IncompleteTable("chain entry for \"" + bitvec_str(item) +
                                  "\" not converged");
        rep.terms.push_back({bitvec_str(item), e.min_bits});
        sum += e.min_bits;
        prefix.insert(prefix.end(), item.begin(), item.end());
    }
    std::int64_t joins = rep.terms.empty() ? 0 : std::int64_t(rep.terms.size()) - 1;
    rep.chain_bound = std::uint64_t(std::int64_t(sum) +
                                    joins * std::max<std::int64_t>(pairing_overhead, 0));

    auto plain = budget_sweep(bounds.max_program_bits, bounds.budgets, {},
                              bounds.workers, bounds.output_cap);
    if (list.concat.size() <= plain.back().output_cap) {
        if (const KEntry* e = plain.back().find(bitvec_to_bits64(list.concat));
            e && e->converged)
            rep.k_concat = e->min_bits;
    }
    return rep;
}

}  // namespace kolmo
