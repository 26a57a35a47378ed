#pragma once

#include <atomic>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "kolmo/enumerate.hpp"
#include "kolmo/machine.hpp"

// Exhaustive complexity tables K^(s): for every output producible by a valid
// program within (max_program_bits, budget), the minimal witness. Ties among
// equal-length witnesses break to the smallest numeric encoding, which makes
// tables canonical and parallel merges order-free.

namespace kolmo {

inline constexpr std::size_t kDefaultOutputCap = 64;

struct KEntry {
    std::uint32_t min_bits = 0;
    std::uint64_t witness_encoding = 0;  // numeric value of the 3-bit encoding
    std::uint64_t steps = 0;
    bool converged = false;

    friend bool operator==(const KEntry&, const KEntry&) = default;
};

struct KTable {
    std::map<Bits64, KEntry> entries;  // ordered by (length, value): canonical
    std::uint64_t max_program_bits = 0;
    std::uint64_t budget = 0;
    std::uint64_t output_cap = kDefaultOutputCap;
    BitVec input;
    std::string machine_version{kMachineVersion};

    const KEntry* find(Bits64 key) const {
        auto it = entries.find(key);
        return it == entries.end() ? nullptr : &it->second;
    }
};

namespace detail {

// Witness candidates per output. A candidate is better in length order if
// (bits, encoding) is smaller; a slower-to-halt program can still matter at a
// smaller budget, so we keep the pareto front over (length order, steps).
struct Candidate {
    std::uint32_t bits;
    std::uint64_t enc;
    std::uint64_t steps;
    bool better_order(const Candidate& o) const {
        return bits != o.bits ? bits < o.bits : enc < o.enc;
    }
};

struct ParetoFront {
    std::vector<Candidate> cands;  // kept sorted by (bits, enc)

    void add(const Candidate& c) {
        for (auto it = cands.begin(); it != cands.end();) {
            if (!c.better_order(*it) && it->steps <= c.steps) return;  // dominated
            if (c.better_order(*it) && c.steps <= it->steps)
                it = cands.erase(it);
            else
                ++it;
        }
        auto pos = cands.begin();
        while (pos != cands.end() && pos->better_order(c)) ++pos;
        cands.insert(pos, c);
    }

    void merge(const ParetoFront& o) {
        for (const auto& c : o.cands) add(c);
    }

    /// Best candidate halting within `budget`, if any.
    const Candidate* best_within(std::uint64_t budget) const {
        for (const auto& c : cands)
            if (c.steps <= budget) return &c;
        return nullptr;
    }
};

using FrontMap = std::unordered_map<Bits64, ParetoFront>;

inline void scan_job(const std::vector<Op>& prefix, std::size_t body_len,
                     std::uint64_t budget, const BitVec& input,
                     std::size_t output_cap, Vm& vm, FrontMap& out) {
    MachineConfig cfg{budget, input};
    enumerate_with_prefix(prefix, body_len, [&](const Program& p) {
        auto res = vm.run(CompiledProgram::compile(p), cfg, output_cap);
        if (res.kind != RunKind::Halted) return;
        if (vm.output_overflow()) return;  // beyond the table's output cap
        Bits64 key = bitvec_to_bits64(res.output);
        out[key].add({std::uint32_t(p.bit_length()), p.encoding_value(), res.steps_used});
    });
}

/// Full scan: every valid program with bit_length <= max_program_bits run at
/// `budget`. Partitioned over fixed body prefixes; the merged result is
/// independent of worker count and schedule.
inline FrontMap scan_programs(std::uint64_t max_program_bits, std::uint64_t budget,
                              const BitVec& input, std::size_t output_cap,
                              std::size_t workers) {
    if (workers == 0) workers = 1;
    std::size_t max_body = max_program_bits < 3 ? 0 : max_program_bits / 3 - 1;

    struct Job {
        std::vector<Op> prefix;
        std::size_t body_len;
    };
    std::vector<Job> jobs;
    for (std::size_t m = 0; m <= max_body; ++m) {
        if (m < 6 || workers == 1) {
            jobs.push_back({{}, m});
        } else {
            for (Op a : detail::kBodyOps)
                for (Op b : detail::kBodyOps) jobs.push_back({{a, b}, m});
        }
    }

    std::vector<FrontMap> partial(workers);
    std::atomic<std::size_t> next{0};
    auto work = [&](std::size_t w) {
        Vm vm;
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) break;
            scan_job(jobs[i].prefix, jobs[i].body_len, budget, input, output_cap,
                     vm, partial[w]);
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& t : pool) t.join();
    }
    FrontMap merged = std::move(partial[0]);
    for (std::size_t w = 1; w < workers; ++w)
        for (auto& [k, f] : partial[w]) merged[k].merge(f);
    return merged;
}

inline KTable table_at_budget(const FrontMap& fronts, std::uint64_t max_program_bits,
                              std::uint64_t budget, std::size_t output_cap,
                              const BitVec& input) {
    KTable t;
    t.max_program_bits = max_program_bits;
    t.budget = budget;
    t.output_cap = output_cap;
    t.input = input;
    for (const auto& [key, front] : fronts) {
        if (const auto* c = front.best_within(budget))
            t.entries[key] = {c->bits, c->enc, c->steps, false};
    }
    return t;
}

}  // namespace detail

inline KTable build_ktable(std::uint64_t max_program_bits, std::uint64_t budget,
                           const BitVec& input = {}, std::size_t workers = 1,
                           std::size_t output_cap = kDefaultOutputCap) {
    auto fronts = detail::scan_programs(max_program_bits, budget, input, output_cap, workers);
    return detail::table_at_budget(fronts, max_program_bits, budget, output_cap, input);
}

/// One scan at the largest budget, then pointwise-monotone tables per budget.
/// Determinism makes this equivalent to independent builds: a program halting
/// within b steps behaves identically under every budget >= b. The last
/// table's entries carry converged flags: unchanged across the final two
/// budgets.
inline std::vector<KTable> budget_sweep(std::uint64_t max_program_bits,
                                        const std::vector<std::uint64_t>& budgets,
                                        const BitVec& input = {},
                                        std::size_t workers = 1,
                                        std::size_t output_cap = kDefaultOutputCap) {
    if (budgets.empty()) return {};
    for (std::size_t i = 1; i < budgets.size(); ++i)
        if (budgets[i] <= budgets[i - 1])
            throw std::invalid_argument("budget_sweep: budgets must be strictly ascending");
    auto fronts = detail::scan_programs(max_program_bits, budgets.back(), input,
                                        output_cap, workers);
    std::vector<KTable> tables;
    tables.reserve(budgets.size());
    for (auto b : budgets)
        tables.push_back(detail::table_at_budget(fronts, max_program_bits, b,
                                                 output_cap, input));
    if (tables.size() >= 2) {
        auto& last = tables.back();
        const auto& prev = tables[tables.size() - 2];
        for (auto& [key, e] : last.entries) {
            const KEntry* pe = prev.find(key);
            e.converged = pe && pe->min_bits == e.min_bits &&
                          pe->witness_encoding == e.witness_encoding;
        }
    } else {
        for (auto& [key, e] : tables.back().entries) e.converged = true;
    }
    return tables;
}

inline std::uint64_t count_valid_programs_u64(std::uint64_t max_bits) {
    return count_valid_programs(std::size_t(max_bits));
}

/// Pigeonhole check over a table: distinct outputs with min_bits <= L never
/// exceed the valid-program count at <= L bits, which never exceeds 2^(L+1)-2.
/// Returns false on any violation.
inline bool check_pigeonhole(const KTable& t) {
    for (std::uint64_t L = 3; L <= t.max_program_bits; ++L) {
        std::uint64_t outputs = 0;
        for (const auto& [key, e] : t.entries)
            if (e.min_bits <= L) ++outputs;
        std::uint64_t programs = count_valid_programs_u64(L);
        if (outputs > programs) return false;
        if (L < 63) {
            std::uint64_t raw = (std::uint64_t(1) << (L + 1)) - 2;
            if (programs > raw) return false;
        }
    }
    return true;
}

// ---- cache file ----
// Versioned text format; reuse requires an exact header match.

inline constexpr int kKTableFormatVersion = 1;

inline void ktable_write(std::ostream& os, const KTable& t) {
    os << "kolmo-ktable " << kKTableFormatVersion << "\n";
    os << "machine " << t.machine_version << "\n";
    os << "opcode_table_hash " << std::hex << opcode_table_hash() << std::dec << "\n";
    os << "max_program_bits " << t.max_program_bits << "\n";
    os << "budget " << t.budget << "\n";
    os << "output_cap " << t.output_cap << "\n";
    os << "input " << (t.input.empty() ? "-" : bitvec_str(t.input)) << "\n";
    os << "entries " << t.entries.size() << "\n";
    for (const auto& [key, e] : t.entries) {
        os << (key.empty() ? "-" : key.str()) << " " << e.min_bits << " " << std::hex
           << e.witness_encoding << std::dec << " " << e.steps << " "
           << int(e.converged) << "\n";
    }
}

struct CacheMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Reads a table; throws CacheMismatch unless the header matches `expect`
/// exactly (ignoring entries).
inline KTable ktable_read(std::istream& is, const KTable& expect) {
    auto fail = [](const std::string& what) -> KTable {
        throw CacheMismatch("ktable cache mismatch: " + what);
    };
    std::string tag;
    int ver = 0;
    is >> tag >> ver;
    if (tag != "kolmo-ktable" || ver != kKTableFormatVersion) return fail("format");
    KTable t;
    std::string k;
    is >> k >> t.machine_version;
    if (t.machine_version != expect.machine_version) return fail("machine_version");
    std::uint64_t hash = 0;
    is >> k >> std::hex >> hash >> std::dec;
    if (hash != opcode_table_hash()) return fail("opcode_table_hash");
    is >> k >> t.max_program_bits;
    if (t.max_program_bits != expect.max_program_bits) return fail("max_program_bits");
    is >> k >> t.budget;
    if (t.budget != expect.budget) return fail("budget");
    is >> k >> t.output_cap;
    if (t.output_cap != expect.output_cap) return fail("output_cap");
    std::string in;
    is >> k >> in;
    t.input = in == "-" ? BitVec{} : bitvec_parse(in);
    if (t.input != expect.input) return fail("input");
    std::size_t n = 0;
    is >> k >> n;
    for (std::size_t i = 0; i < n; ++i) {
        std::string bits;
        KEntry e;
        std::uint64_t conv;
        is >> bits >> e.min_bits >> std::hex >> e.witness_encoding >> std::dec >>
            e.steps >> conv;
        e.converged = conv != 0;
        t.entries[bits == "-" ? Bits64{} : Bits64::parse(bits)] = e;
    }
    if (!is) return fail("truncated");
    return t;
}

/// Decode an entry's witness back into a Program.
inline Program witness_program(const KEntry& e) {
    BitVec bits;
    bits.reserve(e.min_bits);
    for (std::uint32_t i = 0; i < e.min_bits; ++i)
        bits.push_back((e.witness_encoding >> (e.min_bits - 1 - i)) & 1);
    return std::get<Program>(Program::decode(bits));
}

}  // namespace kolmo
