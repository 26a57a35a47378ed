#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kolmo/bitstring.hpp"
#include "kolmo/counting.hpp"
#include "kolmo/paradox.hpp"

// The closing contrast: the list concatenation looks random to block
// statistics, resists dictionary compression, and still has a description
// that grows only logarithmically.

namespace kolmo {

enum class SequenceVariant {
    AllStrings,  // concat of all strings by length: the limit of the list
    Counting,    // concat of binary numerals of 1, 2, 3, ...
};

inline std::string_view sequence_variant_name(SequenceVariant v) {
    return v == SequenceVariant::AllStrings ? "all-strings" : "counting";
}

struct SequenceSpec {
    SequenceVariant variant = SequenceVariant::AllStrings;
    std::uint64_t n = 1;  // prefix length in bits
};

/// Streaming bit source; memory independent of how far it runs.
class SequenceStream {
public:
    explicit SequenceStream(SequenceVariant variant) : variant_(variant) {
        if (variant_ == SequenceVariant::AllStrings) {
            width_ = 1;
            value_ = 0;
        } else {
            value_ = 1;
            width_ = 1;  // numerals carry their leading 1
        }
        pos_ = 0;
    }

    bool next() {
        bool bit = (value_ >> (width_ - 1 - pos_)) & 1;
        if (++pos_ == width_) {
            pos_ = 0;
            ++value_;
            if (variant_ == SequenceVariant::AllStrings) {
                if (value_ == (std::uint64_t(1) << width_)) {
                    value_ = 0;
                    ++width_;
                }
            } else {
                if (value_ == (std::uint64_t(1) << width_)) ++width_;
            }
        }
        return bit;
    }

private:
    SequenceVariant variant_;
    std::uint64_t value_ = 0;
    std::uint64_t width_ = 1;
    std::uint64_t pos_ = 0;
};

inline BitVec sequence_prefix(const SequenceSpec& spec) {
    if (spec.n < 1) throw std::invalid_argument("sequence_prefix: n >= 1 required");
    SequenceStream s(spec.variant);
    BitVec v;
    v.reserve(spec.n);
    for (std::uint64_t i = 0; i < spec.n; ++i) v.push_back(s.next());
    return v;
}

/// Exact nonnegative rational; kept reduced.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational make(std::int64_t n, std::int64_t d) {
        auto g = std::gcd(n < 0 ? -n : n, d);
        return {n / g, d / g};
    }
    double to_double() const { return double(num) / double(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
    friend bool operator<(const Rational& a, const Rational& b) {
        return __int128(a.num) * b.den < __int128(b.num) * a.den;
    }
};

struct BlockStats {
    SequenceSpec spec;
    std::uint64_t block_size = 1;
    std::vector<std::uint64_t> counts;  // index = block value, size 2^b
    std::uint64_t windows = 0;          // n - b + 1, the exact count total
    Rational discrepancy;               // max over blocks of |count/windows - 2^-b|
    double entropy_rate = 0;            // H_b / b, the one floating-point surface
};

/// Sliding-window block counts over the given bits; everything except the
/// entropy is exact integer/rational arithmetic.
inline BlockStats block_stats_bits(const BitVec& bits, std::uint64_t b) {
    if (b < 1 || b > 16) throw std::invalid_argument("block_stats: 1 <= b <= 16");
    if (bits.size() < b) throw std::invalid_argument("block_stats: n >= b required");
    BlockStats st;
    st.block_size = b;
    st.counts.assign(std::size_t(1) << b, 0);
    const std::uint64_t mask = (std::uint64_t(1) << b) - 1;
    std::uint64_t window = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        window = ((window << 1) | bits[i]) & mask;
        if (i + 1 >= b) ++st.counts[window];
    }
    st.windows = bits.size() - b + 1;

    // discrepancy = max |c * 2^b - windows| / (windows * 2^b), exact
    const std::int64_t T = std::int64_t(st.windows);
    const std::int64_t B = std::int64_t(1) << b;
    std::int64_t worst = 0;
    double h = 0;
    for (auto c : st.counts) {
        std::int64_t d = std::int64_t(c) * B - T;
        if (d < 0) d = -d;
        if (d > worst) worst = d;
        if (c > 0) {
            double f = double(c) / double(T);
            h -= f * std::log2(f);
        }
    }
    st.discrepancy = Rational::make(worst, T * B);
    st.entropy_rate = h / double(b);
    return st;
}

inline BlockStats block_stats(const SequenceSpec& spec, std::uint64_t b) {
    auto st = block_stats_bits(sequence_prefix(spec), b);
    st.spec = spec;
    return st;
}

// ---- incremental-parsing dictionary compressor ----
//
// Greedy parse: each phrase is the longest already-seen phrase plus one bit.
// Phrase t costs ceil(log2 t) + 1 bits (parent index plus the new bit); a
// trailing phrase that is a pure repeat carries no new bit and costs only the
// index.

struct Phrase {
    std::uint32_t parent = 0;  // 0 = empty phrase
    std::uint8_t bit = 0;
    bool has_bit = true;  // false only for a trailing partial phrase
};

struct ParseResult {
    std::vector<Phrase> phrases;
    std::uint64_t cost_bits = 0;
    std::uint64_t input_bits = 0;
    Rational ratio;  // cost / input length
};

inline ParseResult dictionary_parse(const BitVec& bits) {
    if (bits.empty()) throw std::invalid_argument("dictionary_parse: empty input");
    ParseResult r;
    r.input_bits = bits.size();
    // trie over phrases; node 0 = empty phrase
    std::vector<std::array<std::uint32_t, 2>> child{{0, 0}};
    std::size_t i = 0;
    while (i < bits.size()) {
        std::uint32_t node = 0;
        while (i < bits.size() && child[node][bits[i]] != 0) {
            node = child[node][bits[i]];
            ++i;
        }
        std::uint64_t t = r.phrases.size() + 1;
        if (i < bits.size()) {
            auto fresh = std::uint32_t(child.size());
            child.push_back({0, 0});
            child[node][bits[i]] = fresh;
            r.phrases.push_back({node, bits[i], true});
            r.cost_bits += ceil_log2(t) + 1;
            ++i;
        } else {
            r.phrases.push_back({node, 0, false});  // trailing partial
            r.cost_bits += ceil_log2(t);
        }
    }
    r.ratio = Rational::make(std::int64_t(r.cost_bits), std::int64_t(r.input_bits));
    return r;
}

/// Test-facing decoder: rebuilds the exact input from the phrase stream.
inline BitVec dictionary_decode(const std::vector<Phrase>& phrases) {
    std::vector<std::pair<std::uint32_t, std::uint8_t>> dict{{0, 0}};  // (parent, bit)
    BitVec out;
    auto append = [&](std::uint32_t node) {
        BitVec tmp;
        while (node != 0) {
            tmp.push_back(dict[node].second);
            node = dict[node].first;
        }
        out.insert(out.end(), tmp.rbegin(), tmp.rend());
    };
    for (const auto& ph : phrases) {
        append(ph.parent);
        if (ph.has_bit) {
            out.push_back(ph.bit);
            dict.push_back({ph.parent, ph.bit});
        }
    }
    return out;
}

inline Rational dictionary_compress_ratio(const BitVec& bits) {
    return dictionary_parse(bits).ratio;
}

// ---- the contrast ----

/// Template overhead of the shipped list generator; the AllStrings sequence
/// is what that program prints in the limit, so (template, n) describes any
/// prefix.
inline std::uint64_t champ_description_overhead() { return generator_k_gen(); }

inline std::uint64_t description_bits_for(std::uint64_t n) {
    return champ_description_overhead() + bits_of(n);
}

struct ContrastReport {
    SequenceSpec spec;
    std::uint64_t description_bits = 0;
    std::uint64_t compressed_bits = 0;  // dictionary parse cost
    double entropy_bits = 0;            // n * entropy_rate at the report block size
    std::uint64_t entropy_block_size = 4;
    bool contrast_claimed = false;      // off when n is too small to say anything
    double gap = 0;                     // min(statistical sizes) / description_bits
};

inline ContrastReport complexity_contrast(const SequenceSpec& spec,
                                          std::uint64_t entropy_block_size = 4) {
    ContrastReport r;
    r.spec = spec;
    r.entropy_block_size = entropy_block_size;
    r.description_bits = description_bits_for(spec.n);
    BitVec bits = sequence_prefix(spec);
    r.compressed_bits = dictionary_parse(bits).cost_bits;
    r.entropy_bits = double(spec.n) * block_stats_bits(bits, entropy_block_size).entropy_rate;
    if (spec.n > r.description_bits) {
        r.contrast_claimed = true;
        double stat = std::min(double(r.compressed_bits), r.entropy_bits);
        r.gap = stat / double(r.description_bits);
    }
    return r;
}

}  // namespace kolmo
