#pragma once

#include <cstdint>
#include <compare>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kolmo {

/// A bit string of at most 64 bits, value-packed MSB-first.
/// bit(0) is the first (most significant) bit of the string.
struct Bits64 {
    std::uint64_t value = 0;
    std::uint8_t len = 0;

    constexpr Bits64() = default;
    constexpr Bits64(std::uint64_t v, std::uint8_t n) : value(v), len(n) {}

    static Bits64 parse(std::string_view s) {
        if (s.size() > 64) throw std::invalid_argument("Bits64::parse: too long");
        Bits64 b;
        for (char c : s) {
            if (c != '0' && c != '1') throw std::invalid_argument("Bits64::parse: not a bit");
            b.push_back(c == '1');
        }
        return b;
    }

    constexpr bool bit(std::size_t i) const { return (value >> (len - 1 - i)) & 1u; }

    constexpr void push_back(bool b) {
        value = (value << 1) | std::uint64_t(b);
        ++len;
    }

    constexpr bool empty() const { return len == 0; }
    constexpr std::size_t size() const { return len; }

    std::string str() const {
        std::string s;
        s.reserve(len);
        for (std::size_t i = 0; i < len; ++i) s.push_back(bit(i) ? '1' : '0');
        return s;
    }

    friend constexpr bool operator==(Bits64 a, Bits64 b) {
        return a.len == b.len && a.value == b.value;
    }
    // Order: by length, then numerically. Canonical table order.
    friend constexpr auto operator<=>(Bits64 a, Bits64 b) {
        if (auto c = a.len <=> b.len; c != 0) return c;
        return a.value <=> b.value;
    }
};

/// Unbounded bit sequence, one byte per bit. Used for machine outputs and
/// generated sequences where 64 bits is not enough.
using BitVec = std::vector<std::uint8_t>;

inline BitVec bitvec_parse(std::string_view s) {
    BitVec v;
    v.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') throw std::invalid_argument("bitvec_parse: not a bit");
        v.push_back(c == '1');
    }
    return v;
}

inline std::string bitvec_str(const BitVec& v) {
    std::string s;
    s.reserve(v.size());
    for (auto b : v) s.push_back(b ? '1' : '0');
    return s;
}

inline Bits64 bitvec_to_bits64(const BitVec& v) {
    if (v.size() > 64) throw std::invalid_argument("bitvec_to_bits64: too long");
    Bits64 b;
    for (auto x : v) b.push_back(x != 0);
    return b;
}

}  // namespace kolmo

template <>
struct std::hash<kolmo::Bits64> {
    std::size_t operator()(kolmo::Bits64 b) const noexcept {
        std::uint64_t h = b.value * 0x9e3779b97f4a7c15ull + b.len;
        h ^= h >> 29;
        h *= 0xbf58476d1ce4e5b9ull;
        h ^= h >> 32;
        return std::size_t(h);
    }
};
