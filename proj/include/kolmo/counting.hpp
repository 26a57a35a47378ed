#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

// Exact program-counting arithmetic. Everything here is arbitrary-precision
// integer work; no floating point.

namespace kolmo {

using BigInt = boost::multiprecision::cpp_int;

/// ceil(log2(n+1)): bits of n written in plain binary, 0 for n = 0.
inline std::uint64_t bits_of(std::uint64_t n) {
    std::uint64_t b = 0;
    while (n) {
        ++b;
        n >>= 1;
    }
    return b;
}

/// ceil(log2 n) for n >= 1.
inline std::uint64_t ceil_log2(std::uint64_t n) {
    std::uint64_t b = 0;
    while ((std::uint64_t(1) << b) < n) ++b;
    return b;
}

/// 2^(n+1) - 2: the number of nonempty binary strings of length <= n.
inline BigInt strings_up_to(std::uint64_t n) {
    return (BigInt(1) << (n + 1)) - 2;
}

struct CountReport {
    std::uint64_t n = 0;
    std::uint64_t k = 0;
    BigInt strings_in_list;
    BigInt programs_bound;
    BigInt deficit;  // strings_in_list - programs_bound
};

inline CountReport counting_formulas(std::uint64_t n, std::uint64_t k) {
    CountReport r;
    r.n = n;
    r.k = k;
    r.strings_in_list = strings_up_to(n);
    r.programs_bound = strings_up_to(ceil_log2(n) + k);
    r.deficit = r.strings_in_list - r.programs_bound;
    return r;
}

/// Least N with 2^(N+1)-2 > 2^(ceil(log2 N)+k+1)-2, by ascending scan.
inline std::uint64_t paradox_threshold(std::uint64_t k) {
    for (std::uint64_t n = 1;; ++n) {
        if (n > ceil_log2(n) + k) return n;
    }
}

}  // namespace kolmo
