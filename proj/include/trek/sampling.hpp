#pragma once

#include <cstdint>
#include <random>

#include "trek/algebra.hpp"

namespace trek {

/// Deterministic rational sampler for verification suites. Numerators and
/// denominators stay below 10^4 by default. Uses raw mt19937_64 output
/// (std distributions are not portable across standard libraries, and the
/// reports must be byte-identical for a given seed).
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed) : gen_(seed) {}

    Rational next(std::int64_t max_abs_num = 10000, std::int64_t max_den = 10000,
                  bool allow_negative = true) {
        const std::uint64_t span =
            allow_negative ? 2 * static_cast<std::uint64_t>(max_abs_num) + 1
                           : static_cast<std::uint64_t>(max_abs_num) + 1;
        const std::int64_t n =
            static_cast<std::int64_t>(gen_() % span) - (allow_negative ? max_abs_num : 0);
        const std::int64_t d = static_cast<std::int64_t>(gen_() % max_den) + 1;
        return Rational(n, d);
    }

    Rational next_nonzero(std::int64_t max_abs_num = 10000, std::int64_t max_den = 10000,
                          bool allow_negative = true) {
        for (;;) {
            Rational r = next(max_abs_num, max_den, allow_negative);
            if (r != 0) return r;
        }
    }

private:
    std::mt19937_64 gen_;
};

} // namespace trek
