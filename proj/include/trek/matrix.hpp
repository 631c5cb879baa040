#pragma once

#include <cstdint>
#include <unordered_map>
#include <utility>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/errors.hpp"
#include "trek/sparse_poly.hpp"

namespace trek {

/// Small dense square matrix over an exact ring (BigInt, Rational or
/// SparsePoly). Row-major.
template <typename Ring>
class DenseMat {
public:
    DenseMat(std::size_t n, const Ring& zero) : n_(n), a_(n * n, zero) {}

    std::size_t size() const { return n_; }
    Ring& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
    const Ring& at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

private:
    std::size_t n_;
    std::vector<Ring> a_;
};

/// Exact determinant by fraction-free (Bareiss) elimination. Every division
/// is by a previous pivot and is exact in the ring; a failed division means
/// the input was not over an integral domain and aborts.
template <typename Ring>
Ring det_fraction_free(DenseMat<Ring> m, const Ring& zero, const Ring& one) {
    const std::size_t n = m.size();
    if (n == 0) return one;
    int sign = 1;
    Ring prev = one;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == zero) {
            std::size_t piv = k + 1;
            while (piv < n && m.at(piv, k) == zero) ++piv;
            if (piv == n) return zero;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Ring t = m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = exact_divide(t, prev);
            }
            m.at(i, k) = zero;
        }
        prev = m.at(k, k);
    }
    Ring d = m.at(n - 1, n - 1);
    return sign < 0 ? Ring(-d) : d;
}

/// Exact determinant by Laplace expansion along the first remaining row,
/// memoized on the surviving column set. Division-free, so it works in any
/// commutative ring; independent of the elimination backend.
template <typename Ring>
Ring det_cofactor(const DenseMat<Ring>& m, const Ring& zero) {
    const std::size_t n = m.size();
    if (n == 0) throw InvalidInput("det_cofactor on empty matrix");
    if (n > 24) throw InvalidInput("det_cofactor limited to size 24");
    std::unordered_map<std::uint32_t, Ring> memo;
    const std::uint32_t full = (n == 32) ? 0xffffffffu : ((1u << n) - 1);

    auto rec = [&](auto&& self, std::uint32_t mask) -> Ring {
        if (auto it = memo.find(mask); it != memo.end()) return it->second;
        const std::size_t cols = static_cast<std::size_t>(__builtin_popcount(mask));
        const std::size_t row = n - cols;
        Ring acc = zero;
        if (cols == 1) {
            const std::size_t j = static_cast<std::size_t>(__builtin_ctz(mask));
            acc = m.at(row, j);
        } else {
            int sgn = 1;
            for (std::size_t j = 0; j < n; ++j) {
                if (!(mask & (1u << j))) continue;
                const Ring& entry = m.at(row, j);
                if (!(entry == zero)) {
                    Ring sub = self(self, mask & ~(1u << j));
                    Ring term = entry * sub;
                    if (sgn < 0)
                        acc = acc - term;
                    else
                        acc = acc + term;
                }
                sgn = -sgn;
            }
        }
        memo.emplace(mask, acc);
        return acc;
    };
    return rec(rec, full);
}

} // namespace trek
