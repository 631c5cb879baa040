#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "trek/algebra.hpp"
#include "trek/errors.hpp"

namespace trek {

inline constexpr std::size_t kMaxArity = 3;

/// Exponent vector of a monomial. Slots beyond the arity stay zero, so the
/// comparator never needs to know the arity.
struct Exponents {
    std::array<std::uint32_t, kMaxArity> e{0, 0, 0};

    Exponents() = default;
    Exponents(std::uint32_t a) : e{a, 0, 0} {}
    Exponents(std::uint32_t a, std::uint32_t b) : e{a, b, 0} {}
    Exponents(std::uint32_t a, std::uint32_t b, std::uint32_t c) : e{a, b, c} {}

    std::uint32_t operator[](std::size_t i) const { return e[i]; }
    std::uint32_t& operator[](std::size_t i) { return e[i]; }
    std::uint64_t total() const {
        return std::uint64_t(e[0]) + e[1] + e[2];
    }
    friend bool operator==(const Exponents& a, const Exponents& b) = default;
};

/// Graded-lex, highest first: larger total degree wins, ties broken at the
/// leftmost differing exponent (first variable most significant). Map
/// iteration therefore runs from the leading term down to the constant.
struct GradedLexGreater {
    bool operator()(const Exponents& a, const Exponents& b) const {
        const auto da = a.total(), db = b.total();
        if (da != db) return da > db;
        return a.e > b.e;
    }
};

/// Sparse multivariate polynomial with exact integer coefficients.
/// Canonical form: no zero coefficients stored, unique keys; equality of
/// polynomials is equality of variable labels and term maps.
class SparsePoly {
public:
    using TermMap = std::map<Exponents, BigInt, GradedLexGreater>;

    explicit SparsePoly(std::vector<std::string> vars) : vars_(std::move(vars)) {
        if (vars_.empty() || vars_.size() > kMaxArity)
            throw ArityMismatch("SparsePoly arity must be 1..3");
    }

    static SparsePoly constant(std::vector<std::string> vars, BigInt c) {
        SparsePoly p(std::move(vars));
        p.add_term(Exponents{}, std::move(c));
        return p;
    }

    static SparsePoly variable(std::vector<std::string> vars, std::size_t index) {
        SparsePoly p(std::move(vars));
        if (index >= p.arity()) throw ArityMismatch("variable index out of range");
        Exponents e;
        e[index] = 1;
        p.add_term(e, 1);
        return p;
    }

    static SparsePoly monomial(std::vector<std::string> vars, Exponents e, BigInt c) {
        SparsePoly p(std::move(vars));
        p.add_term(e, std::move(c));
        return p;
    }

    std::size_t arity() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    const BigInt* coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? nullptr : &it->second;
    }

    /// Accumulate c onto the monomial e, dropping the term if it cancels.
    void add_term(const Exponents& e, BigInt c) {
        if (c == 0) return;
        for (std::size_t i = arity(); i < kMaxArity; ++i)
            if (e[i] != 0) throw ArityMismatch("exponent beyond arity");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePoly operator-() const {
        SparsePoly out(vars_);
        for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
        return out;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        require_same_shape(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    SparsePoly& operator-=(const SparsePoly& o) {
        require_same_shape(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) {
        a += b;
        return a;
    }

    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) {
        a -= b;
        return a;
    }

    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        a.require_same_shape(b);
        SparsePoly out(a.vars_);
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (std::size_t i = 0; i < kMaxArity; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }

    friend SparsePoly operator*(const SparsePoly& p, const BigInt& c) {
        SparsePoly out(p.vars_);
        if (c == 0) return out;
        for (const auto& [e, t] : p.terms_) out.terms_.emplace(e, t * c);
        return out;
    }

    friend SparsePoly operator*(const BigInt& c, const SparsePoly& p) { return p * c; }

    friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
        return a.vars_ == b.vars_ && a.terms_ == b.terms_;
    }

    /// Exact evaluation at a rational point (arity must match).
    Rational eval(const RatPoint& pt) const {
        if (pt.size() != arity())
            throw ArityMismatch("evaluation point has wrong arity");
        std::array<std::vector<Rational>, kMaxArity> pw;
        for (std::size_t i = 0; i < arity(); ++i) {
            std::uint32_t maxe = 0;
            for (const auto& [e, c] : terms_) maxe = std::max(maxe, e[i]);
            pw[i].reserve(maxe + 1);
            pw[i].push_back(1);
            for (std::uint32_t k = 1; k <= maxe; ++k) pw[i].push_back(pw[i].back() * pt[i]);
        }
        Rational acc = 0;
        for (const auto& [e, c] : terms_) {
            Rational t(c);
            for (std::size_t i = 0; i < arity(); ++i)
                if (e[i] != 0) t *= pw[i][e[i]];
            acc += t;
        }
        return acc;
    }

    /// Canonical printing, leading term first.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : terms_) {
            const bool negative = c < 0;
            if (first) {
                if (negative) os << "-";
                first = false;
            } else {
                os << (negative ? " - " : " + ");
            }
            const BigInt a = boost::multiprecision::abs(c);
            bool printed = false;
            if (a != 1 || e.total() == 0) {
                os << a.str();
                printed = true;
            }
            for (std::size_t i = 0; i < arity(); ++i) {
                if (e[i] == 0) continue;
                if (printed) os << "*";
                os << vars_[i];
                if (e[i] > 1) os << "^" << e[i];
                printed = true;
            }
        }
        return os.str();
    }

private:
    void require_same_shape(const SparsePoly& o) const {
        if (vars_ != o.vars_)
            throw ArityMismatch("operands have different variables");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

/// p/d when every coefficient is divisible by d; otherwise NotDivisible
/// with the offending term. This is the integrality tripwire of the whole
/// artifact: the u-recurrence funnels every step through it.
inline SparsePoly exact_div_int(const SparsePoly& p, const BigInt& d) {
    if (d == 0) throw InvalidInput("exact_div_int by zero");
    SparsePoly out(p.vars());
    for (const auto& [e, c] : p.terms()) {
        BigInt q, r;
        boost::multiprecision::divide_qr(c, d, q, r);
        if (r != 0) {
            std::ostringstream os;
            os << "coefficient " << c.str() << " of ";
            for (std::size_t i = 0; i < p.arity(); ++i)
                os << p.vars()[i] << "^" << e[i] << (i + 1 < p.arity() ? "*" : "");
            os << " not divisible by " << d.str();
            throw NotDivisible(os.str());
        }
        out.add_term(e, std::move(q));
    }
    return out;
}

/// Exact division in the polynomial ring: returns p/q, throwing
/// ExactDivisionFailure if q does not divide p. Greedy leading-term
/// elimination in graded-lex order; correct over an integral domain
/// whenever the quotient exists.
inline SparsePoly exact_divide(const SparsePoly& p, const SparsePoly& q) {
    if (q.is_zero()) throw ExactDivisionFailure("polynomial division by zero");
    if (p.vars() != q.vars()) throw ArityMismatch("exact_divide operands differ");
    SparsePoly rem = p;
    SparsePoly quot(p.vars());
    const auto lead = *q.terms().begin();
    while (!rem.is_zero()) {
        const auto [er, cr] = *rem.terms().begin(); // copies; rem mutates below
        Exponents d;
        for (std::size_t i = 0; i < kMaxArity; ++i) {
            if (er[i] < lead.first[i])
                throw ExactDivisionFailure("leading monomial not divisible");
            d[i] = er[i] - lead.first[i];
        }
        BigInt qq, rr;
        boost::multiprecision::divide_qr(cr, lead.second, qq, rr);
        if (rr != 0) throw ExactDivisionFailure("leading coefficient not divisible");
        quot.add_term(d, qq);
        for (const auto& [e2, c2] : q.terms()) {
            Exponents s;
            for (std::size_t i = 0; i < kMaxArity; ++i) s[i] = d[i] + e2[i];
            rem.add_term(s, -(qq * c2));
        }
    }
    return quot;
}

/// For p(x, y) with arity 2: returns p(-b^2, y) in variables (beta, y).
/// Term c*x^r*y^s maps to (-1)^r c * beta^(2r) * y^s.
inline SparsePoly substitute_neg_square(const SparsePoly& p) {
    if (p.arity() != 2)
        throw ArityMismatch("substitute_neg_square needs arity 2");
    SparsePoly out({"beta", p.vars()[1]});
    for (const auto& [e, c] : p.terms())
        out.add_term(Exponents(2 * e[0], e[1]), (e[0] % 2 == 1) ? BigInt(-c) : c);
    return out;
}

inline SparsePoly derivative(const SparsePoly& p, std::size_t var) {
    if (var >= p.arity()) throw ArityMismatch("derivative variable out of range");
    SparsePoly out(p.vars());
    for (const auto& [e, c] : p.terms()) {
        if (e[var] == 0) continue;
        Exponents f = e;
        f[var] -= 1;
        out.add_term(f, c * BigInt(e[var]));
    }
    return out;
}

/// Weighted degree with weights (2, 1) on an arity-2 polynomial:
/// max over terms of 2r + s. Empty for the zero polynomial.
inline std::optional<long> weighted_degree(const SparsePoly& p) {
    if (p.arity() != 2) throw ArityMismatch("weighted_degree needs arity 2");
    if (p.is_zero()) return std::nullopt;
    long best = 0;
    for (const auto& [e, c] : p.terms())
        best = std::max(best, 2L * e[0] + e[1]);
    return best;
}

/// Maximal exponent of one variable; empty for the zero polynomial.
inline std::optional<long> degree_in(const SparsePoly& p, std::size_t var) {
    if (var >= p.arity()) throw ArityMismatch("degree_in variable out of range");
    if (p.is_zero()) return std::nullopt;
    long best = 0;
    for (const auto& [e, c] : p.terms())
        best = std::max(best, static_cast<long>(e[var]));
    return best;
}

} // namespace trek
