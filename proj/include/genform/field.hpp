#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

#include "genform/error.hpp"

namespace genform {

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// Residues modulo a prime p < 2^31, stored in [0, p).
class PrimeField {
public:
    using value_type = std::uint32_t;

    explicit PrimeField(std::uint32_t p = 2) : p_(p) {
        if (!is_prime(p) || p >= (1u << 31)) fail(ErrorKind::NotPrime, "modulus " + std::to_string(p) + " is not a supported prime");
    }

    std::uint32_t characteristic() const { return p_; }
    bool is_finite() const { return true; }
    std::uint64_t size() const { return p_; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const {
        long long r = v % static_cast<long long>(p_);
        if (r < 0) r += p_;
        return static_cast<value_type>(r);
    }
    /// The index-th element in the enumeration order 0, 1, ..., p-1.
    value_type element(std::uint64_t index) const { return static_cast<value_type>(index % p_); }

    value_type add(value_type a, value_type b) const {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p_ - b; }
    value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
    value_type mul(value_type a, value_type b) const {
        return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p_);
    }
    value_type inv(value_type a) const {
        if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero");
        // extended Euclid
        long long t = 0, nt = 1, r = p_, nr = a;
        while (nr != 0) {
            long long q = r / nr;
            long long tmp = t - q * nt;
            t = nt;
            nt = tmp;
            tmp = r - q * nr;
            r = nr;
            nr = tmp;
        }
        return from_int(t);
    }
    value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
    bool is_zero(value_type a) const { return a == 0; }
    bool equal(value_type a, value_type b) const { return a == b; }

    std::string to_string(value_type a) const { return std::to_string(a); }

    /// Accepts integers (possibly negative) and fractions "a/b" with b invertible mod p.
    value_type parse(std::string_view text) const {
        auto slash = text.find('/');
        if (slash == std::string_view::npos) return from_int(parse_int(text));
        value_type num = from_int(parse_int(text.substr(0, slash)));
        value_type den = from_int(parse_int(text.substr(slash + 1)));
        if (den == 0) fail(ErrorKind::DivisionByZero, "denominator vanishes mod " + std::to_string(p_));
        return div(num, den);
    }

    std::string name() const { return "F" + std::to_string(p_); }

    bool operator==(const PrimeField& other) const { return p_ == other.p_; }

private:
    static long long parse_int(std::string_view text) {
        if (text.empty()) throw std::invalid_argument("empty number");
        std::size_t pos = 0;
        long long v = std::stoll(std::string(text), &pos);
        if (pos != text.size()) throw std::invalid_argument("malformed number '" + std::string(text) + "'");
        return v;
    }

    std::uint32_t p_;
};

/// Arbitrary-precision rationals, always canonical (lowest terms, positive denominator).
class RationalField {
public:
    using value_type = mpq_class;

    std::uint32_t characteristic() const { return 0; }
    bool is_finite() const { return false; }
    std::uint64_t size() const { return 0; }

    value_type zero() const { return 0; }
    value_type one() const { return 1; }
    value_type from_int(long long v) const { return mpq_class(static_cast<long>(v)); }
    /// Enumeration order 0, 1, -1, 2, -2, ...
    value_type element(std::uint64_t index) const {
        long long k = static_cast<long long>((index + 1) / 2);
        return from_int(index % 2 == 1 ? k : -k);
    }

    value_type add(const value_type& a, const value_type& b) const { return a + b; }
    value_type sub(const value_type& a, const value_type& b) const { return a - b; }
    value_type neg(const value_type& a) const { return -a; }
    value_type mul(const value_type& a, const value_type& b) const { return a * b; }
    value_type inv(const value_type& a) const {
        if (a == 0) fail(ErrorKind::DivisionByZero, "inverse of zero");
        return 1 / a;
    }
    value_type div(const value_type& a, const value_type& b) const { return mul(a, inv(b)); }
    bool is_zero(const value_type& a) const { return sgn(a) == 0; }
    bool equal(const value_type& a, const value_type& b) const { return a == b; }

    std::string to_string(const value_type& a) const { return a.get_str(); }

    value_type parse(std::string_view text) const {
        std::string s(text);
        if (s.empty()) throw std::invalid_argument("empty number");
        if (s[0] == '+') s.erase(0, 1);
        mpq_class q;
        if (q.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
        if (q.get_den() == 0) fail(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
        q.canonicalize();
        return q;
    }

    std::string name() const { return "Q"; }

    bool operator==(const RationalField&) const { return true; }
};

template <class F>
concept Field = requires(const F f, const typename F::value_type a) {
    { f.zero() } -> std::convertible_to<typename F::value_type>;
    { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
    { f.inv(a) } -> std::convertible_to<typename F::value_type>;
    { f.is_zero(a) } -> std::convertible_to<bool>;
    { f.characteristic() } -> std::convertible_to<std::uint32_t>;
};

}  // namespace genform
