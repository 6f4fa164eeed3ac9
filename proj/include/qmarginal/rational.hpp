#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace qmarg {

/// Exact rational with arbitrary-precision numerator/denominator, always in lowest terms.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// Point or direction in Cartan coordinates.
using RatVec = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) { return Rational(num, den); }

/// Parses "p", "-p" or "p/q".
inline Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& x) {
        x.erase(0, x.find_first_not_of(" \t\n\r"));
        x.erase(x.find_last_not_of(" \t\n\r") + 1);
    };
    trim(s);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    auto valid = [](std::string_view part) {
        if (part.empty()) return false;
        std::size_t i = (part[0] == '-' || part[0] == '+') ? 1 : 0;
        if (i == part.size()) return false;
        return std::all_of(part.begin() + static_cast<std::ptrdiff_t>(i), part.end(),
                           [](char c) { return c >= '0' && c <= '9'; });
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!num.empty() && num[0] == '+') num.erase(0, 1);
    if (!valid(num) || !valid(den)) throw std::invalid_argument("malformed rational literal: " + s);
    Integer n(num), d(den);
    if (d == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(n, d);
}

/// Lowest-terms text; integers print without a denominator.
inline std::string to_string(const Rational& q) { return q.str(); }

inline RatVec ratvec(std::initializer_list<Rational> xs) { return RatVec(xs); }

/// Builds a vector from (numerator, denominator) pairs or plain integers.
inline RatVec ratvec_int(std::initializer_list<long> xs) {
    RatVec v;
    v.reserve(xs.size());
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline Rational dot(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
    }
    return s;
}

inline RatVec operator+(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("add: dimension mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVec operator-(const RatVec& a, const RatVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sub: dimension mismatch");
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVec operator*(const Rational& s, const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline RatVec operator-(const RatVec& a) {
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline bool is_zero(const RatVec& a) {
    return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x.is_zero(); });
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline std::vector<double> to_double(const RatVec& a) {
    std::vector<double> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].convert_to<double>();
    return r;
}

/// Scales a nonzero vector by a positive factor so that its entries are coprime integers.
inline RatVec primitive(const RatVec& a) {
    Integer l = 1;
    for (const auto& x : a) {
        if (!x.is_zero()) l = boost::multiprecision::lcm(l, Integer(denominator(x)));
    }
    Integer g = 0;
    std::vector<Integer> nums(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        nums[i] = Integer(numerator(a[i])) * (l / Integer(denominator(a[i])));
        if (nums[i] != 0) g = boost::multiprecision::gcd(g, nums[i]);
    }
    if (g == 0) return a;
    if (g < 0) g = -g;
    RatVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = Rational(nums[i] / g);
    return r;
}

/// Elementwise 2x, rounded to integers; valid only on the half-integer lattice.
inline std::vector<long> doubled_key(const RatVec& a) {
    std::vector<long> key(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        Rational twice = 2 * a[i];
        if (denominator(twice) != 1) throw std::invalid_argument("doubled_key: coordinate not half-integral");
        key[i] = static_cast<long>(numerator(twice));
    }
    return key;
}

inline RatVec from_doubled_key(const std::vector<long>& key) {
    RatVec r(key.size());
    for (std::size_t i = 0; i < key.size(); ++i) r[i] = Rational(key[i], 2);
    return r;
}

}  // namespace qmarg
