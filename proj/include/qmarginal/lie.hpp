#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ratgeom.hpp"

namespace qmarg {

/// Weights are flattened Cartan coordinates; block boundaries live in RootSystemSpec.
using Weight = RatVec;

enum class FactorType { A, D };

struct Factor {
    FactorType type;
    std::size_t size;
};

struct RootSystemSpec {
    std::vector<Factor> factors;

    std::size_t rank() const {
        std::size_t r = 0;
        for (const auto& f : factors) r += f.size;
        return r;
    }
    std::size_t offset(std::size_t block) const {
        std::size_t r = 0;
        for (std::size_t i = 0; i < block; ++i) r += factors[i].size;
        return r;
    }
};

struct Root {
    RatVec vector;
    bool positive = false;

    friend bool operator==(const Root& a, const Root& b) { return a.vector == b.vector; }
    friend bool operator<(const Root& a, const Root& b) { return a.vector < b.vector; }
};

struct ChamberSpec {
    HPolytope hpoly;
};

inline RootSystemSpec type_a(std::vector<std::size_t> sizes) {
    RootSystemSpec s;
    for (auto n : sizes) s.factors.push_back({FactorType::A, n});
    return s;
}

inline RootSystemSpec type_d(std::size_t n) { return RootSystemSpec{{{FactorType::D, n}}}; }

inline std::vector<Root> roots(const RootSystemSpec& spec) {
    const std::size_t r = spec.rank();
    std::vector<Root> out;
    for (std::size_t b = 0; b < spec.factors.size(); ++b) {
        const auto [type, n] = spec.factors[b];
        const std::size_t o = spec.offset(b);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (type == FactorType::A) {
                    if (i == j) continue;
                    RatVec v(r, Rational(0));
                    v[o + i] = 1;
                    v[o + j] = -1;
                    out.push_back({std::move(v), i < j});
                } else {
                    if (i >= j) continue;
                    for (int s : {1, -1}) {
                        for (int t : {1, -1}) {
                            RatVec v(r, Rational(0));
                            v[o + i] = s;
                            v[o + j] = t;
                            out.push_back({std::move(v), s > 0});
                        }
                    }
                }
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline std::vector<Root> positive_roots(const RootSystemSpec& spec) {
    std::vector<Root> out;
    for (auto& a : roots(spec)) {
        if (a.positive) out.push_back(a);
    }
    return out;
}

/// e_i - e_{i+1} per block, plus e_{N-1} + e_N for type D.
inline std::vector<Root> simple_roots(const RootSystemSpec& spec) {
    const std::size_t r = spec.rank();
    std::vector<Root> out;
    for (std::size_t b = 0; b < spec.factors.size(); ++b) {
        const auto [type, n] = spec.factors[b];
        const std::size_t o = spec.offset(b);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            RatVec v(r, Rational(0));
            v[o + i] = 1;
            v[o + i + 1] = -1;
            out.push_back({std::move(v), true});
        }
        if (type == FactorType::D && n >= 2) {
            RatVec v(r, Rational(0));
            v[o + n - 2] = 1;
            v[o + n - 1] = 1;
            out.push_back({std::move(v), true});
        }
    }
    return out;
}

inline bool is_root(const RootSystemSpec& spec, const RatVec& v) {
    if (v.size() != spec.rank()) return false;
    for (std::size_t b = 0, o = 0; b < spec.factors.size(); o += spec.factors[b].size, ++b) {
        const auto [type, n] = spec.factors[b];
        int plus = 0, minus = 0, nonzero = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const auto& x = v[o + i];
            if (x.is_zero()) continue;
            ++nonzero;
            if (x == 1) ++plus;
            else if (x == -1) ++minus;
            else return false;
        }
        if (nonzero == 0) continue;
        // all nonzero entries must sit inside this one block
        for (std::size_t i = 0; i < v.size(); ++i) {
            if ((i < o || i >= o + n) && !v[i].is_zero()) return false;
        }
        if (type == FactorType::A) return plus == 1 && minus == 1;
        return nonzero == 2;
    }
    return false;
}

inline Rational inner(const RatVec& a, const RatVec& b) { return dot(a, b); }

/// Closed positive Weyl chamber; type A blocks carry eta_N >= 0.
inline ChamberSpec chamber(const RootSystemSpec& spec) {
    const std::size_t r = spec.rank();
    HPolytope h;
    h.dim = r;
    auto add = [&](std::size_t i, int si, std::size_t j, int sj) {
        RatVec v(r, Rational(0));
        v[i] += si;
        v[j] += sj;
        h.inequalities.push_back({std::move(v), Rational(0)});
    };
    for (std::size_t b = 0; b < spec.factors.size(); ++b) {
        const auto [type, n] = spec.factors[b];
        const std::size_t o = spec.offset(b);
        for (std::size_t i = 0; i + 1 < n; ++i) add(o + i, 1, o + i + 1, -1);
        if (type == FactorType::A) {
            RatVec v(r, Rational(0));
            v[o + n - 1] = 1;
            h.inequalities.push_back({std::move(v), Rational(0)});
        } else if (n >= 2) {
            add(o + n - 2, 1, o + n - 1, 1);
        }
    }
    return ChamberSpec{h};
}

/// Chamber cut out by the given positive roots only, without the eta_N >= 0 conditions.
inline HPolytope root_chamber(std::size_t rank, const std::vector<Root>& positive) {
    HPolytope h;
    h.dim = rank;
    for (const auto& a : positive) h.inequalities.push_back({a.vector, Rational(0)});
    return canonicalize(h);
}

inline bool is_dominant(const RootSystemSpec& spec, const RatVec& x) {
    return contains(chamber(spec).hpoly, x).inside;
}

/// orientation: one entry per type D factor, +1 or -1; when absent the sign is the product of entry signs.
inline std::vector<double> to_chamber(const RootSystemSpec& spec, std::vector<double> x,
                                      const std::vector<int>& orientation = {}) {
    if (x.size() != spec.rank()) throw std::invalid_argument("to_chamber: dimension mismatch");
    std::size_t dcount = 0;
    for (std::size_t b = 0; b < spec.factors.size(); ++b) {
        const auto [type, n] = spec.factors[b];
        auto first = x.begin() + static_cast<std::ptrdiff_t>(spec.offset(b));
        auto last = first + static_cast<std::ptrdiff_t>(n);
        if (type == FactorType::A) {
            std::sort(first, last, std::greater<double>());
            continue;
        }
        int sign = 1;
        if (dcount < orientation.size()) {
            sign = orientation[dcount] < 0 ? -1 : 1;
        } else {
            for (auto it = first; it != last; ++it) {
                if (*it < 0) sign = -sign;
            }
        }
        ++dcount;
        for (auto it = first; it != last; ++it) *it = std::abs(*it);
        std::sort(first, last, std::greater<double>());
        if (n > 0) *(last - 1) *= sign;
    }
    return x;
}

/// Exact variant used for weights.
inline RatVec to_chamber(const RootSystemSpec& spec, RatVec x) {
    if (x.size() != spec.rank()) throw std::invalid_argument("to_chamber: dimension mismatch");
    for (std::size_t b = 0; b < spec.factors.size(); ++b) {
        const auto [type, n] = spec.factors[b];
        auto first = x.begin() + static_cast<std::ptrdiff_t>(spec.offset(b));
        auto last = first + static_cast<std::ptrdiff_t>(n);
        if (type == FactorType::A) {
            std::sort(first, last, std::greater<Rational>());
            continue;
        }
        int sign = 1;
        for (auto it = first; it != last; ++it) {
            if (*it < 0) sign = -sign;
            *it = abs(*it);
        }
        std::sort(first, last, std::greater<Rational>());
        if (n > 0) *(last - 1) *= sign;
    }
    return x;
}

}  // namespace qmarg
