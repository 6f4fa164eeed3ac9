#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lie.hpp"
#include "ratgeom.hpp"

namespace qmarg {

enum class Kind { Distinguishable, Bosons, Fermions, FockEven, FockOdd };

struct Scenario {
    Kind kind = Kind::Distinguishable;
    std::vector<std::size_t> dims;  // Distinguishable only
    std::size_t particles = 0;      // Bosons / Fermions
    std::size_t modes = 0;          // Bosons / Fermions / Fock

    static Scenario distinguishable(std::vector<std::size_t> d) {
        Scenario s;
        s.kind = Kind::Distinguishable;
        s.dims = std::move(d);
        s.validate();
        return s;
    }
    static Scenario bosons(std::size_t L, std::size_t N) {
        Scenario s;
        s.kind = Kind::Bosons;
        s.particles = L;
        s.modes = N;
        s.validate();
        return s;
    }
    static Scenario fermions(std::size_t L, std::size_t N) {
        Scenario s;
        s.kind = Kind::Fermions;
        s.particles = L;
        s.modes = N;
        s.validate();
        return s;
    }
    static Scenario fock_even(std::size_t N) {
        Scenario s;
        s.kind = Kind::FockEven;
        s.modes = N;
        s.validate();
        return s;
    }
    static Scenario fock_odd(std::size_t N) {
        Scenario s;
        s.kind = Kind::FockOdd;
        s.modes = N;
        s.validate();
        return s;
    }

    bool is_fock() const { return kind == Kind::FockEven || kind == Kind::FockOdd; }

    void validate() const {
        switch (kind) {
            case Kind::Distinguishable:
                if (dims.empty()) throw std::invalid_argument("distinguishable scenario needs at least one factor");
                for (auto d : dims) {
                    if (d < 1) throw std::invalid_argument("mode counts must be >= 1");
                }
                break;
            case Kind::Bosons:
                if (particles < 1 || modes < 1) throw std::invalid_argument("bosons need L >= 1 and N >= 1");
                break;
            case Kind::Fermions:
                if (particles < 1 || modes < 1) throw std::invalid_argument("fermions need L >= 1 and N >= 1");
                if (particles > modes) throw std::invalid_argument("fermions need L <= N");
                break;
            case Kind::FockEven:
            case Kind::FockOdd:
                if (modes < 1) throw std::invalid_argument("Fock space needs N >= 1");
                break;
        }
    }

    friend bool operator==(const Scenario& a, const Scenario& b) {
        return a.kind == b.kind && a.dims == b.dims && a.particles == b.particles && a.modes == b.modes;
    }
};

/// Grammar: dist:2x2x3, bosons:L@N, fermions:L@N, fock-even:N, fock-odd:N.
inline Scenario parse_scenario(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("scenario needs the form kind:args, got '" + text + "'");
    std::string head = text.substr(0, colon), body = text.substr(colon + 1);
    auto number = [&](const std::string& s) -> std::size_t {
        if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
            throw std::invalid_argument("bad number '" + s + "' in scenario '" + text + "'");
        }
        return static_cast<std::size_t>(std::stoul(s));
    };
    auto pair = [&]() {
        auto at = body.find('@');
        if (at == std::string::npos) throw std::invalid_argument("expected L@N in scenario '" + text + "'");
        return std::make_pair(number(body.substr(0, at)), number(body.substr(at + 1)));
    };
    if (head == "dist") {
        std::vector<std::size_t> d;
        std::stringstream ss(body);
        std::string tok;
        while (std::getline(ss, tok, 'x')) d.push_back(number(tok));
        if (!body.empty() && body.back() == 'x') number("");
        return Scenario::distinguishable(d);
    }
    if (head == "bosons") {
        auto [L, N] = pair();
        return Scenario::bosons(L, N);
    }
    if (head == "fermions") {
        auto [L, N] = pair();
        return Scenario::fermions(L, N);
    }
    if (head == "fock-even") return Scenario::fock_even(number(body));
    if (head == "fock-odd") return Scenario::fock_odd(number(body));
    throw std::invalid_argument("unknown scenario kind '" + head + "'");
}

inline std::string to_string(const Scenario& s) {
    switch (s.kind) {
        case Kind::Distinguishable: {
            std::string out = "dist:";
            for (std::size_t i = 0; i < s.dims.size(); ++i) out += (i ? "x" : "") + std::to_string(s.dims[i]);
            return out;
        }
        case Kind::Bosons: return "bosons:" + std::to_string(s.particles) + "@" + std::to_string(s.modes);
        case Kind::Fermions: return "fermions:" + std::to_string(s.particles) + "@" + std::to_string(s.modes);
        case Kind::FockEven: return "fock-even:" + std::to_string(s.modes);
        case Kind::FockOdd: return "fock-odd:" + std::to_string(s.modes);
    }
    return "?";
}

inline RootSystemSpec root_system(const Scenario& s) {
    switch (s.kind) {
        case Kind::Distinguishable: return type_a(s.dims);
        case Kind::Bosons:
        case Kind::Fermions: return type_a({s.modes});
        case Kind::FockEven:
        case Kind::FockOdd: return type_d(s.modes);
    }
    return {};
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

/// Closed-form dimension of the state space.
inline std::size_t dimension(const Scenario& s) {
    switch (s.kind) {
        case Kind::Distinguishable:
            return std::accumulate(s.dims.begin(), s.dims.end(), std::size_t{1}, std::multiplies<>());
        case Kind::Bosons: return binomial(s.modes + s.particles - 1, s.particles);
        case Kind::Fermions: return binomial(s.modes, s.particles);
        case Kind::FockEven:
        case Kind::FockOdd: return std::size_t{1} << (s.modes - 1);
    }
    return 0;
}

/// Weight basis vector. occ holds the chosen level per particle (distinguishable, 0-based),
/// mode occupation numbers (bosons, fermions, Fock).
struct BasisState {
    Weight weight;
    std::vector<int> occ;
};

namespace detail {

inline Weight weight_of(const Scenario& s, const std::vector<int>& occ) {
    switch (s.kind) {
        case Kind::Distinguishable: {
            Weight w;
            for (std::size_t k = 0; k < s.dims.size(); ++k) {
                for (std::size_t i = 0; i < s.dims[k]; ++i) w.emplace_back(static_cast<int>(i) == occ[k] ? 1 : 0);
            }
            return w;
        }
        case Kind::Bosons:
        case Kind::Fermions: {
            Weight w;
            for (int n : occ) w.emplace_back(n);
            return w;
        }
        case Kind::FockEven:
        case Kind::FockOdd: {
            Weight w;
            for (int n : occ) w.push_back(Rational(1 - 2 * n, 2));
            return w;
        }
    }
    return {};
}

inline void enumerate_compositions(std::size_t modes, int total, std::vector<int>& cur, std::size_t pos,
                                   std::vector<std::vector<int>>& out) {
    if (pos + 1 == modes) {
        cur[pos] = total;
        out.push_back(cur);
        return;
    }
    for (int k = total; k >= 0; --k) {
        cur[pos] = k;
        enumerate_compositions(modes, total - k, cur, pos + 1, out);
    }
}

}  // namespace detail

/// Weight basis ordered by descending lexicographic weight, so the highest weight comes first.
inline std::vector<BasisState> basis(const Scenario& s) {
    std::vector<std::vector<int>> occs;
    switch (s.kind) {
        case Kind::Distinguishable: {
            std::vector<int> cur(s.dims.size(), 0);
            for (bool more = true; more;) {
                occs.push_back(cur);
                more = false;
                for (std::size_t k = s.dims.size(); k-- > 0;) {
                    if (++cur[k] < static_cast<int>(s.dims[k])) {
                        more = true;
                        break;
                    }
                    cur[k] = 0;
                }
            }
            break;
        }
        case Kind::Bosons: {
            std::vector<int> cur(s.modes, 0);
            detail::enumerate_compositions(s.modes, static_cast<int>(s.particles), cur, 0, occs);
            break;
        }
        case Kind::Fermions:
        case Kind::FockEven:
        case Kind::FockOdd: {
            const std::size_t n = s.modes;
            for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                std::size_t pc = static_cast<std::size_t>(__builtin_popcountll(mask));
                if (s.kind == Kind::Fermions && pc != s.particles) continue;
                if (s.kind == Kind::FockEven && pc % 2 != 0) continue;
                if (s.kind == Kind::FockOdd && pc % 2 != 1) continue;
                std::vector<int> occ(n);
                for (std::size_t i = 0; i < n; ++i) occ[i] = (mask >> i) & 1u;
                occs.push_back(std::move(occ));
            }
            break;
        }
    }
    std::vector<BasisState> out;
    out.reserve(occs.size());
    for (auto& o : occs) out.push_back({detail::weight_of(s, o), std::move(o)});
    std::sort(out.begin(), out.end(), [](const BasisState& a, const BasisState& b) { return a.weight > b.weight; });
    return out;
}

inline std::vector<Weight> support(const Scenario& s) {
    std::vector<Weight> w;
    for (auto& b : basis(s)) w.push_back(std::move(b.weight));
    return w;
}

inline Weight highest_weight(const Scenario& s) {
    switch (s.kind) {
        case Kind::Distinguishable: return detail::weight_of(s, std::vector<int>(s.dims.size(), 0));
        case Kind::Bosons: {
            std::vector<int> occ(s.modes, 0);
            occ[0] = static_cast<int>(s.particles);
            return detail::weight_of(s, occ);
        }
        case Kind::Fermions: {
            std::vector<int> occ(s.modes, 0);
            for (std::size_t i = 0; i < s.particles; ++i) occ[i] = 1;
            return detail::weight_of(s, occ);
        }
        case Kind::FockEven: return detail::weight_of(s, std::vector<int>(s.modes, 0));
        case Kind::FockOdd: {
            std::vector<int> occ(s.modes, 0);
            occ.back() = 1;
            return detail::weight_of(s, occ);
        }
    }
    return {};
}

struct LambdaPartition {
    std::vector<Root> delta_zero;
    std::vector<Root> delta_minus;
    std::vector<Root> delta_plus;
};

inline LambdaPartition lambda_partition(const Scenario& s) {
    const Weight lam = highest_weight(s);
    LambdaPartition p;
    for (auto& a : roots(root_system(s))) {
        Rational v = inner(a.vector, lam);
        if (v.is_zero()) p.delta_zero.push_back(a);
        else if (v < 0) p.delta_minus.push_back(a);
        else p.delta_plus.push_back(a);
    }
    return p;
}

/// Positive roots of the stabilizer of the highest weight.
inline std::vector<Root> stabilizer_positive_roots(const Scenario& s) {
    std::vector<Root> out;
    for (auto& a : lambda_partition(s).delta_zero) {
        if (a.positive) out.push_back(a);
    }
    return out;
}

/// One matrix element E_alpha |source> = coefficient |target>, alpha a negative root.
struct LoweringEntry {
    std::size_t root = 0;  // index into LoweringAction::roots
    std::size_t source = 0;
    std::size_t target = 0;
    double coefficient = 0.0;
    Rational coefficient_sq = 0;  // |coefficient|^2, exact
};

struct LoweringAction {
    std::vector<Root> roots;  // negative roots
    std::vector<LoweringEntry> entries;
};

namespace detail {

/// Jordan-Wigner sign of a_m or a_m^dagger acting on occupation occ: (-1)^(#occupied modes before m).
inline int jw_sign(const std::vector<int>& occ, std::size_t m) {
    int c = 0;
    for (std::size_t i = 0; i < m; ++i) c += occ[i];
    return (c % 2) ? -1 : 1;
}

/// Applies a_m (create=false) or a_m^dagger (create=true); returns the sign or 0 when annihilated.
inline int apply_fermion(std::vector<int>& occ, std::size_t m, bool create) {
    if (create == (occ[m] == 1)) return 0;
    int sgn = jw_sign(occ, m);
    occ[m] = create ? 1 : 0;
    return sgn;
}

struct OccKey {
    std::map<std::vector<int>, std::size_t> index;
    explicit OccKey(const std::vector<BasisState>& b) {
        for (std::size_t i = 0; i < b.size(); ++i) index.emplace(b[i].occ, i);
    }
    std::optional<std::size_t> find(const std::vector<int>& occ) const {
        auto it = index.find(occ);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
};

}  // namespace detail

/// Matrix elements of all negative root operators on the weight basis.
/// Conventions: distinguishable |j><i| in one factor; fermions a_j^dagger a_i with Jordan-Wigner
/// signs; bosons a_j^dagger a_i with coefficient sqrt(n_i (n_j + 1)); Fock E_{-e_i+e_j} = a_i^dagger a_j
/// and E_{-e_i-e_j} = a_i^dagger a_j^dagger (i < j).
inline LoweringAction lowering_action(const Scenario& s) {
    LoweringAction act;
    for (auto& a : roots(root_system(s))) {
        if (!a.positive) act.roots.push_back(a);
    }
    const auto b = basis(s);
    detail::OccKey key(b);
    const auto spec = root_system(s);

    for (std::size_t r = 0; r < act.roots.size(); ++r) {
        const RatVec& v = act.roots[r].vector;
        std::vector<std::size_t> plus, minus;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] == 1) plus.push_back(i);
            else if (v[i] == -1) minus.push_back(i);
        }
        for (std::size_t k = 0; k < b.size(); ++k) {
            std::vector<int> occ = b[k].occ;
            double coeff = 0.0;
            Rational sq = 0;
            switch (s.kind) {
                case Kind::Distinguishable: {
                    // root e_j - e_i inside one block: move that particle from level i to level j
                    std::size_t block = 0, off = 0;
                    while (off + spec.factors[block].size <= plus[0]) off += spec.factors[block++].size;
                    int from = static_cast<int>(minus[0] - off), to = static_cast<int>(plus[0] - off);
                    if (occ[block] != from) continue;
                    occ[block] = to;
                    coeff = 1.0;
                    sq = 1;
                    break;
                }
                case Kind::Bosons: {
                    std::size_t i = minus[0], j = plus[0];
                    if (occ[i] == 0) continue;
                    long n = static_cast<long>(occ[i]) * (occ[j] + 1);
                    occ[i] -= 1;
                    occ[j] += 1;
                    sq = n;
                    coeff = std::sqrt(static_cast<double>(n));
                    break;
                }
                case Kind::Fermions: {
                    std::size_t i = minus[0], j = plus[0];
                    int s1 = detail::apply_fermion(occ, i, false);
                    if (!s1) continue;
                    int s2 = detail::apply_fermion(occ, j, true);
                    if (!s2) continue;
                    coeff = s1 * s2;
                    sq = 1;
                    break;
                }
                case Kind::FockEven:
                case Kind::FockOdd: {
                    // weight coordinate 1/2 - n: a -1 entry creates, a +1 entry annihilates;
                    // the operator on the higher mode acts first
                    std::vector<std::size_t> nz;
                    for (std::size_t i = 0; i < v.size(); ++i) {
                        if (!v[i].is_zero()) nz.push_back(i);
                    }
                    std::size_t lo = nz[0], hi = nz[1];
                    bool create_hi = v[hi] == -1, create_lo = v[lo] == -1;
                    int s1 = detail::apply_fermion(occ, hi, create_hi);
                    if (!s1) continue;
                    int s2 = detail::apply_fermion(occ, lo, create_lo);
                    if (!s2) continue;
                    coeff = s1 * s2;
                    sq = 1;
                    break;
                }
            }
            auto t = key.find(occ);
            if (!t) continue;
            act.entries.push_back({r, k, *t, coeff, sq});
        }
    }
    return act;
}

/// True iff every support weight is an extreme point of the support hull.
inline bool is_minuscule(const Scenario& s) {
    auto w = support(s);
    return extreme_points(w).vertices.size() == w.size();
}

/// Index of the highest weight in basis(s) (always 0 by the ordering, checked here).
inline std::size_t highest_index(const Scenario& s) {
    auto b = basis(s);
    auto lam = highest_weight(s);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].weight == lam) return i;
    }
    throw std::logic_error("highest weight missing from support");
}

}  // namespace qmarg
