#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "excitations.hpp"
#include "lie.hpp"
#include "ratgeom.hpp"
#include "scenarios.hpp"

namespace qmarg {

class UnsupportedError : public std::runtime_error {
public:
    UnsupportedError(const std::string& scenario, std::vector<std::string> attempted)
        : std::runtime_error("Unsupported: no strategy computes the doubly excited polytope of " + scenario),
          attempted_(std::move(attempted)) {}
    const std::vector<std::string>& attempted() const noexcept { return attempted_; }

private:
    std::vector<std::string> attempted_;
};

class NotInCatalogError : public std::runtime_error {
public:
    explicit NotInCatalogError(const std::string& scenario)
        : std::runtime_error("NotInCatalog: no reference polytope for " + scenario) {}
};

/// Root data of the stabilizer of the highest weight.
struct StabilizerProfile {
    std::vector<Root> roots;           // delta_zero
    std::vector<Root> positive_roots;  // delta_zero among positive roots
    HPolytope chamber;                 // (t_lambda)_+
};

inline StabilizerProfile stabilizer_profile(const Scenario& s) {
    StabilizerProfile p;
    p.roots = lambda_partition(s).delta_zero;
    for (const auto& a : p.roots) {
        if (a.positive) p.positive_roots.push_back(a);
    }
    p.chamber = root_chamber(root_system(s).rank(), p.positive_roots);
    return p;
}

struct StabilizerPolytope {
    VPolytope polytope;
    std::string strategy;
};

inline VPolytope join_with_point(const Weight& pt, const VPolytope& p) { return join_points(pt, p); }

inline VPolytope p2_polytope(const Scenario& s);

namespace detail {

inline VPolytope map_vertices(const VPolytope& p, std::size_t dim, const std::function<RatVec(const RatVec&)>& f) {
    std::vector<RatVec> out;
    for (const auto& v : p.vertices) out.push_back(f(v));
    VPolytope r = extreme_points(out);
    if (r.dim != dim) throw std::logic_error("vertex map produced wrong dimension");
    return r;
}

inline RatVec concat(std::initializer_list<RatVec> parts) {
    RatVec out;
    for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

inline RatVec zeros(std::size_t n) { return RatVec(n, Rational(0)); }

inline VPolytope chamber_cut(const VPolytope& p, const HPolytope& chamber) {
    return hrep_to_vrep(intersect(vrep_to_hrep(p), chamber));
}

/// Table of worked reductions: N_2 recognized as a smaller scenario.
inline std::optional<StabilizerPolytope> recursive_case(const Scenario& s, const StabilizerProfile& prof) {
    const std::size_t r = root_system(s).rank();
    if (s.kind == Kind::Distinguishable && s.dims.size() == 2 && s.dims[0] >= 3 && s.dims[1] >= 3) {
        const std::size_t M = s.dims[0], N = s.dims[1];
        VPolytope sub = p2_polytope(Scenario::distinguishable({M - 1, N - 1}));
        auto f = [&](const RatVec& x) {
            RatVec a(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(M - 1));
            RatVec b(x.begin() + static_cast<std::ptrdiff_t>(M - 1), x.end());
            return concat({zeros(1), a, zeros(1), b});
        };
        return StabilizerPolytope{map_vertices(sub, r, f), "two-particle recursion"};
    }
    if (s.kind == Kind::Fermions && s.particles == 2 && s.modes >= 6) {
        VPolytope sub = p2_polytope(Scenario::fermions(2, s.modes - 2));
        auto f = [&](const RatVec& x) { return concat({zeros(2), x}); };
        return StabilizerPolytope{map_vertices(sub, r, f), "two-fermion recursion"};
    }
    if (s.kind == Kind::Fermions && s.particles == 3 && s.modes == 6) {
        // C^3 (x) Lambda^2(C^3): the second factor is the dual of C^3 up to a determinant twist
        VPolytope sub = p2_polytope(Scenario::distinguishable({3, 3}));
        auto f = [&](const RatVec& x) {
            RatVec out(x.begin(), x.begin() + 3);
            for (std::size_t i = 0; i < 3; ++i) out.push_back(1 - x[5 - i]);
            return out;
        };
        return StabilizerPolytope{map_vertices(sub, r, f), "three-fermion reduction to two qutrits"};
    }
    if (s.kind == Kind::Fermions && s.particles == 3 && s.modes == 7) {
        // second step at eta_145: three qubits on mode pairs {2,3},{4,5},{6,7} joined with eta_167
        VPolytope qubits = p2_polytope(Scenario::distinguishable({2, 2, 2}));
        std::vector<RatVec> pts;
        for (const auto& v : qubits.vertices) pts.push_back(concat({zeros(1), v}));
        pts.push_back(ratvec_int({1, 0, 0, 0, 0, 1, 1}));
        VPolytope q = extreme_points(pts);
        RatVec apex = ratvec_int({1, 0, 0, 1, 1, 0, 0});
        RatCone cone = cone_hull(apex, q);
        VPolytope pk = hrep_to_vrep(intersect(cone.hpoly, prof.chamber));
        return StabilizerPolytope{pk, "three-fermion two-step reduction"};
    }
    if (s.kind == Kind::Bosons && s.particles >= 2 && s.modes >= 3) {
        VPolytope sub = p2_polytope(Scenario::bosons(2, s.modes - 1));
        const Rational head(static_cast<long>(s.particles) - 2);
        auto f = [&](const RatVec& x) { return concat({RatVec{head}, x}); };
        return StabilizerPolytope{map_vertices(sub, r, f), "boson recursion"};
    }
    if (s.kind == Kind::Distinguishable && s.dims == std::vector<std::size_t>{2, 2, 3}) {
        auto w = [](std::initializer_list<long> xs) { return ratvec_int(xs); };
        RatVec e221 = w({0, 1, 0, 1, 1, 0, 0});
        RatVec e122 = w({1, 0, 0, 1, 0, 1, 0});
        RatVec e123 = w({1, 0, 0, 1, 0, 0, 1});
        RatVec e212 = w({0, 1, 1, 0, 0, 1, 0});
        VPolytope tri = extreme_points({e122, e212, Rational(1, 2) * (e212 + e123)});
        return StabilizerPolytope{join_with_point(e221, tri), "2x2x3 sphere join"};
    }
    return std::nullopt;
}

}  // namespace detail

/// K_lambda-momentum polytope of the doubly excited space, by strategy dispatch.
inline StabilizerPolytope stabilizer_n2(const Scenario& s) {
    const auto layers = excitation_layers(s);
    const auto& l2 = layers.layer(2);
    if (l2.empty()) throw std::invalid_argument("no doubly excited weights in " + to_string(s));
    const auto prof = stabilizer_profile(s);
    std::vector<std::string> attempted;

    attempted.push_back("torus");
    if (prof.roots.empty()) return {extreme_points(l2), "torus"};

    attempted.push_back("root-distinct");
    if (is_root_distinct(l2, prof.roots)) return {detail::chamber_cut(extreme_points(l2), prof.chamber), "root-distinct"};

    attempted.push_back("root-adjacent");
    if (pairwise_root_adjacent(l2, prof.roots)) {
        std::vector<Weight> dominant;
        for (const auto& w : l2) {
            if (contains(prof.chamber, w).inside) dominant.push_back(w);
        }
        if (dominant.size() == 1) return {VPolytope{dominant.front().size(), dominant}, "root-adjacent"};
    }

    attempted.push_back("recursion table");
    if (auto rec = detail::recursive_case(s, prof)) return *rec;
    throw UnsupportedError(to_string(s), attempted);
}

inline VPolytope stabilizer_n2_polytope(const Scenario& s) { return stabilizer_n2(s).polytope; }

/// Cone at lambda over the stabilizer polytope, cut by the Weyl chamber.
inline VPolytope p2_cone_form(const Scenario& s) {
    const auto lam = highest_weight(s);
    if (excitation_layers(s).layer(2).empty()) return VPolytope{lam.size(), {lam}};
    RatCone cone = cone_hull(lam, stabilizer_n2_polytope(s));
    return hrep_to_vrep(intersect(cone.hpoly, chamber(root_system(s)).hpoly));
}

/// conv(lambda, stabilizer polytope) cut by the Weyl chamber.
inline VPolytope p2_hull_form(const Scenario& s) {
    const auto lam = highest_weight(s);
    if (excitation_layers(s).layer(2).empty()) return VPolytope{lam.size(), {lam}};
    VPolytope hull = join_with_point(lam, stabilizer_n2_polytope(s));
    return hrep_to_vrep(intersect(vrep_to_hrep(hull), chamber(root_system(s)).hpoly));
}

/// The defining cone form. See p2_forms_agree for the hull-form shortcut.
inline VPolytope p2_polytope(const Scenario& s) { return p2_cone_form(s); }

/// Whether the cone and hull constructions give the same polytope.
inline bool p2_forms_agree(const Scenario& s) { return polytopes_equal(p2_cone_form(s), p2_hull_form(s)); }

inline HPolytope point_hpolytope(const RatVec& p) {
    HPolytope h;
    h.dim = p.size();
    for (std::size_t i = 0; i < p.size(); ++i) {
        RatVec e(p.size(), Rational(0));
        e[i] = 1;
        h.equalities.push_back({std::move(e), p[i]});
    }
    return canonicalize(h);
}

/// Cone at lambda over all weights of layers j >= 2, cut by the Weyl chamber.
inline HPolytope outer_cone(const Scenario& s) {
    const auto lam = highest_weight(s);
    const auto far = excitation_layers(s).beyond(2);
    if (far.empty()) return point_hpolytope(lam);
    RatCone cone = cone_hull(lam, extreme_points(far));
    return intersect(cone.hpoly, chamber(root_system(s)).hpoly);
}

namespace detail {

inline HPolytope with_trace(HPolytope h, std::size_t from, std::size_t count, const Rational& value) {
    RatVec n(h.dim, Rational(0));
    for (std::size_t i = from; i < from + count; ++i) n[i] = 1;
    h.equalities.push_back({std::move(n), value});
    return h;
}

inline void add_equal(HPolytope& h, std::size_t i, std::size_t j, int sign = -1) {
    RatVec n(h.dim, Rational(0));
    n[i] = 1;
    n[j] += sign;
    h.equalities.push_back({std::move(n), Rational(0)});
}

inline void add_value(HPolytope& h, std::size_t i, const Rational& v) {
    RatVec n(h.dim, Rational(0));
    n[i] = 1;
    h.equalities.push_back({std::move(n), v});
}

inline RatVec q(long a, long b = 1) { return RatVec{Rational(a, b)}; }

inline RatVec rv(std::initializer_list<std::pair<long, long>> xs) {
    RatVec v;
    for (auto [a, b] : xs) v.push_back(Rational(a, b));
    return v;
}

}  // namespace detail

/// The six vertices listed for the doubly excited polytope of C2 x C2 x C3.
inline std::vector<RatVec> displayed_p2_223() {
    using detail::rv;
    return {
        rv({{1, 1}, {0, 1}, {1, 1}, {0, 1}, {1, 1}, {0, 1}, {0, 1}}),
        rv({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 1}, {0, 1}, {0, 1}}),
        rv({{1, 2}, {1, 2}, {1, 1}, {0, 1}, {1, 2}, {1, 2}, {0, 1}}),
        rv({{1, 1}, {0, 1}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {0, 1}}),
        rv({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 3}, {1, 3}, {1, 3}}),
        rv({{2, 3}, {1, 3}, {2, 3}, {1, 3}, {1, 3}, {1, 3}, {1, 3}}),
    };
}

/// ((1/2,1/2),(1/2,1/2),(1/2,1/2,0)): the GHZ marginal, a quarter of lambda + eta221 + eta122 + eta212.
/// Missing from the six-vertex list but a vertex of the defining intersection.
inline RatVec ghz_vertex_223() {
    return detail::rv({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {0, 1}});
}

/// Spectral polytopes stated in closed form, in toolkit coordinates.
inline HPolytope reference_polytope(const Scenario& s) {
    using detail::rv;
    const auto spec = root_system(s);
    const auto lam = highest_weight(s);
    HPolytope ch = chamber(spec).hpoly;
    const std::size_t r = spec.rank();

    switch (s.kind) {
        case Kind::Distinguishable: {
            const auto& d = s.dims;
            if (d.size() == 1) return point_hpolytope(lam);
            if (d.size() == 2) {
                HPolytope h = detail::with_trace(ch, 0, d[0], Rational(1));
                const std::size_t m = std::min(d[0], d[1]);
                for (std::size_t i = 0; i < m; ++i) detail::add_equal(h, i, d[0] + i);
                for (std::size_t i = m; i < d[0]; ++i) detail::add_value(h, i, 0);
                for (std::size_t i = m; i < d[1]; ++i) detail::add_value(h, d[0] + i, 0);
                return minimize(canonicalize(h));
            }
            if (std::all_of(d.begin(), d.end(), [](std::size_t n) { return n == 2; })) {
                HPolytope h = ch;
                const std::size_t L = d.size();
                for (std::size_t k = 0; k < L; ++k) h = detail::with_trace(h, 2 * k, 2, Rational(1));
                for (std::size_t k = 0; k < L; ++k) {
                    RatVec n(r, Rational(0));
                    for (std::size_t l = 0; l < L; ++l) n[2 * l + 1] = (l == k) ? -1 : 1;
                    h.inequalities.push_back({std::move(n), Rational(0)});
                }
                return minimize(canonicalize(h));
            }
            if (d == std::vector<std::size_t>{2, 2, 3}) {
                auto v = displayed_p2_223();
                v.push_back(ghz_vertex_223());
                v.push_back(rv({{1, 2}, {1, 2}, {3, 4}, {1, 4}, {1, 2}, {1, 4}, {1, 4}}));
                v.push_back(rv({{3, 4}, {1, 4}, {1, 2}, {1, 2}, {1, 2}, {1, 4}, {1, 4}}));
                return vrep_to_hrep(extreme_points(v));
            }
            break;
        }
        case Kind::Bosons: {
            if (s.particles == 1) return point_hpolytope(lam);
            return minimize(canonicalize(detail::with_trace(ch, 0, r, Rational(static_cast<long>(s.particles)))));
        }
        case Kind::Fermions: {
            const std::size_t L = s.particles, N = s.modes;
            if (L == 1 || L == N) return point_hpolytope(lam);
            if (L == 2) {
                HPolytope h = detail::with_trace(ch, 0, N, Rational(2));
                for (std::size_t k = 0; 2 * k + 1 < N; ++k) detail::add_equal(h, 2 * k, 2 * k + 1);
                if (N % 2 == 1) detail::add_value(h, N - 1, 0);
                return minimize(canonicalize(h));
            }
            if (L == 3 && N == 6) {
                std::vector<RatVec> v = {
                    rv({{1, 1}, {1, 1}, {1, 1}, {0, 1}, {0, 1}, {0, 1}}),
                    rv({{1, 1}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {0, 1}}),
                    rv({{3, 4}, {3, 4}, {1, 2}, {1, 2}, {1, 4}, {1, 4}}),
                    rv({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}}),
                };
                return vrep_to_hrep(extreme_points(v));
            }
            if (L == 3 && N == 7) {
                std::vector<RatVec> v = {
                    lam,
                    rv({{3, 7}, {3, 7}, {3, 7}, {3, 7}, {3, 7}, {3, 7}, {3, 7}}),
                    rv({{2, 3}, {2, 3}, {1, 3}, {1, 3}, {1, 3}, {1, 3}, {1, 3}}),
                    rv({{5, 7}, {5, 7}, {3, 7}, {3, 7}, {3, 7}, {1, 7}, {1, 7}}),
                    rv({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 4}, {1, 4}}),
                    rv({{3, 5}, {3, 5}, {3, 5}, {3, 5}, {1, 5}, {1, 5}, {1, 5}}),
                };
                // (v, 0) for the vertices of the three-fermion six-mode polytope
                for (auto& w : hrep_to_vrep(reference_polytope(Scenario::fermions(3, 6))).vertices) {
                    w.push_back(0);
                    v.push_back(w);
                }
                // (1, v) for the vertices of the two-fermion six-mode polytope
                for (auto& w : hrep_to_vrep(reference_polytope(Scenario::fermions(2, 6))).vertices) {
                    w.insert(w.begin(), Rational(1));
                    v.push_back(w);
                }
                return vrep_to_hrep(extreme_points(v));
            }
            break;
        }
        case Kind::FockEven:
        case Kind::FockOdd: {
            const std::size_t N = s.modes;
            if (N <= 3) return point_hpolytope(lam);
            if (N == 4 || N == 5) {
                // eta_1 = 1/2 when N = 5; the remaining entries share one magnitude in [0, 1/2],
                // with the last sign flipped for the odd component
                RatVec a = lam, b(N, Rational(0));
                if (N == 5) b[0] = Rational(1, 2);
                return vrep_to_hrep(extreme_points({a, b}));
            }
            break;
        }
    }
    throw NotInCatalogError(to_string(s));
}

inline bool in_catalog(const Scenario& s) {
    try {
        reference_polytope(s);
        return true;
    } catch (const NotInCatalogError&) {
        return false;
    }
}

struct BoundsReport {
    VPolytope p2;
    HPolytope outer;
    std::optional<HPolytope> reference;
    std::string strategy;
    bool minuscule = false;
    bool second_osculating_fills = false;  // no layers beyond the second
    std::optional<bool> p2_equals_reference;
    std::optional<bool> cone_equals_hull;  // minuscule scenarios only
    bool inner_in_outer = false;
};

inline BoundsReport bounds_report(const Scenario& s) {
    BoundsReport rep;
    const auto layers = excitation_layers(s);
    rep.p2 = p2_polytope(s);
    rep.strategy = layers.layer(2).empty() ? "highest weight only" : stabilizer_n2(s).strategy;
    rep.outer = outer_cone(s);
    rep.minuscule = is_minuscule(s);
    rep.second_osculating_fills = layers.layers.size() <= 3;
    rep.inner_in_outer = subset_of(rep.p2, rep.outer);
    if (rep.minuscule && s.kind != Kind::Bosons) rep.cone_equals_hull = p2_forms_agree(s);
    if (in_catalog(s)) {
        rep.reference = reference_polytope(s);
        rep.p2_equals_reference = polytopes_equal(rep.p2, *rep.reference);
    }
    return rep;
}

/// Scenarios with a closed-form reference exercised by the test and acceptance suites.
inline std::vector<Scenario> catalog_scenarios() {
    std::vector<Scenario> out;
    for (auto [m, n] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {2, 3}, {3, 4}, {3, 5}}) {
        out.push_back(Scenario::distinguishable({m, n}));
    }
    for (std::size_t L = 3; L <= 6; ++L) out.push_back(Scenario::distinguishable(std::vector<std::size_t>(L, 2)));
    out.push_back(Scenario::distinguishable({2, 2, 3}));
    for (std::size_t N = 4; N <= 8; ++N) out.push_back(Scenario::fermions(2, N));
    out.push_back(Scenario::fermions(3, 6));
    out.push_back(Scenario::fermions(3, 7));
    for (auto [L, N] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 2}, {3, 2}, {2, 3}, {4, 3}, {4, 2}}) {
        out.push_back(Scenario::bosons(L, N));
    }
    for (std::size_t N = 1; N <= 5; ++N) {
        out.push_back(Scenario::fock_even(N));
        out.push_back(Scenario::fock_odd(N));
    }
    return out;
}

}  // namespace qmarg
