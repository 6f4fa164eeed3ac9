#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "rational.hpp"

namespace qmarg {

enum class GeomErrorKind { Empty, Unbounded, DimensionMismatch, DegenerateCone };

inline const char* to_string(GeomErrorKind k) {
    switch (k) {
        case GeomErrorKind::Empty: return "Empty";
        case GeomErrorKind::Unbounded: return "Unbounded";
        case GeomErrorKind::DimensionMismatch: return "DimensionMismatch";
        case GeomErrorKind::DegenerateCone: return "DegenerateCone";
    }
    return "?";
}

class GeomError : public std::runtime_error {
public:
    GeomError(GeomErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
    GeomErrorKind kind() const noexcept { return kind_; }

private:
    GeomErrorKind kind_;
};

/// One linear constraint: <normal, x> >= offset (inequality) or == offset (equality).
struct Constraint {
    RatVec normal;
    Rational offset;

    friend bool operator==(const Constraint& a, const Constraint& b) {
        return a.offset == b.offset && a.normal == b.normal;
    }
    friend bool operator<(const Constraint& a, const Constraint& b) {
        if (a.normal != b.normal) return a.normal < b.normal;
        return a.offset < b.offset;
    }
};

struct VPolytope {
    std::size_t dim = 0;
    std::vector<RatVec> vertices;  // extreme points, sorted lexicographically
};

struct HPolytope {
    std::size_t dim = 0;
    std::vector<Constraint> inequalities;
    std::vector<Constraint> equalities;
};

/// Cone with apex; hpoly is the cone itself (apex included), not a translate to the origin.
struct RatCone {
    RatVec apex;
    HPolytope hpoly;
};

/// Minkowski-Weyl generators of a polyhedron: conv(points) + cone(rays) + span(lines).
struct Generators {
    std::size_t dim = 0;
    std::vector<RatVec> points;
    std::vector<RatVec> rays;
    std::vector<RatVec> lines;
};

struct Membership {
    bool inside = false;
    Rational violation = 0;
};

struct MembershipReal {
    bool inside = false;
    double violation = 0.0;
};

namespace detail {

inline void require_dim(const RatVec& v, std::size_t dim, const char* where) {
    if (v.size() != dim) {
        throw GeomError(GeomErrorKind::DimensionMismatch,
                        std::string(where) + ": expected dimension " + std::to_string(dim) + ", got " +
                            std::to_string(v.size()));
    }
}

inline void sort_unique(std::vector<RatVec>& vs) {
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
}

/// Primitive integer representative with first nonzero entry positive.
inline RatVec sign_normalized(const RatVec& v) {
    RatVec p = primitive(v);
    for (const auto& x : p) {
        if (x.is_zero()) continue;
        if (x < 0) p = -p;
        break;
    }
    return p;
}

struct DDRay {
    RatVec v;
    boost::dynamic_bitset<> zeros;
};

struct DDResult {
    std::vector<RatVec> lineality;
    std::vector<RatVec> rays;
};

/// Double description of {y : A y >= 0, E y = 0}. Returns a lineality basis and the extreme rays
/// of the pointed part; inequalities are inserted in lexicographic order.
inline DDResult double_description(std::size_t D, const std::vector<RatVec>& ineq,
                                   const std::vector<RatVec>& eq) {
    const std::size_t m = ineq.size();
    std::vector<RatVec> lin;
    for (std::size_t i = 0; i < D; ++i) {
        RatVec e(D, Rational(0));
        e[i] = 1;
        lin.push_back(std::move(e));
    }
    std::vector<DDRay> rays;
    boost::dynamic_bitset<> processed(m);

    auto step = [&](const RatVec& a, bool is_eq, std::size_t idx) {
        std::size_t pivot = lin.size();
        Rational apiv;
        for (std::size_t k = 0; k < lin.size(); ++k) {
            Rational s = dot(a, lin[k]);
            if (!s.is_zero()) {
                pivot = k;
                apiv = s;
                break;
            }
        }
        if (pivot < lin.size()) {
            RatVec l = lin[pivot];
            lin.erase(lin.begin() + static_cast<std::ptrdiff_t>(pivot));
            for (auto& other : lin) {
                Rational s = dot(a, other);
                if (!s.is_zero()) other = sign_normalized(other - (s / apiv) * l);
            }
            for (auto& r : rays) {
                Rational s = dot(a, r.v);
                if (!s.is_zero()) r.v = primitive(r.v - (s / apiv) * l);
                if (!is_eq) r.zeros.set(idx);
            }
            if (!is_eq) {
                DDRay nr{primitive(apiv > 0 ? l : -l), processed};
                rays.push_back(std::move(nr));
                processed.set(idx);
            }
            return;
        }

        std::vector<std::size_t> pos, neg, zer;
        std::vector<Rational> val(rays.size());
        for (std::size_t k = 0; k < rays.size(); ++k) {
            val[k] = dot(a, rays[k].v);
            if (val[k] > 0) pos.push_back(k);
            else if (val[k] < 0) neg.push_back(k);
            else zer.push_back(k);
        }
        std::vector<DDRay> next;
        next.reserve(rays.size());
        if (!is_eq) {
            for (auto k : pos) next.push_back(rays[k]);
        }
        for (auto k : zer) {
            DDRay r = rays[k];
            if (!is_eq) r.zeros.set(idx);
            next.push_back(std::move(r));
        }
        for (auto p : pos) {
            for (auto n : neg) {
                boost::dynamic_bitset<> common = rays[p].zeros & rays[n].zeros;
                bool adjacent = true;
                for (std::size_t k = 0; k < rays.size() && adjacent; ++k) {
                    if (k == p || k == n) continue;
                    if (common.is_subset_of(rays[k].zeros)) adjacent = false;
                }
                if (!adjacent) continue;
                RatVec v = val[p] * rays[n].v - val[n] * rays[p].v;
                DDRay r{primitive(v), common};
                if (!is_eq) r.zeros.set(idx);
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
        if (!is_eq) processed.set(idx);
    };

    for (const auto& e : eq) step(e, true, 0);
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return ineq[i] < ineq[j]; });
    for (auto i : order) step(ineq[i], false, i);

    DDResult out;
    out.lineality = std::move(lin);
    for (auto& r : rays) out.rays.push_back(std::move(r.v));
    sort_unique(out.rays);
    return out;
}

}  // namespace detail

/// Canonical form: equalities in reduced row-echelon form, inequalities reduced modulo the
/// equality pivots, scaled to a leading coefficient of +-1, deduplicated and sorted.
/// Throws Empty when the system is trivially inconsistent.
inline HPolytope canonicalize(const HPolytope& h) {
    const std::size_t n = h.dim;
    std::vector<RatVec> rows;
    for (const auto& c : h.equalities) {
        detail::require_dim(c.normal, n, "canonicalize");
        RatVec r = c.normal;
        r.push_back(c.offset);
        rows.push_back(std::move(r));
    }
    std::vector<std::size_t> pivots;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t sel = rank;
        while (sel < rows.size() && rows[sel][col].is_zero()) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        Rational inv = 1 / rows[rank][col];
        for (auto& x : rows[rank]) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col].is_zero()) continue;
            Rational f = rows[i][col];
            for (std::size_t j = col; j <= n; ++j) rows[i][j] -= f * rows[rank][j];
        }
        pivots.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i) {
        if (!rows[i][n].is_zero()) throw GeomError(GeomErrorKind::Empty, "inconsistent equalities");
    }
    rows.resize(rank);

    HPolytope out;
    out.dim = n;
    for (auto& r : rows) {
        Rational off = r[n];
        r.pop_back();
        out.equalities.push_back({std::move(r), std::move(off)});
    }

    std::vector<Constraint> ineqs;
    for (const auto& c : h.inequalities) {
        detail::require_dim(c.normal, n, "canonicalize");
        RatVec a = c.normal;
        Rational b = c.offset;
        for (std::size_t k = 0; k < pivots.size(); ++k) {
            Rational f = a[pivots[k]];
            if (f.is_zero()) continue;
            const auto& e = out.equalities[k];
            for (std::size_t j = 0; j < n; ++j) a[j] -= f * e.normal[j];
            b -= f * e.offset;
        }
        auto lead = std::find_if(a.begin(), a.end(), [](const Rational& x) { return !x.is_zero(); });
        if (lead == a.end()) {
            if (b > 0) throw GeomError(GeomErrorKind::Empty, "infeasible constant inequality");
            continue;
        }
        Rational s = abs(*lead);
        for (auto& x : a) x /= s;
        b /= s;
        ineqs.push_back({std::move(a), std::move(b)});
    }
    std::sort(ineqs.begin(), ineqs.end());
    // Same normal: keep the tightest offset (largest, since sorted ascending it is the last).
    for (std::size_t i = 0; i < ineqs.size(); ++i) {
        if (i + 1 < ineqs.size() && ineqs[i + 1].normal == ineqs[i].normal) continue;
        out.inequalities.push_back(ineqs[i]);
    }
    return out;
}

/// Generators of the feasible set of h. Throws Empty if infeasible.
inline Generators generators_of(const HPolytope& h) {
    const std::size_t n = h.dim;
    const std::size_t D = n + 1;
    auto lift = [&](const Constraint& c) {
        detail::require_dim(c.normal, n, "generators_of");
        RatVec r(D);
        r[0] = -c.offset;
        for (std::size_t i = 0; i < n; ++i) r[i + 1] = c.normal[i];
        return r;
    };
    std::vector<RatVec> A, E;
    for (const auto& c : h.inequalities) A.push_back(lift(c));
    RatVec x0(D, Rational(0));
    x0[0] = 1;
    A.push_back(x0);
    for (const auto& c : h.equalities) E.push_back(lift(c));
    auto dd = detail::double_description(D, A, E);

    Generators g;
    g.dim = n;
    for (const auto& l : dd.lineality) g.lines.push_back(detail::sign_normalized(RatVec(l.begin() + 1, l.end())));
    for (const auto& r : dd.rays) {
        RatVec tail(r.begin() + 1, r.end());
        if (r[0] > 0) {
            g.points.push_back((1 / r[0]) * tail);
        } else {
            g.rays.push_back(primitive(tail));
        }
    }
    if (g.points.empty()) throw GeomError(GeomErrorKind::Empty, "infeasible system");
    detail::sort_unique(g.points);
    detail::sort_unique(g.rays);
    detail::sort_unique(g.lines);
    return g;
}

/// Irredundant canonical H-representation of the polyhedron spanned by g.
inline HPolytope hrep_of(const Generators& g) {
    if (g.points.empty()) throw GeomError(GeomErrorKind::Empty, "no points among generators");
    const std::size_t n = g.dim;
    const std::size_t D = n + 1;
    auto lift = [&](const RatVec& v, int head) {
        detail::require_dim(v, n, "hrep_of");
        RatVec r(D);
        r[0] = head;
        for (std::size_t i = 0; i < n; ++i) r[i + 1] = v[i];
        return r;
    };
    std::vector<RatVec> A, E;
    for (const auto& p : g.points) A.push_back(lift(p, 1));
    for (const auto& r : g.rays) A.push_back(lift(r, 0));
    for (const auto& l : g.lines) E.push_back(lift(l, 0));
    auto dd = detail::double_description(D, A, E);

    HPolytope h;
    h.dim = n;
    for (const auto& l : dd.lineality) {
        RatVec a(l.begin() + 1, l.end());
        if (is_zero(a)) continue;
        h.equalities.push_back({std::move(a), -l[0]});
    }
    for (const auto& r : dd.rays) {
        RatVec a(r.begin() + 1, r.end());
        if (is_zero(a)) continue;
        h.inequalities.push_back({std::move(a), -r[0]});
    }
    return canonicalize(h);
}

/// Removes redundant constraints; works for unbounded polyhedra as well.
inline HPolytope minimize(const HPolytope& h) { return hrep_of(generators_of(h)); }

inline HPolytope vrep_to_hrep(const VPolytope& p) {
    if (p.vertices.empty()) throw GeomError(GeomErrorKind::Empty, "vrep_to_hrep: no vertices");
    Generators g;
    g.dim = p.dim;
    g.points = p.vertices;
    return hrep_of(g);
}

inline VPolytope hrep_to_vrep(const HPolytope& h) {
    Generators g = generators_of(h);
    if (!g.rays.empty() || !g.lines.empty()) throw GeomError(GeomErrorKind::Unbounded, "feasible set has a ray");
    return VPolytope{h.dim, std::move(g.points)};
}

inline VPolytope extreme_points(const std::vector<RatVec>& points) {
    if (points.empty()) throw GeomError(GeomErrorKind::Empty, "extreme_points: empty point set");
    const std::size_t n = points.front().size();
    for (const auto& p : points) detail::require_dim(p, n, "extreme_points");
    std::vector<RatVec> pts = points;
    detail::sort_unique(pts);
    if (pts.size() == 1) return VPolytope{n, pts};
    return hrep_to_vrep(vrep_to_hrep(VPolytope{n, std::move(pts)}));
}

inline VPolytope make_vpolytope(const std::vector<RatVec>& points) { return extreme_points(points); }

inline HPolytope intersect(const HPolytope& a, const HPolytope& b) {
    if (a.dim != b.dim) throw GeomError(GeomErrorKind::DimensionMismatch, "intersect");
    HPolytope h = a;
    h.inequalities.insert(h.inequalities.end(), b.inequalities.begin(), b.inequalities.end());
    h.equalities.insert(h.equalities.end(), b.equalities.begin(), b.equalities.end());
    return minimize(canonicalize(h));
}

inline Membership contains(const HPolytope& h, const RatVec& x) {
    detail::require_dim(x, h.dim, "contains");
    Membership m;
    for (const auto& c : h.inequalities) {
        Rational v = c.offset - dot(c.normal, x);
        if (v > m.violation) m.violation = v;
    }
    for (const auto& c : h.equalities) {
        Rational v = abs(c.offset - dot(c.normal, x));
        if (v > m.violation) m.violation = v;
    }
    m.inside = m.violation.is_zero();
    return m;
}

inline MembershipReal contains(const HPolytope& h, const std::vector<double>& x, double tol) {
    if (x.size() != h.dim) throw GeomError(GeomErrorKind::DimensionMismatch, "contains");
    auto eval = [&](const Constraint& c) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (!c.normal[i].is_zero()) s += c.normal[i].convert_to<double>() * x[i];
        }
        return c.offset.convert_to<double>() - s;
    };
    MembershipReal m;
    for (const auto& c : h.inequalities) m.violation = std::max(m.violation, eval(c));
    for (const auto& c : h.equalities) m.violation = std::max(m.violation, std::abs(eval(c)));
    m.inside = m.violation <= tol;
    return m;
}

inline bool contains_point(const VPolytope& p, const RatVec& x) { return contains(vrep_to_hrep(p), x).inside; }

/// Cone at apex over conv(base). Errors when apex lies in conv(base).
inline RatCone cone_hull(const RatVec& apex, const VPolytope& base) {
    if (base.vertices.empty()) throw GeomError(GeomErrorKind::Empty, "cone_hull: empty base");
    detail::require_dim(apex, base.dim, "cone_hull");
    if (contains(vrep_to_hrep(base), apex).inside) {
        throw GeomError(GeomErrorKind::DegenerateCone, "cone_hull: apex lies in the base");
    }
    Generators g;
    g.dim = base.dim;
    g.points.push_back(apex);
    for (const auto& b : base.vertices) g.rays.push_back(primitive(b - apex));
    detail::sort_unique(g.rays);
    return RatCone{apex, hrep_of(g)};
}

inline bool polytopes_equal(const VPolytope& a, const VPolytope& b) {
    if (a.dim != b.dim) return false;
    std::vector<RatVec> va = a.vertices, vb = b.vertices;
    detail::sort_unique(va);
    detail::sort_unique(vb);
    return va == vb;
}

inline bool polytopes_equal(const HPolytope& a, const HPolytope& b) {
    return polytopes_equal(hrep_to_vrep(a), hrep_to_vrep(b));
}

inline bool polytopes_equal(const VPolytope& a, const HPolytope& b) { return polytopes_equal(a, hrep_to_vrep(b)); }
inline bool polytopes_equal(const HPolytope& a, const VPolytope& b) { return polytopes_equal(hrep_to_vrep(a), b); }

/// True iff every vertex of inner lies in outer (exact).
inline bool subset_of(const VPolytope& inner, const HPolytope& outer) {
    return std::all_of(inner.vertices.begin(), inner.vertices.end(),
                       [&](const RatVec& v) { return contains(outer, v).inside; });
}

/// conv(p ∪ {pt}).
inline VPolytope join_points(const RatVec& pt, const VPolytope& p) {
    std::vector<RatVec> pts = p.vertices;
    pts.push_back(pt);
    return extreme_points(pts);
}

/// Dimension of the affine hull.
inline std::size_t affine_dimension(const HPolytope& h) {
    return h.dim - minimize(h).equalities.size();
}

}  // namespace qmarg
