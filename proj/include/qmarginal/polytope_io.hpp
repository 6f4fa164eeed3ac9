#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ratgeom.hpp"

namespace qmarg {

using json = nlohmann::json;

inline json to_json(const RatVec& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline RatVec ratvec_from_json(const json& j) {
    RatVec v;
    for (const auto& x : j) {
        if (x.is_string()) v.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer()) v.emplace_back(x.get<long long>());
        else throw std::invalid_argument("rational entries must be strings \"p/q\" or integers");
    }
    return v;
}

inline json to_json(const Constraint& c) { return json{{"normal", to_json(c.normal)}, {"offset", to_string(c.offset)}}; }

inline Constraint constraint_from_json(const json& j) {
    const auto& off = j.at("offset");
    Rational o = off.is_string() ? parse_rational(off.get<std::string>()) : Rational(off.get<long long>());
    return {ratvec_from_json(j.at("normal")), o};
}

/// Polytope in the canonical schema; fields not available are emitted empty.
inline json polytope_json(std::size_t dim, const std::vector<RatVec>& vertices, const HPolytope* h) {
    json j;
    j["dim"] = dim;
    j["vertices"] = json::array();
    for (const auto& v : vertices) j["vertices"].push_back(to_json(v));
    j["inequalities"] = json::array();
    j["equalities"] = json::array();
    if (h) {
        for (const auto& c : h->inequalities) j["inequalities"].push_back(to_json(c));
        for (const auto& c : h->equalities) j["equalities"].push_back(to_json(c));
    }
    return j;
}

/// Both representations; bounded polytopes only.
inline json to_json(const VPolytope& p) {
    HPolytope h = vrep_to_hrep(p);
    return polytope_json(p.dim, p.vertices, &h);
}

/// Vertices are filled in when the polyhedron is bounded.
inline json to_json(const HPolytope& h) {
    std::vector<RatVec> verts;
    try {
        verts = hrep_to_vrep(h).vertices;
    } catch (const GeomError& e) {
        if (e.kind() != GeomErrorKind::Unbounded) throw;
    }
    return polytope_json(h.dim, verts, &h);
}

inline HPolytope hpolytope_from_json(const json& j) {
    HPolytope h;
    h.dim = j.at("dim").get<std::size_t>();
    if (j.contains("inequalities")) {
        for (const auto& c : j["inequalities"]) h.inequalities.push_back(constraint_from_json(c));
    }
    if (j.contains("equalities")) {
        for (const auto& c : j["equalities"]) h.equalities.push_back(constraint_from_json(c));
    }
    if (h.inequalities.empty() && h.equalities.empty() && j.contains("vertices") && !j["vertices"].empty()) {
        std::vector<RatVec> pts;
        for (const auto& v : j["vertices"]) pts.push_back(ratvec_from_json(v));
        return vrep_to_hrep(VPolytope{h.dim, pts});
    }
    return canonicalize(h);
}

inline VPolytope vpolytope_from_json(const json& j) {
    std::size_t dim = j.at("dim").get<std::size_t>();
    if (j.contains("vertices") && !j["vertices"].empty()) {
        std::vector<RatVec> pts;
        for (const auto& v : j["vertices"]) pts.push_back(ratvec_from_json(v));
        for (const auto& p : pts) detail::require_dim(p, dim, "vpolytope_from_json");
        return extreme_points(pts);
    }
    return hrep_to_vrep(hpolytope_from_json(j));
}

/// cdd .ext: rows "1 v1 ... vn" for vertices.
inline std::string to_cdd_ext(const VPolytope& p) {
    std::ostringstream os;
    os << "V-representation\nbegin\n" << p.vertices.size() << ' ' << p.dim + 1 << " rational\n";
    for (const auto& v : p.vertices) {
        os << '1';
        for (const auto& x : v) os << ' ' << to_string(x);
        os << '\n';
    }
    os << "end\n";
    return os.str();
}

/// cdd .ine: rows "-b a1 ... an" meaning -b + a.x >= 0; equalities listed under "linearity".
inline std::string to_cdd_ine(const HPolytope& h) {
    std::ostringstream os;
    os << "H-representation\n";
    const std::size_t m = h.equalities.size() + h.inequalities.size();
    if (!h.equalities.empty()) {
        os << "linearity " << h.equalities.size();
        for (std::size_t i = 1; i <= h.equalities.size(); ++i) os << ' ' << i;
        os << '\n';
    }
    os << "begin\n" << m << ' ' << h.dim + 1 << " rational\n";
    auto row = [&](const Constraint& c) {
        os << to_string(-c.offset);
        for (const auto& x : c.normal) os << ' ' << to_string(x);
        os << '\n';
    };
    for (const auto& c : h.equalities) row(c);
    for (const auto& c : h.inequalities) row(c);
    os << "end\n";
    return os.str();
}

}  // namespace qmarg
