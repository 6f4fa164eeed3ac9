#include <gtest/gtest.h>

#include "qmarginal/bounds.hpp"
#include "qmarginal/scenarios.hpp"

using namespace qmarg;

namespace {

RatVec R(std::initializer_list<std::pair<long, long>> xs) {
    RatVec v;
    for (auto [a, b] : xs) v.push_back(Rational(a, b));
    return v;
}

std::size_t index_of(const std::vector<BasisState>& b, const std::vector<int>& occ) {
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (b[i].occ == occ) return i;
    }
    throw std::logic_error("occupation not in basis");
}

std::vector<Scenario> sweep() {
    auto out = catalog_scenarios();
    out.push_back(Scenario::distinguishable({3}));
    out.push_back(Scenario::bosons(1, 4));
    out.push_back(Scenario::fermions(1, 3));
    out.push_back(Scenario::fermions(4, 4));
    out.push_back(Scenario::fock_even(6));
    return out;
}

}  // namespace

TEST(Parse, Grammar) {
    auto d = parse_scenario("dist:2x2x3");
    EXPECT_EQ(d.kind, Kind::Distinguishable);
    EXPECT_EQ(d.dims, (std::vector<std::size_t>{2, 2, 3}));
    auto b = parse_scenario("bosons:4@2");
    EXPECT_EQ(b.kind, Kind::Bosons);
    EXPECT_EQ(b.particles, 4u);
    EXPECT_EQ(b.modes, 2u);
    EXPECT_EQ(parse_scenario("fermions:3@6").kind, Kind::Fermions);
    EXPECT_EQ(parse_scenario("fock-even:5").kind, Kind::FockEven);
    EXPECT_EQ(parse_scenario("fock-odd:5").modes, 5u);
    for (const char* s : {"dist:2x2x3", "bosons:4@2", "fermions:3@6", "fock-even:5", "fock-odd:5"}) {
        EXPECT_EQ(to_string(parse_scenario(s)), s);
    }
}

TEST(Parse, Rejects) {
    for (const char* s : {"", "dist", "dist:", "dist:2x", "dist:0x2", "bosons:2", "fermions:4@3", "fermions:0@3",
                          "fock-even:0", "fock-even:x", "spins:2", "bosons:2@-1"}) {
        EXPECT_THROW(parse_scenario(s), std::invalid_argument) << s;
    }
}

TEST(Support, Examples) {
    EXPECT_EQ(support(Scenario::fermions(3, 6)).size(), 20u);
    auto b = support(Scenario::bosons(2, 2));
    std::vector<RatVec> want{ratvec_int({2, 0}), ratvec_int({1, 1}), ratvec_int({0, 2})};
    EXPECT_EQ(b, want);
    auto f = support(Scenario::fock_even(2));
    std::vector<RatVec> wf{R({{1, 2}, {1, 2}}), R({{-1, 2}, {-1, 2}})};
    EXPECT_EQ(f, wf);
}

TEST(Support, DimensionFormulasAndDistinctWeights) {
    for (const auto& s : sweep()) {
        std::size_t closed = 0;
        switch (s.kind) {
            case Kind::Distinguishable:
                closed = 1;
                for (auto d : s.dims) closed *= d;
                break;
            case Kind::Bosons: closed = binomial(s.modes + s.particles - 1, s.particles); break;
            case Kind::Fermions: closed = binomial(s.modes, s.particles); break;
            default: closed = std::size_t{1} << (s.modes - 1);
        }
        auto w = support(s);
        EXPECT_EQ(w.size(), closed) << to_string(s);
        EXPECT_EQ(dimension(s), closed);
        std::set<RatVec> uniq(w.begin(), w.end());
        EXPECT_EQ(uniq.size(), w.size()) << to_string(s);
    }
}

TEST(Support, WeightShapes) {
    for (const auto& s : sweep()) {
        for (const auto& w : support(s)) {
            Rational sum = 0;
            for (const auto& x : w) sum += x;
            switch (s.kind) {
                case Kind::Distinguishable: EXPECT_EQ(sum, Rational(static_cast<long>(s.dims.size()))); break;
                case Kind::Bosons:
                case Kind::Fermions: EXPECT_EQ(sum, Rational(static_cast<long>(s.particles))); break;
                default:
                    for (const auto& x : w) EXPECT_EQ(abs(x), Rational(1, 2));
            }
        }
    }
}

TEST(HighestWeight, Examples) {
    EXPECT_EQ(highest_weight(Scenario::fermions(3, 7)), ratvec_int({1, 1, 1, 0, 0, 0, 0}));
    EXPECT_EQ(highest_weight(Scenario::bosons(4, 2)), ratvec_int({4, 0}));
    EXPECT_EQ(highest_weight(Scenario::fock_odd(5)), R({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {-1, 2}}));
    EXPECT_EQ(highest_weight(Scenario::fock_even(3)), R({{1, 2}, {1, 2}, {1, 2}}));
    EXPECT_EQ(highest_weight(Scenario::distinguishable({2, 3})), ratvec_int({1, 0, 1, 0, 0}));
}

TEST(HighestWeight, FirstInBasisAndDominant) {
    for (const auto& s : sweep()) {
        EXPECT_EQ(highest_index(s), 0u) << to_string(s);
        EXPECT_TRUE(is_dominant(root_system(s), highest_weight(s))) << to_string(s);
    }
}

TEST(LambdaPartition, Examples) {
    auto f = lambda_partition(Scenario::fermions(3, 6));
    EXPECT_EQ(f.delta_zero.size(), 12u);
    EXPECT_EQ(f.delta_minus.size(), 9u);
    EXPECT_EQ(f.delta_plus.size(), 9u);
    EXPECT_TRUE(lambda_partition(Scenario::distinguishable({2, 2, 2})).delta_zero.empty());
    auto e = lambda_partition(Scenario::fock_even(4));
    ASSERT_EQ(e.delta_minus.size(), 6u);
    for (const auto& a : e.delta_minus) {
        for (const auto& x : a.vector) EXPECT_TRUE(x == 0 || x == -1);
    }
}

TEST(LambdaPartition, DisjointUnionAndSymmetry) {
    for (const auto& s : sweep()) {
        auto p = lambda_partition(s);
        auto all = roots(root_system(s));
        EXPECT_EQ(p.delta_zero.size() + p.delta_minus.size() + p.delta_plus.size(), all.size());
        std::set<RatVec> plus;
        for (const auto& a : p.delta_plus) plus.insert(a.vector);
        for (const auto& a : p.delta_minus) EXPECT_TRUE(plus.count(-a.vector));
        std::set<RatVec> zero;
        for (const auto& a : p.delta_zero) zero.insert(a.vector);
        for (const auto& a : p.delta_zero) EXPECT_TRUE(zero.count(-a.vector));
    }
}

TEST(LambdaPartition, TangentWeightsInSupport) {
    for (const auto& s : sweep()) {
        auto supp = support(s);
        std::set<RatVec> in(supp.begin(), supp.end());
        const auto lam = highest_weight(s);
        for (const auto& a : lambda_partition(s).delta_minus) EXPECT_TRUE(in.count(lam + a.vector)) << to_string(s);
    }
}

TEST(Lowering, DistinguishableExample) {
    const auto s = Scenario::distinguishable({2, 2});
    const auto b = basis(s);
    const auto act = lowering_action(s);
    const std::size_t src = index_of(b, {0, 0}), dst = index_of(b, {1, 0});
    bool found = false;
    for (const auto& e : act.entries) {
        if (e.source == src && e.target == dst) {
            EXPECT_EQ(act.roots[e.root].vector, ratvec_int({-1, 1, 0, 0}));
            EXPECT_EQ(e.coefficient, 1.0);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Lowering, FermionReorderSign) {
    // a_3^dagger a_1 |1 ^ 2> = -|2 ^ 3>
    const auto s = Scenario::fermions(2, 3);
    const auto b = basis(s);
    const auto act = lowering_action(s);
    const std::size_t src = index_of(b, {1, 1, 0}), dst = index_of(b, {0, 1, 1});
    bool found = false;
    for (const auto& e : act.entries) {
        if (e.source == src && e.target == dst) {
            EXPECT_EQ(e.coefficient, -1.0);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Lowering, BosonNormalization) {
    const auto s = Scenario::bosons(2, 2);
    const auto b = basis(s);
    const auto act = lowering_action(s);
    const std::size_t src = index_of(b, {2, 0}), dst = index_of(b, {1, 1});
    bool found = false;
    for (const auto& e : act.entries) {
        if (e.source == src && e.target == dst) {
            EXPECT_EQ(e.coefficient_sq, 2);
            EXPECT_NEAR(e.coefficient, std::sqrt(2.0), 1e-15);
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(Lowering, TablesAreCompleteAndShiftWeights) {
    for (const auto& s : sweep()) {
        const auto b = basis(s);
        const auto act = lowering_action(s);
        std::map<RatVec, std::size_t> idx;
        for (std::size_t i = 0; i < b.size(); ++i) idx[b[i].weight] = i;
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto& e : act.entries) {
            EXPECT_EQ(b[e.target].weight, b[e.source].weight + act.roots[e.root].vector);
            EXPECT_NE(e.coefficient, 0.0);
            EXPECT_NEAR(e.coefficient * e.coefficient, to_double(e.coefficient_sq), 1e-12);
            seen.insert({e.root, e.source});
        }
        for (std::size_t r = 0; r < act.roots.size(); ++r) {
            EXPECT_FALSE(act.roots[r].positive);
            for (std::size_t k = 0; k < b.size(); ++k) {
                const bool lands = idx.count(b[k].weight + act.roots[r].vector) > 0;
                EXPECT_EQ(lands, seen.count({r, k}) > 0) << to_string(s);
            }
        }
    }
}

TEST(Minuscule, Flags) {
    EXPECT_TRUE(is_minuscule(Scenario::fermions(3, 6)));
    EXPECT_FALSE(is_minuscule(Scenario::bosons(3, 2)));
    EXPECT_FALSE(is_minuscule(Scenario::bosons(2, 2)));
    EXPECT_TRUE(is_minuscule(Scenario::fock_even(4)));
    EXPECT_TRUE(is_minuscule(Scenario::distinguishable({2, 2, 3})));
    EXPECT_TRUE(is_minuscule(Scenario::bosons(1, 3)));
}
