#include <gtest/gtest.h>

#include <random>

#include "qmarginal/lie.hpp"
#include "qmarginal/scenarios.hpp"
#include "qmarginal/bounds.hpp"

using namespace qmarg;

namespace {

RatVec R(std::initializer_list<std::pair<long, long>> xs) {
    RatVec v;
    for (auto [a, b] : xs) v.push_back(Rational(a, b));
    return v;
}

std::size_t count_positive(const std::vector<Root>& rs) {
    return static_cast<std::size_t>(std::count_if(rs.begin(), rs.end(), [](const Root& r) { return r.positive; }));
}

}  // namespace

TEST(Roots, U2) {
    auto rs = roots(type_a({2}));
    ASSERT_EQ(rs.size(), 2u);
    for (const auto& r : rs) EXPECT_EQ(r.positive, r.vector == ratvec_int({1, -1}));
}

TEST(Roots, U3PositivesAreIBeforeJ) {
    auto rs = roots(type_a({3}));
    ASSERT_EQ(rs.size(), 6u);
    for (const auto& r : rs) {
        std::size_t plus = 0, minus = 0;
        for (std::size_t i = 0; i < 3; ++i) {
            if (r.vector[i] == 1) plus = i;
            if (r.vector[i] == -1) minus = i;
        }
        EXPECT_EQ(r.positive, plus < minus);
    }
}

TEST(Roots, O8) {
    auto rs = roots(type_d(4));
    EXPECT_EQ(rs.size(), 24u);
    EXPECT_EQ(count_positive(rs), 12u);
}

TEST(Roots, CardinalityFormulas) {
    for (std::size_t n = 1; n <= 7; ++n) {
        EXPECT_EQ(roots(type_a({n})).size(), n * (n - 1));
        EXPECT_EQ(roots(type_d(n)).size(), 2 * n * (n - 1));
    }
    EXPECT_EQ(roots(type_a({2, 3, 4})).size(), 2u + 6u + 12u);
}

TEST(Roots, ClosedUnderNegationAndBalanced) {
    for (const auto& spec : {type_a({2, 2, 3}), type_a({5}), type_d(5), type_d(2)}) {
        auto rs = roots(spec);
        std::set<RatVec> all;
        for (const auto& r : rs) all.insert(r.vector);
        for (const auto& r : rs) {
            EXPECT_TRUE(all.count(-r.vector));
            EXPECT_TRUE(is_root(spec, r.vector));
        }
        EXPECT_EQ(2 * count_positive(rs), rs.size());
    }
}

TEST(Roots, IsRootRejectsNonRoots) {
    auto spec = type_a({2, 2});
    EXPECT_TRUE(is_root(spec, ratvec_int({1, -1, 0, 0})));
    EXPECT_FALSE(is_root(spec, ratvec_int({1, 0, -1, 0})));  // straddles blocks
    EXPECT_FALSE(is_root(spec, ratvec_int({1, 1, 0, 0})));
    EXPECT_FALSE(is_root(spec, ratvec_int({0, 0, 0, 0})));
    EXPECT_TRUE(is_root(type_d(3), ratvec_int({-1, 0, -1})));
    EXPECT_FALSE(is_root(type_d(3), ratvec_int({1, 1, 1})));
}

TEST(Roots, SimpleRootsGeneratePositives) {
    // every positive root is a nonnegative integer combination of simple roots
    for (const auto& spec : {type_a({4}), type_a({2, 3}), type_d(4), type_d(5)}) {
        auto simple = simple_roots(spec);
        for (const auto& a : positive_roots(spec)) {
            std::vector<RatVec> A;
            for (std::size_t i = 0; i < spec.rank(); ++i) {
                RatVec row;
                for (const auto& s : simple) row.push_back(s.vector[i]);
                A.push_back(row);
            }
            // solve by least squares over rationals: simple roots are independent
            HPolytope h;
            h.dim = simple.size();
            for (std::size_t i = 0; i < spec.rank(); ++i) h.equalities.push_back({A[i], a.vector[i]});
            for (std::size_t j = 0; j < simple.size(); ++j) {
                RatVec e(simple.size(), Rational(0));
                e[j] = 1;
                h.inequalities.push_back({e, Rational(0)});
            }
            auto v = hrep_to_vrep(h);
            ASSERT_EQ(v.vertices.size(), 1u);
            for (const auto& c : v.vertices[0]) EXPECT_EQ(denominator(c), 1);
        }
    }
}

TEST(Inner, Examples) {
    EXPECT_EQ(inner(ratvec_int({1, 0, 0}), ratvec_int({1, -1, 0})), 1);
    EXPECT_EQ(inner(ratvec_int({1, 1, 1, 0, 0, 0}), ratvec_int({0, 0, 1, -1, 0, 0})), 1);
    EXPECT_EQ(inner(R({{1, 2}, {1, 2}, {1, 2}, {1, 2}}), ratvec_int({0, 0, -1, -1})), -1);
}

TEST(Chamber, U3IncludesLastNonnegative) {
    auto h = chamber(type_a({3})).hpoly;
    std::vector<Constraint> want{{ratvec_int({0, 0, 1}), Rational(0)},
                                 {ratvec_int({0, 1, -1}), Rational(0)},
                                 {ratvec_int({1, -1, 0}), Rational(0)}};
    auto got = h.inequalities;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
}

TEST(Chamber, O8) {
    auto h = chamber(type_d(4)).hpoly;
    std::vector<Constraint> want{{ratvec_int({1, -1, 0, 0}), Rational(0)},
                                 {ratvec_int({0, 1, -1, 0}), Rational(0)},
                                 {ratvec_int({0, 0, 1, -1}), Rational(0)},
                                 {ratvec_int({0, 0, 1, 1}), Rational(0)}};
    auto got = h.inequalities;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    EXPECT_EQ(got, want);
    EXPECT_TRUE(is_dominant(type_d(4), R({{1, 2}, {1, 2}, {1, 2}, {-1, 2}})));
    EXPECT_FALSE(is_dominant(type_d(4), R({{1, 2}, {1, 2}, {-1, 2}, {-1, 2}})));
}

TEST(Chamber, TwoQubitsHasFourInequalities) {
    EXPECT_EQ(chamber(type_a({2, 2})).hpoly.inequalities.size(), 4u);
}

TEST(ToChamber, Examples) {
    EXPECT_EQ(to_chamber(type_a({3}), std::vector<double>{0.2, 0.5, 0.3}), (std::vector<double>{0.5, 0.3, 0.2}));
    EXPECT_EQ(to_chamber(type_a({2, 2}), std::vector<double>{0, 1, 1, 0}), (std::vector<double>{1, 0, 1, 0}));
    EXPECT_EQ(to_chamber(type_d(4), std::vector<double>{0.1, 0.4, 0.3, 0.2}, {-1}),
              (std::vector<double>{0.4, 0.3, 0.2, -0.1}));
    EXPECT_EQ(to_chamber(type_d(4), R({{1, 2}, {-1, 2}, {-1, 2}, {-1, 2}})), R({{1, 2}, {1, 2}, {1, 2}, {-1, 2}}));
}

TEST(ToChamber, OutputIsDominant) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    for (const auto& spec : {type_a({3, 2}), type_d(5)}) {
        auto h = chamber(spec).hpoly;
        for (int t = 0; t < 200; ++t) {
            std::vector<double> x(spec.rank());
            for (auto& v : x) v = spec.factors[0].type == FactorType::A ? std::abs(u(rng)) : u(rng);
            EXPECT_TRUE(contains(h, to_chamber(spec, x), 1e-12).inside);
        }
    }
}

TEST(Chamber, HighestWeightIsTheOnlyDominantSupportWeight) {
    for (const auto& s : catalog_scenarios()) {
        if (s.kind == Kind::Bosons) continue;
        const auto spec = root_system(s);
        std::size_t dominant = 0;
        for (const auto& w : support(s)) {
            if (is_dominant(spec, w)) {
                ++dominant;
                EXPECT_EQ(w, highest_weight(s)) << to_string(s);
            }
        }
        EXPECT_EQ(dominant, 1u) << to_string(s);
    }
}
