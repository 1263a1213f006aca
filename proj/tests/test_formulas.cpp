#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "gkz/errors.hpp"
#include "gkz/formulas.hpp"
#include "gkz/series.hpp"

using namespace gkz;
using corpus::mat;
using corpus::rvec;

TEST_CASE("dimension formula on the worked example") {
    Configuration cfg = make_configuration(corpus::small_example_matrix());
    Parameter beta = rvec({1, 1});

    SUBCASE("one-cell triangulation: 1 + 0 + 0 + 1") {
        auto bd = dim_log_free(cfg, beta, corpus::small_w());
        CHECK(bd.total == 2);
        REQUIRE(bd.lines.size() == 4);
        CHECK(bd.lines[0].face.empty());
        CHECK(bd.lines[0].contribution == 1);
        CHECK(bd.lines[1].contribution == 0);  // vertex faces
        CHECK(bd.lines[2].contribution == 0);
        CHECK(bd.lines[3].volume == 2);        // the cell: 2 - 2*1 + 1
        CHECK(bd.lines[3].correction == 1);
        CHECK(bd.lines[3].contribution == 1);
    }
    SUBCASE("two-cell triangulation: 0 + 0 + 0 + 1") {
        auto bd = dim_log_free(cfg, beta, corpus::small_w2());
        CHECK(bd.total == 1);
        REQUIRE(bd.lines.size() == 6);
        CHECK(bd.lines[0].face.empty());
        CHECK(bd.lines[0].contribution == 1);
        for (std::size_t i = 1; i < bd.lines.size(); ++i) CHECK(bd.lines[i].contribution == 0);
        // cells contribute 1 - 2*1 + 1 = 0
        CHECK(bd.lines[4].volume == 1);
        CHECK(bd.lines[4].correction == 1);
    }
    SUBCASE("unimodular triangulation with beta in NA is one-dimensional") {
        std::mt19937 rng(5);
        for (int iter = 0; iter < 5; ++iter) {
            IntVec u(3, Int(0));
            for (int j = 0; j < 3; ++j) u[std::size_t(j)] = int(rng() % 4);
            Parameter b = to_rat(mul(cfg.matrix(), u));
            CHECK(dim_log_free(cfg, b, corpus::small_w2()).total == 1);
        }
    }
}

TEST_CASE("rank formula in the simplex case") {
    Configuration big = make_configuration(corpus::rank11_matrix());

    SUBCASE("the exceptional parameter has rank 11 = 2 + 6 + 3") {
        auto r = rank_simplex(big, rvec({1, 1, 1}));
        CHECK(r.rank == 11);
        CHECK(r.volume == 9);
        CHECK(r.exceptional);
        Int full = 0, twodim = 0, rays = 0;
        for (const auto& line : r.breakdown.lines) {
            if (line.face.span_dim == 3) full += line.contribution;
            if (line.face.span_dim == 2) twodim += line.contribution;
            if (line.face.span_dim == 1) rays += line.contribution;
        }
        CHECK(full == 2);
        CHECK(twodim == 6);
        CHECK(rays == 3);
    }
    SUBCASE("generic rational parameters have rank 9") {
        std::mt19937 rng(99);
        std::uniform_int_distribution<long> num(-1000000, 1000000);
        std::uniform_int_distribution<long> den(999000, 1001000);
        for (int iter = 0; iter < 5; ++iter) {
            Parameter beta{Rat(num(rng), den(rng)), Rat(num(rng), den(rng)),
                           Rat(num(rng), den(rng))};
            auto r = rank_simplex(big, beta);
            CHECK(r.rank == 9);
            CHECK(!r.exceptional);
        }
    }
    SUBCASE("square configurations have rank one") {
        Configuration sq = make_configuration(mat({{1, 0}, {0, 1}}));
        CHECK(rank_simplex(sq, rvec({3, -2})).rank == 1);
        CHECK(rank_simplex(sq, corpus::rvec_s({"1/7", "22"})).rank == 1);
    }
    SUBCASE("non-simplex hulls are rejected") {
        // unit square: four vertices in the plane
        Configuration square4 =
            make_configuration(mat({{1, 1, 1, 1}, {0, 1, 0, 1}, {0, 0, 1, 1}}));
        CHECK_THROWS_AS((void)rank_simplex(square4, rvec({1, 0, 0})), NotSimplex);
    }
}

TEST_CASE("exceptional parameters") {
    Configuration big = make_configuration(corpus::rank11_matrix());

    SUBCASE("beta0 is exceptional with a witness among the minimal faces") {
        auto r = is_exceptional(big, rvec({1, 1, 1}));
        CHECK(r.exceptional);
        REQUIRE(r.witness.has_value());
        auto is_ray = [](const Face& f) {
            return f.members == std::vector<int>{0} || f.members == std::vector<int>{3} ||
                   f.members == std::vector<int>{8};
        };
        CHECK(is_ray(r.witness->tau1));
        CHECK(is_ray(r.witness->tau2));
    }
    SUBCASE("columns are not exceptional") {
        CHECK(!is_exceptional(big, rvec({1, 0, 0})).exceptional);
        CHECK(!is_exceptional(big, rvec({1, 2, 0})).exceptional);
    }
    SUBCASE("square case is never exceptional") {
        Configuration sq = make_configuration(mat({{1, 0}, {0, 1}}));
        CHECK(!is_exceptional(sq, rvec({5, 3})).exceptional);
        CHECK(!is_exceptional(sq, corpus::rvec_s({"-1/2", "4"})).exceptional);
    }
}

TEST_CASE("cohen-macaulay test") {
    SUBCASE("rank-11 semigroup is not CM, with a concrete witness") {
        Configuration big = make_configuration(corpus::rank11_matrix());
        auto cm = is_cohen_macaulay(big, 6);
        CHECK(cm.status == CMStatus::NotCohenMacaulay);
        REQUIRE(cm.witness.has_value());
        const auto& w = *cm.witness;
        CHECK(!semigroup_member(big, to_rat(w.beta_hole)));
        // disjoint supports on the hull vertices
        for (const auto& [col, e] : w.m1) CHECK(!w.m2.count(col));
        auto shift = [&](const std::map<int, Int>& m) {
            IntVec x = w.beta_hole;
            for (const auto& [col, e] : m) {
                IntVec a = big.column(col);
                for (std::size_t i = 0; i < x.size(); ++i) x[i] += e * a[i];
            }
            return x;
        };
        CHECK(semigroup_member(big, to_rat(shift(w.m1))));
        CHECK(semigroup_member(big, to_rat(shift(w.m2))));
    }
    SUBCASE("the segment configuration is CM") {
        Configuration small = make_configuration(corpus::small_example_matrix());
        auto cm = is_cohen_macaulay(small, 6);
        CHECK(cm.status == CMStatus::CohenMacaulay);
        CHECK(cm.holes.empty());
    }
    SUBCASE("square configurations are CM (polynomial ring)") {
        Configuration sq = make_configuration(mat({{1, 1}, {0, 1}}));
        CHECK(is_cohen_macaulay(sq, 5).status == CMStatus::CohenMacaulay);
    }
    SUBCASE("the classic non-CM monomial curve 0,1,3,4") {
        Configuration curve = make_configuration(mat({{1, 1, 1, 1}, {0, 1, 3, 4}}));
        auto cm = is_cohen_macaulay(curve, 6);
        CHECK(cm.status == CMStatus::NotCohenMacaulay);
        REQUIRE(cm.holes.size() == 1);
        CHECK(cm.holes[0] == corpus::ivec({1, 2}));
        // the rank jumps exactly at the hole
        auto sweep = exceptional_sweep(curve, 0, 6);
        REQUIRE(sweep.size() == 1);
        CHECK(sweep[0] == rvec({1, 2}));
        auto r = rank_simplex(curve, rvec({1, 2}));
        CHECK(r.rank == 5);
        CHECK(r.volume == 4);
    }
}

TEST_CASE("exceptional sweep") {
    SUBCASE("rank-11 window [0,6] finds exactly beta0") {
        Configuration big = make_configuration(corpus::rank11_matrix());
        auto hits = exceptional_sweep(big, 0, 6);
        REQUIRE(hits.size() == 1);
        CHECK(hits[0] == rvec({1, 1, 1}));
    }
    SUBCASE("square case sweeps empty") {
        Configuration sq = make_configuration(mat({{1, 0}, {0, 1}}));
        CHECK(exceptional_sweep(sq, 0, 6).empty());
    }
    SUBCASE("CM segment sweeps empty") {
        Configuration small = make_configuration(corpus::small_example_matrix());
        CHECK(exceptional_sweep(small, 0, 6).empty());
    }
}

TEST_CASE("rank never drops below the volume") {
    std::mt19937 rng(2024);
    Configuration big = make_configuration(corpus::rank11_matrix());
    std::uniform_int_distribution<long> e(-4, 8);
    for (int iter = 0; iter < 10; ++iter) {
        Parameter beta{Rat(e(rng)), Rat(e(rng)), Rat(e(rng))};
        auto r = rank_simplex(big, beta);
        CHECK(r.rank >= r.volume);
        CHECK(r.exceptional == (r.rank > r.volume));
    }
}
