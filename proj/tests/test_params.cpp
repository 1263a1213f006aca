#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "gkz/errors.hpp"
#include "gkz/params.hpp"

using namespace gkz;
using corpus::mat;
using corpus::rvec;

namespace {

EClass zero_class(const Configuration& cfg, const Face& tau) {
    return EClass{tau, RatVec(std::size_t(cfg.dim()), Rat(0)), member_lattice(cfg, tau)};
}

const Face& face_with_members(const std::vector<Face>& faces, const std::vector<int>& members) {
    for (const Face& f : faces)
        if (f.members == members) return f;
    throw std::runtime_error("face not found");
}

}  // namespace

TEST_CASE("E_tau on the small example is {0} for every face of either triangulation") {
    Configuration cfg = make_configuration(corpus::small_example_matrix());
    Parameter beta = rvec({1, 1});
    for (const RatVec& w : {corpus::small_w(), corpus::small_w2()}) {
        Triangulation t = regular_triangulation(cfg, w);
        for (const Face& tau : t.face_poset) {
            auto classes = e_tau(cfg, tau, beta);
            REQUIRE(classes.size() == 1);
            CHECK(eclass_equal(classes[0], zero_class(cfg, tau)));
        }
    }
}

TEST_CASE("E_tau edge faces") {
    Configuration cfg = make_configuration(corpus::small_example_matrix());
    Triangulation t = regular_triangulation(cfg, corpus::small_w());

    SUBCASE("full-span face carries exactly the class of beta") {
        const Face& cell = t.maximal_cells[0];
        Parameter beta = corpus::rvec_s({"7/3", "-1/5"});
        auto classes = e_tau(cfg, cell, beta);
        REQUIRE(classes.size() == 1);
        CHECK(eclass_equal(classes[0], EClass{cell, beta, member_lattice(cfg, cell)}));
    }
    SUBCASE("empty face tests semigroup membership") {
        const Face& empty = t.face_poset[0];
        REQUIRE(empty.empty());
        CHECK(e_tau(cfg, empty, rvec({1, 1})).size() == 1);   // a_2 in NA
        CHECK(e_tau(cfg, empty, rvec({1, 5})).empty());       // outside the cone
        Configuration big = make_configuration(corpus::rank11_matrix());
        Face empty_big;
        empty_big.kind = Face::Kind::Cone;
        CHECK(e_tau(big, empty_big, rvec({1, 1, 1})).empty());  // beta0 not in NA
    }
}

TEST_CASE("natural_map") {
    SUBCASE("identity on the same face") {
        Configuration cfg = make_configuration(corpus::small_example_matrix());
        Triangulation t = regular_triangulation(cfg, corpus::small_w());
        const Face& cell = t.maximal_cells[0];
        auto classes = e_tau(cfg, cell, rvec({1, 1}));
        REQUIRE(classes.size() == 1);
        CHECK(eclass_equal(natural_map(cfg, classes[0], cell), classes[0]));
    }
    SUBCASE("two-to-one map onto the full cone") {
        Configuration cfg = make_configuration(mat({{1, 1, 1}, {0, 2, 3}}));
        Parameter beta = rvec({1, 0});  // the first column
        Triangulation t = regular_triangulation(cfg, rvec({0, -1, 0}));
        const Face& cell = face_with_members(t.face_poset, {0, 1});
        auto full = cone_faces(cfg).back();
        REQUIRE(full.members == std::vector<int>{0, 1, 2});
        auto e_cell = e_tau(cfg, cell, beta);
        auto e_full = e_tau(cfg, full, beta);
        REQUIRE(e_full.size() == 1);
        CHECK(e_cell.size() == 2);  // index [Z^2 : Z{a1,a2}] = 2
        for (const EClass& c : e_cell)
            CHECK(eclass_equal(natural_map(cfg, c, full), e_full[0]));
    }
    SUBCASE("index-one bijection") {
        Configuration cfg = make_configuration(corpus::small_example_matrix());
        Triangulation t = regular_triangulation(cfg, corpus::small_w());
        const Face& cell = t.maximal_cells[0];  // members {0,1,2}, Z(A cap tau) = Z^2
        auto full = cone_faces(cfg).back();
        Parameter beta = rvec({1, 1});
        CHECK(e_tau(cfg, cell, beta).size() == e_tau(cfg, full, beta).size());
    }
    SUBCASE("span mismatch is rejected") {
        Configuration cfg = make_configuration(corpus::small_example_matrix());
        auto faces = cone_faces(cfg);
        const Face& ray = face_with_members(faces, {0});
        const Face& other_ray = face_with_members(faces, {2});
        auto classes = e_tau(cfg, other_ray, rvec({1, 2}));
        REQUIRE(!classes.empty());
        CHECK_THROWS_AS((void)natural_map(cfg, classes[0], ray), SpanMismatch);
    }
}

TEST_CASE("minface") {
    Configuration big = make_configuration(corpus::rank11_matrix());
    SUBCASE("rank-11 parameter beta0") {
        auto faces = minface(big, rvec({1, 1, 1}));
        REQUIRE(faces.size() == 3);
        CHECK(faces[0].members == std::vector<int>{0});
        CHECK(faces[1].members == std::vector<int>{3});
        CHECK(faces[2].members == std::vector<int>{8});
    }
    SUBCASE("zero parameter sits at the empty face") {
        auto faces = minface(big, rvec({0, 0, 0}));
        REQUIRE(faces.size() == 1);
        CHECK(faces[0].empty());
    }
    SUBCASE("a column sits at the empty face") {
        auto faces = minface(big, rvec({1, 0, 0}));
        REQUIRE(faces.size() == 1);
        CHECK(faces[0].empty());
    }
}

TEST_CASE("fingerprints") {
    Configuration big = make_configuration(corpus::rank11_matrix());
    Parameter beta0 = rvec({1, 1, 1});
    Parameter a1 = rvec({1, 0, 0});

    SUBCASE("equal parameters, equal fingerprints") {
        CHECK(fingerprint_equal(fingerprint(big, beta0), fingerprint(big, beta0)));
    }
    SUBCASE("beta0 and a1 differ exactly at the empty face") {
        auto diff = fingerprint_diff(fingerprint(big, beta0), fingerprint(big, a1));
        REQUIRE(diff.size() == 1);
        CHECK(diff[0].empty());
    }
    SUBCASE("same minface with matching classes gives equal fingerprints") {
        Parameter a1_doubled = rvec({2, 0, 0});
        CHECK(minface(big, a1) == minface(big, a1_doubled));
        CHECK(fingerprint_equal(fingerprint(big, a1), fingerprint(big, a1_doubled)));
    }
}

TEST_CASE("semigroup membership") {
    Configuration small = make_configuration(corpus::small_example_matrix());
    Configuration big = make_configuration(corpus::rank11_matrix());
    CHECK(semigroup_member(big, rvec({0, 0, 0})));
    CHECK(!semigroup_member(big, rvec({1, 1, 1})));  // degree 1, no such column
    CHECK(semigroup_member(small, rvec({2, 2})));    // a_1 + a_3
    CHECK(!semigroup_member(small, corpus::rvec_s({"1/2", "0"})));
    CHECK(!semigroup_member(small, rvec({-1, 0})));
}

TEST_CASE("E_tau properties on random configurations") {
    std::mt19937 rng(777);
    int index_identity_checked = 0;
    int instances = 0;
    while (index_identity_checked < 20 && instances < 60) {
        ++instances;
        int d = 2 + int(rng() % 2);
        int n = d + 1 + int(rng() % 2);
        Configuration cfg = corpus::random_config(rng, d, n);
        // beta in NA keeps every E_tau nonempty
        IntVec u(std::size_t(n), Int(0));
        for (int j = 0; j < n; ++j) u[std::size_t(j)] = int(rng() % 3);
        Parameter beta = to_rat(mul(cfg.matrix(), u));

        RatVec w;
        try {
            w = corpus::random_generic_weight(rng, cfg);
        } catch (const std::runtime_error&) {
            continue;
        }
        Triangulation t = regular_triangulation(cfg, w);
        auto faces = cone_faces(cfg);

        for (const Face& tau : faces) {
            auto e_cone = e_tau(cfg, tau, beta);
            // budget stability
            CHECK(e_cone.size() == e_tau(cfg, tau, beta, 4 * kDefaultBudget).size());

            // matching-span triangulation face: the index identity of the E sets
            Lattice cone_mem = member_lattice(cfg, tau);
            for (const Face& tp : t.face_poset) {
                if (tp.span_dim != tau.span_dim) continue;
                Lattice tri_mem = member_lattice(cfg, tp);
                bool same_span = true;
                for (int k = 0; k < tri_mem.lattice_rank(); ++k)
                    if (!cone_mem.span_contains(to_rat(tri_mem.basis_vector(k)))) same_span = false;
                if (!same_span) continue;
                auto e_tri = e_tau(cfg, tp, beta);
                auto idx = lattice_index(tri_mem, cone_mem);
                REQUIRE(idx.has_value());
                if (!e_tri.empty() || !e_cone.empty()) {
                    CHECK(Int(e_tri.size()) == Int(e_cone.size()) * *idx);
                    ++index_identity_checked;
                }
                // monotonicity: natural map sends E_tri into E_cone
                for (const EClass& c : e_tri) {
                    EClass mapped = natural_map(cfg, c, tau);
                    bool found = false;
                    for (const EClass& ec : e_cone) found = found || eclass_equal(mapped, ec);
                    CHECK(found);
                }
            }
        }
    }
    CHECK(index_identity_checked >= 20);
}
