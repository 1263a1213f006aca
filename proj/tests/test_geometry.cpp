#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "gkz/errors.hpp"
#include "gkz/geometry.hpp"

using namespace gkz;
using corpus::mat;
using corpus::rvec;

TEST_CASE("make_configuration solves the homogeneity covector") {
    SUBCASE("all-ones first row") {
        Configuration cfg = make_configuration(corpus::small_example_matrix());
        CHECK(cfg.homogeneity() == rvec({1, 0}));
    }
    SUBCASE("rank-11 matrix") {
        Configuration cfg = make_configuration(corpus::rank11_matrix());
        CHECK(cfg.homogeneity() == rvec({1, 0, 0}));
    }
    SUBCASE("no hyperplane exists") {
        CHECK_THROWS_AS((void)make_configuration(mat({{1, 2}})), NotHomogeneous);
    }
    SUBCASE("rank deficient") {
        CHECK_THROWS_AS((void)make_configuration(mat({{1, 1}, {2, 2}})), RankDeficient);
    }
}

TEST_CASE("regular triangulations of the small example") {
    Configuration cfg = make_configuration(corpus::small_example_matrix());

    SUBCASE("w = (0,1,0): one cell, interior point is a member") {
        Triangulation t = regular_triangulation(cfg, corpus::small_w());
        REQUIRE(t.maximal_cells.size() == 1);
        CHECK(t.maximal_cells[0].vertices == std::vector<int>{0, 2});
        CHECK(t.maximal_cells[0].members == std::vector<int>{0, 1, 2});
        CHECK(t.face_poset.size() == 4);  // {}, {1}, {3}, cell
    }
    SUBCASE("w = (0,-1,0): two cells") {
        Triangulation t = regular_triangulation(cfg, corpus::small_w2());
        REQUIRE(t.maximal_cells.size() == 2);
        CHECK(t.maximal_cells[0].vertices == std::vector<int>{0, 1});
        CHECK(t.maximal_cells[1].vertices == std::vector<int>{1, 2});
        CHECK(t.face_poset.size() == 6);  // {}, three vertices, two cells
    }
    SUBCASE("zero weight is rejected, perturbation refines it") {
        CHECK_THROWS_AS((void)regular_triangulation(cfg, rvec({0, 0, 0})), NonGenericWeight);
        TriangulationOptions opt;
        opt.perturb = true;
        Triangulation t = regular_triangulation(cfg, rvec({0, 0, 0}), opt);
        CHECK(!t.maximal_cells.empty());
        std::vector<bool> covered(3, false);
        for (const Face& c : t.maximal_cells)
            for (int j : c.members) covered[std::size_t(j)] = true;
        CHECK(std::all_of(covered.begin(), covered.end(), [](bool b) { return b; }));
    }
    SUBCASE("square case: single forced cell") {
        Configuration square = make_configuration(mat({{1, 0}, {0, 1}}));
        Triangulation t = regular_triangulation(square, rvec({3, -7}));
        REQUIRE(t.maximal_cells.size() == 1);
        CHECK(t.maximal_cells[0].vertices == std::vector<int>{0, 1});
    }
}

TEST_CASE("weight genericity") {
    Configuration cfg = make_configuration(corpus::small_example_matrix());
    CHECK(!is_generic_weight(cfg, rvec({0, 0, 0})));
    CHECK(is_generic_weight(cfg, corpus::small_w()));
    Configuration square = make_configuration(mat({{1, 0}, {0, 1}}));
    CHECK(is_generic_weight(square, rvec({0, 0})));
}

TEST_CASE("cone faces") {
    SUBCASE("planar cone has two extreme rays") {
        Configuration cfg = make_configuration(corpus::small_example_matrix());
        auto faces = cone_faces(cfg);
        REQUIRE(faces.size() == 4);
        CHECK(faces[0].members.empty());
        CHECK(faces[1].members == std::vector<int>{0});
        CHECK(faces[2].members == std::vector<int>{2});
        CHECK(faces[3].members == std::vector<int>{0, 1, 2});
        CHECK(faces[3].vertices == std::vector<int>{0, 2});
    }
    SUBCASE("rank-11 face lattice") {
        Configuration cfg = make_configuration(corpus::rank11_matrix());
        auto faces = cone_faces(cfg);
        REQUIRE(faces.size() == 8);
        std::vector<int> dims;
        for (const Face& f : faces) dims.push_back(f.span_dim);
        CHECK(dims == std::vector<int>{0, 1, 1, 1, 2, 2, 2, 3});
        CHECK(faces[1].members == std::vector<int>{0});
        CHECK(faces[2].members == std::vector<int>{3});
        CHECK(faces[3].members == std::vector<int>{8});
        CHECK(faces[4].members == std::vector<int>{0, 1, 2, 3});
        CHECK(faces[5].members == std::vector<int>{0, 4, 6, 8});
        CHECK(faces[6].members == std::vector<int>{3, 5, 7, 8});
        CHECK(faces[4].vertices == std::vector<int>{0, 3});
        // closure under intersection
        for (const Face& a : faces)
            for (const Face& b : faces) {
                std::vector<int> inter;
                std::set_intersection(a.members.begin(), a.members.end(), b.members.begin(),
                                      b.members.end(), std::back_inserter(inter));
                bool found = false;
                for (const Face& c : faces)
                    if (c.members == inter) found = true;
                CHECK(found);
            }
    }
    SUBCASE("simplicial cone has 2^d faces") {
        Configuration cfg = make_configuration(mat({{1, 0, 0}, {0, 1, 0}, {1, 1, 1}}));
        CHECK(cone_faces(cfg).size() == 8);
    }
}

TEST_CASE("normalized volume") {
    Configuration small = make_configuration(corpus::small_example_matrix());
    Configuration big = make_configuration(corpus::rank11_matrix());

    SUBCASE("segment with interior point has lattice length two") {
        Triangulation t = regular_triangulation(small, corpus::small_w());
        CHECK(normalized_volume(small, t.maximal_cells[0]) == 2);
        for (const Face& f : t.face_poset)
            if (f.span_dim == 1) CHECK(normalized_volume(small, f) == 1);
        CHECK(normalized_volume(small, t.face_poset[0]) == 1);  // empty face
    }
    SUBCASE("rank-11 cone face volumes") {
        auto faces = cone_faces(big);
        std::vector<Int> vols;
        for (const Face& f : faces) vols.push_back(normalized_volume(big, f));
        std::sort(vols.begin(), vols.end());
        CHECK(vols == std::vector<Int>{1, 1, 1, 1, 3, 3, 3, 9});
    }
}

TEST_CASE("facets inside a triangulation") {
    Configuration cfg = make_configuration(corpus::small_example_matrix());
    Triangulation t = regular_triangulation(cfg, corpus::small_w());
    const Face& cell = t.maximal_cells[0];

    auto fs = facets(cell, t);
    REQUIRE(fs.size() == 2);
    CHECK(fs[0].vertices == std::vector<int>{0});
    CHECK(fs[1].vertices == std::vector<int>{2});

    auto vertex_facets = facets(fs[0], t);
    REQUIRE(vertex_facets.size() == 1);
    CHECK(vertex_facets[0].empty());

    CHECK(facets(t.face_poset[0], t).empty());

    SUBCASE("rank-11 single cell has its three 2-dimensional facets") {
        Configuration big = make_configuration(corpus::rank11_matrix());
        RatVec w(std::size_t(big.npoints()), Rat(1));
        w[0] = w[3] = w[8] = 0;
        TriangulationOptions opt;
        opt.perturb = !is_generic_weight(big, w);
        Triangulation tb = regular_triangulation(big, w, opt);
        REQUIRE(tb.maximal_cells.size() == 1);
        CHECK(tb.maximal_cells[0].vertices == std::vector<int>{0, 3, 8});
        CHECK(tb.maximal_cells[0].members.size() == 9);
        auto cf = facets(tb.maximal_cells[0], tb);
        REQUIRE(cf.size() == 3);
        CHECK(cf[0].members == std::vector<int>{0, 1, 2, 3});
        CHECK(cf[1].members == std::vector<int>{0, 4, 6, 8});
        CHECK(cf[2].members == std::vector<int>{3, 5, 7, 8});
    }
}

TEST_CASE("triangulation invariants on random configurations") {
    std::mt19937 rng(123456);
    int done = 0;
    while (done < 12) {
        int d = 2 + int(rng() % 2);
        int n = d + 1 + int(rng() % 3);
        Configuration cfg = corpus::random_config(rng, d, n);
        RatVec w1, w2;
        try {
            w1 = corpus::random_generic_weight(rng, cfg);
            w2 = corpus::random_generic_weight(rng, cfg);
        } catch (const std::runtime_error&) {
            continue;
        }
        Triangulation t1 = regular_triangulation(cfg, w1);
        Triangulation t2 = regular_triangulation(cfg, w2);

        // every point belongs to some cell
        for (const Triangulation& t : {t1, t2}) {
            std::vector<bool> covered(std::size_t(cfg.npoints()), false);
            for (const Face& c : t.maximal_cells)
                for (int j : c.members) covered[std::size_t(j)] = true;
            for (bool b : covered) CHECK(b);
        }

        // lattice volume of conv(A) relative to ZA is triangulation-independent
        auto za_volume = [&](const Triangulation& t) {
            Int total = 0;
            for (const Face& c : t.maximal_cells) {
                auto idx = lattice_index(vertex_lattice(cfg, c), cfg.za());
                REQUIRE(idx.has_value());
                total += *idx;
            }
            return total;
        };
        CHECK(za_volume(t1) == za_volume(t2));

        // members of a subface agree with geometric restriction
        for (const Face& tau : t1.face_poset)
            for (const Face& sigma : t1.face_poset) {
                if (sigma.empty()) continue;
                if (!std::includes(tau.vertices.begin(), tau.vertices.end(),
                                   sigma.vertices.begin(), sigma.vertices.end()))
                    continue;
                std::vector<int> expect;
                for (int j : tau.members)
                    if (simplex_contains(cfg, sigma.vertices, j)) expect.push_back(j);
                CHECK(sigma.members == expect);
                CHECK(rank(to_rat(IntMat::from_columns([&] {
                          std::vector<IntVec> cols;
                          for (int v : sigma.vertices) cols.push_back(cfg.column(v));
                          return cols;
                      }()))) == int(sigma.vertices.size()));
            }
        ++done;
    }
}
