#include <random>

#include "corpus.hpp"
#include "doctest.h"
#include "gkz/errors.hpp"
#include "gkz/lattice.hpp"

using namespace gkz;
using corpus::ivec;
using corpus::mat;
using corpus::rvec;

namespace {

IntMat random_int_matrix(std::mt19937& rng, int rows, int cols, int span) {
    std::uniform_int_distribution<int> e(-span, span);
    IntMat m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = e(rng);
    return m;
}

bool divisibility_chain(const IntMat& s) {
    Int prev = -1;
    for (int i = 0; i < std::min(s.rows(), s.cols()); ++i) {
        Int di = s(i, i);
        if (di < 0) return false;
        if (prev > 0 && di != 0 && di % prev != 0) return false;
        if (prev == 0 && di != 0) return false;
        prev = di;
    }
    for (int i = 0; i < s.rows(); ++i)
        for (int j = 0; j < s.cols(); ++j)
            if (i != j && s(i, j) != 0) return false;
    return true;
}

}  // namespace

TEST_CASE("smith normal form on the pinned small cases") {
    SUBCASE("identity") {
        SmithForm f = smith_normal_form(IntMat::identity(2));
        CHECK(f.s == IntMat::identity(2));
    }
    SUBCASE("upper triangular with determinant two") {
        IntMat m = mat({{1, 1}, {0, 2}});
        SmithForm f = smith_normal_form(m);
        CHECK(f.s(0, 0) == 1);
        CHECK(f.s(1, 1) == 2);
        CHECK(mul(mul(f.u, m), f.v) == f.s);

        // brute-force oracle: among all products U*m*V with small unimodular
        // multipliers, diag(1,2) is the only diagonal divisibility chain
        std::vector<IntMat> unimodular;
        for (int a = -2; a <= 2; ++a)
            for (int b = -2; b <= 2; ++b)
                for (int c = -2; c <= 2; ++c)
                    for (int d = -2; d <= 2; ++d) {
                        IntMat u = mat({{a, b}, {c, d}});
                        Int det = Int(a) * d - Int(b) * c;
                        if (det == 1 || det == -1) unimodular.push_back(u);
                    }
        bool found = false;
        for (const IntMat& u : unimodular)
            for (const IntMat& v : unimodular) {
                IntMat p = mul(mul(u, m), v);
                if (divisibility_chain(p)) {
                    CHECK(p(0, 0) == 1);
                    CHECK(p(1, 1) == 2);
                    found = true;
                }
            }
        CHECK(found);
    }
    SUBCASE("zero matrix") {
        IntMat z(2, 3);
        SmithForm f = smith_normal_form(z);
        CHECK(f.s == z);
    }
}

TEST_CASE("smith normal form round trip on random matrices") {
    std::mt19937 rng(20240601);
    for (int iter = 0; iter < 40; ++iter) {
        int r = 1 + int(rng() % 4), c = 1 + int(rng() % 4);
        IntMat m = random_int_matrix(rng, r, c, 9);
        SmithForm f = smith_normal_form(m);
        CHECK(mul(mul(f.u, m), f.v) == f.s);
        CHECK(divisibility_chain(f.s));
        Int du = determinant(f.u), dv = determinant(f.v);
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
    }
}

TEST_CASE("lattice_index") {
    Lattice z2 = Lattice::from_generators(2, mat({{1, 0}, {0, 1}}));
    Lattice sub = Lattice::from_generators(2, mat({{1, 1}, {0, 2}}));

    SUBCASE("index two sublattice of the plane") {
        auto idx = lattice_index(sub, z2);
        REQUIRE(idx.has_value());
        CHECK(*idx == 2);
    }
    SUBCASE("sub equal to super") {
        auto idx = lattice_index(sub, sub);
        REQUIRE(idx.has_value());
        CHECK(*idx == 1);
    }
    SUBCASE("rank drop is infinite") {
        Lattice line = Lattice::from_generators(2, mat({{1}, {0}}));
        CHECK(!lattice_index(line, z2).has_value());
    }
    SUBCASE("not a sublattice") {
        Lattice half = Lattice::from_generators(2, mat({{1, 0}, {0, 2}}));
        CHECK_THROWS_AS((void)lattice_index(z2, half), NotSublattice);
    }
    SUBCASE("multiplicative over nested lattices") {
        std::mt19937 rng(7);
        for (int iter = 0; iter < 25; ++iter) {
            IntMat sup = random_int_matrix(rng, 3, 3, 4);
            if (determinant(sup) == 0) continue;
            IntMat m1 = random_int_matrix(rng, 3, 3, 3);
            IntMat m2 = random_int_matrix(rng, 3, 3, 3);
            if (determinant(m1) == 0 || determinant(m2) == 0) continue;
            Lattice lsup = Lattice::from_generators(3, sup);
            Lattice lmid = Lattice::from_generators(3, mul(sup, m1));
            Lattice lsub = Lattice::from_generators(3, mul(mul(sup, m1), m2));
            auto a = lattice_index(lsub, lmid);
            auto b = lattice_index(lmid, lsup);
            auto c = lattice_index(lsub, lsup);
            REQUIRE(a.has_value());
            REQUIRE(b.has_value());
            REQUIRE(c.has_value());
            CHECK(*a * *b == *c);
        }
    }
}

TEST_CASE("lattice membership") {
    Lattice l = Lattice::from_generators(2, mat({{1, 1}, {0, 2}}));
    CHECK(member(rvec({0, 0}), l));
    CHECK(!member(rvec({1, 1}), l));  // forces the coefficient 1/2
    CHECK(member(rvec({2, 2}), l));   // (1,0) + (1,2)
    CHECK(!member(corpus::rvec_s({"1/2", "0"}), l));

    SUBCASE("agreement with brute force over bounded coefficients") {
        std::mt19937 rng(99);
        std::uniform_int_distribution<int> e(-6, 6);
        for (int iter = 0; iter < 30; ++iter) {
            IntMat g = random_int_matrix(rng, 3, 2, 3);
            Lattice lat = Lattice::from_generators(3, g);
            if (lat.lattice_rank() != 2) continue;
            RatVec v{Rat(e(rng)), Rat(e(rng)), Rat(e(rng))};
            bool brute = false;
            for (int a = -40; a <= 40 && !brute; ++a)
                for (int b = -40; b <= 40 && !brute; ++b) {
                    bool ok = true;
                    for (int i = 0; i < 3; ++i)
                        if (Rat(lat.basis()(i, 0) * a + lat.basis()(i, 1) * b) != v[std::size_t(i)])
                            ok = false;
                    brute = ok;
                }
            CHECK(member(v, lat) == brute);
        }
    }
}

TEST_CASE("zero lattice is a first-class value") {
    Lattice z = Lattice::zero(3);
    CHECK(z.lattice_rank() == 0);
    CHECK(member(rvec({0, 0, 0}), z));
    CHECK(!member(rvec({1, 0, 0}), z));
    auto idx = lattice_index(z, z);
    REQUIRE(idx.has_value());
    CHECK(*idx == 1);
}

TEST_CASE("quotient group structure") {
    Lattice z2 = Lattice::from_generators(2, mat({{1, 0}, {0, 1}}));
    Lattice sub = Lattice::from_generators(2, mat({{1, 1}, {0, 2}}));
    QuotientGroup q(z2, sub);
    CHECK(q.finite());
    CHECK(q.order() == 2);
    auto keys = q.enumerate_keys();
    REQUIRE(keys.size() == 2);

    // representative/project round trips and class arithmetic
    for (const auto& k : keys) {
        CHECK(q.project(q.representative(k)) == k);
        CHECK(q.add(k, q.zero_key()) == k);
        CHECK(q.add(k, q.negate(k)) == q.zero_key());
    }
    // the nonzero class has order two
    for (const auto& k : keys)
        if (k != q.zero_key()) CHECK(q.element_order(k) == 2);

    SUBCASE("infinite quotient keeps free rank") {
        Lattice line = Lattice::from_generators(2, mat({{2}, {0}}));
        QuotientGroup qi(z2, line);
        CHECK(!qi.finite());
        int zeros = 0;
        for (const Int& f : qi.invariant_factors())
            if (f == 0) ++zeros;
        CHECK(zeros == 1);
    }
}
