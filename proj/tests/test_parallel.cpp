#include <atomic>
#include <random>
#include <stdexcept>

#include "corpus.hpp"
#include "doctest.h"
#include "gkz/formulas.hpp"
#include "gkz/parallel.hpp"
#include "gkz/params.hpp"

using namespace gkz;
using corpus::rvec;

namespace {

struct ThreadGuard {
    ~ThreadGuard() { set_max_threads(0); }
};

}  // namespace

TEST_CASE("parallel_for covers the range and propagates the first error") {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, [&](long i) { hits[std::size_t(i)]++; });
    for (auto& h : hits) CHECK(h.load() == 1);

    CHECK_THROWS_WITH_AS(parallel_for(50,
                                      [](long i) {
                                          if (i >= 10) throw std::runtime_error("boom");
                                      }),
                         "boom", std::runtime_error);
}

TEST_CASE("triangulation scan: worker count does not change the result") {
    ThreadGuard guard;
    std::mt19937 rng(1212);
    for (int iter = 0; iter < 6; ++iter) {
        Configuration cfg = corpus::random_config(rng, 3, 6);
        RatVec w;
        try {
            w = corpus::random_generic_weight(rng, cfg);
        } catch (const std::runtime_error&) {
            continue;
        }
        TriangulationOptions serial_opt;
        serial_opt.parallel = false;
        Triangulation serial = regular_triangulation(cfg, w, serial_opt);

        set_max_threads(4);
        Triangulation parallel = regular_triangulation(cfg, w);
        set_max_threads(0);

        REQUIRE(serial.maximal_cells.size() == parallel.maximal_cells.size());
        for (std::size_t i = 0; i < serial.maximal_cells.size(); ++i) {
            CHECK(serial.maximal_cells[i].vertices == parallel.maximal_cells[i].vertices);
            CHECK(serial.maximal_cells[i].members == parallel.maximal_cells[i].members);
        }
    }
}

TEST_CASE("fingerprint and sweep are scheduling-independent") {
    ThreadGuard guard;
    Configuration big = make_configuration(corpus::rank11_matrix());
    Parameter beta0 = rvec({1, 1, 1});

    set_max_threads(1);
    Fingerprint serial_fp = fingerprint(big, beta0);
    auto serial_sweep = exceptional_sweep(big, 0, 2);

    set_max_threads(4);
    Fingerprint parallel_fp = fingerprint(big, beta0);
    auto parallel_sweep = exceptional_sweep(big, 0, 2);
    set_max_threads(0);

    CHECK(fingerprint_equal(serial_fp, parallel_fp));
    REQUIRE(serial_fp.entries.size() == parallel_fp.entries.size());
    for (std::size_t i = 0; i < serial_fp.entries.size(); ++i)
        CHECK(serial_fp.entries[i].first.members == parallel_fp.entries[i].first.members);
    CHECK(serial_sweep == parallel_sweep);
}
