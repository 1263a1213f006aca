// Compares the serial reference paths of the data-parallel kernels with their
// OpenMP counterparts: the candidate-cell scan, per-face E_tau assembly, and
// the exceptional-parameter sweep.

#include <chrono>
#include <iomanip>
#include <iostream>
#include <random>

#include "gkz/formulas.hpp"
#include "gkz/parallel.hpp"
#include "gkz/params.hpp"

using namespace gkz;

namespace {

IntMat rank11() {
    long rows[3][9] = {{1, 1, 1, 1, 1, 1, 1, 1, 1},
                       {0, 1, 2, 3, 0, 2, 0, 1, 0},
                       {0, 0, 0, 0, 1, 1, 2, 2, 3}};
    IntMat m(3, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 9; ++j) m(i, j) = rows[i][j];
    return m;
}

Configuration random_wide_config(std::mt19937& rng, int d, int n) {
    std::uniform_int_distribution<int> entry(0, 6);
    while (true) {
        IntMat m(d, n);
        for (int j = 0; j < n; ++j) {
            m(0, j) = 1;
            for (int i = 1; i < d; ++i) m(i, j) = entry(rng);
        }
        if (rank(m) == d) return make_configuration(m);
    }
}

template <typename F>
double time_ms(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& name, double serial_ms, double parallel_ms) {
    std::cout << std::left << std::setw(34) << name << std::right << std::setw(12) << std::fixed
              << std::setprecision(1) << serial_ms << std::setw(12) << parallel_ms
              << std::setw(10) << std::setprecision(2) << (serial_ms / parallel_ms) << "\n";
}

}  // namespace

int main() {
    std::cout << "workers available: " << max_threads() << "\n\n";
    std::cout << std::left << std::setw(34) << "kernel" << std::right << std::setw(12)
              << "serial ms" << std::setw(12) << "openmp ms" << std::setw(10) << "speedup"
              << "\n";

    // candidate-cell scan over many weights
    {
        std::mt19937 rng(1);
        Configuration cfg = random_wide_config(rng, 3, 11);
        std::vector<RatVec> weights;
        std::uniform_int_distribution<int> e(-50, 50);
        for (int k = 0; k < 60; ++k) {
            RatVec w(std::size_t(cfg.npoints()));
            for (auto& q : w) q = e(rng);
            weights.push_back(w);
        }
        auto run = [&](bool parallel) {
            TriangulationOptions opt;
            opt.parallel = parallel;
            std::size_t cells = 0;
            for (const RatVec& w : weights) {
                if (!is_generic_weight(cfg, w)) continue;
                cells += regular_triangulation(cfg, w, opt).maximal_cells.size();
            }
            return cells;
        };
        std::size_t check_serial = 0, check_parallel = 0;
        double serial = time_ms([&] { check_serial = run(false); });
        double parallel = time_ms([&] { check_parallel = run(true); });
        if (check_serial != check_parallel) {
            std::cerr << "cell scan results diverged\n";
            return 1;
        }
        row("triangulation scan (3x11, 60 w)", serial, parallel);
    }

    // per-face E_tau assembly
    {
        Configuration cfg = make_configuration(rank11());
        Parameter beta{Rat(1), Rat(1), Rat(1)};
        auto run = [&](int threads) {
            set_max_threads(threads);
            std::size_t classes = 0;
            for (int k = 0; k < 12; ++k)
                for (const auto& [face, cls] : fingerprint(cfg, beta).entries)
                    classes += cls.size();
            set_max_threads(0);
            return classes;
        };
        std::size_t check_serial = 0, check_parallel = 0;
        double serial = time_ms([&] { check_serial = run(1); });
        double parallel = time_ms([&] { check_parallel = run(0); });
        if (check_serial != check_parallel) {
            std::cerr << "fingerprint results diverged\n";
            return 1;
        }
        row("fingerprint (rank-11, 12 reps)", serial, parallel);
    }

    // exceptional sweep
    {
        Configuration cfg = make_configuration(rank11());
        auto run = [&](int threads) {
            set_max_threads(threads);
            auto hits = exceptional_sweep(cfg, 0, 4);
            set_max_threads(0);
            return hits.size();
        };
        std::size_t check_serial = 0, check_parallel = 0;
        double serial = time_ms([&] { check_serial = run(1); });
        double parallel = time_ms([&] { check_parallel = run(0); });
        if (check_serial != check_parallel) {
            std::cerr << "sweep results diverged\n";
            return 1;
        }
        row("exceptional sweep (degrees 0..4)", serial, parallel);
    }

    return 0;
}
