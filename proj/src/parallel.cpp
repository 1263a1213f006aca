#include "gkz/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gkz {

namespace {
std::atomic<int> g_max_threads{0};  // 0 = runtime default
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() {
    int n = g_max_threads.load();
#ifdef _OPENMP
    if (n == 0) n = omp_get_max_threads();
#else
    if (n == 0) n = 1;
#endif
    return n;
}

void serial_for(long n, const std::function<void(long)>& fn) {
    for (long i = 0; i < n; ++i) fn(i);
}

void parallel_for(long n, const std::function<void(long)>& fn) {
    int threads = max_threads();
    if (threads <= 1 || n < 2) {
        serial_for(n, fn);
        return;
    }
#ifdef _OPENMP
    std::exception_ptr err;
    long err_index = -1;
    std::mutex err_mutex;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) {
        try {
            fn(i);
        } catch (...) {
            std::lock_guard<std::mutex> lock(err_mutex);
            if (err_index < 0 || i < err_index) {
                err_index = i;
                err = std::current_exception();
            }
        }
    }
    if (err) std::rethrow_exception(err);
#else
    serial_for(n, fn);
#endif
}

}  // namespace gkz
