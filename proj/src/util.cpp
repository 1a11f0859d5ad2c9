#include "qfa/util.hpp"

#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qfa {

std::string format_g12(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {
int g_threads = 0;
}

void set_worker_threads(int n) {
    g_threads = n < 0 ? 0 : n;
#ifdef _OPENMP
    if (g_threads > 0)
        omp_set_num_threads(g_threads);
    else
        omp_set_num_threads(omp_get_num_procs());
#endif
}

int worker_threads() {
#ifdef _OPENMP
    return g_threads > 0 ? g_threads : omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace qfa
