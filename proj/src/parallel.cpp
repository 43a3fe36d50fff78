#include "unproj/parallel.hpp"

#include <atomic>
#include <cstdlib>

#include <omp.h>

namespace unproj {

namespace {
std::atomic<int> override_count{0};
}

int worker_count() {
  if (int n = override_count.load(); n > 0) return n;
  if (const char* env = std::getenv("UNPROJ_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return omp_get_max_threads();
}

void set_worker_count(int n) { override_count.store(n > 0 ? n : 0); }

}  // namespace unproj
