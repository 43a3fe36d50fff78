#ifndef UNPROJ_PARALLEL_HPP
#define UNPROJ_PARALLEL_HPP

namespace unproj {

/// Worker count for the OpenMP kernels: UNPROJ_THREADS if set and positive,
/// otherwise the OpenMP default.
int worker_count();

/// Overrides the worker count for the rest of the process (0 restores the
/// default). Used by the benchmark and the tests.
void set_worker_count(int n);

}  // namespace unproj

#endif  // UNPROJ_PARALLEL_HPP
