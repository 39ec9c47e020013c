// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#include "gpr/exec.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gpr {

int resolve_jobs(Exec exec) {
    if (exec.jobs >= 1) return exec.jobs;
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace gpr
