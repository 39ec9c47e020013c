// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The gprvmd Authors

#pragma once

namespace gpr {

/// Execution policy for the batch kernels.
///
/// jobs == 1 selects the serial reference path, which contains no OpenMP
/// constructs at all. jobs == 0 lets the OpenMP runtime pick the team size.
/// Every kernel produces bit-identical output for every value of jobs.
struct Exec {
    int jobs = 0;

    static Exec serial() { return Exec{1}; }
    bool is_serial() const { return jobs == 1; }
};

/// Team size actually used for a given policy (1 when built without OpenMP).
int resolve_jobs(Exec exec);

}  // namespace gpr
