#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace sigmanet {

struct GradcheckOptions {
    std::size_t seeds = 100;
    double epsilon = 1e-5;
    double rel_tol = 1e-4;
    double abs_floor = 1e-8;  // entries this close to each other pass regardless of scale
    bool inject_fault = false;  // scales one analytic entry; used to prove the checker can fail
};

struct GradcheckReport {
    std::size_t checked = 0;
    std::size_t failed = 0;
    double max_rel_error = 0.0;
    std::string first_failure;

    bool ok() const noexcept { return failed == 0; }
};

/// Compares every analytic RBF network and MLP (1, 2 and 4 hidden layers)
/// gradient entry with central finite differences on random small networks.
GradcheckReport run_gradcheck(const GradcheckOptions& options = {});

}  // namespace sigmanet
