#pragma once

#include <functional>
#include <limits>
#include <vector>

namespace chainctl {

struct NelderMeadOptions {
    double simplex_scale = 0.5;  // axis step from x0 for the initial simplex
    int max_evaluations = 2000;
    double target_value = -std::numeric_limits<double>::infinity();
    // called once per iteration with the current best value; the best value
    // never increases between calls
    std::function<void(int iteration, double best)> on_iteration;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = std::numeric_limits<double>::infinity();
    int evaluations = 0;
};

// Downhill simplex minimization (reflection 1, expansion 2, contraction 1/2,
// shrink 1/2). Throws std::runtime_error if the objective returns a
// non-finite value.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& x0,
                             const NelderMeadOptions& opts = {});

}  // namespace chainctl
