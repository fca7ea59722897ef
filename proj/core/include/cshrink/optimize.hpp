#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace cshrink {

struct NelderMeadOptions {
    double f_tolerance = 1e-8;   // absolute spread of simplex values
    double x_tolerance = 1e-6;   // max distance from best vertex
    int max_evaluations = 5000;
    double initial_step = 0.5;
};

struct NelderMeadResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Minimizes f with the Nelder-Mead downhill simplex (standard coefficients:
// reflection 1, expansion 2, contraction 1/2, shrink 1/2).
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> start,
                             const NelderMeadOptions& options = {});

}  // namespace cshrink
