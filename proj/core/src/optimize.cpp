#include "cshrink/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cshrink {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& f,
                             std::span<const double> start, const NelderMeadOptions& options) {
    const std::size_t dim = start.size();
    using Point = std::vector<double>;

    NelderMeadResult result;
    int evaluations = 0;
    auto eval = [&](const Point& p) {
        ++evaluations;
        const double v = f(p);
        return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
    };

    std::vector<Point> simplex(dim + 1, Point(start.begin(), start.end()));
    for (std::size_t i = 0; i < dim; ++i) simplex[i + 1][i] += options.initial_step;
    std::vector<double> values(dim + 1);
    for (std::size_t i = 0; i <= dim; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(dim + 1);
    Point centroid(dim), trial(dim), trial2(dim);

    auto along = [&](double t, Point& out) {
        // centroid + t * (centroid - worst)
        const Point& worst = simplex[order[dim]];
        for (std::size_t j = 0; j < dim; ++j) out[j] = centroid[j] + t * (centroid[j] - worst[j]);
    };

    bool converged = false;
    while (evaluations < options.max_evaluations) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order[0];
        const std::size_t worst = order[dim];

        double spread = values[worst] - values[best];
        double diameter = 0.0;
        for (std::size_t i = 1; i <= dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                diameter = std::max(diameter, std::abs(simplex[order[i]][j] - simplex[best][j]));
        if (spread <= options.f_tolerance && diameter <= options.x_tolerance) {
            converged = true;
            break;
        }

        std::fill(centroid.begin(), centroid.end(), 0.0);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[order[i]][j] / dim;

        along(1.0, trial);
        const double f_reflect = eval(trial);
        if (f_reflect < values[best]) {
            along(2.0, trial2);
            const double f_expand = eval(trial2);
            if (f_expand < f_reflect) {
                simplex[worst] = trial2;
                values[worst] = f_expand;
            } else {
                simplex[worst] = trial;
                values[worst] = f_reflect;
            }
            continue;
        }
        if (f_reflect < values[order[dim - 1]]) {
            simplex[worst] = trial;
            values[worst] = f_reflect;
            continue;
        }
        // Contraction: outside if the reflection improved on the worst point.
        const bool outside = f_reflect < values[worst];
        along(outside ? 0.5 : -0.5, trial2);
        const double f_contract = eval(trial2);
        if (f_contract < std::min(f_reflect, values[worst])) {
            simplex[worst] = trial2;
            values[worst] = f_contract;
            continue;
        }
        for (std::size_t i = 1; i <= dim; ++i) {
            auto& p = simplex[order[i]];
            for (std::size_t j = 0; j < dim; ++j) p[j] = simplex[best][j] + 0.5 * (p[j] - simplex[best][j]);
            values[order[i]] = eval(p);
        }
    }

    const auto best_it = std::min_element(values.begin(), values.end());
    result.x = simplex[static_cast<std::size_t>(best_it - values.begin())];
    result.value = *best_it;
    result.evaluations = evaluations;
    result.converged = converged;
    return result;
}

}  // namespace cshrink
