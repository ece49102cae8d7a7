#include "chainctl/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace chainctl {

namespace {

constexpr double kAlpha = 1.0;  // reflection
constexpr double kGamma = 2.0;  // expansion
constexpr double kRho = 0.5;    // contraction
constexpr double kSigma = 0.5;  // shrink

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                             const std::vector<double>& x0, const NelderMeadOptions& opts) {
    const std::size_t n = x0.size();
    if (n == 0) {
        throw std::invalid_argument("nelder_mead: empty starting point");
    }
    if (opts.max_evaluations < static_cast<int>(n) + 1) {
        throw std::invalid_argument("nelder_mead: evaluation budget smaller than the simplex");
    }

    int evals = 0;
    // hard budget: returns nullopt once max_evaluations is spent
    auto try_eval = [&](const std::vector<double>& x) -> std::optional<double> {
        if (evals >= opts.max_evaluations) return std::nullopt;
        const double f = objective(x);
        ++evals;
        if (!std::isfinite(f)) {
            std::ostringstream os;
            os << "nelder_mead: objective returned non-finite value " << f << " at evaluation "
               << evals;
            throw std::runtime_error(os.str());
        }
        return f;
    };

    std::vector<std::vector<double>> pts(n + 1, x0);
    for (std::size_t i = 0; i < n; ++i) pts[i + 1][i] += opts.simplex_scale;
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i <= n; ++i) fv[i] = *try_eval(pts[i]);

    std::vector<std::size_t> order(n + 1);
    auto sort_simplex = [&]() {
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        std::vector<std::vector<double>> p2(n + 1);
        std::vector<double> f2(n + 1);
        for (std::size_t i = 0; i <= n; ++i) {
            p2[i] = std::move(pts[order[i]]);
            f2[i] = fv[order[i]];
        }
        pts = std::move(p2);
        fv = std::move(f2);
    };

    int iteration = 0;
    bool exhausted = false;
    while (!exhausted) {
        sort_simplex();
        if (opts.on_iteration) opts.on_iteration(iteration, fv[0]);
        ++iteration;
        if (fv[0] <= opts.target_value) break;

        // centroid of all but the worst vertex
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) centroid[j] += pts[i][j];
        }
        for (double& cj : centroid) cj /= static_cast<double>(n);

        auto blend = [&](const std::vector<double>& from, double coef) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) p[j] = centroid[j] + coef * (from[j] - centroid[j]);
            return p;
        };

        auto shrink = [&]() {
            for (std::size_t i = 1; i <= n; ++i) {
                std::vector<double> p(n);
                for (std::size_t j = 0; j < n; ++j) {
                    p[j] = pts[0][j] + kSigma * (pts[i][j] - pts[0][j]);
                }
                const auto f = try_eval(p);
                if (!f) return false;
                pts[i] = std::move(p);
                fv[i] = *f;
            }
            return true;
        };

        const std::vector<double> reflected = blend(pts[n], -kAlpha);
        const auto fr = try_eval(reflected);
        if (!fr) break;

        if (*fr < fv[0]) {
            const std::vector<double> expanded = blend(reflected, kGamma);
            const auto fe = try_eval(expanded);
            if (fe && *fe < *fr) {
                pts[n] = expanded;
                fv[n] = *fe;
            } else {
                pts[n] = reflected;
                fv[n] = *fr;
                if (!fe) break;
            }
        } else if (*fr < fv[n - 1]) {
            pts[n] = reflected;
            fv[n] = *fr;
        } else if (*fr < fv[n]) {
            // outside contraction
            const std::vector<double> contracted = blend(reflected, kRho);
            const auto fc = try_eval(contracted);
            if (!fc) {
                pts[n] = reflected;
                fv[n] = *fr;
                break;
            }
            if (*fc <= *fr) {
                pts[n] = contracted;
                fv[n] = *fc;
            } else {
                exhausted = !shrink();
            }
        } else {
            // inside contraction
            const std::vector<double> contracted = blend(pts[n], kRho);
            const auto fc = try_eval(contracted);
            if (!fc) break;
            if (*fc < fv[n]) {
                pts[n] = contracted;
                fv[n] = *fc;
            } else {
                exhausted = !shrink();
            }
        }
    }

    sort_simplex();
    NelderMeadResult result;
    result.x = pts[0];
    result.value = fv[0];
    result.evaluations = evals;
    return result;
}

}  // namespace chainctl
