#pragma once

#include "qpwh/specfun.hpp"

#include <functional>
#include <span>
#include <string>

namespace qpwh {

// What happens beyond |s| = s_max.
//   mapped      - integrate the tails through s = s_max/t
//   truncate    - drop them, add the x^-2 tail bound to the error estimate
//   bound_check - drop them, throw if the tail bound exceeds abs_tol
enum class TailPolicy { mapped, truncate, bound_check };

const char* to_string(TailPolicy p);
TailPolicy tail_policy_from_string(const std::string& s);

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 60;
    double s_max = 1e4;
    TailPolicy tail_policy = TailPolicy::mapped;

    void validate() const;
};

struct QuadResult {
    cplx value;
    double error = 0.0;
    double tail_bound = 0.0;
    int evaluations = 0;
    int subdivisions = 0;
};

using LineIntegrand = std::function<cplx(double)>;

// Integral of f(s) over the whole real line. `hints` are parameter values
// where the integrand has structure (they become initial breakpoints).
QuadResult integrate_line(const LineIntegrand& f, const QuadratureConfig& cfg,
                          std::span<const double> hints = {});

} // namespace qpwh
