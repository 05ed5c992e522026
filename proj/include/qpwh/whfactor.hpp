#pragma once

#include "qpwh/contour.hpp"
#include "qpwh/quadrature.hpp"
#include "qpwh/specfun.hpp"

#include <functional>
#include <mutex>
#include <string>

namespace qpwh {

enum class SplitSide { plus, minus };

using ComplexFunction = std::function<cplx(cplx)>;

// max(1e-3, 0.05 k)
double default_epsilon(double k);

// Plus part: (1/2 pi i) int over A - i eps of f(z)/(z - target) dz.
// Minus part: (-1/2 pi i) int over A + i eps. The contour offset must match the side.
cplx cauchy_split(const ComplexFunction& f, cplx target, SplitSide side,
                  const ShiftedContour& contour, const QuadratureConfig& cfg);

// exp of the split of log g. g must tend to 1 at both ends of the contour and
// its principal log must stay continuous along it (WindingError otherwise).
cplx cauchy_factorize(const ComplexFunction& g, cplx target, SplitSide side,
                      const ShiftedContour& contour, const QuadratureConfig& cfg);

// Quarter-plane factors K--, K-+, K+-, K++ (first sign: alpha1, second: alpha2).
enum class FactorLabel { MM, MP, PM, PP };

const char* to_string(FactorLabel l);
FactorLabel factor_label_from_string(const std::string& s);

// +1 or -1 for the alpha1 / alpha2 half of a label.
int sign1(FactorLabel l);
int sign2(FactorLabel l);
FactorLabel make_label(int s1, int s2);

enum class Route { direct, alpha2, alpha1, both };

const char* to_string(Route r);

struct FactorValue {
    cplx value;
    Route route;
};

struct BranchCheck {
    cplx circ_plus = 1.0;   // K++ K-+ / Ko+ on the overlap set
    cplx circ_minus = 1.0;  // K+- K-- / Ko-
    double max_deviation = 0.0;
};

class FactorEngine {
public:
    // eps <= 0 selects default_epsilon(k). Validates both contours.
    FactorEngine(double k, const ContourSpec& c1, const ContourSpec& c2,
                 const QuadratureConfig& cfg = {}, double eps = 0.0);

    double k() const { return k_; }
    double eps() const { return eps_; }
    const ContourSpec& contour1() const { return c1_; }
    const ContourSpec& contour2() const { return c2_; }
    const QuadratureConfig& config() const { return cfg_; }

    Side side1(cplx a1) const { return classify_side(c1_, a1); }
    Side side2(cplx a2) const { return classify_side(c2_, a2); }

    // Whether p lies in the natural domain of the label (points on a contour count for both sides).
    bool in_domain(FactorLabel l, const SpectralPoint& p) const;

    // Direct integral formula; DomainError outside the natural domain.
    cplx quarter_factor(FactorLabel l, const SpectralPoint& p) const;

    // Any point off the half-factor cuts, with the route used.
    FactorValue continue_factor(FactorLabel l, const SpectralPoint& p) const;

    cplx full(const SpectralPoint& p) const { return big_k(p, k_); }

    // Runs the overlap comparison once; later calls return the stored result.
    const BranchCheck& branch_check() const;

private:
    cplx quarter_unchecked(FactorLabel l, const SpectralPoint& p) const;
    cplx circ_constant(int s2) const;

    double k_;
    ContourSpec c1_;
    ContourSpec c2_;
    QuadratureConfig cfg_;
    double eps_;
    mutable std::once_flag check_once_;
    mutable BranchCheck check_;
};

} // namespace qpwh
