#ifndef GEOXFORM_FRACINT_HPP
#define GEOXFORM_FRACINT_HPP

#include <functional>
#include <vector>

#include "geoxform/quadrature.hpp"

namespace geoxform {

using RealFunction = std::function<double(double)>;

/// Riemann-Liouville fractional integral with finite lower limit:
/// (1/Gamma(alpha)) * integral_a^x phi(y) (x-y)^(alpha-1) dy.
double rl_lower(double alpha, double a, const RealFunction& phi, double x,
                const QuadratureSpec& quad);

/// Riemann-Liouville fractional integral with infinite upper limit:
/// (1/Gamma(alpha)) * integral_x^inf phi(y) (y-x)^(alpha-1) dy.
double rl_upper_inf(double alpha, const RealFunction& phi, double x,
                    const QuadratureSpec& quad);

enum class FracDomain { HalfLine, Interval };
enum class FracWeight { Rho, RhoMinus, RhoPlus };

/// Multi-point power weights for the fractional-integral boundedness
/// machinery: a partition 0 = a_1 < ... < a_l with exponents gamma_j, the
/// growth exponent gamma_inf on the half line, the epsilon slack values,
/// and the exponent bookkeeping 0 <= m <= alpha < m + 1/p with
/// alpha - m = 1/p - 1/q.
struct FracWeightSpec {
    FracDomain domain = FracDomain::HalfLine;
    std::vector<double> partition{0.0};
    std::vector<double> exponents{0.0};
    double gamma_inf = 0.0;
    std::vector<double> epsilons{0.1};
    double m = 0.0;
    double alpha = 0.5;
    double p = 2.0;

    void validate() const;
    double q() const; // from alpha - m = 1/p - 1/q
    double interval_end() const { return partition.back(); }
    std::vector<double> deltas() const;
    double delta_inf() const;
};

double weight_eval(const FracWeightSpec& spec, FracWeight which, double x);

/// Hypothesis of the weighted L^p -> L^q boundedness theorems: on the half
/// line, gamma_inf + sum gamma_j > alpha - 1/p; on a finite interval no
/// further condition is needed.
bool boundedness_predicate(const FracWeightSpec& spec);

enum class CounterexampleDomain { HalfLinePlus, IntervalMinus };

/// The log-density counterexample function: supported on (a/2, 3a/4)
/// (half line) or (a/4, a/2) (interval), equal to the reciprocal-distance
/// log power divided by the source weight.
double counterexample_psi(CounterexampleDomain domain_choice, double a, double gamma,
                          const RealFunction& rho1, double x);

/// Its exact weighted L^1 norm when rho1 == 1 on the window:
/// (ln(4/a))^(1-gamma) / (gamma - 1)  [half-line variant].
double counterexample_psi_l1(CounterexampleDomain domain_choice, double a,
                             double gamma);

enum class ProbeVerdict { Divergent, Convergent, Inconclusive };

struct DivergenceProbeResult {
    std::vector<double> values;   // truncated target norms per grid entry
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
    double source_norm = 0.0;     // converged source-space norm
    double source_change = 0.0;   // relative change over the last refinement
};

enum class FracOperator { IHalfPlus_L2, IHalfMinus_L2 };

struct PsiParams {
    double a = 1.0;
    double gamma = 1.25;
};

/// Runs the impossibility probe: confirms the source L^1 norm converges and
/// reports the truncated target L^2 norms over the refinement grid. The
/// verdict is Divergent when the last refinements grow by at least 5% each
/// with no sign of a plateau.
DivergenceProbeResult divergence_probe(FracOperator op, const PsiParams& params,
                                       const std::vector<double>& truncation_grid,
                                       const QuadratureSpec& quad);

/// Shared growth-rate test: Divergent iff the sequence increases by at
/// least `growth` per step over the final `window` steps.
ProbeVerdict growth_verdict(const std::vector<double>& values, double growth = 0.05,
                            int window = 3);

} // namespace geoxform

#endif
