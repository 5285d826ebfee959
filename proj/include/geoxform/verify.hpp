#ifndef GEOXFORM_VERIFY_HPP
#define GEOXFORM_VERIFY_HPP

#include <string>
#include <vector>

#include "geoxform/fracint.hpp"
#include "geoxform/norms.hpp"

namespace geoxform {

enum class Inequality {
    ExistenceHn,
    ExistenceSn,
    RnLpLinf,
    HnLpLr,
    HnLpLinf,
    SnLpLr,
    SnLpLinf,
    HnLpLp,
    SnLpLp,
    RnLpLp,
    EndpointHnGamma,
    EndpointHnMixed,
    EndpointSnGamma,
    EndpointSnMixed,
};

const char* inequality_name(Inequality id);
bool inequality_from_name(const std::string& name, Inequality* out);

/// Exponent tuple for a condition check; each inequality reads the fields
/// it needs (a* ambient weights, b* submanifold weights, g* sup-norm
/// weights; for the Euclidean statements a1/b1 play alpha/beta).
struct ConditionInputs {
    int n = 3;
    int k = 1;
    double p = 1.0;
    double r = 1.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double g = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
};

struct ConditionReport {
    Inequality id = Inequality::ExistenceHn;
    ConditionInputs in;
    bool necessary_ok = false;
    bool sufficient_ok = false;
    std::vector<std::string> endpoint_flags;
    std::vector<std::string> rules; // names of the applied condition sets
};

/// Literal evaluation of the named inequality's necessary and sufficient
/// condition sets, with exact boundary hits surfaced as endpoint flags.
ConditionReport condition_check(Inequality id, const ConditionInputs& in);

enum class ProbeFamilyId {
    RnBall,
    RnAnnulus,
    HnBallCosh,
    HnBallSinhCosh,
    HnDoubleAnnulus,
    SnBallCos,
    SnBallCosSinPow,
    SnEquatorCos,
    SnEquatorCosPow,
    SnDoubleAnnulus,
    SnAnnulusNearZero,
};

struct ProbeFamily {
    ProbeFamilyId id = ProbeFamilyId::RnBall;
    std::vector<double> parameter_grid;
};

/// The scale-family test function at parameter value lam.
RadialProfile probe_family_profile(ProbeFamilyId id, const Space& space,
                                   const ConditionInputs& in, double lam);

struct RatioProbeResult {
    double slope_small = 0.0;
    double slope_large = 0.0;
    double sup_ratio = 0.0;
    std::vector<double> lambdas;
    std::vector<double> ratios;
};

/// Fits log(target/source) against the regime variable over the family
/// grid: log(lam) in the small regime, lam itself in the hyperbolic large
/// regime, and log(cos lam) near the spherical equator.
RatioProbeResult ratio_probe(Inequality id, const ConditionInputs& in,
                             const ProbeFamily& family, const QuadratureSpec& quad);

enum class CounterexampleId {
    Hn1,
    Hn2,
    Sn,
    Sn2,
    RnAnnulusK1,
    HnAnnulusK1,
    SnAnnulusK1,
};

const char* counterexample_name(CounterexampleId id);

struct BlowupParams {
    int n = 3;
    int k = 2;
    double p = 2.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double beta = 0.0;   // Euclidean sup-norm weight
    double g1 = 0.0;     // sup-norm weights (Hn/Sn annuli)
    double g2 = 0.0;
    double gamma = 1.25; // log exponent of the Sn2 example
    double a = 1.0;      // fixed inner radius of the annulus examples
    double witness = 0.5;
};

struct BlowupResult {
    std::vector<double> values;
    ProbeVerdict verdict = ProbeVerdict::Inconclusive;
    double source_norm = 0.0;
    double source_change = 0.0;
};

/// Confirms the example's source norm is finite (with a converged
/// evaluation) while the target quantity grows along the truncation or
/// shrinking-annulus grid.
BlowupResult blowup_probe(CounterexampleId id, const BlowupParams& params,
                          const std::vector<double>& grid,
                          const QuadratureSpec& quad);

struct EndpointProbeResult {
    bool ran_family_sweep = false;
    double empirical_sup = 0.0;
    double empirical_sup_half = 0.0;
    bool stable = false;
    std::vector<double> family_ratios;
};

/// For admissible weights: empirical sup of the weighted transform over
/// random layered characteristic sets against their Lorentz norm, with a
/// half-sample stability check. For weights beyond the threshold: the
/// double-annulus family sweep demonstrating unbounded growth.
EndpointProbeResult endpoint_lorentz_probe(Inequality id, const ConditionInputs& in,
                                           int count, unsigned long long seed,
                                           const QuadratureSpec& quad);

enum class LemmaId {
    AnnulusAlternating,
    PowerWeighted,
    ExpWeighted,
    PolyWeighted,
    HyperbolicCosh,
    SphereSinCos,
};

const char* lemma_name(LemmaId id);

struct LemmaSuiteResult {
    long violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    long trials = 0;
};

/// Randomized check of the layer-cake inequalities with their explicit
/// constants; the contract is zero violations.
LemmaSuiteResult lemma_suite(LemmaId id, long trials, unsigned long long seed);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

} // namespace geoxform

#endif
