#ifndef GEOXFORM_RADIAL_TRANSFORM_HPP
#define GEOXFORM_RADIAL_TRANSFORM_HPP

#include <memory>
#include <string>

#include "geoxform/quadrature.hpp"
#include "geoxform/radial_profile.hpp"

namespace geoxform {

/// k-plane transform of a radial function, evaluated at a submanifold at
/// geodesic distance h from the origin. Exact leading constants are used:
/// |S^(k-1)| throughout and the extra factor 2 on the sphere.
double kplane_radial(const Space& space, int k, const RadialProfile& f, double h,
                     const QuadratureSpec& quad);

/// Dual k-plane transform of a radial submanifold-side function, evaluated
/// at ambient distance r > 0 from the origin. Carries the exact constant
/// |S^(k-1)| |S^(n-k-1)| / |S^(n-1)|.
double dual_kplane_radial(const Space& space, int k, const RadialProfile& phi,
                          double r, const QuadratureSpec& quad);

enum class ClosedFormFamilyId {
    EuclideanBall,
    HnBall,
    HnBallCosh,
    HnBallSinhCosh,
    SnBallPlain,
    SnBallCos,
    SnBallCosSinPow,
    SnEquatorPlain,
    SnEquatorCos,
    SnEquatorCosPow,
    DualHnMixed,
    DualSnMixed,
};

const char* family_name(ClosedFormFamilyId id);

/// One entry of the closed-form catalog: a test function with an explicit
/// transform expression known up to a multiplicative constant.
class ClosedFormFamily {
public:
    ClosedFormFamily(ClosedFormFamilyId id, double lambda = 1.0, double alpha = 0.0,
                     double p = 1.0, double gamma1 = 0.0, double gamma2 = 0.0);

    ClosedFormFamilyId id() const { return id_; }
    double lambda() const { return lambda_; }
    double alpha() const { return alpha_; }
    double p() const { return p_; }
    double gamma1() const { return gamma1_; }
    double gamma2() const { return gamma2_; }

    bool is_dual_family() const;

    /// The function whose transform the family describes (ambient-side for
    /// the direct families, submanifold-side for the dual ones).
    RadialProfile profile(const Space& space, int k) const;

    /// The closed-form expression without its undetermined constant.
    double shape(const Space& space, int k, double x) const;

    /// Quadrature evaluation of the same transform.
    double quadrature_value(const Space& space, int k, double x,
                            const QuadratureSpec& quad) const;

    double calibration_constant() const;
    bool calibrated() const;
    void set_calibration(double c) const;

    /// Validate that params satisfy the family's hypotheses for (space, k).
    void check_hypotheses(const Space& space, int k) const;

private:
    ClosedFormFamilyId id_;
    double lambda_, alpha_, p_, gamma1_, gamma2_;
    struct Cell;
    std::shared_ptr<Cell> cell_;
};

/// shape(x) * calibration (1 until calibrated). Returns 0 exactly on the
/// regions where the transform vanishes.
double closed_form_eval(const Space& space, int k, const ClosedFormFamily& fam,
                        double x, const QuadratureSpec& quad = {});

/// Quadrature/shape ratio at a reference point strictly inside the support;
/// stores it into the family (idempotent, single-writer).
double calibrate_constant(const Space& space, int k, const ClosedFormFamily& fam,
                          double reference_point, const QuadratureSpec& quad);

/// k-plane transform of the characteristic function of the annulus
/// a < d < b at distance h; semi-closed form used by the probe harness.
double kplane_char_interval(const Space& space, int k, double a, double b, double h);

} // namespace geoxform

#endif
