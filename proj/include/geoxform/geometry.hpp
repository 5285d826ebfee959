#ifndef GEOXFORM_GEOMETRY_HPP
#define GEOXFORM_GEOMETRY_HPP

#include <vector>

#include "geoxform/errors.hpp"

namespace geoxform {

enum class Curvature { Flat, Hyperbolic, Spherical };

/// Simply connected constant-curvature model space of dimension n >= 2.
struct Space {
    Curvature curvature = Curvature::Flat;
    int dim = 2;

    Space() = default;
    Space(Curvature c, int n);

    /// Upper end of the geodesic-distance domain (inf for Flat/Hyperbolic,
    /// pi/2 for Spherical under the even-function convention).
    double distance_sup() const;

    bool finite_domain() const { return curvature == Curvature::Spherical; }
};

inline Space flat(int n) { return Space(Curvature::Flat, n); }
inline Space hyperbolic(int n) { return Space(Curvature::Hyperbolic, n); }
inline Space spherical(int n) { return Space(Curvature::Spherical, n); }

/// Volume-growth function: t, sinh t, or sin t by curvature.
double s_c(const Space& space, double t);

/// Derivative of the volume-growth function: 1, cosh t, or cos t.
double s_c_prime(const Space& space, double t);

/// Radial density of the volume form, s_c(t)^(n-1).
double polar_weight_x(const Space& space, double t);

/// Radial density of the submanifold-space measure in the (frame, h)
/// parametrization: cosh^k h sinh^(n-k-1) h, cos^k h sin^(n-k-1) h, or
/// h^(n-k-1) by curvature.
double polar_weight_xi(const Space& space, int k, double h);

enum class Side { Ambient, Submanifold };

/// The argument the canonical radial profile consumes: t / cosh t / cos t on
/// the ambient side and t / sinh t / sin t on the submanifold side.
double canonical_arg(const Space& space, Side side, double t);

/// Surface measure of the unit m-sphere, 2 pi^((m+1)/2) / Gamma((m+1)/2).
/// |S^0| = 2 by convention.
double sphere_area(int m);

/// A k-dimensional totally geodesic submanifold given by an orthonormal
/// frame (k tangent directions followed by the direction of the nearest
/// point) and the geodesic distance h from the origin.
struct SubmanifoldCoord {
    int k = 1;
    double h = 0.0;
    std::vector<std::vector<double>> frame; // k+1 orthonormal vectors in R^n

    SubmanifoldCoord() = default;
    SubmanifoldCoord(const Space& space, int k_, double h_,
                     std::vector<std::vector<double>> frame_);

    int ambient_dim() const { return frame.empty() ? 0 : static_cast<int>(frame.front().size()); }
    const std::vector<double>& axis() const { return frame.back(); }
};

/// Coordinate along e_1..e_k with axis e_{k+1}; the canonical representative
/// at distance h.
SubmanifoldCoord axis_coord(const Space& space, int k, double h);

/// Apply a rotation matrix (row-major n x n) to every frame vector.
SubmanifoldCoord rotate_coord(const SubmanifoldCoord& coord, const Space& space,
                              const std::vector<std::vector<double>>& rot);

/// Haar-random rotation matrix from a seeded generator, as rows.
std::vector<std::vector<double>> random_rotation(int n, unsigned long long seed);

double frame_orthonormality_defect(const std::vector<std::vector<double>>& frame);

} // namespace geoxform

#endif
