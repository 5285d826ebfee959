#include "geoxform/geometry.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace geoxform {

namespace {

const double kPi = 3.14159265358979323846;

void check_distance(const Space& space, double t) {
    if (!(t >= 0.0))
        throw DomainError("geodesic distance must be nonnegative");
    if (space.curvature == Curvature::Spherical && t > kPi)
        throw DomainError("spherical distance exceeds pi");
}

} // namespace

Space::Space(Curvature c, int n) : curvature(c), dim(n) {
    if (n < 2)
        throw DomainError("space dimension must be at least 2");
}

double Space::distance_sup() const {
    return curvature == Curvature::Spherical ? kPi / 2.0
                                             : std::numeric_limits<double>::infinity();
}

double s_c(const Space& space, double t) {
    check_distance(space, t);
    switch (space.curvature) {
    case Curvature::Flat: return t;
    case Curvature::Hyperbolic: return std::sinh(t);
    case Curvature::Spherical: return std::sin(t);
    }
    return 0.0;
}

double s_c_prime(const Space& space, double t) {
    check_distance(space, t);
    switch (space.curvature) {
    case Curvature::Flat: return 1.0;
    case Curvature::Hyperbolic: return std::cosh(t);
    case Curvature::Spherical: return std::cos(t);
    }
    return 0.0;
}

double polar_weight_x(const Space& space, double t) {
    return std::pow(s_c(space, t), space.dim - 1);
}

double polar_weight_xi(const Space& space, int k, double h) {
    if (k < 1 || k > space.dim - 1)
        throw DomainError("need 1 <= k <= n-1");
    check_distance(space, h);
    const int m = space.dim - k - 1;
    switch (space.curvature) {
    case Curvature::Flat:
        return std::pow(h, m);
    case Curvature::Hyperbolic:
        return std::pow(std::cosh(h), k) * std::pow(std::sinh(h), m);
    case Curvature::Spherical:
        if (h >= kPi / 2.0)
            throw DomainError("spherical submanifold distance must be below pi/2");
        return std::pow(std::cos(h), k) * std::pow(std::sin(h), m);
    }
    return 0.0;
}

double canonical_arg(const Space& space, Side side, double t) {
    check_distance(space, t);
    switch (space.curvature) {
    case Curvature::Flat:
        return t;
    case Curvature::Hyperbolic:
        return side == Side::Ambient ? std::cosh(t) : std::sinh(t);
    case Curvature::Spherical:
        return side == Side::Ambient ? std::cos(t) : std::sin(t);
    }
    return t;
}

double sphere_area(int m) {
    if (m < 0)
        throw DomainError("sphere dimension must be nonnegative");
    if (m == 0) return 2.0;
    return 2.0 * std::pow(kPi, (m + 1) / 2.0) / std::tgamma((m + 1) / 2.0);
}

double frame_orthonormality_defect(const std::vector<std::vector<double>>& frame) {
    double worst = 0.0;
    for (std::size_t i = 0; i < frame.size(); ++i) {
        for (std::size_t j = i; j < frame.size(); ++j) {
            double dot = 0.0;
            for (std::size_t c = 0; c < frame[i].size(); ++c)
                dot += frame[i][c] * frame[j][c];
            const double target = (i == j) ? 1.0 : 0.0;
            worst = std::max(worst, std::fabs(dot - target));
        }
    }
    return worst;
}

SubmanifoldCoord::SubmanifoldCoord(const Space& space, int k_, double h_,
                                   std::vector<std::vector<double>> frame_)
    : k(k_), h(h_), frame(std::move(frame_)) {
    const int n = space.dim;
    if (k < 1 || k > n - 1)
        throw DomainError("need 1 <= k <= n-1");
    if (!(h >= 0.0))
        throw DomainError("submanifold distance must be nonnegative");
    if (space.curvature == Curvature::Spherical && h >= kPi / 2.0)
        throw DomainError("spherical submanifold distance must be below pi/2");
    if (frame.size() != static_cast<std::size_t>(k + 1))
        throw DomainError("frame must hold k+1 vectors");
    for (const auto& v : frame)
        if (v.size() != static_cast<std::size_t>(n))
            throw DomainError("frame vectors must be n-dimensional");
    const double defect = frame_orthonormality_defect(frame);
    if (defect > 1e-12) {
        std::ostringstream msg;
        msg << "frame not orthonormal (defect " << defect << ")";
        throw DomainError(msg.str());
    }
}

SubmanifoldCoord axis_coord(const Space& space, int k, double h) {
    std::vector<std::vector<double>> frame(k + 1, std::vector<double>(space.dim, 0.0));
    for (int i = 0; i <= k; ++i)
        frame[i][i] = 1.0;
    return SubmanifoldCoord(space, k, h, std::move(frame));
}

SubmanifoldCoord rotate_coord(const SubmanifoldCoord& coord, const Space& space,
                              const std::vector<std::vector<double>>& rot) {
    std::vector<std::vector<double>> frame;
    frame.reserve(coord.frame.size());
    for (const auto& v : coord.frame) {
        std::vector<double> w(v.size(), 0.0);
        for (std::size_t r = 0; r < rot.size(); ++r)
            for (std::size_t c = 0; c < v.size(); ++c)
                w[r] += rot[r][c] * v[c];
        frame.push_back(std::move(w));
    }
    return SubmanifoldCoord(space, coord.k, coord.h, std::move(frame));
}

std::vector<std::vector<double>> random_rotation(int n, unsigned long long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<std::vector<double>> m(n, std::vector<double>(n));
    for (auto& row : m)
        for (auto& x : row)
            x = gauss(rng);
    // Gram-Schmidt on rows.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < i; ++j) {
            double dot = 0.0;
            for (int c = 0; c < n; ++c) dot += m[i][c] * m[j][c];
            for (int c = 0; c < n; ++c) m[i][c] -= dot * m[j][c];
        }
        double norm = 0.0;
        for (int c = 0; c < n; ++c) norm += m[i][c] * m[i][c];
        norm = std::sqrt(norm);
        for (int c = 0; c < n; ++c) m[i][c] /= norm;
    }
    // Force determinant +1 by flipping the last row if needed. For our use
    // (conjugating frames) the sign is immaterial, but SO(n) is the contract.
    double det = 1.0;
    {
        auto a = m;
        for (int col = 0; col < n; ++col) {
            int piv = col;
            for (int r = col + 1; r < n; ++r)
                if (std::fabs(a[r][col]) > std::fabs(a[piv][col])) piv = r;
            if (piv != col) { std::swap(a[piv], a[col]); det = -det; }
            det *= a[col][col];
            for (int r = col + 1; r < n; ++r) {
                const double f = a[r][col] / a[col][col];
                for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
            }
        }
    }
    if (det < 0.0)
        for (int c = 0; c < n; ++c) m[n - 1][c] = -m[n - 1][c];
    return m;
}

} // namespace geoxform
