#ifndef RESTRESS_TENSOR_HPP
#define RESTRESS_TENSOR_HPP

#include <array>
#include <cmath>
#include <stdexcept>

namespace restress {

/// Symmetric rank-2 tensor stored as the six unique components in the fixed
/// order (xx, yy, zz, xy, yz, xz).  Shear components are tensor components,
/// not engineering shears: contractions carry the factor 2 explicitly.
struct SymTensor2 {
  double xx = 0.0, yy = 0.0, zz = 0.0;
  double xy = 0.0, yz = 0.0, xz = 0.0;

  static SymTensor2 identity() { return {1.0, 1.0, 1.0, 0.0, 0.0, 0.0}; }
  static SymTensor2 diag(double a, double b, double c) {
    return {a, b, c, 0.0, 0.0, 0.0};
  }

  double trace() const { return xx + yy + zz; }

  /// Full contraction a:b = a_ij b_ij.
  double contract(const SymTensor2& o) const {
    return xx * o.xx + yy * o.yy + zz * o.zz +
           2.0 * (xy * o.xy + yz * o.yz + xz * o.xz);
  }

  double norm() const { return std::sqrt(contract(*this)); }

  double max_abs() const {
    double m = 0.0;
    for (double v : {xx, yy, zz, xy, yz, xz}) m = std::max(m, std::abs(v));
    return m;
  }

  /// Reconstruct the full 3x3 matrix, row-major.  Exactly symmetric.
  std::array<double, 9> matrix() const {
    return {xx, xy, xz, xy, yy, yz, xz, yz, zz};
  }

  /// Quadratic form n^T t n for a direction n.
  double bilinear(const std::array<double, 3>& n) const {
    return xx * n[0] * n[0] + yy * n[1] * n[1] + zz * n[2] * n[2] +
           2.0 * (xy * n[0] * n[1] + yz * n[1] * n[2] + xz * n[0] * n[2]);
  }

  /// Traction vector t·n.
  std::array<double, 3> dot(const std::array<double, 3>& n) const {
    return {xx * n[0] + xy * n[1] + xz * n[2],
            xy * n[0] + yy * n[1] + yz * n[2],
            xz * n[0] + yz * n[1] + zz * n[2]};
  }

  SymTensor2& operator+=(const SymTensor2& o) {
    xx += o.xx; yy += o.yy; zz += o.zz;
    xy += o.xy; yz += o.yz; xz += o.xz;
    return *this;
  }
  SymTensor2& operator-=(const SymTensor2& o) {
    xx -= o.xx; yy -= o.yy; zz -= o.zz;
    xy -= o.xy; yz -= o.yz; xz -= o.xz;
    return *this;
  }
  SymTensor2& operator*=(double s) {
    xx *= s; yy *= s; zz *= s; xy *= s; yz *= s; xz *= s;
    return *this;
  }
  friend SymTensor2 operator+(SymTensor2 a, const SymTensor2& b) { return a += b; }
  friend SymTensor2 operator-(SymTensor2 a, const SymTensor2& b) { return a -= b; }
  friend SymTensor2 operator*(double s, SymTensor2 a) { return a *= s; }
  friend SymTensor2 operator*(SymTensor2 a, double s) { return a *= s; }
  friend SymTensor2 operator-(SymTensor2 a) { return a *= -1.0; }

  double& operator[](int k) {
    switch (k) {
      case 0: return xx; case 1: return yy; case 2: return zz;
      case 3: return xy; case 4: return yz; default: return xz;
    }
  }
  double operator[](int k) const {
    switch (k) {
      case 0: return xx; case 1: return yy; case 2: return zz;
      case 3: return xy; case 4: return yz; default: return xz;
    }
  }
};

inline constexpr std::array<const char*, 6> kTensorComponentNames = {
    "xx", "yy", "zz", "xy", "yz", "xz"};

/// Isotropic elastic constants.  Stiffness and compliance are exact mutual
/// inverses; construction rejects the singular values nu = 0.5 and nu = -1.
struct ElasticModel {
  double youngs_modulus;  // Pa, > 0
  double poisson_ratio;   // dimensionless, -1 < nu < 0.5

  ElasticModel(double E, double nu) : youngs_modulus(E), poisson_ratio(nu) {
    if (!(E > 0.0))
      throw std::invalid_argument("ElasticModel: Young's modulus must be > 0");
    if (!(nu > -1.0 && nu < 0.5))
      throw std::invalid_argument(
          "ElasticModel: Poisson ratio must lie in (-1, 0.5); the stiffness "
          "is singular at the endpoints");
  }

  double lame_lambda() const {
    return youngs_modulus * poisson_ratio /
           ((1.0 + poisson_ratio) * (1.0 - 2.0 * poisson_ratio));
  }
  double lame_mu() const { return youngs_modulus / (2.0 * (1.0 + poisson_ratio)); }
};

/// sigma = C : eps for isotropic C,
/// sigma_ij = E/(1+nu) [ nu/(1-2nu) delta_ij tr(eps) + eps_ij ].
SymTensor2 apply_stiffness(const SymTensor2& strain, const ElasticModel& m);

/// eps = S : sigma; inverse of apply_stiffness to roundoff.
SymTensor2 apply_compliance(const SymTensor2& stress, const ElasticModel& m);

}  // namespace restress

#endif
