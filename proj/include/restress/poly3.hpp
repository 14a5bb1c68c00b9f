#ifndef RESTRESS_POLY3_HPP
#define RESTRESS_POLY3_HPP

#include <array>
#include <vector>

namespace restress {

/// Dense trivariate polynomial sum c[p][q][s] X^p Y^q Z^s over normalized
/// coordinates.  Differentiation is exact index shifting; no numerical
/// differencing anywhere downstream.
class Poly3 {
 public:
  Poly3() : nx_(1), ny_(1), nz_(1), c_(1, 0.0) {}
  Poly3(int nx, int ny, int nz)
      : nx_(nx), ny_(ny), nz_(nz),
        c_(static_cast<size_t>(nx) * ny * nz, 0.0) {}

  static Poly3 constant(double v) {
    Poly3 p;
    p.c_[0] = v;
    return p;
  }
  /// X^p Y^q Z^s with unit coefficient.
  static Poly3 monomial(int p, int q, int s, double coef = 1.0);

  int degree_x() const { return nx_ - 1; }
  int degree_y() const { return ny_ - 1; }
  int degree_z() const { return nz_ - 1; }

  double coef(int p, int q, int s) const {
    if (p >= nx_ || q >= ny_ || s >= nz_) return 0.0;
    return c_[index(p, q, s)];
  }
  void set_coef(int p, int q, int s, double v) { c_[index(p, q, s)] = v; }
  void add_coef(int p, int q, int s, double v) { c_[index(p, q, s)] += v; }

  double eval(double x, double y, double z) const;

  Poly3 operator*(const Poly3& o) const;
  Poly3 operator+(const Poly3& o) const;
  Poly3 operator-(const Poly3& o) const;
  Poly3 operator*(double s) const;
  Poly3& operator+=(const Poly3& o) { return *this = *this + o; }

  /// Partial derivative in normalized coordinates (axis 0 = X, 1 = Y, 2 = Z).
  Poly3 derivative(int axis) const;

  /// Integral over the cube [-1,1]^3 (odd powers drop out).
  double integral_unit_cube() const;

  double max_abs_coef() const;
  bool is_zero() const;

  /// Swap the roles of X and Y.
  Poly3 swapped_xy() const;

 private:
  size_t index(int p, int q, int s) const {
    return static_cast<size_t>(p) + static_cast<size_t>(nx_) * (q + static_cast<size_t>(ny_) * s);
  }
  int nx_, ny_, nz_;
  std::vector<double> c_;
};

}  // namespace restress

#endif
