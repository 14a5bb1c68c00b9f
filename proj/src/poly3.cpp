#include "restress/poly3.hpp"

#include <algorithm>
#include <cmath>

namespace restress {

Poly3 Poly3::monomial(int p, int q, int s, double coef) {
  Poly3 out(p + 1, q + 1, s + 1);
  out.set_coef(p, q, s, coef);
  return out;
}

double Poly3::eval(double x, double y, double z) const {
  // Horner over z, then y, then x.
  double vz = 0.0;
  for (int s = nz_ - 1; s >= 0; --s) {
    double vy = 0.0;
    for (int q = ny_ - 1; q >= 0; --q) {
      double vx = 0.0;
      for (int p = nx_ - 1; p >= 0; --p) vx = vx * x + c_[index(p, q, s)];
      vy = vy * y + vx;
    }
    vz = vz * z + vy;
  }
  return vz;
}

Poly3 Poly3::operator*(const Poly3& o) const {
  Poly3 out(nx_ + o.nx_ - 1, ny_ + o.ny_ - 1, nz_ + o.nz_ - 1);
  for (int s = 0; s < nz_; ++s)
    for (int q = 0; q < ny_; ++q)
      for (int p = 0; p < nx_; ++p) {
        const double a = c_[index(p, q, s)];
        if (a == 0.0) continue;
        for (int s2 = 0; s2 < o.nz_; ++s2)
          for (int q2 = 0; q2 < o.ny_; ++q2)
            for (int p2 = 0; p2 < o.nx_; ++p2) {
              const double b = o.c_[o.index(p2, q2, s2)];
              if (b != 0.0) out.add_coef(p + p2, q + q2, s + s2, a * b);
            }
      }
  return out;
}

Poly3 Poly3::operator+(const Poly3& o) const {
  Poly3 out(std::max(nx_, o.nx_), std::max(ny_, o.ny_), std::max(nz_, o.nz_));
  for (int s = 0; s < nz_; ++s)
    for (int q = 0; q < ny_; ++q)
      for (int p = 0; p < nx_; ++p)
        out.add_coef(p, q, s, c_[index(p, q, s)]);
  for (int s = 0; s < o.nz_; ++s)
    for (int q = 0; q < o.ny_; ++q)
      for (int p = 0; p < o.nx_; ++p)
        out.add_coef(p, q, s, o.c_[o.index(p, q, s)]);
  return out;
}

Poly3 Poly3::operator-(const Poly3& o) const { return *this + o * -1.0; }

Poly3 Poly3::operator*(double s) const {
  Poly3 out = *this;
  for (double& v : out.c_) v *= s;
  return out;
}

Poly3 Poly3::derivative(int axis) const {
  const int n[3] = {nx_, ny_, nz_};
  if (n[axis] <= 1) return Poly3();
  Poly3 out(axis == 0 ? nx_ - 1 : nx_, axis == 1 ? ny_ - 1 : ny_,
            axis == 2 ? nz_ - 1 : nz_);
  for (int s = 0; s < nz_; ++s)
    for (int q = 0; q < ny_; ++q)
      for (int p = 0; p < nx_; ++p) {
        const double v = c_[index(p, q, s)];
        if (v == 0.0) continue;
        if (axis == 0 && p > 0) out.add_coef(p - 1, q, s, v * p);
        if (axis == 1 && q > 0) out.add_coef(p, q - 1, s, v * q);
        if (axis == 2 && s > 0) out.add_coef(p, q, s - 1, v * s);
      }
  return out;
}

double Poly3::integral_unit_cube() const {
  double sum = 0.0;
  for (int s = 0; s < nz_; s += 2)
    for (int q = 0; q < ny_; q += 2)
      for (int p = 0; p < nx_; p += 2)
        sum += c_[index(p, q, s)] * (2.0 / (p + 1)) * (2.0 / (q + 1)) *
               (2.0 / (s + 1));
  return sum;
}

double Poly3::max_abs_coef() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

bool Poly3::is_zero() const {
  for (double v : c_)
    if (v != 0.0) return false;
  return true;
}

Poly3 Poly3::swapped_xy() const {
  Poly3 out(ny_, nx_, nz_);
  for (int s = 0; s < nz_; ++s)
    for (int q = 0; q < ny_; ++q)
      for (int p = 0; p < nx_; ++p)
        out.set_coef(q, p, s, c_[index(p, q, s)]);
  return out;
}

}  // namespace restress
