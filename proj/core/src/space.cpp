#include "midpoint/space.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "midpoint/error.hpp"

namespace midpoint {

namespace {

void require_nonempty(std::size_t dim) {
  if (dim == 0) throw Error(ErrorCode::invalid_input, "vector dimension must be >= 1");
}

double max_abs(const Vector& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Vector::Vector(std::size_t dim, double fill) : coords_(dim, fill) {
  require_nonempty(dim);
}

Vector::Vector(std::initializer_list<double> coords) : coords_(coords) {
  require_nonempty(coords_.size());
}

Vector::Vector(std::vector<double> coords) : coords_(std::move(coords)) {
  require_nonempty(coords_.size());
}

bool Vector::is_finite() const noexcept {
  return std::all_of(coords_.begin(), coords_.end(),
                     [](double v) { return std::isfinite(v); });
}

Vector& Vector::operator+=(const Vector& rhs) {
  require_same_dim(*this, rhs, "vector addition");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

Vector& Vector::operator-=(const Vector& rhs) {
  require_same_dim(*this, rhs, "vector subtraction");
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

Vector& Vector::operator*=(double s) noexcept {
  for (double& v : coords_) v *= s;
  return *this;
}

Vector operator+(Vector lhs, const Vector& rhs) { return lhs += rhs; }
Vector operator-(Vector lhs, const Vector& rhs) { return lhs -= rhs; }
Vector operator-(Vector v) { return v *= -1.0; }
Vector operator*(double s, Vector v) { return v *= s; }
Vector operator*(Vector v, double s) { return v *= s; }

void require_same_dim(const Vector& x, const Vector& y, std::string_view where) {
  if (x.size() != y.size()) {
    throw Error(ErrorCode::invalid_input,
                std::string(where) + ": dimension mismatch (" +
                    std::to_string(x.size()) + " vs " + std::to_string(y.size()) + ")");
  }
}

void require_finite(const Vector& x, std::string_view where) {
  if (!x.is_finite()) {
    throw Error(ErrorCode::invalid_input, std::string(where) + ": non-finite coordinate");
  }
}

double NormSpec::dual_exponent() const {
  validate();
  if (is_max_norm()) return 1.0;
  return p / (p - 1.0);
}

void NormSpec::validate() const {
  if (!(p > 1.0)) {
    throw Error(ErrorCode::unsupported_norm,
                "norm exponent must lie in (1, inf], got " + std::to_string(p));
  }
}

double norm(const Vector& x, NormSpec spec) {
  spec.validate();
  require_finite(x, "norm");
  const double scale = max_abs(x);
  if (scale == 0.0 || spec.is_max_norm()) return scale;
  // Scaled by the largest magnitude so |x_i|^p cannot overflow.
  double sum = 0.0;
  if (spec.is_hilbert()) {
    for (double v : x) {
      const double r = v / scale;
      sum += r * r;
    }
    return scale * std::sqrt(sum);
  }
  for (double v : x) sum += std::pow(std::abs(v) / scale, spec.p);
  return scale * std::pow(sum, 1.0 / spec.p);
}

double distance(const Vector& x, const Vector& y, NormSpec spec) {
  require_same_dim(x, y, "distance");
  return norm(x - y, spec);
}

double inner(const Vector& x, const Vector& y) {
  require_same_dim(x, y, "inner");
  require_finite(x, "inner");
  require_finite(y, "inner");
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += x[i] * y[i];
  return sum;
}

Vector duality_map(const Vector& x, NormSpec spec) {
  spec.validate();
  if (spec.is_max_norm()) {
    throw Error(ErrorCode::unsupported_norm, "duality map is multivalued for the max norm");
  }
  require_finite(x, "duality_map");
  if (spec.is_hilbert()) return x;
  const double nx = norm(x, spec);
  Vector j(x.size());
  if (nx == 0.0) return j;
  // |x|^{2-p} |x_i|^{p-1} written as |x| (|x_i|/|x|)^{p-1}.
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double mag = nx * std::pow(std::abs(x[i]) / nx, spec.p - 1.0);
    j[i] = std::copysign(mag, x[i]);
    if (x[i] == 0.0) j[i] = 0.0;
  }
  return j;
}

}  // namespace midpoint
