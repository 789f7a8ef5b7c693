#pragma once

#include <cstddef>
#include <initializer_list>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

namespace midpoint {

/// A point of a finite-dimensional real normed space.
///
/// The dimension is fixed at construction (at least 1). Arithmetic between
/// vectors of different dimension throws `ErrorCode::invalid_input`.
class Vector {
 public:
  explicit Vector(std::size_t dim, double fill = 0.0);
  Vector(std::initializer_list<double> coords);
  explicit Vector(std::vector<double> coords);

  std::size_t size() const noexcept { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  double& operator[](std::size_t i) { return coords_[i]; }

  std::span<const double> coords() const noexcept { return coords_; }
  const std::vector<double>& to_std() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  bool is_finite() const noexcept;

  Vector& operator+=(const Vector& rhs);
  Vector& operator-=(const Vector& rhs);
  Vector& operator*=(double s) noexcept;

  friend bool operator==(const Vector&, const Vector&) = default;

 private:
  std::vector<double> coords_;
};

Vector operator+(Vector lhs, const Vector& rhs);
Vector operator-(Vector lhs, const Vector& rhs);
Vector operator-(Vector v);
Vector operator*(double s, Vector v);
Vector operator*(Vector v, double s);

void require_same_dim(const Vector& x, const Vector& y, std::string_view where);
void require_finite(const Vector& x, std::string_view where);

/// Exponent of an l^p norm, p in (1, inf]. p = 2 is the Hilbert case.
struct NormSpec {
  double p = 2.0;

  static constexpr double infinity = std::numeric_limits<double>::infinity();

  bool is_hilbert() const noexcept { return p == 2.0; }
  bool is_max_norm() const noexcept { return p == infinity; }
  /// Conjugate exponent q = p / (p - 1).
  double dual_exponent() const;
  /// Throws unsupported-norm unless p in (1, inf].
  void validate() const;
};

double norm(const Vector& x, NormSpec spec = {});
double distance(const Vector& x, const Vector& y, NormSpec spec = {});
double inner(const Vector& x, const Vector& y);

/// Normalized duality mapping of l^p, 1 < p < inf:
/// J(x)_i = |x|_p^{2-p} |x_i|^{p-1} sign(x_i), J(0) = 0.
/// Satisfies <x, J(x)> = |x|_p^2 and |J(x)|_q = |x|_p.
Vector duality_map(const Vector& x, NormSpec spec = {});

}  // namespace midpoint
