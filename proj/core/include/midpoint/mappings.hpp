#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "midpoint/space.hpp"

namespace midpoint {

using Matrix = Eigen::MatrixXd;

/// The asymptotic envelope n -> k_n of a mapping (or schedule).
using Envelope = std::function<double(long)>;

namespace envelopes {
Envelope unit();                 // k_n = 1
Envelope geometric();            // k_n = 1 + 2^-n
Envelope harmonic();             // k_n = 1 + 1/n
Envelope power_of(double base);  // k_n = base^n
}  // namespace envelopes

/// Coefficients of u -> A u + b.
struct AffineParts {
  Matrix A;
  Vector b;
};

/// An operator T on R^d together with its powers and envelope {k_n}.
///
/// Immutable after construction; copies share the captured state.
class Mapping {
 public:
  using Operator = std::function<Vector(const Vector&)>;
  /// Builds the closed-form operator for T^n.
  using PowerFactory = std::function<Operator(long)>;

  static constexpr long kDefaultCompositionCap = 1000;

  Mapping(std::string name, std::size_t dim, Operator apply, Envelope envelope,
          PowerFactory power = {});

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return dim_; }
  bool has_closed_form_power() const noexcept { return static_cast<bool>(power_); }
  const std::optional<AffineParts>& affine() const noexcept { return affine_; }

  Vector apply(const Vector& u) const;

  /// Operator for T^n (n >= 1). Uses the closed form when there is one,
  /// otherwise n-fold composition, refused beyond `composition_cap`.
  Operator power(long n, long composition_cap = kDefaultCompositionCap) const;

  Vector apply_power(long n, const Vector& u,
                     long composition_cap = kDefaultCompositionCap) const;

  double envelope(long n) const;

  Mapping with_envelope(Envelope envelope) const;

 private:
  friend Mapping make_affine(Matrix, Vector, Envelope);

  std::string name_;
  std::size_t dim_;
  Operator apply_;
  Envelope envelope_;
  PowerFactory power_;
  std::optional<AffineParts> affine_;
};

/// The viscosity anchor f with contraction constant alpha in [0, 1).
struct Contraction {
  Mapping::Operator apply;
  double alpha = 0.0;

  Vector operator()(const Vector& x) const { return apply(x); }
};

/// u1 u2 < 0: the open region of R^2 that the flip map leaves fixed.
bool in_flip_fixed_region(const Vector& u);

/// Tu = u if u1 u2 < 0, Tu = -u otherwise (axes included). T^n has the
/// closed form u or (-1)^n u accordingly.
Mapping make_flip_map(Envelope envelope = envelopes::geometric());

/// u -> A u + b. Without an explicit envelope, k_n = max(1, |A|_2)^n.
Mapping make_affine(Matrix A, Vector b, Envelope envelope = {});

/// f(x) = x / 2, alpha = 1/2.
Contraction make_contraction_half();
/// f(x) = alpha x.
Contraction make_scaling_contraction(double alpha);

/// Largest singular value of A by power iteration on A^T A.
double spectral_norm_estimate(const Matrix& A, int max_iters = 500, double tol = 1e-14);

/// Where verify_envelope draws its sample pairs: the box [-radius, radius]^d,
/// or the line t * direction with t in [-radius, radius] when a direction is
/// given.
struct SampleDomain {
  double radius = 2.0;
  std::optional<Vector> direction;
};

struct EnvelopeReport {
  bool passed = false;
  /// max over n <= n_max of (max sampled ratio |T^n u - T^n v| / |u - v| - k_n)
  double max_excess = 0.0;
  long worst_n = 0;
  /// excess_by_n[n-1] for n = 1..n_max
  std::vector<double> excess_by_n;
  std::size_t pairs_checked = 0;
  std::size_t pairs_skipped = 0;
  std::optional<Vector> worst_u;
  std::optional<Vector> worst_v;
};

/// Samples random pairs and checks |T^n u - T^n v| <= k_n |u - v|; passes iff
/// the largest excess is at most 1e-10. Pairs closer than 1e-9 are skipped.
EnvelopeReport verify_envelope(const Mapping& T, long n_max, std::size_t samples,
                               std::uint64_t seed, const SampleDomain& domain = {},
                               NormSpec norm_spec = {});

Matrix to_matrix(const std::vector<std::vector<double>>& rows);
Eigen::VectorXd to_eigen(const Vector& v);
Vector from_eigen(const Eigen::VectorXd& v);

}  // namespace midpoint
