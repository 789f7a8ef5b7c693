#include "midpoint/mappings.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "midpoint/error.hpp"

namespace midpoint {

namespace envelopes {
Envelope unit() {
  return [](long) { return 1.0; };
}
Envelope geometric() {
  return [](long n) { return 1.0 + std::ldexp(1.0, static_cast<int>(-std::min(n, 2000L))); };
}
Envelope harmonic() {
  return [](long n) { return 1.0 + 1.0 / static_cast<double>(n); };
}
Envelope power_of(double base) {
  return [base](long n) { return std::pow(base, static_cast<double>(n)); };
}
}  // namespace envelopes

namespace {

void require_positive_power(long n) {
  if (n < 1) {
    throw Error(ErrorCode::invalid_input, "power exponent must be >= 1, got " + std::to_string(n));
  }
}

// Augmented (d+1)x(d+1) matrix [[A, b], [0, 1]] so that powers carry the
// accumulated shift sum_{j<n} A^j b in the last column.
Matrix augmented(const Matrix& A, const Eigen::VectorXd& b) {
  const auto d = A.rows();
  Matrix M = Matrix::Zero(d + 1, d + 1);
  M.topLeftCorner(d, d) = A;
  M.topRightCorner(d, 1) = b;
  M(d, d) = 1.0;
  return M;
}

Matrix matrix_power(Matrix base, long n) {
  Matrix result = Matrix::Identity(base.rows(), base.cols());
  while (n > 0) {
    if (n & 1L) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

}  // namespace

Mapping::Mapping(std::string name, std::size_t dim, Operator apply, Envelope envelope,
                 PowerFactory power)
    : name_(std::move(name)),
      dim_(dim),
      apply_(std::move(apply)),
      envelope_(std::move(envelope)),
      power_(std::move(power)) {
  if (dim_ == 0) throw Error(ErrorCode::invalid_input, "mapping dimension must be >= 1");
  if (!apply_) throw Error(ErrorCode::invalid_input, "mapping requires an apply function");
  if (!envelope_) envelope_ = envelopes::unit();
}

Vector Mapping::apply(const Vector& u) const {
  if (u.size() != dim_) {
    throw Error(ErrorCode::invalid_input,
                name_ + ": expected dimension " + std::to_string(dim_) + ", got " +
                    std::to_string(u.size()));
  }
  return apply_(u);
}

Mapping::Operator Mapping::power(long n, long composition_cap) const {
  require_positive_power(n);
  if (power_) {
    auto op = power_(n);
    return [this_dim = dim_, name = name_, op = std::move(op)](const Vector& u) {
      if (u.size() != this_dim) {
        throw Error(ErrorCode::invalid_input, name + ": dimension mismatch in power");
      }
      return op(u);
    };
  }
  if (n > composition_cap) {
    throw Error(ErrorCode::power_cap_exceeded,
                name_ + " has no closed-form power; T^" + std::to_string(n) +
                    " exceeds the composition cap " + std::to_string(composition_cap),
                n);
  }
  return [self = *this, n](const Vector& u) {
    Vector y = self.apply(u);
    for (long i = 1; i < n; ++i) y = self.apply(y);
    return y;
  };
}

Vector Mapping::apply_power(long n, const Vector& u, long composition_cap) const {
  return power(n, composition_cap)(u);
}

double Mapping::envelope(long n) const {
  require_positive_power(n);
  return envelope_(n);
}

Mapping Mapping::with_envelope(Envelope envelope) const {
  Mapping copy = *this;
  copy.envelope_ = envelope ? std::move(envelope) : envelopes::unit();
  return copy;
}

bool in_flip_fixed_region(const Vector& u) {
  if (u.size() != 2) throw Error(ErrorCode::invalid_input, "flip map is defined on R^2");
  return u[0] * u[1] < 0.0;
}

Mapping make_flip_map(Envelope envelope) {
  auto apply = [](const Vector& u) {
    return in_flip_fixed_region(u) ? u : -u;
  };
  auto power = [](long n) -> Mapping::Operator {
    const bool even = (n % 2) == 0;
    return [even](const Vector& u) {
      if (in_flip_fixed_region(u) || even) return u;
      return -u;
    };
  };
  return Mapping("flip", 2, std::move(apply), std::move(envelope), std::move(power));
}

Mapping make_affine(Matrix A, Vector b, Envelope envelope) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorCode::invalid_input, "affine mapping needs a square matrix");
  }
  if (static_cast<std::size_t>(A.rows()) != b.size()) {
    throw Error(ErrorCode::invalid_input, "affine mapping: A and b dimensions differ");
  }
  if (!A.allFinite()) throw Error(ErrorCode::invalid_input, "affine mapping: non-finite A");
  require_finite(b, "affine mapping");
  if (!envelope) envelope = envelopes::power_of(std::max(1.0, spectral_norm_estimate(A)));

  auto shared = std::make_shared<const AffineParts>(AffineParts{A, b});
  auto apply = [shared](const Vector& u) {
    return from_eigen(shared->A * to_eigen(u) + to_eigen(shared->b));
  };
  auto power = [shared](long n) -> Mapping::Operator {
    const auto d = shared->A.rows();
    const Matrix Mn = matrix_power(augmented(shared->A, to_eigen(shared->b)), n);
    Matrix An = Mn.topLeftCorner(d, d);
    Eigen::VectorXd shift = Mn.topRightCorner(d, 1);
    return [An = std::move(An), shift = std::move(shift)](const Vector& u) {
      return from_eigen(An * to_eigen(u) + shift);
    };
  };
  const auto dim = static_cast<std::size_t>(A.rows());
  Mapping m("affine", dim, std::move(apply), std::move(envelope), std::move(power));
  m.affine_ = AffineParts{std::move(A), std::move(b)};
  return m;
}

Contraction make_contraction_half() { return make_scaling_contraction(0.5); }

Contraction make_scaling_contraction(double alpha) {
  if (!(alpha >= 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::invalid_input, "contraction constant must lie in [0, 1)");
  }
  return Contraction{[alpha](const Vector& x) { return alpha * x; }, alpha};
}

double spectral_norm_estimate(const Matrix& A, int max_iters, double tol) {
  if (A.size() == 0) return 0.0;
  const Matrix G = A.transpose() * A;
  const auto d = A.cols();

  auto iterate_from = [&](Eigen::VectorXd v) {
    double lambda = 0.0;
    for (int it = 0; it < max_iters; ++it) {
      Eigen::VectorXd w = G * v;
      const double nw = w.norm();
      if (nw == 0.0) return 0.0;
      const double next = v.dot(w);
      v = w / nw;
      const bool settled = it > 0 && std::abs(next - lambda) <= tol * std::abs(next);
      lambda = next;
      if (settled) break;
    }
    return std::sqrt(std::max(lambda, 0.0));
  };

  Eigen::VectorXd start(d);
  for (Eigen::Index i = 0; i < d; ++i) start(i) = 1.0 + 0.6180339887 * static_cast<double>(i);
  double sigma = iterate_from(start.normalized());
  if (sigma == 0.0 && !A.isZero(0.0)) {
    // Start vector landed in the kernel of A; retry from each basis vector.
    for (Eigen::Index i = 0; i < d; ++i) {
      sigma = std::max(sigma, iterate_from(Eigen::VectorXd::Unit(d, i)));
    }
  }
  return sigma;
}

EnvelopeReport verify_envelope(const Mapping& T, long n_max, std::size_t samples,
                               std::uint64_t seed, const SampleDomain& domain,
                               NormSpec norm_spec) {
  if (n_max < 1 || samples < 1) {
    throw Error(ErrorCode::invalid_input, "verify_envelope needs n_max >= 1 and samples >= 1");
  }
  if (domain.direction && domain.direction->size() != T.dim()) {
    throw Error(ErrorCode::invalid_input, "sample direction has the wrong dimension");
  }
  constexpr double kMinSeparation = 1e-9;
  constexpr double kPassSlack = 1e-10;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-domain.radius, domain.radius);
  auto draw = [&] {
    if (domain.direction) return coord(rng) * *domain.direction;
    Vector u(T.dim());
    for (std::size_t i = 0; i < T.dim(); ++i) u[i] = coord(rng);
    return u;
  };

  std::vector<std::pair<Vector, Vector>> pairs;
  pairs.reserve(samples);
  EnvelopeReport report;
  for (std::size_t s = 0; s < samples; ++s) {
    Vector u = draw();
    Vector v = draw();
    if (distance(u, v, norm_spec) < kMinSeparation) {
      ++report.pairs_skipped;
      continue;
    }
    pairs.emplace_back(std::move(u), std::move(v));
  }
  report.pairs_checked = pairs.size();
  report.max_excess = -std::numeric_limits<double>::infinity();
  report.excess_by_n.assign(static_cast<std::size_t>(n_max),
                            -std::numeric_limits<double>::infinity());

  for (long n = 1; n <= n_max; ++n) {
    const auto Tn = T.power(n);
    const double kn = T.envelope(n);
    double& slot = report.excess_by_n[static_cast<std::size_t>(n - 1)];
    for (const auto& [u, v] : pairs) {
      const double ratio = distance(Tn(u), Tn(v), norm_spec) / distance(u, v, norm_spec);
      const double excess = ratio - kn;
      slot = std::max(slot, excess);
      if (excess > report.max_excess) {
        report.max_excess = excess;
        report.worst_n = n;
        report.worst_u = u;
        report.worst_v = v;
      }
    }
  }
  report.passed = report.pairs_checked > 0 && report.max_excess <= kPassSlack;
  return report;
}

Matrix to_matrix(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::invalid_input, "matrix has no rows");
  const auto cols = rows.front().size();
  Matrix M(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw Error(ErrorCode::invalid_input, "ragged matrix rows");
    for (std::size_t j = 0; j < cols; ++j) {
      M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return M;
}

Eigen::VectorXd to_eigen(const Vector& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.coords().data(), static_cast<Eigen::Index>(v.size()));
}

Vector from_eigen(const Eigen::VectorXd& v) {
  return Vector(std::vector<double>(v.data(), v.data() + v.size()));
}

}  // namespace midpoint
