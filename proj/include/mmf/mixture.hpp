#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mmf {

/// Hurst index, strictly inside (0, 1).
class HurstIndex {
 public:
  /// Throws DomainError unless 0 < value < 1.
  explicit HurstIndex(double value);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_;
};

/// One fBm component sigma * B^H of the mixture.
struct Component {
  double sigma = 1.0;
  double hurst = 0.5;

  friend bool operator==(const Component&, const Component&) = default;
};

/// Finite mixture {(sigma_k, H_k)} with an optional mean-reversion rate.
///
/// Construction stores the values as given; use validate_spec() to check
/// them, or require_valid() where an operation needs a well-formed model.
class MixtureSpec {
 public:
  MixtureSpec() = default;
  explicit MixtureSpec(std::vector<Component> components,
                       std::optional<double> lambda = std::nullopt)
      : components_(std::move(components)), lambda_(lambda) {}

  const std::vector<Component>& components() const noexcept { return components_; }
  std::size_t size() const noexcept { return components_.size(); }
  const std::optional<double>& lambda() const noexcept { return lambda_; }

  /// Minimum / maximum Hurst index over the components (NaN if empty).
  double h_inf() const noexcept;
  double h_sup() const noexcept;
  /// Sum of sigma_k^2.
  double sigma_sq_sum() const noexcept;

  MixtureSpec with_lambda(std::optional<double> lambda) const {
    return MixtureSpec(components_, lambda);
  }
  /// Multiplies every sigma by c.
  MixtureSpec scaled(double c) const;

  friend bool operator==(const MixtureSpec&, const MixtureSpec&) = default;

 private:
  std::vector<Component> components_;
  std::optional<double> lambda_;
};

enum class Assumption {
  non_empty,
  sigma_positive,          // every sigma_k finite and > 0
  square_summable,         // sum sigma_k^2 < infinity
  hurst_bounds,            // 0 < H_inf <= H_sup < 1
  hurst_distinct,          // H_k != H_l for k != l
  lambda_positive,
};

std::string_view to_string(Assumption a) noexcept;

struct Violation {
  Assumption assumption;
  std::size_t index;  // offending component (0-based); 0 for model-level checks
  std::string detail;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  /// One line per violation: "<assumption>: <detail>".
  std::string message() const;
};

/// Checks every standing assumption on the mixture; never throws.
ValidationReport validate_spec(const MixtureSpec& spec);

/// Throws ParameterError carrying validate_spec()'s message when the spec is invalid.
void require_valid(const MixtureSpec& spec);

/// Same, additionally requiring a positive lambda to be present.
double require_lambda(const MixtureSpec& spec);

enum class ScheduleKind { harmonic, factorial, exponential };

std::string_view to_string(ScheduleKind k) noexcept;
ScheduleKind parse_schedule_kind(std::string_view name);

/// Parametric volatility schedule with an equidistant Hurst grid.
///
/// sigma_i = i^{-decay} (harmonic), 1/i! (factorial) or exp(-decay * i)
/// (exponential); decay defaults to 1, which gives the classical schedules.
struct ScheduleFamily {
  ScheduleKind kind = ScheduleKind::harmonic;
  double h_lo = 0.1;
  double h_hi = 0.9;
  int count = 10;
  double decay = 1.0;
};

/// sigma_i for i >= 1.
double schedule_sigma(const ScheduleFamily& family, int i);

/// count components with H_i = h_lo + (i-1)(h_hi-h_lo)/(count-1).
MixtureSpec make_schedule(const ScheduleFamily& family);

struct TruncationReport {
  int retained = 0;
  double tail_bound = 0.0;  // max{1, T^3} * bound on sum_{k>K} sigma_k^2
  double horizon = 0.0;
};

/// Hurst index of the k-th component of the infinite family:
/// H_k = h_lo + (h_hi - h_lo)(1 - 1/k), distinct, with H_1 = h_lo.
double infinite_schedule_hurst(const ScheduleFamily& family, int k);

/// Bound on sum_{k>K} sigma_k^2 for the infinite family.
double schedule_tail_sum(const ScheduleFamily& family, int retained);

/// Smallest K >= 1 with max{1,T^3} * tail(K) <= eps, and the first K
/// components of the infinite family. Throws ParameterError for non-square-
/// summable schedules (harmonic with decay <= 1/2, exponential with decay <= 0).
std::pair<MixtureSpec, TruncationReport> truncate_schedule(const ScheduleFamily& family,
                                                           double eps, double horizon);

}  // namespace mmf
