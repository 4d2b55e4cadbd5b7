#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>

namespace mmf {

using Seed = std::uint64_t;

inline std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Independent sub-streams of one user seed.
enum class StreamTag : std::uint64_t { component = 1, dense = 2, initial = 3, path = 4, driver = 5 };

/// Deterministic subseed hash(seed, tag, index).
inline Seed derive_seed(Seed seed, StreamTag tag, std::uint64_t index) noexcept {
  std::uint64_t h = splitmix64(seed);
  h = splitmix64(h ^ static_cast<std::uint64_t>(tag));
  return splitmix64(h ^ (index * 0xD6E8FEB86659FD93ull));
}

/// Standard normal variates from mt19937_64 by Box-Muller; the transform is
/// written out so that the sequence does not depend on the standard library.
class GaussianStream {
 public:
  explicit GaussianStream(Seed seed) : gen_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    constexpr double k53 = 1.0 / 9007199254740992.0;
    const double u1 = (static_cast<double>(gen_() >> 11) + 1.0) * k53;  // (0, 1]
    const double u2 = static_cast<double>(gen_() >> 11) * k53;          // [0, 1)
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  template <class Derived>
  void fill(Eigen::MatrixBase<Derived>& out) {
    for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = next();
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace mmf
