#pragma once

// Counter-based random streams (Philox4x32-10). A stream is identified by
// (master_seed, stream_id); the same pair always yields the same sequence,
// independent of which thread consumes it.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <type_traits>

namespace grothnorm {

class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
      : master_seed_(master_seed), stream_id_(stream_id) {}

  /// A child stream whose id is derived from this stream's id and `index`.
  RngStream substream(std::uint64_t index) const { return {master_seed_, mix(stream_id_ * 0x9E3779B97F4A7C15ULL + index + 1)}; }

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    if (buffered_ == 0) refill();
    --buffered_;
    const std::uint64_t hi = block_[2 * buffered_ + 1];
    const std::uint64_t lo = block_[2 * buffered_];
    return (hi << 32) | lo;
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard normal (Box-Muller).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do u1 = uniform();
    while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
  }

  /// Circularly symmetric complex normal with E|z|^2 = 1.
  std::complex<double> complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  template <class Scalar>
  Scalar gaussian() {
    if constexpr (std::is_same_v<Scalar, double>)
      return normal();
    else
      return complex_normal();
  }

  template <class Scalar>
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> gaussian_vector(int dim) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(dim);
    for (int i = 0; i < dim; ++i) v(i) = gaussian<Scalar>();
    return v;
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
  }

  void refill() {
    std::array<std::uint32_t, 4> c = {static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
                                      static_cast<std::uint32_t>(stream_id_),
                                      static_cast<std::uint32_t>(stream_id_ >> 32)};
    std::array<std::uint32_t, 2> k = {static_cast<std::uint32_t>(master_seed_),
                                      static_cast<std::uint32_t>(master_seed_ >> 32)};
    for (int round = 0; round < 10; ++round) {
      std::uint32_t hi0, lo0, hi1, lo1;
      mulhilo(0xD2511F53u, c[0], hi0, lo0);
      mulhilo(0xCD9E8D57u, c[2], hi1, lo1);
      c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    block_ = c;
    buffered_ = 2;
    ++counter_;
  }

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> block_{};
  int buffered_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace grothnorm
