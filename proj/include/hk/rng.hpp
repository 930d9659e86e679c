#pragma once

#include <cmath>
#include <cstdint>

namespace hk {

inline std::uint64_t splitmix64(std::uint64_t& s) {
  std::uint64_t z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256++ with a per-stream seeding scheme: the stream key
/// (seed, stream) fully determines the sequence, so path-level streams are
/// reproducible independently of worker count.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x1234567ULL);
    for (auto& w : state_) w = splitmix64(s);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on (0, 1), never returning 0.
  double uniform() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }

  double exponential() { return -std::log(uniform()); }

  /// Standard normal via a 128-layer ziggurat; one word draw per sample on
  /// the fast path, exact tail handling beyond x = 3.4426.
  double normal() {
    const Zig& z = zig();
    for (;;) {
      const std::uint64_t b = next();
      const int i = static_cast<int>(b & 127);
      const double u =
          (static_cast<double>(b >> 11) + 0.5) * 0x1.0p-52 - 1.0;  // (-1,1)
      if (std::fabs(u) < z.ratio[i]) return u * z.x[i];
      if (i == 0) {
        // Tail: exponential rejection past the base layer edge.
        double xt, yt;
        do {
          xt = -std::log(uniform()) / z.x[1];
          yt = -std::log(uniform());
        } while (yt + yt < xt * xt);
        return u < 0.0 ? -(z.x[1] + xt) : z.x[1] + xt;
      }
      const double val = u * z.x[i];
      const double f0 = std::exp(0.5 * (val * val - z.x[i] * z.x[i]));
      const double f1 = std::exp(0.5 * (val * val - z.x[i + 1] * z.x[i + 1]));
      if (f1 + uniform() * (f0 - f1) < 1.0) return val;
    }
  }

 private:
  struct Zig {
    double x[129];
    double ratio[128];
    Zig() {
      constexpr double r = 3.442619855899;  // base layer edge
      constexpr double v = 9.91256303526217e-3;  // per-layer area
      x[0] = v / std::exp(-0.5 * r * r);
      x[1] = r;
      x[128] = 0.0;
      for (int i = 2; i < 128; ++i)
        x[i] = std::sqrt(-2.0 * std::log(v / x[i - 1] +
                                         std::exp(-0.5 * x[i - 1] * x[i - 1])));
      for (int i = 0; i < 128; ++i) ratio[i] = x[i + 1] / x[i];
    }
  };
  static const Zig& zig() {
    static const Zig z;
    return z;
  }
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

}  // namespace hk
