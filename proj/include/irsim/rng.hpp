#pragma once

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

namespace irsim {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Substream key derived from a master seed and a path of integer tags,
// e.g. (scheme, point, instance, link). Order of tags matters.
inline std::uint64_t substream_key(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = splitmix64(seed);
  for (auto t : tags) h = splitmix64(h ^ splitmix64(t + 0x632be59bd9b4e019ULL));
  return h;
}

class Rng {
 public:
  using result_type = std::mt19937_64::result_type;

  explicit Rng(std::uint64_t key) : eng_(key) {}
  Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags) : eng_(substream_key(seed, tags)) {}

  static constexpr result_type min() { return std::mt19937_64::min(); }
  static constexpr result_type max() { return std::mt19937_64::max(); }
  result_type operator()() { return eng_(); }

  double uniform() { return uni_(eng_); }
  double uniform(double a, double b) { return a + (b - a) * uni_(eng_); }
  std::complex<double> unit_phasor() {
    const double p = phase();
    return {std::cos(p), std::sin(p)};
  }
  double normal() { return norm_(eng_); }
  // Circularly symmetric complex Gaussian with E|z|^2 = var.
  std::complex<double> cn(double var) {
    const double s = std::sqrt(0.5 * var);
    const double re = norm_(eng_);
    const double im = norm_(eng_);
    return {s * re, s * im};
  }
  double phase() { return uniform(0.0, 2.0 * M_PI); }

 private:
  std::mt19937_64 eng_;
  // Boost distributions: same output on every platform (std:: ones are implementation-defined).
  boost::random::uniform_01<double> uni_;
  boost::random::normal_distribution<double> norm_{0.0, 1.0};
};

}  // namespace irsim
