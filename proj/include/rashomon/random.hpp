#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

#include <Eigen/Core>

namespace rashomon {

/// Seed used whenever the caller does not supply one. Never taken from entropy.
inline constexpr std::uint64_t kDefaultSeed = 20240917;

constexpr std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Xoshiro256 {
public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed = kDefaultSeed) {
    std::uint64_t sm = seed;
    for (auto& word : s_) word = splitmix64(sm);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  std::array<std::uint64_t, 4> s_{};
};

/// Named stream tags, so unrelated consumers of one seed never share draws.
enum class Stream : std::uint64_t {
  classifier_draw = 1,
  sweep_point = 2,
  dataset_shuffle = 3,
  tarp_direction = 4,
  mixture_sample = 5,
  simulation = 6,
};

/// Counter-based substream: a pure function of (seed, stream, index).
/// Results built on it do not depend on how work is split among threads.
inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index) {
  std::uint64_t state = seed;
  std::uint64_t h = splitmix64(state);
  state = h ^ (static_cast<std::uint64_t>(stream) * 0xd1b54a32d192ed03ULL);
  h = splitmix64(state);
  state = h ^ index;
  return splitmix64(state);
}

inline Xoshiro256 substream(std::uint64_t seed, Stream stream, std::uint64_t index) {
  return Xoshiro256(derive_seed(seed, stream, index));
}

template <typename Scalar = double, typename Rng>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> standard_normal_vector(Rng& rng, Eigen::Index size) {
  std::normal_distribution<Scalar> normal(Scalar(0), Scalar(1));
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(size);
  for (Eigen::Index i = 0; i < size; ++i) v(i) = normal(rng);
  return v;
}

/// Uniform point on the unit sphere S^{size-1} via normalized Gaussians.
template <typename Scalar = double, typename Rng>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> uniform_unit_vector(Rng& rng, Eigen::Index size) {
  for (;;) {
    auto v = standard_normal_vector<Scalar>(rng, size);
    const Scalar norm = v.norm();
    if (norm > Scalar(0)) return v / norm;
  }
}

}  // namespace rashomon
