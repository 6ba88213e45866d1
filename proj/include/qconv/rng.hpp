#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>

namespace qconv {

// SplitMix64 step. One master seed plus a stream index yields independent,
// reproducible substreams; every stochastic routine in the library draws its
// randomness this way so a single recorded seed replays everything.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derive substream `stream` of the generator identified by `seed`.
inline std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  const std::uint64_t a = splitmix64(state);
  const std::uint64_t b = splitmix64(state);
  return std::mt19937_64(a ^ (b << 1));
}

// Matrix of independent standard complex Gaussians (unit-variance real and
// imaginary parts).
inline Eigen::MatrixXcd gaussian_complex_matrix(int rows, int cols,
                                                std::mt19937_64& gen) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXcd g(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = std::complex<double>(re, im);
    }
  }
  return g;
}

}  // namespace qconv
