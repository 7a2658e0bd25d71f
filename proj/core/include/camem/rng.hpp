#pragma once

#include <array>
#include <cstdint>

namespace camem {

// Counter-based generator: the random block is a pure function of
// (counter, key), so any (cell, step, replicate) coordinate can be hashed
// independently of evaluation order.  That keeps multi-threaded Monte Carlo
// sweeps bit-identical to single-threaded runs.
struct Philox4x32 {
  static constexpr std::uint32_t kMulA = 0xD2511F53u;
  static constexpr std::uint32_t kMulB = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeylA = 0x9E3779B9u;
  static constexpr std::uint32_t kWeylB = 0xBB67AE85u;
  static constexpr int kRounds = 10;

  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);
};

// Uniform double in [0,1) with 53 random bits drawn from two 32-bit lanes.
double uniform53(std::uint32_t hi, std::uint32_t lo);

// Bernoulli(rate) decided by comparing the 53-bit draw against a fixed
// integer threshold; quantization error of the rate is below 2^-53.
bool bernoulli53(std::uint32_t hi, std::uint32_t lo, double rate);

}  // namespace camem
