#include "camem/rng.hpp"

#include <cmath>

namespace camem {
namespace {

inline void mul_hi_lo(std::uint32_t a, std::uint32_t b, std::uint32_t* hi,
                      std::uint32_t* lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  *hi = static_cast<std::uint32_t>(p >> 32);
  *lo = static_cast<std::uint32_t>(p);
}

inline std::array<std::uint32_t, 4> round_once(
    const std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  std::uint32_t hi0, lo0, hi1, lo1;
  mul_hi_lo(Philox4x32::kMulA, c[0], &hi0, &lo0);
  mul_hi_lo(Philox4x32::kMulB, c[2], &hi1, &lo1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> Philox4x32::block(std::array<std::uint32_t, 4> counter,
                                               std::array<std::uint32_t, 2> key) {
  for (int r = 0; r < kRounds; ++r) {
    if (r > 0) {
      key[0] += kWeylA;
      key[1] += kWeylB;
    }
    counter = round_once(counter, key);
  }
  return counter;
}

double uniform53(std::uint32_t hi, std::uint32_t lo) {
  std::uint64_t bits =
      (static_cast<std::uint64_t>(hi) << 21) ^ (static_cast<std::uint64_t>(lo) >> 11);
  return static_cast<double>(bits) * 0x1p-53;
}

bool bernoulli53(std::uint32_t hi, std::uint32_t lo, double rate) {
  if (rate <= 0.0) return false;
  if (rate >= 1.0) return true;
  std::uint64_t bits =
      (static_cast<std::uint64_t>(hi) << 21) ^ (static_cast<std::uint64_t>(lo) >> 11);
  auto threshold = static_cast<std::uint64_t>(std::llround(rate * 0x1p53));
  return bits < threshold;
}

}  // namespace camem
