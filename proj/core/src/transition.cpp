#include "camem/transition.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace camem {

namespace {
constexpr int kMaxTableArity = 20;

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  throw std::invalid_argument(std::string("invalid hex digit '") + c + "'");
}
}  // namespace

ThresholdRule full_majority_rule(int degree, bool include_self) {
  int arity = degree + (include_self ? 1 : 0);
  if (arity < 1)
    throw std::invalid_argument("majority rule needs at least one vote");
  if (arity % 2 == 0)
    throw std::invalid_argument(
        "majority rule needs an odd number of votes, got " + std::to_string(arity));
  return ThresholdRule{arity, (arity + 1) / 2};
}

bool eval_rule(const ThresholdRule& rule, std::span<const std::uint8_t> inputs) {
  if (static_cast<int>(inputs.size()) != rule.arity)
    throw std::invalid_argument("rule arity " + std::to_string(rule.arity) +
                                " does not match input count " +
                                std::to_string(inputs.size()));
  int ones = 0;
  for (std::uint8_t v : inputs) ones += (v != 0);
  return ones >= rule.ones_threshold;
}

BooleanTable BooleanTable::from_hex(int arity, const std::string& hex) {
  if (arity < 1 || arity > kMaxTableArity)
    throw std::invalid_argument("table arity must be in [1, " +
                                std::to_string(kMaxTableArity) + "]");
  std::size_t rows = std::size_t{1} << arity;
  std::size_t digits = std::max<std::size_t>(1, rows / 4);
  if (hex.size() != digits)
    throw std::invalid_argument("table for arity " + std::to_string(arity) +
                                " needs exactly " + std::to_string(digits) +
                                " hex digits, got " + std::to_string(hex.size()));
  BooleanTable t;
  t.arity = arity;
  t.bits.assign(rows, 0);
  // Digit 0 of the string is the most significant nibble of the table integer.
  for (std::size_t i = 0; i < hex.size(); ++i) {
    int nibble = hex_digit(hex[i]);
    std::size_t base = 4 * (hex.size() - 1 - i);
    for (int b = 0; b < 4; ++b) {
      std::size_t row = base + b;
      if (row < rows)
        t.bits[row] = (nibble >> b) & 1;
      else if ((nibble >> b) & 1)
        throw std::invalid_argument(
            "table hex encodes bits beyond the 2^arity rows");
    }
  }
  return t;
}

std::string BooleanTable::to_hex() const {
  std::size_t rows = bits.size();
  std::size_t digits = std::max<std::size_t>(1, rows / 4);
  std::string out(digits, '0');
  static const char* kDigits = "0123456789abcdef";
  for (std::size_t i = 0; i < digits; ++i) {
    std::size_t base = 4 * (digits - 1 - i);
    int nibble = 0;
    for (int b = 0; b < 4; ++b) {
      std::size_t row = base + b;
      if (row < rows && bits[row]) nibble |= 1 << b;
    }
    out[i] = kDigits[nibble];
  }
  return out;
}

BooleanTable table_from_threshold(const ThresholdRule& rule) {
  if (rule.arity < 1 || rule.arity > kMaxTableArity)
    throw std::invalid_argument("threshold arity out of table range");
  BooleanTable t;
  t.arity = rule.arity;
  std::size_t rows = std::size_t{1} << rule.arity;
  t.bits.assign(rows, 0);
  for (std::size_t x = 0; x < rows; ++x)
    t.bits[x] = std::popcount(x) >= rule.ones_threshold ? 1 : 0;
  return t;
}

RuleAnalysis analyze_boolean(const BooleanTable& table) {
  int n = table.arity;
  if (n < 1 || n > kMaxTableArity)
    throw std::invalid_argument("table arity out of range");
  std::size_t rows = std::size_t{1} << n;
  if (table.bits.size() != rows)
    throw std::invalid_argument("table size does not match its arity");

  RuleAnalysis out;
  std::uint32_t mask = static_cast<std::uint32_t>(rows - 1);

  out.monotone = true;
  for (std::uint32_t x = 0; x < rows && out.monotone; ++x)
    for (int j = 0; j < n; ++j)
      if (!(x >> j & 1) && table.bits[x] > table.bits[x | (1u << j)]) {
        out.monotone = false;
        break;
      }

  out.self_dual = true;
  for (std::uint32_t x = 0; x < rows; ++x)
    if (table.bits[x] == table.bits[mask ^ x]) {
      out.self_dual = false;
      break;
    }

  // force1[S] = AND of the table over all assignments extending "inputs in S
  // are pinned to 1"; computed as an AND-transform over the superset lattice.
  std::vector<std::uint8_t> force1(table.bits);
  for (int j = 0; j < n; ++j)
    for (std::uint32_t s = 0; s < rows; ++s)
      if (!(s >> j & 1)) force1[s] = force1[s] & force1[s | (1u << j)];

  // sub0[T] = AND of the negated table over all assignments below T; pinning
  // the complement of T to 0 forces output 0 iff sub0[T] holds.
  std::vector<std::uint8_t> sub0(rows);
  for (std::uint32_t x = 0; x < rows; ++x) sub0[x] = !table.bits[x];
  for (int j = 0; j < n; ++j)
    for (std::uint32_t s = 0; s < rows; ++s)
      if (s >> j & 1) sub0[s] = sub0[s] & sub0[s ^ (1u << j)];

  for (std::uint32_t s = 0; s < rows; ++s) {
    if (force1[s]) {
      int k = std::popcount(s);
      if (!out.one_threshold || k < *out.one_threshold) out.one_threshold = k;
    }
    if (sub0[s]) {
      int k = n - std::popcount(s);
      if (!out.zero_threshold || k < *out.zero_threshold) out.zero_threshold = k;
    }
  }
  return out;
}

}  // namespace camem
