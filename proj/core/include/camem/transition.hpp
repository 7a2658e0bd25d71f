#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace camem {

// Votes 1 iff at least ones_threshold of the arity inputs are 1.
struct ThresholdRule {
  int arity = 1;
  int ones_threshold = 1;
};

// Majority over a vertex's inputs; the vote count must be odd so there are
// no ties.  include_self adds the cell's own state to the vote.
ThresholdRule full_majority_rule(int degree, bool include_self);

bool eval_rule(const ThresholdRule& rule, std::span<const std::uint8_t> inputs);

// Explicit truth table on `arity` inputs; entry i is the output when the
// input assignment, read as a little-endian bit string, equals i.
struct BooleanTable {
  int arity = 0;
  std::vector<std::uint8_t> bits;  // size 1 << arity

  // Hex encoding of the table as a (2^arity)-bit integer, most significant
  // digit first: majority-of-3 is "e8".
  static BooleanTable from_hex(int arity, const std::string& hex);
  std::string to_hex() const;

  bool eval(std::uint32_t input_bits) const { return bits[input_bits] != 0; }
};

BooleanTable table_from_threshold(const ThresholdRule& rule);

struct RuleAnalysis {
  bool monotone = false;
  bool self_dual = false;
  // Least k such that some k inputs pinned to 0 (resp. 1) force the output,
  // whatever the remaining inputs do; empty when no pinning forces it.
  std::optional<int> zero_threshold;
  std::optional<int> one_threshold;
};

// Exhaustive rule analysis via subset/superset AND-transforms, O(arity * 2^arity).
RuleAnalysis analyze_boolean(const BooleanTable& table);

}  // namespace camem
