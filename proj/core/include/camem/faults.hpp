#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "camem/lattice.hpp"

namespace camem {

enum class FaultModel { pure_probabilistic, adversarial };

std::string to_string(FaultModel model);
FaultModel fault_model_from_string(const std::string& s);

// alpha: transient faults, i.i.d. over (cell, time).  beta: manufacturing
// faults, i.i.d. over cells, ceding the cell to the adversary for all time.
// The combined rate epsilon = 1 - (1-alpha)(1-beta) is always derived, never
// stored.  remembered_bit is the value the memory is defending.
struct FaultSpec {
  FaultModel model = FaultModel::pure_probabilistic;
  double alpha = 0.0;
  double beta = 0.0;
  int remembered_bit = 0;

  double epsilon() const { return 1.0 - (1.0 - alpha) * (1.0 - beta); }
  double xi() const { return 0.5 - epsilon(); }

  // Throws unless rates are in range and pure_probabilistic has beta = 0.
  void validate() const;
};

double combined_rate(double alpha, double beta);

// Deterministic fault oracle for one replicate: a fixed manufacturing set
// plus a counter-based transient bit per (cell, time).
class FaultRealization {
 public:
  FaultRealization(const FaultSpec& spec, std::size_t vertex_count,
                   std::uint64_t seed, std::uint32_t replicate);

  bool manufacturing(std::uint32_t vertex) const {
    return manufacturing_[vertex] != 0;
  }
  // Transient fault applied to the value produced at time t (t >= 1).
  bool transient(std::uint32_t vertex, std::uint32_t t) const;

  const std::vector<std::uint8_t>& manufacturing_set() const {
    return manufacturing_;
  }

 private:
  double alpha_;
  std::uint64_t seed_;
  std::uint32_t replicate_;
  std::vector<std::uint8_t> manufacturing_;
};

std::vector<std::uint32_t> sample_manufacturing(const Lattice& lattice, double beta,
                                                std::uint64_t seed,
                                                std::uint32_t replicate = 0);

// pure_probabilistic: fault complements the computed bit (mfg must be false).
// adversarial: any fault or manufacturing defect forces 1 - remembered_bit;
// for monotone rules started at all-a the greedy choice is optimal.
int apply_fault(int computed, bool fault, bool mfg, const FaultSpec& spec);

}  // namespace camem
