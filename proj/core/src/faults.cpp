#include <stdexcept>

#include "camem/faults.hpp"
#include "camem/rng.hpp"

namespace camem {

namespace {

// Counter layout (vertex, time, replicate, domain); domain 0 draws transient
// faults, domain 1 draws manufacturing defects, so the two streams never
// collide for any coordinate.
std::array<std::uint32_t, 4> draw(std::uint32_t vertex, std::uint32_t t,
                                  std::uint32_t replicate, std::uint32_t domain,
                                  std::uint64_t seed) {
  return Philox4x32::block(
      {vertex, t, replicate, domain},
      {static_cast<std::uint32_t>(seed & 0xffffffffu),
       static_cast<std::uint32_t>(seed >> 32)});
}

void require_rate(double rate, const char* name) {
  if (!(rate >= 0.0 && rate <= 1.0))
    throw std::invalid_argument(std::string(name) + " must lie in [0,1]");
}

}  // namespace

std::string to_string(FaultModel model) {
  switch (model) {
    case FaultModel::pure_probabilistic: return "pure_probabilistic";
    case FaultModel::adversarial: return "adversarial";
  }
  throw std::logic_error("unknown fault model");
}

FaultModel fault_model_from_string(const std::string& s) {
  if (s == "pure_probabilistic") return FaultModel::pure_probabilistic;
  if (s == "adversarial") return FaultModel::adversarial;
  throw std::invalid_argument("unknown fault model '" + s + "'");
}

void FaultSpec::validate() const {
  require_rate(alpha, "alpha");
  require_rate(beta, "beta");
  if (remembered_bit != 0 && remembered_bit != 1)
    throw std::invalid_argument("remembered_bit must be 0 or 1");
  if (model == FaultModel::pure_probabilistic && beta != 0.0)
    throw std::invalid_argument(
        "pure_probabilistic leaves no adversary to exploit manufacturing "
        "faults; beta must be 0");
}

double combined_rate(double alpha, double beta) {
  require_rate(alpha, "alpha");
  require_rate(beta, "beta");
  return 1.0 - (1.0 - alpha) * (1.0 - beta);
}

FaultRealization::FaultRealization(const FaultSpec& spec,
                                   std::size_t vertex_count, std::uint64_t seed,
                                   std::uint32_t replicate)
    : alpha_(spec.alpha), seed_(seed), replicate_(replicate),
      manufacturing_(vertex_count, 0) {
  spec.validate();
  if (spec.beta > 0.0)
    for (std::size_t v = 0; v < vertex_count; ++v) {
      auto b = draw(static_cast<std::uint32_t>(v), 0, replicate, 1, seed);
      manufacturing_[v] = bernoulli53(b[0], b[1], spec.beta) ? 1 : 0;
    }
}

bool FaultRealization::transient(std::uint32_t vertex, std::uint32_t t) const {
  if (alpha_ == 0.0) return false;
  auto b = draw(vertex, t, replicate_, 0, seed_);
  return bernoulli53(b[0], b[1], alpha_);
}

std::vector<std::uint32_t> sample_manufacturing(const Lattice& lattice,
                                                double beta, std::uint64_t seed,
                                                std::uint32_t replicate) {
  require_rate(beta, "beta");
  std::vector<std::uint32_t> hit;
  if (beta == 0.0) return hit;
  for (std::uint32_t v = 0; v < lattice.size(); ++v) {
    auto b = draw(v, 0, replicate, 1, seed);
    if (bernoulli53(b[0], b[1], beta)) hit.push_back(v);
  }
  return hit;
}

int apply_fault(int computed, bool fault, bool mfg, const FaultSpec& spec) {
  if (spec.model == FaultModel::pure_probabilistic) {
    if (mfg)
      throw std::logic_error(
          "manufacturing defects have no pure_probabilistic semantics");
    return fault ? 1 - computed : computed;
  }
  return (fault || mfg) ? 1 - spec.remembered_bit : computed;
}

}  // namespace camem
