#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "a52/model.hpp"

namespace a52 {

struct SampleConfig {
  std::uint64_t seed = 42;
  std::size_t points_per_identity = 200;
  // Numerators are drawn from [-coeff_bound, coeff_bound], denominators
  // from [1, coeff_bound].
  std::int64_t coeff_bound = 50;
  std::size_t max_retries_on_pole = 50;
  bool constrain_normalization = true;
  // Relation-order searches are costlier per point than plain identities.
  std::size_t relation_points = 50;
  int max_order = 8;

  // Throws PreconditionViolated on out-of-range fields.
  void validate() const;
};

/// Deterministic seed for one named sub-stream, so each claim draws an
/// independent sequence regardless of evaluation order.
std::uint64_t sub_seed(std::uint64_t seed, std::string_view stream);

class RationalSampler {
 public:
  explicit RationalSampler(const SampleConfig& cfg, std::string_view stream = {});

  ExactRational next();
  ExactRational next_nonzero();
  const SampleConfig& config() const noexcept { return cfg_; }
  std::mt19937_64& engine() noexcept { return rng_; }

 private:
  SampleConfig cfg_;
  std::mt19937_64 rng_;
};

struct FConstraints {
  std::optional<int> zero_divisor;  // force f_i = 0
  bool level_set = false;           // force f3 = f0 + f1 - 1
};

struct ParameterConstraints {
  std::optional<int> zero_alpha;  // force alpha_i = 0
};

FState<ExactRational> sample_fstate(RationalSampler& rng, const FConstraints& constraints = {});

/// T is redrawn until nonzero (InsufficientSamples after max_retries_on_pole).
QPState<ExactRational> sample_qpstate(RationalSampler& rng);

/// With constrain_normalization the last unconstrained alpha is solved from
/// alpha0 + alpha1 + 2 alpha2 + alpha3 = 1/2 (alpha3, or alpha2 when
/// alpha3 is pinned to zero).
Parameters<ExactRational> sample_parameters(RationalSampler& rng, const ParameterConstraints& constraints = {});

}  // namespace a52
