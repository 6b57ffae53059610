#include "a52/sampling.hpp"

namespace a52 {

void SampleConfig::validate() const {
  if (points_per_identity < 1) throw PreconditionViolated("points_per_identity must be >= 1");
  if (coeff_bound < 1) throw PreconditionViolated("coeff_bound must be >= 1");
  if (relation_points < 1) throw PreconditionViolated("relation_points must be >= 1");
  if (max_order < 1) throw PreconditionViolated("max_order must be >= 1");
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

std::uint64_t sub_seed(std::uint64_t seed, std::string_view stream) {
  return splitmix64(splitmix64(seed) ^ fnv1a(stream));
}

RationalSampler::RationalSampler(const SampleConfig& cfg, std::string_view stream)
    : cfg_(cfg), rng_(sub_seed(cfg.seed, stream)) {
  cfg_.validate();
}

ExactRational RationalSampler::next() {
  std::uniform_int_distribution<std::int64_t> num(-cfg_.coeff_bound, cfg_.coeff_bound);
  std::uniform_int_distribution<std::int64_t> den(1, cfg_.coeff_bound);
  const std::int64_t n = num(rng_);
  return ExactRational(n, den(rng_));
}

ExactRational RationalSampler::next_nonzero() {
  for (std::size_t k = 0; k <= cfg_.max_retries_on_pole; ++k) {
    ExactRational r = next();
    if (!r.is_zero()) return r;
  }
  throw InsufficientSamples("could not draw a nonzero rational");
}

FState<ExactRational> sample_fstate(RationalSampler& rng, const FConstraints& constraints) {
  FState<ExactRational> x;
  for (auto* c : {&x.f0, &x.f1, &x.f2, &x.f3, &x.g1, &x.g2}) *c = rng.next();
  if (constraints.zero_divisor) {
    const int i = *constraints.zero_divisor;
    if (i < 0 || i > 3) throw PreconditionViolated("divisor index must be in 0..3");
    x.f(i) = 0;
  }
  if (constraints.level_set) {
    if (constraints.zero_divisor == 3) {
      // f3 = 0 on the level set means f1 = 1 - f0.
      x.f1 = ExactRational(1) - x.f0;
    } else {
      x.f3 = x.f0 + x.f1 - ExactRational(1);
    }
  }
  return x;
}

QPState<ExactRational> sample_qpstate(RationalSampler& rng) {
  QPState<ExactRational> x;
  x.q1 = rng.next();
  x.p1 = rng.next();
  x.q2 = rng.next();
  x.p2 = rng.next();
  try {
    x.T = rng.next_nonzero();
  } catch (const InsufficientSamples&) {
    throw InsufficientSamples("could not draw T != 0");
  }
  return x;
}

Parameters<ExactRational> sample_parameters(RationalSampler& rng, const ParameterConstraints& constraints) {
  Parameters<ExactRational> a{rng.next(), rng.next(), rng.next(), rng.next()};
  const auto zero = constraints.zero_alpha;
  if (zero) {
    if (*zero < 0 || *zero > 3) throw PreconditionViolated("alpha index must be in 0..3");
    a[*zero] = 0;
  }
  if (rng.config().constrain_normalization) {
    const ExactRational half(1, 2);
    if (zero == 3) {
      a.alpha2 = (half - a.alpha0 - a.alpha1 - a.alpha3) / ExactRational(2);
    } else {
      a.alpha3 = half - a.alpha0 - a.alpha1 - ExactRational(2) * a.alpha2;
    }
  }
  return a;
}

}  // namespace a52
