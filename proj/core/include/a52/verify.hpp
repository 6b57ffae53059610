#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "a52/sampling.hpp"

namespace a52 {

enum class Suite {
  integrals,
  divisors,
  invariance_f,
  invariance_qp,
  hamiltonian,
  reduction,
  relations,
  automorphism,
  bracket,
  all,
};

const char* name(Suite s);
Suite parse_suite(std::string_view text);  // ParseError on unknown names
const std::vector<Suite>& concrete_suites();

/// Outcome of testing one claim. Flagged records (known discrepancies that
/// are reported but not asserted) never count against the verdict.
struct ClaimRecord {
  std::string id;
  std::string anchor;  // the identity being tested, in words
  std::string suite;
  std::size_t points = 0;
  std::size_t failures = 0;
  std::optional<std::string> counterexample;
  std::string detail;  // e.g. "order 3" for relation claims
  bool flagged = false;
  double wall_seconds = 0.0;

  bool pass() const { return failures == 0 && points > 0; }
};

struct VerificationReport {
  std::string suite;
  SampleConfig config;
  std::vector<ClaimRecord> claims;
  std::vector<ClaimRecord> flagged;

  bool pass() const;
  const ClaimRecord* find(std::string_view id) const;
};

/// Runs every claim of the suite. Deterministic in (suite, cfg): each claim
/// draws from its own sub-seeded stream, so `threads` only changes timing.
VerificationReport run_suite(Suite suite, const SampleConfig& cfg, unsigned threads = 1);

struct ReportFormat {
  bool timing = true;
};

/// One line per claim, plus separate "time ..." lines when timing is on.
std::string to_text(const VerificationReport& r, ReportFormat fmt = {});
/// JSON with the same fields as the text form.
std::string to_json(const VerificationReport& r, ReportFormat fmt = {});

}  // namespace a52
