#include <nlohmann/json.hpp>
#include <sstream>

#include "a52/verify.hpp"

namespace a52 {

namespace {

void write_claim(std::ostringstream& os, const ClaimRecord& c, const char* kind, const char* verdict) {
  os << kind << ' ' << c.id << " | suite " << c.suite << " | anchor \"" << c.anchor << "\" | points " << c.points
     << " | failures " << c.failures << " | " << verdict;
  if (!c.detail.empty()) os << " | " << c.detail;
  os << '\n';
  if (c.counterexample && !c.flagged) os << "  counterexample: " << *c.counterexample << '\n';
}

nlohmann::json claim_json(const ClaimRecord& c, const char* verdict, bool timing) {
  nlohmann::json j{{"id", c.id},         {"suite", c.suite},       {"anchor", c.anchor}, {"points", c.points},
                   {"failures", c.failures}, {"verdict", verdict}, {"detail", c.detail}};
  j["counterexample"] = c.counterexample ? nlohmann::json(*c.counterexample) : nlohmann::json(nullptr);
  if (timing) j["wall_time_s"] = c.wall_seconds;
  return j;
}

}  // namespace

std::string to_text(const VerificationReport& r, ReportFormat fmt) {
  std::ostringstream os;
  const auto& cfg = r.config;
  os << "suite " << r.suite << " | seed " << cfg.seed << " | points " << cfg.points_per_identity
     << " | relation-points " << cfg.relation_points << " | bound " << cfg.coeff_bound << " | max-order "
     << cfg.max_order << " | normalization " << (cfg.constrain_normalization ? "strict" : "relaxed") << '\n';
  std::size_t failing = 0;
  for (const auto& c : r.claims) {
    write_claim(os, c, "claim", c.pass() ? "pass" : "FAIL");
    if (!c.pass()) ++failing;
  }
  for (const auto& c : r.flagged) write_claim(os, c, "flagged", "warning");
  if (fmt.timing) {
    for (const auto* list : {&r.claims, &r.flagged}) {
      for (const auto& c : *list) os << "time " << c.id << ' ' << c.wall_seconds << " s\n";
    }
  }
  os << "verdict " << (r.pass() ? "pass" : "FAIL") << " | claims " << r.claims.size() << " | failing " << failing
     << " | flagged " << r.flagged.size() << '\n';
  return os.str();
}

std::string to_json(const VerificationReport& r, ReportFormat fmt) {
  const auto& cfg = r.config;
  nlohmann::json j;
  j["suite"] = r.suite;
  j["config"] = {{"seed", cfg.seed},
                 {"points_per_identity", cfg.points_per_identity},
                 {"relation_points", cfg.relation_points},
                 {"coeff_bound", cfg.coeff_bound},
                 {"max_retries_on_pole", cfg.max_retries_on_pole},
                 {"max_order", cfg.max_order},
                 {"constrain_normalization", cfg.constrain_normalization}};
  j["claims"] = nlohmann::json::array();
  for (const auto& c : r.claims) j["claims"].push_back(claim_json(c, c.pass() ? "pass" : "fail", fmt.timing));
  j["flagged"] = nlohmann::json::array();
  for (const auto& c : r.flagged) j["flagged"].push_back(claim_json(c, "warning", fmt.timing));
  j["verdict"] = r.pass() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace a52
