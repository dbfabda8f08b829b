#include "ordyn/report.hpp"

namespace ordyn {

bool Hypotheses::holds(const std::string& name) const {
  if (name == "compact") return compact;
  if (name == "continuous") return continuous;
  if (name == "closed") return closed;
  if (name == "proper") return proper;
  if (name == "hausdorff") return hausdorff;
  if (name == "invertible") return invertible;
  return false;
}

Hypotheses hypotheses_of(const MapPredicates& p, const Separation& s) {
  Hypotheses h;
  h.continuous = p.continuous;
  h.closed = p.closed;
  h.proper = p.proper;
  h.hausdorff = s.hausdorff;
  h.invertible = p.invertible;
  return h;
}

std::string Tally::str() const {
  return std::to_string(passed) + "/" + std::to_string(failed) + "/" + std::to_string(skipped);
}

Check& Report::add(std::string name, std::vector<std::string> requires_, bool passed,
                   std::string witness) {
  Check c;
  c.name = std::move(name);
  c.requires_ = std::move(requires_);
  c.applicable = true;
  for (const auto& h : c.requires_)
    if (!hypotheses.holds(h)) c.applicable = false;
  c.passed = passed;
  if (!passed) c.witness = std::move(witness);
  checks.push_back(std::move(c));
  return checks.back();
}

Check& Report::skip(std::string name, std::string why) {
  Check c;
  c.name = std::move(name);
  c.applicable = false;
  c.passed = false;
  c.witness = std::move(why);
  checks.push_back(std::move(c));
  return checks.back();
}

bool Report::ok() const {
  for (const auto& c : checks)
    if (c.applicable && !c.passed) return false;
  return true;
}

Tally Report::tally() const {
  Tally t;
  for (const auto& c : checks) {
    if (!c.applicable)
      ++t.skipped;
    else if (c.passed)
      ++t.passed;
    else
      ++t.failed;
  }
  return t;
}

void Report::merge(const Report& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  notes.insert(notes.end(), other.notes.begin(), other.notes.end());
}

}  // namespace ordyn
