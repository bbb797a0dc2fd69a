#include "kloost/report.hpp"

#include <algorithm>
#include <cstdio>
#include <tuple>

namespace kloost {

std::uint64_t VerificationReport::skipped_total() const {
  std::uint64_t total = 0;
  for (const auto& [reason, count] : skipped) total += count;
  return total;
}

void VerificationReport::merge(const VerificationReport& part) {
  excluded += part.excluded;
  checked += part.checked;
  for (const auto& [reason, count] : part.skipped) skipped[reason] += count;
  counterexample_count += part.counterexample_count;
  counterexamples.insert(counterexamples.end(), part.counterexamples.begin(), part.counterexamples.end());
}

void VerificationReport::finalize(std::size_t cap) {
  std::sort(counterexamples.begin(), counterexamples.end(), [](const Counterexample& a, const Counterexample& b) {
    return std::tie(a.point, a.relation) < std::tie(b.point, b.relation);
  });
  if (counterexamples.size() > cap) counterexamples.resize(cap);
}

std::string elem_hex(Elem e) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "0x%X", e);
  return buf;
}

nlohmann::json to_json(const VerificationReport& report) {
  nlohmann::json skipped = nlohmann::json::object();
  for (const auto& [reason, count] : report.skipped) skipped[reason] = count;

  nlohmann::json cex = nlohmann::json::array();
  for (const auto& c : report.counterexamples) {
    nlohmann::json point = nlohmann::json::array();
    for (Elem e : c.point) point.push_back(elem_hex(e));
    nlohmann::json item = {{"point", point}, {"lhs", c.lhs}, {"rhs", c.rhs}};
    if (c.relation.empty()) {
      item["lhs_arg"] = elem_hex(c.lhs_arg);
      item["rhs_arg"] = elem_hex(c.rhs_arg);
    } else {
      item["relation"] = c.relation;
    }
    cex.push_back(std::move(item));
  }

  return {
      {"name", report.name},
      {"m", report.m},
      {"poly_hex", poly_hex(report.poly)},
      {"domain_size", report.domain_size},
      {"excluded", report.excluded},
      {"checked", report.checked},
      {"skipped", {{"total", report.skipped_total()}, {"by_reason", skipped}}},
      {"counterexample_count", report.counterexample_count},
      {"counterexamples", cex},
      {"passed", report.passed()},
  };
}

}  // namespace kloost
