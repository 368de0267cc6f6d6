#ifndef FINMOD_REPORT_HPP
#define FINMOD_REPORT_HPP

#include <algorithm>
#include <string>
#include <vector>

namespace finmod {

enum class CheckStatus { pass, fail, refused };

inline std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "FAIL";
    case CheckStatus::refused:
      return "REFUSED";
  }
  return "";
}

/// Exhaustive checks settle their claim on the finite objects involved;
/// bounded checks only sample an infinite object up to a bound.
enum class Evidence { exhaustive, bounded };

inline std::string to_string(Evidence e) {
  return e == Evidence::exhaustive ? "exhaustive" : "bounded evidence";
}

struct CheckEntry {
  std::string name;
  /// Short tag of the result the check reproduces.
  std::string anchor;
  CheckStatus status = CheckStatus::pass;
  Evidence evidence = Evidence::exhaustive;
  std::string details;

  bool passed() const noexcept { return status == CheckStatus::pass; }
};

struct VerificationReport {
  std::vector<CheckEntry> entries;

  bool passed() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const CheckEntry& e) { return e.passed(); });
  }

  void add(std::string name, std::string anchor, bool ok, std::string details,
           Evidence evidence = Evidence::exhaustive) {
    entries.push_back({std::move(name), std::move(anchor),
                       ok ? CheckStatus::pass : CheckStatus::fail, evidence,
                       std::move(details)});
  }

  void refuse(std::string name, std::string anchor, std::string details,
              Evidence evidence = Evidence::exhaustive) {
    entries.push_back({std::move(name), std::move(anchor),
                       CheckStatus::refused, evidence, std::move(details)});
  }

  void append(const VerificationReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }

  /// Aligned plain-text table, one row per entry, then a summary line.
  std::string to_table() const {
    std::size_t wn = 5, wa = 6, ws = 6, we = 8;
    for (const auto& e : entries) {
      wn = std::max(wn, e.name.size());
      wa = std::max(wa, e.anchor.size());
      ws = std::max(ws, to_string(e.status).size());
      we = std::max(we, to_string(e.evidence).size());
    }
    auto pad = [](const std::string& s, std::size_t w) {
      return s + std::string(w - std::min(w, s.size()), ' ');
    };
    std::string out = pad("check", wn) + "  " + pad("anchor", wa) + "  " +
                      pad("status", ws) + "  " + pad("evidence", we) +
                      "  details\n";
    out += std::string(wn + wa + ws + we + 15, '-') + "\n";
    std::size_t passed = 0;
    for (const auto& e : entries) {
      out += pad(e.name, wn) + "  " + pad(e.anchor, wa) + "  " +
             pad(to_string(e.status), ws) + "  " +
             pad(to_string(e.evidence), we) + "  " + e.details + "\n";
      if (e.passed()) ++passed;
    }
    out += std::to_string(passed) + "/" + std::to_string(entries.size()) +
           " checks passed\n";
    return out;
  }
};

}  // namespace finmod

#endif  // FINMOD_REPORT_HPP
