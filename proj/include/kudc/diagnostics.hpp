#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace kudc {

enum class Severity { kError, kWarning, kInfo };

inline std::string severity_name(Severity s) {
  switch (s) {
    case Severity::kError: return "error";
    case Severity::kWarning: return "warning";
    case Severity::kInfo: return "info";
  }
  return "error";
}

// One validator/checker finding. token_indices may be empty only for
// sentence-level codes (e.g. tree-structure findings).
struct Diagnostic {
  std::string code;
  Severity severity = Severity::kError;
  std::string sentence_id;
  std::vector<int> token_indices;
  std::string message;
};

// Stable order: first token index (0 for sentence-level), then code.
inline void sort_diagnostics(std::vector<Diagnostic>& ds) {
  std::stable_sort(ds.begin(), ds.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     const int ta = a.token_indices.empty() ? 0 : a.token_indices.front();
                     const int tb = b.token_indices.empty() ? 0 : b.token_indices.front();
                     if (ta != tb) return ta < tb;
                     if (a.code != b.code) return a.code < b.code;
                     return a.token_indices < b.token_indices;
                   });
}

inline bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kError;
  });
}

}  // namespace kudc
