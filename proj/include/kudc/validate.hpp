#pragma once

#include <map>
#include <string>
#include <vector>

#include "kudc/conllu.hpp"
#include "kudc/diagnostics.hpp"
#include "kudc/lexicon.hpp"
#include "kudc/rules.hpp"

namespace kudc {

// One guideline rule with its default severity and a one-line rationale.
struct GuidelineRule {
  std::string code;
  Severity severity;
  std::string rationale;
};

// The registered rule set; severities can be overridden per code.
class GuidelineRuleSet {
 public:
  static GuidelineRuleSet defaults();

  void set_severity(const std::string& code, Severity s);
  Severity severity(const std::string& code) const;
  bool known(const std::string& code) const;
  const std::vector<GuidelineRule>& rules() const { return rules_; }

 private:
  std::vector<GuidelineRule> rules_;
  std::map<std::string, Severity> overrides_;
};

struct ValidateOptions {
  // Mirrors the converter's treatment of legacy nsubj on topic nominals.
  bool legacy_nsubj_topics = true;
};

// Lints one sentence against the revised guidelines; never modifies the
// tree. Deterministic order: token index, then code.
std::vector<Diagnostic> validate_sentence(const DependencyTree& tree,
                                          const GuidelineRuleSet& rules,
                                          const Lexicon& lex,
                                          const ValidateOptions& opts = {});

struct CorpusValidation {
  std::vector<std::vector<Diagnostic>> per_sentence;  // aligned with input
  std::map<std::string, int> counts_by_code;
  int errors = 0;
  int warnings = 0;
  int infos = 0;

  bool clean() const { return errors == 0; }
};

CorpusValidation validate_corpus(const std::vector<DependencyTree>& trees,
                                 const GuidelineRuleSet& rules, const Lexicon& lex,
                                 const ValidateOptions& opts = {}, int jobs = 1);

}  // namespace kudc
