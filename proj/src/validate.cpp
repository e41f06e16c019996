#include "kudc/validate.hpp"

#include <algorithm>

#include "kudc/corpus.hpp"

namespace kudc {

GuidelineRuleSet GuidelineRuleSet::defaults() {
  GuidelineRuleSet rs;
  rs.rules_ = {
      {"TREE-MULTIROOT", Severity::kError, "a sentence has exactly one root"},
      {"TREE-CYCLE", Severity::kError, "head relations must be acyclic"},
      {"TREE-ORPHAN", Severity::kError, "every token is reachable from the root"},
      {"HEADFINAL-FLAT", Severity::kError, "flat attaches to the last word"},
      {"HEADFINAL-COMPOUND", Severity::kError, "the last noun heads a compound"},
      {"AUX-ORDER", Severity::kError, "auxiliaries follow their lexical verb"},
      {"FIXED-ORDER", Severity::kError, "fixed continuations follow the first token"},
      {"NO-FLAT-VERB", Severity::kError,
       "verb pairs are aux/xcomp/conj, never flat"},
      {"OBL-ARG-UNBACKED", Severity::kWarning,
       "obl:arg should be licensed by a dictionary frame"},
      {"TOPIC-DISLOCATED", Severity::kError,
       "topic subjects are dislocated:nsubj; topics beside a subject are dislocated"},
      {"COP-DIRECTION", Severity::kError,
       "the nominal predicate heads a separated copular marker"},
      {"MARK-QUOTATIVE", Severity::kError,
       "quotative particles subordinating a clause are mark, not case"},
      {"SUBTYPE-ILLEGAL", Severity::kError,
       "only nsubj:pass, csubj:pass, obl:arg, dislocated:nsubj, nmod:poss subtypes"},
  };
  return rs;
}

void GuidelineRuleSet::set_severity(const std::string& code, Severity s) {
  overrides_[code] = s;
}

Severity GuidelineRuleSet::severity(const std::string& code) const {
  const auto it = overrides_.find(code);
  if (it != overrides_.end()) return it->second;
  for (const auto& r : rules_)
    if (r.code == code) return r.severity;
  return Severity::kError;
}

bool GuidelineRuleSet::known(const std::string& code) const {
  return std::any_of(rules_.begin(), rules_.end(),
                     [&](const GuidelineRule& r) { return r.code == code; });
}

namespace {

Diagnostic make(const GuidelineRuleSet& rules, const DependencyTree& tree,
                std::string code, std::vector<int> tokens, std::string message) {
  Diagnostic d;
  d.severity = rules.severity(code);
  d.code = std::move(code);
  d.sentence_id = tree.sentence_id;
  d.token_indices = std::move(tokens);
  d.message = std::move(message);
  return d;
}

bool obl_arg_backed(const DependencyTree& tree, const Token& t, const Lexicon& lex) {
  if (t.head < 1) return false;
  const SubcatFrame* frame = best_frame_for(tree, t.head, lex);
  if (!frame) return false;
  const FrameSlot* slot = matching_slot(*frame, t, lex.markers());
  return slot && slot->relation == "obl:arg";
}

}  // namespace

std::vector<Diagnostic> validate_sentence(const DependencyTree& tree,
                                          const GuidelineRuleSet& rules,
                                          const Lexicon& lex,
                                          const ValidateOptions& opts) {
  std::vector<Diagnostic> out;
  for (Diagnostic d : check_wellformed(tree)) {
    d.severity = rules.severity(d.code);
    out.push_back(std::move(d));
  }
  const MarkerTable& mt = lex.markers();

  for (const Token& t : tree.tokens) {
    if (!deprel::is_valid_ud(t.deprel)) {
      out.push_back(make(rules, tree, "SUBTYPE-ILLEGAL", {t.index},
                         "relation '" + t.deprel + "' is unknown or illegally subtyped"));
      continue;
    }
    if (t.head < 1) continue;
    const Token& h = tree.at(t.head);

    if (t.deprel == "flat") {
      if (t.is_verbal() && h.is_verbal()) {
        out.push_back(make(rules, tree, "NO-FLAT-VERB",
                           {std::min(t.index, h.index), std::max(t.index, h.index)},
                           "flat edge joins two verbal tokens"));
      } else if (t.index > h.index) {
        out.push_back(make(rules, tree, "HEADFINAL-FLAT", {h.index, t.index},
                           "flat chain is not headed by its last token"));
      }
    } else if (t.deprel == "compound") {
      if (t.index > h.index)
        out.push_back(make(rules, tree, "HEADFINAL-COMPOUND", {h.index, t.index},
                           "compound is not headed by its last noun"));
    } else if (t.deprel == "aux") {
      if (h.index > t.index)
        out.push_back(make(rules, tree, "AUX-ORDER", {t.index, h.index},
                           "auxiliary precedes its lexical head"));
    } else if (t.deprel == "fixed") {
      if (h.index > t.index)
        out.push_back(make(rules, tree, "FIXED-ORDER", {t.index, h.index},
                           "fixed continuation precedes the expression head"));
    } else if (t.deprel == "cop") {
      if (!has_copula_tag(mt, t) && has_copula_tag(mt, h))
        out.push_back(make(rules, tree, "COP-DIRECTION", {t.index, h.index},
                           "separated copular marker heads its nominal predicate"));
    } else if (t.deprel == "case") {
      if (h.is_verbal() && (classify_token(mt, t) == MarkerClass::kQuotative ||
                            mt.quotative_particles.count(t.form) > 0))
        out.push_back(make(rules, tree, "MARK-QUOTATIVE", {t.index},
                           "quotative particle on a clausal head should be mark"));
    } else if (t.deprel == "obl:arg") {
      if (!obl_arg_backed(tree, t, lex))
        out.push_back(make(rules, tree, "OBL-ARG-UNBACKED", {t.index},
                           "obl:arg has no supporting frame for '" + h.form + "'"));
    }
  }

  // Mirror of the converter's topic-subject decision.
  for (const Token& h : tree.tokens) {
    if (!h.is_verbal()) continue;
    for (const TopicRelabel& r :
         topic_subject_relabels(tree, h.index, mt, opts.legacy_nsubj_topics)) {
      out.push_back(make(rules, tree, "TOPIC-DISLOCATED", {r.token},
                         "topic-marked nominal should be " + r.new_deprel));
    }
  }

  sort_diagnostics(out);
  return out;
}

CorpusValidation validate_corpus(const std::vector<DependencyTree>& trees,
                                 const GuidelineRuleSet& rules, const Lexicon& lex,
                                 const ValidateOptions& opts, int jobs) {
  CorpusValidation result;
  result.per_sentence =
      parallel_map(trees, jobs, [&](const DependencyTree& t) {
        return validate_sentence(t, rules, lex, opts);
      });
  for (const auto& ds : result.per_sentence) {
    for (const auto& d : ds) {
      ++result.counts_by_code[d.code];
      switch (d.severity) {
        case Severity::kError: ++result.errors; break;
        case Severity::kWarning: ++result.warnings; break;
        case Severity::kInfo: ++result.infos; break;
      }
    }
  }
  return result;
}

}  // namespace kudc
