#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "kudc/conllu.hpp"
#include "kudc/lexicon.hpp"

namespace kudc {

// ---------------------------------------------------------------------------
// Pass reporting
// ---------------------------------------------------------------------------

struct EdgeChange {
  int token = 0;
  int old_head = 0;
  std::string old_deprel;
  int new_head = 0;
  std::string new_deprel;

  bool operator==(const EdgeChange&) const = default;
};

// Record of one pass over one sentence. changes is empty iff the pass left
// the tree unchanged; notes carry warnings/info that do not alter edges.
struct PassReport {
  std::string pass;
  std::vector<EdgeChange> changes;
  std::vector<std::string> notes;

  bool empty() const { return changes.empty(); }
};

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

// Canonical pass order. Head-retargeting passes run before relation
// refinement so frames are checked against final heads.
inline const std::vector<std::string>& canonical_pass_order() {
  static const std::vector<std::string> kOrder = {
      "cop_direction",        "quotative_mark", "fixed_expressions",
      "nominal_head_finality", "flat_last_head", "verbal_restructure",
      "case_role_refinement"};
  return kOrder;
}

struct ConversionConfig {
  std::vector<std::string> enabled_passes = canonical_pass_order();
  // Treat legacy nsubj on topic-marked nominals as subject candidates for the
  // dislocated:nsubj decision (mixed-quality corpora label them nsubj).
  bool legacy_nsubj_topics = true;

  bool pass_enabled(std::string_view name) const;
};

class PipelineError : public std::runtime_error {
 public:
  PipelineError(const std::string& pass, const std::string& sentence_id,
                const std::string& what)
      : std::runtime_error("pass '" + pass + "' on sentence '" + sentence_id +
                           "': " + what),
        pass_(pass),
        sentence_id_(sentence_id) {}
  const std::string& pass() const { return pass_; }
  const std::string& sentence_id() const { return sentence_id_; }

 private:
  std::string pass_;
  std::string sentence_id_;
};

// ---------------------------------------------------------------------------
// Rewrite passes
//
// Every pass is a pure tree-to-tree function: it may change head/deprel only
// (DEPS is cleared on any changed token), never content columns, and each
// pass is idempotent.
// ---------------------------------------------------------------------------

// Flips cop edges where the copula token heads its nominal predicate: the
// nominal takes over the copula's head/deprel and the copula attaches to it
// as cop.
DependencyTree pass_cop_direction(const DependencyTree& tree, const Lexicon& lex,
                                  PassReport* report = nullptr);

// Relabels case -> mark on quotative particles attached to a clausal head.
DependencyTree pass_quotative_mark(const DependencyTree& tree, const Lexicon& lex,
                                   PassReport* report = nullptr);

// Attaches inventory fixed expressions: the first span token to its host by
// the template relation, later span tokens to the first with fixed; edges
// formerly landing inside the span re-land on the host.
DependencyTree pass_fixed_expressions(const DependencyTree& tree, const Lexicon& lex,
                                      PassReport* report = nullptr);

// Re-heads nominal flat/compound chains on the last noun. Internal links are
// relabeled compound for modifier+head-noun chains and kept flat for
// headless semi-fixed sequences (all-proper-noun names, dates/numerals).
DependencyTree pass_nominal_head_finality(const DependencyTree& tree,
                                          const Lexicon& lex,
                                          PassReport* report = nullptr);

// Re-heads the remaining flat chains (all-verbal chains are left for
// verbal restructuring) on the last chain token.
DependencyTree pass_flat_last_head(const DependencyTree& tree, const Lexicon& lex,
                                   PassReport* report = nullptr);

// Resolves verb-verb chains linked by flat or mislabeled aux/dep: TAM
// auxiliaries stay under the first verb as aux; catenative verbs take over
// the headship with the first verb as xcomp; serial verb sequences inside
// clausal complements re-head on the last verb with earlier verbs as conj.
DependencyTree pass_verbal_restructure(const DependencyTree& tree, const Lexicon& lex,
                                       PassReport* report = nullptr);

// Frame-driven obl -> obl:arg, topic-subject relabeling (dislocated:nsubj /
// dislocated), nominalized nsubj:pass -> csubj:pass, and vocative markers.
DependencyTree pass_case_role_refinement(const DependencyTree& tree, const Lexicon& lex,
                                         PassReport* report = nullptr,
                                         const ConversionConfig& config = {});

// A named deterministic tree transformation. apply changes head/deprel only
// (clearing DEPS on changed tokens) and is idempotent.
struct RewritePass {
  std::string name;
  std::function<DependencyTree(const DependencyTree&, const Lexicon&, PassReport*,
                               const ConversionConfig&)>
      apply;
};

// All passes, in canonical order.
const std::vector<RewritePass>& registered_passes();

// Applies the enabled passes in canonical order. Throws PipelineError when a
// pass breaks tree well-formedness (an engine bug, not a data error).
std::pair<DependencyTree, std::vector<PassReport>> run_pipeline(
    const DependencyTree& tree, const Lexicon& lex, const ConversionConfig& config = {});

// ---------------------------------------------------------------------------
// Shared decisions (used by both the converter and the validator)
// ---------------------------------------------------------------------------

struct TopicRelabel {
  int token = 0;
  std::string new_deprel;  // dislocated:nsubj or dislocated
};

// Topic-subject decisions for the clause headed by head_index: a clause is
// the dependents of one verbal head; when exactly one subject candidate
// exists and it is a topic-marked nominal, it is the subject
// (dislocated:nsubj); topics beside a separate nsubj are plain dislocated.
std::vector<TopicRelabel> topic_subject_relabels(const DependencyTree& tree,
                                                 int head_index,
                                                 const MarkerTable& markers,
                                                 bool legacy_nsubj_topics);

// Best frame for the predicate at head_index given its case-marked
// dependents (score = satisfied slots, ties by file order), or nullptr.
const SubcatFrame* best_frame_for(const DependencyTree& tree, int head_index,
                                  const Lexicon& lex);

// Slot of the frame whose markers match the token, or nullptr.
const FrameSlot* matching_slot(const SubcatFrame& frame, const Token& token,
                               const MarkerTable& markers);

// True when the dependent's relation satisfies the slot's target relation
// (subject slots accept topic and passive subjects).
bool relation_satisfies_slot(std::string_view dep, const FrameSlot& slot);

}  // namespace kudc
