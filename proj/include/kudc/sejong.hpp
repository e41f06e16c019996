#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "kudc/conllu.hpp"
#include "kudc/diagnostics.hpp"
#include "kudc/lexicon.hpp"

namespace kudc {

class MappingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Sejong label mapping
// ---------------------------------------------------------------------------

// One mapping rule: Sejong label to UD relation, with an optional context
// condition ("when-root", "verbal-head", "nominal-head").
struct MappingRule {
  std::string sejong;
  std::string ud;
  std::string condition;
};

class MappingTable {
 public:
  // Conservative built-in table; the shipped data file carries the same
  // content in editable form.
  static MappingTable defaults();

  // File format: SEJONG_LABEL<TAB>ud_relation[<TAB>condition], one per line,
  // first matching rule wins; # comments and blank lines ignored.
  static MappingTable load(std::istream& in);
  static MappingTable load_file(const std::string& path);

  void add(MappingRule rule);

  // UD relation for the token's label under this tree context, or empty when
  // the label is unknown.
  std::string to_ud(const DependencyTree& tree, const Token& token) const;

  // Reverse lookup (approximate): first rule mapping to this UD relation.
  std::string to_sejong(std::string_view ud) const;

  const std::vector<MappingRule>& rules() const { return rules_; }

 private:
  std::vector<MappingRule> rules_;
};

struct SejongMapOptions {
  bool lax = false;  // unknown labels become dep with a warning
};

// Relabels a Sejong-style tree into UD relations; heads and token content
// are never touched. A VNP root keeps deprel root with a SejongRoot=VNP misc
// note; eojeol-attached trailing punctuation is recorded in misc, never
// re-tokenized. Throws MappingError for unknown labels unless lax.
DependencyTree map_sejong_to_ud(const DependencyTree& tree, const MappingTable& table,
                                const SejongMapOptions& opts = {},
                                std::vector<std::string>* warnings = nullptr);

// ---------------------------------------------------------------------------
// Checks
// ---------------------------------------------------------------------------

// Sejong dependency structure adheres to a right-to-left pattern: one
// finding (code SEJONG-RIGHTWARD) per edge whose head precedes its
// dependent, root excluded.
std::vector<Diagnostic> check_right_headed(const DependencyTree& tree);

// Frame-driven argument audit of a UD-style tree: for each verbal head with
// a known frame, the relations of its case-marked dependents are compared
// against the best-matching frame's slots (code FRAME-MISMATCH).
std::vector<Diagnostic> audit_with_frames(const DependencyTree& tree,
                                          const Lexicon& lex);

}  // namespace kudc
