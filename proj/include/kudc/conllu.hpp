#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kudc/diagnostics.hpp"

namespace kudc {

// ---------------------------------------------------------------------------
// Dependency relations
// ---------------------------------------------------------------------------

// A UD dependency relation: universal label plus optional subtype.
// Only the subtyped relations used by the revised Korean guidelines are
// considered legal (nsubj:pass, csubj:pass, obl:arg, dislocated:nsubj,
// nmod:poss).
struct Relation {
  std::string universal;
  std::string subtype;  // empty when none

  static std::optional<Relation> parse(std::string_view deprel);
  std::string str() const;

  bool operator==(const Relation&) const = default;
};

namespace deprel {

bool is_known_universal(std::string_view label);
bool is_valid_ud(std::string_view deprel);
bool is_known_sejong(std::string_view label);

// Universal part of a deprel string ("obl:arg" -> "obl").
std::string_view universal(std::string_view dep);

}  // namespace deprel

// ---------------------------------------------------------------------------
// Tokens and trees
// ---------------------------------------------------------------------------

// One eojeol row of a CoNLL-U sentence. Empty strings stand for the `_`
// placeholder in FEATS/DEPS/MISC and XPOS.
struct Token {
  int index = 0;        // 1-based position
  std::string form;
  std::string lemma;    // may contain `+`-joined morphemes
  std::string upos;
  std::string xpos;     // `+`-joined tag sequence, possibly empty
  std::string feats;
  int head = 0;         // 0 = root
  std::string deprel;
  std::string deps;
  std::string misc;

  // Lowercased XPOS elements; empty when XPOS is the placeholder.
  std::vector<std::string> xpos_elements() const;

  bool is_verbal() const;   // VERB, AUX or ADJ (Korean adjectives predicate)
  bool is_nominal() const;  // NOUN, PROPN, PRON or NUM

  bool operator==(const Token&) const = default;
};

struct DependencyTree {
  std::string sentence_id;
  std::string text;
  std::vector<std::string> comments;  // raw `#` lines, in order
  std::vector<Token> tokens;

  const Token& at(int index) const;
  Token& at(int index);
  int size() const { return static_cast<int>(tokens.size()); }

  bool operator==(const DependencyTree&) const = default;
};

// ---------------------------------------------------------------------------
// Parsing and serialization
// ---------------------------------------------------------------------------

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class SerializeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class DeprelPolicy {
  kUdStrict,      // unknown deprel is a parse error
  kUdLax,         // unknown deprel is a warning
  kSejongStrict,  // deprel must be a known Sejong label
  kAny            // anything goes
};

struct ParseOptions {
  DeprelPolicy deprel_policy = DeprelPolicy::kUdStrict;
};

// Parses a CoNLL-U document. Multiword-token ranges (`1-2`) and empty nodes
// (`1.1`) are rejected. Comment lines are preserved per sentence; `sent_id`
// and `text` metadata are extracted when present. Warnings (lax mode) are
// appended to *warnings when given.
std::vector<DependencyTree> parse_document(std::istream& in,
                                           const ParseOptions& opts = {},
                                           std::vector<std::string>* warnings = nullptr);
std::vector<DependencyTree> parse_document(const std::string& text,
                                           const ParseOptions& opts = {},
                                           std::vector<std::string>* warnings = nullptr);

// Canonical CoNLL-U output: 10 tab-separated columns, `_` placeholders, one
// blank line after each sentence. Throws SerializeError (naming the
// sentence) for trees that fail check_wellformed.
std::string serialize_tree(const DependencyTree& tree);
std::string serialize_document(const std::vector<DependencyTree>& trees);

// ---------------------------------------------------------------------------
// Structural checks
// ---------------------------------------------------------------------------

// Empty result iff the tree is single-rooted, acyclic and fully connected.
// Codes: TREE-MULTIROOT, TREE-CYCLE, TREE-ORPHAN.
std::vector<Diagnostic> check_wellformed(const DependencyTree& tree);

inline bool is_wellformed(const DependencyTree& tree) {
  return check_wellformed(tree).empty();
}

// Indices j with tokens[j].head == index, ascending. index 0 names the
// virtual root. Throws std::out_of_range for invalid indices.
std::vector<int> children(const DependencyTree& tree, int index);

}  // namespace kudc
