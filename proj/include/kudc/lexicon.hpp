#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kudc/conllu.hpp"

namespace kudc {

class LexiconError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Subcategorization frames (Sejong verb-dictionary notation)
// ---------------------------------------------------------------------------

// One argument slot of a frame line such as `X=N0-이 Y=N1-에|에게 좋다`.
struct FrameSlot {
  std::string variable;              // X, Y, Z
  std::string arg_index;             // N0, N1, N2
  std::vector<std::string> markers;  // postposition alternations, in order
  std::string relation;              // nsubj | obj | iobj | obl:arg
  std::string semantic_role;         // THM, GOL, AGT, ... (optional)
  std::vector<std::string> selectional;  // category strings (optional)

  bool operator==(const FrameSlot&) const = default;
};

struct SubcatFrame {
  std::string predicate_lemma;  // citation form as written in the file
  std::vector<FrameSlot> slots;

  bool operator==(const SubcatFrame&) const = default;
};

// Parses the dictionary notation: a frame line of `VAR=Nk-마커[|마커]` terms
// ending in the predicate lemma (a trailing parenthesized romanization is
// ignored), followed by optional `"VAR"="ROLE": cat|cat` lines. A
// tab-separated escape hatch is accepted for frames the notation cannot
// express: `frame<TAB>predicate<TAB>VAR=Nk:marker|marker:relation[:role]...`.
std::vector<SubcatFrame> parse_frame_file(std::istream& in,
                                          std::vector<std::string>* warnings = nullptr);
std::vector<SubcatFrame> parse_frame_file(const std::string& text,
                                          std::vector<std::string>* warnings = nullptr);

// Writes frames back in the dictionary notation (escape-hatch form when a
// slot's relation cannot be derived from its markers); no slot, marker
// alternation or role annotation is lost, and order is preserved.
std::string format_frame(const SubcatFrame& frame);
std::string format_frames(const std::vector<SubcatFrame>& frames);

// Citation-form / token-lemma normalization used for frame and inventory
// lookups: first `+`-joined morpheme, with a trailing 다 stripped.
std::string normalize_predicate_lemma(std::string_view lemma);

// ---------------------------------------------------------------------------
// Marker classes
// ---------------------------------------------------------------------------

enum class MarkerClass {
  kNominative,
  kAccusative,
  kDative,
  kAdverbial,
  kVocative,
  kTopic,
  kNominalized,
  kQuotative,
  kNone
};

std::string marker_class_name(MarkerClass c);

// XPOS tag classes and particle surface sets. Tag matching is
// case-insensitive; defaults cover the GSD and Kaist tag inventories.
struct MarkerTable {
  std::set<std::string> nominative_tags{"jks", "jcs"};
  std::set<std::string> accusative_tags{"jko", "jco"};
  std::set<std::string> dative_tags{};  // no corpus has one; surfaces decide
  std::set<std::string> adverbial_postposition_tags{"jkb"};
  std::set<std::string> vocative_tags{"jkv", "jcv"};
  std::set<std::string> aux_particle_tags{"jx", "jxt"};
  std::set<std::string> quotative_tags{"jkq", "jcr"};
  std::set<std::string> nominalizer_affix_tags{"xsn"};
  std::set<std::string> copula_tags{"vcp", "jp"};
  std::set<std::string> topic_particles{"은", "는"};
  std::set<std::string> quotative_particles{"고"};
  std::set<std::string> dative_surfaces{"에게", "한테", "께"};

  // Throws LexiconError when linguistically required disjointness is broken
  // (vocative vs adverbial tags, and case tag classes among themselves).
  void check() const;
};

// Class of the final functional XPOS element (surface form decides TOPIC and
// DATIVE). Total: every token maps to exactly one class.
MarkerClass classify_token(const MarkerTable& table, const Token& token);

// True when any XPOS element is a nominalizer affix (xsn), regardless of the
// final case marker.
bool has_nominalizer_affix(const MarkerTable& table, const Token& token);

bool has_copula_tag(const MarkerTable& table, const Token& token);

// True when the eojeol plausibly carries the given postposition marker:
// a functional final tag plus a form suffix match (optionally followed by a
// stacked topic particle), or the matching marker class.
bool token_bears_marker(const MarkerTable& table, const Token& token,
                        std::string_view marker);

// ---------------------------------------------------------------------------
// Verb inventory and fixed expressions
// ---------------------------------------------------------------------------

struct TamAuxiliary {
  std::string lemma;                     // normalized (하, 있, 되, ...)
  std::vector<std::string> connectives;  // licensed preceding connectives
};

struct CatenativeVerb {
  std::string lemma;      // normalized
  std::string condition;  // "" = always; "quot" = quotative connective on the
                          // preceding verb; otherwise a connective suffix
};

struct FixedExpression {
  std::string name;
  std::vector<std::string> span_forms;  // exact token forms of the span
  std::string host_relation;            // case | fixed
  std::string host_suffix;              // required form suffix on the host
  std::string host_final_jamo;          // required final consonant (e.g. ㄹ)
};

struct VerbInventory {
  std::vector<TamAuxiliary> tam;
  std::vector<CatenativeVerb> catenative;
  std::vector<FixedExpression> fixed;

  static VerbInventory seeds();

  const TamAuxiliary* find_tam(std::string_view normalized_lemma) const;
  const CatenativeVerb* find_catenative(std::string_view normalized_lemma) const;
};

// True when tok carries the connective (last lemma morpheme, or a form /
// lemma suffix).
bool connective_matches(const Token& tok, std::string_view connective);

// Quotative connective (라고/다고/자고/냐고) on the preceding verb.
bool has_quotative_connective(const Token& tok);

struct FixedMatch {
  const FixedExpression* expr;
  int start;  // first span token
  int end;    // last span token (inclusive)
};

// Longest inventory expression whose span forms match consecutively starting
// at start_index (host suffix/jamo constraints included in matching).
std::optional<FixedMatch> match_fixed(const VerbInventory& inv,
                                      const DependencyTree& tree, int start_index);

// ---------------------------------------------------------------------------
// Lexicon bundle
// ---------------------------------------------------------------------------

class Lexicon {
 public:
  Lexicon() : inventory_(VerbInventory::seeds()) {}

  static Lexicon with_defaults() { return Lexicon(); }

  void load_frames(std::istream& in, std::vector<std::string>* warnings = nullptr);
  void load_frames_file(const std::string& path,
                        std::vector<std::string>* warnings = nullptr);
  void add_frame(SubcatFrame frame);

  // Inventory overrides: one entry per line, kind first.
  //   tam<TAB>lemma<TAB>connective[|connective...]
  //   catenative<TAB>lemma[<TAB>condition]
  //   fixed<TAB>form [form...]<TAB>relation[<TAB>host-suffix=..|host-final=..]
  // Same-lemma/same-name entries replace the seed; others are appended.
  void load_inventory(std::istream& in, std::vector<std::string>* warnings = nullptr);
  void load_inventory_file(const std::string& path,
                           std::vector<std::string>* warnings = nullptr);

  // All frames whose predicate matches the (token) lemma after citation-form
  // normalization, in file order.
  std::vector<const SubcatFrame*> lookup_frames(std::string_view lemma) const;

  const std::vector<SubcatFrame>& frames() const { return frames_; }
  const MarkerTable& markers() const { return markers_; }
  MarkerTable& markers() { return markers_; }
  const VerbInventory& inventory() const { return inventory_; }
  VerbInventory& inventory() { return inventory_; }

 private:
  std::vector<SubcatFrame> frames_;
  std::unordered_map<std::string, std::vector<size_t>> by_lemma_;
  MarkerTable markers_;
  VerbInventory inventory_;
};

}  // namespace kudc
