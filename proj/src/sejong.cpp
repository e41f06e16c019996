#include "kudc/sejong.hpp"

#include <fstream>
#include <istream>
#include <sstream>

#include "kudc/hangul.hpp"
#include "kudc/rules.hpp"

namespace kudc {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

void add_misc_note(Token& t, const std::string& note) {
  if (t.misc.find(note) != std::string::npos) return;
  if (t.misc.empty())
    t.misc = note;
  else
    t.misc += "|" + note;
}

bool trailing_punct(const Token& t) {
  const char32_t cp = hangul::last_codepoint(t.form);
  return cp == '.' || cp == ',' || cp == '!' || cp == '?' || cp == ';' ||
         cp == ':' || cp == 0x2026;  // …
}

}  // namespace

MappingTable MappingTable::defaults() {
  MappingTable t;
  // The three labels with fixed glosses come first; the rest is conservative
  // extrapolation, kept editable in the shipped mapping file.
  t.rules_ = {
      {"NP_SBJ", "nsubj", ""},
      {"NP_OBJ", "obj", ""},
      {"NP_AJT", "obl", ""},
      {"NP_MOD", "nmod", ""},
      {"NP_CNJ", "conj", ""},
      {"NP", "dep", ""},
      {"VP", "conj", "verbal-head"},
      {"VP", "advcl", ""},
      {"VP_MOD", "advcl", ""},
      {"VNP", "root", "when-root"},
      {"VNP", "dep", ""},
      {"AP", "advmod", ""},
      {"DP", "det", ""},
      {"IP", "dep", ""},
      {"X", "dep", ""},
      {"L", "dep", ""},
      {"R", "dep", ""},
  };
  return t;
}

MappingTable MappingTable::load(std::istream& in) {
  MappingTable t;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto cols = split(line, '\t');
    if (cols.size() < 2 || cols[0].empty() || cols[1].empty())
      throw MappingError("mapping file line " + std::to_string(line_no) +
                         ": expected SEJONG_LABEL<TAB>ud_relation[<TAB>condition]");
    MappingRule rule{cols[0], cols[1], cols.size() > 2 ? cols[2] : ""};
    if (!rule.condition.empty() && rule.condition != "when-root" &&
        rule.condition != "verbal-head" && rule.condition != "nominal-head")
      throw MappingError("mapping file line " + std::to_string(line_no) +
                         ": unknown condition '" + rule.condition + "'");
    t.rules_.push_back(std::move(rule));
  }
  return t;
}

MappingTable MappingTable::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MappingError("cannot open mapping file '" + path + "'");
  return load(in);
}

void MappingTable::add(MappingRule rule) { rules_.push_back(std::move(rule)); }

std::string MappingTable::to_ud(const DependencyTree& tree, const Token& token) const {
  for (const auto& r : rules_) {
    if (r.sejong != token.deprel) continue;
    if (r.condition.empty()) return r.ud;
    if (r.condition == "when-root" && token.head == 0) return r.ud;
    if (token.head >= 1) {
      const Token& h = tree.at(token.head);
      if (r.condition == "verbal-head" && h.is_verbal()) return r.ud;
      if (r.condition == "nominal-head" && h.is_nominal()) return r.ud;
    }
  }
  return "";
}

std::string MappingTable::to_sejong(std::string_view ud) const {
  for (const auto& r : rules_)
    if (r.ud == ud) return r.sejong;
  return "";
}

DependencyTree map_sejong_to_ud(const DependencyTree& tree, const MappingTable& table,
                                const SejongMapOptions& opts,
                                std::vector<std::string>* warnings) {
  DependencyTree out = tree;
  for (Token& t : out.tokens) {
    if (trailing_punct(t)) add_misc_note(t, "TrailingPunct=Yes");
    if (t.head == 0) {
      // Sejong roots carry the property of the root (e.g. VNP for copular
      // predicates) instead of a root label.
      if (t.deprel != "root") {
        add_misc_note(t, "SejongRoot=" + t.deprel);
        t.deprel = "root";
      }
      continue;
    }
    const std::string ud = table.to_ud(tree, tree.at(t.index));
    if (ud.empty()) {
      if (!opts.lax)
        throw MappingError("token " + std::to_string(t.index) + " of sentence '" +
                           tree.sentence_id + "': unknown Sejong label '" + t.deprel +
                           "'");
      if (warnings)
        warnings->push_back("token " + std::to_string(t.index) +
                            ": unknown Sejong label '" + t.deprel +
                            "' mapped to dep");
      t.deprel = "dep";
      continue;
    }
    t.deprel = ud;
  }
  return out;
}

std::vector<Diagnostic> check_right_headed(const DependencyTree& tree) {
  std::vector<Diagnostic> out;
  for (const Token& t : tree.tokens) {
    if (t.head < 1 || t.head > tree.size()) continue;
    if (t.head < t.index) {
      Diagnostic d;
      d.code = "SEJONG-RIGHTWARD";
      d.severity = Severity::kError;
      d.sentence_id = tree.sentence_id;
      d.token_indices = {t.index};
      d.message = "edge " + std::to_string(t.head) + "->" + std::to_string(t.index) +
                  " (" + t.deprel + ") violates the right-to-left pattern";
      out.push_back(std::move(d));
    }
  }
  sort_diagnostics(out);
  return out;
}

std::vector<Diagnostic> audit_with_frames(const DependencyTree& tree,
                                          const Lexicon& lex) {
  std::vector<Diagnostic> out;
  for (const Token& h : tree.tokens) {
    if (!h.is_verbal()) continue;
    const SubcatFrame* frame = best_frame_for(tree, h.index, lex);
    if (!frame) continue;
    const bool has_subject_slot =
        std::any_of(frame->slots.begin(), frame->slots.end(),
                    [](const FrameSlot& s) { return s.relation == "nsubj"; });
    for (int d : children(tree, h.index)) {
      const Token& t = tree.at(d);
      const std::string_view uni = deprel::universal(t.deprel);
      if (uni == "punct" || uni == "aux" || uni == "mark" || uni == "cop") continue;
      const bool subjectish = t.deprel == "nsubj" || t.deprel == "nsubj:pass" ||
                              t.deprel == "csubj" || t.deprel == "csubj:pass" ||
                              t.deprel == "dislocated:nsubj";
      if (subjectish && has_subject_slot) continue;
      const FrameSlot* slot = matching_slot(*frame, t, lex.markers());
      if (!slot) continue;  // no knowledge about this dependent
      if (relation_satisfies_slot(t.deprel, *slot)) continue;
      Diagnostic diag;
      diag.code = "FRAME-MISMATCH";
      diag.severity = Severity::kError;
      diag.sentence_id = tree.sentence_id;
      diag.token_indices = {d};
      diag.message = "token " + std::to_string(d) + " ('" + t.form + "') is " +
                     t.deprel + " but the frame of '" + frame->predicate_lemma +
                     "' licenses " + slot->relation + " for marker " +
                     (slot->markers.empty() ? "?" : slot->markers.front());
      out.push_back(std::move(diag));
    }
  }
  sort_diagnostics(out);
  return out;
}

}  // namespace kudc
