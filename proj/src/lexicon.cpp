#include "kudc/lexicon.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <regex>
#include <sstream>

#include "kudc/hangul.hpp"

namespace kudc {

namespace {

std::vector<std::string> split(std::string_view s, char sep, bool keep_empty = true) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = s.find(sep, start);
    const auto piece = s.substr(start, pos == std::string_view::npos
                                           ? std::string_view::npos
                                           : pos - start);
    if (keep_empty || !piece.empty()) out.emplace_back(piece);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

const std::set<std::string> kNominativeMarkers = {"이", "가"};
const std::set<std::string> kAccusativeMarkers = {"을", "를"};

// Slot markers decide the target relation; 에게 counts as a dative recipient
// (iobj) only in frames with three or more argument slots.
std::string slot_relation(const std::vector<std::string>& markers, size_t arity) {
  const bool all_nom = std::all_of(markers.begin(), markers.end(), [](const auto& m) {
    return kNominativeMarkers.count(m) > 0;
  });
  if (all_nom) return "nsubj";
  const bool all_acc = std::all_of(markers.begin(), markers.end(), [](const auto& m) {
    return kAccusativeMarkers.count(m) > 0;
  });
  if (all_acc) return "obj";
  const bool all_dat = std::all_of(markers.begin(), markers.end(),
                                   [](const auto& m) { return m == "에게"; });
  if (all_dat && arity >= 3) return "iobj";
  return "obl:arg";
}

const std::regex kSlotTerm(R"(^([A-Za-z])=N([0-9]+)-(.+)$)");
const std::regex kRoleLine(R"(^\"([A-Za-z])\"=\"([A-Za-z]+)\"\s*:\s*(.*)$)");

// At most one slot per relation, except obl:arg (a frame may license
// multiple obliques).
void check_slot_relations(const SubcatFrame& frame, int line_no) {
  std::set<std::string> seen;
  for (const auto& slot : frame.slots) {
    if (slot.relation == "obl:arg") continue;
    if (!seen.insert(slot.relation).second)
      throw LexiconError("line " + std::to_string(line_no) + ": frame '" +
                         frame.predicate_lemma + "' has two " + slot.relation +
                         " slots");
  }
}

bool parse_frame_line(const std::string& line, int line_no, SubcatFrame* frame) {
  std::istringstream terms(line);
  std::string term;
  bool in_parens = false;
  std::string predicate;
  std::vector<FrameSlot> slots;
  while (terms >> term) {
    if (in_parens) {
      if (ends_with(term, ")")) in_parens = false;
      continue;
    }
    if (term.front() == '(') {
      if (!ends_with(term, ")")) in_parens = true;
      continue;
    }
    std::smatch m;
    if (std::regex_match(term, m, kSlotTerm)) {
      FrameSlot slot;
      slot.variable = m[1];
      slot.arg_index = "N" + m[2].str();
      slot.markers = split(m[3].str(), '|', /*keep_empty=*/false);
      if (slot.markers.empty())
        throw LexiconError("line " + std::to_string(line_no) +
                           ": slot '" + term + "' has no markers");
      slots.push_back(std::move(slot));
    } else if (predicate.empty()) {
      predicate = term;
    } else {
      throw LexiconError("line " + std::to_string(line_no) +
                         ": unparseable frame line (extra term '" + term + "')");
    }
  }
  if (slots.empty()) return false;
  if (predicate.empty())
    throw LexiconError("line " + std::to_string(line_no) +
                       ": frame line has no predicate lemma");
  for (auto& slot : slots) slot.relation = slot_relation(slot.markers, slots.size());
  frame->predicate_lemma = predicate;
  frame->slots = std::move(slots);
  return true;
}

SubcatFrame parse_escape_hatch(const std::string& line, int line_no) {
  const auto cols = split(line, '\t');
  if (cols.size() < 3)
    throw LexiconError("line " + std::to_string(line_no) +
                       ": frame escape hatch needs predicate and slots");
  SubcatFrame frame;
  frame.predicate_lemma = cols[1];
  for (size_t i = 2; i < cols.size(); ++i) {
    const auto parts = split(cols[i], ':');
    if (parts.size() < 3)
      throw LexiconError("line " + std::to_string(line_no) + ": bad slot spec '" +
                         cols[i] + "'");
    FrameSlot slot;
    const auto var = split(parts[0], '=');
    slot.variable = var[0];
    slot.arg_index = var.size() > 1 ? var[1] : "";
    slot.markers = split(parts[1], '|', /*keep_empty=*/false);
    if (slot.markers.empty())
      throw LexiconError("line " + std::to_string(line_no) + ": slot '" + cols[i] +
                         "' has no markers");
    slot.relation = parts[2];
    size_t next = 3;
    // the obl:arg relation itself contains the field separator
    if (slot.relation == "obl" && parts.size() > 3 && parts[3] == "arg") {
      slot.relation = "obl:arg";
      next = 4;
    }
    if (slot.relation != "nsubj" && slot.relation != "obj" &&
        slot.relation != "iobj" && slot.relation != "obl:arg")
      throw LexiconError("line " + std::to_string(line_no) + ": slot relation '" +
                         slot.relation + "' must be nsubj, obj, iobj or obl:arg");
    if (parts.size() > next) slot.semantic_role = parts[next];
    if (parts.size() > next + 1) slot.selectional = split(parts[next + 1], '|', false);
    frame.slots.push_back(std::move(slot));
  }
  return frame;
}

}  // namespace

std::vector<SubcatFrame> parse_frame_file(std::istream& in,
                                          std::vector<std::string>* warnings) {
  std::vector<SubcatFrame> frames;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t[0] == '(') continue;  // translation continuation line
    if (line.rfind("frame\t", 0) == 0) {
      SubcatFrame escaped = parse_escape_hatch(line, line_no);
      check_slot_relations(escaped, line_no);
      frames.push_back(std::move(escaped));
      continue;
    }
    std::smatch m;
    if (std::regex_match(t, m, kRoleLine)) {
      if (frames.empty()) {
        if (warnings)
          warnings->push_back("line " + std::to_string(line_no) +
                              ": role line before any frame line");
        continue;
      }
      bool found = false;
      for (auto& slot : frames.back().slots) {
        if (slot.variable == m[1]) {
          slot.semantic_role = m[2];
          for (auto& cat : split(m[3].str(), '|')) {
            const std::string c = trim(cat);
            if (!c.empty()) slot.selectional.push_back(c);
          }
          found = true;
          break;
        }
      }
      if (!found && warnings)
        warnings->push_back("line " + std::to_string(line_no) + ": role line for '" +
                            m[1].str() + "' has no matching slot variable");
      continue;
    }
    SubcatFrame frame;
    if (parse_frame_line(t, line_no, &frame)) {
      check_slot_relations(frame, line_no);
      frames.push_back(std::move(frame));
      continue;
    }
    throw LexiconError("line " + std::to_string(line_no) + ": unparseable frame line");
  }
  return frames;
}

std::vector<SubcatFrame> parse_frame_file(const std::string& text,
                                          std::vector<std::string>* warnings) {
  std::istringstream in(text);
  return parse_frame_file(in, warnings);
}

namespace {

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += sep;
    out += p;
  }
  return out;
}

// True when the slot is expressible in the plain dictionary notation, i.e.
// its relation re-derives from markers and arity.
bool notation_expressible(const SubcatFrame& frame) {
  for (const auto& slot : frame.slots) {
    if (slot.arg_index.size() < 2 || slot.arg_index[0] != 'N') return false;
    if (slot.relation != slot_relation(slot.markers, frame.slots.size()))
      return false;
  }
  return true;
}

}  // namespace

std::string format_frame(const SubcatFrame& frame) {
  std::string out;
  if (notation_expressible(frame)) {
    std::vector<std::string> terms;
    for (const auto& slot : frame.slots)
      terms.push_back(slot.variable + "=" + slot.arg_index + "-" +
                      join(slot.markers, "|"));
    terms.push_back(frame.predicate_lemma);
    out = join(terms, " ") + "\n";
    for (const auto& slot : frame.slots) {
      if (slot.semantic_role.empty()) continue;
      out += "\"" + slot.variable + "\"=\"" + slot.semantic_role +
             "\": " + join(slot.selectional, "|") + "\n";
    }
    return out;
  }
  out = "frame\t" + frame.predicate_lemma;
  for (const auto& slot : frame.slots) {
    out += "\t" + slot.variable + "=" + slot.arg_index + ":" +
           join(slot.markers, "|") + ":" + slot.relation;
    if (!slot.semantic_role.empty() || !slot.selectional.empty())
      out += ":" + slot.semantic_role;
    if (!slot.selectional.empty()) out += ":" + join(slot.selectional, "|");
  }
  out += "\n";
  return out;
}

std::string format_frames(const std::vector<SubcatFrame>& frames) {
  std::string out;
  for (const auto& f : frames) out += format_frame(f);
  return out;
}

std::string normalize_predicate_lemma(std::string_view lemma) {
  const size_t plus = lemma.find('+');
  std::string_view stem = plus == std::string_view::npos ? lemma : lemma.substr(0, plus);
  // Strip a citation-form 다 unless that is all there is.
  static constexpr std::string_view kDa = "다";
  if (stem.size() > kDa.size() && ends_with(stem, kDa))
    stem.remove_suffix(kDa.size());
  return std::string(stem);
}

// --- Marker classes ----------------------------------------------------------

std::string marker_class_name(MarkerClass c) {
  switch (c) {
    case MarkerClass::kNominative: return "NOMINATIVE";
    case MarkerClass::kAccusative: return "ACCUSATIVE";
    case MarkerClass::kDative: return "DATIVE";
    case MarkerClass::kAdverbial: return "ADVERBIAL";
    case MarkerClass::kVocative: return "VOCATIVE";
    case MarkerClass::kTopic: return "TOPIC";
    case MarkerClass::kNominalized: return "NOMINALIZED";
    case MarkerClass::kQuotative: return "QUOTATIVE";
    case MarkerClass::kNone: return "NONE";
  }
  return "NONE";
}

void MarkerTable::check() const {
  auto disjoint = [](const std::set<std::string>& a, const std::set<std::string>& b,
                     const char* what) {
    for (const auto& t : a)
      if (b.count(t))
        throw LexiconError(std::string("marker table: ") + what +
                           " sets overlap on tag '" + t + "'");
  };
  disjoint(vocative_tags, adverbial_postposition_tags, "vocative/adverbial");
  disjoint(nominative_tags, accusative_tags, "nominative/accusative");
  disjoint(nominative_tags, adverbial_postposition_tags, "nominative/adverbial");
  disjoint(accusative_tags, adverbial_postposition_tags, "accusative/adverbial");
}

namespace {

bool form_ends_with_marker(const MarkerTable& table, const Token& tok,
                           std::string_view marker) {
  if (ends_with(tok.form, marker)) return true;
  // Case markers stack with topic particles (에 -> 에는).
  for (const auto& tp : table.topic_particles)
    if (ends_with(tok.form, std::string(marker) + tp)) return true;
  return false;
}

}  // namespace

MarkerClass classify_token(const MarkerTable& table, const Token& token) {
  const auto elems = token.xpos_elements();
  if (!elems.empty()) {
    const std::string& f = elems.back();
    if (table.vocative_tags.count(f)) return MarkerClass::kVocative;
    if (table.quotative_tags.count(f)) return MarkerClass::kQuotative;
    if (table.aux_particle_tags.count(f)) {
      for (const auto& tp : table.topic_particles)
        if (ends_with(token.form, tp)) return MarkerClass::kTopic;
    }
    if (table.nominative_tags.count(f)) return MarkerClass::kNominative;
    if (table.accusative_tags.count(f)) return MarkerClass::kAccusative;
    if (table.dative_tags.count(f)) return MarkerClass::kDative;
    if (table.adverbial_postposition_tags.count(f)) {
      for (const auto& ds : table.dative_surfaces)
        if (form_ends_with_marker(table, token, ds)) return MarkerClass::kDative;
      return MarkerClass::kAdverbial;
    }
  }
  for (const auto& e : elems)
    if (table.nominalizer_affix_tags.count(e)) return MarkerClass::kNominalized;
  return MarkerClass::kNone;
}

bool has_nominalizer_affix(const MarkerTable& table, const Token& token) {
  for (const auto& e : token.xpos_elements())
    if (table.nominalizer_affix_tags.count(e)) return true;
  return false;
}

bool has_copula_tag(const MarkerTable& table, const Token& token) {
  for (const auto& e : token.xpos_elements())
    if (table.copula_tags.count(e)) return true;
  return false;
}

bool token_bears_marker(const MarkerTable& table, const Token& token,
                        std::string_view marker) {
  const auto elems = token.xpos_elements();
  if (elems.empty()) return false;
  const std::string& f = elems.back();
  const bool functional = table.nominative_tags.count(f) ||
                          table.accusative_tags.count(f) ||
                          table.dative_tags.count(f) ||
                          table.adverbial_postposition_tags.count(f) ||
                          table.aux_particle_tags.count(f) ||
                          table.vocative_tags.count(f) ||
                          table.quotative_tags.count(f);
  if (!functional) return false;
  if (form_ends_with_marker(table, token, marker)) return true;
  const MarkerClass cls = classify_token(table, token);
  if (kNominativeMarkers.count(std::string(marker)))
    return cls == MarkerClass::kNominative;
  if (kAccusativeMarkers.count(std::string(marker)))
    return cls == MarkerClass::kAccusative;
  if (table.dative_surfaces.count(std::string(marker)))
    return cls == MarkerClass::kDative;
  return false;
}

// --- Verb inventory ------------------------------------------------------------

VerbInventory VerbInventory::seeds() {
  VerbInventory inv;
  inv.tam = {
      {"하", {"어야", "아야"}},
      {"있", {"고"}},
      {"되", {"게"}},
      {"않", {"지"}},
  };
  inv.catenative = {
      {"싶", ""},
      {"하", "quot"},
      {"좋", "면"},
  };
  inv.fixed = {
      {"뿐 아니라", {"뿐", "아니라"}, "case", "", ""},
      {"에 따라", {"따라"}, "fixed", "에", ""},
      {"-ㄹ 듯", {"듯"}, "fixed", "", "ㄹ"},
  };
  return inv;
}

const TamAuxiliary* VerbInventory::find_tam(std::string_view lemma) const {
  for (const auto& t : tam)
    if (t.lemma == lemma) return &t;
  return nullptr;
}

const CatenativeVerb* VerbInventory::find_catenative(std::string_view lemma) const {
  for (const auto& c : catenative)
    if (c.lemma == lemma) return &c;
  return nullptr;
}

bool connective_matches(const Token& tok, std::string_view connective) {
  const auto segs = split(tok.lemma, '+');
  if (!segs.empty() && segs.back() == connective) return true;
  return ends_with(tok.lemma, connective) || ends_with(tok.form, connective);
}

bool has_quotative_connective(const Token& tok) {
  static const char* kQuotConnectives[] = {"라고", "다고", "자고", "냐고"};
  for (const char* c : kQuotConnectives)
    if (connective_matches(tok, c)) return true;
  return false;
}

std::optional<FixedMatch> match_fixed(const VerbInventory& inv,
                                      const DependencyTree& tree, int start_index) {
  if (start_index < 1 || start_index > tree.size())
    throw std::out_of_range("token index " + std::to_string(start_index));
  const FixedExpression* best = nullptr;
  for (const auto& expr : inv.fixed) {
    const int k = static_cast<int>(expr.span_forms.size());
    if (k == 0 || start_index + k - 1 > tree.size()) continue;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i)
      ok = tree.at(start_index + i).form == expr.span_forms[static_cast<size_t>(i)];
    if (!ok) continue;
    if (!expr.host_suffix.empty() || !expr.host_final_jamo.empty()) {
      if (start_index < 2) continue;
      const Token& prev = tree.at(start_index - 1);
      if (!expr.host_suffix.empty() && !ends_with(prev.form, expr.host_suffix))
        continue;
      if (!expr.host_final_jamo.empty() &&
          !hangul::ends_with_final(prev.form, expr.host_final_jamo))
        continue;
    }
    if (!best || expr.span_forms.size() > best->span_forms.size()) best = &expr;
  }
  if (!best) return std::nullopt;
  return FixedMatch{best, start_index,
                    start_index + static_cast<int>(best->span_forms.size()) - 1};
}

// --- Lexicon bundle --------------------------------------------------------------

void Lexicon::add_frame(SubcatFrame frame) {
  by_lemma_[normalize_predicate_lemma(frame.predicate_lemma)].push_back(frames_.size());
  frames_.push_back(std::move(frame));
}

void Lexicon::load_frames(std::istream& in, std::vector<std::string>* warnings) {
  for (auto& f : parse_frame_file(in, warnings)) add_frame(std::move(f));
}

void Lexicon::load_frames_file(const std::string& path,
                               std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open frame file '" + path + "'");
  load_frames(in, warnings);
}

void Lexicon::load_inventory(std::istream& in, std::vector<std::string>* warnings) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty() || line[0] == '#') continue;
    const auto cols = split(line, '\t');
    const std::string& kind = cols[0];
    if (kind == "tam") {
      if (cols.size() < 3)
        throw LexiconError("line " + std::to_string(line_no) +
                           ": tam entry needs lemma and connectives");
      TamAuxiliary entry{normalize_predicate_lemma(cols[1]),
                         split(cols[2], '|', false)};
      for (auto& conn : entry.connectives)
        if (!conn.empty() && conn[0] == '-') conn.erase(0, 1);
      auto it = std::find_if(inventory_.tam.begin(), inventory_.tam.end(),
                             [&](const auto& t) { return t.lemma == entry.lemma; });
      if (it != inventory_.tam.end())
        *it = std::move(entry);
      else
        inventory_.tam.push_back(std::move(entry));
    } else if (kind == "catenative") {
      if (cols.size() < 2)
        throw LexiconError("line " + std::to_string(line_no) +
                           ": catenative entry needs a lemma");
      CatenativeVerb entry{normalize_predicate_lemma(cols[1]),
                           cols.size() > 2 ? cols[2] : ""};
      if (!entry.condition.empty() && entry.condition[0] == '-')
        entry.condition.erase(0, 1);
      auto it = std::find_if(inventory_.catenative.begin(), inventory_.catenative.end(),
                             [&](const auto& c) { return c.lemma == entry.lemma; });
      if (it != inventory_.catenative.end())
        *it = std::move(entry);
      else
        inventory_.catenative.push_back(std::move(entry));
    } else if (kind == "fixed") {
      if (cols.size() < 3)
        throw LexiconError("line " + std::to_string(line_no) +
                           ": fixed entry needs forms and relation");
      FixedExpression entry;
      entry.name = cols[1];
      for (auto& f : split(cols[1], ' ', false)) entry.span_forms.push_back(f);
      entry.host_relation = cols[2];
      if (entry.host_relation != "case" && entry.host_relation != "fixed")
        throw LexiconError("line " + std::to_string(line_no) +
                           ": fixed host relation must be 'case' or 'fixed'");
      for (size_t i = 3; i < cols.size(); ++i) {
        if (cols[i].rfind("host-suffix=", 0) == 0)
          entry.host_suffix = cols[i].substr(12);
        else if (cols[i].rfind("host-final=", 0) == 0)
          entry.host_final_jamo = cols[i].substr(11);
        else if (warnings)
          warnings->push_back("line " + std::to_string(line_no) +
                              ": unknown fixed parameter '" + cols[i] + "'");
      }
      auto it = std::find_if(inventory_.fixed.begin(), inventory_.fixed.end(),
                             [&](const auto& f) { return f.name == entry.name; });
      if (it != inventory_.fixed.end())
        *it = std::move(entry);
      else
        inventory_.fixed.push_back(std::move(entry));
    } else {
      throw LexiconError("line " + std::to_string(line_no) +
                         ": unknown inventory entry kind '" + kind + "'");
    }
  }
}

void Lexicon::load_inventory_file(const std::string& path,
                                  std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw LexiconError("cannot open inventory file '" + path + "'");
  load_inventory(in, warnings);
}

std::vector<const SubcatFrame*> Lexicon::lookup_frames(std::string_view lemma) const {
  std::vector<const SubcatFrame*> out;
  const auto it = by_lemma_.find(normalize_predicate_lemma(lemma));
  if (it == by_lemma_.end()) return out;
  for (size_t idx : it->second) out.push_back(&frames_[idx]);
  return out;
}

}  // namespace kudc
