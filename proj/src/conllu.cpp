#include "kudc/conllu.hpp"

#include <cctype>
#include <istream>
#include <set>
#include <sstream>
#include <unordered_set>

namespace kudc {

namespace {

const std::unordered_set<std::string_view> kUniversalRelations = {
    "root",    "nsubj",      "obj",    "iobj",  "csubj", "ccomp", "xcomp",
    "obl",     "vocative",   "dislocated",      "aux",   "cop",   "mark",
    "case",    "fixed",      "flat",   "compound",       "conj",  "nmod",
    "det",     "amod",       "advmod", "advcl", "punct", "dep"};

const std::unordered_set<std::string_view> kLegalSubtyped = {
    "nsubj:pass", "csubj:pass", "obl:arg", "dislocated:nsubj", "nmod:poss"};

const std::unordered_set<std::string_view> kSejongLabels = {
    "NP_SBJ", "NP_OBJ", "NP_AJT", "NP_MOD", "NP_CNJ", "NP", "VP", "VP_MOD",
    "VNP",    "AP",     "DP",     "IP",     "X",      "L",  "R"};

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

bool all_digits(std::string_view s) {
  if (s.empty() || s.size() > 9) return false;  // 9 digits always fit in int
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::string placeholder(const std::string& field) {
  return field.empty() ? "_" : field;
}

}  // namespace

// --- Relation ---------------------------------------------------------------

std::optional<Relation> Relation::parse(std::string_view dep) {
  const size_t colon = dep.find(':');
  if (colon == std::string_view::npos) {
    if (!kUniversalRelations.count(dep)) return std::nullopt;
    return Relation{std::string(dep), ""};
  }
  if (dep.find(':', colon + 1) != std::string_view::npos) return std::nullopt;
  if (!kLegalSubtyped.count(dep)) return std::nullopt;
  return Relation{std::string(dep.substr(0, colon)),
                  std::string(dep.substr(colon + 1))};
}

std::string Relation::str() const {
  return subtype.empty() ? universal : universal + ":" + subtype;
}

namespace deprel {

bool is_known_universal(std::string_view label) {
  return kUniversalRelations.count(label) > 0;
}

bool is_valid_ud(std::string_view dep) { return Relation::parse(dep).has_value(); }

bool is_known_sejong(std::string_view label) {
  return kSejongLabels.count(label) > 0;
}

std::string_view universal(std::string_view dep) {
  const size_t colon = dep.find(':');
  return colon == std::string_view::npos ? dep : dep.substr(0, colon);
}

}  // namespace deprel

// --- Token / DependencyTree --------------------------------------------------

std::vector<std::string> Token::xpos_elements() const {
  std::vector<std::string> out;
  if (xpos.empty()) return out;
  for (auto& e : split(xpos, '+')) {
    for (auto& c : e) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    out.push_back(std::move(e));
  }
  return out;
}

bool Token::is_verbal() const {
  return upos == "VERB" || upos == "AUX" || upos == "ADJ";
}

bool Token::is_nominal() const {
  return upos == "NOUN" || upos == "PROPN" || upos == "PRON" || upos == "NUM";
}

const Token& DependencyTree::at(int index) const {
  if (index < 1 || index > size())
    throw std::out_of_range("token index " + std::to_string(index));
  return tokens[static_cast<size_t>(index - 1)];
}

Token& DependencyTree::at(int index) {
  if (index < 1 || index > size())
    throw std::out_of_range("token index " + std::to_string(index));
  return tokens[static_cast<size_t>(index - 1)];
}

// --- Parsing ------------------------------------------------------------------

namespace {

void check_deprel(const std::string& dep, DeprelPolicy policy, int line,
                  std::vector<std::string>* warnings) {
  switch (policy) {
    case DeprelPolicy::kUdStrict:
      if (!deprel::is_valid_ud(dep))
        throw ParseError(line, "unknown dependency relation '" + dep + "'");
      break;
    case DeprelPolicy::kUdLax:
      if (!deprel::is_valid_ud(dep) && warnings)
        warnings->push_back("line " + std::to_string(line) +
                            ": unknown dependency relation '" + dep + "'");
      break;
    case DeprelPolicy::kSejongStrict:
      if (!deprel::is_known_sejong(dep) && dep != "root")
        throw ParseError(line, "unknown Sejong label '" + dep + "'");
      break;
    case DeprelPolicy::kAny:
      break;
  }
}

Token parse_token_line(const std::string& line, int line_no, int expected_index,
                       DeprelPolicy policy, std::vector<std::string>* warnings) {
  const auto cols = split(line, '\t');
  if (cols.size() != 10)
    throw ParseError(line_no, "expected 10 tab-separated columns, got " +
                                  std::to_string(cols.size()));
  for (size_t i = 0; i < cols.size(); ++i)
    if (cols[i].empty())
      throw ParseError(line_no, "empty column " + std::to_string(i + 1));

  const std::string& id = cols[0];
  if (id.find('-') != std::string::npos)
    throw ParseError(line_no, "multiword token ranges ('" + id +
                                  "') are not supported");
  if (id.find('.') != std::string::npos)
    throw ParseError(line_no, "empty nodes ('" + id + "') are not supported");
  if (!all_digits(id)) throw ParseError(line_no, "non-integer token index '" + id + "'");

  Token tok;
  tok.index = std::stoi(id);
  if (tok.index != expected_index)
    throw ParseError(line_no, "token index " + id + " out of sequence (expected " +
                                  std::to_string(expected_index) + ")");

  tok.form = cols[1];
  tok.lemma = cols[2];
  tok.upos = cols[3];
  tok.xpos = cols[4] == "_" ? "" : cols[4];
  if (!tok.xpos.empty()) {
    for (const auto& e : split(tok.xpos, '+'))
      if (e.empty()) throw ParseError(line_no, "empty XPOS element in '" + cols[4] + "'");
  }
  tok.feats = cols[5] == "_" ? "" : cols[5];

  if (!all_digits(cols[6]))
    throw ParseError(line_no, "non-integer head '" + cols[6] + "'");
  tok.head = std::stoi(cols[6]);
  if (tok.head == tok.index)
    throw ParseError(line_no, "token " + id + " is its own head");

  tok.deprel = cols[7];
  check_deprel(tok.deprel, policy, line_no, warnings);

  tok.deps = cols[8] == "_" ? "" : cols[8];
  tok.misc = cols[9] == "_" ? "" : cols[9];
  return tok;
}

std::string comment_value(const std::string& line, std::string_view key) {
  // "# sent_id = x" style metadata.
  std::string prefix = "# ";
  prefix += key;
  prefix += " = ";
  if (line.rfind(prefix, 0) == 0) return line.substr(prefix.size());
  return "";
}

}  // namespace

std::vector<DependencyTree> parse_document(std::istream& in, const ParseOptions& opts,
                                           std::vector<std::string>* warnings) {
  std::vector<DependencyTree> trees;
  DependencyTree cur;
  std::vector<int> token_lines;  // source line of each token, for head checks
  int line_no = 0;
  int first_line = 0;

  auto finalize = [&]() {
    if (cur.comments.empty() && cur.tokens.empty()) return;
    if (cur.tokens.empty())
      throw ParseError(first_line, "comment block without token lines");
    const int n = cur.size();
    for (int i = 0; i < n; ++i) {
      if (cur.tokens[static_cast<size_t>(i)].head > n)
        throw ParseError(token_lines[static_cast<size_t>(i)],
                         "head " + std::to_string(cur.tokens[static_cast<size_t>(i)].head) +
                             " out of range (sentence has " + std::to_string(n) +
                             " tokens)");
    }
    trees.push_back(std::move(cur));
    cur = DependencyTree{};
    token_lines.clear();
    first_line = 0;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      finalize();
      continue;
    }
    if (first_line == 0) first_line = line_no;
    if (line[0] == '#') {
      cur.comments.push_back(line);
      if (auto v = comment_value(line, "sent_id"); !v.empty()) cur.sentence_id = v;
      if (auto v = comment_value(line, "text"); !v.empty()) cur.text = v;
      continue;
    }
    if (!cur.tokens.empty() && cur.tokens.back().index == 0)
      throw ParseError(line_no, "internal: bad token state");
    cur.tokens.push_back(parse_token_line(line, line_no, cur.size() + 1,
                                          opts.deprel_policy, warnings));
    token_lines.push_back(line_no);
  }
  finalize();
  return trees;
}

std::vector<DependencyTree> parse_document(const std::string& text,
                                           const ParseOptions& opts,
                                           std::vector<std::string>* warnings) {
  std::istringstream in(text);
  return parse_document(in, opts, warnings);
}

// --- Serialization -------------------------------------------------------------

std::string serialize_tree(const DependencyTree& tree) {
  if (!is_wellformed(tree))
    throw SerializeError("refusing to serialize ill-formed tree '" +
                         (tree.sentence_id.empty() ? "<unnamed>" : tree.sentence_id) +
                         "'");
  std::string out;
  for (const auto& c : tree.comments) {
    out += c;
    out += '\n';
  }
  for (const auto& t : tree.tokens) {
    out += std::to_string(t.index);
    out += '\t';
    out += t.form;
    out += '\t';
    out += t.lemma;
    out += '\t';
    out += t.upos;
    out += '\t';
    out += placeholder(t.xpos);
    out += '\t';
    out += placeholder(t.feats);
    out += '\t';
    out += std::to_string(t.head);
    out += '\t';
    out += t.deprel;
    out += '\t';
    out += placeholder(t.deps);
    out += '\t';
    out += placeholder(t.misc);
    out += '\n';
  }
  out += '\n';
  return out;
}

std::string serialize_document(const std::vector<DependencyTree>& trees) {
  std::string out;
  for (const auto& t : trees) out += serialize_tree(t);
  return out;
}

// --- Well-formedness -------------------------------------------------------------

std::vector<Diagnostic> check_wellformed(const DependencyTree& tree) {
  std::vector<Diagnostic> out;
  const int n = tree.size();
  if (n == 0) return out;

  std::vector<int> roots;
  for (const auto& t : tree.tokens)
    if (t.head == 0) roots.push_back(t.index);
  if (roots.size() > 1) {
    Diagnostic d;
    d.code = "TREE-MULTIROOT";
    d.sentence_id = tree.sentence_id;
    d.token_indices = roots;
    d.message = "sentence has " + std::to_string(roots.size()) + " root tokens";
    out.push_back(std::move(d));
  }

  // Walk head chains. State: 0 unvisited, 1 in current walk, 2 resolved.
  // Tokens sitting on a cycle are grouped per cycle; tokens whose own head
  // is out of range are orphans. Tokens merely leading into a cycle or a
  // dangling head are covered by those findings.
  std::vector<int> state(static_cast<size_t>(n) + 1, 0);
  std::set<std::vector<int>> cycles;
  for (int start = 1; start <= n; ++start) {
    if (state[static_cast<size_t>(start)] != 0) continue;
    std::vector<int> path;
    int cur = start;
    while (true) {
      if (cur == 0) break;
      const size_t ci = static_cast<size_t>(cur);
      if (state[ci] == 2) break;
      if (state[ci] == 1) {
        // Closed a cycle within this walk: members from cur onwards.
        std::vector<int> cyc;
        bool in = false;
        for (int p : path) {
          if (p == cur) in = true;
          if (in) cyc.push_back(p);
        }
        std::sort(cyc.begin(), cyc.end());
        cycles.insert(cyc);
        break;
      }
      state[ci] = 1;
      path.push_back(cur);
      const int h = tree.tokens[ci - 1].head;
      if (h == cur) {  // self-loop is a 1-cycle
        cycles.insert({cur});
        break;
      }
      if (h < 0 || h > n) {
        Diagnostic d;
        d.code = "TREE-ORPHAN";
        d.sentence_id = tree.sentence_id;
        d.token_indices = {cur};
        d.message = "token " + std::to_string(cur) + " has out-of-range head " +
                    std::to_string(h);
        out.push_back(std::move(d));
        break;
      }
      cur = h;
    }
    for (int p : path) state[static_cast<size_t>(p)] = 2;
  }
  for (const auto& cyc : cycles) {
    Diagnostic d;
    d.code = "TREE-CYCLE";
    d.sentence_id = tree.sentence_id;
    d.token_indices = cyc;
    std::string ids;
    for (int i : cyc) {
      if (!ids.empty()) ids += ",";
      ids += std::to_string(i);
    }
    d.message = "head cycle through tokens " + ids;
    out.push_back(std::move(d));
  }

  if (roots.empty() && cycles.empty() &&
      std::none_of(out.begin(), out.end(),
                   [](const Diagnostic& d) { return d.code == "TREE-ORPHAN"; })) {
    // Cannot happen with in-range heads, but keep the checker total.
    Diagnostic d;
    d.code = "TREE-MULTIROOT";
    d.sentence_id = tree.sentence_id;
    d.message = "sentence has no root token";
    out.push_back(std::move(d));
  }

  sort_diagnostics(out);
  return out;
}

std::vector<int> children(const DependencyTree& tree, int index) {
  if (index < 0 || index > tree.size())
    throw std::out_of_range("token index " + std::to_string(index));
  std::vector<int> out;
  for (const auto& t : tree.tokens)
    if (t.head == index) out.push_back(t.index);
  return out;
}

}  // namespace kudc
