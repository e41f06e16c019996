#include "kudc/rules.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace kudc {

namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Applies head/deprel writes on a working copy, remembers pre-pass values
// and emits the change records (clearing DEPS on every changed token).
class EdgeEditor {
 public:
  explicit EdgeEditor(DependencyTree& tree) : tree_(tree) {}

  void set(int token, int new_head, std::string new_deprel) {
    Token& t = tree_.at(token);
    if (t.head == new_head && t.deprel == new_deprel) return;
    original_.try_emplace(token, t.head, t.deprel);
    t.head = new_head;
    t.deprel = std::move(new_deprel);
  }

  // True if attaching `token` under `candidate_head` would close a cycle.
  bool would_cycle(int token, int candidate_head) const {
    int cur = candidate_head;
    for (int steps = 0; steps <= tree_.size() && cur != 0; ++steps) {
      if (cur == token) return true;
      cur = tree_.at(cur).head;
    }
    return false;
  }

  void finish(PassReport* report) {
    for (auto& [idx, old] : original_) {
      Token& t = tree_.at(idx);
      if (t.head == old.first && t.deprel == old.second) continue;
      t.deps.clear();  // stale enhanced deps are worse than absent ones
      if (report)
        report->changes.push_back({idx, old.first, old.second, t.head, t.deprel});
    }
  }

 private:
  DependencyTree& tree_;
  std::map<int, std::pair<int, std::string>> original_;
};

void add_note(PassReport* report, std::string note) {
  if (report) report->notes.push_back(std::move(note));
}

// Connected components over edges whose deprel is in `labels` and whose both
// endpoints satisfy `pred`. Each component is a head-subtree, so it has
// exactly one member attached outside. Members sorted ascending.
template <typename Pred>
std::vector<std::vector<int>> chain_components(const DependencyTree& tree,
                                               const std::set<std::string>& labels,
                                               Pred pred) {
  const int n = tree.size();
  std::vector<int> parent(static_cast<size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) parent[static_cast<size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  };
  for (const Token& t : tree.tokens) {
    if (t.head < 1 || !labels.count(t.deprel)) continue;
    if (!pred(t) || !pred(tree.at(t.head))) continue;
    parent[static_cast<size_t>(find(t.index))] = find(t.head);
  }
  std::map<int, std::vector<int>> groups;
  for (const Token& t : tree.tokens) groups[find(t.index)].push_back(t.index);
  std::vector<std::vector<int>> out;
  for (auto& [root, members] : groups) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

int component_root(const DependencyTree& tree, const std::vector<int>& members) {
  const std::set<int> mset(members.begin(), members.end());
  for (int m : members)
    if (!mset.count(tree.at(m).head)) return m;
  return members.front();
}

bool is_date_like(const Token& t) {
  if (t.upos == "NUM") return true;
  const auto elems = t.xpos_elements();
  if (!elems.empty() && (elems.front() == "sn" || elems.front() == "nr")) return true;
  static const char* kUnits[] = {"년", "월", "일", "시", "분", "초"};
  for (const char* u : kUnits)
    if (ends_with(t.form, u)) return true;
  return false;
}

// flat is kept for headless semi-fixed sequences (multiword proper names,
// dates/numerals); modifier+head-noun chains become compound.
std::string chain_label(const DependencyTree& tree, const std::vector<int>& members) {
  const bool all_propn = std::all_of(members.begin(), members.end(), [&](int m) {
    return tree.at(m).upos == "PROPN";
  });
  if (all_propn) return "flat";
  const bool all_date = std::all_of(members.begin(), members.end(), [&](int m) {
    return is_date_like(tree.at(m));
  });
  if (all_date) return "flat";
  return "compound";
}

// Star-shaped re-head of one chain component on its last (maximal) member:
// the new head takes over the old head's external edge and outside
// dependents, every other member attaches to it with `label`.
void rehead_component(DependencyTree& out, EdgeEditor& ed, PassReport* report,
                      const std::vector<int>& members, const std::string& label) {
  const std::set<int> mset(members.begin(), members.end());
  const int old_root = component_root(out, members);
  const int new_head = members.back();
  if (new_head != old_root) {
    const int ext_head = out.at(old_root).head;
    const std::string ext_deprel = out.at(old_root).deprel;
    if (ed.would_cycle(new_head, ext_head)) {
      add_note(report, "chain at token " + std::to_string(old_root) +
                           ": re-heading skipped (would create a cycle)");
      return;
    }
    std::vector<int> out_deps;
    for (const Token& t : out.tokens)
      if (!mset.count(t.index) && t.head == old_root) out_deps.push_back(t.index);
    ed.set(new_head, ext_head, ext_deprel);
    for (int d : out_deps) ed.set(d, new_head, out.at(d).deprel);
  }
  for (int m : members)
    if (m != new_head) ed.set(m, new_head, label);
}

bool catenative_condition_ok(const CatenativeVerb& cat, const Token& left) {
  if (cat.condition.empty()) return true;
  if (cat.condition == "quot") return has_quotative_connective(left);
  return connective_matches(left, cat.condition);
}

bool tam_pair_ok(const VerbInventory& inv, const Token& left, const Token& aux) {
  const TamAuxiliary* entry = inv.find_tam(normalize_predicate_lemma(aux.lemma));
  if (!entry) return false;
  for (const auto& conn : entry->connectives)
    if (connective_matches(left, conn)) return true;
  return false;
}

}  // namespace

bool ConversionConfig::pass_enabled(std::string_view name) const {
  return std::find(enabled_passes.begin(), enabled_passes.end(), name) !=
         enabled_passes.end();
}

// --- cop_direction ------------------------------------------------------------

DependencyTree pass_cop_direction(const DependencyTree& tree, const Lexicon& lex,
                                  PassReport* report) {
  if (report) report->pass = "cop_direction";
  DependencyTree out = tree;
  EdgeEditor ed(out);
  for (const Token& t : tree.tokens) {
    if (t.deprel != "cop" || t.head < 1) continue;
    const Token& cop = tree.at(t.head);
    // Defect shape: the copula token heads its nominal predicate with the
    // cop label sitting on the nominal's edge.
    if (!has_copula_tag(lex.markers(), cop) || has_copula_tag(lex.markers(), t))
      continue;
    if (cop.head == t.index) continue;
    ed.set(t.index, cop.head, cop.deprel);
    ed.set(cop.index, t.index, "cop");
  }
  ed.finish(report);
  return out;
}

// --- quotative_mark -----------------------------------------------------------

DependencyTree pass_quotative_mark(const DependencyTree& tree, const Lexicon& lex,
                                   PassReport* report) {
  if (report) report->pass = "quotative_mark";
  DependencyTree out = tree;
  EdgeEditor ed(out);
  const MarkerTable& mt = lex.markers();
  for (const Token& t : tree.tokens) {
    if (t.deprel != "case" || t.head < 1) continue;
    if (!tree.at(t.head).is_verbal()) continue;
    const bool quotative = classify_token(mt, t) == MarkerClass::kQuotative ||
                           mt.quotative_particles.count(t.form) > 0;
    if (quotative) ed.set(t.index, t.head, "mark");
  }
  ed.finish(report);
  return out;
}

// --- fixed_expressions ----------------------------------------------------------

DependencyTree pass_fixed_expressions(const DependencyTree& tree, const Lexicon& lex,
                                      PassReport* report) {
  if (report) report->pass = "fixed_expressions";
  DependencyTree out = tree;
  EdgeEditor ed(out);
  const int n = out.size();
  int i = 1;
  while (i <= n) {
    const auto m = match_fixed(lex.inventory(), out, i);
    if (!m) {
      ++i;
      continue;
    }
    std::set<int> span;
    for (int s = m->start; s <= m->end; ++s) span.insert(s);

    // Host: nearest preceding non-punct token, lifted to the head of any
    // flat/compound chain it sits in (chains are re-headed by later passes).
    int host = m->start - 1;
    while (host >= 1 && out.at(host).upos == "PUNCT") --host;
    if (host < 1) {
      add_note(report, "fixed expression '" + m->expr->name + "' at token " +
                           std::to_string(m->start) + ": no host found");
      i = m->end + 1;
      continue;
    }
    for (int steps = 0; steps <= n; ++steps) {
      const Token& h = out.at(host);
      if ((h.deprel != "flat" && h.deprel != "compound") || h.head < 1 ||
          span.count(h.head))
        break;
      host = h.head;
    }

    // External attachment of the span (pre-rewrite).
    int ext_head = -1;
    std::string ext_deprel;
    for (int s : span) {
      const Token& st = out.at(s);
      if (!span.count(st.head) && st.head != host) {
        ext_head = st.head;
        ext_deprel = st.deprel;
        break;
      }
    }
    // Tokens outside the span whose edges land inside it.
    std::vector<int> relands;
    for (const Token& t : out.tokens)
      if (!span.count(t.index) && t.index != host && span.count(t.head))
        relands.push_back(t.index);

    bool skip = false;
    if (ext_head >= 0 && span.count(out.at(host).head)) {
      // The host hung below the span; it takes over the span's attachment.
      if (ed.would_cycle(host, ext_head)) skip = true;
      if (!skip) ed.set(host, ext_head, ext_deprel);
    }
    if (!skip) {
      for (int t : relands) {
        if (ed.would_cycle(t, host)) {
          skip = true;
          break;
        }
        ed.set(t, host, out.at(t).deprel);
      }
    }
    if (skip) {
      add_note(report, "fixed expression '" + m->expr->name + "' at token " +
                           std::to_string(m->start) +
                           ": attachment skipped (would create a cycle)");
      i = m->end + 1;
      continue;
    }
    ed.set(m->start, host, m->expr->host_relation);
    for (int s = m->start + 1; s <= m->end; ++s) ed.set(s, m->start, "fixed");
    i = m->end + 1;
  }
  ed.finish(report);
  return out;
}

// --- nominal_head_finality ------------------------------------------------------

DependencyTree pass_nominal_head_finality(const DependencyTree& tree,
                                          const Lexicon& lex, PassReport* report) {
  (void)lex;
  if (report) report->pass = "nominal_head_finality";
  DependencyTree out = tree;
  EdgeEditor ed(out);
  const auto comps = chain_components(
      out, {"flat", "compound"}, [](const Token& t) { return !t.is_verbal(); });
  for (const auto& members : comps)
    rehead_component(out, ed, report, members, chain_label(out, members));
  ed.finish(report);
  return out;
}

// --- flat_last_head ---------------------------------------------------------------

DependencyTree pass_flat_last_head(const DependencyTree& tree, const Lexicon& lex,
                                   PassReport* report) {
  (void)lex;
  if (report) report->pass = "flat_last_head";
  DependencyTree out = tree;
  EdgeEditor ed(out);
  const auto comps =
      chain_components(out, {"flat"}, [](const Token&) { return true; });
  for (const auto& members : comps) {
    const bool all_verbal = std::all_of(members.begin(), members.end(), [&](int m) {
      return out.at(m).is_verbal();
    });
    if (all_verbal) continue;  // verbal restructuring decides those
    rehead_component(out, ed, report, members, "flat");
  }
  ed.finish(report);
  return out;
}

// --- verbal_restructure ------------------------------------------------------------

DependencyTree pass_verbal_restructure(const DependencyTree& tree, const Lexicon& lex,
                                       PassReport* report) {
  if (report) report->pass = "verbal_restructure";
  DependencyTree out = tree;
  EdgeEditor ed(out);
  const VerbInventory& inv = lex.inventory();
  const auto comps = chain_components(out, {"flat", "aux", "dep"},
                                      [](const Token& t) { return t.is_verbal(); });

  // Catenative clause upgrade: a clause attached as advcl/dep whose head is
  // a catenative predicate licensed by the clause-final verb becomes xcomp.
  auto upgraded_label = [&](const std::string& label, int ext_head, int last_verb) {
    if (label != "advcl" && label != "dep") return label;
    if (ext_head < 1 || !out.at(ext_head).is_verbal()) return label;
    const CatenativeVerb* cat =
        inv.find_catenative(normalize_predicate_lemma(out.at(ext_head).lemma));
    if (cat && catenative_condition_ok(*cat, out.at(last_verb))) return std::string("xcomp");
    return label;
  };

  // Singleton verbal tokens: clause-label upgrade only.
  {
    std::set<int> in_comp;
    for (const auto& members : comps) in_comp.insert(members.begin(), members.end());
    for (const Token& t : out.tokens) {
      if (!t.is_verbal() || in_comp.count(t.index)) continue;
      const std::string up = upgraded_label(t.deprel, t.head, t.index);
      if (up != t.deprel) ed.set(t.index, t.head, up);
    }
  }

  for (const auto& members : comps) {
    const std::set<int> mset(members.begin(), members.end());
    const int k = static_cast<int>(members.size());
    const int root = component_root(out, members);
    const int ext_head = out.at(root).head;
    const std::string ext_deprel = out.at(root).deprel;
    const int last = members.back();
    const int prev = members[static_cast<size_t>(k - 2)];

    if (ext_head >= 1 && mset.count(ext_head)) continue;  // malformed; leave alone

    // (b) catenative: the second verb becomes head, the first attaches as
    // xcomp; the external edge (including root) moves to the second verb.
    const CatenativeVerb* cat =
        inv.find_catenative(normalize_predicate_lemma(out.at(last).lemma));
    if (cat && catenative_condition_ok(*cat, out.at(prev))) {
      if (ed.would_cycle(last, ext_head)) {
        add_note(report, "catenative restructuring at token " + std::to_string(last) +
                             " skipped (would create a cycle)");
        continue;
      }
      if (root != last) ed.set(last, ext_head, ext_deprel);
      ed.set(prev, last, "xcomp");
      for (int i = 0; i + 2 < k; ++i) ed.set(members[static_cast<size_t>(i)], prev, "conj");
      continue;
    }

    // (a) TAM auxiliaries: first verb stays head, the rest attach as aux.
    bool tam_chain = true;
    for (int i = 1; i < k && tam_chain; ++i)
      tam_chain = tam_pair_ok(inv, out.at(members[static_cast<size_t>(i - 1)]),
                              out.at(members[static_cast<size_t>(i)]));
    if (tam_chain) {
      if (root != members.front()) ed.set(members.front(), ext_head, ext_deprel);
      for (int i = 1; i < k; ++i)
        ed.set(members[static_cast<size_t>(i)], members.front(), "aux");
      continue;
    }

    // (c) serial verbs inside a clausal complement: last verb heads, earlier
    // verbs attach as conj; the clausal edge retargets to the final verb.
    const std::string label = upgraded_label(ext_deprel, ext_head, last);
    if ((label == "ccomp" || label == "xcomp") && ext_head >= 1 &&
        out.at(ext_head).is_verbal()) {
      if (ed.would_cycle(last, ext_head)) {
        add_note(report, "serial restructuring at token " + std::to_string(last) +
                             " skipped (would create a cycle)");
        continue;
      }
      ed.set(last, ext_head, label);
      for (int i = 0; i + 1 < k; ++i) ed.set(members[static_cast<size_t>(i)], last, "conj");
      continue;
    }

    // Default: no inventory entry; keep the first verb as head with aux.
    if (root != members.front()) ed.set(members.front(), ext_head, ext_deprel);
    for (int i = 1; i < k; ++i) {
      ed.set(members[static_cast<size_t>(i)], members.front(), "aux");
      if (!tam_pair_ok(inv, out.at(members[static_cast<size_t>(i - 1)]),
                       out.at(members[static_cast<size_t>(i)])))
        add_note(report,
                 "verb pair (" + std::to_string(members[static_cast<size_t>(i - 1)]) +
                     ", " + std::to_string(members[static_cast<size_t>(i)]) +
                     ") matches no inventory entry; defaulting to aux");
    }
  }
  ed.finish(report);
  return out;
}

// --- case_role_refinement -------------------------------------------------------------

std::vector<TopicRelabel> topic_subject_relabels(const DependencyTree& tree,
                                                 int head_index,
                                                 const MarkerTable& markers,
                                                 bool legacy_nsubj_topics) {
  struct Candidate {
    int token;
    bool topic;
  };
  std::vector<Candidate> candidates;
  for (int d : children(tree, head_index)) {
    const Token& t = tree.at(d);
    const bool topic = t.is_nominal() && classify_token(markers, t) == MarkerClass::kTopic;
    if (topic && t.deprel == "dislocated") {
      candidates.push_back({d, true});
    } else if (topic && t.deprel == "nsubj" && legacy_nsubj_topics) {
      candidates.push_back({d, true});
    } else if (t.deprel == "nsubj" || t.deprel == "nsubj:pass" ||
               t.deprel == "csubj" || t.deprel == "csubj:pass") {
      candidates.push_back({d, false});
    }
  }
  std::vector<TopicRelabel> out;
  if (candidates.size() == 1 && candidates.front().topic) {
    out.push_back({candidates.front().token, "dislocated:nsubj"});
    return out;
  }
  const bool has_real_subject = std::any_of(
      candidates.begin(), candidates.end(), [](const Candidate& c) { return !c.topic; });
  if (candidates.size() >= 2 && has_real_subject) {
    for (const Candidate& c : candidates)
      if (c.topic && tree.at(c.token).deprel == "nsubj")
        out.push_back({c.token, "dislocated"});
  }
  return out;
}

const SubcatFrame* best_frame_for(const DependencyTree& tree, int head_index,
                                  const Lexicon& lex) {
  const auto frames = lex.lookup_frames(tree.at(head_index).lemma);
  if (frames.empty()) return nullptr;
  const auto deps = children(tree, head_index);
  const SubcatFrame* best = frames.front();
  int best_score = -1;
  for (const SubcatFrame* f : frames) {
    int score = 0;
    for (const FrameSlot& slot : f->slots) {
      bool satisfied = false;
      for (int d : deps) {
        const Token& t = tree.at(d);
        if (slot.relation == "nsubj" && relation_satisfies_slot(t.deprel, slot)) {
          satisfied = true;
          break;
        }
        for (const auto& m : slot.markers) {
          if (token_bears_marker(lex.markers(), t, m)) {
            satisfied = true;
            break;
          }
        }
        if (satisfied) break;
      }
      if (satisfied) ++score;
    }
    if (score > best_score) {
      best_score = score;
      best = f;
    }
  }
  return best;
}

const FrameSlot* matching_slot(const SubcatFrame& frame, const Token& token,
                               const MarkerTable& markers) {
  for (const FrameSlot& slot : frame.slots)
    for (const auto& m : slot.markers)
      if (token_bears_marker(markers, token, m)) return &slot;
  return nullptr;
}

bool relation_satisfies_slot(std::string_view dep, const FrameSlot& slot) {
  if (slot.relation == "nsubj")
    return dep == "nsubj" || dep == "nsubj:pass" || dep == "csubj" ||
           dep == "csubj:pass" || dep == "dislocated:nsubj";
  return dep == slot.relation;
}

DependencyTree pass_case_role_refinement(const DependencyTree& tree, const Lexicon& lex,
                                         PassReport* report,
                                         const ConversionConfig& config) {
  if (report) report->pass = "case_role_refinement";
  DependencyTree out = tree;
  EdgeEditor ed(out);
  const MarkerTable& mt = lex.markers();

  // (d) vocative markers
  for (const Token& t : out.tokens) {
    if (t.head < 1 || t.deprel == "vocative" || deprel::universal(t.deprel) == "punct")
      continue;
    if (classify_token(mt, t) == MarkerClass::kVocative)
      ed.set(t.index, t.head, "vocative");
  }

  // (c) nominalized passive subjects
  for (const Token& t : out.tokens)
    if (t.deprel == "nsubj:pass" && has_nominalizer_affix(mt, t))
      ed.set(t.index, t.head, "csubj:pass");

  // (b) topic subjects, per verbal clause head
  for (const Token& h : out.tokens) {
    if (!h.is_verbal()) continue;
    for (const TopicRelabel& r :
         topic_subject_relabels(out, h.index, mt, config.legacy_nsubj_topics))
      ed.set(r.token, h.index, r.new_deprel);
  }

  // (a) frame-backed oblique arguments
  for (const Token& h : out.tokens) {
    if (!h.is_verbal()) continue;
    const SubcatFrame* frame = best_frame_for(out, h.index, lex);
    if (!frame) continue;
    for (int d : children(out, h.index)) {
      const Token& t = out.at(d);
      if (t.deprel != "obl") continue;
      const FrameSlot* slot = matching_slot(*frame, t, mt);
      if (slot && slot->relation == "obl:arg") {
        ed.set(d, h.index, "obl:arg");
      } else {
        add_note(report, "token " + std::to_string(d) + " (obl) of '" +
                             h.form + "' matches no oblique-argument slot; kept as obl");
      }
    }
  }
  ed.finish(report);
  return out;
}

// --- pipeline ----------------------------------------------------------------------

const std::vector<RewritePass>& registered_passes() {
  auto plain = [](DependencyTree (*fn)(const DependencyTree&, const Lexicon&,
                                       PassReport*)) {
    return [fn](const DependencyTree& t, const Lexicon& l, PassReport* r,
                const ConversionConfig&) { return fn(t, l, r); };
  };
  static const std::vector<RewritePass> kPasses = {
      {"cop_direction", plain(pass_cop_direction)},
      {"quotative_mark", plain(pass_quotative_mark)},
      {"fixed_expressions", plain(pass_fixed_expressions)},
      {"nominal_head_finality", plain(pass_nominal_head_finality)},
      {"flat_last_head", plain(pass_flat_last_head)},
      {"verbal_restructure", plain(pass_verbal_restructure)},
      {"case_role_refinement", pass_case_role_refinement},
  };
  return kPasses;
}

std::pair<DependencyTree, std::vector<PassReport>> run_pipeline(
    const DependencyTree& tree, const Lexicon& lex, const ConversionConfig& config) {
  const std::string id = tree.sentence_id.empty() ? "<unnamed>" : tree.sentence_id;
  if (!is_wellformed(tree))
    throw PipelineError("input", id, "input tree is not well-formed");

  DependencyTree cur = tree;
  std::vector<PassReport> reports;
  for (const RewritePass& pass : registered_passes()) {
    if (!config.pass_enabled(pass.name)) continue;
    PassReport report;
    report.pass = pass.name;
    DependencyTree next = pass.apply(cur, lex, &report, config);
    if (!is_wellformed(next))
      throw PipelineError(pass.name, id, "pass produced an ill-formed tree");
    for (int i = 1; i <= cur.size(); ++i) {
      const Token& a = cur.at(i);
      const Token& b = next.at(i);
      if (a.form != b.form || a.lemma != b.lemma || a.upos != b.upos ||
          a.xpos != b.xpos || a.feats != b.feats)
        throw PipelineError(pass.name, id, "pass modified a content column");
    }
    reports.push_back(std::move(report));
    cur = std::move(next);
  }
  return {std::move(cur), std::move(reports)};
}

}  // namespace kudc
