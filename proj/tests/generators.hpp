#pragma once

// Test-only fuzz generators and brute-force oracles. The tree generator
// produces well-formed trees with realistic Korean token shapes (eojeol =
// stem + markers, POS-consistent relations) plus the legacy defect patterns
// the converter exists to fix (first-headed flat chains, verb-verb flat,
// topic subjects labeled nsubj, quotative case).

#include <random>
#include <string>
#include <vector>

#include "kudc/conllu.hpp"

namespace kudc::testgen {

struct TokSpec {
  std::string form, lemma, upos, xpos;
};

inline TokSpec make_noun(std::mt19937& rng) {
  static const std::vector<std::string> bases = {"사진", "학교", "물건", "시장",
                                                 "소식", "친구", "나라", "정부"};
  struct Marker {
    const char* surface;
    const char* tag;
  };
  static const std::vector<Marker> markers = {{"이", "jks"}, {"가", "jks"},
                                              {"을", "jko"}, {"를", "jko"},
                                              {"은", "jx"},  {"는", "jx"},
                                              {"에", "jkb"}, {"에서", "jkb"},
                                              {"에게", "jkb"}, {"", ""}};
  const auto& base = bases[rng() % bases.size()];
  const auto& m = markers[rng() % markers.size()];
  TokSpec t;
  if (*m.surface) {
    t.form = base + m.surface;
    t.lemma = base + "+" + m.surface;
    t.xpos = std::string("nng+") + m.tag;
  } else {
    t.form = base;
    t.lemma = base;
    t.xpos = "nng";
  }
  t.upos = "NOUN";
  return t;
}

inline TokSpec make_propn(std::mt19937& rng) {
  static const std::vector<std::string> names = {"장동건", "김현식", "서울", "한국"};
  const auto& n = names[rng() % names.size()];
  return {n, n, "PROPN", "nnp"};
}

inline TokSpec make_verb(std::mt19937& rng) {
  static const std::vector<std::string> stems = {"보", "가", "먹", "읽", "늘", "자라"};
  struct Ending {
    const char* surface;
    const char* tag;
  };
  static const std::vector<Ending> endings = {{"고", "ec"},   {"어", "ec"},
                                              {"면", "ec"},   {"었다", "ep+ef"},
                                              {"라고", "ec"}, {"ㄴ다", "ef"}};
  const auto& s = stems[rng() % stems.size()];
  const auto& e = endings[rng() % endings.size()];
  return {s + e.surface, s + "+" + e.surface, "VERB", std::string("vv+") + e.tag};
}

inline TokSpec make_adv(std::mt19937& rng) {
  static const std::vector<std::string> advs = {"일찍", "빨리", "매우", "다시"};
  const auto& a = advs[rng() % advs.size()];
  return {a, a, "ADV", "mag"};
}

inline TokSpec make_token(std::mt19937& rng) {
  const unsigned roll = rng() % 100;
  if (roll < 45) return make_noun(rng);
  if (roll < 60) return make_verb(rng);
  if (roll < 72) return make_propn(rng);
  if (roll < 84) return make_adv(rng);
  if (roll < 92) return TokSpec{"고", "고", "ADP", "jkq"};  // quotative particle
  return TokSpec{".", ".", "PUNCT", "sf"};
}

inline std::string pick(std::mt19937& rng, std::vector<std::string> options) {
  return options[rng() % options.size()];
}

// POS-consistent relation for dependent d under head h, including the legacy
// defect labelings the conversion rules target.
inline std::string pick_deprel(std::mt19937& rng, const Token& d, const Token& h) {
  if (d.upos == "PUNCT") return "punct";
  if (d.upos == "ADP") return "case";
  if (d.upos == "ADV") return "advmod";
  if (h.is_verbal()) {
    if (d.upos == "VERB") {
      return pick(rng, {"advcl", "ccomp", "conj", "aux", "flat", "dep", "xcomp"});
    }
    // nominal under predicate: marker-consistent, topic kept as legacy nsubj
    const auto elems = d.xpos_elements();
    const std::string tag = elems.empty() ? "" : elems.back();
    if (tag == "jks") return "nsubj";
    if (tag == "jko") return "obj";
    if (tag == "jkb") return "obl";
    if (tag == "jx") return pick(rng, {"nsubj", "dislocated"});
    return pick(rng, {"obj", "nmod", "dep"});
  }
  // nominal head
  if (d.upos == "VERB") return "dep";
  if (d.is_nominal()) return pick(rng, {"nmod", "compound", "flat", "flat", "dep"});
  return "dep";
}

// Random well-formed tree: every non-root token attaches to an
// already-attached node, so the result is single-rooted, acyclic, connected.
inline DependencyTree random_tree(std::mt19937& rng, int max_tokens = 15) {
  const int n = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_tokens));
  DependencyTree tree;
  tree.sentence_id = "fuzz-" + std::to_string(rng() % 1000000);
  for (int i = 1; i <= n; ++i) {
    TokSpec spec = make_token(rng);
    Token t;
    t.index = i;
    t.form = spec.form;
    t.lemma = spec.lemma;
    t.upos = spec.upos;
    t.xpos = spec.xpos;
    tree.tokens.push_back(std::move(t));
  }
  std::vector<int> order;
  for (int i = 1; i <= n; ++i) order.push_back(i);
  std::shuffle(order.begin(), order.end(), rng);
  const int root = order.front();
  tree.at(root).head = 0;
  tree.at(root).deprel = "root";
  std::vector<int> attached = {root};
  for (size_t k = 1; k < order.size(); ++k) {
    const int i = order[k];
    const int h = attached[rng() % attached.size()];
    tree.at(i).head = h;
    tree.at(i).deprel = pick_deprel(rng, tree.at(i), tree.at(h));
    attached.push_back(i);
  }
  tree.comments = {"# sent_id = " + tree.sentence_id};
  return tree;
}

// --- brute-force oracles -----------------------------------------------------

inline bool oracle_wellformed(const DependencyTree& tree) {
  const int n = tree.size();
  if (n == 0) return true;
  std::vector<int> roots;
  for (const Token& t : tree.tokens)
    if (t.head == 0) roots.push_back(t.index);
  if (roots.size() != 1) return false;
  std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
  std::vector<int> queue = {roots.front()};
  seen[static_cast<size_t>(roots.front())] = true;
  int reached = 0;
  while (!queue.empty()) {
    const int cur = queue.back();
    queue.pop_back();
    ++reached;
    for (const Token& t : tree.tokens) {
      if (t.head == cur && !seen[static_cast<size_t>(t.index)]) {
        seen[static_cast<size_t>(t.index)] = true;
        queue.push_back(t.index);
      }
    }
  }
  return reached == n;
}

inline std::vector<int> oracle_children(const DependencyTree& tree, int index) {
  // quadratic scan over all (head, dependent) pairs
  std::vector<int> out;
  for (int j = 1; j <= tree.size(); ++j)
    for (const Token& t : tree.tokens)
      if (t.index == j && t.head == index) out.push_back(j);
  return out;
}

}  // namespace kudc::testgen
