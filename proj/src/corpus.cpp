#include "kudc/corpus.hpp"

namespace kudc {

DiffResult diff_corpora(const std::vector<DependencyTree>& a,
                        const std::vector<DependencyTree>& b) {
  if (a.size() != b.size())
    throw AlignmentError("corpora differ in sentence count (" +
                         std::to_string(a.size()) + " vs " + std::to_string(b.size()) +
                         ")");
  DiffResult res;
  int agree_heads = 0;
  int agree_labeled = 0;
  for (size_t s = 0; s < a.size(); ++s) {
    const DependencyTree& ta = a[s];
    const DependencyTree& tb = b[s];
    const std::string id =
        !ta.sentence_id.empty() ? ta.sentence_id : "#" + std::to_string(s + 1);
    if (ta.size() != tb.size())
      throw AlignmentError("sentence '" + id + "' differs in token count");
    for (int i = 1; i <= ta.size(); ++i) {
      const Token& x = ta.at(i);
      const Token& y = tb.at(i);
      if (x.form != y.form)
        throw AlignmentError("sentence '" + id + "' diverges at token " +
                             std::to_string(i) + " ('" + x.form + "' vs '" + y.form +
                             "')");
      ++res.total_tokens;
      const bool same_head = x.head == y.head;
      const bool same_label = x.deprel == y.deprel;
      if (same_head) ++agree_heads;
      if (same_head && same_label) ++agree_labeled;
      if (!same_head)
        ++res.head_changes;
      else if (!same_label)
        ++res.label_only_changes;
      if (!same_head || !same_label)
        res.diffs.push_back({id, i, x.head, y.head, x.deprel, y.deprel});
    }
  }
  if (res.total_tokens > 0) {
    res.unlabeled_agreement = 100.0 * agree_heads / res.total_tokens;
    res.labeled_agreement = 100.0 * agree_labeled / res.total_tokens;
  }
  return res;
}

CorpusStats corpus_stats(const std::vector<DependencyTree>& trees) {
  CorpusStats st;
  st.sentences = static_cast<int>(trees.size());
  for (const auto& t : trees) {
    st.tokens += t.size();
    for (const Token& tok : t.tokens) {
      ++st.deprel_counts[tok.deprel];
      if (tok.head >= 1) {
        if (tok.head > tok.index)
          ++st.rightward_edges;
        else
          ++st.leftward_edges;
      }
    }
  }
  return st;
}

}  // namespace kudc
