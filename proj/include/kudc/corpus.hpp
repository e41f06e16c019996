#pragma once

#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <type_traits>
#include <vector>

#include "kudc/conllu.hpp"

namespace kudc {

// Order-preserving parallel map over sentences: each item is handled by
// exactly one worker, results are assembled in input order, so output is
// independent of the parallelism degree.
template <typename T, typename F>
auto parallel_map(const std::vector<T>& items, int jobs, F fn)
    -> std::vector<std::invoke_result_t<F, const T&>> {
  using R = std::invoke_result_t<F, const T&>;
  std::vector<R> out(items.size());
  if (jobs < 1) jobs = 1;
  const size_t workers = std::min<size_t>(static_cast<size_t>(jobs), items.size());
  if (workers <= 1) {
    for (size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const size_t i = next.fetch_add(1);
        if (i >= items.size()) return;
        try {
          out[i] = fn(items[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

// ---------------------------------------------------------------------------
// Corpus diff
// ---------------------------------------------------------------------------

class AlignmentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EdgeDiff {
  std::string sentence_id;
  int token = 0;
  int head_a = 0;
  int head_b = 0;
  std::string deprel_a;
  std::string deprel_b;
};

struct DiffResult {
  std::vector<EdgeDiff> diffs;   // every token whose (head, deprel) differs
  int head_changes = 0;          // tokens whose head differs
  int label_only_changes = 0;    // same head, different deprel
  int total_tokens = 0;
  double unlabeled_agreement = 100.0;  // % tokens with equal head
  double labeled_agreement = 100.0;    // % tokens with equal head and deprel
};

// Requires aligned corpora: same sentence count, token counts and forms.
// Throws AlignmentError naming the first divergent sentence otherwise.
DiffResult diff_corpora(const std::vector<DependencyTree>& a,
                        const std::vector<DependencyTree>& b);

// ---------------------------------------------------------------------------
// Corpus statistics
// ---------------------------------------------------------------------------

struct CorpusStats {
  int sentences = 0;
  int tokens = 0;
  std::map<std::string, int> deprel_counts;
  int rightward_edges = 0;  // head index > dependent index (root excluded)
  int leftward_edges = 0;

  double rightward_pct() const {
    const int total = rightward_edges + leftward_edges;
    return total == 0 ? 0.0 : 100.0 * rightward_edges / total;
  }
};

CorpusStats corpus_stats(const std::vector<DependencyTree>& trees);

}  // namespace kudc
