// Acceptance suite: end-to-end checks of the conversion, validation and
// audit toolchain against the golden fixtures and the property contracts.
// Prints one [PASS]/[FAIL] line per criterion; exits non-zero on any failure.
//
// Usage: acceptance_tests <fixtures_dir> <data_dir> <kudc_binary>

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

#include "generators.hpp"
#include "kudc/conllu.hpp"
#include "kudc/corpus.hpp"
#include "kudc/lexicon.hpp"
#include "kudc/rules.hpp"
#include "kudc/sejong.hpp"
#include "kudc/validate.hpp"

using namespace kudc;
namespace fs = std::filesystem;

namespace {

std::string g_fixtures;
std::string g_data;
std::string g_bin;
int g_failures = 0;

const char* kFixtureNames[] = {"fig1",      "yugoslav", "crater", "ppun",
                               "date",      "ttala",    "cop",    "quotative",
                               "ccomp",     "deus",     "csubj",  "oblarg"};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DependencyTree load_one(const std::string& name, DeprelPolicy policy = DeprelPolicy::kUdStrict) {
  ParseOptions opts;
  opts.deprel_policy = policy;
  const auto trees = parse_document(slurp(g_fixtures + "/" + name), opts);
  if (trees.size() != 1) throw std::runtime_error("expected one sentence in " + name);
  return trees[0];
}

Lexicon paper_lexicon() {
  Lexicon lex;
  lex.load_frames_file(g_data + "/frames_sejong.txt");
  return lex;
}

int run_cli(const std::string& args) {
  const std::string cmd = g_bin + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion(const std::string& name, const std::function<std::string()>& body) {
  std::string detail;
  bool ok = true;
  try {
    detail = body();
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  if (!ok || detail.rfind("FAIL", 0) == 0) {
    ++g_failures;
    std::cout << "[FAIL] " << name << (detail.empty() ? "" : " - " + detail) << "\n";
  } else {
    std::cout << "[PASS] " << name << (detail.empty() ? "" : " (" + detail + ")") << "\n";
  }
}

// --- criteria -----------------------------------------------------------------

std::string c1_figure1() {
  const auto start = std::chrono::steady_clock::now();
  const auto top = load_one("fig1.top.conllu");
  const auto lex = paper_lexicon();
  const auto [converted, reports] = run_pipeline(top, lex);
  const std::string bytes = serialize_tree(converted);
  const std::string golden = slurp(g_fixtures + "/fig1.bottom.conllu");
  const auto elapsed = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - start).count();
  const std::vector<std::pair<int, std::string>> want = {{4, "dislocated:nsubj"},
                                                         {3, "compound"},
                                                         {4, "obj"},
                                                         {5, "xcomp"},
                                                         {0, "root"}};
  for (int i = 1; i <= converted.size(); ++i) {
    if (converted.at(i).head != want[static_cast<size_t>(i - 1)].first ||
        converted.at(i).deprel != want[static_cast<size_t>(i - 1)].second)
      return "FAIL: edge mismatch at token " + std::to_string(i);
  }
  if (bytes != golden) return "FAIL: output not byte-exact against the golden file";
  if (elapsed >= 1.0) return "FAIL: took " + std::to_string(elapsed) + "s";
  std::ostringstream ss;
  ss << "byte-exact, " << elapsed * 1000.0 << " ms";
  return ss.str();
}

std::string c2_golden_suite() {
  const auto lex = paper_lexicon();
  int passed = 0;
  for (const char* name : kFixtureNames) {
    if (std::string(name) == "fig1") continue;  // criterion 1
    const auto top = load_one(std::string(name) + ".top.conllu");
    const auto [converted, reports] = run_pipeline(top, lex);
    const std::string got = serialize_tree(converted);
    const std::string golden = slurp(g_fixtures + "/" + name + ".bottom.conllu");
    if (got != golden) return std::string("FAIL: fixture ") + name;
    ++passed;
  }
  return std::to_string(passed) + "/11 fixtures exact";
}

std::string c3_validator_contract() {
  const auto lex = paper_lexicon();
  const auto rules = GuidelineRuleSet::defaults();

  std::vector<DependencyTree> bottoms, tops;
  for (const char* name : kFixtureNames) {
    bottoms.push_back(load_one(std::string(name) + ".bottom.conllu"));
    tops.push_back(load_one(std::string(name) + ".top.conllu"));
  }
  const auto clean = validate_corpus(bottoms, rules, lex);
  if (clean.errors != 0 || clean.warnings != 0 || clean.infos != 0)
    return "FAIL: revised fixtures produced findings";

  // hand tally shipped with the tests
  std::map<std::string, std::map<std::string, int>> want;
  std::istringstream tin(slurp(g_fixtures + "/top_tally.tsv"));
  std::string line;
  while (std::getline(tin, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string sid, code;
    int count = 0;
    std::getline(ls, sid, '\t');
    std::getline(ls, code, '\t');
    ls >> count;
    want[sid][code] = count;
  }
  const auto found = validate_corpus(tops, rules, lex);
  std::map<std::string, std::map<std::string, int>> got;
  for (const auto& ds : found.per_sentence)
    for (const auto& d : ds) ++got[d.sentence_id][d.code];
  if (got != want) return "FAIL: per-code tally differs from the hand tally";
  int total = 0;
  for (const auto& [sid, m] : want)
    for (const auto& [c, n] : m) total += n;
  return "bottoms clean, top tally matches (" + std::to_string(total) + " findings)";
}

std::string c4_frame_audit() {
  const auto lex = paper_lexicon();
  const auto trees = parse_document(slurp(g_fixtures + "/frames_audit.conllu"));
  if (trees.size() != 3) return "FAIL: expected 3 audit sentences";
  for (const auto& t : trees)
    if (!audit_with_frames(t, lex).empty())
      return "FAIL: findings on the annotated sentences";
  int mutated_findings = 0;
  for (auto t : trees) {
    bool changed = false;
    for (auto& tok : t.tokens)
      if (tok.deprel == "obl:arg") {
        tok.deprel = "obl";
        changed = true;
      }
    if (!changed) continue;
    const auto ds = audit_with_frames(t, lex);
    if (ds.empty() || !has_errors(ds)) return "FAIL: mutation not detected";
    mutated_findings += static_cast<int>(ds.size());
  }
  if (mutated_findings == 0) return "FAIL: no obl:arg mutations exercised";

  // the CLI contract: exit 0 on the golden file, 1 on the mutated one
  if (run_cli("frames --lexicon " + g_data + "/frames_sejong.txt " + g_fixtures +
              "/frames_audit.conllu") != 0)
    return "FAIL: frames exit code on golden input";
  std::string mutated = slurp(g_fixtures + "/frames_audit.conllu");
  size_t pos;
  while ((pos = mutated.find("obl:arg")) != std::string::npos)
    mutated.replace(pos, 7, "obl");
  const fs::path tmp = fs::temp_directory_path() / "kudc_acceptance_mutated.conllu";
  std::ofstream(tmp, std::ios::binary) << mutated;
  const int code = run_cli("frames --lexicon " + g_data + "/frames_sejong.txt " +
                           tmp.string());
  fs::remove(tmp);
  if (code != 1) return "FAIL: frames exit code on mutated input";
  return "exit 0 golden / exit 1 mutated";
}

std::string c5_sejong() {
  const auto t = load_one("sejong42.conllu", DeprelPolicy::kSejongStrict);
  if (!check_right_headed(t).empty())
    return "FAIL: right-headedness findings on the example";
  const auto table = MappingTable::load_file(g_data + "/sejong_ud_map.tsv");
  const auto mapped = map_sejong_to_ud(t, table);
  if (mapped.at(1).deprel != "nsubj" || mapped.at(2).deprel != "obl" ||
      mapped.at(6).deprel != "obj")
    return "FAIL: core label mapping";
  for (const auto& [sejong, ud] : std::vector<std::pair<std::string, std::string>>{
           {"NP_SBJ", "nsubj"}, {"NP_OBJ", "obj"}, {"NP_AJT", "obl"}}) {
    if (table.to_sejong(ud) != sejong) return "FAIL: round-trip of " + sejong;
  }
  for (int i = 1; i <= t.size(); ++i)
    if (mapped.at(i).head != t.at(i).head) return "FAIL: mapping moved a head";
  return "right-headed, core labels round-trip";
}

std::string c6_property_suite() {
  std::mt19937 rng(987654321);
  const Lexicon lex;
  int violations = 0;
  for (int iter = 0; iter < 1000; ++iter) {
    const auto t = testgen::random_tree(rng, 15);
    const auto [once, reports] = run_pipeline(t, lex);
    if (!is_wellformed(once)) ++violations;
    for (int i = 1; i <= t.size(); ++i) {
      const Token& a = t.at(i);
      const Token& b = once.at(i);
      if (a.form != b.form || a.lemma != b.lemma || a.upos != b.upos ||
          a.xpos != b.xpos || a.feats != b.feats)
        ++violations;
    }
    const auto [twice, reports2] = run_pipeline(once, lex);
    if (!(twice == once)) ++violations;
    for (const auto& r : reports2)
      if (!r.empty()) ++violations;
    for (const Token& tok : once.tokens) {
      if (tok.head < 1) continue;
      if ((tok.deprel == "flat" || tok.deprel == "compound") && tok.index > tok.head)
        ++violations;
      if ((tok.deprel == "aux" || tok.deprel == "fixed") && tok.head > tok.index)
        ++violations;
      if (tok.deprel == "flat" && tok.is_verbal() && once.at(tok.head).is_verbal())
        ++violations;
    }
  }
  if (violations > 0)
    return "FAIL: " + std::to_string(violations) + " violations over 1000 trees";
  return "1000 trees, zero violations";
}

std::string c7_wellformed_oracle() {
  long long cases = 0, disagreements = 0;
  for (int n = 1; n <= 5; ++n) {
    long long total = 1;
    for (int i = 0; i < n; ++i) total *= (n + 1);
    for (long long code = 0; code < total; ++code) {
      long long c = code;
      DependencyTree t;
      for (int i = 1; i <= n; ++i) {
        Token tok;
        tok.index = i;
        tok.form = "w";
        tok.lemma = "w";
        tok.upos = "NOUN";
        tok.xpos = "nng";
        tok.head = static_cast<int>(c % (n + 1));
        tok.deprel = tok.head == 0 ? "root" : "dep";
        c /= (n + 1);
        t.tokens.push_back(std::move(tok));
      }
      ++cases;
      if (check_wellformed(t).empty() != testgen::oracle_wellformed(t))
        ++disagreements;
    }
  }
  if (disagreements > 0)
    return "FAIL: " + std::to_string(disagreements) + " disagreements";
  return std::to_string(cases) + " head assignments, zero disagreements";
}

std::string c8_round_trip() {
  for (const char* name : kFixtureNames) {
    for (const char* side : {".top.conllu", ".bottom.conllu"}) {
      const std::string path = g_fixtures + "/" + name + side;
      const std::string bytes = slurp(path);
      if (serialize_document(parse_document(bytes)) != bytes)
        return std::string("FAIL: round-trip of ") + name + side;
    }
  }
  std::mt19937 rng(13579);
  for (int i = 0; i < 50; ++i) {
    std::vector<DependencyTree> trees;
    const int sentences = 1 + static_cast<int>(rng() % 5);
    for (int s = 0; s < sentences; ++s) trees.push_back(testgen::random_tree(rng));
    const std::string bytes = serialize_document(trees);
    if (serialize_document(parse_document(bytes)) != bytes)
      return "FAIL: round-trip of generated file " + std::to_string(i);
  }
  return "24 fixtures + 50 generated files byte-identical";
}

std::string c9_throughput() {
  // 10,000 synthetic 10-token sentences
  std::vector<DependencyTree> corpus;
  corpus.reserve(10000);
  std::mt19937 rng(24680);
  for (int s = 0; s < 10000; ++s) {
    DependencyTree t = testgen::random_tree(rng, 10);
    while (t.size() != 10) t = testgen::random_tree(rng, 10);
    t.sentence_id = "synthetic-" + std::to_string(s);
    t.comments = {"# sent_id = " + t.sentence_id};
    corpus.push_back(std::move(t));
  }
  const Lexicon lex;
  const ConversionConfig config;
  const auto start = std::chrono::steady_clock::now();
  const auto serial = parallel_map(corpus, 1, [&](const DependencyTree& t) {
    return serialize_tree(run_pipeline(t, lex, config).first);
  });
  const auto elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const auto parallel = parallel_map(corpus, 8, [&](const DependencyTree& t) {
    return serialize_tree(run_pipeline(t, lex, config).first);
  });
  if (serial != parallel) return "FAIL: --jobs 1 and --jobs 8 outputs differ";
  if (elapsed >= 10.0)
    return "FAIL: conversion took " + std::to_string(elapsed) + "s";
  std::ostringstream ss;
  ss << "10000 sentences in " << elapsed << " s, jobs 1 == jobs 8";
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 4) {
    std::cerr << "usage: acceptance_tests <fixtures_dir> <data_dir> <kudc_binary>\n";
    return 2;
  }
  g_fixtures = argv[1];
  g_data = argv[2];
  g_bin = argv[3];

  criterion("C1 figure-1 golden conversion", c1_figure1);
  criterion("C2 full golden suite (11 fixtures)", c2_golden_suite);
  criterion("C3 validator contract", c3_validator_contract);
  criterion("C4 frame audit", c4_frame_audit);
  criterion("C5 Sejong checks", c5_sejong);
  criterion("C6 pipeline property suite", c6_property_suite);
  criterion("C7 well-formedness oracle equivalence", c7_wellformed_oracle);
  criterion("C8 parse/serialize round-trip", c8_round_trip);
  criterion("C9 throughput and parallel determinism", c9_throughput);

  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed\n";
    return 1;
  }
  std::cout << "all acceptance criteria passed\n";
  return 0;
}
