// kudc - Korean Universal Dependencies treebank conversion and validation.
//
// Subcommands: convert | validate | diff | stats | frames
// Exit codes: 0 clean, 1 findings, 2 operational error.

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "kudc/conllu.hpp"
#include "kudc/corpus.hpp"
#include "kudc/lexicon.hpp"
#include "kudc/rules.hpp"
#include "kudc/sejong.hpp"
#include "kudc/validate.hpp"

namespace {

using namespace kudc;

struct CommonOpts {
  std::vector<std::string> inputs;
  std::string output;
  std::string lexicon_path;
  std::string inventory_path;
  std::string mapping_path;
  std::string report_path;
  std::string passes;
  std::string format = "text";
  bool lax = false;
  int jobs = 1;
};

std::string read_stream(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<DependencyTree> load_corpus(const std::vector<std::string>& inputs,
                                        const ParseOptions& opts,
                                        std::vector<std::string>* warnings) {
  std::vector<DependencyTree> trees;
  std::vector<std::string> paths = inputs;
  if (paths.empty()) paths.push_back("-");
  for (const auto& path : paths) {
    std::string content;
    if (path == "-") {
      content = read_stream(std::cin);
    } else {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw std::runtime_error("cannot open input file '" + path + "'");
      content = read_stream(in);
    }
    try {
      auto batch = parse_document(content, opts, warnings);
      trees.insert(trees.end(), std::make_move_iterator(batch.begin()),
                   std::make_move_iterator(batch.end()));
    } catch (const ParseError& e) {
      throw std::runtime_error(path + ": " + e.what());
    }
  }
  return trees;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file '" + path + "'");
  out << content;
}

Lexicon build_lexicon(const CommonOpts& opts, std::vector<std::string>* warnings) {
  Lexicon lex = Lexicon::with_defaults();
  if (!opts.lexicon_path.empty()) lex.load_frames_file(opts.lexicon_path, warnings);
  if (!opts.inventory_path.empty())
    lex.load_inventory_file(opts.inventory_path, warnings);
  return lex;
}

std::string joined(const std::vector<int>& xs) {
  std::string out;
  for (int x : xs) {
    if (!out.empty()) out += ",";
    out += std::to_string(x);
  }
  return out;
}

void print_diagnostics(std::ostream& os, const std::vector<Diagnostic>& ds,
                       const std::string& format) {
  for (const auto& d : ds) {
    if (format == "records") {
      os << d.sentence_id << '\t' << d.code << '\t' << severity_name(d.severity)
         << '\t' << joined(d.token_indices) << '\t' << d.message << '\n';
    } else {
      os << "[" << severity_name(d.severity) << "] " << d.sentence_id;
      if (!d.token_indices.empty()) os << " tokens " << joined(d.token_indices);
      os << ": " << d.message << " (" << d.code << ")\n";
    }
  }
}

std::vector<std::string> parse_pass_filter(const std::string& passes) {
  std::vector<std::string> enabled;
  std::stringstream ss(passes);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    const auto& order = canonical_pass_order();
    if (std::find(order.begin(), order.end(), name) == order.end())
      throw std::runtime_error("unknown pass '" + name + "'");
    enabled.push_back(name);
  }
  // Canonical order is total and fixed regardless of flag order.
  std::vector<std::string> ordered;
  for (const auto& p : canonical_pass_order())
    if (std::find(enabled.begin(), enabled.end(), p) != enabled.end())
      ordered.push_back(p);
  return ordered;
}

int cmd_convert(const CommonOpts& opts) {
  std::vector<std::string> warnings;
  const Lexicon lex = build_lexicon(opts, &warnings);

  ParseOptions popts;
  if (!opts.mapping_path.empty())
    popts.deprel_policy = opts.lax ? DeprelPolicy::kAny : DeprelPolicy::kSejongStrict;
  else
    popts.deprel_policy = opts.lax ? DeprelPolicy::kUdLax : DeprelPolicy::kUdStrict;
  std::vector<DependencyTree> trees = load_corpus(opts.inputs, popts, &warnings);

  for (const auto& t : trees) {
    const auto ds = check_wellformed(t);
    if (!ds.empty())
      throw std::runtime_error("sentence '" + t.sentence_id +
                               "' is not a well-formed tree: " + ds.front().message);
  }

  if (!opts.mapping_path.empty()) {
    const MappingTable table = MappingTable::load_file(opts.mapping_path);
    SejongMapOptions mopts;
    mopts.lax = opts.lax;
    for (auto& t : trees) t = map_sejong_to_ud(t, table, mopts, &warnings);
  }

  ConversionConfig config;
  if (!opts.passes.empty()) config.enabled_passes = parse_pass_filter(opts.passes);
  // With --mapping and no explicit pass filter, only the label mapping runs.
  const bool run_passes = opts.mapping_path.empty() || !opts.passes.empty();

  struct SentenceResult {
    std::string conllu;
    std::vector<PassReport> reports;
    std::string id;
  };
  const auto results = parallel_map(trees, opts.jobs, [&](const DependencyTree& t) {
    SentenceResult r;
    r.id = t.sentence_id;
    if (run_passes) {
      auto [converted, reports] = run_pipeline(t, lex, config);
      r.conllu = serialize_tree(converted);
      r.reports = std::move(reports);
    } else {
      r.conllu = serialize_tree(t);
    }
    return r;
  });

  std::string out;
  for (const auto& r : results) out += r.conllu;
  write_output(opts.output, out);

  if (!opts.report_path.empty()) {
    std::ofstream rep(opts.report_path);
    if (!rep)
      throw std::runtime_error("cannot open report file '" + opts.report_path + "'");
    for (const auto& r : results) {
      for (const auto& pr : r.reports) {
        for (const auto& c : pr.changes)
          rep << r.id << '\t' << pr.pass << '\t' << c.token << '\t' << c.old_head
              << ':' << c.old_deprel << '\t' << c.new_head << ':' << c.new_deprel
              << '\n';
        for (const auto& n : pr.notes)
          rep << r.id << '\t' << pr.pass << '\t' << "note" << '\t' << n << '\n';
      }
    }
  }
  for (const auto& w : warnings) std::cerr << "kudc: warning: " << w << '\n';
  return 0;
}

int cmd_validate(const CommonOpts& opts) {
  std::vector<std::string> warnings;
  const Lexicon lex = build_lexicon(opts, &warnings);

  ParseOptions popts;
  if (!opts.mapping_path.empty())
    popts.deprel_policy = opts.lax ? DeprelPolicy::kAny : DeprelPolicy::kSejongStrict;
  else
    popts.deprel_policy = opts.lax ? DeprelPolicy::kUdLax : DeprelPolicy::kUdStrict;
  const auto trees = load_corpus(opts.inputs, popts, &warnings);
  for (const auto& w : warnings) std::cerr << "kudc: warning: " << w << '\n';

  bool any_error = false;
  if (!opts.mapping_path.empty()) {
    // Sejong-style input: structural checks plus right-headedness.
    for (const auto& t : trees) {
      auto ds = check_wellformed(t);
      auto rh = check_right_headed(t);
      ds.insert(ds.end(), rh.begin(), rh.end());
      sort_diagnostics(ds);
      any_error = any_error || has_errors(ds);
      print_diagnostics(std::cout, ds, opts.format);
    }
    return any_error ? 1 : 0;
  }

  const auto rules = GuidelineRuleSet::defaults();
  const auto result = validate_corpus(trees, rules, lex, {}, opts.jobs);
  for (const auto& ds : result.per_sentence) print_diagnostics(std::cout, ds, opts.format);
  if (opts.format != "records") {
    std::cout << "sentences: " << trees.size() << ", findings: "
              << result.errors + result.warnings + result.infos << " ("
              << result.errors << " errors, " << result.warnings << " warnings)\n";
    for (const auto& [code, count] : result.counts_by_code)
      std::cout << "  " << code << ": " << count << '\n';
  }
  return result.clean() ? 0 : 1;
}

int cmd_diff(const CommonOpts& opts) {
  if (opts.inputs.size() != 2)
    throw std::runtime_error("diff needs exactly two input files");
  ParseOptions popts;
  popts.deprel_policy = DeprelPolicy::kAny;
  const auto a = load_corpus({opts.inputs[0]}, popts, nullptr);
  const auto b = load_corpus({opts.inputs[1]}, popts, nullptr);
  const DiffResult res = diff_corpora(a, b);

  for (const auto& d : res.diffs) {
    if (opts.format == "records")
      std::cout << d.sentence_id << '\t' << d.token << '\t' << d.head_a << "->"
                << d.head_b << '\t' << d.deprel_a << "->" << d.deprel_b << '\n';
    else
      std::cout << d.sentence_id << " token " << d.token << ": head " << d.head_a
                << " -> " << d.head_b << ", deprel " << d.deprel_a << " -> "
                << d.deprel_b << '\n';
  }
  std::cout << std::fixed << std::setprecision(2);
  if (opts.format == "records") {
    std::cout << "summary\thead_changes\t" << res.head_changes << '\n'
              << "summary\tlabel_only_changes\t" << res.label_only_changes << '\n'
              << "summary\tunlabeled_agreement\t" << res.unlabeled_agreement << '\n'
              << "summary\tlabeled_agreement\t" << res.labeled_agreement << '\n';
  } else {
    std::cout << "changed edges (head): " << res.head_changes
              << ", label-only changes: " << res.label_only_changes << '\n'
              << "unlabeled agreement: " << res.unlabeled_agreement
              << "%, labeled agreement: " << res.labeled_agreement << "%\n";
  }
  return res.diffs.empty() ? 0 : 1;
}

int cmd_stats(const CommonOpts& opts) {
  ParseOptions popts;
  popts.deprel_policy = DeprelPolicy::kAny;  // stats is descriptive
  const auto trees = load_corpus(opts.inputs, popts, nullptr);
  const CorpusStats st = corpus_stats(trees);
  std::cout << std::fixed << std::setprecision(2);
  if (opts.format == "records") {
    std::cout << "stat\tsentences\t" << st.sentences << '\n'
              << "stat\ttokens\t" << st.tokens << '\n';
    for (const auto& [dep, count] : st.deprel_counts)
      std::cout << "deprel\t" << dep << '\t' << count << '\n';
    std::cout << "stat\trightward_edges\t" << st.rightward_edges << '\n'
              << "stat\tleftward_edges\t" << st.leftward_edges << '\n'
              << "stat\trightward_pct\t" << st.rightward_pct() << '\n';
  } else {
    std::cout << "sentences        " << st.sentences << '\n'
              << "tokens           " << st.tokens << '\n'
              << "deprel distribution:\n";
    for (const auto& [dep, count] : st.deprel_counts)
      std::cout << "  " << std::left << std::setw(18) << dep << count << '\n';
    std::cout << "head direction   rightward " << st.rightward_edges << " ("
              << st.rightward_pct() << "%), leftward " << st.leftward_edges << '\n';
  }
  return 0;
}

int cmd_frames(const CommonOpts& opts) {
  if (opts.lexicon_path.empty())
    throw std::runtime_error("frames requires --lexicon <frame file>");
  std::vector<std::string> warnings;
  const Lexicon lex = build_lexicon(opts, &warnings);
  ParseOptions popts;
  popts.deprel_policy = opts.lax ? DeprelPolicy::kUdLax : DeprelPolicy::kUdStrict;
  const auto trees = load_corpus(opts.inputs, popts, &warnings);
  for (const auto& w : warnings) std::cerr << "kudc: warning: " << w << '\n';

  const auto per_sentence = parallel_map(trees, opts.jobs, [&](const DependencyTree& t) {
    return audit_with_frames(t, lex);
  });
  bool any_error = false;
  for (const auto& ds : per_sentence) {
    any_error = any_error || has_errors(ds);
    print_diagnostics(std::cout, ds, opts.format);
  }
  return any_error ? 1 : 0;
}

void add_common(CLI::App* cmd, CommonOpts* opts, bool with_inputs = true) {
  if (with_inputs)
    cmd->add_option("inputs", opts->inputs, "CoNLL-U input files ('-' for stdin)");
  cmd->add_option("--lexicon", opts->lexicon_path, "subcategorization frame file");
  cmd->add_option("--inventory", opts->inventory_path, "verb inventory override file");
  cmd->add_option("--mapping", opts->mapping_path,
                  "Sejong label mapping file (enables Sejong input mode)");
  cmd->add_option("--format", opts->format, "output format: text|records")
      ->check(CLI::IsMember({"text", "records"}));
  cmd->add_flag("--lax", opts->lax, "downgrade unknown relations to warnings");
  cmd->add_option("--jobs,-j", opts->jobs, "parallel sentence workers")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Korean UD treebank conversion, validation and auditing"};
  app.require_subcommand(1);

  CommonOpts convert_opts, validate_opts, diff_opts, stats_opts, frames_opts;

  CLI::App* convert = app.add_subcommand("convert", "rewrite trees to the revised scheme");
  add_common(convert, &convert_opts);
  convert->add_option("-o,--output", convert_opts.output, "output file (default stdout)");
  convert->add_option("--passes", convert_opts.passes,
                      "comma-separated pass subset (canonical order)");
  convert->add_option("--report", convert_opts.report_path, "pass report file");

  CLI::App* validate = app.add_subcommand("validate", "lint against the revised guidelines");
  add_common(validate, &validate_opts);

  CLI::App* diff = app.add_subcommand("diff", "edge differences between aligned corpora");
  add_common(diff, &diff_opts);

  CLI::App* stats = app.add_subcommand("stats", "corpus statistics");
  add_common(stats, &stats_opts);

  CLI::App* frames = app.add_subcommand("frames", "frame-based argument audit");
  add_common(frames, &frames_opts);

  try {
    app.parse(argc, argv);
    if (convert->parsed()) return cmd_convert(convert_opts);
    if (validate->parsed()) return cmd_validate(validate_opts);
    if (diff->parsed()) return cmd_diff(diff_opts);
    if (stats->parsed()) return cmd_stats(stats_opts);
    if (frames->parsed()) return cmd_frames(frames_opts);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "kudc: error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
