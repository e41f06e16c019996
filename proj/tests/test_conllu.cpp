#include "kudc/conllu.hpp"

#include <random>
#include <set>

#include "doctest.h"
#include "generators.hpp"

using namespace kudc;

namespace {

const char* kStarbucks =
    "# sent_id = starbucks\n"
    "# text = 제일 가까운 스타벅스가 어디 있지 ?\n"
    "1\t제일\t제일\tADV\tmag\t_\t2\tadvmod\t_\t_\n"
    "2\t가까운\t가깝+ㄴ\tADJ\tva+etm\t_\t3\tamod\t_\t_\n"
    "3\t스타벅스가\t스타벅스+가\tPROPN\tnnp+jks\t_\t5\tnsubj\t_\t_\n"
    "4\t어디\t어디\tPRON\tnp\t_\t5\tadvmod\t_\t_\n"
    "5\t있지\t있+지\tADJ\tva+ef\t_\t0\troot\t_\t_\n"
    "6\t?\t?\tPUNCT\tsf\t_\t5\tpunct\t_\t_\n"
    "\n";

DependencyTree tiny(const std::vector<std::pair<int, std::string>>& edges) {
  DependencyTree t;
  for (size_t i = 0; i < edges.size(); ++i) {
    Token tok;
    tok.index = static_cast<int>(i + 1);
    tok.form = "w" + std::to_string(i + 1);
    tok.lemma = tok.form;
    tok.upos = "NOUN";
    tok.xpos = "nng";
    tok.head = edges[i].first;
    tok.deprel = edges[i].second;
    t.tokens.push_back(std::move(tok));
  }
  return t;
}

}  // namespace

TEST_CASE("parse: starbucks example") {
  const auto trees = parse_document(std::string(kStarbucks));
  REQUIRE(trees.size() == 1);
  const auto& t = trees[0];
  CHECK(t.sentence_id == "starbucks");
  CHECK(t.text == "제일 가까운 스타벅스가 어디 있지 ?");
  REQUIRE(t.size() == 6);
  CHECK(t.tokens[2].head == 5);
  CHECK(t.tokens[2].deprel == "nsubj");
  CHECK(t.tokens[2].form == "스타벅스가");
  CHECK(t.comments.size() == 2);
}

TEST_CASE("parse: empty input") {
  CHECK(parse_document(std::string("")).empty());
  CHECK(parse_document(std::string("\n\n\n")).empty());
}

TEST_CASE("parse errors carry line numbers") {
  SUBCASE("wrong column count") {
    try {
      parse_document(std::string("1\tx\tx\tNOUN\tnng\t_\t0\troot\t_\n"));
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(std::string(e.what()).find("10") != std::string::npos);
    }
  }
  SUBCASE("multiword range rejected") {
    CHECK_THROWS_WITH_AS(
        parse_document(std::string("1-2\txy\txy\tNOUN\tnng\t_\t0\troot\t_\t_\n")),
        doctest::Contains("multiword"), ParseError);
  }
  SUBCASE("empty node rejected") {
    CHECK_THROWS_WITH_AS(
        parse_document(std::string("1.1\tx\tx\tNOUN\tnng\t_\t0\troot\t_\t_\n")),
        doctest::Contains("empty node"), ParseError);
  }
  SUBCASE("duplicate index") {
    const std::string text =
        "1\tx\tx\tNOUN\tnng\t_\t0\troot\t_\t_\n"
        "1\ty\ty\tNOUN\tnng\t_\t1\tnmod\t_\t_\n";
    CHECK_THROWS_WITH_AS(parse_document(text), doctest::Contains("out of sequence"),
                         ParseError);
  }
  SUBCASE("non-integer head") {
    CHECK_THROWS_AS(
        parse_document(std::string("1\tx\tx\tNOUN\tnng\t_\tq\troot\t_\t_\n")),
        ParseError);
  }
  SUBCASE("self-headed token") {
    CHECK_THROWS_WITH_AS(
        parse_document(std::string("1\tx\tx\tNOUN\tnng\t_\t1\tnmod\t_\t_\n")),
        doctest::Contains("own head"), ParseError);
  }
  SUBCASE("head out of range") {
    CHECK_THROWS_WITH_AS(
        parse_document(std::string("1\tx\tx\tNOUN\tnng\t_\t7\tnmod\t_\t_\n")),
        doctest::Contains("out of range"), ParseError);
  }
  SUBCASE("unknown deprel is an error by default") {
    const std::string text = "1\tx\tx\tNOUN\tnng\t_\t0\tNP_SBJ\t_\t_\n";
    CHECK_THROWS_WITH_AS(parse_document(text), doctest::Contains("NP_SBJ"), ParseError);
    ParseOptions lax;
    lax.deprel_policy = DeprelPolicy::kUdLax;
    std::vector<std::string> warnings;
    const auto trees = parse_document(text, lax, &warnings);
    CHECK(trees.size() == 1);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("NP_SBJ") != std::string::npos);
  }
}

TEST_CASE("relation parsing enforces the legal subtype pairs") {
  CHECK(deprel::is_valid_ud("nsubj"));
  CHECK(deprel::is_valid_ud("obl:arg"));
  CHECK(deprel::is_valid_ud("dislocated:nsubj"));
  CHECK(deprel::is_valid_ud("nmod:poss"));
  CHECK(deprel::is_valid_ud("csubj:pass"));
  CHECK_FALSE(deprel::is_valid_ud("obl:tmod"));
  CHECK_FALSE(deprel::is_valid_ud("acl"));
  CHECK_FALSE(deprel::is_valid_ud("nsubj:arg"));
  CHECK_FALSE(deprel::is_valid_ud(""));
  const auto r = Relation::parse("obl:arg");
  REQUIRE(r.has_value());
  CHECK(r->universal == "obl");
  CHECK(r->subtype == "arg");
  CHECK(r->str() == "obl:arg");
  CHECK(deprel::universal("dislocated:nsubj") == "dislocated");
}

TEST_CASE("serialize: canonical output") {
  const auto trees = parse_document(std::string(kStarbucks));
  const std::string out = serialize_document(trees);
  CHECK(out == kStarbucks);
  CHECK(out.find("3\t스타벅스가") != std::string::npos);
  CHECK(serialize_document({}) == "");
}

TEST_CASE("serialize refuses ill-formed trees") {
  auto t = tiny({{0, "root"}, {0, "root"}});
  t.sentence_id = "bad-tree";
  CHECK_THROWS_WITH_AS(serialize_tree(t), doctest::Contains("bad-tree"),
                       SerializeError);
}

TEST_CASE("round-trip: parse(serialize(t)) == t and bytes survive") {
  std::mt19937 rng(20240811);
  for (int i = 0; i < 50; ++i) {
    const auto tree = testgen::random_tree(rng);
    const std::string text = serialize_tree(tree);
    const auto reparsed = parse_document(text);
    REQUIRE(reparsed.size() == 1);
    CHECK(reparsed[0] == tree);
    CHECK(serialize_tree(reparsed[0]) == text);
  }
}

TEST_CASE("check_wellformed basics") {
  SUBCASE("clean tree") {
    const auto t = tiny({{2, "nmod"}, {0, "root"}, {2, "nmod"}});
    CHECK(check_wellformed(t).empty());
  }
  SUBCASE("two roots") {
    const auto ds = check_wellformed(tiny({{0, "root"}, {0, "root"}}));
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == "TREE-MULTIROOT");
    CHECK(ds[0].token_indices == std::vector<int>{1, 2});
  }
  SUBCASE("token pointing into a 2-cycle") {
    const auto ds = check_wellformed(tiny({{2, "dep"}, {3, "dep"}, {2, "dep"}}));
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == "TREE-CYCLE");
    CHECK(ds[0].token_indices == std::vector<int>{2, 3});
  }
  SUBCASE("dangling head is an orphan") {
    DependencyTree t = tiny({{0, "root"}, {9, "dep"}});
    const auto ds = check_wellformed(t);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].code == "TREE-ORPHAN");
    CHECK(ds[0].token_indices == std::vector<int>{2});
  }
}

TEST_CASE("check_wellformed agrees with the exhaustive oracle (n <= 5)") {
  for (int n = 1; n <= 5; ++n) {
    std::vector<int> heads(static_cast<size_t>(n), 0);
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
      const bool checker = check_wellformed(t).empty();
      const bool oracle = testgen::oracle_wellformed(t);
      REQUIRE_MESSAGE(checker == oracle, "disagreement at n=", n, " code=", code);
    }
  }
}

TEST_CASE("check_wellformed agrees with the oracle on random assignments (n <= 12)") {
  std::mt19937 rng(31337);
  for (int iter = 0; iter < 2000; ++iter) {
    const int n = 1 + static_cast<int>(rng() % 12);
    DependencyTree t;
    for (int i = 1; i <= n; ++i) {
      Token tok;
      tok.index = i;
      tok.form = "w";
      tok.lemma = "w";
      tok.upos = "NOUN";
      tok.xpos = "nng";
      tok.head = static_cast<int>(rng() % static_cast<unsigned>(n + 1));
      tok.deprel = tok.head == 0 ? "root" : "dep";
      t.tokens.push_back(std::move(tok));
    }
    CHECK(check_wellformed(t).empty() == testgen::oracle_wellformed(t));
  }
}

TEST_CASE("oversized numeric columns are parse errors, not crashes") {
  CHECK_THROWS_AS(parse_document(std::string(
                      "99999999999\tx\tx\tNOUN\tnng\t_\t0\troot\t_\t_\n")),
                  ParseError);
  CHECK_THROWS_AS(parse_document(std::string(
                      "1\tx\tx\tNOUN\tnng\t_\t99999999999\tdep\t_\t_\n")),
                  ParseError);
}

TEST_CASE("children") {
  // Figure-1 revised shape: root 5, 4 under 5, 1 and 3 under 4, 2 under 3.
  const auto t = tiny({{4, "dislocated:nsubj"},
                       {3, "compound"},
                       {4, "obj"},
                       {5, "xcomp"},
                       {0, "root"}});
  CHECK(children(t, 5) == std::vector<int>{4});
  CHECK(children(t, 4) == std::vector<int>{1, 3});
  CHECK(children(t, 2).empty());
  CHECK(children(t, 0) == std::vector<int>{5});
  CHECK_THROWS_AS(children(t, 6), std::out_of_range);
  CHECK_THROWS_AS(children(t, -1), std::out_of_range);
}

TEST_CASE("children: fuzzed trees match the quadratic oracle and partition") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    const auto t = testgen::random_tree(rng, 12);
    std::set<int> covered;
    for (int i = 0; i <= t.size(); ++i) {
      const auto got = children(t, i);
      CHECK(got == testgen::oracle_children(t, i));
      for (int j : got) {
        CHECK(covered.insert(j).second);  // disjoint
      }
    }
    CHECK(static_cast<int>(covered.size()) == t.size());  // complete
  }
}

TEST_CASE("xpos helpers") {
  Token t;
  t.xpos = "NNG+JKS";
  const auto elems = t.xpos_elements();
  REQUIRE(elems.size() == 2);
  CHECK(elems[0] == "nng");  // tag comparison is case-insensitive
  CHECK(elems[1] == "jks");
  t.xpos = "";
  CHECK(t.xpos_elements().empty());
}

TEST_CASE("comments and metadata survive a round trip") {
  const std::string text =
      "# sent_id = c-1\n"
      "# text = 하나\n"
      "# custom note line\n"
      "1\t하나\t하나\tNOUN\tnng\t_\t0\troot\t_\t_\n"
      "\n";
  const auto trees = parse_document(text);
  REQUIRE(trees.size() == 1);
  CHECK(trees[0].comments.size() == 3);
  CHECK(serialize_document(trees) == text);
}
