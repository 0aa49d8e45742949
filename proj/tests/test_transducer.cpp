#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "montrans/error.hpp"
#include "support.hpp"

using namespace montrans;
using testing::data_path;

namespace {

Transducer four_state() { return load_transducer(data_path("four_state_free.json")); }

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
  return n;
}

}  // namespace

TEST_CASE("evaluation on the four-state example") {
  const Transducer b = four_state();
  const Monoid& m = b.monoid();
  CHECK(m.render(eval(b, b.parse_word("bb"))) == "β·β·α");
  CHECK(eval(b, b.parse_word("a")) == std::nullopt);
  CHECK(eval(b, b.parse_word("")) == m.parse("α"));
  CHECK(eval(b, b.parse_word("e")) == m.parse("α"));
  CHECK(eval(b, b.parse_word("ab")) == std::nullopt);
  for (std::size_t n = 0; n < 6; ++n) {
    Word w(n, 1);
    Element::Sequence expected(n, 1);
    expected.push_back(0);
    CHECK(eval(b, w) == m.word(expected));
  }
  CHECK_THROWS_AS(b.parse_word("c"), UnknownLetter);
  CHECK_THROWS_AS(eval(b, Word{7}), UnknownLetter);
}

TEST_CASE("evaluation from a state") {
  const Transducer b = four_state();
  const Monoid& m = b.monoid();
  const StateId s3 = *b.find_state("3");
  const StateId s4 = *b.find_state("4");
  CHECK(m.render(state_eval(b, s3, b.parse_word("b"))) == "β·α");
  for (StateId s = 0; s < b.state_count(); ++s) CHECK(state_eval(b, s, Word{}) == b.termination(s));
  CHECK(state_eval(b, s4, Word{}) == m.unit());
  for (const auto& w : testing::words_up_to(2, 4))
    if (!w.empty()) CHECK(state_eval(b, s4, w) == std::nullopt);
}

TEST_CASE("reachable and productive states") {
  const Transducer b = four_state();
  auto names = [&](const std::vector<StateId>& ids) {
    std::vector<std::string> out;
    for (StateId s : ids) out.push_back(b.states()[s]);
    return out;
  };
  CHECK(names(reachable_states(b)) == std::vector<std::string>{"1", "2", "3"});
  CHECK(names(productive_states(b)) == std::vector<std::string>{"1", "3", "4"});

  Transducer no_init = b;
  no_init.clear_initial();
  CHECK(reachable_states(no_init).empty());

  const Monoid m(MonoidSpec::nat_add());
  Transducer loop(m, {"a"}, {"x"});
  loop.set_initial(m.unit(), 0);
  loop.set_transition(0, 0, m.number(1), 0);
  CHECK(reachable_states(loop) == std::vector<StateId>{0});
  CHECK(productive_states(loop).empty());

  Transducer chain(m, {"a"}, {"p", "q", "r", "sink"});
  chain.set_transition(0, 0, m.unit(), 1);
  chain.set_transition(1, 0, m.unit(), 3);
  chain.set_transition(2, 0, m.unit(), 2);
  chain.set_termination(3, m.unit());
  CHECK(productive_states(chain) == std::vector<StateId>{0, 1, 3});
}

TEST_CASE("reachability and productivity are least closed sets") {
  testing::Rng rng(5);
  for (const auto& m : testing::instances()) {
    for (int i = 0; i < 40; ++i) {
      const Transducer t = testing::random_machine(m, rng);
      const auto reach = reachable_states(t);
      const auto prod = productive_states(t);
      auto in = [](const std::vector<StateId>& set, StateId s) { return std::binary_search(set.begin(), set.end(), s); };
      for (StateId s : reach)
        for (Letter a = 0; a < t.letter_count(); ++a)
          if (const auto& e = t.transition(s, a)) CHECK(in(reach, e->target));
      for (StateId s = 0; s < t.state_count(); ++s) {
        // Least: a state is reachable iff some word leads to it.
        bool reached = false;
        for (const auto& w : testing::words_up_to(t.letter_count(), t.state_count()))
          if (auto c = run(t, Configuration{m.unit(), t.initial()->state}, w); c && c->state == s) reached = true;
        CHECK(in(reach, s) == reached);
        bool defined = false;
        for (const auto& w : testing::words_up_to(t.letter_count(), t.state_count()))
          if (state_eval(t, s, w)) defined = true;
        CHECK(in(prod, s) == defined);
      }
    }
  }
}

TEST_CASE("evaluation splits over concatenation") {
  testing::Rng rng(9);
  for (const auto& m : testing::instances()) {
    for (int i = 0; i < 30; ++i) {
      const Transducer t = testing::random_machine(m, rng);
      for (const auto& u : testing::words_up_to(t.letter_count(), 2)) {
        std::optional<Configuration> start;
        if (t.initial()) start = Configuration{t.initial()->value, t.initial()->state};
        const auto mid = run(t, start, u);
        for (const auto& v : testing::words_up_to(t.letter_count(), 2)) {
          Word uv = u;
          uv.insert(uv.end(), v.begin(), v.end());
          const PartialValue whole = eval(t, uv);
          if (!mid) {
            CHECK(whole == std::nullopt);  // an undefined prefix stays undefined
            continue;
          }
          CHECK(whole == m.mul(PartialValue(mid->value), state_eval(t, mid->state, v)));
        }
      }
    }
  }
}

TEST_CASE("serialization round trip") {
  const std::string text = read_file(data_path("four_state_free.json"));
  CHECK(dump(to_json(parse_transducer(text))) == text);
  for (const char* name : {"four_state_commutative.json", "one_state_commutative.json", "three_state.json", "two_state_guess.json",
                           "three_state_trace.json"}) {
    const std::string golden = read_file(data_path(name));
    CHECK(dump(to_json(parse_transducer(golden))) == golden);
  }
  testing::Rng rng(13);
  for (const auto& m : testing::instances()) {
    for (int i = 0; i < 30; ++i) {
      const Transducer t = testing::random_machine(m, rng);
      CHECK(from_json(to_json(t)) == t);
    }
  }
}

TEST_CASE("deserialization reports the offending field") {
  auto doc = nlohmann::json::parse(read_file(data_path("four_state_free.json")));
  auto expect_path = [](const nlohmann::json& d, const std::string& path) {
    try {
      from_json(d);
      FAIL("accepted an invalid document");
    } catch (const SchemaError& e) {
      CHECK(e.path() == path);
    }
  };
  {
    auto d = doc;
    d["transitions"][2]["to"] = "9";
    expect_path(d, "/transitions/2/to");
  }
  {
    auto d = doc;
    d["transitions"][0]["letter"] = "z";
    expect_path(d, "/transitions/0/letter");
  }
  {
    auto d = doc;
    d["transitions"].push_back(d["transitions"][0]);
    expect_path(d, "/transitions/3");
  }
  {
    auto d = doc;
    d["termination"]["1"] = {"δ"};
    expect_path(d, "/termination/1/0");
  }
  {
    auto d = doc;
    d["initial"]["state"] = "7";
    expect_path(d, "/initial/state");
  }
  {
    auto d = doc;
    d["monoid"]["kind"] = "tropical";
    expect_path(d, "/monoid/kind");
  }
  {
    auto d = doc;
    d.erase("alphabet");
    expect_path(d, "/alphabet");
  }
  {
    auto d = doc;
    d["format_version"] = 2;
    expect_path(d, "/format_version");
  }
  {
    auto d = doc;
    d["monoid"] = {{"kind", "cyclic-group"}, {"modulus", 3}};
    d["initial"]["value"] = 3;
    expect_path(d, "/initial/value");
  }
  {
    auto d = doc;
    d["monoid"] = {{"kind", "commutative"}, {"generators", {"α", "β"}}};
    d["initial"]["value"] = {{"α", 0}};
    expect_path(d, "/initial/value/α");
  }
  CHECK_THROWS_AS(parse_transducer("{ not json"), SchemaError);
}

TEST_CASE("non-canonical trace outputs are canonicalized with a warning") {
  auto doc = nlohmann::json::parse(read_file(data_path("three_state_trace.json")));
  doc["transitions"][0]["output"] = {"γ", "β", "α"};
  std::vector<std::string> warnings;
  const Transducer t = from_json(doc, &warnings);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("/transitions/0/output") != std::string::npos);
  CHECK(t.monoid().render(t.transition(0, 0)->output) == "γ·α·β");
  CHECK(to_json(t)["transitions"][0]["output"] == nlohmann::json({"γ", "α", "β"}));
}

TEST_CASE("DOT export") {
  const Transducer b = four_state();
  const std::string dot = to_dot(b);
  CHECK(dot.rfind("digraph transducer {", 0) == 0);
  CHECK(count(dot, " / ") == 3);
  CHECK(count(dot, "shape=circle") + count(dot, "shape=doublecircle") == 4);
  CHECK(dot.find("\"1\" -> \"3\" [label=\"b / β\"]") != std::string::npos);
  CHECK(dot.find("__start -> \"1\" [label=\"ε\"]") != std::string::npos);
  CHECK(dot.find("label=\"1 : α\"") != std::string::npos);
  CHECK(dot.find("label=\"2\"") != std::string::npos);  // undefined termination is omitted
  CHECK(to_dot(b) == dot);

  const Transducer empty(b.monoid(), b.alphabet(), {});
  CHECK(to_dot(empty) == "digraph transducer {\n  rankdir=LR;\n}\n");
}

TEST_CASE("machines reject malformed declarations") {
  const Monoid m(MonoidSpec::nat_add());
  CHECK_THROWS_AS(Transducer(m, {"a", "a"}, {"x"}), Error);
  CHECK_THROWS_AS(Transducer(m, {"a"}, {"x", "x"}), Error);
  CHECK_THROWS_AS(Transducer(m, {""}, {"x"}), Error);
  Transducer t(m, {"a"}, {"x"});
  CHECK_THROWS_AS(t.set_transition(0, 0, m.unit(), 3), Error);
  CHECK_THROWS_AS(t.set_transition(0, 4, m.unit(), 0), UnknownLetter);
}

TEST_CASE("words over multi-character letters need separators") {
  const Monoid m(MonoidSpec::nat_add());
  const Transducer t(m, {"go", "stop"}, {"x"});
  CHECK(t.parse_word("go·stop·go") == Word{0, 1, 0});
  CHECK(t.parse_word("stop") == Word{1});
  CHECK_THROWS_AS(t.parse_word("gostop"), UnknownLetter);
  CHECK(t.render_word(Word{0, 1}) == "go·stop");
  CHECK(t.render_word(Word{}) == "e");
}
