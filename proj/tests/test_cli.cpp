#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"

using namespace montrans;
using testing::data_path;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("montrans_cli_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string write(const TempDir& dir, const std::string& name, const std::string& text) {
  const std::string p = dir / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("eval") {
  const std::string machine = data_path("four_state_free.json");
  Outcome r = run({"eval", "--machine", machine, "bb"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "β·β·α\n");
  r = run({"eval", "--machine", machine, "a"});
  CHECK(r.code == cli::kBottom);
  CHECK(r.out == "⊥\n");
  CHECK(run({"eval", "--machine", machine, "e"}).out == "α\n");
  CHECK(run({"eval", "--machine", machine}).out == "α\n");
  r = run({"eval", "--machine", machine, "bz"});
  CHECK(r.code == cli::kFailure);
  CHECK_FALSE(r.err.empty());
  CHECK(run({"eval", "--machine", "/nonexistent/machine.json", "b"}).code == cli::kFailure);
  CHECK(run({"eval"}).code == cli::kFailure);
  CHECK(run({"frobnicate"}).code == cli::kFailure);
}

TEST_CASE("schema errors name the field") {
  TempDir dir;
  auto doc = nlohmann::json::parse(read_file(data_path("four_state_free.json")));
  doc["transitions"][1]["to"] = "nowhere";
  const std::string bad = write(dir, "bad.json", doc.dump());
  const Outcome r = run({"eval", "--machine", bad, "b"});
  CHECK(r.code == cli::kFailure);
  CHECK(r.err.find("/transitions/1/to") != std::string::npos);
}

TEST_CASE("minimize") {
  TempDir dir;
  const Outcome r = run({"minimize", "--machine", data_path("four_state_commutative.json")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == read_file(data_path("one_state_commutative.json")));

  const std::string out = dir / "min.json";
  const std::string dot = dir / "min.dot";
  CHECK(run({"minimize", "--machine", data_path("four_state_commutative.json"), "-o", out, "--emit-stages", "--dot", dot})
            .code == cli::kOk);
  CHECK(read_file(out) == r.out);
  CHECK(load_transducer(dir / "min.reach.json").state_count() == 3);
  CHECK(load_transducer(dir / "min.total.json").state_count() == 2);
  CHECK(load_transducer(dir / "min.prefix.json").state_count() == 2);
  const auto witnesses = nlohmann::json::parse(read_file(dir / "min.witnesses.json"));
  CHECK(witnesses["format_version"] == 1);
  REQUIRE(witnesses["witnesses"].size() == 2);
  CHECK(witnesses["witnesses"][1]["state"] == "3");
  CHECK(witnesses["witnesses"][1]["representative"] == "1");
  CHECK(read_file(dot).rfind("digraph transducer {", 0) == 0);

  // --emit-stages without -o is refused before anything is written.
  CHECK(run({"minimize", "--machine", data_path("four_state_free.json"), "--emit-stages"}).code == cli::kFailure);
}

TEST_CASE("learn") {
  TempDir dir;
  const std::string out = dir / "learned.json";
  const std::string stats = dir / "stats.json";
  CHECK(run({"learn", "--target", data_path("three_state.json"), "-o", out, "--stats", stats}).code == cli::kOk);
  CHECK(iso_check(load_transducer(out), load_transducer(data_path("three_state.json"))).has_value());
  const auto s = nlohmann::json::parse(read_file(stats));
  CHECK(s["equivalence_queries"] == 2);
  CHECK(s["q_updates"] == 2);
  CHECK(s["t_updates"] == 2);
  CHECK(s.contains("membership_queries"));
  CHECK(s.contains("loop_iterations"));

  const Outcome again = run({"learn", "--target", data_path("three_state.json")});
  CHECK(again.out == read_file(out));

  const Outcome capped = run({"learn", "--target", data_path("three_state.json"), "--cap", "1"});
  CHECK(capped.code == cli::kBudget);
  CHECK(capped.err.find("equivalence_queries") != std::string::npos);
  CHECK(run({"learn", "--target", data_path("three_state.json"), "--max-iterations", "1"}).code == cli::kBudget);
  CHECK(run({"learn", "--target", data_path("three_state.json"), "--cap", "0"}).code == cli::kFailure);

  const Outcome comm = run({"learn", "--target", data_path("four_state_commutative.json")});
  CHECK(comm.code == cli::kOk);
  CHECK(parse_transducer(comm.out).state_count() == 1);
}

TEST_CASE("equiv") {
  Outcome r = run({"equiv", "--left", data_path("three_state.json"), "--right", data_path("two_state_guess.json")});
  CHECK(r.code == cli::kDifferent);
  CHECK(r.out == "bb\nleft: ⊥\nright: α·α·α\n");
  r = run({"equiv", "--left", data_path("four_state_commutative.json"), "--right", data_path("one_state_commutative.json")});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "equivalent\n");
  r = run({"equiv", "--left", data_path("three_state.json"), "--right", data_path("three_state.json"), "--max-len", "3"});
  CHECK(r.out == "equivalent\n");
  r = run({"equiv", "--left", data_path("three_state.json"), "--right", data_path("one_state_commutative.json")});
  CHECK(r.code == cli::kFailure);
}

TEST_CASE("nontermination demo") {
  const Outcome r = run({"demo", "nontermination", "--cap", "6"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("C_5: |Q| = 6") != std::string::npos);
  CHECK(r.out.find("stopped: |Q| = 7 > 6, equivalence queries = 0") != std::string::npos);
  CHECK(r.out.find("learned 1 state(s) with 1 equivalence query") != std::string::npos);
  CHECK(run({"demo", "nontermination", "--cap", "6"}).out == r.out);
  CHECK(run({"demo", "nontermination", "--cap", "1"}).code == cli::kFailure);
}
