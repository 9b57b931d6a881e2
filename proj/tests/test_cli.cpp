#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <unistd.h>

#include "pegsa/cli.hpp"
#include "pegsa/corpus.hpp"

using namespace pegsa;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() / ("pegsa-cli-test-" + std::to_string(::getpid()) + "-" +
                                                      std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

std::string emit(const std::string& name) { return cli({"corpus", "emit", name}).out; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("peg recognize statuses") {
    TempDir dir;
    const std::string p2 = dir.write("p2.peg", emit("p2"));
    auto r = cli({"peg", "recognize", p2, "a^8"});
    CHECK(r.status == 0);
    CHECK(r.out == "member\n");
    r = cli({"peg", "recognize", p2, "aaaaaa"});
    CHECK(r.status == 1);
    CHECK(r.out == "nonmember\n");
    CHECK(cli({"peg", "recognize", p2, "a^16"}).status == 0);
    CHECK(cli({"peg", "recognize", p2, "a^0"}).status == 1);

    const std::string lr = dir.write("lr.peg", "A <- A 'a' / 'a'\n");
    r = cli({"peg", "recognize", lr, "aa"});
    CHECK(r.status == 2);
    CHECK(r.out == "diverges\n");
    CHECK(r.err.find("A") != std::string::npos);

    CHECK(cli({"peg", "recognize", p2, "ab"}).status == 65);
    CHECK(cli({"peg", "recognize", dir.write("bad.peg", "S <- 'a\n"), "a"}).status == 65);
    CHECK(cli({"peg", "recognize", dir.path("missing.peg"), "a"}).status == 66);
    CHECK(cli({"peg", "recognize"}).status == 64);
    CHECK(cli({"no-such-command"}).status == 64);
    CHECK(cli({}).status == 64);
  }

  TEST_CASE("peg lint and normalize") {
    TempDir dir;
    auto r = cli({"peg", "lint", dir.write("p2.peg", emit("p2"))});
    CHECK(r.status == 0);
    CHECK(r.out == "clean\n");
    r = cli({"peg", "lint", dir.write("lr.peg", "A <- B 'a'\nB <- A / 'b'\n")});
    CHECK(r.status == 1);
    CHECK(r.out.rfind("cycle:", 0) == 0);
    r = cli({"peg", "normalize", dir.write("s.peg", "S <- 'a'* 'b'\n")});
    CHECK(r.status == 0);
    CHECK_FALSE(r.out.empty());
    const std::string normal = dir.write("n.peg", r.out);
    CHECK(cli({"peg", "recognize", normal, "aaab"}).status == 0);
    CHECK(cli({"peg", "recognize", normal, "aaa"}).status == 1);
  }

  TEST_CASE("sa run with DOT output") {
    TempDir dir;
    const std::string a2 = dir.write("a2.json", emit("a2"));
    const std::string dot = dir.path("run.dot");
    auto r = cli({"sa", "run", a2, "a^4", "--dot", dot});
    CHECK(r.status == 0);
    CHECK(r.out.rfind("accept\nfinal state: ", 0) == 0);
    CHECK(r.out.find("\naccepting prefixes: 1 2 4\n") != std::string::npos);
    const std::string graph = slurp(dot);
    CHECK(graph.rfind("digraph", 0) == 0);
    r = cli({"sa", "run", a2, "aaaaaaaaaa", "--dot", dot});
    CHECK(r.status == 1);
    CHECK(r.out.find("\naccepting prefixes: 1 2 4 8\n") != std::string::npos);
    r = cli({"sa", "run", a2, "aaa"});
    CHECK(r.status == 1);
    CHECK(r.out.rfind("reject\n", 0) == 0);
    CHECK(cli({"sa", "run", dir.write("bad.json", "{"), "a"}).status == 65);
  }

  TEST_CASE("output is deterministic") {
    TempDir dir;
    const std::string p2 = dir.write("p2.peg", emit("p2"));
    const auto first = cli({"translate", "peg2sa", p2, "--materialize", "8"});
    const auto second = cli({"translate", "peg2sa", p2, "--materialize", "8"});
    CHECK(first.status == 0);
    CHECK(first.out == second.out);
    CHECK(emit("h") == emit("h"));
    const std::string a2 = dir.write("a2.json", emit("a2"));
    CHECK(cli({"sa", "run", a2, "a^8", "--dot", dir.path("1.dot")}).out ==
          cli({"sa", "run", a2, "a^8", "--dot", dir.path("2.dot")}).out);
    CHECK(slurp(dir.path("1.dot")) == slurp(dir.path("2.dot")));
  }

  TEST_CASE("translations round trip through files") {
    TempDir dir;
    const std::string p2 = dir.write("p2.peg", emit("p2"));
    auto r = cli({"translate", "peg2sa", p2, "--materialize", "16"});
    REQUIRE(r.status == 0);
    const std::string table = dir.write("p2.json", r.out);
    CHECK(cli({"crosscheck", p2, table, "--maxlen", "16"}).status == 0);
    const std::string small = dir.write("small.peg", "S <- 'a' S / ()\n");
    r = cli({"translate", "peg2sa", small, "--materialize", "6", "--mode", "concrete"});
    REQUIRE(r.status == 0);
    CHECK(cli({"crosscheck", small, dir.write("small.json", r.out), "--maxlen", "6"}).status == 0);
    CHECK(cli({"translate", "peg2sa", p2, "--materialize", "4", "--mode", "bogus"}).status == 64);

    r = cli({"translate", "sa2peg", dir.write("a2.json", emit("a2")), "--expand", "16"});
    REQUIRE(r.status == 0);
    const std::string back = dir.write("back.peg", r.out);
    CHECK(cli({"peg", "lint", back}).status == 0);
    CHECK(cli({"peg", "recognize", back, "a^8"}).status == 0);
    CHECK(cli({"peg", "recognize", back, "a^6"}).status == 1);
    CHECK(cli({"translate", "sa2peg", dir.write("h.json", emit("h"))}).status == 70);
  }

  TEST_CASE("corpus list and emit") {
    const auto r = cli({"corpus", "list"});
    CHECK(r.status == 0);
    for (const auto& e : corpus_entries()) CHECK(r.out.find(e.name + "\t") != std::string::npos);
    CHECK(emit("p2").find("<-") != std::string::npos);
    CHECK(nlohmann::json::parse(emit("a3")).is_object());
    CHECK(nlohmann::json::parse(emit("tm-negation")).is_object());
    CHECK(cli({"corpus", "emit", "nope"}).status != 0);
  }

  TEST_CASE("crosscheck reports") {
    TempDir dir;
    const std::string p2 = dir.write("p2.peg", emit("p2"));
    auto r = cli({"crosscheck", p2, dir.write("a2.json", emit("a2")), "--maxlen", "16", "--json"});
    CHECK(r.status == 0);
    CHECK(r.out == "{\"checked\":17,\"counterexamples\":[],\"classCount\":null}\n");
    r = cli({"crosscheck", p2, dir.write("a3.json", emit("a3")), "--maxlen", "9"});
    CHECK(r.status == 1);
    CHECK(r.out.find("counterexample: \"aaa\"") != std::string::npos);
    CHECK(r.out.find("disagree") != std::string::npos);
    CHECK(cli({"crosscheck", p2, dir.path("a2.json")}).status == 64);
  }

  TEST_CASE("eqclasses") {
    TempDir dir;
    auto r = cli({"eqclasses", "oracle:k", "--prefix-len", "4", "--suffix-len", "1", "--suffix-alphabet", "01",
                  "--json"});
    CHECK(r.status == 0);
    CHECK(nlohmann::json::parse(r.out)["classCount"] == 4);
    const std::string prefixes = dir.write("prefixes.txt", "0#0#\n0#1#\n1#0#\n1#1#\n####\n");
    r = cli({"eqclasses", "oracle:k", "--prefix-len", "4", "--suffix-len", "1", "--suffix-alphabet", "01",
             "--prefix-file", prefixes});
    CHECK(r.status == 0);
    CHECK(r.out == "prefixes 5, suffixes 2, classes 4\n");
    r = cli({"eqclasses", "grammar:" + dir.write("p2.peg", emit("p2")), "--prefix-len", "3", "--suffix-len", "1"});
    CHECK(r.status == 0);
    CHECK(r.out == "prefixes 1, suffixes 1, classes 1\n");
    CHECK(cli({"eqclasses", "oracle:nope", "--prefix-len", "1", "--suffix-len", "1"}).status != 0);
    CHECK(cli({"eqclasses", "oracle:k", "--prefix-len", "40", "--suffix-len", "1"}).status == 70);
  }

  TEST_CASE("universal build") {
    TempDir dir;
    const std::string tm = dir.write("neg.json", emit("tm-negation"));
    auto r = cli({"universal", "build", tm, "--input", "0110"});
    CHECK(r.status == 0);
    CHECK(r.out.find("f(x) = 1001\n") == 0);
    r = cli({"universal", "build", tm});
    CHECK(r.status == 0);
    const std::string a = dir.write("u.json", r.out);
    CHECK(r.out == emit("universal-negation"));
    CHECK(cli({"sa", "run", a, "0"}).status == 1);
    CHECK(cli({"universal", "build", dir.write("bad.json", "{\"states\": 3}")}).status == 65);
  }

  TEST_CASE("help") {
    const auto r = cli({"--help"});
    CHECK(r.status == 0);
    CHECK(r.out.find("eqclasses") != std::string::npos);
  }
}
