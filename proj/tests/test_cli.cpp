#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("mtv_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string read(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p;
}

Run mtv(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const std::string cmd = std::string(MTV_BINARY) + " " + args + " > " + out.string() + " 2> " + (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read(out)};
}

const std::string golden = R"({"kind":"sft","vertices":2,"edges":[[0,0],[0,1],[1,0]]})";
const std::string cycle3 = R"({"kind":"finite_map","table":[1,2,0]})";

}  // namespace

TEST_CASE("hitting command prints the exact set") {
  const fs::path g = write("golden.json", golden);
  const Run r = mtv("hitting --system " + g.string() + " --u 1 --v 1");
  CHECK(r.code == 0);
  CHECK(r.out == "{\"exact\":{\"exceptional\":[],\"modulus\":1,\"residues\":[0],\"threshold\":2}}\n");
}

TEST_CASE("family command") {
  const Run r = mtv("family --kind vec --a 1,2 --set odds");
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "fails");
  CHECK(j["witness"] == nlohmann::json::array({0, 0}));
  CHECK(mtv("family --kind vec --a 1,2 --set odds --fatal").code == 1);

  const fs::path req = write("request.json",
                             R"({"family":{"kind":"vec","a":[1,2]},"set":{"explicit":{"elements":[2,4,6,8,10,12,14,16,18,20,22,24,26,28,30,32,34,36,38,40,42,44,46,48,50,52,54,56,58,60,62,64],"horizon":64}},"bounds":{"n_max":16}})");
  const auto e = nlohmann::json::parse(mtv("family --set " + req.string()).out);
  CHECK(e["verdict"] == "fails");
  CHECK(e["scope"] == "bounded");
  CHECK(e["witness"] == nlohmann::json::array({0, 1}));
  // a k bound below the horizon cannot certify a failure
  CHECK(nlohmann::json::parse(mtv("family --set " + req.string() + " --k-max 20").out)["verdict"] == "unknown");

  CHECK(nlohmann::json::parse(mtv("family --kind inf --set evens").out)["verdict"] == "holds");
  CHECK(nlohmann::json::parse(mtv("family --kind thick --set evens").out)["verdict"] == "fails");
  CHECK(mtv("family --kind nope --set evens").code == 2);
  CHECK(mtv("family --kind vec --set '{\"explicit\":{\"elements\":[1],\"horizon\":40}}' --lane exact").code == 4);
}

TEST_CASE("analyze command") {
  const fs::path c = write("c3.json", cycle3);
  const Run r = mtv("analyze --system " + c.string());
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["properties"]["transitive"]["verdict"] == "holds");
  CHECK(j["properties"]["weakly_mixing"]["verdict"] == "fails");

  const auto g = nlohmann::json::parse(mtv("analyze --system " + write("g.json", golden).string()).out);
  CHECK(g["properties"]["mixing"]["verdict"] == "holds");
}

TEST_CASE("exit codes") {
  CHECK(mtv("analyze --system " + write("empty.json", R"({"kind":"sft","vertices":2,"edges":[]})").string()).code == 3);
  CHECK(mtv("analyze --system " + write("bad.json", "{\"kind\":").string()).code == 2);
  CHECK(mtv("analyze --system " + write("nokind.json", "{\"table\":[0]}").string()).code == 2);
  CHECK(mtv("analyze --system /nonexistent/file.json").code == 2);
  CHECK(mtv("analyze --system " + write("range.json", R"({"kind":"finite_map","table":[3]})").string()).code == 3);
  CHECK(mtv("frobnicate").code == 2);
  const fs::path sp = write("sp.json", R"({"kind":"spacing_shift","gaps":[2,3],"horizon":64})");
  CHECK(mtv("hitting --system " + sp.string() + " --u 1 --v 1 --lane exact").code == 4);
  CHECK(mtv("hitting --system " + sp.string() + " --u 1 --v 1 --horizon 32").code == 0);
  CHECK(mtv("hitting --system " + write("g2.json", golden).string() + " --u 1,1 --v 0").code == 3);
  CHECK(mtv("analyze --system " + write("c3b.json", R"({"kind":"finite_map","table":[0,0]})").string() + " --fatal").code == 1);
}

TEST_CASE("verify command writes reports") {
  const fs::path out = scratch() / "sft3";
  const Run r = mtv("verify --theorem thm42 --corpus sft3 --out " + out.string());
  REQUIRE(r.code == 0);
  const auto summary = nlohmann::json::parse(r.out);
  CHECK(summary["disagree"] == 0);
  CHECK(summary["agree"] == summary["cases"]);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "summary.csv"));

  const fs::path out2 = scratch() / "maps2";
  REQUIRE(mtv("verify --theorem thm42 --corpus maps2 --all-cases --out " + out2.string()).code == 0);
  const auto rep = nlohmann::json::parse(read(out2 / "report.json"));
  CHECK(rep["cases"].size() == rep["summary"]["cases"]);
  const auto first = rep["cases"][0];
  for (const char* key : {"system", "a", "side_L", "side_R", "agree"}) CHECK(first.contains(key));
  const std::string csv = read(out2 / "summary.csv");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == static_cast<long>(rep["cases"].size()) + 1);

  for (const char* th : {"lemma32", "prop33", "tower"}) {
    const Run t = mtv(std::string("verify --theorem ") + th + " --corpus maps3");
    CHECK(t.code == 0);
    CHECK(nlohmann::json::parse(t.out)["summary"]["disagree"] == 0);
  }
  const fs::path full = write("full2.json", R"({"kind":"sft","vertices":2,"edges":[[0,0],[0,1],[1,0],[1,1]]})");
  const Run t53 = mtv("verify --theorem thm53 --system " + full.string() + " --b 1,2,3,4 --e-size 3");
  CHECK(t53.code == 0);
  CHECK(nlohmann::json::parse(t53.out)["summary"]["agree"] == 3);
  CHECK(mtv("verify --theorem thm99 --corpus maps2").code == 2);
  CHECK(mtv("verify --theorem thm42 --corpus bogus").code == 2);
}

TEST_CASE("search and chaos commands") {
  const Run s = mtv("search --count 5 --horizon 128 --seed 3");
  REQUIRE(s.code == 0);
  CHECK(nlohmann::json::parse(s.out).size() == 5);
  CHECK(mtv("search --count 2 --predicate bogus").code == 2);

  const fs::path full = write("full2c.json", R"({"kind":"sft","vertices":2,"edges":[[0,0],[0,1],[1,0],[1,1]]})");
  const auto c = nlohmann::json::parse(mtv("chaos --system " + full.string() + " --horizon 1024").out);
  CHECK(c["verdict"] == "holds");
  CHECK(c["evidence"]["scrambled"] == true);
  const auto p = nlohmann::json::parse(mtv("chaos --mode proximal --system " + write("m.json", R"({"kind":"finite_map","table":[1,1,1]})").string()).out);
  CHECK(p["proximal_pairs"].size() == 9);
}

TEST_CASE("identical invocations give identical bytes") {
  const fs::path g = write("gd.json", golden);
  const std::vector<std::string> cmds = {
      "hitting --system " + g.string() + " --u 0,1 --v 1",
      "analyze --system " + g.string(),
      "family --kind vec --a 1,2,3 --set evens",
      "search --count 4 --horizon 128 --seed 9",
      "chaos --system " + g.string() + " --horizon 512",
      "chaos --mode sensitivity --system " + g.string() + " --horizon 32",
      "verify --theorem prop33 --system " + g.string(),
  };
  for (const auto& c : cmds) {
    const Run a = mtv(c), b = mtv(c);
    REQUIRE(a.code == b.code);
    REQUIRE(a.out == b.out);
  }
  const fs::path d1 = scratch() / "det1", d2 = scratch() / "det2";
  REQUIRE(mtv("verify --theorem thm42 --corpus maps3 --all-cases --out " + d1.string()).code == 0);
  REQUIRE(mtv("verify --theorem thm42 --corpus maps3 --all-cases --out " + d2.string()).code == 0);
  CHECK(read(d1 / "report.json") == read(d2 / "report.json"));
  CHECK(read(d1 / "summary.csv") == read(d2 / "summary.csv"));
}
