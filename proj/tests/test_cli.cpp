#include "toricsym/io.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace toricsym;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the tool with stdout and stderr captured together.
Run run(const std::string& args) {
  static int counter = 0;
  auto tmp = std::filesystem::temp_directory_path() / ("toricsym_cli_" + std::to_string(::getpid()) + "_" +
                                                        std::to_string(counter++) + ".txt");
  std::string cmd = std::string("cd \"") + TORICSYM_TEST_DATA + "\" && \"" + TORICSYM_CLI + "\" " + args + " > \"" +
                    tmp.string() + "\" 2>&1";
  int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::filesystem::remove(tmp);
  return r;
}

bool has(const Run& r, const std::string& s) { return r.out.find(s) != std::string::npos; }

}  // namespace

TEST_CASE("check") {
  auto r = run("check dp6_n1.json s3.json");
  CHECK(r.code == 0);
  CHECK(has(r, "smooth: true"));
  CHECK(has(r, "invariant_picard_number: 1"));
  auto m = run("--format machine check dp6_n2.json s3.json");
  CHECK(m.code == 0);
  Json j = Json::parse(m.out);
  CHECK(j["class_group"]["free_rank"] == 4);
  CHECK(j["action"]["invariant_picard_number"] == 2);
  CHECK(run("check p3.json").code == 0);
  CHECK(run("check big.json").code == 0);
}

TEST_CASE("exit codes") {
  auto broken = run("--format machine check broken.json");
  CHECK(broken.code == 3);
  CHECK(has(broken, "incomplete"));
  CHECK(Json::parse(broken.out)["reason"] == "incomplete");
  CHECK(run("check float.json").code == 2);
  CHECK(run("check missing.json").code == 2);
  CHECK(run("check").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("verify-paper --only A99").code == 2);
  CHECK(run("families emit nosuch").code == 2);
  CHECK(run("families emit projective:0").code == 3);
  CHECK(run("mmp p3.json").code == 3);
  CHECK(run("orbits p2.json s3.json").code == 2);
  CHECK(run("star bad_witness.json").code == 1);
  CHECK(run("star 'Q(sqrt5)'").code == 0);
  CHECK(run("star nowhere").code == 2);
}

TEST_CASE("mmp") {
  auto r = run("--format machine mmp dp6_n2.json s3.json --explore-all");
  REQUIRE(r.code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["traces"].size() == 2);
  for (const auto& t : j["traces"]) CHECK(t["label"] == "P2");
  auto q = run("--format machine mmp dp6_n1.json s3_tau.json");
  REQUIRE(q.code == 0);
  Json jq = Json::parse(q.out);
  CHECK(jq["group_order"] == 12);
  CHECK(jq["traces"][0]["label"] == "DP6Terminal");
}

TEST_CASE("families, enumerate, verify") {
  auto list = run("families list");
  CHECK(list.code == 0);
  CHECK(has(list, "bundle-p3"));
  auto emit = run("families emit dp6:n1");
  REQUIRE(emit.code == 0);
  Fan f = fan_from_json(Json::parse(emit.out));
  CHECK(fan_isomorphism(f, fan_from_json(read_json_file(std::string(TORICSYM_TEST_DATA) + "/dp6_n1.json"))));
  auto act = run("families emit q22:n1 --action");
  REQUIRE(act.code == 0);
  CHECK(Json::parse(act.out).contains("galois"));
  auto en = run("--format machine enumerate --lattice N2 --max-rays 3 --smooth");
  REQUIRE(en.code == 0);
  CHECK(Json::parse(en.out)["count"] == 1);
  auto v = run("verify-paper --only A4");
  CHECK(v.code == 0);
  CHECK(has(v, "A4"));
  CHECK(has(v, "PASS"));
}
