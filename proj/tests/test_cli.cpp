#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#ifndef DWPAP_CLI_PATH
#error "DWPAP_CLI_PATH must point at the command line binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(DWPAP_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

}  // namespace

TEST_CASE("version flag") {
  RunResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("json envelope carries the stable top-level keys") {
  RunResult r = run_cli("classify \"1+x^2\"");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"command", "inputs", "schedule", "results", "version"})
    CHECK(j.contains(key));
  CHECK(j["command"] == "classify");
  CHECK(j["version"] == "0.1.0");
  CHECK(j["results"]["polynomial"]["is_weight"] == true);
  CHECK(j["results"]["classes"]["w"]["verdict"] == "member");
  CHECK(j["results"]["classes"]["w_s"]["verdict"] == "member");
}

TEST_CASE("ratio analysis reports the limit value") {
  RunResult r = run_cli("theta --mu 1 --nu 1");
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["results"]["value"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(j["results"]["curve"]["verdict"]["kind"] == "converges");
}

TEST_CASE("csv output is the curve table") {
  RunResult r = run_cli("theta --mu 1 --nu 1 --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.rfind("T,R_re,R_im", 0) == 0);
  int lines = 0;
  for (char c : r.out)
    if (c == '\n') ++lines;
  CHECK(lines == 25);  // header + default 24 schedule points
}

TEST_CASE("input errors exit with code 2") {
  CHECK(run_cli("classify \"x^^2\"").exit_code == 2);
  CHECK(run_cli("dwmean --f no_such_function --mu 1 --nu 1").exit_code == 2);
  CHECK(run_cli("pap0 --f lorentz --mu 1 --nu 1 --kappa 1.5").exit_code == 2);
  CHECK(run_cli("theta --mu 1 --nu 1 --steps 0").exit_code == 2);
  CHECK(run_cli("compose-check --instance no_such_instance").exit_code == 2);
  CHECK(run_cli("no_such_command").exit_code == 2);
}

TEST_CASE("engine-side failures exit with code 3") {
  RunResult r = run_cli("theta --mu 1 --nu 1 --out /nonexistent_dir_zz/out.json");
  CHECK(r.exit_code == 3);
}

TEST_CASE("identical configuration produces byte-identical output") {
  std::string args = "verify-suite --steps 6 --seed 7";
  RunResult a = run_cli(args);
  RunResult b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK_FALSE(a.out.empty());

  RunResult c = run_cli("dwmean --f \"2+3*cos(1*t)\" --mu \"1+x^2\" --nu \"2+x^2\"");
  RunResult d = run_cli("dwmean --f \"2+3*cos(1*t)\" --mu \"1+x^2\" --nu \"2+x^2\"");
  REQUIRE(c.exit_code == 0);
  CHECK(c.out == d.out);
}

TEST_CASE("membership verdicts ride the exit-zero path whatever the verdict") {
  RunResult member = run_cli("pap0 --f lorentz --mu 1 --nu 1");
  REQUIRE(member.exit_code == 0);
  auto j = nlohmann::json::parse(member.out);
  CHECK(j["results"]["curve"]["verdict"]["kind"] == "converges-to-zero");

  // a function with a nonzero mean is not in the vanishing class; still exit 0
  RunResult non = run_cli("pap0 --f one --mu 1 --nu 1");
  CHECK(non.exit_code == 0);
}
