#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Result {
  int code;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(ORDCALC_CLI) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (fgets(buf.data(), buf.size(), p)) out += buf.data();
  const int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_CASE("cmp") {
  CHECK(run("cmp --system poly 'O^(-2)' 'O^(-1)'").out == "LT\n");
  CHECK(run("cmp --system buchholz 0 0").out == "EQ\n");
  CHECK(run("cmp --system buchholz 'O_2' 'w^(0)'").out == "GT\n");
  CHECK(run("cmp --system poly 'O^(-2)' 'O^(-1)'").code == 0);
}

TEST_CASE("k prints sets") {
  CHECK(run("k --system poly --level 0 'th(O^(0))'").out == "{th(O^(0))}\n");
  CHECK(run("k --system poly --level 0 'th(O^(0) # O^(-1))'").out == "{}\n");
}

TEST_CASE("exit codes") {
  CHECK(run("cmp --system poly 'O^(' 0").code == 1);
  CHECK(run("cmp --nonsense").code == 1);
  CHECK(run("cmp --system nosuch 0 0").code == 1);
  CHECK(run("star --system buchholz 0").code == 1);
  CHECK(run("shift --system poly --level 0 --by 1 'th(O^(-1))'").code == 2);
  CHECK(run("d --system poly 'O^(0)' 0").code == 2);
}

TEST_CASE("sort is a nondecreasing permutation") {
  auto r = run("sort --system buchholz 'O_2' 0 'th_1(0)' 'w^(0)' 0");
  CHECK(r.code == 0);
  CHECK(r.out == "0\n0\nw^(0)\nth_1(0)\nO_2\n");
}

TEST_CASE("json and text agree") {
  auto text = run("cmp --system xi 'Xi^(0)(0)' 'Xi^(0)(w^(0))'").out;
  auto j = nlohmann::json::parse(run("cmp --system xi --json 'Xi^(0)(0)' 'Xi^(0)(w^(0))'").out);
  CHECK(j["result"].get<std::string>() + "\n" == text);

  auto ktext = run("k --system xi 'Xi^(-1)(0)'").out;
  auto kj = nlohmann::json::parse(run("k --system xi --json 'Xi^(-1)(0)'").out);
  REQUIRE(kj.size() == 1);
  CHECK("{" + kj[0].get<std::string>() + "}\n" == ktext);
}

TEST_CASE("other commands") {
  CHECK(run("parse --system mixed 'thXi(Xi^(-1)(0))'").out == "thXi(Xi^(-1)(0))\n");
  CHECK(run("star --system poly 'O^(-1) # O^(-2)'").out == "O^(-1) # O^(0)\n");
  CHECK(run("ground --system poly 'O^(-1) # O^(-2)'").out == "-2\n");
  CHECK(run("kappa --system xi 'Xi^(0)(w^(0)) # Xi^(0)(0)'").out == "w^(0)\n");
  CHECK(run("subst --system poly 'th(v.x^(-1))' x 'O^(0)'").out == "th(O^(-1))\n");
  CHECK(run("d --system buchholz --index 2 --m 1 0 0").out == "th_1(w^(O_1 # th_2(w^(O_2))))\n");
  CHECK(run("ll --system poly 0 0 'w^(0)'").out == "true\n");
  CHECK(run("enumerate --system buchholz --size 2").out == "0\nw^(0)\nO_1\nth_1(0)\n");
  CHECK(run("fc --system buchholz 'O_3 # O_2 # w^(O_1)'").out == "{1, 2, 3} max 3\n");
}

TEST_CASE("selfcheck on the fixture criterion") {
  auto r = run("selfcheck --criteria 1");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("PASS 1 ", 0) == 0);
  auto j = run("selfcheck --criteria 1 --json");
  CHECK(nlohmann::json::parse(j.out)["check"] == "fixtures");
}

TEST_CASE("seed from the environment") {
  auto a = run("selfcheck --criteria 10 --json --seed 5");
  auto b = run("selfcheck --criteria 10 --json");
  CHECK(a.code == 0);
  CHECK(nlohmann::json::parse(a.out.substr(0, a.out.find('\n')))["seed"] == 5);
  CHECK(nlohmann::json::parse(b.out.substr(0, b.out.find('\n')))["seed"] == 1);
}
