#include <doctest.h>

#include "cli_runner.hpp"

namespace {

cli::Result run(const std::string& args) { return cli::run(TEMPOASP_BIN, args); }

const std::string kData = TASP_DATA_DIR;

}  // namespace

TEST_CASE("every command is deterministic") {
  for (const auto& c : cli::command_matrix(kData)) {
    auto a = run(c);
    auto b = run(c);
    INFO(c);
    INFO(a.output);
    CHECK(a.status == b.status);
    CHECK(a.output == b.output);
    CHECK(a.status <= 1);
  }
}

TEST_CASE("documented outputs") {
  auto m = run("models --formula '(>* (~a -> > a))' --lambda 4");
  CHECK(m.status == 0);
  CHECK(m.output == "{} {a} {} {a}\n");
  auto t = run("translate '" + kData + "/program24.tlp' --to asp --lambda 2");
  CHECK(t.output == "a(0).\nb(1) :- a(0).\n:- not b(1).\n");
  auto e = run("equiv --strong --lmax 2 'w >! f' '(~f >* w)' --countermodel {out}/w.httrace");
  CHECK(e.status == 1);
  CHECK(e.output.rfind("not equivalent\n", 0) == 0);
  CHECK(e.output.find("== w.httrace") != std::string::npos);
  auto s = run("solve '" + kData + "/program24_l2.lp'");
  CHECK(s.output == "a(0) b(1)\n");
}

TEST_CASE("exit codes") {
  CHECK(run("models --formula '&false' --lambda 2").status == 1);
  CHECK(run("equiv 'a' 'b' --lmax 1").status == 1);
  CHECK(run("equiv 'a' 'a' --lmax 2").status == 0);
  CHECK(run("").status == 2);
  CHECK(run("frobnicate").status == 2);
  CHECK(run("eval 'a &' --trace '{a}'").status == 2);
  CHECK(run("models '" + kData + "/missing.tf' --lambda 1").status == 2);
  CHECK(run("--budget ht=2 models --formula 'a | b | c' --lambda 3").status == 3);
}
