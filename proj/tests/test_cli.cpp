#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#ifndef MATGROW_CLI_PATH
#define MATGROW_CLI_PATH "matgrow"
#endif

namespace {

struct RunResult {
  int status;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + MATGROW_CLI_PATH + " " + args + " 2>&1";
  std::array<char, 512> buf;
  RunResult r{-1, ""};
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (fgets(buf.data(), buf.size(), p)) r.out += buf.data();
  int rc = pclose(p);
  r.status = WEXITSTATUS(rc);
  return r;
}

std::string tmp(const std::string& name) { return "/tmp/matgrow-cli-" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("construct writes a seven-column geometry file") {
    std::string path = tmp("fano.mtd");
    auto r = run("construct pg -n 3 -q 2 -o " + path);
    CHECK(r.status == 0);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string l1, l2, l3;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    CHECK(l1 == "matroid pg_3");
    CHECK(l2 == "type linear");
    CHECK(l3 == "q 2 rows 3 cols 7");
  }

  TEST_CASE("minor on geometry vs the 4-point line reports none") {
    run("construct pg -n 3 -q 2 -o " + tmp("fano.mtd"));
    run("construct uniform -n 2 -m 4 -o " + tmp("u24.mtd"));
    auto r = run("minor --host " + tmp("fano.mtd") + " --pattern " +
                 tmp("u24.mtd"));
    CHECK(r.status == 0);
    CHECK(r.out == "none\n");
    auto r2 = run("represent " + tmp("u24.mtd") + " -q 2");
    CHECK(r2.status == 0);
    CHECK(r2.out == "not-representable q=2\n");
  }

  TEST_CASE("growth over the binary class matches the formula") {
    std::string cls = tmp("binary.cls");
    {
      std::ofstream out(cls);
      out << "fields 2\n";
    }
    auto r = run("growth --class " + cls + " --rank 3");
    CHECK(r.status == 0);
    CHECK(r.out == "h(3)=7 formula=7 match\n");
    auto t = run("growth --class " + cls + " --rank 3 --table");
    CHECK(t.status == 0);
    CHECK(t.out ==
          "n h(n) formula match\n1 1 1 yes\n2 3 3 yes\n3 7 7 yes\n"
          "profile q=2 k=0 d=0 exact=true\n");
  }

  TEST_CASE("domain errors exit 1, budget exhaustion exits 2") {
    auto r = run("verify no-such-suite");
    CHECK(r.status == 1);
    auto r2 = run("minor --host /nonexistent --pattern /nonexistent");
    CHECK(r2.status == 1);
    // parse errors carry the position
    std::string broken = tmp("broken.mtd");
    {
      std::ofstream out(broken);
      out << "matroid broken\ntype linear\nq 2 rows 2 cols 2\n1 0\n0 x\n";
    }
    auto r4 = run("represent " + broken + " -q 2");
    CHECK(r4.status == 1);
    CHECK(r4.out.find(broken + ":") != std::string::npos);
    std::string cls = tmp("binary.cls");
    {
      std::ofstream out(cls);
      out << "fields 2\n";
    }
    auto r3 = run("kdsearch --class " + cls + " --rank 3 --kmax 1",
                  "MATGROW_BUDGET=1");
    CHECK(r3.status == 2);
  }

  TEST_CASE("outputs are byte-identical across runs") {
    auto a = run("construct ag -n 3 -q 2");
    auto b = run("construct ag -n 3 -q 2");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    auto v1 = run("verify flatpartition-3.1");
    auto v2 = run("verify flatpartition-3.1");
    CHECK(v1.out == v2.out);
    CHECK(v1.status == 0);
  }

  TEST_CASE("verify runs a fast suite end to end") {
    auto r = run("verify modsum");
    CHECK(r.status == 0);
    CHECK(r.out.substr(0, 11) == "pass modsum");
  }
}
