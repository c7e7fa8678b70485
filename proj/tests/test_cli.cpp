#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "planarhost/host.hpp"
#include "planarhost/textio.hpp"

using namespace planarhost;

namespace {

struct RunResult {
  int status = -1;
  std::string output;
};

std::string tmpdir() {
  static std::string d = [] {
    char tmpl[] = "/tmp/ph_cli_XXXXXX";
    REQUIRE(mkdtemp(tmpl) != nullptr);
    return std::string(tmpl);
  }();
  return d;
}

RunResult run(const std::string& args) {
  std::string log = tmpdir() + "/run.log";
  std::string cmd = std::string(CLI_BIN) + " " + args + " >" + log + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.status = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << body;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("demo runs clean") {
  auto r = run("demo");
  CHECK(r.status == 0);
  CHECK(r.output.find("triangle embedded at host level 4") !=
        std::string::npos);
  CHECK(r.output.find("verifier: clean") != std::string::npos);
}

TEST_CASE("host build writes a parseable host file") {
  std::string out = tmpdir() + "/h2.txt";
  auto r = run("host build --level 2 --out " + out);
  CHECK(r.status == 0);
  std::ifstream in(out);
  auto h = host::parse_host(in);
  CHECK(h.level == 2);
  CHECK(h.registry.size() == 2);
  CHECK(h.registry[1].size() == 2);
  CHECK(core::euler_validate(h.map));
}

TEST_CASE("block dot export is deterministic and classed") {
  std::string d1 = tmpdir() + "/m2a.dot", d2 = tmpdir() + "/m2b.dot";
  CHECK(run("host block --n 2 --dot " + d1).status == 0);
  CHECK(run("host block --n 2 --dot " + d2).status == 0);
  std::string body = slurp(d1);
  CHECK(body == slurp(d2));
  CHECK(body.find("class=\"centre\"") != std::string::npos);
  CHECK(body.find("class=\"spoke\"") != std::string::npos);
  CHECK(body.find("class=\"perimeter\"") != std::string::npos);
  CHECK(body.find("class=\"boundary\"") != std::string::npos);
}

TEST_CASE("wedge permute output passes the standalone verifier") {
  std::string emb = tmpdir() + "/w.emb", strip = tmpdir() + "/w_host.txt";
  auto r = run("wedge permute --k 3 --perm 2,0,3,1 --out " + emb +
               " --host-out " + strip);
  CHECK(r.status == 0);

  std::string guest = tmpdir() + "/w_guest.txt";
  std::string body;
  for (int i = 0; i <= 3; ++i) {
    body += "v s" + std::to_string(i) + "\nv t" + std::to_string(i) + "\n";
    body += "e s" + std::to_string(i) + " t" + std::to_string(i) + "\n";
  }
  write_file(guest, body);
  auto v = run("verify --guest " + guest + " --host " + strip + " --emb " + emb);
  CHECK(v.status == 0);
  CHECK(v.output.find("OK") != std::string::npos);
}

TEST_CASE("embed round-trips through the files and verify") {
  std::string g = tmpdir() + "/g.txt";
  write_file(g, "v a\nv b\nv c\nv d\ne a b\ne b c\ne c d\ne d a\ne a c\n");
  std::string emb = tmpdir() + "/g.emb", hostf = tmpdir() + "/g_host.txt";
  auto r = run("embed --graph " + g + " --find-rotation --out " + emb +
               " --host-out " + hostf);
  CHECK(r.status == 0);
  CHECK(r.output.find("embedded at host level") != std::string::npos);

  auto v = run("verify --guest " + g + " --host " + hostf + " --emb " + emb);
  CHECK(v.status == 0);

  // corrupting a path must be detected with a failing exit code
  std::string bad = tmpdir() + "/bad.emb";
  std::string body = slurp(emb);
  auto pos = body.find("path ");
  REQUIRE(pos != std::string::npos);
  auto line_end = body.find('\n', pos);
  auto comma = body.rfind(',', line_end);
  REQUIRE(comma != std::string::npos);
  body = body.substr(0, body.find(':', pos) + 1) + " h0:r.0\n" +
         body.substr(line_end + 1);
  write_file(bad, body);
  auto vb = run("verify --guest " + g + " --host " + hostf + " --emb " + bad);
  CHECK(vb.status == 1);
  CHECK(vb.output.find("FAILED") != std::string::npos);
}

TEST_CASE("embed without a rotation system refuses politely") {
  std::string g = tmpdir() + "/norot.txt";
  write_file(g, "v a\nv b\ne a b\n");
  auto r = run("embed --graph " + g);
  CHECK(r.status == 2);
  CHECK(r.output.find("no rotation system") != std::string::npos);
}

TEST_CASE("embed accepts an explicit rotation file") {
  std::string g = tmpdir() + "/tri.txt";
  write_file(g, "v a\nv b\nv c\ne a b\ne b c\ne a c\n");
  std::string rot = tmpdir() + "/tri_rot.txt";
  write_file(rot,
             "v a\nv b\nv c\ne a b\ne b c\ne a c\n"
             "r a: b,c\nr b: c,a\nr c: a,b\n");
  std::string emb = tmpdir() + "/tri.emb";
  auto r = run("embed --graph " + g + " --rotation " + rot + " --out " + emb);
  CHECK(r.status == 0);
  CHECK(slurp(emb).find("map a ") != std::string::npos);
}

TEST_CASE("outdir redirects relative outputs") {
  std::string od = tmpdir() + "/outs";
  REQUIRE(run("demo").status == 0);  // warm-up; also ensures binary exists
  std::string cmd = "--outdir " + od + " mesh build --m 4 --n 4 --out mm.txt";
  // fails while the directory is missing, succeeds once it exists
  CHECK(run(cmd).status == 2);
  REQUIRE(std::system(("mkdir -p " + od).c_str()) == 0);
  CHECK(run(cmd).status == 0);
  CHECK(slurp(od + "/mm.txt").find("mesh 4 4") != std::string::npos);
}
