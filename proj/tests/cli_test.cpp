#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "fermatci/curves.hpp"
#include "fermatci/errors.hpp"
#include "fermatci_app/grid.hpp"
#include "fermatci_app/job.hpp"
#include "fermatci_app/report.hpp"
#include "fermatci_app/runner.hpp"

using namespace fermatci;
using namespace fermatci::app;

namespace {

const char* kHypersurface = R"(prime = 2
e = 1
N = 2
r = 1
params = s0 s1 s2
coeff[1] = s0 s1 s2
)";

const char* kTwoQuadrics = R"(# two quadrics
prime = 2
e = 1
N = 3
r = 2
params = s0 s1 s2 s3 t0 t1 t2 t3
coeff[1] = s0 s1 s2 s3
coeff[2] = t0 t1 t2 t3
commands = chain invariants genus-change
)";

const char* kCubic = R"(prime = 3
e = 1
N = 2
r = 1
params = s t
coeff[1] = s, t, 1
homogenize = true
)";

const char* kProjective = R"(prime = 5
e = 1
N = 3
r = 0
params = s
)";

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run_cli(const std::string& args) {
  const std::string cmd = std::string(FERMATCI_EXE) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) o.out.append(buf.data(), n);
  int status = pclose(pipe);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

std::string write_temp(const std::string& name, const std::string& text) {
  const std::string path = std::string(FERMATCI_TEST_TMP) + "/" + name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("parse a minimal hypersurface job") {
  JobSpec job = parse_job(kHypersurface);
  CHECK(job.prime == 2);
  CHECK(job.e == 1u);
  CHECK(job.N == 2u);
  CHECK(job.r == 1u);
  CHECK(job.params == std::vector<std::string>{"s0", "s1", "s2"});
  REQUIRE(job.coeffs.size() == 1);
  CHECK(job.coeffs[0].size() == 3);
  CHECK(job.commands.empty());
}

TEST_CASE("parse two quadrics with commands") {
  JobSpec job = parse_job(kTwoQuadrics);
  CHECK(job.params.size() == 8);
  CHECK(job.coeffs.size() == 2);
  CHECK(job.commands == std::vector<Command>{Command::Chain, Command::Invariants, Command::GenusChange});
}

TEST_CASE("job parse errors carry positions") {
  try {
    parse_job("prime = 2\ne = 1\nN = 2\nr = 1\nparams = s t\ncoeff[1] = s t u\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 6);
    CHECK(e.column() == 16);
    CHECK(e.message().find("unknown identifier 'u'") != std::string::npos);
  }
  auto fails = [](const std::string& text) {
    try {
      parse_job(text);
    } catch (const ParseError&) {
      return true;
    }
    return false;
  };
  CHECK(fails("prime = 4\n"));
  CHECK(fails("e = 1\n"));
  CHECK(fails("prime = 2\ncolour = red\n"));
  CHECK(fails("prime = 2\nprime = 3\n"));
  CHECK(fails("prime = 2\ne = 1\nN = 2\nr = 1\nparams = s t\ncoeff[1] = s t\n"));
  CHECK(fails("prime = 2\ne = 1\nN = 2\nr = 1\nparams = s t\n"));
  CHECK(fails("prime = 2\ne = 1\nN = 2\nr = 2\nparams = s t\n"));
  CHECK(fails("prime = 2\ne = 1\nN = 2\nr = 1\nparams = s s\ncoeff[1] = s s s\n"));
  CHECK(fails("prime = 2\ne = 1\nN = 2\nr = 1\nparams = s t u\ncoeff[1] = s t u\ncommands = fly\n"));
  CHECK(fails("prime = 2\nparams = s t\nconic = s t 1\n"));
  CHECK(fails("prime 2\n"));
}

TEST_CASE("command names round-trip") {
  for (Command c : all_commands()) CHECK(parse_command(to_string(c)) == c);
  CHECK_FALSE(parse_command("report").has_value());
}

TEST_CASE("run on two quadrics") {
  Report rep = run(parse_job(kTwoQuadrics));
  CHECK(rep.status == Status::Pass);
  const Json& res = rep.json["results"];
  CHECK(res["invariants"]["epsilon"] == 2);
  CHECK(res["invariants"]["gamma"]["exact"] == 2);
  CHECK(res["invariants"]["ell"] == 1);
  CHECK(res["invariants"]["m"] == 1);
  CHECK(res["genus-change"]["sum_deg"] == "2");
  CHECK(res["genus-change"]["consistent"] == true);
  CHECK(rep.json["schema"] == kSchemaVersion);
  CHECK(rep.json["pass"] == true);
}

TEST_CASE("run on the plane cubic") {
  Report rep = run(parse_job(kCubic));
  CHECK(rep.status == Status::Pass);
  const Json& inv = rep.json["results"]["invariants"];
  CHECK(inv["epsilon"] == 1);
  CHECK(inv["gamma"]["exact"] == 1);
  CHECK(inv["ell"] == 1);
  CHECK(inv["m"] == 1);
  CHECK(rep.json["results"]["genus-change"]["sum_deg"] == "1");
  CHECK(rep.json["results"]["bounds"]["genus_one_table"]["pass"] == true);
}

TEST_CASE("projective space gives a trivial report") {
  Report rep = run(parse_job(kProjective));
  CHECK(rep.status == Status::Pass);
  const Json& inv = rep.json["results"]["invariants"];
  CHECK(inv["epsilon"] == 0);
  CHECK(inv["gamma"]["lower"] == 0);
  CHECK(inv["ell"] == 0);
  CHECK(inv["m"] == 0);
  CHECK(rep.json["results"]["chain"]["steps"].empty());
}

TEST_CASE("dependencies are planned first") {
  JobSpec job = parse_job(kTwoQuadrics);
  RunOptions only;
  only.command = Command::GenusChange;
  CHECK(planned_commands(job, only) ==
        std::vector<Command>{Command::Validate, Command::Chain, Command::Invariants, Command::GenusChange});
  Report rep = run(job, only);
  CHECK(rep.json["results"].contains("genus-change"));
  CHECK_FALSE(rep.json["results"].contains("bounds"));
}

TEST_CASE("invalid coefficients fail the certificate") {
  Report rep = run(parse_job("prime = 2\ne = 1\nN = 2\nr = 1\nparams = s t\ncoeff[1] = s s t\n"));
  CHECK(rep.status == Status::CertificateFailure);
  CHECK(rep.json["results"]["validate"]["valid"] == false);
  CHECK(rep.json["results"]["chain"]["status"] == "skipped");
  CHECK(exit_code(rep.status) == 1);
}

TEST_CASE("genus change on a surface is not applicable") {
  JobSpec job = generic_job(2, 1, 4, 2);
  RunOptions only;
  only.command = Command::GenusChange;
  Report rep = run(job, only);
  CHECK(rep.json["results"]["genus-change"]["status"] == "not-applicable");
  CHECK(rep.status == Status::Pass);
}

TEST_CASE("reports are deterministic and JSON round-trips") {
  for (const char* text : {kHypersurface, kTwoQuadrics, kCubic, kProjective}) {
    const std::string a = render_json(run(parse_job(text)).json);
    const std::string b = render_json(run(parse_job(text)).json);
    CHECK(a == b);
    CHECK(render_json(Json::parse(a)) == a);
    CHECK(render_text(run(parse_job(text)).json) == render_text(Json::parse(a)));
  }
}

TEST_CASE("rational rendering") {
  CHECK(rational_string(BigRational(4, 6)) == "2/3");
  CHECK(rational_string(BigRational(-3)) == "-3");
  CHECK(big_json(BigInt(1) << 70) == "1180591620717411303424");
  CHECK(big_json(BigInt(-5)) == -5);
}

TEST_CASE("grid runs merge in input order") {
  auto entries = generic_grid({2, 3}, {1}, 3);
  REQUIRE(entries.size() == 6);
  Report one = run_grid(entries, {}, 1);
  Report many = run_grid(entries, {}, 4);
  CHECK(render_json(one.json) == render_json(many.json));
  CHECK(one.json["summary"]["jobs"] == 6);
  CHECK(one.json["summary"]["passed"] == 6);
  CHECK(one.json["grid"][0]["label"] == entries[0].label);

  auto parsed = parse_grid("# comment\ngeneric 2 1 2 1\n\ngeneric 3 2 3 1\n");
  REQUIRE(parsed.size() == 2);
  CHECK(parsed[1].p == 3);
  CHECK(parsed[1].e == 2);
  CHECK_THROWS_AS(parse_grid("generic 2 1 2\n"), ParseError);
}

TEST_CASE("command-line exit codes") {
  const std::string ok = write_temp("ok.job", kTwoQuadrics);
  Outcome pass = run_cli("report --input " + ok + " --format json");
  CHECK(pass.code == 0);
  CHECK(Json::parse(pass.out)["pass"] == true);

  Outcome text = run_cli("invariants --input " + ok);
  CHECK(text.code == 0);
  CHECK(text.out.find("epsilon: 2") != std::string::npos);

  const std::string bad = write_temp("bad.job", "prime = 2\ne = 1\nN = 2\nr = 1\nparams = s t\ncoeff[1] = s s t\n");
  CHECK(run_cli("validate --input " + bad).code == 1);

  const std::string broken = write_temp("broken.job", "prime = 2\ne = 1\nN = 2\nr = 1\nparams = s t\ncoeff[1] = s t u\n");
  Outcome in = run_cli("report --input " + broken + " --format json");
  CHECK(in.code == 2);
  CHECK(Json::parse(in.out)["status"] == "input-error");

  CHECK(run_cli("report --input /nonexistent/file.job").code == 2);
  CHECK(run_cli("bogus --input " + ok).code == 2);
  CHECK(run_cli("report").code == 2);

  const std::string grid = write_temp("g.txt", "generic 2 1 2 1\nok.job\n");
  Outcome g1 = run_cli("report --grid " + grid + " --format json --threads 2");
  Outcome g2 = run_cli("report --grid " + grid + " --format json --threads 1");
  CHECK(g1.code == 0);
  CHECK(g1.out == g2.out);
}
