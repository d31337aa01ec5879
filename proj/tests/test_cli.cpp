#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
  static fs::path dir = [] {
    auto d = fs::temp_directory_path() / "siegel-cli-test";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args) {
  std::string cmd = std::string(SIEGEL_GAP_BIN) + " " + args + " > /dev/null 2>&1";
  int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// small sieve keeps every invocation fast
const std::string kFast = " --sieve-limit 200000 ";

}  // namespace

TEST_CASE("exit-code contract") {
  // pass
  CHECK(run("verify 7 --q 5 --r 7 --t 7 --primes 200" + kFast) == 0);
  CHECK(run("verify 8 --y 2 --b 2" + kFast) == 0);
  CHECK(run("theorem bound --q 1000003 --c1 3") == 0);

  // usage errors
  CHECK(run("") == 64);
  CHECK(run("verify") == 64);
  CHECK(run("verify 4" + kFast) == 64);           // not a checkable lemma id
  CHECK(run("verify 7 --no-such-flag 1") == 64);
  CHECK(run("verify 7 --q 6 --r 1 --t 1" + kFast) == 64);  // 6 is not fundamental
  CHECK(run("theorem contour --d 5 --beta 1.5 --y 100" + kFast) == 64);

  // resource guard
  CHECK(run("theorem aggregate --d 5 --beta 0.9 --R 50 --y 50000 --work-limit 10" +
            kFast) == 65);

  // scans always exit 0
  CHECK(run("scan lemma1 --tmax 20 --samples 41") == 0);
  CHECK(run("scan lemma4 --d 5 --vmax 10 --samples 11") == 0);
}

TEST_CASE("verify 3 prints the exact small case") {
  auto out = work_dir() / "lemma3.json";
  run("verify 3 --R 10 --output " + out.string() + kFast);
  auto text = slurp(out);
  CHECK(text.find("\"47/35\"") != std::string::npos);
  CHECK(text.find("\"schema\": \"siegel-gap/1\"") != std::string::npos);
}

TEST_CASE("byte-identical reports across runs") {
  for (std::string args :
       {std::string("verify 7 --q 5 --r 7 --t 7 --primes 200"),
        std::string("verify 8 --y 10 --b 2 --tol 1e-7"),
        std::string("theorem contour --d 5 --beta 0.9 --y 100 --V 100"),
        std::string("theorem aggregate --d 5 --beta 0.9 --R 20 --y 2000 --threads 3"),
        std::string("theorem bound --q 1000003")}) {
    auto f1 = work_dir() / "run1.json";
    auto f2 = work_dir() / "run2.json";
    REQUIRE(run(args + kFast + "--output " + f1.string()) == 0);
    REQUIRE(run(args + kFast + "--output " + f2.string()) == 0);
    auto s1 = slurp(f1);
    REQUIRE(!s1.empty());
    CHECK(s1 == slurp(f2));
  }
}

TEST_CASE("csv output for aggregate runs") {
  auto out = work_dir() / "agg.csv";
  REQUIRE(run("theorem aggregate --d 5 --beta 0.9 --R 20 --y 2000 --format csv "
              "--output " +
              out.string() + kFast) == 0);
  auto text = slurp(out);
  CHECK(text.rfind("q,d,beta,R,y,lhs,lower_bound,rhs_main,defect\n", 0) == 0);
  CHECK(text.find("\n5,5,0.9") != std::string::npos);
}

TEST_CASE("pretty output renders plain key-value lines") {
  auto out = work_dir() / "bound.txt";
  REQUIRE(run("theorem bound --q 1000003 --format pretty --output " +
              out.string()) == 0);
  auto text = slurp(out);
  CHECK(text.find("measured.beta_bound = ") != std::string::npos);
  CHECK(text.find('{') == std::string::npos);
}
