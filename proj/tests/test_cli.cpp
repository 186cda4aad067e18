#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string cli = NULLMODEL_CLI_PATH;
const fs::path data = NULLMODEL_TEST_DATA;

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::current_path() / "cli_scratch";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " '" + cli + "' " + args + " >/dev/null 2>" + (scratch() / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file " << p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

} // namespace

TEST_CASE("annd and clustering golden files") {
  const auto out = scratch() / "out.csv";
  for (const std::string name : {"star", "toy"}) {
    CHECK(run("annd --input " + q(data / (name + ".tsv")) + " --out " + q(out)) == 0);
    CHECK(slurp(out) == slurp(data / (name + "_annd.csv")));
    CHECK(run("clustering --input " + q(data / (name + ".tsv")) + " --out " + q(out)) == 0);
    CHECK(slurp(out) == slurp(data / (name + "_clustering.csv")));
  }
}

TEST_CASE("ingest writes both curves and a summary") {
  const auto prefix = scratch() / "toy";
  CHECK(run("ingest --input " + q(data / "toy.tsv") + " --out-prefix " + q(prefix)) == 0);
  CHECK(slurp(prefix.string() + "_annd.csv") == slurp(data / "toy_annd.csv"));
  CHECK(slurp(prefix.string() + "_clustering.csv") == slurp(data / "toy_clustering.csv"));
  auto j = json::parse(slurp(prefix.string() + ".json"));
  CHECK(j["vertices"] == 4);
  CHECK(j["edges"] == 4);
  CHECK(j["max_degree"] == 3);
}

TEST_CASE("input errors map to the I/O exit code") {
  CHECK(run("annd --input " + q(data / "does_not_exist.tsv")) == 3);
  CHECK(run("annd --input " + q(data / "malformed.tsv")) == 3);
  CHECK(run("annd --input " + q(data / "star.tsv") + " --out /nonexistent/dir/x.csv") == 3);
  CHECK(run("annd --input " + q(data / "star.tsv") + " --eps 1.5") == 2);
  CHECK(run("annd --input " + q(data / "star.tsv") + " --eps wide") == 2);
  CHECK(run("annd") == 2);
  CHECK(run("frobnicate") == 2);
}

TEST_CASE("generate writes an edge list and sidecar, deterministically") {
  const auto a = scratch() / "g1.tsv";
  const auto b = scratch() / "g2.tsv";
  const std::string args = "generate --model ecm --n 1000 --tau 2.5 --seed 7 --out ";
  REQUIRE(run(args + q(a)) == 0);
  REQUIRE(run(args + q(b)) == 0);
  CHECK(slurp(a) == slurp(b));
  auto meta = json::parse(slurp(a.string() + ".json"));
  auto meta2 = json::parse(slurp(b.string() + ".json"));
  CHECK(meta == meta2);
  CHECK(meta["model"] == "ecm");
  CHECK(meta["seed"] == 7);
  CHECK(meta.contains("L_n"));
  CHECK(meta["L_n"].get<std::int64_t>() % 2 == 0);
  CHECK(meta["erased_degree_sum"].get<std::int64_t>() <= meta["L_n"].get<std::int64_t>());
  CHECK(!meta.contains("nu"));

  const auto h = scratch() / "h.tsv";
  REQUIRE(run("generate --model hrg --n 500 --tau 2.5 --nu 2 --seed 1 --out " + q(h)) == 0);
  auto hm = json::parse(slurp(h.string() + ".json"));
  CHECK(hm["nu"] == 2.0);
  CHECK(!hm.contains("L_n"));
}

TEST_CASE("generate rejects bad parameters") {
  const auto out = scratch() / "bad.tsv";
  CHECK(run("generate --model ecm --n 1000 --tau 3.2 --out " + q(out)) == 4);
  CHECK(run("generate --model ecm --n 1000 --tau 2.0 --out " + q(out)) == 4);
  CHECK(run("generate --model foo --n 1000 --tau 2.5 --out " + q(out)) == 2);
  CHECK(run("generate --model ecm --n 1000 --tau 2.5 --nu 2 --out " + q(out)) == 2);
  CHECK(run("generate --model irg --n 1000 --tau 2.5 --strategy quick --out " + q(out)) == 2);
  CHECK(run("generate --model hrg --n 1 --tau 2.5 --out " + q(out)) == 4);
}

TEST_CASE("auto eps honors the default occupancy") {
  const auto g = scratch() / "auto.tsv";
  const auto out = scratch() / "auto.csv";
  REQUIRE(run("generate --model ecm --n 20000 --tau 2.5 --seed 3 --out " + q(g)) == 0);
  REQUIRE(run("annd --input " + q(g) + " --eps auto --out " + q(out)) == 0);
  std::istringstream in(slurp(out));
  std::string line;
  std::getline(in, line);
  CHECK(line == "k,count,eps,value");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream f(line);
    std::string k, count, eps;
    std::getline(f, k, ',');
    std::getline(f, count, ',');
    std::getline(f, eps, ',');
    const double e = std::stod(eps);
    CHECK((std::stoll(count) >= 20 || e == 0.25));
    CHECK(e <= 0.25);
  }
  CHECK(rows > 10);
}

TEST_CASE("ensemble output and thread independence") {
  const auto cfg = data / "ensemble_small.json";
  auto run_with = [&](const std::string& tag, const std::string& extra, const std::string& env) {
    const auto a = scratch() / ("ens_annd_" + tag + ".csv");
    const auto c = scratch() / ("ens_cl_" + tag + ".csv");
    const auto s = scratch() / ("ens_sum_" + tag + ".json");
    REQUIRE(run("ensemble --config " + q(cfg) + " --out-annd " + q(a) + " --out-clustering " + q(c) + " --summary " +
                    q(s) + " " + extra,
                env) == 0);
    return slurp(a) + "\n--\n" + slurp(c) + "\n--\n" + slurp(s);
  };
  const auto one = run_with("t1", "--threads 1", "");
  const auto eight = run_with("t8", "--threads 8", "");
  const auto env = run_with("env", "", "NULLMODEL_THREADS=8");
  const auto again = run_with("again", "--threads 1", "NULLMODEL_THREADS=3");
  CHECK(one == eight);
  CHECK(one == env);
  CHECK(one == again);

  const auto annd = slurp(scratch() / "ens_annd_t1.csv");
  CHECK(annd.rfind("k,count,mean,median,q25,q75,std,pred_tail\n", 0) == 0);
  const auto cl = slurp(scratch() / "ens_cl_t1.csv");
  CHECK(cl.rfind("k,count,mean,median,q25,q75,std\n", 0) == 0);
  auto sum = json::parse(slurp(scratch() / "ens_sum_t1.json"));
  CHECK(sum["results"][0]["stat"] == "annd");
  CHECK(sum["results"][0].contains("fit"));

  // pred_tail = tail_constant * n^(3-tau) k^(tau-3), tail_constant(irg, 2.5) = 3.7124...
  std::istringstream in(annd);
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::vector<double> cols;
  std::istringstream f(line);
  for (std::string cell; std::getline(f, cell, ',');) cols.push_back(std::stod(cell));
  REQUIRE(cols.size() == 8);
  CHECK(cols[7] == doctest::Approx(3.7124 * std::sqrt(3000.0 / cols[0])).epsilon(1e-3));
}

TEST_CASE("ensemble with one realization: mean equals median") {
  const auto out = scratch() / "r1.csv";
  REQUIRE(run("ensemble --model hrg --n 2000 --tau 2.5 --realizations 1 --seed 9 --out-annd " + q(out)) == 0);
  std::istringstream in(slurp(out));
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::istringstream f(line);
    for (std::string cell; std::getline(f, cell, ',');) cols.push_back(cell);
    REQUIRE(cols.size() == 7);
    CHECK(cols[1] == "1");
    CHECK(cols[2] == cols[3]);
    ++rows;
  }
  CHECK(rows > 3);
}

TEST_CASE("ensemble config errors") {
  CHECK(run("ensemble --config " + q(data / "unknown_key.json")) == 2);
  CHECK(run("ensemble --config " + q(data / "ensemble_small.json") + " --realizations 0") == 2);
  CHECK(run("ensemble --model ecm --n 1000 --tau 2.5") == 2);
  CHECK(run("ensemble --config " + q(data / "missing.json")) == 3);
  // two statistics need two file paths
  CHECK(run("ensemble --model ecm --n 1000 --tau 2.5 -R 2 --stats annd clustering") == 2);
  CHECK(run("ensemble --model ecm --n 1000 --tau 2.5 -R 2 --threads 0") == 2);
  CHECK(run("ensemble --model ecm --n 1000 --tau 2.5 -R 2", "NULLMODEL_THREADS=lots") == 2);
  CHECK(run("ensemble --model ecm --n 1000 --tau 3.5 -R 2") == 4);
}

TEST_CASE("theory output") {
  const auto out = scratch() / "theory.json";
  REQUIRE(run("theory --model ecm --n 1e6 --tau 2.5 --out " + q(out)) == 0);
  auto j = json::parse(slurp(out));
  CHECK(j["threshold_k"] == 100.0);
  CHECK(j["cutoff_k"] == 10000.0);
  CHECK(j["tail_exponent"] == -0.5);
  CHECK(j["provenance"].contains("tail_constant"));
  CHECK(!j.contains("hrg_integral"));

  REQUIRE(run("theory --model irg --n 1e6 --tau 2.5 --c 1.5 --mu 2.6124 --out " + q(out)) == 0);
  j = json::parse(slurp(out));
  CHECK(j["tail_constant"].get<double>() == doctest::Approx(3.713).epsilon(1e-3));

  REQUIRE(run("theory --model hrg --n 1e6 --tau 2.5 --k 10 1000 --out " + q(out)) == 0);
  j = json::parse(slurp(out));
  CHECK(j["hrg_integral"]["tolerance"] == 1e-8);
  CHECK(j["hrg_integral"]["value"].get<double>() == doctest::Approx(3.3385).epsilon(1e-4));
  CHECK(j["curve"].size() == 2);
  CHECK(j["curve"][0]["regime"] == "plateau");
  CHECK(j["curve"][1]["regime"] == "tail");

  const auto again = scratch() / "theory2.json";
  REQUIRE(run("theory --model hrg --n 1e6 --tau 2.5 --k 10 1000 --out " + q(again)) == 0);
  CHECK(slurp(out) == slurp(again));

  CHECK(run("theory --model irg --n 1e6 --tau 3.5") == 4);
  CHECK(run("theory --model irg --n 1e6 --tau 2.5 --nu 2") == 2);
  CHECK(run("theory --model ecm --n 1e6 --tau 2.5 --k 1e7") == 4);
}
