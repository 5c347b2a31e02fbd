#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "cantor/serialization.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_bin;
fs::path g_dir;

int run(const std::string& args) {
    std::string cmd = g_bin + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string path(const std::string& name) { return (g_dir / name).string(); }

cantor::Json read_json(const std::string& p) { return cantor::Json::parse(cantor::read_file(p)); }

}  // namespace

TEST_CASE("build writes canonical set files") {
    std::string out = path("mg.json");
    CHECK(run("build --name middle_gap --params '{\"s\":\"1/2\",\"levels\":10}' --out " + out) == 0);
    cantor::Json mg = read_json(out);
    CHECK(mg["schema"] == cantor::kSchemaId);
    CHECK(mg["gaps"].size() == 1023);

    CHECK(run("build --name dio_gapset --params "
              "'{\"d\":3,\"q0\":2,\"q_max\":2,\"range\":[\"0/1\",\"1/1\"]}' --out " +
              path("dio.json")) == 0);
    CHECK(read_json(path("dio.json"))["gaps"].size() == 3);

    CHECK(run("build --name middle_gap --params '{\"s\":\"1/2\",\"levels\":0}' --out " +
              path("empty.json")) == 0);
    CHECK(read_json(path("empty.json"))["gaps"].empty());

    CHECK(run("build --name no_such --params '{}' --out " + path("x.json")) == 10);
}

TEST_CASE("build is idempotent for deterministic constructions") {
    std::string a = path("rep_a.json"), b = path("rep_b.json");
    std::string params = "'{\"p\":\"4/5\",\"i_lo\":2,\"i_hi\":2,\"seed\":42}'";
    CHECK(run("build --name random_kp --params " + params + " --out " + a) == 0);
    CHECK(run("build --name random_kp --params " + params + " --out " + b) == 0);
    CHECK(cantor::read_file(a) == cantor::read_file(b));
}

TEST_CASE("analyze reports and the uncertifiable exit code") {
    std::string mg = path("mg.json");
    std::string rep = path("analyze.json");
    CHECK(run("analyze --set " + mg + " --p-estimate --cp 1/1 --out " + rep) == 0);
    cantor::Json r = read_json(rep);
    CHECK(r["p_estimate"]["inconclusive"] == false);
    // The estimate brackets the known exponent 1/2.
    using cantor::Rational;
    CHECK(Rational::from_string(r["p_estimate"]["lo"].get<std::string>()) <= Rational(1, 2));
    CHECK(Rational(1, 2) <= Rational::from_string(r["p_estimate"]["hi"].get<std::string>()));
    // Total gap length through level 10 is 1 - 2^-10.
    CHECK(r["cp"]["partial_sums"].back()[1] == "1023/1024");

    // Empty set: zero estimates, inconclusive series verdict.
    CHECK(run("analyze --set " + path("empty.json") + " --p-estimate --cp 1/2 --out " +
              path("empty_rep.json")) == 0);
    cantor::Json er = read_json(path("empty_rep.json"));
    CHECK(er["p_estimate"]["lo"] == "0/1");
    CHECK(er["p_estimate"]["hi"] == "0/1");
    CHECK(er["p_estimate"]["inconclusive"] == true);
    CHECK(er["cp"]["verdict"] == "inconclusive");

    CHECK(run("analyze --set " + mg + " --ck --out " + path("bad.json")) == 3);
    CHECK(read_json(path("bad.json"))["ck"] == "uncertifiable");

    CHECK(run("build --name digit_cantor --params '{\"base\":16,\"digits\":[0,8]}' --out " +
              path("k16.json")) == 0);
    CHECK(run("analyze --set " + path("k16.json") + " --dim --ck --out " + path("kk.json")) == 0);
    CHECK(read_json(path("kk.json"))["dimension"]["exact"] == "1/4");
}

TEST_CASE("nest exit codes encode the verdict") {
    std::string k = path("k16.json"), mg = path("mg.json"), rep = path("nest.json");
    // Scaled flagship instance certifies; lambda = 1 violates (estim1).
    CHECK(run("nest --k " + k + " --ktilde " + mg + " --depth 6 --lambda 1/64 --out " + rep) == 0);
    cantor::Json r = read_json(rep);
    CHECK(r["verdict"] == "certified-positive");
    CHECK(r["tail_incomplete"] == true);

    CHECK(run("nest --k " + k + " --ktilde " + mg + " --depth 4 --lambda 15/8 --out " +
              path("nest1.json")) == 1);
    CHECK(read_json(path("nest1.json"))["verdict"] == "certified-violation");

    // K wider than K-tilde: indeterminate.
    CHECK(run("nest --k " + k + " --ktilde " + mg + " --depth 2 --lambda 8/1 --out " +
              path("nest2.json")) == 2);
    CHECK(read_json(path("nest2.json"))["verdict"] == "indeterminate");
}

TEST_CASE("nest reports are byte-identical across reruns and emit CSV") {
    std::string k = path("k16.json"), mg = path("mg.json");
    std::string a = path("na.json"), b = path("nb.json");
    std::string common = " --ktilde " + mg + " --depth 5 --lambda 1/64 --csv " + path("nest");
    CHECK(run("nest --k " + k + common + " --out " + a) == 0);
    CHECK(run("nest --k " + k + common + " --out " + b) == 0);
    CHECK(cantor::read_file(a) == cantor::read_file(b));
    CHECK(fs::exists(path("nest_inner.csv")));
    CHECK(cantor::read_file(path("nest_outer.csv")).starts_with("lo,hi\n"));
}

TEST_CASE("config files supply defaults and flags win") {
    std::string cfg = path("comb.ini");
    cantor::write_file_atomic(cfg, "[comb]\nmax-k=10\ncard-n=0\n");
    CHECK(run("--config " + cfg + " comb --out " + path("cfg1.json")) == 0);
    CHECK(read_json(path("cfg1.json"))["counts"].size() == 11);
    // Flag beats the file value.
    CHECK(run("--config " + cfg + " comb --max-k 6 --out " + path("cfg2.json")) == 0);
    CHECK(read_json(path("cfg2.json"))["counts"].size() == 7);
}

TEST_CASE("scan, dio, comb and random-ce emit summaries") {
    CHECK(run("build --name digit_cantor --params "
              "'{\"base\":16,\"digits\":[0,8],\"scale\":\"15/8\"}' --out " +
              path("unit.json")) == 0);
    CHECK(run("scan --k " + path("unit.json") + " --ktilde " + path("mg.json") +
              " --grid 1/2,1/16,1/1024 --depth 4 --csv " + path("scan.csv") + " --out " +
              path("scan.json")) == 0);
    cantor::Json scan = read_json(path("scan.json"));
    CHECK(scan["rows"].size() == 3);
    CHECK(scan["largest_positive_lambda"] == "1/1024");

    CHECK(run("dio --d 8 --s 1/5 --m 1/1 --ck 1/1 --q0 2 --q0-max 8 --csv " + path("dio.csv") +
              " --out " + path("dio_rep.json")) == 0);
    cantor::Json dio = read_json(path("dio_rep.json"));
    CHECK(dio["rows"].size() == 7);
    CHECK(dio["q0_within_1_100_of_2M"].get<long>() > 0);

    CHECK(run("comb --max-k 14 --card-n 8 --m 3 --delta 1/3 --csv " + path("comb.csv") +
              " --out " + path("comb.json")) == 0);
    cantor::Json comb = read_json(path("comb.json"));
    CHECK(comb["dp_matches_enumeration_to_14"] == true);
    CHECK(comb["below_2_pow_k"] == true);
    CHECK(comb["card_E"]["bound_holds"] == true);

    CHECK(run("random-ce --p 4/5 --k " + path("k16.json") +
              " --seed 1 --seeds 3 --i0 2 --i1 3 --depth 2 --out " + path("rce.json")) == 0);
    CHECK(read_json(path("rce.json"))["mean_non_increasing"] == true);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <path-to-cantor-nest>\n");
        return 2;
    }
    g_bin = argv[1];
    g_dir = fs::temp_directory_path() / "cantor_cli_test";
    fs::remove_all(g_dir);
    fs::create_directories(g_dir);

    doctest::Context ctx;
    ctx.applyCommandLine(1, argv);
    int rc = ctx.run();
    fs::remove_all(g_dir);
    return rc;
}
