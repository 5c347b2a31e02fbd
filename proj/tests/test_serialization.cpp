#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>

#include "cantor/constructions.hpp"
#include "cantor/serialization.hpp"
#include "test_util.hpp"

using namespace cantor;
using cantor::testutil::R;
using cantor::testutil::U;

TEST_CASE("scalar round trips") {
    Rational r(-22, 7);
    CHECK(rational_from_json(rational_to_json(r)) == r);
    CHECK(rational_from_json(Json(5)) == R(5));
    CHECK_THROWS(rational_from_json(Json(true)));

    Interval iv(R(1, 3), R(2), false, true);
    CHECK(interval_from_json(interval_to_json(iv)) == iv);

    IntervalUnion u = U({Interval::open(R(0), R(1)), Interval::closed(R(2), R(3))});
    CHECK(union_from_json(union_to_json(u)) == u);
}

TEST_CASE("gap set exchange format") {
    GapCantor gc = middle_gap(R(1, 2), 4);
    Json j = gap_set_to_json(gc, GapBudget::all());
    CHECK(j["schema"] == kSchemaId);
    CHECK(j["kind"] == "gap");
    CHECK(j["gaps"].size() == 15);
    CHECK(j["truncated"] == true);
    CHECK(j["meta"]["name"] == "middle_gap");

    GapCantor back = gap_set_from_json(j);
    CHECK(back.ambient() == gc.ambient());
    CHECK(back.normalized_gaps(GapBudget::all()) == gc.normalized_gaps(GapBudget::all()));
    CHECK(back.truncated());
}

TEST_CASE("digit spec exchange format") {
    DigitCantorSpec spec(16, {0, 8}, R(1, 64), R(3));
    Json j = digit_spec_to_json(spec);
    DigitCantorSpec back = digit_spec_from_json(j);
    CHECK(back.base() == 16);
    CHECK(back.digits() == std::vector<unsigned>{0, 8});
    CHECK(back.scale() == R(1, 64));
    CHECK(back.translate() == R(3));
    CHECK(back.hull() == spec.hull());

    LoadedSet loaded = set_from_json(j);
    REQUIRE(loaded.spec.has_value());
    CHECK(loaded.spec->diameter() == spec.diameter());
}

TEST_CASE("cover exchange format") {
    CoverApprox c = cf_cantor(2, 3);
    Json j = cover_to_json(c);
    CoverApprox back = cover_from_json(j);
    CHECK(back.depth == 3);
    CHECK(back.cover == c.cover);
}

TEST_CASE("registry builds every advertised construction") {
    for (const std::string& name : construction_names()) {
        CHECK_NOTHROW(construction_schema(name));
    }
    LoadedSet mg = build_construction("middle_gap", Json{{"s", "1/2"}, {"levels", 3}});
    REQUIRE(mg.gaps.has_value());
    CHECK(mg.gaps->gap_count(GapBudget::all()) == 7);

    LoadedSet dio = build_construction(
        "dio_gapset", Json{{"d", 3}, {"q0", 2}, {"q_max", 2}, {"range", Json::array({"0/1", "1/1"})}});
    REQUIRE(dio.gaps.has_value());
    CHECK(dio.gaps->gap_count(GapBudget::all()) == 3);

    LoadedSet spec = build_construction(
        "digit_cantor", Json{{"base", 10}, {"digits", Json::array({0, 2, 4, 6, 8})}, {"scale", "1/10"}});
    REQUIRE(spec.spec.has_value());
    CHECK(spec.spec->diameter() == R(8, 90));

    LoadedSet rnd = build_construction("random_kp",
                                       Json{{"p", "4/5"}, {"i_lo", 2}, {"i_hi", 2}, {"seed", 42}});
    REQUIRE(rnd.gaps.has_value());
    CHECK(rnd.gaps->gap_count(GapBudget::all()) == 100);

    CHECK_THROWS_AS(build_construction("no_such_thing", Json::object()), std::invalid_argument);
    CHECK_THROWS_AS(build_construction("middle_gap", Json::object()), std::invalid_argument);
}

TEST_CASE("reports serialize deterministically") {
    GapCantor gc = middle_gap(R(1, 2), 6);
    CpReport cp = cp_partial_sum(gc, R(1), GapBudget::all());
    Json a = cp_report_to_json(cp);
    Json b = cp_report_to_json(cp_partial_sum(gc, R(1), GapBudget::all()));
    CHECK(a.dump() == b.dump());
    CHECK(a["verdict"] == "converging-evidence");

    PEstimate pe = estimate_P(gc, GapBudget::all());
    Json pj = p_estimate_to_json(pe);
    CHECK(pj["method"] == std::string(PEstimate::method));

    DigitCantorSpec spec(4, {0, 2}, R(1, 4));
    FuzzyMeasureCert cert = ck_upper_bound(spec, 5, 16);
    Json cj = cert_to_json(cert);
    CHECK(cj["dimension"]["exact"] == "1/2");

    NestingReport nr = x_inner_outer(spec, gc, 3, GapBudget::all());
    Json nj = nesting_report_to_json(nr, true);
    CHECK(nj["oracle_computed"] == true);
    CHECK(union_from_json(nj["x_inner"]) == nr.x_inner);
    CHECK(nesting_report_to_json(nr, true).dump() == nj.dump());
}

TEST_CASE("atomic file write and read back") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "cantor_ser_test";
    fs::create_directories(dir);
    std::string path = (dir / "out.json").string();
    write_file_atomic(path, "{\"x\":1}\n");
    CHECK(read_file(path) == "{\"x\":1}\n");
    write_file_atomic(path, "{\"x\":2}\n");
    CHECK(read_file(path) == "{\"x\":2}\n");
    CHECK_FALSE(fs::exists(path + ".tmp"));
    fs::remove_all(dir);
    CHECK_THROWS(read_file((dir / "missing.json").string()));
}
