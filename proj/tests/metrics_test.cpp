#include "silhouvol/errors.hpp"
#include "silhouvol/metrics_report.hpp"

#include "test_util.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

using namespace silhouvol;
using namespace test_util;

namespace {

std::vector<MeasurementRecord> reference_records() {
    std::vector<MeasurementRecord> records;
    for (std::size_t i = 0; i < kRefManual.size(); ++i) {
        MeasurementRecord rec;
        rec.sample_id = "ham-" + std::to_string(i + 1);
        rec.manual_volume = kRefManual[i];
        rec.vertical_volume = kRefVertical[i];
        rec.horizontal_short = kRefHorizontal[i];
        rec.horizontal_average = kRefHorizontal[i];
        rec.horizontal_long = kRefHorizontal[i];
        records.push_back(std::move(rec));
    }
    return records;
}

double summary_value(const std::string& json_text, const std::string& key) {
    // Dumb but dependency-free: find "key": <number> in the summary block.
    const std::string needle = "\"" + key + "\": ";
    const auto pos = json_text.find(needle);
    REQUIRE(pos != std::string::npos);
    return std::stod(json_text.substr(pos + needle.size()));
}

} // namespace

TEST_CASE("ellipsoid volume over full axes") {
    CHECK(ellipsoid_volume(20.0, 15.0, 10.0) == doctest::Approx(500.0 * std::numbers::pi));
    CHECK(ellipsoid_volume(2.0, 2.0, 2.0) == doctest::Approx(4.0 / 3.0 * std::numbers::pi));
    CHECK(ellipsoid_volume(1.0, 1.0, 6.0) == doctest::Approx(std::numbers::pi));
    CHECK_THROWS_AS(ellipsoid_volume(0.0, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(ellipsoid_volume(1.0, -2.0, 1.0), ConfigError);
}

TEST_CASE("percent error basics") {
    CHECK(percent_error(490.69, 490.0) == doctest::Approx(0.140816).epsilon(1e-4));
    CHECK(percent_error(249.51, 490.0) == doctest::Approx(49.0796).epsilon(1e-4));
    CHECK(percent_error(185.0, 185.0) == doctest::Approx(0.0));
    CHECK(percent_error(90.0, 100.0) == doctest::Approx(percent_error(110.0, 100.0)));
    // Scale invariance: same relative miss, any unit.
    CHECK(percent_error(90.0, 100.0) == doctest::Approx(percent_error(0.9, 1.0)));
    CHECK_THROWS_AS(percent_error(1.0, 0.0), ConfigError);
    CHECK_THROWS_AS(percent_error(1.0, -5.0), ConfigError);
}

TEST_CASE("recomputed reference errors match the recorded columns") {
    // The recorded columns are rounded to 2 decimals and carry a couple of
    // small transcription slips, so the tolerance is looser than rounding.
    for (std::size_t i = 0; i < kRefManual.size(); ++i) {
        CHECK(std::fabs(percent_error(kRefVertical[i], kRefManual[i]) - kRefVerticalErr[i]) <=
              0.05);
        CHECK(std::fabs(percent_error(kRefHorizontal[i], kRefManual[i]) - kRefHorizontalErr[i]) <=
              0.25);
    }
}

TEST_CASE("mean absolute error") {
    CHECK(mae(kRefVerticalErr) == doctest::Approx(9.50).epsilon(1e-3));
    CHECK(mae(kRefHorizontalErr) == doctest::Approx(30.26).epsilon(1e-3));
    CHECK(mae({-5.0, 5.0}) == doctest::Approx(5.0));
    std::vector<double> shuffled = kRefVerticalErr;
    std::reverse(shuffled.begin(), shuffled.end());
    CHECK(mae(shuffled) == doctest::Approx(mae(kRefVerticalErr)));
    CHECK_THROWS_AS(mae({}), ConfigError);
}

TEST_CASE("spread statistics of the manual column") {
    CHECK(population_stddev(kRefManual) == doctest::Approx(172.01).epsilon(1e-4));
    CHECK(sample_stddev(kRefManual) == doctest::Approx(183.8866).epsilon(1e-4));
    CHECK(standard_error(kRefManual) == doctest::Approx(60.81).epsilon(1e-3));
    CHECK(population_stddev({7.0, 7.0, 7.0}) == doctest::Approx(0.0));
    CHECK(population_stddev({42.0}) == doctest::Approx(0.0));
    CHECK_THROWS_AS(population_stddev({}), ConfigError);
    CHECK_THROWS_AS(sample_stddev({1.0}), ConfigError);
    CHECK_THROWS_AS(standard_error({1.0}), ConfigError);
}

TEST_CASE("pixel-to-physical conversion") {
    const ScaleCalibration scale{0.5};
    CHECK(to_physical(100.0, scale, 1) == doctest::Approx(50.0));
    CHECK(to_physical(100.0, scale, 2) == doctest::Approx(25.0));
    CHECK(to_physical(100.0, scale, 3) == doctest::Approx(12.5));
    CHECK_THROWS_AS(to_physical(1.0, scale, 0), ConfigError);
    CHECK_THROWS_AS(to_physical(1.0, scale, 4), ConfigError);
    CHECK_THROWS_AS(to_physical(1.0, ScaleCalibration{0.0}, 3), ConfigError);
    CHECK_THROWS_AS(to_physical(1.0, ScaleCalibration{-1.0}, 3), ConfigError);
}

TEST_CASE("report summary reproduces the reference statistics") {
    const Report report = emit_report(reference_records());
    CHECK(std::fabs(summary_value(report.json_text, "mean_manual") - 292.5) <= 1e-9);
    CHECK(std::fabs(summary_value(report.json_text, "mean_vertical") - 298.025) <= 1e-6);
    CHECK(std::fabs(summary_value(report.json_text, "mae_vertical") - 9.50) <= 0.01);
    // The recorded horizontal error column has transcription slips; recomputing
    // from the volumes lands within 0.05 of its rounded mean.
    CHECK(std::fabs(summary_value(report.json_text, "mae_horizontal") - 30.26) <= 0.05);
    CHECK(std::fabs(summary_value(report.json_text, "sigma_manual_population") - 172.01) <= 0.01);
    CHECK(std::fabs(summary_value(report.json_text, "se_manual") - 60.81) <= 0.01);
}

TEST_CASE("single-record report is self-consistent") {
    MeasurementRecord rec;
    rec.sample_id = "only";
    rec.manual_volume = 200.0;
    rec.vertical_volume = 210.0;
    rec.horizontal_short = 180.0;
    rec.horizontal_average = 190.0;
    rec.horizontal_long = 205.0;
    const Report report = emit_report({rec});
    CHECK(summary_value(report.json_text, "mean_manual") == doctest::Approx(200.0));
    CHECK(summary_value(report.json_text, "mean_vertical") == doctest::Approx(210.0));
    CHECK(summary_value(report.json_text, "mae_vertical") == doctest::Approx(5.0));
    CHECK(summary_value(report.json_text, "mae_horizontal") == doctest::Approx(5.0));
    CHECK(summary_value(report.json_text, "sigma_manual_population") == doctest::Approx(0.0));
}

TEST_CASE("summary ignores record order only where it should") {
    auto records = reference_records();
    const Report fwd = emit_report(records);
    std::reverse(records.begin(), records.end());
    const Report rev = emit_report(records);
    for (const char* key : {"mean_manual", "mean_vertical", "mae_vertical", "mae_horizontal",
                            "sigma_manual_population", "se_manual"})
        CHECK(summary_value(fwd.json_text, key) == doctest::Approx(summary_value(rev.json_text, key)));
    CHECK(fwd.json_text != rev.json_text); // sample rows keep input order
}

TEST_CASE("identical inputs produce identical bytes") {
    const Report a = emit_report(reference_records());
    const Report b = emit_report(reference_records());
    CHECK(a.json_text == b.json_text);
    CHECK(a.csv_text == b.csv_text);
}

TEST_CASE("scatter CSV layout") {
    MeasurementRecord rec;
    rec.sample_id = "s1";
    rec.manual_volume = 100.0;
    rec.vertical_volume = 110.5;
    rec.horizontal_short = 90.0;
    rec.horizontal_average = 95.25;
    rec.horizontal_long = 99.0;
    const Report report = emit_report({rec});
    CHECK(report.csv_text == "sample_id,manual,predicted,method\n"
                             "s1,100.0,110.5,vertical\n"
                             "s1,100.0,90.0,horizontal-short\n"
                             "s1,100.0,95.25,horizontal-average\n"
                             "s1,100.0,99.0,horizontal-long\n");
}

TEST_CASE("report rejects unusable records") {
    CHECK_THROWS_AS(emit_report({}), ConfigError);
    MeasurementRecord rec;
    rec.sample_id = "bad";
    rec.manual_volume = 0.0;
    rec.vertical_volume = 1.0;
    rec.horizontal_short = rec.horizontal_average = rec.horizontal_long = 1.0;
    CHECK_THROWS_AS(emit_report({rec}), ConfigError);
}

TEST_CASE("records parse from both horizontal shapes") {
    const std::string json = R"({"samples": [
        {"id": "a", "manual_cm3": 490, "vertical_cm3": 490.69, "horizontal_cm3": 249.51},
        {"id": "b", "manual_cm3": 500, "vertical_cm3": 530.94,
         "horizontal_cm3": {"short": 250.0, "average": 258.45, "long": 260.0},
         "vertical_err_pct": 99.9}
    ]})";
    const auto records = parse_records(json);
    REQUIRE(records.size() == 2);
    CHECK(records[0].sample_id == "a");
    CHECK(records[0].horizontal_short == doctest::Approx(249.51));
    CHECK(records[0].horizontal_average == doctest::Approx(249.51));
    CHECK(records[0].horizontal_long == doctest::Approx(249.51));
    CHECK(records[1].horizontal_short == doctest::Approx(250.0));
    CHECK(records[1].horizontal_average == doctest::Approx(258.45));
    CHECK(records[1].horizontal_long == doctest::Approx(260.0));
}

TEST_CASE("record parsing failures are configuration errors") {
    CHECK_THROWS_AS(parse_records("not json"), ConfigError);
    CHECK_THROWS_AS(parse_records("{}"), ConfigError);
    CHECK_THROWS_AS(parse_records(R"({"samples": []})"), ConfigError);
    CHECK_THROWS_AS(parse_records(R"({"samples": [{"id": "x"}]})"), ConfigError);
    CHECK_THROWS_AS(parse_records(R"({"samples": [{"id": "x", "manual_cm3": 1,
        "vertical_cm3": 1, "horizontal_cm3": {"short": 1}}]})"),
                    ConfigError);
}

TEST_CASE("emitted reports re-parse to the same records") {
    const auto records = reference_records();
    const Report report = emit_report(records);
    const auto parsed = parse_records(report.json_text);
    REQUIRE(parsed.size() == records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        CHECK(parsed[i].sample_id == records[i].sample_id);
        CHECK(parsed[i].manual_volume == doctest::Approx(records[i].manual_volume));
        CHECK(parsed[i].vertical_volume == doctest::Approx(records[i].vertical_volume));
        CHECK(parsed[i].horizontal_average == doctest::Approx(records[i].horizontal_average));
    }
    CHECK(emit_report(parsed).json_text == report.json_text);
}
