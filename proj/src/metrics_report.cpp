#include "silhouvol/metrics_report.hpp"

#include "silhouvol/errors.hpp"

#include "json.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace silhouvol {

double ellipsoid_volume(double a, double b, double c) {
    if (!(a > 0.0 && b > 0.0 && c > 0.0)) throw ConfigError("ellipsoid axes must be positive");
    return std::numbers::pi / 6.0 * a * b * c;
}

double percent_error(double estimate, double reference) {
    if (!(reference > 0.0)) throw ConfigError("reference volume must be positive");
    return 100.0 * std::fabs(estimate - reference) / reference;
}

double mae(const std::vector<double>& errors) {
    if (errors.empty()) throw ConfigError("MAE needs at least one error value");
    double acc = 0.0;
    for (double e : errors) acc += std::fabs(e);
    return acc / static_cast<double>(errors.size());
}

namespace {

double mean_of(const std::vector<double>& values) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc / static_cast<double>(values.size());
}

double sum_sq_dev(const std::vector<double>& values, double mean) {
    double acc = 0.0;
    for (double v : values) acc += (v - mean) * (v - mean);
    return acc;
}

} // namespace

double population_stddev(const std::vector<double>& values) {
    if (values.empty()) throw ConfigError("standard deviation needs at least one value");
    const double mean = mean_of(values);
    return std::sqrt(sum_sq_dev(values, mean) / static_cast<double>(values.size()));
}

double sample_stddev(const std::vector<double>& values) {
    if (values.size() < 2) throw ConfigError("sample standard deviation needs at least two values");
    const double mean = mean_of(values);
    return std::sqrt(sum_sq_dev(values, mean) / static_cast<double>(values.size() - 1));
}

double standard_error(const std::vector<double>& values) {
    if (values.size() < 2) throw ConfigError("standard error needs at least two values");
    return population_stddev(values) / std::sqrt(static_cast<double>(values.size()));
}

void ScaleCalibration::validate() const {
    if (!(cm_per_pixel > 0.0)) throw ConfigError("cm_per_pixel must be positive");
}

double to_physical(double value, const ScaleCalibration& scale, int power) {
    scale.validate();
    if (power < 1 || power > 3) throw ConfigError("unit power must be 1, 2 or 3");
    double factor = scale.cm_per_pixel;
    for (int i = 1; i < power; ++i) factor *= scale.cm_per_pixel;
    return value * factor;
}

namespace {

/// Shortest round-trip decimal form, identical to the JSON encoding, so CSV
/// and JSON print the same number the same way.
std::string format_number(double v) { return nlohmann::json(v).dump(); }

} // namespace

Report emit_report(const std::vector<MeasurementRecord>& records) {
    if (records.empty()) throw ConfigError("report needs at least one record");

    std::vector<double> manual, vertical, vertical_err, horiz_avg_err;
    nlohmann::ordered_json samples = nlohmann::ordered_json::array();
    std::ostringstream csv;
    csv << "sample_id,manual,predicted,method\n";

    for (const auto& rec : records) {
        if (!(rec.manual_volume > 0.0))
            throw ConfigError("record \"" + rec.sample_id + "\" has nonpositive manual volume");
        const double err_v = percent_error(rec.vertical_volume, rec.manual_volume);
        const double err_s = percent_error(rec.horizontal_short, rec.manual_volume);
        const double err_a = percent_error(rec.horizontal_average, rec.manual_volume);
        const double err_l = percent_error(rec.horizontal_long, rec.manual_volume);

        nlohmann::ordered_json row;
        row["id"] = rec.sample_id;
        row["manual_cm3"] = rec.manual_volume;
        row["vertical_cm3"] = rec.vertical_volume;
        row["vertical_err_pct"] = err_v;
        row["horizontal_cm3"] = {{"short", rec.horizontal_short},
                                 {"average", rec.horizontal_average},
                                 {"long", rec.horizontal_long}};
        row["horizontal_err_pct"] = {{"short", err_s}, {"average", err_a}, {"long", err_l}};
        samples.push_back(std::move(row));

        csv << rec.sample_id << ',' << format_number(rec.manual_volume) << ','
            << format_number(rec.vertical_volume) << ",vertical\n";
        csv << rec.sample_id << ',' << format_number(rec.manual_volume) << ','
            << format_number(rec.horizontal_short) << ",horizontal-short\n";
        csv << rec.sample_id << ',' << format_number(rec.manual_volume) << ','
            << format_number(rec.horizontal_average) << ",horizontal-average\n";
        csv << rec.sample_id << ',' << format_number(rec.manual_volume) << ','
            << format_number(rec.horizontal_long) << ",horizontal-long\n";

        manual.push_back(rec.manual_volume);
        vertical.push_back(rec.vertical_volume);
        vertical_err.push_back(err_v);
        horiz_avg_err.push_back(err_a);
    }

    const double sigma = population_stddev(manual);
    nlohmann::ordered_json summary;
    summary["mean_manual"] = mean_of(manual);
    summary["mean_vertical"] = mean_of(vertical);
    summary["mae_vertical"] = mae(vertical_err);
    summary["mae_horizontal"] = mae(horiz_avg_err);
    summary["sigma_manual_population"] = sigma;
    summary["se_manual"] = sigma / std::sqrt(static_cast<double>(manual.size()));

    nlohmann::ordered_json doc;
    doc["samples"] = std::move(samples);
    doc["summary"] = std::move(summary);

    Report report;
    report.json_text = doc.dump(2) + "\n";
    report.csv_text = csv.str();
    return report;
}

std::vector<MeasurementRecord> parse_records(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("records file is not valid JSON: ") + e.what());
    }
    std::vector<MeasurementRecord> records;
    try {
        const auto& samples = doc.at("samples");
        if (!samples.is_array()) throw ConfigError("\"samples\" must be an array");
        for (const auto& row : samples) {
            MeasurementRecord rec;
            rec.sample_id = row.at("id").get<std::string>();
            rec.manual_volume = row.at("manual_cm3").get<double>();
            rec.vertical_volume = row.at("vertical_cm3").get<double>();
            const auto& horiz = row.at("horizontal_cm3");
            if (horiz.is_number()) {
                rec.horizontal_short = horiz.get<double>();
                rec.horizontal_average = rec.horizontal_short;
                rec.horizontal_long = rec.horizontal_short;
            } else {
                rec.horizontal_short = horiz.at("short").get<double>();
                rec.horizontal_average = horiz.at("average").get<double>();
                rec.horizontal_long = horiz.at("long").get<double>();
            }
            records.push_back(std::move(rec));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("records field error: ") + e.what());
    }
    if (records.empty()) throw ConfigError("records file lists no samples");
    return records;
}

std::vector<MeasurementRecord> load_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open records file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return with_context("records " + path, [&] { return parse_records(buf.str()); });
}

} // namespace silhouvol
