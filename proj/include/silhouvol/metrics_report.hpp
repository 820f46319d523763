#pragma once

#include <string>
#include <vector>

namespace silhouvol {

/// One sample's reference volume and estimates. Values share one unit (cm³
/// after scale calibration, px³ otherwise); percent errors are recomputed
/// from these fields whenever a report is emitted.
struct MeasurementRecord {
    std::string sample_id;
    double manual_volume = 0.0; ///< reference (water displacement or analytic oracle), > 0
    double vertical_volume = 0.0;
    double horizontal_short = 0.0;
    double horizontal_average = 0.0;
    double horizontal_long = 0.0;
};

/// π/6·a·b·c over full axis lengths.
double ellipsoid_volume(double a, double b, double c);

/// 100·|estimate − reference|/reference; reference must be positive.
double percent_error(double estimate, double reference);

/// Mean of absolute values; signed inputs welcome.
double mae(const std::vector<double>& errors);

/// σ with the population convention (divide by n). n >= 1.
double population_stddev(const std::vector<double>& values);

/// σ with the sample convention (divide by n-1). n >= 2.
double sample_stddev(const std::vector<double>& values);

/// Population σ divided by √n. n >= 2.
double standard_error(const std::vector<double>& values);

struct ScaleCalibration {
    double cm_per_pixel = 0.0; ///< > 0

    void validate() const;
};

/// value · cm_per_pixel^power for power 1 (length), 2 (area) or 3 (volume).
double to_physical(double value, const ScaleCalibration& scale, int power);

/// Report document: a JSON body with per-sample rows and a recomputed summary
/// block, plus a scatter CSV of (manual, predicted) pairs. Field order and
/// number formatting are deterministic; identical records give identical
/// bytes.
struct Report {
    std::string json_text;
    std::string csv_text;
};

/// Summary block: mean manual/vertical volume, MAE of the vertical errors,
/// MAE of the average-mode horizontal errors, population σ of the manual
/// column, and its standard error.
Report emit_report(const std::vector<MeasurementRecord>& records);

/// Parses records from report-shaped JSON: {"samples":[{id, manual_cm3,
/// vertical_cm3, horizontal_cm3}, ...]}. horizontal_cm3 may be a single
/// number (applied to all three calibration modes) or an object
/// {short, average, long}. Error fields are ignored; they are derived.
std::vector<MeasurementRecord> parse_records(const std::string& json_text);

/// parse_records over a file.
std::vector<MeasurementRecord> load_records(const std::string& path);

} // namespace silhouvol
