#ifndef QDWELL_SWEEP_HPP
#define QDWELL_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "qdwell/dynamics.hpp"
#include "qdwell/potential.hpp"

namespace qdwell {

/// One full escape-time scan over a (gamma, temperature) grid at fixed
/// potential.  initial_state is the 1-based DVR index prepared at t = 0.
struct SweepConfig {
    PotentialParams potential{1.4, 0.27};
    int n_levels = 6;
    int m_levels = 6;
    std::vector<double> gammas;
    std::vector<double> temperatures;
    double omega_c = 20.0;
    int initial_state = 3;
    double threshold = 0.95;
    int workers = 1;
    int grid_points = 1024;
    std::optional<double> grid_q_min;  // override the geometry-derived box
    std::optional<double> grid_q_max;

    void validate() const;
};

/// Named parameter sets matching the two published well configurations.
SweepConfig preset(const std::string& name);  // "paper-fig2" | "paper-fig3"
std::vector<std::string> preset_names();

struct SweepRecord {
    double gamma = 0.0;
    double temperature = 0.0;
    std::optional<double> tau;
    double tau_relax = 0.0;
    double metastable_peak = 0.0;
    double stationary_pright = 0.0;
    std::string flags;  // semicolon-joined regime notes, empty when clean
    std::string error;  // per-point failure, empty on success
};

/// Evaluates every grid point; spectrum and DVR are computed once and shared
/// read-only.  Points run on up to config.workers threads; the record order
/// and contents are identical to a sequential run.  Per-point errors land in
/// the record instead of aborting the sweep.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

enum class SweepAxis { gamma, temperature };

struct MonotoneSegment {
    double from = 0.0;
    double to = 0.0;
    int direction = 0;  // +1 rising, -1 falling
};

/// Feature summary of tau along one axis at a fixed value of the other.
struct FeatureReport {
    SweepAxis axis = SweepAxis::gamma;
    double fixed_value = 0.0;
    int n_points = 0;
    int n_not_reached = 0;

    double argmax = 0.0, max_value = 0.0;
    double argmin = 0.0, min_value = 0.0;
    bool interior_maximum = false;
    bool interior_minimum = false;

    // QNES fall-off: the interior peak with the largest subsequent relative
    // fall, the adjacent pair carrying that largest drop, and gamma_c = the
    // end of the decreasing run containing it (where the Zeno growth begins).
    bool falloff_found = false;
    double peak_location = 0.0, peak_value = 0.0;
    double drop_from = 0.0, drop_to = 0.0;
    double relative_fall = 0.0;
    double gamma_c = 0.0;

    std::vector<MonotoneSegment> segments;
};

/// Scans records sharing the fixed axis value (>= 5 finite points required).
/// Throws InsufficientResolution when adjacent tau ratios exceed 10 anywhere
/// off the detected fall-off interval.
FeatureReport detect_features(const std::vector<SweepRecord>& records, SweepAxis axis);

/// CSV with the pinned header, shortest round-trip decimals and the
/// NOT_REACHED literal.
std::string to_csv(const std::vector<SweepRecord>& records);
std::vector<SweepRecord> parse_csv(const std::string& text);

std::string report_to_json(const std::vector<FeatureReport>& reports);

/// gnuplot script laying out tau vs gamma per temperature with a tau vs
/// temperature inset per gamma.
std::string plot_script(const std::string& csv_path);

struct OutputPaths {
    std::string csv;
    std::string report;
    std::string plot;  // empty = skip
};

void emit_outputs(const std::vector<SweepRecord>& records,
                  const std::vector<FeatureReport>& reports, const OutputPaths& paths);

} // namespace qdwell

#endif
