#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "abring/fano_fit.hpp"
#include "abring/ring_model.hpp"
#include "abring/spectra.hpp"

namespace abring::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int invalid_input = 2;
inline constexpr int solve_failure = 3;
inline constexpr int fit_diverged = 4;
}  // namespace exit_code

/// Parsed JSON run configuration. Keys: t0, t, E_u, E_d ([re, im]), phi,
/// k, allocation {kind, seed}, sweep {variable, start, stop, points, engine},
/// output {csv, svg}. Unknown keys are rejected.
struct RunConfig {
    RingConfig ring;
    double k;
    AllocationChoice allocation;
    std::optional<SweepSpec> sweep;
    std::string csv_path;
    std::string svg_path;
};

/// Throws InvalidParameter naming the offending field, or the line and
/// column of a JSON syntax error.
RunConfig parse_run_config(std::string_view json_text);
RunConfig load_run_config(const std::filesystem::path& path);

/// Shortest exact text for a double (17 significant digits).
std::string format_double(double v);

inline constexpr std::string_view kCsvHeader = "x,T,G,re_tau,im_tau,re_r,im_r,singular";

void write_csv(std::ostream& os, const SpectrumTable& table);

struct SvgSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#1f4e9c";
    /// SVG stroke-dasharray; empty for a solid line.
    std::string dash;
};

struct SvgChart {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<SvgSeries> series;
};

void write_svg(std::ostream& os, const SvgChart& chart);

/// One-line JSON diagnostic on `err`; returns `code`.
int report_error(std::ostream& err, std::string_view kind, std::string_view message, int code);

struct TransmitOptions {
    double eu_re = 0.0, eu_im = 0.0;
    double ed_re = 0.0, ed_im = 0.0;
    double phi = 0.0;
    bool phi_in_pi = false;
    double broadening = 0.1;
    double t0 = 1.0;
    double k = 1.5707963267948966;
    AllocationChoice allocation;
    Engine engine = Engine::closed_form;
};

int cmd_transmit(const TransmitOptions& options, std::ostream& out, std::ostream& err);

struct SweepCommandOptions {
    std::filesystem::path config;
    std::optional<std::string> csv_path;
    std::optional<std::string> svg_path;
};

int cmd_sweep(const SweepCommandOptions& options, std::ostream& out, std::ostream& err);

struct GaugeCheckOptions {
    int trials = 1000;
    std::uint64_t seed = 7;
    std::optional<std::filesystem::path> config;
    std::optional<double> phi;
    bool phi_in_pi = false;
    bool hermitian = false;
};

/// Aggregates over all trials of a gauge check.
struct GaugeCheckReport {
    int trials = 0;
    int singular_draws = 0;
    double max_T_spread = 0.0;
    double max_phase_relation_error = 0.0;
    double max_closed_vs_oracle = 0.0;
    double max_unitarity_defect = 0.0;
    bool allocations_identical = false;
    bool passed = false;
};

GaugeCheckReport run_gauge_check(const GaugeCheckOptions& options);
int cmd_gauge_check(const GaugeCheckOptions& options, std::ostream& out, std::ostream& err);

struct FanoCommandOptions {
    std::filesystem::path config;
    FitWindow window = FitWindow::resonance;
};

int cmd_fano(const FanoCommandOptions& options, std::ostream& out, std::ostream& err);

struct Fig2Check {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double threshold = 0.0;
};

struct Fig2Panel {
    std::string name;
    double gamma_u = 0.0;
    double gamma_d = 0.0;
};

struct Fig2Report {
    std::vector<Fig2Check> checks;
    std::vector<std::filesystem::path> files;
    bool passed() const;
};

/// Built-in panels; broadening 0.1 t0, band center, flux 0, pi/2, pi.
std::vector<Fig2Panel> fig2_panels();

/// Computes every panel, writes CSV + SVG per panel into `out_dir` (when
/// non-empty) and evaluates the qualitative checks.
Fig2Report run_fig2(const std::filesystem::path& out_dir);
int cmd_fig2(const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err);

}  // namespace abring::cli
