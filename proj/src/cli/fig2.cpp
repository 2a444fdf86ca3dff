#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>

#include "abring/cli.hpp"
#include "abring/error.hpp"

namespace abring::cli {

namespace {

constexpr double kBroadening = 0.1;
constexpr int kPoints = 2001;
constexpr double kSymmetryTolerance = 1e-8;
constexpr double kAsymmetryThreshold = 0.1;
constexpr double kZeroTolerance = 1e-15;

struct Curve {
    double phi;
    const char* label;
    const char* column;
    const char* color;
    const char* dash;
};

constexpr Curve kCurves[] = {
    {0.0, "phi = 0", "G_phi_0", "#1f4e9c", ""},
    {0.5 * std::numbers::pi, "phi = 0.5 pi", "G_phi_0.5pi", "#c0392b", "8,4"},
    {std::numbers::pi, "phi = pi", "G_phi_pi", "#000000", "8,3,2,3"},
};

SpectrumTable panel_curve(const Fig2Panel& p, double phi) {
    const RingConfig c =
        RingConfig::from_broadening(1.0, kBroadening, {0.0, p.gamma_u}, {0.0, p.gamma_d}, phi);
    SweepSpec spec{SweepVariable::epsilon_common, {-1.0, 1.0, kPoints}, c,
                   std::numbers::pi / 2.0, {}, Engine::closed_form};
    return run_sweep(spec);
}

double metric_or_nan(const SpectrumTable& t) {
    try {
        return asymmetry_metric(t);
    } catch (const EmptyResult&) {
        return std::nan("");
    }
}

}  // namespace

bool Fig2Report::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

std::vector<Fig2Panel> fig2_panels() {
    return {
        {"a", 0.0, 0.0},
        {"b", 0.05, 0.0},
        {"c", 0.05, -0.05},
        {"d", 0.1, -0.1},
    };
}

Fig2Report run_fig2(const std::filesystem::path& out_dir) {
    Fig2Report rep;
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);

    for (const Fig2Panel& p : fig2_panels()) {
        std::vector<SpectrumTable> tables;
        for (const Curve& c : kCurves) tables.push_back(panel_curve(p, c.phi));
        const std::string tag = "panel " + p.name + " (gamma_u=" + format_double(p.gamma_u) +
                                ", gamma_d=" + format_double(p.gamma_d) + ")";
        const bool lossless = p.gamma_u == 0.0 && p.gamma_d == 0.0;
        const bool balanced = !lossless && p.gamma_u == -p.gamma_d;

        if (lossless) {
            for (std::size_t i = 0; i < tables.size(); ++i) {
                const double m = metric_or_nan(tables[i]);
                rep.checks.push_back({tag + ": symmetric spectrum at " + kCurves[i].label,
                                      m <= kSymmetryTolerance, m, kSymmetryTolerance});
            }
            const auto g = tables[2].gs();
            const double gmax = *std::max_element(g.begin(), g.end());
            rep.checks.push_back(
                {tag + ": zero conductance at phi = pi", gmax <= kZeroTolerance, gmax, kZeroTolerance});
        } else {
            const double m = metric_or_nan(tables[2]);
            rep.checks.push_back({tag + ": symmetric Lorentzian at phi = pi",
                                  m <= kSymmetryTolerance, m, kSymmetryTolerance});
        }
        if (p.gamma_u != p.gamma_d) {
            const double m = metric_or_nan(tables[1]);
            rep.checks.push_back({tag + ": asymmetric Fano lineshape at phi = 0.5 pi",
                                  m > kAsymmetryThreshold, m, kAsymmetryThreshold});
        }
        if (balanced) {
            const auto& rows = tables[0].rows;
            const auto it = std::min_element(rows.begin(), rows.end(),
                                             [](const auto& a, const auto& b) { return a.G < b.G; });
            const bool at_zero = it->x == 0.0;
            rep.checks.push_back({tag + ": dip to zero at eps = 0 for phi = 0",
                                  at_zero && it->G <= kZeroTolerance, it->G, kZeroTolerance});
        }

        if (out_dir.empty()) continue;
        const auto csv_path = out_dir / ("fig2_" + p.name + ".csv");
        const auto svg_path = out_dir / ("fig2_" + p.name + ".svg");
        {
            std::ofstream f(csv_path);
            f << "x";
            for (const Curve& c : kCurves) f << ',' << c.column;
            f << '\n';
            for (std::size_t i = 0; i < tables[0].size(); ++i) {
                f << format_double(tables[0].rows[i].x);
                for (const auto& t : tables) f << ',' << format_double(t.rows[i].G);
                f << '\n';
            }
        }
        {
            SvgChart chart{"Conductance, " + tag, "epsilon (t0)", "G (2e^2/h)", {}};
            for (std::size_t i = 0; i < tables.size(); ++i) {
                chart.series.push_back({kCurves[i].label, tables[i].xs(), tables[i].gs(),
                                        kCurves[i].color, kCurves[i].dash});
            }
            std::ofstream f(svg_path);
            write_svg(f, chart);
        }
        rep.files.push_back(csv_path);
        rep.files.push_back(svg_path);
    }
    return rep;
}

int cmd_fig2(const std::filesystem::path& out_dir, std::ostream& out, std::ostream& err) {
    try {
        const Fig2Report rep = run_fig2(out_dir);
        for (const auto& c : rep.checks) {
            out << (c.passed ? "PASS " : "FAIL ") << c.name << " (value " << format_double(c.value)
                << ", threshold " << format_double(c.threshold) << ")\n";
        }
        for (const auto& f : rep.files) out << "wrote " << f.string() << '\n';
        if (!rep.passed()) {
            return report_error(err, "Fig2CheckFailed", "a qualitative check failed",
                                exit_code::check_failed);
        }
        return exit_code::ok;
    } catch (const Error& e) {
        return report_error(err, e.kind(), e.what(), exit_code::invalid_input);
    } catch (const std::filesystem::filesystem_error& e) {
        return report_error(err, "IoError", e.what(), exit_code::invalid_input);
    }
}

}  // namespace abring::cli
