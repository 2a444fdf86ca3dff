// Acceptance suite: one PASS/FAIL line per criterion, evaluated at the
// stated tolerances. Exit status is non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "abring/cli.hpp"
#include "abring/closed_form.hpp"
#include "abring/error.hpp"
#include "abring/fano_fit.hpp"
#include "abring/kernels.hpp"
#include "abring/scattering_oracle.hpp"
#include "abring/spectra.hpp"
#include "test_support.hpp"

using namespace abring;
using abring::testing::kPi;

namespace {

constexpr double kBroadening = 0.1;
constexpr int kDraws = 1000;
constexpr std::uint64_t kSeed = 20240611;

struct Outcome {
    bool passed = false;
    std::string detail;
};

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

/// |a - b| / |b|, or |a - b| when b is exactly zero.
double relative(cdouble a, cdouble b) {
    const double d = std::abs(a - b);
    return std::abs(b) > 0.0 ? d / std::abs(b) : d;
}

std::vector<testing::Draw> draws(testing::Levels levels, int n, std::uint64_t seed) {
    testing::DrawSource source(seed);
    std::vector<testing::Draw> out;
    for (int i = 0; i < n; ++i) out.push_back(source.next(levels));
    return out;
}

Outcome gauge_invariance() {
    const auto set = draws(testing::Levels::general, kDraws, kSeed);
    Stopwatch clock;
    double spread = 0.0;
    for (const testing::Draw& d : set) {
        const Momentum m = dispersion(d.config, d.k);
        const double t[3] = {
            solve_scattering(d.config, symmetric_allocation(d.config), m).transmission(),
            solve_scattering(d.config, asymmetric_allocation(d.config), m).transmission(),
            solve_scattering(d.config, random_allocation(d.config, d.gauge_seed), m).transmission()};
        const auto [lo, hi] = std::minmax_element(std::begin(t), std::end(t));
        if (*hi > 0.0) spread = std::max(spread, (*hi - *lo) / *hi);
    }
    const double elapsed = clock.seconds();
    return {spread <= 1e-9 && elapsed < 1.0,
            fmt("max relative T spread %.2e (<= 1e-9) over %d draws; %.3f s (< 1 s)", spread,
                kDraws, elapsed)};
}

Outcome phase_relation() {
    const auto set = draws(testing::Levels::general, kDraws, kSeed);
    double closed = 0.0, oracle = 0.0;
    for (const testing::Draw& d : set) {
        const Momentum m = dispersion(d.config, d.k);
        const cdouble phase = std::polar(1.0, -d.config.phi() / 2.0);
        closed = std::max(closed, std::abs(closed_form::tau_asymmetric(d.config, m) -
                                           phase * closed_form::tau_symmetric(d.config, m)));
        const cdouble ts = solve_scattering(d.config, symmetric_allocation(d.config), m).tau_RL;
        const cdouble ta = solve_scattering(d.config, asymmetric_allocation(d.config), m).tau_RL;
        oracle = std::max(oracle, std::abs(ta - phase * ts));
    }
    return {closed <= 1e-12 && oracle <= 1e-12,
            fmt("max |tau_asym - exp(-i phi/2) tau_sym| closed form %.2e, oracle %.2e (<= 1e-12)",
                closed, oracle)};
}

Outcome oracle_equivalence() {
    const auto set = draws(testing::Levels::general, kDraws, kSeed);
    double worst = 0.0, worst_fermi = 0.0;
    int singular = 0;
    for (const testing::Draw& d : set) {
        const RingConfig& c = d.config;
        const Momentum m = dispersion(c, d.k);
        const GaugeAllocation sym = symmetric_allocation(c);
        const GaugeAllocation asym = asymmetric_allocation(c);
        const GaugeAllocation rnd = random_allocation(c, d.gauge_seed);
        const ScatteringSolution s_sym = solve_scattering(c, sym, m);
        const ScatteringSolution s_asym = solve_scattering(c, asym, m);
        const ScatteringSolution s_rnd = solve_scattering(c, rnd, m);
        if (s_sym.singular || s_asym.singular || s_rnd.singular) {
            ++singular;
            continue;
        }
        for (double e : {relative(closed_form::tau_general(c, rnd, m), s_rnd.tau_RL),
                         relative(closed_form::r_general(c, rnd, m), s_rnd.r_LL),
                         relative(closed_form::tau_symmetric(c, m), s_sym.tau_RL),
                         relative(closed_form::tau_asymmetric(c, m), s_asym.tau_RL),
                         relative(closed_form::transmission_T(c, m).T, s_rnd.transmission())}) {
            worst = std::max(worst, e);
        }
        const Momentum centre = dispersion(c, kPi / 2.0);
        const ScatteringSolution s_centre = solve_scattering(c, sym, centre);
        if (!s_centre.singular) {
            worst_fermi = std::max(worst_fermi, relative(closed_form::tau_fermi(c), s_centre.tau_RL));
        }
    }
    return {worst <= 1e-9 && worst_fermi <= 1e-9,
            fmt("max relative closed-form vs oracle %.2e, band-center form %.2e (<= 1e-9); "
                "%d singular draws skipped",
                worst, worst_fermi, singular)};
}

Outcome hermitian_unitarity() {
    const auto set = draws(testing::Levels::hermitian, kDraws, kSeed + 1);
    double worst = 0.0;
    for (const testing::Draw& d : set) {
        const ScatteringSolution s =
            solve_scattering(d.config, random_allocation(d.config, d.gauge_seed),
                             dispersion(d.config, d.k));
        worst = std::max(worst, std::abs(s.transmission() + s.reflection() - 1.0));
    }
    return {worst <= 1e-10, fmt("max ||tau|^2 + |r|^2 - 1| %.2e (<= 1e-10) over %d draws", worst,
                                kDraws)};
}

Outcome pt_equality() {
    const auto set = draws(testing::Levels::balanced, 100, kSeed + 2);
    double worst = 0.0;
    for (const testing::Draw& d : set) {
        const Momentum m = dispersion(d.config, d.k);
        const double t1 = closed_form::transmission_pt(d.config, m, closed_form::PtForm::symmetric);
        const double t2 = closed_form::transmission_pt(d.config, m, closed_form::PtForm::asymmetric);
        worst = std::max(worst, std::abs(t1 - t2) / std::max(1.0, std::abs(t1)));
    }
    return {worst <= 1e-12, fmt("max |T_sym - T_asym| %.2e (<= 1e-12) over 100 draws", worst)};
}

Outcome fano_form_consistency() {
    kernels::FanoFormInputs batch;
    batch.broadening = kBroadening;
    std::vector<double> reference;
    int singular = 0;
    double worst_scalar = 0.0;
    for (int i = 0; i < 25; ++i) {
        const double eps = -1.0 + 2.0 * i / 24.0;
        for (int j = 0; j < 20; ++j) {
            const double gamma = -0.5 + 1.0 * j / 19.0;
            for (int l = 0; l < 20; ++l) {
                const double phi = 2.0 * kPi * l / 20.0;
                const RingConfig c = RingConfig::from_broadening(1.0, kBroadening, {eps, gamma},
                                                                 {eps, -gamma}, phi);
                double want;
                try {
                    want = std::norm(closed_form::tau_fermi(c));
                } catch (const SingularPoint&) {
                    ++singular;
                    continue;
                }
                const double got = closed_form::conductance_fano_form(eps, gamma, phi, kBroadening);
                worst_scalar = std::max(worst_scalar, std::abs(got - want) / std::max(1.0, want));
                batch.push(eps, gamma, phi);
                reference.push_back(want);
            }
        }
    }
    double worst_kernel = 0.0;
    for (kernels::Isa isa : kernels::available_isas()) {
        std::vector<double> out(batch.size());
        kernels::fano_form(batch, out, isa);
        for (std::size_t i = 0; i < out.size(); ++i) {
            worst_kernel =
                std::max(worst_kernel, std::abs(out[i] - reference[i]) / std::max(1.0, reference[i]));
        }
    }
    return {worst_scalar <= 1e-12 && worst_kernel <= 1e-12 && singular == 0,
            fmt("max |G_fano - |tau_fermi|^2| / max(1, G) %.2e, batched kernels %.2e (<= 1e-12) "
                "over %d grid points",
                worst_scalar, worst_kernel, 25 * 20 * 20 - singular)};
}

SweepSpec balanced_sweep(double gamma, double phi) {
    return SweepSpec{.variable = SweepVariable::epsilon_common,
                     .range = {-1.0, 1.0, 2001},
                     .fixed = RingConfig::from_broadening(1.0, kBroadening, {0.0, gamma},
                                                          {0.0, -gamma}, phi)};
}

Outcome dip_location() {
    const double step = 2.0 / 2000.0;
    double worst_steps = 0.0, worst_g = 0.0;
    for (double gamma : {0.02, 0.05, 0.1}) {
        for (double phi : {kPi / 4, kPi / 2, 3 * kPi / 4}) {
            const SweepSpec spec = balanced_sweep(gamma, phi);
            const SpectrumTable t = run_sweep(spec);
            std::size_t imin = 0;
            for (std::size_t i = 1; i < t.size(); ++i) {
                if (t.rows[i].G < t.rows[imin].G) imin = i;
            }
            const double expected = gamma * std::tan(phi / 2.0);
            worst_steps = std::max(worst_steps, std::abs(t.rows[imin].x - expected) / step);
            const double lo = t.rows[imin == 0 ? 0 : imin - 1].x;
            const double hi = t.rows[std::min(t.size() - 1, imin + 1)].x;
            worst_g = std::max(worst_g, locate_minimum(spec, lo, hi).value);
        }
    }
    return {worst_steps <= 1.0 && worst_g <= 1e-10,
            fmt("max |eps_min - gamma tan(phi/2)| %.3f grid steps (<= 1); max G at minimum %.2e "
                "(<= 1e-10)",
                worst_steps, worst_g)};
}

Outcome figure_checks() {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / "abring_acceptance_fig2";
    Stopwatch clock;
    const cli::Fig2Report report = cli::run_fig2(dir);
    const double elapsed = clock.seconds();
    std::filesystem::remove_all(dir);
    int failed = 0;
    std::string first_failure;
    for (const cli::Fig2Check& c : report.checks) {
        if (!c.passed) {
            if (failed++ == 0) first_failure = "; first failure: " + c.name;
        }
    }
    return {report.passed() && !report.checks.empty() && elapsed < 5.0,
            fmt("%zu/%zu qualitative checks pass; %.3f s (< 5 s)%s",
                report.checks.size() - static_cast<std::size_t>(failed), report.checks.size(),
                elapsed, first_failure.c_str())};
}

Outcome gain_exceeds_unity() {
    const double gamma = 0.19;
    const RingConfig c = RingConfig::from_broadening(1.0, kBroadening, {0.0, gamma},
                                                     {0.0, -gamma}, kPi);
    const Momentum m = dispersion(c, kPi / 2.0);
    const double alpha = (gamma * gamma - 4 * kBroadening * kBroadening) / (4 * kBroadening);
    const double expected = gamma * gamma / (alpha * alpha);
    const double t_oracle = solve_scattering(c, symmetric_allocation(c), m).transmission();
    const double t_closed = closed_form::transmission_T(c, m).T;
    const double t_fano = closed_form::conductance_fano_form(0.0, gamma, kPi, kBroadening);
    double worst = 0.0;
    for (double t : {t_oracle, t_closed, t_fano}) {
        worst = std::max(worst, std::abs(t - expected) / expected);
    }
    return {t_oracle > 1.0 && t_closed > 1.0 && worst <= 1e-9,
            fmt("T oracle %.10g, closed form %.10g, expected %.10g; max relative error %.2e "
                "(<= 1e-9)",
                t_oracle, t_closed, expected, worst)};
}

Outcome singular_point() {
    const RingConfig c = RingConfig::from_broadening(1.0, kBroadening, 0.0, 0.0, 0.0);
    const Momentum m = dispersion(c, kPi / 2.0);
    const GaugeAllocation a = symmetric_allocation(c);
    const ScatteringSolution s = solve_scattering(c, a, m);
    const bool oracle_ok =
        s.singular && std::abs(s.tau_RL - 1.0) <= 1e-12 && std::abs(s.r_LL) <= 1e-12;

    const std::vector<std::pair<const char*, std::function<void()>>> forms{
        {"tau_general", [&] { closed_form::tau_general(c, a, m); }},
        {"r_general", [&] { closed_form::r_general(c, a, m); }},
        {"tau_symmetric", [&] { closed_form::tau_symmetric(c, m); }},
        {"tau_asymmetric", [&] { closed_form::tau_asymmetric(c, m); }},
        {"transmission_T", [&] { closed_form::transmission_T(c, m); }},
        {"transmission_pt", [&] { closed_form::transmission_pt(c, m, closed_form::PtForm::symmetric); }},
        {"tau_fermi", [&] { closed_form::tau_fermi(c); }},
    };
    std::string missing;
    for (const auto& [name, call] : forms) {
        try {
            call();
            missing += std::string(missing.empty() ? "" : ", ") + name;
        } catch (const SingularPoint&) {
        }
    }
    return {oracle_ok && missing.empty(),
            fmt("oracle tau = %.3g%+.3gi, r = %.3g%+.3gi, singular = %s; %zu closed forms raise "
                "SingularPoint%s%s",
                s.tau_RL.real(), s.tau_RL.imag(), s.r_LL.real(), s.r_LL.imag(),
                s.singular ? "true" : "false", forms.size(),
                missing.empty() ? "" : "; not raised by: ", missing.c_str())};
}

Outcome fano_fit_consistency() {
    testing::FanoTruthSource truths(kSeed + 3);
    const std::vector<double> x = sweep_grid({-1.0, 1.0, 801});
    double worst_synthetic = 0.0;
    for (int i = 0; i < 100; ++i) {
        const testing::FanoTruth t = truths.next();
        std::vector<double> g;
        for (double v : x) g.push_back(t.background + t.amplitude * fano_profile((v - t.center) / t.width, t.q));
        const FanoFit f = fit_fano(x, g);
        for (auto [got, want] : {std::pair{f.q, t.q}, {f.center, t.center}, {f.width, t.width},
                                 {f.amplitude, t.amplitude}, {f.background, t.background}}) {
            worst_synthetic = std::max(worst_synthetic, std::abs(got - want) / std::abs(want));
        }
    }

    const std::vector<double> eps = sweep_grid({-1.0, 1.0, 2001});
    double worst_physical = 0.0;
    FanoFitOptions opt;
    opt.window = FitWindow::resonance;
    opt.width_hint = kBroadening;
    for (double gamma : {0.02, 0.05, 0.1}) {
        std::vector<double> g;
        for (double e : eps) g.push_back(closed_form::conductance_fano_form(e, gamma, kPi / 2, kBroadening));
        const FanoFit f = fit_fano(eps, g, opt);
        const double q_theory = -gamma * std::tan(kPi / 4);
        worst_physical = std::max(worst_physical, std::abs(f.q_detuning() - q_theory) / std::abs(q_theory));
    }
    return {worst_synthetic <= 1e-4 && worst_physical <= 0.1,
            fmt("synthetic max relative parameter error %.2e (<= 1e-4) over 100 truths; "
                "physical max relative q error %.3f (<= 0.1)",
                worst_synthetic, worst_physical)};
}

}  // namespace

int main() {
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"gauge invariance", gauge_invariance},
        {"phase relation between gauges", phase_relation},
        {"closed forms match the linear solve", oracle_equivalence},
        {"unitarity without gain or loss", hermitian_unitarity},
        {"balanced-level forms agree", pt_equality},
        {"Fano form equals band-center amplitude", fano_form_consistency},
        {"Fano dip location", dip_location},
        {"conductance-panel reproduction", figure_checks},
        {"probability non-conservation", gain_exceeds_unity},
        {"singular point", singular_point},
        {"Fano fit self-consistency", fano_fit_consistency},
    };
    std::printf("kernel variant: %s\n", std::string(kernels::isa_name(kernels::active_isa())).c_str());
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("threw: ") + e.what()};
        }
        if (!o.passed) ++failures;
        std::printf("%s  %2zu  %-40s %s\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    o.detail.c_str());
    }
    std::printf("%zu/%zu criteria passed\n", criteria.size() - static_cast<std::size_t>(failures),
                criteria.size());
    return failures == 0 ? 0 : 1;
}
