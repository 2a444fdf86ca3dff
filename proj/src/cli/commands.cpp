#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include <json.hpp>

#include "abring/cli.hpp"
#include "abring/closed_form.hpp"
#include "abring/error.hpp"
#include "abring/scattering_oracle.hpp"

namespace abring::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json complex_json(cdouble z) { return {{"re", z.real()}, {"im", z.imag()}}; }

int exit_for(const Error& e) {
    if (dynamic_cast<const SolveFailure*>(&e)) return exit_code::solve_failure;
    if (dynamic_cast<const FitDiverged*>(&e)) return exit_code::fit_diverged;
    return exit_code::invalid_input;
}

double relative_gap(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale > 0.0 ? std::abs(a - b) / scale : 0.0;
}

struct PointResult {
    cdouble tau;
    cdouble r;
    double T = 0.0;
    bool singular = false;
    std::optional<double> discrepancy;
};

PointResult evaluate_point(const RingConfig& c, const GaugeAllocation& a, const Momentum& m,
                           Engine engine) {
    PointResult out;
    auto from_oracle = [&] {
        const ScatteringSolution s = solve_scattering(c, a, m);
        out.tau = s.tau_RL;
        out.r = s.r_LL;
        out.T = s.transmission();
        return s;
    };
    if (engine == Engine::oracle) {
        out.singular = from_oracle().singular;
        return out;
    }
    try {
        out.tau = closed_form::tau_general(c, a, m);
        out.r = closed_form::r_general(c, a, m);
        out.T = closed_form::transmission_T(c, m).T;
    } catch (const SingularPoint&) {
        out.singular = true;
        from_oracle();
        return out;
    }
    if (engine == Engine::both) {
        const ScatteringSolution s = solve_scattering(c, a, m);
        out.discrepancy = std::abs(out.T - s.transmission()) / std::max(1.0, s.transmission());
    }
    return out;
}

}  // namespace

int report_error(std::ostream& err, std::string_view kind, std::string_view message, int code) {
    ordered_json j{{"error", std::string(kind)}, {"message", std::string(message)}, {"exit", code}};
    err << j.dump() << '\n';
    return code;
}

int cmd_transmit(const TransmitOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const double phi = o.phi_in_pi ? o.phi * std::numbers::pi : o.phi;
        const RingConfig c = RingConfig::from_broadening(o.t0, o.broadening, {o.eu_re, o.eu_im},
                                                         {o.ed_re, o.ed_im}, phi);
        const Momentum m = dispersion(c, o.k);
        const GaugeAllocation a = o.allocation.build(c);
        const PointResult p = evaluate_point(c, a, m, o.engine);

        ordered_json j;
        j["engine"] = std::string(to_string(o.engine));
        j["allocation"] = std::string(to_string(o.allocation.kind));
        j["k"] = m.k();
        j["omega"] = m.omega();
        j["phi"] = c.phi();
        j["tau"] = complex_json(p.tau);
        j["r"] = complex_json(p.r);
        j["T"] = p.T;
        j["G"] = p.T;
        j["singular"] = p.singular;
        if (p.discrepancy) j["discrepancy"] = *p.discrepancy;
        out << j.dump(2) << '\n';
        return exit_code::ok;
    } catch (const Error& e) {
        return report_error(err, e.kind(), e.what(), exit_for(e));
    }
}

int cmd_sweep(const SweepCommandOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = load_run_config(o.config);
        if (!cfg.sweep) throw InvalidParameter("field 'sweep': missing");
        const SpectrumTable table = run_sweep(*cfg.sweep);

        const std::string csv = o.csv_path.value_or(cfg.csv_path);
        const std::string svg = o.svg_path.value_or(cfg.svg_path);
        if (csv.empty() || csv == "-") {
            write_csv(out, table);
        } else {
            std::ofstream f(csv);
            if (!f) throw InvalidParameter("cannot write '" + csv + "'");
            write_csv(f, table);
        }
        if (!svg.empty()) {
            std::ofstream f(svg);
            if (!f) throw InvalidParameter("cannot write '" + svg + "'");
            SvgChart chart{"Conductance", std::string(to_string(table.variable)), "G (2e^2/h)",
                           {{"G", table.xs(), table.gs(), "#1f4e9c", ""}}};
            write_svg(f, chart);
        }
        if (table.has_discrepancy) {
            err << "max discrepancy " << format_double(table.max_discrepancy) << '\n';
        }
        return exit_code::ok;
    } catch (const Error& e) {
        return report_error(err, e.kind(), e.what(), exit_code::invalid_input);
    }
}

GaugeCheckReport run_gauge_check(const GaugeCheckOptions& o) {
    if (o.trials < 1) throw InvalidParameter("--trials must be >= 1");
    std::optional<RunConfig> base;
    if (o.config) base = load_run_config(*o.config);

    std::mt19937_64 rng(o.seed);
    std::uniform_real_distribution<double> level(-1.0, 1.0);
    std::uniform_real_distribution<double> gain(-0.5, 0.5);
    std::uniform_real_distribution<double> flux(0.0, 2.0 * std::numbers::pi);
    std::uniform_real_distribution<double> momentum(0.1, std::numbers::pi - 0.1);

    GaugeCheckReport rep;
    rep.trials = o.trials;
    rep.allocations_identical = true;
    for (int trial = 0; trial < o.trials; ++trial) {
        const std::uint64_t alloc_seed = rng();
        double phi = flux(rng);
        const double eu = level(rng), ed = level(rng);
        double gu = gain(rng), gd = gain(rng);
        const double kval = momentum(rng);
        if (o.hermitian) gu = gd = 0.0;
        if (o.phi) phi = o.phi_in_pi ? *o.phi * std::numbers::pi : *o.phi;

        RingConfig c = base ? base->ring
                            : RingConfig::from_broadening(1.0, 0.1, {eu, gu}, {ed, gd}, phi);
        if (base && o.phi) c = c.with_phi(phi);
        if (base && o.hermitian) c = c.with_levels({c.e_u().real(), 0.0}, {c.e_d().real(), 0.0});
        const Momentum m = dispersion(c, base ? base->k : kval);

        const GaugeAllocation sym = symmetric_allocation(c);
        const GaugeAllocation asym = asymmetric_allocation(c);
        const GaugeAllocation rnd = random_allocation(c, alloc_seed);
        rep.allocations_identical = rep.allocations_identical && sym == asym;

        const ScatteringSolution ss = solve_scattering(c, sym, m);
        const ScatteringSolution sa = solve_scattering(c, asym, m);
        const ScatteringSolution sr = solve_scattering(c, rnd, m);
        std::vector<double> Ts{ss.transmission(), sa.transmission(), sr.transmission()};

        try {
            Ts.push_back(closed_form::transmission_T(c, m).T);
            const cdouble t1 = closed_form::tau_symmetric(c, m);
            const cdouble t2 = closed_form::tau_asymmetric(c, m);
            rep.max_phase_relation_error = std::max(
                rep.max_phase_relation_error, std::abs(t2 - std::polar(1.0, -c.phi() / 2.0) * t1));
            for (const auto& [alloc, sol] : {std::pair{sym, ss}, {asym, sa}, {rnd, sr}}) {
                const cdouble tau = closed_form::tau_general(c, alloc, m);
                rep.max_closed_vs_oracle =
                    std::max(rep.max_closed_vs_oracle,
                             std::abs(tau - sol.tau_RL) / std::max(std::abs(sol.tau_RL), 1e-300));
            }
        } catch (const SingularPoint&) {
            ++rep.singular_draws;
        }

        const auto [lo, hi] = std::minmax_element(Ts.begin(), Ts.end());
        rep.max_T_spread = std::max(rep.max_T_spread, relative_gap(*lo, *hi));
        if (o.hermitian) {
            for (const auto* s : {&ss, &sa, &sr}) {
                rep.max_unitarity_defect = std::max(
                    rep.max_unitarity_defect, std::abs(s->transmission() + s->reflection() - 1.0));
            }
        }
    }
    rep.passed = rep.max_T_spread <= 1e-9 && rep.max_phase_relation_error <= 1e-12 &&
                 (!o.hermitian || rep.max_unitarity_defect <= 1e-10);
    return rep;
}

int cmd_gauge_check(const GaugeCheckOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const GaugeCheckReport r = run_gauge_check(o);
        ordered_json j;
        j["trials"] = r.trials;
        j["seed"] = o.seed;
        j["max_T_spread"] = r.max_T_spread;
        j["max_phase_relation_error"] = r.max_phase_relation_error;
        j["max_closed_vs_oracle"] = r.max_closed_vs_oracle;
        if (o.hermitian) j["max_unitarity_defect"] = r.max_unitarity_defect;
        j["singular_draws"] = r.singular_draws;
        j["symmetric_equals_asymmetric"] = r.allocations_identical;
        j["pass"] = r.passed;
        out << j.dump(2) << '\n';
        if (!r.passed) {
            return report_error(err, "GaugeCheckFailed", "allocation spread above tolerance",
                                exit_code::check_failed);
        }
        return exit_code::ok;
    } catch (const Error& e) {
        return report_error(err, e.kind(), e.what(), exit_for(e));
    }
}

int cmd_fano(const FanoCommandOptions& o, std::ostream& out, std::ostream& err) {
    try {
        const RunConfig cfg = load_run_config(o.config);
        if (!cfg.sweep) throw InvalidParameter("field 'sweep': missing");
        if (cfg.sweep->variable != SweepVariable::epsilon_common) {
            throw InvalidParameter("field 'sweep.variable': fano analysis needs epsilon_common");
        }
        if (std::abs(cfg.k - std::numbers::pi / 2.0) > 1e-6) {
            throw InvalidParameter("field 'k': fano analysis is defined at k = pi/2");
        }
        const SpectrumTable table = run_sweep(*cfg.sweep);
        FanoFitOptions fopt;
        fopt.window = o.window;
        fopt.width_hint = cfg.ring.broadening();
        const FanoFit fit = fit_fano(table, fopt);

        const double gamma = cfg.ring.e_u().imag();
        const bool balanced = cfg.ring.e_u().real() == cfg.ring.e_d().real() &&
                              cfg.ring.e_u().imag() == -cfg.ring.e_d().imag();
        ordered_json j;
        j["q"] = fit.q;
        j["center"] = fit.center;
        j["width"] = fit.width;
        j["amplitude"] = fit.amplitude;
        j["background"] = fit.background;
        j["rms_residual"] = fit.rms_residual;
        j["iterations"] = fit.iterations;
        j["q_detuning"] = fit.q_detuning();
        j["window"] = o.window == FitWindow::resonance ? "resonance" : "full";
        j["balanced"] = balanced;
        try {
            const double q_theory = closed_form::fano_parameters(gamma, cfg.ring.phi()).q;
            j["q_theory"] = q_theory + 0.0;
            j["lineshape"] = q_theory == 0.0 ? "symmetric" : "fano";
            if (q_theory != 0.0) {
                j["q_relative_error"] = std::abs(fit.q_detuning() - q_theory) / std::abs(q_theory);
            }
        } catch (const InfiniteQ&) {
            j["q_theory"] = gamma >= 0.0 ? "-inf" : "inf";
            j["lineshape"] = "lorentzian";
        }
        out << j.dump(2) << '\n';
        return exit_code::ok;
    } catch (const Error& e) {
        return report_error(err, e.kind(), e.what(), exit_for(e));
    }
}

}  // namespace abring::cli
