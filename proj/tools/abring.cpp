// Command-line front end for the Aharonov-Bohm ring transport library.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "abring/cli.hpp"
#include "abring/kernels.hpp"

namespace {

using namespace abring;
using namespace abring::cli;

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transmission and conductance of a two-dot Aharonov-Bohm ring with complex dot levels"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "abring 1.0");

    TransmitOptions transmit;
    std::string transmit_alloc = "symmetric";
    std::string transmit_engine = "closed";
    auto* t = app.add_subcommand("transmit", "Evaluate amplitudes and T at one point");
    t->add_option("--eu-re", transmit.eu_re, "Re E_u");
    t->add_option("--eu-im", transmit.eu_im, "Im E_u (gain > 0, loss < 0)");
    t->add_option("--ed-re", transmit.ed_re, "Re E_d");
    t->add_option("--ed-im", transmit.ed_im, "Im E_d");
    t->add_option("--phi", transmit.phi, "Flux phase (radians)");
    t->add_flag("--phi-in-pi", transmit.phi_in_pi, "Interpret --phi in units of pi");
    t->add_option("--gamma", transmit.broadening, "Level broadening t^2/t0")->capture_default_str();
    t->add_option("--t0", transmit.t0, "Lead hopping (energy unit)")->capture_default_str();
    t->add_option("--k", transmit.k, "Lead momentum in (0, pi)")->capture_default_str();
    t->add_option("--alloc", transmit_alloc, "symmetric|asymmetric|random")
        ->check(CLI::IsMember({"symmetric", "asymmetric", "random"}));
    t->add_option("--seed", transmit.allocation.seed, "Seed for --alloc random");
    t->add_option("--engine", transmit_engine, "closed|oracle|both")
        ->check(CLI::IsMember({"closed", "oracle", "both"}));

    SweepCommandOptions sweep;
    std::string sweep_config;
    auto* s = app.add_subcommand("sweep", "Run a parameter sweep from a JSON config");
    s->add_option("config", sweep_config, "JSON run configuration")->required();
    s->add_option("--csv", sweep.csv_path, "CSV output path (overrides config; '-' for stdout)");
    s->add_option("--svg", sweep.svg_path, "SVG output path (overrides config)");

    GaugeCheckOptions gauge;
    std::string gauge_config;
    auto* g = app.add_subcommand("gauge-check", "Verify allocation independence on random draws");
    g->add_option("--trials", gauge.trials, "Number of random draws")->capture_default_str()
        ->check(CLI::PositiveNumber);
    g->add_option("--seed", gauge.seed, "Random seed")->capture_default_str();
    g->add_option("--config", gauge_config, "Fix the physical parameters from a JSON config");
    g->add_option("--phi", gauge.phi, "Fix the flux phase for every draw");
    g->add_flag("--phi-in-pi", gauge.phi_in_pi, "Interpret --phi in units of pi");
    g->add_flag("--hermitian", gauge.hermitian, "Draw real dot levels and check unitarity");

    FanoCommandOptions fano;
    std::string fano_config;
    std::string fano_window = "resonance";
    auto* f = app.add_subcommand("fano", "Fit the standard Fano profile to an epsilon sweep");
    f->add_option("config", fano_config, "JSON run configuration")->required();
    f->add_option("--window", fano_window, "resonance|full")
        ->check(CLI::IsMember({"resonance", "full"}));

    std::string fig2_out = "fig2";
    auto* fig = app.add_subcommand("fig2", "Reproduce the conductance-spectrum panels and check them");
    fig->add_option("--out", fig2_out, "Output directory")->capture_default_str();

    auto* info = app.add_subcommand("info", "Print the selected kernel variant");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return report_error(std::cerr, "UsageError", e.what(), exit_code::invalid_input);
    }

    if (t->parsed()) {
        transmit.allocation.kind = *parse_allocation_kind(transmit_alloc);
        transmit.engine = *parse_engine(transmit_engine);
        return cmd_transmit(transmit, std::cout, std::cerr);
    }
    if (s->parsed()) {
        sweep.config = sweep_config;
        return cmd_sweep(sweep, std::cout, std::cerr);
    }
    if (g->parsed()) {
        if (!gauge_config.empty()) gauge.config = gauge_config;
        return cmd_gauge_check(gauge, std::cout, std::cerr);
    }
    if (f->parsed()) {
        fano.config = fano_config;
        fano.window = fano_window == "full" ? FitWindow::full : FitWindow::resonance;
        return cmd_fano(fano, std::cout, std::cerr);
    }
    if (fig->parsed()) return cmd_fig2(fig2_out, std::cout, std::cerr);
    if (info->parsed()) {
        std::cout << "kernel " << kernels::isa_name(kernels::active_isa()) << '\n';
        return exit_code::ok;
    }
    return exit_code::invalid_input;
}
