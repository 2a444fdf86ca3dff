#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "abring/ring_model.hpp"

namespace abring {

enum class SweepVariable { epsilon_common, omega, phi, gamma_u, gamma_d };
enum class Engine { closed_form, oracle, both };

std::string_view to_string(SweepVariable v);
std::string_view to_string(Engine e);
std::optional<SweepVariable> parse_sweep_variable(std::string_view s);
std::optional<Engine> parse_engine(std::string_view s);

struct AllocationChoice {
    enum class Kind { symmetric, asymmetric, random };
    Kind kind = Kind::symmetric;
    std::uint64_t seed = 0;

    GaugeAllocation build(const RingConfig& config) const;
};

std::string_view to_string(AllocationChoice::Kind k);
std::optional<AllocationChoice::Kind> parse_allocation_kind(std::string_view s);

/// Closed uniform grid; requires start < stop and points >= 2.
struct SweepRange {
    double start = 0.0;
    double stop = 1.0;
    int points = 2;
};

struct SweepSpec {
    SweepVariable variable = SweepVariable::epsilon_common;
    SweepRange range;
    RingConfig fixed;
    /// Lead momentum; ignored when sweeping omega.
    double k = 1.5707963267948966;
    AllocationChoice allocation;
    Engine engine = Engine::closed_form;
};

struct SpectrumRow {
    double x = 0.0;
    double T = 0.0;
    double G = 0.0;
    cdouble tau;
    cdouble r;
    /// Closed forms were unusable here and the oracle supplied the row, or
    /// no backend produced a value (T is NaN then).
    bool singular = false;
    /// |T_closed - T_oracle| / max(1, |T_oracle|); only filled for Engine::both.
    double discrepancy = 0.0;
};

struct SpectrumTable {
    SweepVariable variable = SweepVariable::epsilon_common;
    bool has_discrepancy = false;
    double max_discrepancy = 0.0;
    std::vector<SpectrumRow> rows;

    std::size_t size() const { return rows.size(); }
    std::vector<double> xs() const;
    std::vector<double> gs() const;
};

struct SweepOptions {
    /// 0 means ABRING_THREADS, or the hardware concurrency when that is unset.
    unsigned threads = 0;
};

/// Grid points; x_{n-1-i} == -x_i exactly when start == -stop.
std::vector<double> sweep_grid(const SweepRange& range);

/// Ring configuration and momentum at one swept value.
RingConfig point_config(const SweepSpec& spec, double x);
Momentum point_momentum(const SweepSpec& spec, double x);

/// Throws InvalidParameter for malformed specs (bad range, omega outside the band).
void validate(const SweepSpec& spec);

SpectrumTable run_sweep(const SweepSpec& spec, const SweepOptions& options = {});

unsigned resolve_thread_count(unsigned requested);

enum class ExtremumKind { min, max };

struct Extremum {
    double position = 0.0;
    double value = 0.0;
    ExtremumKind kind = ExtremumKind::min;
    /// Grid index of the bracketing sample.
    std::size_t index = 0;
};

/// Strict interior extrema of G, each refined by a parabola through the
/// sample and its two neighbours. Throws EmptyResult when there are none.
std::vector<Extremum> find_extrema(const SpectrumTable& table);
std::vector<Extremum> find_extrema(std::span<const double> x, std::span<const double> y);

/// max over d of |G(x_max + d) - G(x_max - d)| / max(G), taken over the
/// part of the grid symmetric about the maximum. Equal-height maxima are
/// treated as one feature centred between them. Returns 0 for numerically
/// flat curves; throws EmptyResult when there is no interior maximum.
double asymmetry_metric(const SpectrumTable& table);
double asymmetry_metric(std::span<const double> g);

/// Minimum of G inside [lo, hi] located by repeated sweeps, each over the
/// bracket of the previous one, until the bracket is narrower than `tolerance`.
Extremum locate_minimum(const SweepSpec& spec, double lo, double hi, double tolerance = 1e-12);

}  // namespace abring
