#include "abring/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>
#include <thread>

#include "abring/closed_form.hpp"
#include "abring/error.hpp"
#include "abring/kernels.hpp"
#include "abring/scattering_oracle.hpp"

namespace abring {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Curves whose total variation is below this (in units of 2e^2/h, scaled up
// for large curves) count as flat.
constexpr double kFlatTolerance = 1e-14;

// Relative height within which two maxima count as the same feature.
constexpr double kTieTolerance = 1e-9;

template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(n, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn] {
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
}

void fill_from_oracle(SpectrumRow& row, const RingConfig& c, const GaugeAllocation& a,
                      const Momentum& m) {
    try {
        const ScatteringSolution s = solve_scattering(c, a, m);
        row.tau = s.tau_RL;
        row.r = s.r_LL;
        row.T = s.transmission();
        row.G = row.T;
    } catch (const Error&) {
        row.tau = row.r = cdouble{kNaN, kNaN};
        row.T = row.G = kNaN;
        row.singular = true;
    }
}

}  // namespace

std::string_view to_string(SweepVariable v) {
    switch (v) {
        case SweepVariable::epsilon_common: return "epsilon_common";
        case SweepVariable::omega: return "omega";
        case SweepVariable::phi: return "phi";
        case SweepVariable::gamma_u: return "gamma_u";
        case SweepVariable::gamma_d: return "gamma_d";
    }
    return "?";
}

std::string_view to_string(Engine e) {
    switch (e) {
        case Engine::closed_form: return "closed_form";
        case Engine::oracle: return "oracle";
        case Engine::both: return "both";
    }
    return "?";
}

std::optional<SweepVariable> parse_sweep_variable(std::string_view s) {
    for (auto v : {SweepVariable::epsilon_common, SweepVariable::omega, SweepVariable::phi,
                   SweepVariable::gamma_u, SweepVariable::gamma_d}) {
        if (to_string(v) == s) return v;
    }
    return std::nullopt;
}

std::optional<Engine> parse_engine(std::string_view s) {
    if (s == "closed" || s == "closed_form") return Engine::closed_form;
    if (s == "oracle") return Engine::oracle;
    if (s == "both") return Engine::both;
    return std::nullopt;
}

std::string_view to_string(AllocationChoice::Kind k) {
    switch (k) {
        case AllocationChoice::Kind::symmetric: return "symmetric";
        case AllocationChoice::Kind::asymmetric: return "asymmetric";
        case AllocationChoice::Kind::random: return "random";
    }
    return "?";
}

std::optional<AllocationChoice::Kind> parse_allocation_kind(std::string_view s) {
    if (s == "symmetric") return AllocationChoice::Kind::symmetric;
    if (s == "asymmetric") return AllocationChoice::Kind::asymmetric;
    if (s == "random") return AllocationChoice::Kind::random;
    return std::nullopt;
}

GaugeAllocation AllocationChoice::build(const RingConfig& config) const {
    switch (kind) {
        case Kind::symmetric: return symmetric_allocation(config);
        case Kind::asymmetric: return asymmetric_allocation(config);
        case Kind::random: return random_allocation(config, seed);
    }
    return symmetric_allocation(config);
}

std::vector<double> SpectrumTable::xs() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.x);
    return out;
}

std::vector<double> SpectrumTable::gs() const {
    std::vector<double> out;
    out.reserve(rows.size());
    for (const auto& r : rows) out.push_back(r.G);
    return out;
}

std::vector<double> sweep_grid(const SweepRange& range) {
    if (!(range.points >= 2)) throw InvalidParameter("sweep needs at least 2 points");
    if (!(std::isfinite(range.start) && std::isfinite(range.stop) && range.start < range.stop)) {
        throw InvalidParameter("sweep range must satisfy start < stop");
    }
    const auto n = static_cast<std::size_t>(range.points);
    const double denom = static_cast<double>(n - 1);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double lo = static_cast<double>(n - 1 - i);
        const double hi = static_cast<double>(i);
        x[i] = (range.start * lo + range.stop * hi) / denom;
    }
    return x;
}

RingConfig point_config(const SweepSpec& spec, double x) {
    const RingConfig& c = spec.fixed;
    switch (spec.variable) {
        case SweepVariable::epsilon_common:
            return c.with_levels({x, c.e_u().imag()}, {x, c.e_d().imag()});
        case SweepVariable::phi: return c.with_phi(x);
        case SweepVariable::gamma_u: return c.with_levels({c.e_u().real(), x}, c.e_d());
        case SweepVariable::gamma_d: return c.with_levels(c.e_u(), {c.e_d().real(), x});
        case SweepVariable::omega: return c;
    }
    return c;
}

Momentum point_momentum(const SweepSpec& spec, double x) {
    if (spec.variable == SweepVariable::omega) return momentum_for_energy(spec.fixed, x);
    return dispersion(spec.fixed, spec.k);
}

void validate(const SweepSpec& spec) {
    (void)sweep_grid(spec.range);
    if (spec.variable == SweepVariable::omega) {
        const double edge = 2.0 * spec.fixed.t0();
        if (!(spec.range.start > -edge && spec.range.stop < edge)) {
            throw InvalidParameter("omega sweep must stay strictly inside the band (-2 t0, 2 t0)");
        }
    } else {
        (void)dispersion(spec.fixed, spec.k);
    }
}

unsigned resolve_thread_count(unsigned requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("ABRING_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) return static_cast<unsigned>(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

SpectrumTable run_sweep(const SweepSpec& spec, const SweepOptions& options) {
    validate(spec);
    const std::vector<double> grid = sweep_grid(spec.range);
    const std::size_t n = grid.size();

    std::vector<RingConfig> configs;
    std::vector<Momentum> momenta;
    configs.reserve(n);
    momenta.reserve(n);
    for (double x : grid) {
        configs.push_back(point_config(spec, x));
        momenta.push_back(point_momentum(spec, x));
    }

    SpectrumTable table;
    table.variable = spec.variable;
    table.has_discrepancy = spec.engine == Engine::both;
    table.rows.resize(n);

    std::vector<double> closed_T;
    if (spec.engine != Engine::oracle) {
        kernels::TransmissionInputs in;
        in.broadening = spec.fixed.broadening();
        in.reserve(n);
        for (std::size_t i = 0; i < n; ++i) in.push(configs[i], momenta[i]);
        closed_T.resize(n);
        kernels::transmission(in, closed_T);
    }

    parallel_for(n, resolve_thread_count(options.threads), [&](std::size_t i) {
        SpectrumRow& row = table.rows[i];
        row.x = grid[i];
        const RingConfig& c = configs[i];
        const Momentum& m = momenta[i];
        const GaugeAllocation a = spec.allocation.build(c);

        if (spec.engine == Engine::oracle) {
            fill_from_oracle(row, c, a, m);
            return;
        }

        bool closed_ok = !std::isnan(closed_T[i]);
        if (closed_ok) {
            try {
                row.tau = closed_form::tau_general(c, a, m);
                row.r = closed_form::r_general(c, a, m);
                row.T = closed_T[i];
                row.G = row.T;
            } catch (const SingularPoint&) {
                closed_ok = false;
            }
        }
        if (!closed_ok) {
            row.singular = true;
            fill_from_oracle(row, c, a, m);
            return;
        }
        if (spec.engine == Engine::both) {
            SpectrumRow ref;
            fill_from_oracle(ref, c, a, m);
            row.discrepancy = std::abs(row.T - ref.T) / std::max(1.0, std::abs(ref.T));
        }
    });

    for (const auto& row : table.rows) {
        if (!row.singular) table.max_discrepancy = std::max(table.max_discrepancy, row.discrepancy);
    }
    return table;
}

std::vector<Extremum> find_extrema(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidParameter("x and y differ in length");
    if (y.size() < 3) throw InvalidParameter("extremum search needs at least 3 rows");

    std::vector<Extremum> out;
    for (std::size_t i = 1; i + 1 < y.size(); ++i) {
        const double l = y[i - 1], c = y[i], r = y[i + 1];
        ExtremumKind kind;
        if (c > l && c > r) {
            kind = ExtremumKind::max;
        } else if (c < l && c < r) {
            kind = ExtremumKind::min;
        } else {
            continue;
        }
        // Vertex of the parabola through the three samples.
        const double h = 0.5 * (x[i + 1] - x[i - 1]);
        const double curv = l - 2.0 * c + r;
        double pos = x[i];
        double val = c;
        if (curv != 0.0) {
            const double shift = 0.5 * (l - r) / curv;
            pos = x[i] + shift * h;
            val = c - 0.125 * (l - r) * (l - r) / curv;
        }
        out.push_back({pos, val, kind, i});
    }
    if (out.empty()) throw EmptyResult("curve has no interior extremum");
    return out;
}

std::vector<Extremum> find_extrema(const SpectrumTable& table) {
    const auto x = table.xs();
    const auto g = table.gs();
    return find_extrema(x, g);
}

double asymmetry_metric(std::span<const double> g) {
    if (g.size() < 3) throw InvalidParameter("asymmetry metric needs at least 3 rows");
    const auto [lo_it, hi_it] = std::minmax_element(g.begin(), g.end());
    const double gmax = *hi_it;
    const double peak = std::max(std::abs(*lo_it), std::abs(gmax));
    if (*hi_it - *lo_it <= kFlatTolerance * std::max(1.0, peak)) return 0.0;

    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        if (g[i] > g[i - 1] && g[i] > g[i + 1]) best = std::max(best, g[i]);
    }
    if (!std::isfinite(best)) throw EmptyResult("curve has no interior maximum");

    std::size_t first = g.size(), last = 0;
    for (std::size_t i = 1; i + 1 < g.size(); ++i) {
        if (g[i] > g[i - 1] && g[i] > g[i + 1] && g[i] >= best - kTieTolerance * std::abs(best)) {
            first = std::min(first, i);
            last = std::max(last, i);
        }
    }
    // Pairs (a, b) with a + b == centre2 are mirror images about the feature.
    const std::size_t centre2 = first + last;
    double metric = 0.0;
    for (std::size_t a = 0; 2 * a < centre2; ++a) {
        const std::size_t b = centre2 - a;
        if (b >= g.size()) continue;
        metric = std::max(metric, std::abs(g[b] - g[a]));
    }
    return metric / gmax;
}

double asymmetry_metric(const SpectrumTable& table) {
    const auto g = table.gs();
    return asymmetry_metric(std::span<const double>(g));
}

Extremum locate_minimum(const SweepSpec& spec, double lo, double hi, double tolerance) {
    SweepSpec local = spec;
    local.range.points = 21;
    Extremum best{};
    for (int iter = 0; iter < 200; ++iter) {
        local.range.start = lo;
        local.range.stop = hi;
        const SpectrumTable t = run_sweep(local, {.threads = 1});
        std::size_t imin = 0;
        for (std::size_t i = 1; i < t.size(); ++i) {
            if (t.rows[i].G < t.rows[imin].G) imin = i;
        }
        best = {t.rows[imin].x, t.rows[imin].G, ExtremumKind::min, imin};
        const std::size_t a = imin == 0 ? 0 : imin - 1;
        const std::size_t b = std::min(t.size() - 1, imin + 1);
        const double new_lo = t.rows[a].x;
        const double new_hi = t.rows[b].x;
        if (!(new_hi - new_lo > tolerance) || !(new_lo < new_hi) ||
            (new_lo == lo && new_hi == hi)) {
            break;
        }
        lo = new_lo;
        hi = new_hi;
    }
    return best;
}

}  // namespace abring
