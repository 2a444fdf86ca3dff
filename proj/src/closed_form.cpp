#include "abring/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>

#include "abring/error.hpp"

namespace abring::closed_form {

namespace {

constexpr cdouble I{0.0, 1.0};

void require_regular(cdouble denom, std::initializer_list<double> term_magnitudes,
                     const char* what) {
    double scale = 1.0;
    for (double m : term_magnitudes) scale = std::max(scale, m);
    if (!(std::abs(denom) > kSingularThreshold * scale)) {
        throw SingularPoint(std::string(what) + " denominator vanishes (|D| = " +
                            std::to_string(std::abs(denom)) + ")");
    }
}

struct Phases {
    cdouble em1;  // e^{-ik}
    cdouble em2;  // e^{-2ik}
    cdouble ep1;  // e^{ik}
};

Phases phases(const Momentum& m) {
    return {std::polar(1.0, -m.k()), std::polar(1.0, -2.0 * m.k()), std::polar(1.0, m.k())};
}

// A = t_uL t_dR - t_dL t_uR
cdouble coupling_determinant(const GaugeAllocation& a) { return a.uL * a.dR - a.dL * a.uR; }

struct GeneralDenominator {
    cdouble value;
    double largest_term;
};

GeneralDenominator tau_general_denominator(const RingConfig& c, const GaugeAllocation& a,
                                           const Momentum& m) {
    const Phases p = phases(m);
    const double t0 = c.t0();
    const cdouble w = m.omega();
    const cdouble du = (w - c.e_u()) * p.em1 * t0;
    const cdouble dd = (w - c.e_d()) * p.em1 * t0;
    const cdouble A = coupling_determinant(a);

    const cdouble term1 = A * (std::conj(a.dL) * std::conj(a.uR) - std::conj(a.uL) * std::conj(a.dR));
    const cdouble term2 = du * (std::norm(a.dL) + std::norm(a.dR));
    const cdouble term3 = dd * (std::norm(a.uR) + std::norm(a.uL));
    const cdouble term4 = (w - c.e_u()) * (w - c.e_d()) * p.em2 * (t0 * t0);
    return {term1 - term2 - term3 - term4,
            std::max({std::abs(term1), std::abs(term2), std::abs(term3), std::abs(term4)})};
}

bool is_pi_mod_two_pi(double phi) { return std::abs(std::cos(phi / 2.0)) <= 1e-12; }

}  // namespace

cdouble tau_general(const RingConfig& c, const GaugeAllocation& a, const Momentum& m) {
    const Phases p = phases(m);
    const double t0 = c.t0();
    const cdouble w = m.omega();

    const cdouble numerator = ((w - c.e_u()) * p.em1 * t0 * std::conj(a.dL) * a.dR +
                               (w - c.e_d()) * p.em1 * t0 * std::conj(a.uL) * a.uR) *
                              (p.em2 - 1.0);
    const GeneralDenominator d = tau_general_denominator(c, a, m);
    require_regular(d.value, {d.largest_term}, "transmission amplitude");
    return numerator / d.value;
}

cdouble r_general(const RingConfig& c, const GaugeAllocation& a, const Momentum& m) {
    const cdouble tau = tau_general(c, a, m);
    const Phases p = phases(m);
    const double t0 = c.t0();
    const cdouble w = m.omega();
    const cdouble A = coupling_determinant(a);
    const cdouble du = (w - c.e_u()) * p.em1 * t0;

    const cdouble numerator =
        -A * std::conj(a.uL) * p.em2 - du * a.dR - (A * std::conj(a.uR) - du * a.dL) * tau;
    const cdouble d1 = A * std::conj(a.uL);
    const cdouble d2 = du * a.dR;
    const cdouble denominator = d1 + d2;
    require_regular(denominator, {std::abs(d1), std::abs(d2)}, "reflection amplitude");
    return numerator / denominator;
}

cdouble denominator_b(const RingConfig& c, const Momentum& m) {
    const Phases p = phases(m);
    const cdouble w = m.omega();
    const double gamma = c.broadening();
    const double s = std::sin(c.phi() / 2.0);
    return (w - c.e_u()) * (w - c.e_d()) * p.em1 + 2.0 * gamma * (w - c.e_u()) +
           2.0 * gamma * (w - c.e_d()) + 4.0 * gamma * gamma * p.ep1 * (s * s);
}

namespace {

void require_regular_b(const RingConfig& c, const Momentum& m, cdouble b) {
    const cdouble w = m.omega();
    const double gamma = c.broadening();
    const double s = std::sin(c.phi() / 2.0);
    require_regular(b,
                    {std::abs((w - c.e_u()) * (w - c.e_d())), 2.0 * gamma * std::abs(w - c.e_u()),
                     2.0 * gamma * std::abs(w - c.e_d()), 4.0 * gamma * gamma * s * s},
                    "transmission (B)");
}

}  // namespace

cdouble tau_symmetric(const RingConfig& c, const Momentum& m) {
    const cdouble b = denominator_b(c, m);
    require_regular_b(c, m, b);
    const Phases p = phases(m);
    const cdouble w = m.omega();
    const double half = c.phi() / 2.0;
    return -((w - c.e_u()) * std::polar(1.0, half) + (w - c.e_d()) * std::polar(1.0, -half)) *
           (p.em2 - 1.0) * c.broadening() / b;
}

cdouble tau_asymmetric(const RingConfig& c, const Momentum& m) {
    const cdouble b = denominator_b(c, m);
    require_regular_b(c, m, b);
    const Phases p = phases(m);
    const cdouble w = m.omega();
    return -((w - c.e_u()) + (w - c.e_d()) * std::polar(1.0, -c.phi())) * (p.em2 - 1.0) *
           c.broadening() / b;
}

TransmissionResult transmission_T(const RingConfig& c, const Momentum& m) {
    const cdouble b = denominator_b(c, m);
    require_regular_b(c, m, b);
    const cdouble w = m.omega();
    const cdouble eu = c.e_u();
    const cdouble ed = c.e_d();
    const double gamma = c.broadening();
    const double sk = std::sin(m.k());
    const cdouble ephi = std::polar(1.0, c.phi());
    const cdouble emphi = std::polar(1.0, -c.phi());

    const cdouble bracket = (w - eu) * (w - std::conj(eu)) + (w - eu) * (w - std::conj(ed)) * ephi +
                            (w - std::conj(eu)) * (w - ed) * emphi + (w - ed) * (w - std::conj(ed));
    // The bracket is a squared modulus; clamp rounding noise below zero.
    const double T = std::max(0.0, 4.0 * gamma * gamma * sk * sk * bracket.real() / std::norm(b));

    TransmissionResult out;
    out.tau = tau_symmetric(c, m);
    out.T = T;
    out.G = T;
    return out;
}

double transmission_pt(const RingConfig& c, const Momentum& m, PtForm form) {
    const cdouble eu = c.e_u();
    const cdouble ed = c.e_d();
    const double tol = 1e-12 * std::max({1.0, std::abs(eu), std::abs(ed)});
    if (std::abs(eu.real() - ed.real()) > tol || std::abs(eu.imag() + ed.imag()) > tol) {
        throw InvalidParameter("transmission_pt requires balanced levels eps +- i*gamma");
    }
    const double eps = eu.real();
    const double g = eu.imag();
    const double w = m.omega();
    const double gamma = c.broadening();
    const double k = m.k();
    const double phi = c.phi();
    const double s = std::sin(phi / 2.0);
    const double dw = w - eps;

    const cdouble b = (dw * dw + g * g) * std::polar(1.0, -k) + 4.0 * gamma * dw +
                      4.0 * gamma * gamma * std::polar(1.0, k) * (s * s);
    require_regular(b, {dw * dw + g * g, 4.0 * gamma * std::abs(dw), 4.0 * gamma * gamma * s * s},
                    "PT transmission (B)");

    // Both gauges print the same bracket; the form only labels which one is meant.
    double bracket = 0.0;
    switch (form) {
        case PtForm::symmetric:
        case PtForm::asymmetric:
            bracket = 2.0 * (dw * dw + g * g) + 2.0 * std::cos(phi) * (dw * dw) +
                      4.0 * g * std::sin(phi) * dw - 2.0 * g * g * std::cos(phi);
            break;
    }
    const double sk = std::sin(k);
    return std::max(0.0, 4.0 * gamma * gamma * sk * sk * bracket / std::norm(b));
}

cdouble tau_fermi(const RingConfig& c) {
    const cdouble eu = c.e_u();
    const cdouble ed = c.e_d();
    const double gamma = c.broadening();
    const double half = c.phi() / 2.0;
    const double ch = std::cos(half);

    const cdouble d1 = (eu - 2.0 * I * gamma) * (ed - 2.0 * I * gamma);
    const double d2 = 4.0 * gamma * gamma * ch * ch;
    const cdouble denominator = d1 + d2;
    require_regular(denominator, {std::abs(d1), d2}, "band-center amplitude");
    return -I * 2.0 * gamma * (eu * std::polar(1.0, half) + ed * std::polar(1.0, -half)) /
           denominator;
}

double fano_alpha(double epsilon, double gamma, double phi, double broadening) {
    const double s = std::sin(phi / 2.0);
    return (epsilon * epsilon - (4.0 * broadening * broadening * s * s - gamma * gamma)) /
           (4.0 * broadening);
}

double conductance_fano_form(double epsilon, double gamma, double phi, double broadening) {
    const double alpha = fano_alpha(epsilon, gamma, phi, broadening);
    const double num = epsilon * std::cos(phi / 2.0) - gamma * std::sin(phi / 2.0);
    return num * num / (epsilon * epsilon + alpha * alpha);
}

FanoParameters fano_parameters(double gamma, double phi, double epsilon, double broadening) {
    if (is_pi_mod_two_pi(phi)) {
        throw InfiniteQ("q = -gamma tan(phi/2) diverges at phi = pi; lineshape is Lorentzian");
    }
    return {-gamma * std::tan(phi / 2.0), fano_alpha(epsilon, gamma, phi, broadening)};
}

}  // namespace abring::closed_form
