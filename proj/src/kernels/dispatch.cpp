#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "abring/error.hpp"
#include "abring/kernels.hpp"

namespace abring::kernels {

std::string_view isa_name(Isa isa) {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
    }
    return "unknown";
}

std::vector<Isa> available_isas() {
    std::vector<Isa> out{Isa::scalar};
#if ABRING_HAVE_AVX2
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2")) out.push_back(Isa::avx2);
#endif
    return out;
}

namespace {

Isa select_isa() {
    const auto isas = available_isas();
    if (const char* env = std::getenv("ABRING_SIMD")) {
        const std::string want(env);
        for (Isa isa : isas) {
            if (isa_name(isa) == want) return isa;
        }
        // Unknown or unsupported request: fall back to the reference path.
        if (want != "auto" && !want.empty()) return Isa::scalar;
    }
    return isas.back();
}

void check_supported(Isa isa) {
    for (Isa a : available_isas()) {
        if (a == isa) return;
    }
    throw InvalidParameter("kernel variant '" + std::string(isa_name(isa)) +
                           "' is not available on this CPU");
}

}  // namespace

Isa active_isa() {
    static const Isa isa = select_isa();
    return isa;
}

void TransmissionInputs::reserve(std::size_t n) {
    for (auto* v : {&omega, &cos_k, &sin_k, &eu_re, &eu_im, &ed_re, &ed_im, &cos_phi, &sin_phi,
                    &sin2_half_phi}) {
        v->reserve(n);
    }
}

void TransmissionInputs::push(const RingConfig& config, const Momentum& m) {
    if (omega.empty()) {
        broadening = config.broadening();
    } else if (config.broadening() != broadening) {
        throw std::invalid_argument("all points of a batch must share the broadening");
    }
    omega.push_back(m.omega());
    cos_k.push_back(std::cos(m.k()));
    sin_k.push_back(std::sin(m.k()));
    eu_re.push_back(config.e_u().real());
    eu_im.push_back(config.e_u().imag());
    ed_re.push_back(config.e_d().real());
    ed_im.push_back(config.e_d().imag());
    cos_phi.push_back(std::cos(config.phi()));
    sin_phi.push_back(std::sin(config.phi()));
    const double s = std::sin(config.phi() / 2.0);
    sin2_half_phi.push_back(s * s);
}

void FanoFormInputs::push(double eps, double g, double phi) {
    epsilon.push_back(eps);
    gamma.push_back(g);
    cos_half_phi.push_back(std::cos(phi / 2.0));
    sin_half_phi.push_back(std::sin(phi / 2.0));
}

void transmission(const TransmissionInputs& in, std::span<double> out) {
    transmission(in, out, active_isa());
}

void transmission(const TransmissionInputs& in, std::span<double> out, Isa isa) {
    if (out.size() != in.size()) throw std::invalid_argument("output size mismatch");
    check_supported(isa);
    switch (isa) {
        case Isa::scalar: detail::transmission_scalar(in, 0, in.size(), out.data()); return;
        case Isa::avx2:
#if ABRING_HAVE_AVX2
            detail::transmission_avx2(in, out.data());
#endif
            return;
    }
}

void fano_form(const FanoFormInputs& in, std::span<double> out) { fano_form(in, out, active_isa()); }

void fano_form(const FanoFormInputs& in, std::span<double> out, Isa isa) {
    if (out.size() != in.size()) throw std::invalid_argument("output size mismatch");
    check_supported(isa);
    switch (isa) {
        case Isa::scalar: detail::fano_form_scalar(in, 0, in.size(), out.data()); return;
        case Isa::avx2:
#if ABRING_HAVE_AVX2
            detail::fano_form_avx2(in, out.data());
#endif
            return;
    }
}

}  // namespace abring::kernels
