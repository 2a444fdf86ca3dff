#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "abring/ring_model.hpp"

// Batched closed-form evaluation over structure-of-arrays inputs. Every
// kernel has a scalar reference and, where the target supports it, an AVX2
// variant that performs the same operations in the same order. `dispatch`
// picks the widest variant the running CPU supports unless overridden by
// ABRING_SIMD=scalar|avx2.
namespace abring::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Variants compiled into this binary and supported by the running CPU.
std::vector<Isa> available_isas();

/// Selected variant (cached after the first call).
Isa active_isa();

/// One column per input; trigonometric factors are precomputed so the
/// kernels are pure multiply/add/divide.
struct TransmissionInputs {
    double broadening = 0.0;
    std::vector<double> omega;
    std::vector<double> cos_k;
    std::vector<double> sin_k;
    std::vector<double> eu_re, eu_im;
    std::vector<double> ed_re, ed_im;
    std::vector<double> cos_phi, sin_phi;
    std::vector<double> sin2_half_phi;

    std::size_t size() const { return omega.size(); }
    void reserve(std::size_t n);
    /// Appends one point. The first point fixes the batch broadening; later
    /// points with a different one are rejected.
    void push(const RingConfig& config, const Momentum& m);
};

/// Flux-gauge-independent transmission probability, one value per input
/// row. Rows where the amplitude denominator vanishes come back as NaN.
void transmission(const TransmissionInputs& in, std::span<double> out);
void transmission(const TransmissionInputs& in, std::span<double> out, Isa isa);

struct FanoFormInputs {
    double broadening = 0.0;
    std::vector<double> epsilon;
    std::vector<double> gamma;
    std::vector<double> cos_half_phi;
    std::vector<double> sin_half_phi;

    std::size_t size() const { return epsilon.size(); }
    void push(double epsilon, double gamma, double phi);
};

/// Band-center conductance for balanced levels eps +- i*gamma.
void fano_form(const FanoFormInputs& in, std::span<double> out);
void fano_form(const FanoFormInputs& in, std::span<double> out, Isa isa);

namespace detail {
void transmission_scalar(const TransmissionInputs& in, std::size_t begin, std::size_t end,
                         double* out);
void fano_form_scalar(const FanoFormInputs& in, std::size_t begin, std::size_t end, double* out);
#if ABRING_HAVE_AVX2
void transmission_avx2(const TransmissionInputs& in, double* out);
void fano_form_avx2(const FanoFormInputs& in, double* out);
#endif
}  // namespace detail

}  // namespace abring::kernels
