#include <algorithm>
#include <cmath>
#include <limits>

#include "abring/closed_form.hpp"
#include "abring/kernels.hpp"

namespace abring::kernels::detail {

// Keep the operation order identical to the vector variants.
void transmission_scalar(const TransmissionInputs& in, std::size_t begin, std::size_t end,
                         double* out) {
    const double g = in.broadening;
    const double two_g = 2.0 * g;
    const double four_g2 = 4.0 * g * g;
    const double thr2 = closed_form::kSingularThreshold * closed_form::kSingularThreshold;
    const double nan = std::numeric_limits<double>::quiet_NaN();

    for (std::size_t i = begin; i < end; ++i) {
        // a = omega - E_u, b = omega - E_d
        const double ar = in.omega[i] - in.eu_re[i];
        const double ai = 0.0 - in.eu_im[i];
        const double br = in.omega[i] - in.ed_re[i];
        const double bi = 0.0 - in.ed_im[i];

        // |a|^2 + |b|^2 + 2 Re(a conj(b) e^{i phi})
        const double abc_r = ar * br + ai * bi;
        const double abc_i = ai * br - ar * bi;
        const double cross = abc_r * in.cos_phi[i] - abc_i * in.sin_phi[i];
        const double na = ar * ar + ai * ai;
        const double nb = br * br + bi * bi;
        const double bracket = (na + nb) + 2.0 * cross;

        // B = a b e^{-ik} + 2G (a + b) + 4G^2 e^{ik} sin^2(phi/2)
        const double pr = ar * br - ai * bi;
        const double pi = ar * bi + ai * br;
        const double c = in.cos_k[i];
        const double s = in.sin_k[i];
        const double t4 = four_g2 * in.sin2_half_phi[i];
        const double b_re = (pr * c + pi * s) + two_g * (ar + br) + t4 * c;
        const double b_im = (pi * c - pr * s) + two_g * (ai + bi) + t4 * s;
        const double nB = b_re * b_re + b_im * b_im;

        const double np = pr * pr + pi * pi;
        const double scale2 = std::max(std::max(std::max(1.0, np), std::max(two_g * two_g * na,
                                                                           two_g * two_g * nb)),
                                       t4 * t4);
        const double T = (four_g2 * (s * s)) * bracket / nB;
        out[i] = (nB <= thr2 * scale2) ? nan : std::max(0.0, T);
    }
}

void fano_form_scalar(const FanoFormInputs& in, std::size_t begin, std::size_t end, double* out) {
    const double g = in.broadening;
    const double four_g = 4.0 * g;
    const double four_g2 = 4.0 * g * g;
    for (std::size_t i = begin; i < end; ++i) {
        const double e = in.epsilon[i];
        const double gm = in.gamma[i];
        const double sh = in.sin_half_phi[i];
        const double alpha = (e * e - (four_g2 * (sh * sh) - gm * gm)) / four_g;
        const double num = e * in.cos_half_phi[i] - gm * sh;
        out[i] = (num * num) / (e * e + alpha * alpha);
    }
}

}  // namespace abring::kernels::detail
