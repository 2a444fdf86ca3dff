#include <immintrin.h>

#include "abring/closed_form.hpp"
#include "abring/kernels.hpp"

namespace abring::kernels::detail {

namespace {

inline __m256d load(const std::vector<double>& v, std::size_t i) { return _mm256_loadu_pd(v.data() + i); }
inline __m256d add(__m256d a, __m256d b) { return _mm256_add_pd(a, b); }
inline __m256d sub(__m256d a, __m256d b) { return _mm256_sub_pd(a, b); }
inline __m256d mul(__m256d a, __m256d b) { return _mm256_mul_pd(a, b); }
inline __m256d vmax(__m256d a, __m256d b) { return _mm256_max_pd(a, b); }

}  // namespace

void transmission_avx2(const TransmissionInputs& in, double* out) {
    const std::size_t n = in.size();
    const std::size_t vec_end = n - n % 4;

    const double g = in.broadening;
    const __m256d zero = _mm256_setzero_pd();
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d two_g = _mm256_set1_pd(2.0 * g);
    const __m256d four_g2 = _mm256_set1_pd(4.0 * g * g);
    const __m256d thr2 = _mm256_set1_pd(closed_form::kSingularThreshold *
                                        closed_form::kSingularThreshold);
    const __m256d nan = _mm256_set1_pd(__builtin_nan(""));

    for (std::size_t i = 0; i < vec_end; i += 4) {
        const __m256d w = load(in.omega, i);
        const __m256d ar = sub(w, load(in.eu_re, i));
        const __m256d ai = sub(zero, load(in.eu_im, i));
        const __m256d br = sub(w, load(in.ed_re, i));
        const __m256d bi = sub(zero, load(in.ed_im, i));

        const __m256d abc_r = add(mul(ar, br), mul(ai, bi));
        const __m256d abc_i = sub(mul(ai, br), mul(ar, bi));
        const __m256d cross = sub(mul(abc_r, load(in.cos_phi, i)), mul(abc_i, load(in.sin_phi, i)));
        const __m256d na = add(mul(ar, ar), mul(ai, ai));
        const __m256d nb = add(mul(br, br), mul(bi, bi));
        const __m256d bracket = add(add(na, nb), mul(two, cross));

        const __m256d pr = sub(mul(ar, br), mul(ai, bi));
        const __m256d pi = add(mul(ar, bi), mul(ai, br));
        const __m256d c = load(in.cos_k, i);
        const __m256d s = load(in.sin_k, i);
        const __m256d t4 = mul(four_g2, load(in.sin2_half_phi, i));
        const __m256d b_re = add(add(add(mul(pr, c), mul(pi, s)), mul(two_g, add(ar, br))), mul(t4, c));
        const __m256d b_im = add(add(sub(mul(pi, c), mul(pr, s)), mul(two_g, add(ai, bi))), mul(t4, s));
        const __m256d nB = add(mul(b_re, b_re), mul(b_im, b_im));

        const __m256d np = add(mul(pr, pr), mul(pi, pi));
        const __m256d tg2 = mul(two_g, two_g);
        const __m256d scale2 =
            vmax(vmax(vmax(one, np), vmax(mul(tg2, na), mul(tg2, nb))), mul(t4, t4));
        const __m256d T = _mm256_div_pd(mul(mul(four_g2, mul(s, s)), bracket), nB);
        const __m256d singular = _mm256_cmp_pd(nB, mul(thr2, scale2), _CMP_LE_OQ);
        const __m256d clamped = vmax(T, zero);
        _mm256_storeu_pd(out + i, _mm256_blendv_pd(clamped, nan, singular));
    }
    transmission_scalar(in, vec_end, n, out);
}

void fano_form_avx2(const FanoFormInputs& in, double* out) {
    const std::size_t n = in.size();
    const std::size_t vec_end = n - n % 4;
    const double g = in.broadening;
    const __m256d four_g = _mm256_set1_pd(4.0 * g);
    const __m256d four_g2 = _mm256_set1_pd(4.0 * g * g);

    for (std::size_t i = 0; i < vec_end; i += 4) {
        const __m256d e = load(in.epsilon, i);
        const __m256d gm = load(in.gamma, i);
        const __m256d sh = load(in.sin_half_phi, i);
        const __m256d alpha =
            _mm256_div_pd(sub(mul(e, e), sub(mul(four_g2, mul(sh, sh)), mul(gm, gm))), four_g);
        const __m256d num = sub(mul(e, load(in.cos_half_phi, i)), mul(gm, sh));
        _mm256_storeu_pd(out + i,
                         _mm256_div_pd(mul(num, num), add(mul(e, e), mul(alpha, alpha))));
    }
    fano_form_scalar(in, vec_end, n, out);
}

}  // namespace abring::kernels::detail
