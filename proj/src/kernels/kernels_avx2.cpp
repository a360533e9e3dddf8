// Compiled with -mavx2 only (no -mfma) so every lane performs exactly the
// scalar sequence of IEEE operations.

#include <immintrin.h>

#include <algorithm>
#include <array>
#include <limits>

#include "kernels_internal.hpp"

namespace mpmo::kernels
{

namespace
{

void mp_dominated_flags_avx2(const ObjectiveTable &t, std::uint8_t *flags)
{
    const std::size_t n = t.rows();
    const std::size_t padded = t.stride();
    const auto &arities = t.arities();
    const __m256d all_ones = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));

    std::size_t last = n;
    for (std::size_t i = 0; i < n; ++i) {
        flags[i] = 0;
        if (last < n && detail::row_mp_dominates(t, last, i)) {
            flags[i] = 1;
            continue;
        }
        for (std::size_t j = 0; j < padded; j += 4) {
            __m256d some_party_y = _mm256_setzero_pd();
            __m256d some_party_x = _mm256_setzero_pd();
            std::size_t col = 0;
            for (auto m : arities) {
                __m256d y_le = all_ones, y_lt = _mm256_setzero_pd();
                __m256d x_le = all_ones, x_lt = _mm256_setzero_pd();
                for (std::size_t k = 0; k < m; ++k, ++col) {
                    const __m256d y = _mm256_loadu_pd(t.column(col) + j);
                    const __m256d x = _mm256_set1_pd(t.column(col)[i]);
                    y_le = _mm256_and_pd(y_le, _mm256_cmp_pd(y, x, _CMP_LE_OQ));
                    y_lt = _mm256_or_pd(y_lt, _mm256_cmp_pd(y, x, _CMP_LT_OQ));
                    x_le = _mm256_and_pd(x_le, _mm256_cmp_pd(x, y, _CMP_LE_OQ));
                    x_lt = _mm256_or_pd(x_lt, _mm256_cmp_pd(x, y, _CMP_LT_OQ));
                }
                some_party_y = _mm256_or_pd(some_party_y, _mm256_and_pd(y_le, y_lt));
                some_party_x = _mm256_or_pd(some_party_x, _mm256_and_pd(x_le, x_lt));
            }
            const int hit = _mm256_movemask_pd(_mm256_andnot_pd(some_party_x, some_party_y));
            if (hit != 0) {
                flags[i] = 1;
                last = j + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(hit)));
                break;
            }
        }
    }
}

void min_party_distance_avx2(const ObjectiveTable &ref, const ObjectiveTable &obtained, double *out)
{
    const auto &arities = ref.arities();
    const double inf = std::numeric_limits<double>::infinity();
    alignas(32) std::array<double, 4> lane{};
    for (std::size_t r = 0; r < ref.rows(); r += 4) {
        __m256d best = _mm256_set1_pd(inf);
        for (std::size_t s = 0; s < obtained.rows(); ++s) {
            __m256d total = _mm256_setzero_pd();
            std::size_t col = 0;
            for (auto m : arities) {
                __m256d acc = _mm256_setzero_pd();
                for (std::size_t k = 0; k < m; ++k, ++col) {
                    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(ref.column(col) + r),
                                                    _mm256_set1_pd(obtained.column(col)[s]));
                    acc = _mm256_add_pd(acc, _mm256_mul_pd(d, d));
                }
                total = _mm256_add_pd(total, _mm256_sqrt_pd(acc));
            }
            // Operand order mirrors std::min(best, total).
            best = _mm256_min_pd(total, best);
        }
        _mm256_store_pd(lane.data(), best);
        const std::size_t take = std::min<std::size_t>(4, ref.rows() - r);
        std::copy_n(lane.begin(), take, out + r);
    }
}

std::uint64_t count_dominated_avx2(const double *points, std::size_t npoints, std::size_t point_stride,
                                   std::size_t dim, const double *samples, std::size_t nsamples,
                                   std::size_t sample_stride)
{
    std::uint64_t hits = 0;
    const __m256d all_ones = _mm256_castsi256_pd(_mm256_set1_epi64x(-1));
    std::size_t k = 0;
    for (; k + 4 <= nsamples; k += 4) {
        __m256d covered = _mm256_setzero_pd();
        for (std::size_t p = 0; p < npoints; ++p) {
            __m256d covers = all_ones;
            for (std::size_t c = 0; c < dim; ++c) {
                const __m256d s = _mm256_loadu_pd(samples + c * sample_stride + k);
                covers = _mm256_and_pd(covers, _mm256_cmp_pd(_mm256_set1_pd(points[c * point_stride + p]), s,
                                                             _CMP_LE_OQ));
            }
            covered = _mm256_or_pd(covered, covers);
            if (_mm256_movemask_pd(covered) == 0xF) {
                break;
            }
        }
        hits += static_cast<std::uint64_t>(__builtin_popcount(static_cast<unsigned>(_mm256_movemask_pd(covered))));
    }
    if (k < nsamples) {
        hits += scalar().count_dominated(points, npoints, point_stride, dim, samples + k, nsamples - k,
                                         sample_stride);
    }
    return hits;
}

constexpr KernelSet avx2_set{Isa::avx2, "avx2", &mp_dominated_flags_avx2, &min_party_distance_avx2,
                             &count_dominated_avx2};

} // namespace

const KernelSet *detail::avx2_kernels()
{
    return &avx2_set;
}

} // namespace mpmo::kernels
