#include <cmath>
#include <limits>

#include "kernels_internal.hpp"

namespace mpmo::kernels
{

namespace detail
{

bool row_mp_dominates(const ObjectiveTable &t, std::size_t a, std::size_t b)
{
    bool strict_party = false;
    std::size_t col = 0;
    for (auto m : t.arities()) {
        bool a_le = true, a_lt = false, b_le = true, b_lt = false;
        for (std::size_t k = 0; k < m; ++k, ++col) {
            const double va = t.column(col)[a];
            const double vb = t.column(col)[b];
            a_le = a_le && va <= vb;
            a_lt = a_lt || va < vb;
            b_le = b_le && vb <= va;
            b_lt = b_lt || vb < va;
        }
        if (b_le && b_lt) {
            return false;
        }
        strict_party = strict_party || (a_le && a_lt);
    }
    return strict_party;
}

} // namespace detail

namespace
{

void mp_dominated_flags_scalar(const ObjectiveTable &t, std::uint8_t *flags)
{
    const std::size_t n = t.rows();
    std::size_t last = n;
    for (std::size_t i = 0; i < n; ++i) {
        flags[i] = 0;
        if (last < n && detail::row_mp_dominates(t, last, i)) {
            flags[i] = 1;
            continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
            if (detail::row_mp_dominates(t, j, i)) {
                flags[i] = 1;
                last = j;
                break;
            }
        }
    }
}

void min_party_distance_scalar(const ObjectiveTable &ref, const ObjectiveTable &obtained, double *out)
{
    const auto &arities = ref.arities();
    for (std::size_t r = 0; r < ref.rows(); ++r) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t s = 0; s < obtained.rows(); ++s) {
            double total = 0.0;
            std::size_t col = 0;
            for (auto m : arities) {
                double acc = 0.0;
                for (std::size_t k = 0; k < m; ++k, ++col) {
                    const double d = ref.column(col)[r] - obtained.column(col)[s];
                    acc = acc + d * d;
                }
                total = total + std::sqrt(acc);
            }
            best = std::min(best, total);
        }
        out[r] = best;
    }
}

std::uint64_t count_dominated_scalar(const double *points, std::size_t npoints, std::size_t point_stride,
                                     std::size_t dim, const double *samples, std::size_t nsamples,
                                     std::size_t sample_stride)
{
    std::uint64_t hits = 0;
    for (std::size_t k = 0; k < nsamples; ++k) {
        for (std::size_t p = 0; p < npoints; ++p) {
            bool covers = true;
            for (std::size_t c = 0; c < dim && covers; ++c) {
                covers = points[c * point_stride + p] <= samples[c * sample_stride + k];
            }
            if (covers) {
                ++hits;
                break;
            }
        }
    }
    return hits;
}

constexpr KernelSet scalar_set{Isa::scalar, "scalar", &mp_dominated_flags_scalar, &min_party_distance_scalar,
                               &count_dominated_scalar};

} // namespace

const KernelSet &scalar()
{
    return scalar_set;
}

} // namespace mpmo::kernels
