#pragma once

// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2 version picked at runtime. Both produce bit-identical
// results: lanes run over independent rows and follow the scalar operation
// order exactly.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mpmo/core.hpp"

namespace mpmo::kernels
{

/// Column-major copy of a population's objectives, parties concatenated
/// party-major. Rows are padded to a multiple of `lane_pad` with +inf so a
/// padded row can never dominate or be closest to anything.
class ObjectiveTable
{
public:
    static constexpr std::size_t lane_pad = 4;

    ObjectiveTable() = default;
    ObjectiveTable(const std::vector<PartyObjectives> &pop, std::span<const std::size_t> arities);
    explicit ObjectiveTable(const std::vector<PartyObjectives> &pop);

    std::size_t rows() const { return rows_; }
    std::size_t stride() const { return stride_; }
    std::size_t columns() const { return columns_; }
    const std::vector<std::size_t> &arities() const { return arities_; }
    const double *column(std::size_t c) const { return data_.data() + c * stride_; }

private:
    std::size_t rows_ = 0;
    std::size_t stride_ = 0;
    std::size_t columns_ = 0;
    std::vector<std::size_t> arities_;
    std::vector<double> data_;
};

enum class Isa { scalar, avx2 };

struct KernelSet {
    Isa isa;
    const char *name;

    // flags[i] = 1 iff some row of `t` multiparty-dominates row i.
    void (*mp_dominated_flags)(const ObjectiveTable &t, std::uint8_t *flags);

    // out[r] = min over rows s of `obtained` of sum_j ||ref_j(r) - s_j||_2,
    // with j running over parties.
    void (*min_party_distance)(const ObjectiveTable &ref, const ObjectiveTable &obtained, double *out);

    // Number of samples weakly dominated by at least one point. Points and
    // samples are column-major with `dim` columns; `point_stride` and
    // `sample_stride` are the column strides. Point rows past `npoints` up to
    // the padded stride must hold +inf.
    std::uint64_t (*count_dominated)(const double *points, std::size_t npoints, std::size_t point_stride,
                                     std::size_t dim, const double *samples, std::size_t nsamples,
                                     std::size_t sample_stride);
};

const KernelSet &scalar();

/// nullptr when the AVX2 variant was not built or the CPU lacks AVX2.
const KernelSet *avx2();

/// Best available variant. Setting MPMO_FORCE_SCALAR=1 in the environment pins
/// the scalar reference.
const KernelSet &active();

} // namespace mpmo::kernels
