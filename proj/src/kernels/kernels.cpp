#include <cstdlib>
#include <cstring>
#include <limits>

#include "kernels_internal.hpp"

namespace mpmo::kernels
{

ObjectiveTable::ObjectiveTable(const std::vector<PartyObjectives> &pop, std::span<const std::size_t> arities)
    : rows_(pop.size()), arities_(arities.begin(), arities.end())
{
    for (auto m : arities_) {
        columns_ += m;
    }
    stride_ = (rows_ + lane_pad - 1) / lane_pad * lane_pad;
    if (stride_ == 0) {
        stride_ = lane_pad;
    }
    data_.assign(columns_ * stride_, std::numeric_limits<double>::infinity());
    for (std::size_t r = 0; r < rows_; ++r) {
        check_structure(pop[r], arities_);
        std::size_t col = 0;
        for (const auto &party : pop[r]) {
            for (double v : party) {
                data_[col * stride_ + r] = v;
                ++col;
            }
        }
    }
}

ObjectiveTable::ObjectiveTable(const std::vector<PartyObjectives> &pop)
    : ObjectiveTable(pop, pop.empty() ? std::vector<std::size_t>{} : arities_of(pop.front()))
{
}

const KernelSet *avx2()
{
#if defined(MPMO_HAVE_AVX2)
    static const bool supported = __builtin_cpu_supports("avx2");
    return supported ? detail::avx2_kernels() : nullptr;
#else
    return nullptr;
#endif
}

const KernelSet &active()
{
    static const KernelSet &chosen = [] () -> const KernelSet & {
        const char *force = std::getenv("MPMO_FORCE_SCALAR");
        if (force != nullptr && std::strcmp(force, "0") != 0) {
            return scalar();
        }
        if (const auto *k = avx2()) {
            return *k;
        }
        return scalar();
    }();
    return chosen;
}

} // namespace mpmo::kernels
