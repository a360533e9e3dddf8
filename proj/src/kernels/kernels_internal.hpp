#pragma once

#include "mpmo/kernels.hpp"

namespace mpmo::kernels::detail
{

// Defined in kernels_avx2.cpp when the AVX2 variant is compiled in.
const KernelSet *avx2_kernels();

// Shared by both variants: the row that dominated the previous target is a
// good first guess for the next one.
bool row_mp_dominates(const ObjectiveTable &t, std::size_t a, std::size_t b);

} // namespace mpmo::kernels::detail
