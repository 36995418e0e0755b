#pragma once

#include "pbe/simd/kernels.hpp"

namespace pbe::simd {

extern const Ops kScalarOps;
#ifdef PBE_HAVE_AVX2
extern const Ops kAvx2Ops;
#endif

}  // namespace pbe::simd
