#include <atomic>

#include "backends.hpp"

namespace pbe::simd {

bool cpu_supports_avx2() {
#ifdef PBE_HAVE_AVX2
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

Backend detect() { return cpu_supports_avx2() ? Backend::avx2 : Backend::scalar; }

std::atomic<Backend>& active_slot() {
  static std::atomic<Backend> slot{detect()};
  return slot;
}

}  // namespace

Backend active_backend() { return active_slot().load(); }

bool set_backend(Backend b) {
  if (b == Backend::avx2 && !cpu_supports_avx2()) return false;
  active_slot().store(b);
  return true;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::avx2: return "avx2";
    case Backend::scalar: return "scalar";
  }
  return "unknown";
}

const Ops& ops_for(Backend b) {
#ifdef PBE_HAVE_AVX2
  if (b == Backend::avx2) return kAvx2Ops;
#endif
  (void)b;
  return kScalarOps;
}

const Ops& ops() { return ops_for(active_backend()); }

}  // namespace pbe::simd
