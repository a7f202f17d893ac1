#include "heatfield/rng.hpp"

namespace heatfield::mc {

static_assert(splitmix64_mix(0) == 0, "finalizer fixes zero");
static_assert(derive_seed(0, 0) != derive_seed(0, 1), "streams must differ");

}  // namespace heatfield::mc
