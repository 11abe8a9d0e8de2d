#include "displab/profile.hpp"

#include "displab/error.hpp"

namespace displab {

void require_l2(const SpectralProfile& phi) {
    if (!(phi.decay > 0.5)) throw NotInSpaceError("profile '" + phi.name + "' is not square integrable");
}

}  // namespace displab
