#pragma once

#include "cqedsim/fock.hpp"

namespace cqedsim::gates {

/// R^{y,pi/2} = (I + i sigma_y)/sqrt(2): |g> -> (|g>-|e>)/sqrt(2), |e> -> (|g>+|e>)/sqrt(2).
inline fock::Mat ry_pi2() {
    fock::Mat r(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    r << s, s, -s, s;
    return r;
}

/// Hadamard: |g> -> (|g>+|e>)/sqrt(2), |e> -> (|g>-|e>)/sqrt(2).
inline fock::Mat hadamard() {
    fock::Mat h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

}  // namespace cqedsim::gates
