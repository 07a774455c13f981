#ifndef SCS_KET_HPP
#define SCS_KET_HPP

#include <Eigen/Dense>

#include "scs/fock.hpp"

namespace scs {

// Complex amplitude vector over a sector basis.
struct Ket {
    BasisPtr basis;
    Eigen::VectorXcd amps;
};

}  // namespace scs

#endif
