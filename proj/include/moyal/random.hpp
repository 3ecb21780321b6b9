#pragma once

#include <random>

#include "moyal/spin_ops.hpp"
#include "moyal/wigner.hpp"

namespace moyal {

using Rng = std::mt19937_64;

// Gaussian complex entries, scaled to unit Frobenius norm.
SpinOperator random_operator(int n_spins, HalfInt J, Rng& rng);
SpinOperator random_hermitian(int n_spins, HalfInt J, Rng& rng);

// theta uniform in cos(theta), phi uniform.
SphereAngles random_angles(int n_spheres, Rng& rng);

Eigen::Vector3d random_axis(Rng& rng);

}  // namespace moyal
