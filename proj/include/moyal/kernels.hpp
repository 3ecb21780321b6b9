#pragma once

#include <span>
#include <vector>

#include "moyal/wigner.hpp"

namespace moyal {

// Serial kernels are the reference; parallel ones use OpenMP with a fixed
// work partition so results do not depend on the thread count.
enum class Exec { serial, parallel };

// How a bilinear map acts on one sphere.
enum class SphereRule : unsigned char {
  product,           // Y Y = sum Z C Y
  bracket,           // {Y, Y} = sum U C Y
  prestar,           // Y *~ Y = sum Lambda C Y
  operator_product,  // T T = sum Q C T, at the spin number of the operands
};

// sum_{a,b} scale f_a g_b prod_k rule_k(a_k, b_k).
WignerCoeffs combine(const WignerCoeffs& f, const WignerCoeffs& g,
                     std::span<const SphereRule> rules, cplx scale, Exec exec = Exec::parallel);

// Values of w at many angle tuples.
std::vector<cplx> evaluate_many(const WignerCoeffs& w, const std::vector<SphereAngles>& points,
                                Exec exec = Exec::parallel);

// Values on the tensor product of one node set per sphere. ytab holds
// Y_slot(node) at ytab[node * stride + slot], stride >= (present_rank+1)^2.
// Output index: node of sphere 0 most significant.
std::vector<cplx> evaluate_tensor_grid(const WignerCoeffs& w, const std::vector<cplx>& ytab,
                                       std::size_t nodes, std::size_t stride,
                                       Exec exec = Exec::parallel);

// sum_i values[i] prod_k weights[node_k(i)] over the same tensor layout.
cplx weighted_tensor_sum(const std::vector<cplx>& values, const std::vector<double>& weights,
                         int n_spheres, Exec exec = Exec::parallel);

}  // namespace moyal
