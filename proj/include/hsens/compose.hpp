#pragma once

#include <vector>

#include "hsens/partial_assignment.hpp"

namespace hsens {

// XOR composition of minterms over cyclic factors: the composed assignment
// over prod(m_j) variables has p(i_1,...,i_l) = XOR_j p_j(i_j), with a star
// in any operand making the result star. Variables are indexed mixed-radix,
// first factor most significant, matching the Abelian relabeling.
// Consequently |p| = prod |p_j|.
PartialAssignment xor_compose_minterms(const std::vector<PartialAssignment>& parts);

// A cyclically placeable base minterm with a block of roughly m^(1/3) fixed
// bits: one 1 followed by zeros. This is a documented stand-in base; the
// composition above accepts any user-supplied parts.
PartialAssignment reference_cyclic_minterm(unsigned m);

}  // namespace hsens
