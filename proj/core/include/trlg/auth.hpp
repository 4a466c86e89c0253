#pragma once

#include <cstdint>
#include <vector>

#include "trlg/image.hpp"

namespace trlg {

// One authentication bit per 2x2 host block.
using AuthGrid = Grid<std::uint8_t>;

// delta xor xi, where
//   delta = parity(phi) xor parity of the concatenated minimal-binary forms
//           of gamma_i = zeta_i xor zeta_{i-1} (zeta = 1-based indices of set
//           bits in phi, zeta_0 = 0),
//   xi    = xor of all secondary-copy bits for the block.
// phi is the block's primary payload (17 bits color / 5 gray, MSB-first).
std::uint8_t compute_auth_bit(const std::vector<std::uint8_t>& phi_bits,
                              const std::vector<std::uint8_t>& s1_bits,
                              const std::vector<std::uint8_t>& s2_bits);

}  // namespace trlg
