#include "trlg/auth.hpp"

#include <bit>

namespace trlg {

std::uint8_t compute_auth_bit(const std::vector<std::uint8_t>& phi_bits,
                              const std::vector<std::uint8_t>& s1_bits,
                              const std::vector<std::uint8_t>& s2_bits) {
  unsigned phi_parity = 0;
  unsigned gamma_parity = 0;
  unsigned prev_index = 0;
  for (std::size_t i = 0; i < phi_bits.size(); ++i) {
    if (!(phi_bits[i] & 1)) continue;
    phi_parity ^= 1;
    unsigned index = static_cast<unsigned>(i) + 1;
    gamma_parity ^= static_cast<unsigned>(std::popcount(index ^ prev_index)) & 1u;
    prev_index = index;
  }
  unsigned xi = 0;
  for (std::uint8_t b : s1_bits) xi ^= b & 1u;
  for (std::uint8_t b : s2_bits) xi ^= b & 1u;
  return static_cast<std::uint8_t>((phi_parity ^ gamma_parity ^ xi) & 1u);
}

}  // namespace trlg
