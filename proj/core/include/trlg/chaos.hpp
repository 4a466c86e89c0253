#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace trlg {

// Keys for the Chebyshev-Chebyshev (CCS) map
//   x_{n+1} = frac(cos((mu+1) * acos(x_n)) * 2^k)
struct CcsKey {
  double x0 = 0.0;  // initial value, [-1, 1], endpoints rejected
  double mu = 0.0;  // control parameter, (0, 10]
  int k = 8;        // scale exponent, [8, 20]

  void validate() const;  // throws key_error on out-of-range parameters
};

// The full secret material. key1/key2 shuffle the two primary digest copies,
// key3/key4 pick candidate pixel/plane, key5/key6 drive encrypt/permute.
// key7 is chosen by the GA at embed time: one byte per plane, stored packed
// (plane 1 in bits 0-7, plane 2 in 8-15, plane 3 in 16-23).
struct KeyChain {
  CcsKey key1, key2, key3, key4, key5, key6;
  std::uint32_t key7 = 0;
  int key7_planes = 0;  // 0 until embed fills it in (1 gray, 3 color)

  std::uint8_t key7_byte(int plane) const {
    return static_cast<std::uint8_t>(key7 >> (8 * plane));
  }
};

struct key_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One raw application of the CCS map. Exposed for pinning the recurrence.
double ccs_step(double x, double mu, int k);

// n outputs in [0,1) after a 1000-iteration burn-in. Rejects keys whose orbit
// hits an exact fixed point within the first 64 iterations (constant streams
// would void every security property downstream).
std::vector<double> ccs_sequence(const CcsKey& key, std::size_t n);

// Logistic map step, x in [0,1], mu in (0,4].
double logistic_next(double x, double mu);

// Argsort of seq, ascending, ties by index. perm[i] = source index of slot i.
std::vector<std::uint32_t> permutation_from_sequence(const std::vector<double>& seq);

std::vector<std::uint32_t> invert_permutation(const std::vector<std::uint32_t>& perm);

// out[i] = (floor(seq[i] * 1e14) mod modulus) + offset, exact integer math.
std::vector<std::uint32_t> derive_integers(const std::vector<double>& seq,
                                           std::uint32_t modulus, std::uint32_t offset);

// chi_i = (chi_{i-1} * k mod n) + 1 starting from chi_0 = n, as a 0-based
// permutation. Throws if the (k, n) pair does not generate a bijection.
std::vector<std::uint32_t> simple_mapping(unsigned k, unsigned n);

// Key file: line-oriented "name = value", reals at 17 significant digits,
// key7 in hex. Round-trips bit-exactly.
std::string keychain_to_text(const KeyChain& keys);
KeyChain keychain_from_text(const std::string& text);
void save_keychain(const std::string& path, const KeyChain& keys);
KeyChain load_keychain(const std::string& path);

// Deterministic keygen within CcsKey ranges; degenerate orbits are re-drawn.
KeyChain generate_keychain(std::uint64_t seed);

}  // namespace trlg
