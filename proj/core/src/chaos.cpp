#include "trlg/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "trlg/detmath.hpp"
#include "trlg/rng.hpp"

namespace trlg {

namespace {
constexpr int kBurnIn = 1000;
constexpr int kDegenerateWindow = 64;
constexpr double kScale14 = 1e14;
}  // namespace

void CcsKey::validate() const {
  if (!(x0 > -1.0 && x0 < 1.0)) throw key_error("ccs: x0 must lie strictly inside (-1, 1)");
  if (!(mu > 0.0 && mu <= 10.0)) throw key_error("ccs: mu must lie in (0, 10]");
  if (k < 8 || k > 20) throw key_error("ccs: k must lie in [8, 20]");
}

double ccs_step(double x, double mu, int k) {
  double g = detmath::cos((mu + 1.0) * detmath::acos(x));
  double v = std::ldexp(g, k);  // g * 2^k, exact
  return v - std::floor(v);
}

double logistic_next(double x, double mu) {
  if (!(x >= 0.0 && x <= 1.0)) throw key_error("logistic: x must lie in [0, 1]");
  if (!(mu > 0.0 && mu <= 4.0)) throw key_error("logistic: mu must lie in (0, 4]");
  return mu * x * (1.0 - x);
}

std::vector<double> ccs_sequence(const CcsKey& key, std::size_t n) {
  key.validate();
  if (n == 0) throw key_error("ccs: sequence length must be >= 1");
  double x = key.x0;
  for (int i = 0; i < kDegenerateWindow; ++i) {
    double next = ccs_step(x, key.mu, key.k);
    if (next == x) throw key_error("ccs: orbit collapsed to a fixed point; pick another key");
    x = next;
  }
  for (int i = kDegenerateWindow; i < kBurnIn; ++i) x = ccs_step(x, key.mu, key.k);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    x = ccs_step(x, key.mu, key.k);
    out[i] = x;
  }
  return out;
}

std::vector<std::uint32_t> permutation_from_sequence(const std::vector<double>& seq) {
  std::vector<std::uint32_t> perm(seq.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::uint32_t a, std::uint32_t b) { return seq[a] < seq[b]; });
  return perm;
}

std::vector<std::uint32_t> invert_permutation(const std::vector<std::uint32_t>& perm) {
  std::vector<std::uint32_t> inv(perm.size());
  for (std::uint32_t i = 0; i < perm.size(); ++i) inv[perm[i]] = i;
  return inv;
}

std::vector<std::uint32_t> derive_integers(const std::vector<double>& seq,
                                           std::uint32_t modulus, std::uint32_t offset) {
  if (modulus == 0) throw key_error("derive_integers: modulus must be >= 1");
  std::vector<std::uint32_t> out(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    // seq values are in [0,1), so the product stays below 1e14 < 2^53 and
    // converts to uint64 exactly.
    auto v = static_cast<std::uint64_t>(std::floor(seq[i] * kScale14));
    out[i] = static_cast<std::uint32_t>(v % modulus) + offset;
  }
  return out;
}

std::vector<std::uint32_t> simple_mapping(unsigned k, unsigned n) {
  if (n == 0) throw key_error("simple_mapping: n must be >= 1");
  std::vector<std::uint32_t> map(n);
  std::vector<bool> seen(n, false);
  unsigned chi = n;
  for (unsigned i = 0; i < n; ++i) {
    chi = (chi * k) % n + 1;
    map[i] = chi - 1;
    if (seen[chi - 1])
      throw key_error("simple_mapping: (k, n) pair does not generate a bijection");
    seen[chi - 1] = true;
  }
  return map;
}

std::string keychain_to_text(const KeyChain& keys) {
  std::ostringstream os;
  auto emit = [&](const char* name, const CcsKey& k) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s = %.17g %.17g %d\n", name, k.x0, k.mu, k.k);
    os << buf;
  };
  emit("key1", keys.key1);
  emit("key2", keys.key2);
  emit("key3", keys.key3);
  emit("key4", keys.key4);
  emit("key5", keys.key5);
  emit("key6", keys.key6);
  if (keys.key7_planes > 0) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "key7 = %06x %d\n", keys.key7, keys.key7_planes);
    os << buf;
  }
  return os.str();
}

KeyChain keychain_from_text(const std::string& text) {
  KeyChain keys;
  bool have[6] = {};
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string name, eq;
    ls >> name >> eq;
    if (eq != "=") throw key_error("key file: malformed line: " + line);
    if (name == "key7") {
      std::string hex;
      int planes = 0;
      ls >> hex >> planes;
      keys.key7 = static_cast<std::uint32_t>(std::stoul(hex, nullptr, 16));
      keys.key7_planes = planes;
      if (planes != 1 && planes != 3) throw key_error("key file: key7 plane count must be 1 or 3");
      continue;
    }
    CcsKey k;
    if (!(ls >> k.x0 >> k.mu >> k.k)) throw key_error("key file: malformed triple: " + line);
    k.validate();
    if (name == "key1") keys.key1 = k, have[0] = true;
    else if (name == "key2") keys.key2 = k, have[1] = true;
    else if (name == "key3") keys.key3 = k, have[2] = true;
    else if (name == "key4") keys.key4 = k, have[3] = true;
    else if (name == "key5") keys.key5 = k, have[4] = true;
    else if (name == "key6") keys.key6 = k, have[5] = true;
    else throw key_error("key file: unknown field: " + name);
  }
  for (bool h : have)
    if (!h) throw key_error("key file: missing one of key1..key6");
  return keys;
}

void save_keychain(const std::string& path, const KeyChain& keys) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw key_error("cannot write key file: " + path);
  f << keychain_to_text(keys);
}

KeyChain load_keychain(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw key_error("cannot read key file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return keychain_from_text(os.str());
}

namespace {

CcsKey draw_key(SplitMix64& rng) {
  for (;;) {
    CcsKey k;
    k.x0 = rng.unit() * 1.998 - 0.999;
    k.mu = 1.0 + rng.unit() * 9.0;
    k.k = 8 + static_cast<int>(rng.below(13));
    try {
      ccs_sequence(k, 1);
      return k;
    } catch (const key_error&) {
      // degenerate orbit, draw again
    }
  }
}

}  // namespace

KeyChain generate_keychain(std::uint64_t seed) {
  SplitMix64 rng(seed);
  KeyChain keys;
  keys.key1 = draw_key(rng);
  keys.key2 = draw_key(rng);
  keys.key3 = draw_key(rng);
  keys.key4 = draw_key(rng);
  keys.key5 = draw_key(rng);
  keys.key6 = draw_key(rng);
  return keys;
}

}  // namespace trlg
