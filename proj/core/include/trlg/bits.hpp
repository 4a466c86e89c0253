#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace trlg {

// MSB-first bit stream over a byte-per-bit vector. Small and debuggable;
// watermark payloads are tiny compared to the images they ride in.
struct BitWriter {
  std::vector<std::uint8_t> bits;

  void put(std::uint32_t value, int n) {
    for (int i = n - 1; i >= 0; --i) bits.push_back(static_cast<std::uint8_t>((value >> i) & 1u));
  }
  void put_bit(std::uint8_t b) { bits.push_back(b & 1u); }
};

struct BitReader {
  const std::vector<std::uint8_t>* bits;
  std::size_t pos = 0;

  explicit BitReader(const std::vector<std::uint8_t>& b) : bits(&b) {}

  std::uint32_t get(int n) {
    std::uint32_t v = 0;
    for (int i = 0; i < n; ++i) v = (v << 1) | get_bit();
    return v;
  }
  std::uint8_t get_bit() {
    if (pos >= bits->size()) throw std::out_of_range("BitReader: exhausted");
    return (*bits)[pos++] & 1u;
  }
  std::size_t remaining() const { return bits->size() - pos; }
};

}  // namespace trlg
