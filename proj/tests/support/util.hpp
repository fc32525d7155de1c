// Deterministic randomness helpers for the test suite.  std::mt19937_64 is
// fully specified by the standard; the bounded mapping avoids the
// implementation-defined std distributions so sequences are stable anywhere.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <stray/text.hpp>

namespace testutil {

inline std::uint32_t bounded(std::mt19937_64& g, std::uint32_t n) {
  return static_cast<std::uint32_t>(
      (static_cast<unsigned __int128>(g()) * n) >> 64);
}

inline std::vector<stray::RawSymbol> random_raw(std::uint64_t seed, std::uint32_t n,
                                                std::uint32_t sigma) {
  std::mt19937_64 g(seed);
  std::vector<stray::RawSymbol> out(n);
  for (auto& s : out) s = 1 + bounded(g, sigma);
  return out;
}

inline stray::Text random_text(std::uint64_t seed, std::uint32_t n,
                               std::uint32_t sigma) {
  return stray::Text::encode(random_raw(seed, n, sigma));
}

// Raw bytes of a string, for readable literals in tests.
inline std::vector<stray::RawSymbol> bytes(const char* s) {
  std::vector<stray::RawSymbol> out;
  for (; *s; ++s) out.push_back(static_cast<unsigned char>(*s));
  return out;
}

inline stray::Text text_of(const char* s) { return stray::Text::encode(bytes(s)); }

}  // namespace testutil
