// Binary index files and the loaded query bundle.
//
// A file stores the encoded text (dense ranks plus the rank -> raw rename
// table) and the suffix array; everything else — LCP, range minima, the
// suffix tree, the tray classification — is rebuilt deterministically on
// load, and the stored suffix array doubles as an integrity check against
// the freshly rebuilt one.  All integers are little-endian.
//
// Layout: magic "STRAY1" | mode u8 | n u64 | sigma u32
//         | rename sigma*u64 | symbols n*u32 | suffix array (n+1)*u32
#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "suffix_array.hpp"
#include "suffix_tray.hpp"
#include "suffix_tree.hpp"
#include "text.hpp"

namespace stray {

enum class TextMode : std::uint8_t { kByte = 0, kToken = 1 };

class IndexFormatError : public std::runtime_error {
 public:
  explicit IndexFormatError(const std::string& what)
      : std::runtime_error(what) {}
};

// A loaded index: the text plus every structure rebuilt over it.  The
// members reference each other, so the bundle lives on the heap and never
// moves.
struct TrayIndex {
  TextMode mode;
  Text text;
  SuffixArrayIndex sa;
  SuffixTree tree;
  SuffixTray tray;

  TrayIndex(TextMode m, Text t)
      : mode(m), text(std::move(t)), sa(text), tree(sa), tray(tree) {}
  TrayIndex(const TrayIndex&) = delete;
  TrayIndex& operator=(const TrayIndex&) = delete;
};

namespace detail {

inline void put_bytes(std::ostream& out, std::uint64_t v, int width) {
  for (int i = 0; i < width; ++i) out.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t take_bytes(std::istream& in, int width) {
  std::uint64_t v = 0;
  for (int i = 0; i < width; ++i) {
    int c = in.get();
    if (c == std::char_traits<char>::eof())
      throw IndexFormatError("index file truncated");
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(c)) << (8 * i);
  }
  return v;
}

inline constexpr char kMagic[6] = {'S', 'T', 'R', 'A', 'Y', '1'};

}  // namespace detail

inline void save_index(std::ostream& out, const Text& text,
                       const SuffixArrayIndex& sa, TextMode mode) {
  out.write(detail::kMagic, sizeof detail::kMagic);
  detail::put_bytes(out, static_cast<std::uint64_t>(mode), 1);
  detail::put_bytes(out, text.size(), 8);
  detail::put_bytes(out, text.sigma(), 4);
  for (Symbol r = 1; r <= text.sigma(); ++r)
    detail::put_bytes(out, text.alphabet().raw_of(r), 8);
  const std::vector<Symbol> fwd = text.forward();
  for (std::uint32_t i = 0; i < text.size(); ++i) detail::put_bytes(out, fwd[i], 4);
  for (std::uint32_t a : sa.sa()) detail::put_bytes(out, a, 4);
  if (!out) throw IndexFormatError("index write failed");
}

inline void save_index(const std::string& path, const Text& text,
                       const SuffixArrayIndex& sa, TextMode mode) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IndexFormatError("cannot open " + path + " for writing");
  save_index(out, text, sa, mode);
}

inline std::unique_ptr<TrayIndex> load_index(std::istream& in) {
  char magic[sizeof detail::kMagic];
  in.read(magic, sizeof magic);
  if (!in || !std::equal(magic, magic + sizeof magic, detail::kMagic))
    throw IndexFormatError("not an index file (bad magic)");
  const std::uint64_t mode_byte = detail::take_bytes(in, 1);
  if (mode_byte > 1) throw IndexFormatError("unknown text mode");
  const std::uint64_t n = detail::take_bytes(in, 8);
  if (n > 0xfffffffeull) throw IndexFormatError("text too large");
  const std::uint32_t sigma = static_cast<std::uint32_t>(detail::take_bytes(in, 4));
  if (sigma > n) throw IndexFormatError("alphabet larger than the text");

  std::vector<RawSymbol> rename(sigma);
  for (std::uint32_t i = 0; i < sigma; ++i) {
    rename[i] = detail::take_bytes(in, 8);
    if (rename[i] == 0 || (i > 0 && rename[i] <= rename[i - 1]))
      throw IndexFormatError("rename table not strictly increasing");
  }

  std::vector<RawSymbol> raws(static_cast<std::size_t>(n));
  for (auto& r : raws) {
    std::uint64_t rank = detail::take_bytes(in, 4);
    if (rank == 0 || rank > sigma) throw IndexFormatError("symbol rank out of range");
    r = rename[static_cast<std::size_t>(rank - 1)];
  }

  std::vector<std::uint32_t> stored_sa(static_cast<std::size_t>(n) + 1);
  for (auto& a : stored_sa) a = static_cast<std::uint32_t>(detail::take_bytes(in, 4));
  if (in.peek() != std::char_traits<char>::eof())
    throw IndexFormatError("trailing bytes after index payload");

  // ranks are assigned in sorted raw order, matching the rename table
  auto idx = std::make_unique<TrayIndex>(static_cast<TextMode>(mode_byte),
                                         Text::encode(raws, 0));
  if (idx->text.sigma() != sigma)
    throw IndexFormatError("rename table disagrees with the symbols");
  if (idx->sa.sa() != stored_sa)
    throw IndexFormatError("stored suffix array disagrees with the text");
  return idx;
}

inline std::unique_ptr<TrayIndex> load_index(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IndexFormatError("cannot open " + path);
  return load_index(in);
}

}  // namespace stray
