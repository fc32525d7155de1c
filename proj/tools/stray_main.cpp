// stray — command-line front end: build and query suffix-tray index files,
// grow an online index from a stream of prepended symbols, and benchmark
// query costs across the structures.
//
// Exit codes: 0 success / match found, 1 no match, 2 usage or format error.
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stray/index_io.hpp"
#include "stray/suffix_array.hpp"
#include "stray/suffix_tray.hpp"
#include "stray/suffix_tree.hpp"
#include "stray/suffix_trist.hpp"
#include "stray/text.hpp"

namespace {

using namespace stray;

// Byte mode stores each input byte as raw value byte+1 so that NUL bytes
// remain representable (raw symbols must be positive).
std::vector<RawSymbol> raws_of_bytes(const std::string& s) {
  std::vector<RawSymbol> out;
  out.reserve(s.size());
  for (unsigned char c : s) out.push_back(static_cast<RawSymbol>(c) + 1);
  return out;
}

// Token mode reads whitespace-separated positive decimals.
std::optional<std::vector<RawSymbol>> raws_of_tokens(const std::string& s) {
  std::vector<RawSymbol> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) {
    RawSymbol v = 0;
    for (char c : tok) {
      if (c < '0' || c > '9') return std::nullopt;
      if (v > (UINT64_MAX - static_cast<RawSymbol>(c - '0')) / 10) return std::nullopt;
      v = v * 10 + static_cast<RawSymbol>(c - '0');
    }
    if (tok.empty() || v == 0) return std::nullopt;
    out.push_back(v);
  }
  return out;
}

std::optional<std::vector<RawSymbol>> parse_raws(const std::string& s, TextMode mode) {
  if (mode == TextMode::kByte) return raws_of_bytes(s);
  return raws_of_tokens(s);
}

void print_report(const Text& text, const SuffixTray& tray) {
  auto st = tray.stats();
  std::printf("n=%u sigma=%u branching=%u nonbranching=%u sigmaleaf=%u\n",
              text.size(), text.sigma(), st.branching, st.nonbranching,
              st.sigma_leaves);
}

// Occurrence positions, front-anchored and ascending; the sentinel-only
// match (position n+1) is dropped so the empty pattern reports 1..n.
std::vector<std::uint32_t> real_positions(std::vector<std::uint32_t> pos,
                                          std::uint32_t n) {
  std::erase_if(pos, [n](std::uint32_t p) { return p > n; });
  std::sort(pos.begin(), pos.end());
  return pos;
}

int print_match(const std::vector<std::uint32_t>& pos, bool all) {
  if (pos.empty()) {
    std::printf("NOMATCH\n");
    return 1;
  }
  if (all) {
    for (std::size_t i = 0; i < pos.size(); ++i)
      std::printf("%s%u", i ? " " : "", pos[i]);
    std::printf("\n");
  } else {
    std::printf("%u\n", pos.front());
  }
  return 0;
}

int cmd_build(const std::string& input, const std::string& output, TextMode mode) {
  std::ifstream in(input, std::ios::binary);
  if (!in) {
    std::fprintf(stderr, "error: cannot open %s\n", input.c_str());
    return 2;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  auto raws = parse_raws(buf.str(), mode);
  if (!raws) {
    std::fprintf(stderr, "error: %s holds malformed tokens\n", input.c_str());
    return 2;
  }
  Text text = Text::encode(*raws, 0);
  SuffixArrayIndex sa(text);
  try {
    save_index(output, text, sa, mode);
  } catch (const IndexFormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  SuffixTree tree(sa);
  SuffixTray tray(tree);
  print_report(text, tray);
  return 0;
}

int cmd_query(const std::string& index_path, const std::string& pattern,
              bool all, bool count_comparisons) {
  std::unique_ptr<TrayIndex> idx;
  try {
    idx = load_index(index_path);
  } catch (const IndexFormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  auto raws = parse_raws(pattern, idx->mode);
  if (!raws) {
    std::fprintf(stderr, "error: malformed pattern\n");
    return 2;
  }
  const std::vector<Symbol> pat = idx->text.encode_pattern(*raws);
  SuffixTray::QueryStats qs;
  auto iv = idx->tray.find(pat, &qs);
  std::vector<std::uint32_t> pos;
  if (iv) pos = real_positions(idx->sa.positions(*iv), idx->text.size());
  int rc = print_match(pos, all);
  if (count_comparisons)
    std::printf("comparisons %llu\n",
                static_cast<unsigned long long>(qs.symbol_comparisons));
  return rc;
}

int cmd_stats(const std::string& index_path) {
  try {
    auto idx = load_index(index_path);
    print_report(idx->text, idx->tray);
    return 0;
  } catch (const IndexFormatError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}

int cmd_stream(std::uint32_t sigma_hint, TextMode mode) {
  SuffixTrist trist(sigma_hint, /*validate=*/false);
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line == "!") {
      auto st = trist.stats();
      std::printf(
          "n=%u sigma=%u sigmaeff=%u branching=%u nonbranching=%u "
          "sigmaleaf=%u runs=%u members=%u\n",
          trist.text().size(), trist.text().sigma(), trist.sigma_eff(),
          st.branching, st.non_branching, st.sigma_leaves, st.run_objects,
          st.run_members);
    } else if (line.rfind("+ ", 0) == 0) {
      auto raws = parse_raws(line.substr(2), mode);
      if (!raws || raws->size() != 1) {
        std::printf("ERR parse\n");
        continue;
      }
      try {
        trist.extend(raws->front());
      } catch (const InvalidSymbol&) {
        std::printf("ERR parse\n");
      }
    } else if (line == "?" || line.rfind("? ", 0) == 0) {
      auto raws = parse_raws(line.size() > 1 ? line.substr(2) : "", mode);
      if (!raws) {
        std::printf("ERR parse\n");
        continue;
      }
      auto m = trist.query(trist.text().encode_pattern(*raws));
      print_match(real_positions(trist.occurrences(m), trist.text().size()),
                  /*all=*/false);
    } else {
      std::printf("ERR parse\n");
    }
    std::fflush(stdout);
  }
  return 0;
}

// Uniform draw below n without std distributions, so every platform and
// rerun sees the same sequence.
std::uint64_t bounded(std::mt19937_64& g, std::uint64_t n) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(g()) * n) >> 64);
}

std::string fixed2(std::uint64_t sum, std::uint64_t count) {
  std::uint64_t scaled = count ? sum * 100 / count : 0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%llu.%02llu",
                static_cast<unsigned long long>(scaled / 100),
                static_cast<unsigned long long>(scaled % 100));
  return buf;
}

int cmd_bench(const std::vector<std::uint32_t>& ns,
              const std::vector<std::uint32_t>& sigmas, std::uint32_t m,
              std::uint32_t queries, std::uint64_t seed) {
  std::printf("structure,n,sigma,m,mean_comparisons,p99_comparisons\n");
  for (std::uint32_t n : ns) {
    for (std::uint32_t sigma : sigmas) {
      std::mt19937_64 g(seed ^ (static_cast<std::uint64_t>(n) << 20) ^ sigma);
      std::vector<RawSymbol> raws(n);
      for (auto& r : raws) r = 1 + bounded(g, sigma);
      Text text = Text::encode(raws, 0);
      SuffixArrayIndex sa(text);
      SuffixTree tree(sa);
      SuffixTray tray(tree);
      SuffixTrist trist(sigma, /*validate=*/false);
      for (auto it = raws.rbegin(); it != raws.rend(); ++it) trist.extend(*it);

      const std::uint32_t plen = std::min(m, n);
      std::vector<std::vector<RawSymbol>> pats(queries);
      for (auto& p : pats) {
        std::uint32_t start =
            n > plen ? static_cast<std::uint32_t>(bounded(g, n - plen + 1)) : 0;
        p.assign(raws.begin() + start, raws.begin() + start + plen);
      }

      std::vector<std::vector<std::uint64_t>> cost(4);
      for (const auto& p : pats) {
        const std::vector<Symbol> pat = text.encode_pattern(p);
        SuffixTree::NavStats ns_tree;
        tree.navigate(pat, &ns_tree);
        cost[0].push_back(ns_tree.symbol_comparisons);
        SuffixArrayIndex::QueryStats qa, qt;
        sa.interval_search(pat, &qa);
        cost[1].push_back(qa.symbol_comparisons);
        tray.find(pat, &qt);
        cost[2].push_back(qt.symbol_comparisons);
        SuffixTrist::QueryStats qo;
        trist.query(trist.text().encode_pattern(p), &qo);
        cost[3].push_back(qo.symbol_comparisons);
      }

      static const char* kNames[4] = {"tree-navigate", "array-interval-search",
                                      "tray-query", "trist-query"};
      for (int s = 0; s < 4; ++s) {
        auto& v = cost[s];
        std::sort(v.begin(), v.end());
        std::uint64_t sum = 0;
        for (auto c : v) sum += c;
        std::uint64_t p99 = v.empty() ? 0 : v[(99 * v.size() + 99) / 100 - 1];
        std::printf("%s,%u,%u,%u,%s,%llu\n", kNames[s], n, sigma, m,
                    fixed2(sum, v.size()).c_str(),
                    static_cast<unsigned long long>(p99));
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"suffix-tray text index"};
  app.require_subcommand(1);

  std::string input, output, index_path, pattern;
  bool token = false, all = false, count_comparisons = false;
  std::uint32_t sigma_hint = 1, m = 32, queries = 200;
  std::uint64_t seed = 1;
  std::vector<std::uint32_t> ns, sigmas;

  auto* build = app.add_subcommand("build", "index a text file");
  build->add_option("--input", input)->required();
  build->add_option("--output", output)->required();
  build->add_flag("--token", token, "whitespace-separated decimal symbols");

  auto* query = app.add_subcommand("query", "search a built index");
  query->add_option("--index", index_path)->required();
  query->add_option("--pattern", pattern)->required();
  query->add_flag("--all", all, "print every occurrence");
  query->add_flag("--count-comparisons", count_comparisons);

  auto* stats = app.add_subcommand("stats", "describe a built index");
  stats->add_option("--index", index_path)->required();

  auto* stream = app.add_subcommand("stream", "grow an index by prepending");
  stream->add_option("--sigma-hint", sigma_hint)
      ->required()
      ->check(CLI::PositiveNumber);
  stream->add_flag("--token", token, "decimal symbols instead of bytes");

  auto* bench = app.add_subcommand("bench", "compare query costs");
  bench->add_option("--n", ns)->required()->delimiter(',');
  bench->add_option("--sigma", sigmas)->required()->delimiter(',');
  bench->add_option("--m", m);
  bench->add_option("--queries", queries);
  bench->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  const TextMode mode = token ? TextMode::kToken : TextMode::kByte;
  if (build->parsed()) return cmd_build(input, output, mode);
  if (query->parsed()) return cmd_query(index_path, pattern, all, count_comparisons);
  if (stats->parsed()) return cmd_stats(index_path);
  if (stream->parsed()) return cmd_stream(sigma_hint, mode);
  if (bench->parsed()) return cmd_bench(ns, sigmas, m, queries, seed);
  return 2;
}
