#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "didx/corpus.hpp"
#include "didx/exact.hpp"
#include "didx/index.hpp"
#include "didx/measures.hpp"

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string load_pattern(const std::string& pattern, const std::string& pattern_file) {
  if (!pattern_file.empty()) return read_file(pattern_file);
  return pattern;
}

didx::QueryOptions query_opts(const std::string& cuts) {
  didx::QueryOptions opts;
  opts.cuts = cuts == "exhaustive" ? didx::CutMode::Exhaustive : didx::CutMode::Mcut;
  return opts;
}

int cmd_build(const std::string& input, const std::string& out, std::uint64_t seed,
              bool no_cap, std::uint32_t retries, std::uint32_t trie_len) {
  const std::string text = read_file(input);
  if (text.empty()) {
    std::cerr << "input text is empty\n";
    return 2;
  }
  didx::IndexConfig cfg;
  cfg.seed = seed;
  cfg.cap_height = !no_cap;
  cfg.retries = retries;
  cfg.trie_len = trie_len;
  const auto t0 = std::chrono::steady_clock::now();
  didx::Index ix = didx::build_index(text, cfg);
  const auto t1 = std::chrono::steady_clock::now();
  didx::save_index_file(ix, out);
  std::cout << "n=" << ix.text_len() << " sigma=" << ix.sigma_used
            << " delta=" << ix.delta.num << "/" << ix.delta.den
            << " g=" << ix.grammar.grammar_size() << " bound_term=" << ix.bound_term
            << " build_ms="
            << std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count()
            << "\n";
  if (ix.retry_warning) std::cerr << "warning: retry budget exhausted above size threshold\n";
  return 0;
}

int cmd_locate(const std::string& index_path, const std::string& pattern,
               const std::string& pattern_file, const std::string& cuts) {
  const didx::Index ix = didx::load_index_file(index_path);
  const std::string p = load_pattern(pattern, pattern_file);
  for (std::uint64_t pos : ix.locate(p, query_opts(cuts))) std::cout << pos << "\n";
  return 0;
}

int cmd_count(const std::string& index_path, const std::string& pattern,
              const std::string& pattern_file, const std::string& cuts) {
  const didx::Index ix = didx::load_index_file(index_path);
  const std::string p = load_pattern(pattern, pattern_file);
  std::cout << ix.count(p, query_opts(cuts)) << "\n";
  return 0;
}

int cmd_stats(const std::string& index_path, const std::string& text_path) {
  json j;
  if (!text_path.empty()) {
    const std::string text = read_file(text_path);
    const didx::ComplexityProfile prof = didx::substring_complexity(text);
    j["n"] = prof.n;
    j["sigma_used"] = prof.sigma_used;
    j["delta"] = {{"num", prof.delta.num}, {"den", prof.delta.den},
                  {"value", prof.delta.value()}};
    j["d_profile_head"] = std::vector<std::uint64_t>(
        prof.d.begin(), prof.d.begin() + std::min<std::size_t>(prof.d.size(), 16));
    const auto [lhs, rhs] = didx::fact_sum_check(prof);
    j["fact_sum"] = {{"lhs", lhs}, {"rhs", rhs}, {"holds", lhs <= rhs}};
    j["bound_term"] = didx::delta_bound_term(prof.n, prof.sigma_used, prof.delta);

    didx::CompressorConfig cc;
    cc.delta = prof.delta;
    cc.keep_levels = true;
    cc.bound_term = j["bound_term"].get<double>();
    const didx::CompressResult res = didx::compress(text, cc);
    j["g"] = res.grammar.grammar_size();
    j["kappa"] = res.trace.kappa;
    j["lambda"] = res.trace.lambda;
    j["level_count"] = res.trace.level_count;
    json levels = json::array();
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < res.trace.level_sizes.size(); ++k) {
      const std::uint64_t size = res.trace.level_sizes[k];
      total += size;
      levels.push_back(
          {{"k", k},
           {"size", size},
           {"size_ok", k == 0 || didx::exact::level_size_ok(
                                     size, prof.n,
                                     didx::exact::level_exponent(static_cast<std::uint32_t>(k + 1)))}});
    }
    j["levels"] = levels;
    j["level_size_total"] = total;
  } else {
    const didx::Index ix = didx::load_index_file(index_path);
    j["n"] = ix.text_len();
    j["sigma"] = ix.grammar.sigma;
    j["sigma_used"] = ix.sigma_used;
    j["g"] = ix.grammar.grammar_size();
    j["rules"] = ix.grammar.rules.size();
    j["delta"] = {{"num", ix.delta.num}, {"den", ix.delta.den}, {"value", ix.delta.value()}};
    j["bound_term"] = ix.bound_term;
    j["level_count"] = ix.level_count;
    j["capped"] = ix.capped;
    j["attempts"] = ix.attempts;
    j["retry_warning"] = ix.retry_warning;
    j["grid_points"] = ix.grid.points.size();
    j["trie_len"] = ix.trie.max_len();
    j["trie_nodes"] = ix.trie.node_count();
  }
  std::cout << j.dump(2) << "\n";
  return 0;
}

int cmd_verify(const std::string& index_path, const std::string& text_path,
               std::uint64_t patterns, std::uint64_t max_m, std::uint64_t seed) {
  const didx::Index ix = didx::load_index_file(index_path);
  const std::string text = read_file(text_path);
  if (text.size() != ix.text_len()) {
    std::cerr << "text/index length mismatch\n";
    return 1;
  }
  didx::Rng rng(seed, /*stream=*/11);
  std::string alphabet;
  {
    bool present[256] = {};
    for (char c : text) present[static_cast<unsigned char>(c)] = true;
    for (int c = 0; c < 256; ++c)
      if (present[c]) alphabet.push_back(static_cast<char>(c));
  }
  std::uint64_t mismatches = 0;
  for (std::uint64_t i = 0; i < patterns; ++i) {
    const std::uint64_t m =
        1 + rng.below(std::min<std::uint64_t>(max_m, text.size()));
    std::string p;
    if (i % 2 == 0) {  // planted
      const std::uint64_t pos = rng.below(text.size() - m + 1);
      p = text.substr(pos, m);
    } else {
      p.resize(m);
      for (auto& c : p) c = alphabet[rng.below(alphabet.size())];
    }
    const auto expect = didx::naive_locate(text, p);
    const auto got = ix.locate(p);
    const auto got_ex = ix.locate(p, query_opts("exhaustive"));
    const std::uint64_t cnt = ix.count(p);
    if (got != expect || got_ex != expect || cnt != expect.size()) {
      ++mismatches;
      if (mismatches <= 5)
        std::cerr << "mismatch on pattern of length " << m << " (sample " << i << ")\n";
    }
  }
  std::cout << "patterns: " << patterns << "\n";
  std::cout << "mismatches: " << mismatches << "\n";
  std::cout << "duplicates: " << ix.stats.duplicates << "\n";
  return mismatches == 0 && ix.stats.duplicates == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"grammar-compressed full-text index"};
  app.require_subcommand(1);

  std::string input, output, index_path, pattern, pattern_file, cuts = "mcut", text_path,
              spec;
  std::uint64_t seed = 0, patterns = 1000, max_m = 256;
  std::uint32_t retries = 5, trie_len = 0;
  bool no_cap = false;

  auto* build = app.add_subcommand("build", "build an index from a text file");
  build->add_option("input", input)->required();
  build->add_option("-o,--out", output)->required();
  build->add_option("--seed", seed);
  build->add_flag("--no-cap", no_cap, "do not cap the parse height");
  build->add_option("--retries", retries);
  build->add_option("--trie-len", trie_len, "short-pattern trie depth (0 = auto)");

  auto add_query_opts = [&](CLI::App* cmd) {
    cmd->add_option("index", index_path)->required();
    cmd->add_option("pattern", pattern);
    cmd->add_option("--pattern-file", pattern_file);
    cmd->add_option("--cuts", cuts)->check(CLI::IsMember({"mcut", "exhaustive"}));
  };
  auto* locate = app.add_subcommand("locate", "list pattern occurrences");
  add_query_opts(locate);
  auto* count = app.add_subcommand("count", "count pattern occurrences");
  add_query_opts(count);

  auto* stats = app.add_subcommand("stats", "emit metrics as JSON");
  stats->add_option("index", index_path);
  stats->add_option("--text", text_path);

  auto* verify = app.add_subcommand("verify", "compare queries against a naive scan");
  verify->add_option("index", index_path)->required();
  verify->add_option("--text", text_path)->required();
  verify->add_option("--patterns", patterns);
  verify->add_option("--max-m", max_m);
  verify->add_option("--seed", seed);

  auto* gen = app.add_subcommand("gen", "write a generated corpus file");
  gen->add_option("spec", spec)->required();
  gen->add_option("-o,--out", output)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (build->parsed()) return cmd_build(input, output, seed, no_cap, retries, trie_len);
    if (locate->parsed()) {
      if (pattern.empty() && pattern_file.empty()) {
        std::cerr << "pattern or --pattern-file required\n";
        return 2;
      }
      return cmd_locate(index_path, pattern, pattern_file, cuts);
    }
    if (count->parsed()) {
      if (pattern.empty() && pattern_file.empty()) {
        std::cerr << "pattern or --pattern-file required\n";
        return 2;
      }
      return cmd_count(index_path, pattern, pattern_file, cuts);
    }
    if (stats->parsed()) {
      if (index_path.empty() && text_path.empty()) {
        std::cerr << "index or --text required\n";
        return 2;
      }
      return cmd_stats(index_path, text_path);
    }
    if (verify->parsed()) return cmd_verify(index_path, text_path, patterns, max_m, seed);
    if (gen->parsed()) {
      const std::string text = didx::generate_corpus(spec);
      std::ofstream out(output, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open " + output);
      out.write(text.data(), static_cast<std::streamsize>(text.size()));
      std::cout << "wrote " << text.size() << " bytes\n";
      return 0;
    }
  } catch (const didx::FormatError& e) {
    std::cerr << "format error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
