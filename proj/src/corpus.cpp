#include "didx/corpus.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "didx/common.hpp"

namespace didx {

std::string gen_fibonacci(std::uint32_t k) {
  if (k == 0) throw std::invalid_argument("fibonacci index must be >= 1");
  std::string prev = "b", cur = "a";  // F_1, F_2
  if (k == 1) return prev;
  for (std::uint32_t i = 3; i <= k; ++i) {
    std::string next = cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::string gen_thue_morse(std::uint32_t k) {
  std::string s = "a";
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::size_t len = s.size();
    for (std::size_t j = 0; j < len; ++j) s.push_back(s[j] == 'a' ? 'b' : 'a');
  }
  return s;
}

std::string gen_unary(std::uint64_t n) { return std::string(n, 'a'); }

std::string gen_random(std::uint64_t n, std::uint32_t sigma, std::uint64_t seed) {
  if (sigma == 0 || sigma > 26) throw std::invalid_argument("sigma must be in [1..26]");
  Rng rng(seed, /*stream=*/7);
  std::string s(n, 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng.below(sigma));
  return s;
}

std::string gen_mutated_repeat(std::uint64_t unit_len, std::uint64_t copies,
                               double mutation_rate, std::uint64_t seed) {
  Rng rng(seed, /*stream=*/8);
  std::string unit(unit_len, 'a');
  for (auto& c : unit) c = static_cast<char>('a' + rng.below(4));
  std::string s;
  s.reserve(unit_len * copies);
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(mutation_rate * 1e9);  // per-char probability
  for (std::uint64_t i = 0; i < copies; ++i)
    for (char c : unit)
      s.push_back(rng.below(1000000000ull) < threshold
                      ? static_cast<char>('a' + rng.below(4))
                      : c);
  return s;
}

std::string generate_corpus(const std::string& spec) {
  const auto open = spec.find('(');
  if (open == std::string::npos || spec.back() != ')')
    throw std::invalid_argument("bad corpus spec: " + spec);
  const std::string name = spec.substr(0, open);
  const std::string body = spec.substr(open + 1, spec.size() - open - 2);
  std::vector<std::string> args;
  std::stringstream ss(body);
  std::string tok;
  while (std::getline(ss, tok, ',')) args.push_back(tok);
  auto u64 = [&](std::size_t i) { return std::stoull(args.at(i)); };

  if (name == "fibonacci") return gen_fibonacci(static_cast<std::uint32_t>(u64(0)));
  if (name == "thue_morse") return gen_thue_morse(static_cast<std::uint32_t>(u64(0)));
  if (name == "unary") return gen_unary(u64(0));
  if (name == "random")
    return gen_random(u64(0), static_cast<std::uint32_t>(u64(1)), u64(2));
  if (name == "mutated_repeat")
    return gen_mutated_repeat(u64(0), u64(1), std::stod(args.at(2)), u64(3));
  if (name == "file") {
    std::ifstream in(body, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + body);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  }
  throw std::invalid_argument("unknown corpus generator: " + name);
}

std::vector<std::uint64_t> naive_locate(std::string_view s, std::string_view p) {
  std::vector<std::uint64_t> out;
  if (p.empty() || p.size() > s.size()) return out;
  for (std::size_t pos = s.find(p, 0); pos != std::string_view::npos;
       pos = s.find(p, pos + 1))
    out.push_back(pos + 1);
  return out;
}

}  // namespace didx
