#ifndef DIDX_EXTRACTION_HPP
#define DIDX_EXTRACTION_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "didx/rlslp.hpp"

namespace didx {

struct Fingerprint {
  std::uint64_t value = 0;
  std::uint64_t len = 0;

  bool operator==(const Fingerprint&) const = default;
};

// Bounded substring extraction and Karp-Rabin fingerprints over the grammar.
// Modulus is the Mersenne prime 2^61-1; the base is drawn from the index seed.
class Extractor {
 public:
  static constexpr std::uint64_t kMod = (1ull << 61) - 1;

  Extractor() = default;
  Extractor(const Rlslp& g, std::uint64_t seed);

  std::uint64_t base() const { return base_; }
  std::uint64_t seed() const { return seed_; }

  // exp(a)[0..min(l,|exp(a)|)) and the symmetric suffix
  std::string extract_prefix(SymbolId a, std::uint64_t l) const;
  std::string extract_suffix(SymbolId a, std::uint64_t l) const;

  // exp(a)[start..start+len), 0-based; caller guarantees the range is valid
  void extract_range(SymbolId a, std::uint64_t start, std::uint64_t len,
                     std::string& out) const;

  // S[i..j], 1-based inclusive
  std::string extract_substring(std::uint64_t i, std::uint64_t j) const;

  std::uint8_t char_at(SymbolId a, std::uint64_t pos) const;

  // fingerprint of exp(a)[start..start+len); reversed reads right to left
  Fingerprint fingerprint_range(SymbolId a, std::uint64_t start, std::uint64_t len,
                                bool reversed = false) const;

  // fingerprint of S[i..j], 1-based inclusive
  Fingerprint fingerprint_substring(std::uint64_t i, std::uint64_t j) const;

  Fingerprint fingerprint_of(std::string_view s) const;  // direct, for oracles

  Fingerprint concat(const Fingerprint& a, const Fingerprint& b) const;

  Fingerprint symbol_fingerprint(SymbolId a, bool reversed = false) const {
    return {reversed ? fp_rev_[a] : fp_fwd_[a], g_->exp_len[a]};
  }

  // fp of exp(A_1)^t for a cached symbol; used by run handling and callers
  // that reason about repeated blocks
  Fingerprint power(const Fingerprint& f, std::uint64_t times) const;

 private:
  const Rlslp* g_ = nullptr;
  std::uint64_t seed_ = 0;
  std::uint64_t base_ = 0;
  std::uint64_t base_inv_ = 0;
  std::vector<std::uint64_t> fp_fwd_, fp_rev_, bpow_;   // per symbol
  std::vector<std::vector<std::uint64_t>> child_off_;   // per block rule, child end offsets
  // cumulative child fingerprints per block rule, aligned with child_off_:
  // cpfx_fwd_[r][c] = fp(exp(A_1..A_{c+1})), cpfx_rev_[r][c] = fp of its reverse
  std::vector<std::vector<std::uint64_t>> cpfx_fwd_, cpfx_rev_;

  std::uint64_t pow_base(std::uint64_t e) const;
  std::uint64_t pow_base_inv(std::uint64_t e) const;
  void check_range(std::uint64_t i, std::uint64_t j) const;
};

}  // namespace didx

#endif
