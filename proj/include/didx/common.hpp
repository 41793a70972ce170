#ifndef DIDX_COMMON_HPP
#define DIDX_COMMON_HPP

#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

namespace didx {

using SymbolId = std::uint32_t;
inline constexpr SymbolId kInvalidSymbol = std::numeric_limits<SymbolId>::max();

// splitmix64 finalizer
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based generator: output is a pure function of (seed, stream, counter),
// so every stream is reproducible regardless of platform or call interleaving.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix64(seed + 0x9e3779b97f4a7c15ull * (stream + 1)) | 1), ctr_(0) {}

  std::uint64_t next() { return mix64(key_ + 0x9e3779b97f4a7c15ull * ++ctr_); }

  // uniform in [0..bound), bound >= 1
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t lim = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= lim);
    return r % bound;
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t key_;
  std::uint64_t ctr_;
};

struct Fraction {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  Fraction normalized() const {
    std::uint64_t g = std::gcd(num, den);
    return g ? Fraction{num / g, den / g} : *this;
  }

  // a/b < c/d without overflow concerns at our scales (num, den <= 2^32)
  bool less_than(const Fraction& o) const {
    return static_cast<unsigned __int128>(num) * o.den <
           static_cast<unsigned __int128>(o.num) * den;
  }
};

}  // namespace didx

#endif
