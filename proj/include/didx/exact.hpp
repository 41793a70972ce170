#ifndef DIDX_EXACT_HPP
#define DIDX_EXACT_HPP

#include <cstdint>

// Exact integer arithmetic around the level-length sequence ell_e = (4/3)^e.
// Pause decisions sit right at the threshold, so everything here avoids
// floating point.

namespace didx::exact {

// floor((4/3)^e), saturated at `sat`
std::uint64_t ell_floor(std::uint32_t e, std::uint64_t sat);

// floor(8 * (4/3)^e), saturated at `sat`
std::uint64_t alpha_floor(std::uint32_t e, std::uint64_t sat);

// smallest e >= 0 with (4/3)^e >= x (x >= 1)
std::uint32_t log43_ceil(std::uint64_t x);

// largest e >= 0 with (4/3)^e <= n*den/num; 0 if n*den < num
std::uint32_t log43_floor_ratio(std::uint64_t n, std::uint64_t num, std::uint64_t den);

// size < 1 + 4n/ell_e, evaluated exactly
bool level_size_ok(std::uint64_t size, std::uint64_t n, std::uint32_t e);

// count < 2 + (4L-4)/ell_e, evaluated exactly
bool sparsity_ok(std::uint64_t count, std::uint64_t interval_len, std::uint32_t e);

// exponent of ell for level k >= 1: ceil(k/2) - 1
inline std::uint32_t level_exponent(std::uint32_t k) { return (k + 1) / 2 - 1; }

}  // namespace didx::exact

#endif
