#include <doctest.h>

#include <cstdint>
#include <initializer_list>
#include <tuple>

#include "didx/exact.hpp"

using namespace didx;

namespace {

using u128 = unsigned __int128;

u128 pow128(std::uint64_t b, std::uint32_t e) {
  u128 r = 1;
  for (std::uint32_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

TEST_CASE("ell_floor matches the integer definition of floor((4/3)^e)") {
  const std::uint64_t sat = UINT64_MAX;
  CHECK(exact::ell_floor(0, sat) == 1);
  CHECK(exact::ell_floor(1, sat) == 1);
  CHECK(exact::ell_floor(2, sat) == 1);  // 16/9
  CHECK(exact::ell_floor(3, sat) == 2);  // 64/27
  CHECK(exact::ell_floor(4, sat) == 3);  // 256/81
  // exact bracket: ell * 3^e <= 4^e < (ell+1) * 3^e, verifiable up to e=60
  for (std::uint32_t e = 0; e <= 60; ++e) {
    const std::uint64_t ell = exact::ell_floor(e, sat);
    CHECK(u128(ell) * pow128(3, e) <= pow128(4, e));
    CHECK(pow128(4, e) < u128(ell + 1) * pow128(3, e));
  }
}

TEST_CASE("ell_floor saturates") {
  CHECK(exact::ell_floor(200, 1000) == 1000);
  CHECK(exact::ell_floor(10, 1000) < 1000);
}

TEST_CASE("alpha_floor is floor(8*(4/3)^e)") {
  const std::uint64_t sat = UINT64_MAX;
  CHECK(exact::alpha_floor(0, sat) == 8);
  CHECK(exact::alpha_floor(1, sat) == 10);  // 32/3
  CHECK(exact::alpha_floor(2, sat) == 14);  // 128/9
  for (std::uint32_t e = 0; e <= 60; ++e) {
    const std::uint64_t a = exact::alpha_floor(e, sat);
    CHECK(u128(a) * pow128(3, e) <= u128(8) * pow128(4, e));
    CHECK(u128(8) * pow128(4, e) < u128(a + 1) * pow128(3, e));
  }
}

TEST_CASE("log43_ceil is the least exponent reaching x") {
  CHECK(exact::log43_ceil(1) == 0);
  CHECK(exact::log43_ceil(2) == 3);  // (4/3)^3 = 2.37
  // x <= 2^24 keeps e <= 60 so the 128-bit bracket cannot overflow
  for (std::uint64_t x : {1ull, 2ull, 3ull, 10ull, 100ull, 75025ull, 1ull << 24}) {
    const std::uint32_t e = exact::log43_ceil(x);
    CHECK(pow128(4, e) >= u128(x) * pow128(3, e));
    if (e > 0) CHECK(pow128(4, e - 1) < u128(x) * pow128(3, e - 1));
  }
  CHECK(exact::log43_ceil(1ull << 40) > exact::log43_ceil(1ull << 24));
}

TEST_CASE("log43_floor_ratio is the largest exponent below n*den/num") {
  const std::tuple<std::uint64_t, std::uint64_t, std::uint64_t> cases[] = {
      {100, 1, 1}, {100, 7, 2}, {65536, 57983, 9}, {75025, 2, 1}, {16, 1, 1}};
  for (auto [n, num, den] : cases) {
    const std::uint32_t e = exact::log43_floor_ratio(n, num, den);
    // (4/3)^e * num <= n * den
    CHECK(pow128(4, e) * num <= u128(n) * den * pow128(3, e));
    CHECK(pow128(4, e + 1) * num > u128(n) * den * pow128(3, e + 1));
  }
  CHECK(exact::log43_floor_ratio(3, 4, 1) == 0);  // n*den < num
}

TEST_CASE("level_size_ok evaluates size < 1 + 4n/ell_e exactly") {
  // e=0: ell=1, bound = 1 + 4n, so size <= 4n passes and 4n+1 does not
  CHECK(exact::level_size_ok(4 * 100, 100, 0));
  CHECK_FALSE(exact::level_size_ok(4 * 100 + 1, 100, 0));
  // e=3: ell = 64/27; size < 1 + 4n*27/64
  // n=64: 1 + 108 = 109 exactly, so 108 ok and 109 not
  CHECK(exact::level_size_ok(108, 64, 3));
  CHECK_FALSE(exact::level_size_ok(109, 64, 3));
}

TEST_CASE("sparsity_ok evaluates count < 2 + (4L-4)/ell_e exactly") {
  // e=0: bound = 2 + 4L - 4
  CHECK(exact::sparsity_ok(4 * 10 - 3, 10, 0));
  CHECK_FALSE(exact::sparsity_ok(4 * 10 - 2, 10, 0));
  // e=3: ell=64/27; L=17: 2 + 64*27/64 = 29 exactly; 28 ok, 29 not
  CHECK(exact::sparsity_ok(28, 17, 3));
  CHECK_FALSE(exact::sparsity_ok(29, 17, 3));
}

TEST_CASE("level_exponent follows ceil(k/2)-1") {
  CHECK(exact::level_exponent(1) == 0);
  CHECK(exact::level_exponent(2) == 0);
  CHECK(exact::level_exponent(3) == 1);
  CHECK(exact::level_exponent(4) == 1);
  CHECK(exact::level_exponent(5) == 2);
  CHECK(exact::level_exponent(10) == 4);
}
