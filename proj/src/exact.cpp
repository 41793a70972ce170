#include "didx/exact.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace didx::exact {

using boost::multiprecision::cpp_int;

namespace {

cpp_int pow_int(std::uint64_t base, std::uint32_t e) {
  cpp_int r = 1;
  cpp_int b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

std::uint64_t to_u64_sat(const cpp_int& v, std::uint64_t sat) {
  if (v >= cpp_int(sat)) return sat;
  return static_cast<std::uint64_t>(v);
}

}  // namespace

std::uint64_t ell_floor(std::uint32_t e, std::uint64_t sat) {
  return to_u64_sat(pow_int(4, e) / pow_int(3, e), sat);
}

std::uint64_t alpha_floor(std::uint32_t e, std::uint64_t sat) {
  return to_u64_sat(8 * pow_int(4, e) / pow_int(3, e), sat);
}

std::uint32_t log43_ceil(std::uint64_t x) {
  std::uint32_t e = 0;
  cpp_int p4 = 1, p3 = 1;
  while (p4 < cpp_int(x) * p3) {
    p4 *= 4;
    p3 *= 3;
    ++e;
  }
  return e;
}

std::uint32_t log43_floor_ratio(std::uint64_t n, std::uint64_t num, std::uint64_t den) {
  const cpp_int bound = cpp_int(n) * den;
  std::uint32_t e = 0;
  cpp_int p4 = num, p3 = 1;
  // invariant: p4 = num*4^e, p3 = 3^e
  while (p4 * 4 <= bound * p3 * 3) {
    p4 *= 4;
    p3 *= 3;
    ++e;
  }
  return e;
}

bool level_size_ok(std::uint64_t size, std::uint64_t n, std::uint32_t e) {
  // size < 1 + 4n*(3/4)^e  <=>  (size-1)*4^e < 4n*3^e
  if (size <= 1) return true;
  return cpp_int(size - 1) * pow_int(4, e) < cpp_int(4) * n * pow_int(3, e);
}

bool sparsity_ok(std::uint64_t count, std::uint64_t interval_len, std::uint32_t e) {
  if (count < 2) return true;
  return cpp_int(count - 2) * pow_int(4, e) <
         cpp_int(4 * interval_len - 4) * pow_int(3, e);
}

}  // namespace didx::exact
