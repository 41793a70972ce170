#ifndef DIDX_CORPUS_HPP
#define DIDX_CORPUS_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace didx {

std::string gen_fibonacci(std::uint32_t k);   // F_1="b", F_2="a", F_k=F_{k-1}F_{k-2}
std::string gen_thue_morse(std::uint32_t k);  // length 2^k over {a,b}
std::string gen_unary(std::uint64_t n);
std::string gen_random(std::uint64_t n, std::uint32_t sigma, std::uint64_t seed);
std::string gen_mutated_repeat(std::uint64_t unit_len, std::uint64_t copies,
                               double mutation_rate, std::uint64_t seed);

// spec strings: fibonacci(20), thue_morse(12), unary(256), random(4096,26,7),
// mutated_repeat(32,64,0.02,7), file(path)
std::string generate_corpus(const std::string& spec);

// ground-truth scan; 1-based positions
std::vector<std::uint64_t> naive_locate(std::string_view s, std::string_view p);

}  // namespace didx

#endif
