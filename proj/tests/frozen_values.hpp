#pragma once

// Reference counts on random_graph(7, 2024), computed once by the
// brute-force oracle and frozen. Every other method is checked against
// these values.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace wsc_test {

struct Frozen {
  std::string_view spec;
  double labeled;
};

inline constexpr std::size_t kFrozenN = 7;
inline constexpr std::uint64_t kFrozenSeed = 2024;

inline constexpr Frozen kFrozenCatalog[] = {
    {"t3_a", 26.669164805003462}, {"t3_b", 54.788861308509894}, {"t4_a", 109.0095843248761},
    {"t4_b", 22.375097060860963}, {"t4_c", 51.448795852575607}, {"t4_d", 106.29979235611603},
    {"t4_e", 50.596014334286863}, {"t4_f", 8.7315567271056054}, {"f5_a", 165.10092584735122},
    {"f5_b", 80.448833670812959}, {"f5_c", 158.16261487352182}, {"f5_d", 75.442970450915979},
    {"f5_e", 34.452863147029859}, {"f5_f", 78.051583516899456}, {"f5_g", 72.59129508829767},
    {"f5_h", 35.769398946222296}, {"f5_i", 33.313173490970527}, {"f5_j", 15.691924329848177},
    {"f5_k", 146.31012031742267}, {"f5_l", 68.43099754120837},  {"f5_m", 34.341004581314053},
    {"f5_n", 30.12280654102668},  {"f5_o", 14.280221916562407}, {"f5_p", 6.3776753164028577},
    {"f5_q", 12.074171659738052}, {"f5_r", 12.044859801908615}, {"f5_s", 5.1978508378161088},
    {"f5_t", 1.9891214897913361}, {"f5_u", 0.56437911645470473},
};

inline constexpr Frozen kFrozenLiterals[] = {
    {"2: 1-2, 1-2", 15.100764395157983},
    {"4: 1-2, 1-2, 3-4", 155.2609389332271},
    {"6: 1-2, 2-3, 3-4, 4-5, 5-6, 6-1, 1-4", 33.207253365043407},
    {"3: 1-2, 1-2, 2-3, 3-1, 3-1, 3-1", 8.9152508310835916},
    {"4:", 840},
};

}  // namespace wsc_test
