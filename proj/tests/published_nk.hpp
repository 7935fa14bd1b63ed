#pragma once

// Published N_k (l = 2) for k = 0 .. 359; 0 marks the constant cases
// k = 0, 1 whose value is infinite.

#include <array>
#include <cstdint>

inline constexpr std::array<std::uint64_t, 360> kPublishedNk = {
    0, 0, 43, 89, 97, 214, 19, 239, 37, 79, 83, 239, 31, 431, 19, 79, 23, 827,
    43, 173, 31, 103, 94, 73, 19, 243, 141, 101, 53, 811, 47, 1077, 19, 251, 29, 311,
    134, 71, 23, 86, 43, 47, 19, 419, 31, 191, 83, 337, 59, 1559, 19, 127, 109, 163,
    67, 353, 83, 191, 83, 107, 19, 503, 29, 191, 47, 83, 51, 1907, 19, 131, 37, 137,
    31, 214, 31, 127, 47, 443, 19, 173, 31, 227, 23, 337, 83, 563, 19, 47, 166, 487,
    29, 89, 83, 79, 137, 73, 19, 2039, 62, 218, 59, 127, 31, 81, 19, 239, 37, 71,
    46, 167, 31, 457, 101, 179, 19, 173, 37, 179, 29, 191, 67, 563, 19, 86, 43, 151,
    23, 101, 43, 81, 59, 139, 19, 47, 31, 249, 46, 101, 83, 647, 19, 179, 25, 103,
    43, 486, 29, 83, 23, 167, 19, 167, 37, 331, 53, 167, 47, 167, 19, 25, 59, 326,
    31, 191, 31, 79, 43, 73, 19, 479, 23, 79, 47, 359, 29, 359, 19, 71, 37, 47,
    97, 839, 61, 431, 46, 227, 19, 827, 37, 241, 159, 118, 23, 167, 19, 103, 97, 179,
    47, 131, 31, 127, 29, 254, 19, 251, 46, 137, 43, 331, 79, 479, 19, 239, 23, 163,
    47, 214, 47, 347, 83, 307, 19, 251, 31, 47, 173, 101, 43, 83, 19, 229, 173, 751,
    113, 191, 23, 101, 53, 73, 19, 1149, 61, 79, 47, 103, 59, 71, 19, 79, 37, 173,
    31, 191, 31, 251, 83, 201, 19, 233, 31, 499, 47, 313, 47, 359, 19, 89, 46, 139,
    43, 47, 46, 151, 59, 151, 19, 863, 25, 223, 23, 614, 31, 191, 19, 163, 29, 173,
    53, 431, 31, 81, 43, 311, 19, 179, 37, 103, 101, 129, 113, 1559, 19, 127, 59, 331,
    34, 227, 47, 179, 47, 73, 19, 227, 29, 158, 47, 47, 46, 179, 19, 79, 37, 167,
    23, 491, 109, 79, 141, 131, 19, 479, 37, 86, 43, 193, 47, 101, 19, 223, 47, 129,
    29, 137, 31, 311, 23, 103, 19, 563, 31, 169, 47, 127, 34, 89, 19, 337, 37, 167,
};
