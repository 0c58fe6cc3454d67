#pragma once

#include <array>

namespace testing {

struct RationalEntry {
  const char* word;
  long num;
  long den;
};

// Thue-Morse cylinder measures up to length 4.
inline constexpr std::array<RationalEntry, 22> kThueMorseMeasure{{
    {"a", 1, 2}, {"b", 1, 2}, {"aa", 1, 6}, {"ab", 1, 3}, {"ba", 1, 3}, {"bb", 1, 6},
    {"aab", 1, 6}, {"aba", 1, 6}, {"abb", 1, 6}, {"baa", 1, 6}, {"bab", 1, 6}, {"bba", 1, 6},
    {"aaba", 1, 12}, {"aabb", 1, 12}, {"abaa", 1, 12}, {"abab", 1, 12}, {"abba", 1, 6},
    {"baab", 1, 6}, {"baba", 1, 12}, {"babb", 1, 12}, {"bbaa", 1, 12}, {"bbab", 1, 12}}};

struct PowerEntry {
  const char* word;
  int exponent;  // value is λ^-exponent, λ the golden ratio
};

// Fibonacci cylinder measures up to length 8.
inline constexpr std::array<PowerEntry, 44> kFibonacciMeasure{{
    {"a", 1}, {"b", 2}, {"aa", 3}, {"ab", 2}, {"ba", 2}, {"aab", 3}, {"aba", 2}, {"baa", 3},
    {"bab", 4}, {"aaba", 3}, {"abaa", 3}, {"abab", 4}, {"baab", 3}, {"baba", 4}, {"aabaa", 5},
    {"aabab", 4}, {"abaab", 3}, {"ababa", 4}, {"baaba", 3}, {"babaa", 4}, {"aabaab", 5},
    {"aababa", 4}, {"abaaba", 3}, {"ababaa", 4}, {"baabaa", 5}, {"baabab", 4}, {"babaab", 4},
    {"aabaaba", 5}, {"aababaa", 4}, {"abaabaa", 5}, {"abaabab", 4}, {"ababaab", 4}, {"baabaab", 5},
    {"baababa", 4}, {"babaaba", 4}, {"aabaabab", 5}, {"aababaab", 4}, {"abaabaab", 5},
    {"abaababa", 4}, {"ababaaba", 4}, {"baabaaba", 5}, {"baababaa", 4}, {"babaabaa", 5},
    {"babaabab", 6}}};

}  // namespace testing
