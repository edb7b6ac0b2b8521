// fixtures.hpp - the embedded reference dataset: eight published magic
// knight tours with their attributions and printed diagonal sums.
#pragma once

#include <string>
#include <vector>

#include "arrangement.hpp"

namespace cubetour {

struct TourRecord {
  std::string id;
  std::string source;
  Arrangement values;                  // by cell index 16*layer + 4*row + col
  std::vector<int> printed_diagonals;  // D1.. as published (may be empty)
};

inline const std::vector<TourRecord>& fixtures() {
  static const std::vector<TourRecord> k = {
      {"1",
       "Awani Kumar 2006",
       {{ 1, 20, 47, 62, 28,  9, 54, 39, 45, 64,  3, 18, 56, 37, 26, 11,
         48, 61,  2, 19, 53, 40, 27, 10,  4, 17, 46, 63, 25, 12, 55, 38,
         29, 16, 51, 34,  8, 21, 42, 59, 49, 36, 31, 14, 44, 57,  6, 23,
         52, 33, 30, 15, 41, 60,  7, 22, 32, 13, 50, 35,  5, 24, 43, 58}},
       {130, 130, 130}},
      {"2",
       "Awani Kumar 2006",
       {{ 1, 20, 47, 62, 28, 37, 54, 11, 45, 64,  3, 18, 56,  9, 26, 39,
         48, 61,  2, 19, 53, 12, 27, 38,  4, 17, 46, 63, 25, 40, 55, 10,
         29, 16, 51, 34, 44, 21,  6, 59, 49, 36, 31, 14,  8, 57, 42, 23,
         52, 33, 30, 15,  5, 60, 43, 22, 32, 13, 50, 35, 41, 24,  7, 58}},
       {102, 166, 94}},
      {"3",
       "Guenter Stertenbrink 2003",
       {{ 1, 24, 47, 58, 42, 63,  8, 17, 55,  2, 25, 48, 32, 41, 50,  7,
         46, 59,  4, 21,  5, 20, 43, 62, 28, 45, 54,  3, 51,  6, 29, 44,
         23, 34, 57, 16, 64,  9, 18, 39, 33, 56, 15, 26, 10, 31, 40, 49,
         60, 13, 22, 35, 19, 38, 61, 12, 14, 27, 36, 53, 37, 52, 11, 30}},
       {66, 194, 130}},
      {"4",
       "Guenter Stertenbrink 2003",
       {{ 1, 42, 55, 32, 46,  5, 28, 51, 23, 64, 33, 10, 60, 19, 14, 37,
         56, 31, 34,  9, 27, 52, 13, 38,  2, 41, 24, 63, 45,  6, 59, 20,
         47,  8, 25, 50,  4, 43, 54, 29, 57, 18, 15, 40, 22, 61, 36, 11,
         26, 49, 16, 39, 53, 30, 35, 12, 48,  7, 58, 17,  3, 44, 21, 62}},
       {130, 66, 194}},
      {"5",
       "Awani Kumar 2009",
       {{ 2, 11, 62, 55, 45, 56,  1, 28, 64, 37, 20,  9, 19, 26, 47, 38,
         63, 54,  3, 10,  4, 25, 48, 53, 17, 12, 61, 40, 46, 39, 18, 27,
         14,  7, 50, 59, 49, 44, 29,  8, 36, 57, 16, 21, 31, 22, 35, 42,
         51, 58, 15,  6, 32,  5, 52, 41, 13, 24, 33, 60, 34, 43, 30, 23}},
       {66, 194, 66}},
      {"6",
       "Francis Gaspalou 2009",
       {{ 2, 11, 62, 55, 45, 56,  1, 28, 64, 37, 20,  9, 19, 26, 47, 38,
         63, 54,  3, 10,  4, 25, 48, 53, 17, 12, 61, 40, 46, 39, 18, 27,
         14, 23, 50, 43, 49, 44, 29,  8, 36, 57, 16, 21, 31,  6, 35, 58,
         51, 42, 15, 22, 32,  5, 52, 41, 13, 24, 33, 60, 34, 59, 30,  7}},
       {50, 194, 82}},
      {"7",
       "Francis Gaspalou 2009",
       {{ 2, 11, 62, 55, 45, 56,  1, 28, 64, 37, 20,  9, 19, 26, 47, 38,
         63, 54,  3, 10,  4, 25, 48, 53, 17, 12, 61, 40, 46, 39, 18, 27,
         30,  7, 34, 59, 49, 44, 29,  8, 36, 57, 16, 21, 15, 22, 51, 42,
         35, 58, 31,  6, 32,  5, 52, 41, 13, 24, 33, 60, 50, 43, 14, 23}},
       {66, 210, 66}},
      {"8",
       "Francis Gaspalou 2009",
       {{ 2, 11, 62, 55, 45, 56,  1, 28, 64, 37, 20,  9, 19, 26, 47, 38,
         63, 54,  3, 10,  4, 25, 48, 53, 17, 12, 61, 40, 46, 39, 18, 27,
         30, 23, 34, 43, 49, 44, 29,  8, 36, 57, 16, 21, 15,  6, 51, 58,
         35, 42, 31, 22, 32,  5, 52, 41, 13, 24, 33, 60, 50, 59, 14,  7}},
       {50, 210, 82}},
  };
  return k;
}

}  // namespace cubetour
