#ifndef FOCAL_TESTS_FIXTURES_H_
#define FOCAL_TESTS_FIXTURES_H_

#include <string>

#include "focal/bargaining.h"
#include "focal/question.h"

namespace focal::fixtures {

// The first Bargaining Table game: blue at (6,2), orange at (6,9).
inline BargainingBoard GameOne() {
  return BargainingBoard({6, 2}, {6, 9},
                         {{3, {8, 1}}, {3, {4, 4}}, {3, {1, 7}}, {1, {1, 8}}, {2, {9, 8}}});
}

inline Question Tn1() {
  return Question{"TN1",
                  Locale::kNottingham,
                  {{"Friday lunchtime", 10},
                   {"Monday morning", 10},
                   {"Saturday night", 10},
                   {"Sunday night", 10},
                   {"Wednesday evening", 10}}};
}

inline std::string SourcePath(const std::string& relative) {
  return std::string(FOCAL_SOURCE_DIR) + "/" + relative;
}

}  // namespace focal::fixtures

#endif  // FOCAL_TESTS_FIXTURES_H_
