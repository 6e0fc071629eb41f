#include "dgkit/disambig/voting.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace dgkit {

void ScoreQuad::Validate() const {
  for (const double v : s) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::domain_error("classifier score outside [0, 1]");
    }
  }
}

double AggregateScores(const ScoreQuad& quad) {
  int votes_for = 0;
  int votes_against = 0;
  for (const double v : quad.s) {
    votes_for += v > 0.5;
    votes_against += v < 0.5;
  }
  if (votes_for > votes_against) return *std::max_element(quad.s.begin(), quad.s.end());
  if (votes_for < votes_against) return *std::min_element(quad.s.begin(), quad.s.end());
  // Sum in sorted order so the mean does not depend on quad orientation.
  std::array<double, 4> sorted = quad.s;
  std::sort(sorted.begin(), sorted.end());
  return (sorted[0] + sorted[1] + sorted[2] + sorted[3]) / 4.0;
}

}  // namespace dgkit
