#ifndef DGKIT_DISAMBIG_VOTING_H_
#define DGKIT_DISAMBIG_VOTING_H_

#include <array>

namespace dgkit {

// The four classifier probabilities for one image pair, ordered as
// (head 1 on p->q, head 2 on p->q, head 1 on q->p, head 2 on q->p).
// Higher means more likely a true match.
struct ScoreQuad {
  std::array<double, 4> s{};

  // Throws std::domain_error unless every score lies in [0, 1].
  void Validate() const;
  bool operator==(const ScoreQuad&) const = default;
};

// Majority vote over the four scores. Scores strictly above 0.5 vote for a
// match, strictly below 0.5 against; exactly 0.5 abstains.
//   more "match" votes   -> max of the four
//   more "against" votes -> min of the four
//   tie (incl. 0 - 0)    -> mean of the four
double AggregateScores(const ScoreQuad& quad);

}  // namespace dgkit

#endif  // DGKIT_DISAMBIG_VOTING_H_
