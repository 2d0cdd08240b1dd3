#include "pmu/persistent.hpp"

#include <string>

#include "pmu/error.hpp"

namespace pmu {

DenseMatrix persistent_fill(const ObservedMatrix& observed) {
  DenseMatrix out = observed.values();
  const auto& mask = observed.mask();
  for (Index c = 0; c < out.cols(); ++c) {
    Index first = -1;
    for (Index r = 0; r < out.rows() && first < 0; ++r)
      if (mask.observed(r, c)) first = r;
    if (first < 0)
      throw DegenerateInputError("persistent model: column " + std::to_string(c + 1) +
                                 " has no observed samples");
    double last = out(first, c);
    for (Index r = 0; r < out.rows(); ++r) {
      if (mask.observed(r, c))
        last = out(r, c);
      else
        out(r, c) = last;  // before `first` this is the backfill value
    }
  }
  return out;
}

}  // namespace pmu
