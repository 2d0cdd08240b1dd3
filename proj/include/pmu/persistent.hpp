#pragma once

#include "pmu/dense.hpp"

namespace pmu {

/// Persistent model: each missing sample takes the latest earlier observed
/// sample of its column (rows are time). Leading gaps take the first later
/// observed sample. Throws DegenerateInputError for a column with nothing
/// observed.
DenseMatrix persistent_fill(const ObservedMatrix& observed);

}  // namespace pmu
