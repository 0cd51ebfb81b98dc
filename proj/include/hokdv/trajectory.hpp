#pragma once

#include <vector>

#include "hokdv/fourier_field.hpp"

namespace hokdv {

/// Recorded solution path. Times are strictly increasing; every state shares
/// (j, N). forcing_log, when kept, holds the applied forcing at the same
/// times.
struct Trajectory {
  std::vector<double> times;
  std::vector<FourierField> states;
  std::vector<FourierField> forcing_log;

  std::size_t size() const { return times.size(); }
  const FourierField& front() const { return states.front(); }
  const FourierField& back() const { return states.back(); }
};

}  // namespace hokdv
