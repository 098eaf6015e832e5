#pragma once

#include <cstdint>

#include "spatialdom/geometry.hpp"

namespace spatialdom {

/// An identified rectangle; the unit stored in datasets and indexed by the
/// tree. Ids are expected to be unique within one dataset.
struct Entry {
  std::int64_t id;
  Rect mbr;

  friend bool operator==(const Entry&, const Entry&) = default;
};

}  // namespace spatialdom
