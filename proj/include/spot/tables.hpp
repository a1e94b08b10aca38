#pragma once

#include <cstdint>
#include <vector>

#include "spot/param_space.hpp"

namespace spot {

/// One design-file row: a parameter configuration plus its run metadata.
struct DesignPoint {
  std::vector<double> values;  // one per ROI parameter, already conformed
  long long config = 0;        // configuration id, unique within a table
  long long repeats = 1;       // total repeats requested for this config
  long long step = 0;          // sequential step that proposed the point
  long long seed = 0;          // base seed handed to the algorithm
};

/// In-memory DES table. Column order equals the ROI parameter order.
struct DesignTable {
  RegionOfInterest roi;
  std::vector<DesignPoint> rows;
};

/// One result-file row: a single algorithm run.
struct ResultRecord {
  double y = 0.0;
  std::vector<double> values;
  long long seed = 0;
  long long config = 0;
  long long step = 0;
};

struct ResultTable {
  RegionOfInterest roi;
  std::vector<ResultRecord> rows;
};

/// One best-file row: the incumbent configuration after a tuning step.
struct BestRecord {
  double y = 0.0;  // utility (mean of the config's result rows) at write time
  std::vector<double> values;
  long long count = 0;
  long long config = 0;
  long long step = 0;
};

struct BestTable {
  RegionOfInterest roi;
  std::vector<BestRecord> rows;
};

}  // namespace spot
