#pragma once

#include <string>
#include <vector>

#include "fusesim/domain/types.hpp"

namespace fusesim {

// Work magnitudes below are calibration knobs for the simulator, not
// measurements.

// Seven-task call tree A..G. A calls B sync and C async; B calls D and E
// sync; C calls F and G async. The async side is compute-heavy and uses two
// threads.
struct TreeOptions {
  double light_cpu_ms = 30.0;
  double heavy_cpu_ms = 200.0;
  int heavy_parallelism = 2;
};
AppSpec MakeTreeApp(const TreeOptions& options = {});

// Ten-task sensor pipeline with a single root AS. AS fans out asynchronously
// to four analysis tasks; each analysis task calls its helpers synchronously.
// AS, CSA, DJ and SE write to the database once; CSL reads twice and writes
// once.
struct IotOptions {
  double analysis_cpu_ms = 30.0;
  double helper_cpu_ms = 2.0;
  double db_latency_ms = 15.0;
};
AppSpec MakeIotApp(const IotOptions& options = {});

// Seventeen-task web shop with four externally callable roots. The workload
// exercises three of them: addToCart, frontend and checkout.
struct WebOptions {
  double light_cpu_ms = 5.0;
  double db_latency_ms = 15.0;
};
AppSpec MakeWebApp(const WebOptions& options = {});

// "tree", "iot" or "web" with default options; ConfigError otherwise.
AppSpec MakeBuiltinApp(const std::string& name);
bool IsBuiltinApp(const std::string& name);

}  // namespace fusesim
