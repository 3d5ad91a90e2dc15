#pragma once

namespace hlawka {

// Heavy loops (suite runner, identity scan, grid oracle, search restarts)
// come in two flavors: a plain serial reference and an OpenMP kernel.
// Results are required to be identical; tests compare the two.
enum class ExecMode { serial, parallel };

bool openmp_enabled();
int max_threads();

}  // namespace hlawka
