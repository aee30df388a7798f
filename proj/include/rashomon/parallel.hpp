#pragma once

namespace rashomon {

/// Number of OpenMP workers used by parallel loops. Results never depend on it.
int worker_count();
void set_worker_count(int workers);

}  // namespace rashomon
