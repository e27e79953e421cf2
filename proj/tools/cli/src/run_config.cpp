#include "qcoh/cli/run_config.hpp"

#include "qcoh/error.hpp"

namespace qcoh::cli {

void RunConfig::validate() const {
  state();
  ancilla();
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("--t must lie in [0, 1]");
  integration.validate();
  if (sweep_nodes < 2) throw DomainError("--sweep-nodes must be at least 2");
}

}  // namespace qcoh::cli
