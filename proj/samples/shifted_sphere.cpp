// Audits one optimizer on the sphere function at a small budget and prints
// the unshifted/shifted errors and the resulting verdict.

#include <cstdio>

#include "cbias/harness.hpp"
#include "cbias/report.hpp"

int main() {
  using namespace cbias;

  AuditConfig config = ci_preset();
  config.budget = 5000;
  config.runs = 3;
  config.methods = {MethodId::DE, MethodId::GWO};
  config.functions = {FunctionId::F01, FunctionId::F08, FunctionId::F09};

  const auto results = run_audit(config, 0);
  std::fputs(render_table(results.reports, TableFormat::Markdown).c_str(), stdout);
  return 0;
}
