#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "qscatter/errors.hpp"
#include "qscatter/run.hpp"

namespace {

int exit_code_for(const qscatter::Error& e) {
  const std::string cat = e.category();
  if (cat == "usage" || cat == "validation") return 2;
  if (cat == "io") return 3;
  return 4;  // numerical: stiffness, drift, degenerate, resolution, optimization, shape
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  try {
    std::optional<qscatter::RunConfig> cfg = qscatter::parse_config(args, std::cout);
    if (!cfg) return 0;  // help/version already printed
    qscatter::RunArtifacts artifacts = qscatter::run(*cfg);
    if (!artifacts.series_dump.empty()) std::cout << artifacts.series_dump;
    std::cout << artifacts.summary_json;
    return 0;
  } catch (const qscatter::Error& e) {
    std::cerr << "error[" << e.category() << "]: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << "\n";
    return 5;
  }
}
