#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "dkh/homology.hpp"

namespace dkh {

// Exit codes: 0 ok, 1 domain error, 2 usage error, 3 internal failure.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

enum class OutputFormat { Text, Json, Tsv };

struct GammaTable {
  std::string gamma;
  std::map<TriDegree, std::size_t> rows;
};

std::string render_tables(const std::vector<GammaTable>& tables, Variant variant, OutputFormat format);

}  // namespace dkh
