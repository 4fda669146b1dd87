#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dkh/diagram.hpp"

namespace dkh {

class CorpusError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CorpusEntry {
  std::string name;
  std::string description;
  // Placeholders have no built-in encoding; they are read from a user
  // directory as <name>.json.
  bool placeholder = false;
};

std::vector<CorpusEntry> corpus_list();

// A file <name>.json in user_dir takes precedence over the built-in entry.
SurfaceDiagram corpus_get(const std::string& name,
                          const std::optional<std::filesystem::path>& user_dir = std::nullopt);

}  // namespace dkh
