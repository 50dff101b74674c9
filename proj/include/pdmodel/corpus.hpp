#pragma once

#include <string>
#include <vector>

#include "pdmodel/algebra_io.hpp"

namespace pdmodel {

struct CorpusEntry {
  std::string name;
  std::string summary;
  AlgebraDocument doc;
};

/// Built-in instances in a fixed order.
const std::vector<CorpusEntry>& corpus();

/// Throws ContractError for an unknown name.
const CorpusEntry& corpus_entry(const std::string& name);

}  // namespace pdmodel
