#pragma once

#include <optional>
#include <string>
#include <vector>

#include "torcon/io.hpp"

namespace torcon {

struct CorpusEntry {
  std::string name;
  std::string description;
  Document document;
};

// Built-in example documents, in a fixed order.
const std::vector<CorpusEntry>& corpus();
std::optional<Document> corpus_document(const std::string& name);

}  // namespace torcon
