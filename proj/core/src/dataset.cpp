#include "tempsel/dataset.hpp"

#include <cmath>
#include <stdexcept>

namespace tempsel {

std::string to_string(Split s) {
  switch (s) {
    case Split::train: return "train";
    case Split::valid: return "valid";
    case Split::test: return "test";
  }
  return "?";
}

void LabeledDataset::validate(int num_classes) const {
  if (inputs.size() != n * dim)
    throw std::invalid_argument("dataset: inputs size != n*dim");
  const bool has_targets = !targets.empty();
  const bool has_labels = !labels.empty();
  if (has_targets == has_labels)
    throw std::invalid_argument("dataset: exactly one of targets/labels must be set");
  if (has_targets && targets.size() != n)
    throw std::invalid_argument("dataset: targets size != n");
  if (has_labels && labels.size() != n)
    throw std::invalid_argument("dataset: labels size != n");
  for (double v : inputs)
    if (!std::isfinite(v)) throw std::invalid_argument("dataset: non-finite input");
  for (double v : targets)
    if (!std::isfinite(v)) throw std::invalid_argument("dataset: non-finite target");
  if (has_labels && num_classes >= 0) {
    for (int c : labels)
      if (c < 0 || c >= num_classes)
        throw std::invalid_argument("dataset: class label out of range");
  }
}

}  // namespace tempsel
